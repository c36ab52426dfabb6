"""Operator corpus between spaces: builtin maps and linearity checking.

The continuity and boundedness definitions make sense for arbitrary
mappings, so nonlinear operators are first class here; ``declared_linear``
is a claim that :func:`check_linearity` verifies rather than trusts.  The
rational cubic ``x -> x^3 / (1 + x)`` lives on the half line x >= 0 (it has
a pole at -1); it is the corpus's canonical example of a map that is weakly
and sequentially continuous yet not strongly so.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .outcome import DecisionOutcome, holds, refuted
from .vectorspace import Point, SampleGrid, zero_point


class DomainError(ValueError):
    """A point lies outside an operator's domain."""


@dataclass(frozen=True)
class OperatorSpec:
    """A named map between finite-dimensional spaces.

    ``domain_predicate`` guards restricted domains; applying the operator
    outside raises :class:`DomainError`.
    """

    name: str
    domain_dim: int
    codomain_dim: int
    apply: Callable[[Point], Point]
    declared_linear: bool
    domain_predicate: Callable[[Point], bool] | None = field(default=None)

    def in_domain(self, x: Point) -> bool:
        if x.dimension != self.domain_dim:
            return False
        return self.domain_predicate is None or self.domain_predicate(x)

    def __call__(self, x: Point) -> Point:
        if x.dimension != self.domain_dim:
            raise DomainError(
                f"operator {self.name!r} expects dimension {self.domain_dim}, "
                f"got {x.dimension}"
            )
        if self.domain_predicate is not None and not self.domain_predicate(x):
            raise DomainError(f"{x.as_list()} outside the domain of {self.name!r}")
        y = self.apply(x)
        if y.dimension != self.codomain_dim:
            raise ValueError(
                f"operator {self.name!r} produced dimension {y.dimension}, "
                f"declared {self.codomain_dim}"
            )
        return y


def _parse_int_args(spec: str, head: str, count: int) -> list[float]:
    body = spec[len(head):].strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise ValueError(f"malformed operator spec {spec!r}")
    parts = [p.strip() for p in body[1:-1].split(",")]
    if len(parts) != count:
        raise ValueError(f"{head} takes {count} argument(s), got {len(parts)}")
    return [float(p) for p in parts]


def builtin_operator(name: str) -> OperatorSpec:
    """Construct a builtin operator from its compact spec string.

    Grammar: ``identity(d)``, ``zero(d)``, ``scaling(d, factor)``,
    ``coordinate_projection(d, k)`` (1-based coordinate k, codomain dim 1),
    ``rational_cubic`` (dimension 1, domain restricted to x >= 0).
    """
    spec = name.strip()
    if spec == "rational_cubic":
        def apply(x: Point) -> Point:
            v = x.coords[0]
            return Point((v ** 3 / (1.0 + v),))

        return OperatorSpec(
            "rational_cubic", 1, 1, apply,
            declared_linear=False,
            domain_predicate=lambda x: x.coords[0] >= 0.0,
        )
    head = spec.partition("(")[0]
    if head == "identity":
        (d,) = _parse_int_args(spec, "identity", 1)
        d = int(d)
        return OperatorSpec(f"identity({d})", d, d, lambda x: x, True)
    if head == "zero":
        (d,) = _parse_int_args(spec, "zero", 1)
        d = int(d)
        theta = zero_point(d)
        return OperatorSpec(f"zero({d})", d, d, lambda x: theta, True)
    if head == "scaling":
        d, lam = _parse_int_args(spec, "scaling", 2)
        d = int(d)
        return OperatorSpec(
            f"scaling({d},{lam:g})", d, d, lambda x: x.scaled(lam), True
        )
    if head == "coordinate_projection":
        d, k = _parse_int_args(spec, "coordinate_projection", 2)
        d, k = int(d), int(k)
        if not 1 <= k <= d:
            raise ValueError(f"projection index {k} out of range for dimension {d}")
        return OperatorSpec(
            f"coordinate_projection({d},{k})", d, 1,
            lambda x: Point((x.coords[k - 1],)), True,
        )
    raise ValueError(f"unknown operator {name!r}")


def check_linearity(
    T: OperatorSpec, grid: SampleGrid, tol: float = 1e-9
) -> DecisionOutcome:
    """Check additivity and homogeneity on all in-domain grid samples.

    Probes whose operands or whose sum/scaling leave a restricted domain are
    skipped, so for domain-restricted operators the verdict covers the
    reachable part of the grid only.
    """
    if grid.dimension != T.domain_dim:
        raise ValueError("grid dimension does not match the operator domain")
    pts = [x for x in grid.points if T.in_domain(x)]
    resolution = f"{grid.describe()}, {len(pts)} in-domain points, tol {tol:g}"
    images = {x.coords: T(x) for x in pts}

    for i, x in enumerate(pts):
        for y in pts[i:]:
            s = x + y
            if not T.in_domain(s):
                continue
            lhs = T(s)
            rhs = images[x.coords] + images[y.coords]
            gap = (lhs - rhs).sup_abs()
            if gap > tol:
                return refuted(
                    resolution,
                    {"kind": "additivity", "x": x.as_list(), "y": y.as_list(),
                     "T_sum": lhs.as_list(), "sum_T": rhs.as_list(),
                     "gap": float(gap)},
                    detail="T(x + y) != T(x) + T(y)",
                )
    for c in grid.scalars:
        for x in pts:
            cx = x.scaled(c)
            if not T.in_domain(cx):
                continue
            lhs = T(cx)
            rhs = images[x.coords].scaled(c)
            gap = (lhs - rhs).sup_abs()
            if gap > tol:
                return refuted(
                    resolution,
                    {"kind": "homogeneity", "x": x.as_list(), "c": float(c),
                     "T_cx": lhs.as_list(), "c_Tx": rhs.as_list(),
                     "gap": float(gap)},
                    detail="T(c x) != c T(x)",
                )
    return holds(resolution)
