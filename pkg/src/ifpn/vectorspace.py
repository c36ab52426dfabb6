"""Finite-dimensional real points, pseudo norms, and deterministic sample grids.

A pseudo norm weakens the homogeneity of a norm to scalar monotonicity:
nonnegative, zero exactly at the origin, ``|c| <= 1`` implies
``|cx| <= |x|``, and the triangle inequality.  Every quantified statement in
this package is discharged on a finite, seeded grid at a stated tolerance,
so verdicts are always "at resolution".
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .outcome import DecisionOutcome, holds, refuted

DEFAULT_TOL = 1e-9
DEFAULT_AXIS_VALUES = (0.5, 1.0, 2.0, 10.0)
DEFAULT_SCALARS = (-1.0, -0.9, -0.5, -0.1, -0.01, 0.0, 0.01, 0.1, 0.5, 0.9, 1.0)
DEFAULT_RANDOM_POINTS = 64
DEFAULT_BALL_RADIUS = 10.0
DEFAULT_T_STEPS = 33


@dataclass(frozen=True)
class Point:
    """Immutable point of a finite-dimensional real linear space."""

    coords: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.coords) < 1:
            raise ValueError("points need at least one coordinate")
        if not all(math.isfinite(c) for c in self.coords):
            raise ValueError(f"non-finite coordinates: {self.coords}")

    @property
    def dimension(self) -> int:
        return len(self.coords)

    def __add__(self, other: "Point") -> "Point":
        return Point(tuple(a + b for a, b in zip(self.coords, other.coords, strict=True)))

    def __sub__(self, other: "Point") -> "Point":
        return Point(tuple(a - b for a, b in zip(self.coords, other.coords, strict=True)))

    def __neg__(self) -> "Point":
        return Point(tuple(-a for a in self.coords))

    def scaled(self, c: float) -> "Point":
        return Point(tuple(c * a for a in self.coords))

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(abs(a) <= tol for a in self.coords)

    def sup_abs(self) -> float:
        return max(abs(a) for a in self.coords)

    def as_list(self) -> list[float]:
        return list(self.coords)


def point(*coords: float) -> Point:
    return Point(tuple(float(c) for c in coords))


def zero_point(dimension: int) -> Point:
    return Point((0.0,) * dimension)


def coords_matrix(points: tuple[Point, ...] | list[Point]) -> np.ndarray:
    return np.asarray([p.coords for p in points], dtype=float)


@dataclass(frozen=True)
class PseudoNorm:
    """Named evaluable map from points to nonnegative reals.

    ``func`` evaluates one point; ``func_many`` evaluates a (n, dim) matrix of
    coordinates row-wise and exists so grid sweeps can stay vectorised.
    """

    name: str
    dimension: int
    func: Callable[[Point], float]
    func_many: Callable[[np.ndarray], np.ndarray] | None = None

    def __call__(self, x: Point) -> float:
        if x.dimension != self.dimension:
            raise ValueError(
                f"pseudo norm {self.name!r} is {self.dimension}-dimensional, "
                f"got point of dimension {x.dimension}"
            )
        return float(self.func(x))

    def many(self, coords: np.ndarray) -> np.ndarray:
        coords = np.atleast_2d(np.asarray(coords, dtype=float))
        if coords.shape[1] != self.dimension:
            raise ValueError(
                f"pseudo norm {self.name!r} expects width {self.dimension}, "
                f"got {coords.shape[1]}"
            )
        if self.func_many is not None:
            return np.asarray(self.func_many(coords), dtype=float)
        return np.asarray([self.func(Point(tuple(row))) for row in coords])


def _split_args(body: str) -> list[str]:
    """Split a parenthesised argument list on top-level commas."""
    parts, depth, cur = [], 0, []
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError(f"unbalanced parentheses in {body!r}")
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise ValueError(f"unbalanced parentheses in {body!r}")
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def builtin_pseudo_norm(name: str, dimension: int) -> PseudoNorm:
    """Construct a builtin pseudo norm from its compact spec string.

    Grammar: ``abs`` (dimension 1), ``euclidean``, ``sup``,
    ``truncated(<base>, <cap>)``, ``root(<base>)``, ``scaled(<base>, <factor>)``.
    Composite forms nest, e.g. ``truncated(euclidean, 1)``.
    """
    if dimension < 1:
        raise ValueError(f"dimension must be positive, got {dimension}")
    spec = name.strip()
    head, sep, rest = spec.partition("(")
    head = head.strip()
    if not sep:
        if head == "abs":
            if dimension != 1:
                raise ValueError("abs is one-dimensional")
            return PseudoNorm(
                "abs", 1,
                lambda x: abs(x.coords[0]),
                lambda m: np.abs(m[:, 0]),
            )
        if head == "euclidean":
            return PseudoNorm(
                spec, dimension,
                lambda x: math.sqrt(sum(c * c for c in x.coords)),
                lambda m: np.sqrt(np.sum(m * m, axis=1)),
            )
        if head == "sup":
            return PseudoNorm(
                spec, dimension,
                lambda x: x.sup_abs(),
                lambda m: np.max(np.abs(m), axis=1),
            )
        raise ValueError(f"unknown pseudo norm {name!r}")
    if not rest.endswith(")"):
        raise ValueError(f"malformed pseudo norm spec {name!r}")
    args = _split_args(rest[:-1])
    if head == "truncated":
        if len(args) != 2:
            raise ValueError("truncated takes (base, cap)")
        base = builtin_pseudo_norm(args[0], dimension)
        cap = float(args[1])
        if cap <= 0:
            raise ValueError(f"truncation cap must be positive, got {cap}")
        return PseudoNorm(
            f"truncated({base.name},{cap:g})", dimension,
            lambda x: min(base.func(x), cap),
            lambda m: np.minimum(base.many(m), cap),
        )
    if head == "root":
        if len(args) != 1:
            raise ValueError("root takes (base)")
        base = builtin_pseudo_norm(args[0], dimension)
        return PseudoNorm(
            f"root({base.name})", dimension,
            lambda x: math.sqrt(base.func(x)),
            lambda m: np.sqrt(base.many(m)),
        )
    if head == "scaled":
        if len(args) != 2:
            raise ValueError("scaled takes (base, factor)")
        base = builtin_pseudo_norm(args[0], dimension)
        factor = float(args[1])
        if factor <= 0:
            raise ValueError(f"scale factor must be positive, got {factor}")
        return PseudoNorm(
            f"scaled({base.name},{factor:g})", dimension,
            lambda x: factor * base.func(x),
            lambda m: factor * base.many(m),
        )
    raise ValueError(f"unknown pseudo norm {name!r}")


@dataclass(frozen=True)
class SampleGrid:
    """Finite surrogate for the universal quantifiers over points, scalars, t.

    ``symmetric`` grids contain the origin and are closed under negation,
    which the axiom checkers require.  Grids for operators with a restricted
    domain (e.g. the nonnegative half-line) drop that closure.
    """

    points: tuple[Point, ...]
    scalars: tuple[float, ...]
    t_ladder: tuple[float, ...]
    seed: int
    symmetric: bool = True

    def __post_init__(self) -> None:
        if not self.points:
            raise ValueError("grid needs at least one point")
        if any(t <= 0 for t in self.t_ladder):
            raise ValueError("t ladder must be positive")
        if any(b <= a for a, b in zip(self.t_ladder, self.t_ladder[1:])):
            raise ValueError("t ladder must be strictly ascending")
        if any(abs(c) > 1.0 for c in self.scalars):
            raise ValueError("grid scalars must satisfy |c| <= 1")
        if self.symmetric:
            seen = {p.coords for p in self.points}
            if not zero_point(self.dimension).coords in seen:
                raise ValueError("symmetric grid must contain the origin")
            missing = [p for p in self.points if (-p).coords not in seen]
            if missing:
                raise ValueError(f"symmetric grid not closed under negation: {missing[0]}")

    @property
    def dimension(self) -> int:
        return self.points[0].dimension

    def describe(self) -> str:
        return (
            f"{len(self.points)} points (dim {self.dimension}), "
            f"{len(self.scalars)} scalars, t in [{self.t_ladder[0]:g}, "
            f"{self.t_ladder[-1]:g}] x{len(self.t_ladder)}, seed {self.seed}"
        )


def _random_ball_points(
    rng: np.random.Generator, count: int, dimension: int, radius: float
) -> list[Point]:
    directions = rng.standard_normal((count, dimension))
    norms = np.linalg.norm(directions, axis=1)
    norms[norms == 0] = 1.0
    radii = radius * rng.random(count) ** (1.0 / dimension)
    coords = directions / norms[:, None] * radii[:, None]
    return [Point(tuple(float(c) for c in row)) for row in coords]


def default_grid(
    dimension: int,
    *,
    seed: int = 42,
    resolution: float = 1.0,
    nonneg: bool = False,
    extra_axis_values: tuple[float, ...] = (),
    radius: float = DEFAULT_BALL_RADIUS,
) -> SampleGrid:
    """Deterministic default grid: a coordinatewise lattice plus seeded
    random points in the radius-10 ball.

    ``resolution`` scales step counts (0.5 coarse, 1 default, 2 fine).
    ``nonneg`` produces an asymmetric grid confined to the closed positive
    orthant for operators whose domain requires it; ``extra_axis_values``
    appends additional magnitudes on each axis (used to extend reach).
    """
    base = DEFAULT_AXIS_VALUES + tuple(float(v) for v in extra_axis_values)
    if nonneg:
        axis_values = (0.0,) + base
    else:
        axis_values = (0.0,) + tuple(v for a in base for v in (a, -a))
    points: list[Point] = [zero_point(dimension)]
    seen = {points[0].coords}
    for combo in itertools.product(axis_values, repeat=dimension):
        p = Point(tuple(float(c) for c in combo))
        if p.coords not in seen:
            seen.add(p.coords)
            points.append(p)
    n_random = max(2, int(round(DEFAULT_RANDOM_POINTS * resolution)))
    rng = np.random.default_rng(seed)
    if nonneg:
        randoms = _random_ball_points(rng, n_random, dimension, radius)
        randoms = [Point(tuple(abs(c) for c in p.coords)) for p in randoms]
    else:
        halves = _random_ball_points(rng, n_random // 2, dimension, radius)
        randoms = [q for p in halves for q in (p, -p)]
    for p in randoms:
        if p.coords not in seen:
            seen.add(p.coords)
            points.append(p)
    n_t = max(5, int(round(DEFAULT_T_STEPS * resolution)))
    ladder = tuple(float(t) for t in np.logspace(-4.0, 4.0, n_t))
    return SampleGrid(
        points=tuple(points),
        scalars=DEFAULT_SCALARS,
        t_ladder=ladder,
        seed=seed,
        symmetric=not nonneg,
    )


def check_pseudo_norm_axioms(
    p: PseudoNorm, grid: SampleGrid, tol: float = DEFAULT_TOL
) -> DecisionOutcome:
    """Check nonnegativity, definiteness, scalar monotonicity, and the
    triangle inequality on every grid sample.

    The definiteness check is two-sided at resolution: the value at the
    origin must vanish within ``tol``, and any point whose value vanishes
    within ``tol`` must itself lie within ``tol`` of the origin.
    """
    if grid.dimension != p.dimension:
        raise ValueError(
            f"grid dimension {grid.dimension} does not match pseudo norm "
            f"{p.name!r} of dimension {p.dimension}"
        )
    if not grid.symmetric:
        raise ValueError("axiom checks need a symmetric grid")
    resolution = f"{grid.describe()}, tol {tol:g}"
    pts = grid.points
    coords = coords_matrix(pts)
    values = p.many(coords)

    # P.1 nonnegativity
    neg = values < -tol
    if neg.any():
        i = int(np.argmax(neg))
        return refuted(
            resolution,
            {"axiom": "P.1", "x": pts[i].as_list(), "value": float(values[i])},
            detail="negative value",
        )

    # P.2 definiteness, both directions
    sup_abs = np.max(np.abs(coords), axis=1)
    for i, x in enumerate(pts):
        near_zero_point = sup_abs[i] <= tol
        near_zero_value = abs(values[i]) <= tol
        if near_zero_point and not near_zero_value:
            return refuted(
                resolution,
                {"axiom": "P.2", "x": x.as_list(), "value": float(values[i])},
                detail="nonzero value at origin",
            )
        if near_zero_value and not near_zero_point:
            return refuted(
                resolution,
                {"axiom": "P.2", "x": x.as_list(), "value": float(values[i])},
                detail="vanishing value away from origin",
            )

    # P.3 scalar monotonicity for |c| <= 1
    for c in grid.scalars:
        scaled_values = p.many(coords * c)
        bad = scaled_values > values + tol
        if bad.any():
            i = int(np.argmax(bad))
            return refuted(
                resolution,
                {
                    "axiom": "P.3",
                    "x": pts[i].as_list(),
                    "c": float(c),
                    "value_cx": float(scaled_values[i]),
                    "value_x": float(values[i]),
                },
                detail="scalar monotonicity",
            )

    # P.4 triangle inequality over unordered pairs
    n = len(pts)
    ii, jj = np.triu_indices(n)
    chunk = 65536
    for start in range(0, len(ii), chunk):
        ic = ii[start : start + chunk]
        jc = jj[start : start + chunk]
        sums = coords[ic] + coords[jc]
        lhs = p.many(sums)
        rhs = values[ic] + values[jc]
        bad = lhs > rhs + tol
        if bad.any():
            k = int(np.argmax(bad))
            return refuted(
                resolution,
                {
                    "axiom": "P.4",
                    "x": pts[ic[k]].as_list(),
                    "y": pts[jc[k]].as_list(),
                    "value_sum": float(lhs[k]),
                    "value_parts": float(rhs[k]),
                },
                detail="triangle inequality",
            )
    return holds(resolution)
