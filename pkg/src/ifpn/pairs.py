"""Membership/non-membership pairs on (point, t), their axioms, and convergence.

A pair (mu, nu) with values in [0, 1] carries the graded statement "the size
of x is below t": mu grades membership, nu non-membership.  Fifteen axioms
tie the pair to a linear space: boundary behaviour at t <= 0, definiteness at
the origin, scalar monotonicity, a min/max additivity law, limits at
infinity, and left continuity in t.  The min/max aggregation is forced by
idempotency (a * a = a only for min, a <> a = a only for max).

Evaluator contract: ``mu(x, t)`` and ``nu(x, t)`` accept a scalar t or a
numpy array of t values and are vectorised in t.  Pairs built from a pseudo
norm additionally expose profile functions on (norm value, t) arrays, which
the axiom sweeps use to stay vectorised across point pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .outcome import DecisionOutcome, Verdict, holds, inconclusive, refuted
from .vectorspace import (
    DEFAULT_TOL,
    Point,
    PseudoNorm,
    SampleGrid,
    coords_matrix,
    zero_point,
)

DEFAULT_ALPHA_STEPS = 19  # 0.05 .. 0.95
SMALL_T_FLOOR = 1e-8
CONTINUITY_STEPS = (1e-3, 1e-6)
CONTINUITY_TOL = 1e-3
DEFAULT_TAIL = 60000
MAX_TAIL_SAMPLES = 512
_PAIR_CHUNK = 512


@dataclass(frozen=True)
class IfpnPair:
    """Evaluable (mu, nu) pair claiming the fifteen pair axioms.

    ``norm`` and the profile functions are present when the pair is derived
    from a pseudo norm; profiles map broadcastable (r, t) arrays to values
    and let sweeps evaluate many points at once.
    """

    name: str
    dimension: int
    mu: Callable
    nu: Callable
    norm: PseudoNorm | None = None
    mu_profile: Callable | None = None
    nu_profile: Callable | None = None

    @property
    def vectorised(self) -> bool:
        return self.norm is not None and self.mu_profile is not None


@dataclass(frozen=True)
class SequenceSpec:
    """A named sequence of points with a declared limit."""

    name: str
    terms: Callable[[int], Point]
    declared_limit: Point


def default_alpha_grid(resolution: float = 1.0) -> tuple[float, ...]:
    n = max(3, int(round(DEFAULT_ALPHA_STEPS * resolution)))
    return tuple(float(a) for a in np.linspace(0.05, 0.95, n))


def _standard_mu_profile(r, t):
    r = np.asarray(r, dtype=float)
    t = np.asarray(t, dtype=float)
    den = np.where(t > 0, t + r, 1.0)
    frac = t / den
    return np.where(t > 0, np.where(r < t, 1.0, frac), 0.0)


def _standard_nu_profile(r, t):
    r = np.asarray(r, dtype=float)
    t = np.asarray(t, dtype=float)
    den = np.where(t > 0, t + r, 1.0)
    frac = r / den
    return np.where(t > 0, np.where(r < t, 0.0, frac), 1.0)


def standard_ifpn(p: PseudoNorm) -> IfpnPair:
    """The standard pair over a pseudo norm.

    For t > 0: mu is 1 where the norm is below t and t/(t + |x|) otherwise;
    nu is the complement |x|/(t + |x|), 0 where the norm is below t.  For
    t <= 0: mu = 0 and nu = 1.
    """

    def mu(x: Point, t):
        r = p(x)
        if isinstance(t, (int, float)):
            if t <= 0:
                return 0.0
            return 1.0 if r < t else t / (t + r)
        return _standard_mu_profile(r, t)

    def nu(x: Point, t):
        r = p(x)
        if isinstance(t, (int, float)):
            if t <= 0:
                return 1.0
            return 0.0 if r < t else r / (t + r)
        return _standard_nu_profile(r, t)

    return IfpnPair(
        name=f"standard({p.name})",
        dimension=p.dimension,
        mu=mu,
        nu=nu,
        norm=p,
        mu_profile=_standard_mu_profile,
        nu_profile=_standard_nu_profile,
    )


def perturbed_pair(base: IfpnPair, mode: str) -> IfpnPair:
    """Deliberately broken variants of a pair, used to exercise refutation.

    mu_shift: adds 0.05 to mu on t > 0 (breaks mu + nu <= 1).
    branch_swap: swaps the two t > 0 branches of both maps (breaks scalar
        monotonicity).
    nu_scale: scales nu by 1.2, capped at 1 (breaks mu + nu <= 1).
    """
    if base.norm is None or base.mu_profile is None:
        raise ValueError("perturbations require a norm-based pair")
    norm, mu_p, nu_p = base.norm, base.mu_profile, base.nu_profile

    if mode == "mu_shift":
        def mu_profile(r, t):
            t = np.asarray(t, dtype=float)
            return np.where(t > 0, np.minimum(mu_p(r, t) + 0.05, 1.0), 0.0)
        nu_profile = nu_p
    elif mode == "branch_swap":
        def mu_profile(r, t):
            r = np.asarray(r, dtype=float)
            t = np.asarray(t, dtype=float)
            den = np.where(t > 0, t + r, 1.0)
            return np.where(t > 0, np.where(r >= t, 1.0, t / den), 0.0)
        def nu_profile(r, t):
            r = np.asarray(r, dtype=float)
            t = np.asarray(t, dtype=float)
            den = np.where(t > 0, t + r, 1.0)
            return np.where(t > 0, np.where(r >= t, 0.0, r / den), 1.0)
    elif mode == "nu_scale":
        mu_profile = mu_p
        def nu_profile(r, t):
            t = np.asarray(t, dtype=float)
            return np.where(t > 0, np.minimum(1.2 * nu_p(r, t), 1.0), 1.0)
    else:
        raise ValueError(f"unknown perturbation mode {mode!r}")

    def mu(x: Point, t):
        out = mu_profile(norm(x), np.asarray(t, dtype=float))
        return float(out) if np.isscalar(t) or np.ndim(t) == 0 else out

    def nu(x: Point, t):
        out = nu_profile(norm(x), np.asarray(t, dtype=float))
        return float(out) if np.isscalar(t) or np.ndim(t) == 0 else out

    return IfpnPair(
        name=f"{base.name}+{mode}",
        dimension=base.dimension,
        mu=mu,
        nu=nu,
        norm=norm,
        mu_profile=mu_profile,
        nu_profile=nu_profile,
    )


def _pair_values(f: IfpnPair, pts, ts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """mu and nu of every point at every t, shape (n_points, n_t)."""
    if f.vectorised:
        r = f.norm.many(coords_matrix(pts))
        return (
            f.mu_profile(r[:, None], ts[None, :]),
            f.nu_profile(r[:, None], ts[None, :]),
        )
    mu = np.asarray([f.mu(x, ts) for x in pts], dtype=float)
    nu = np.asarray([f.nu(x, ts) for x in pts], dtype=float)
    return mu, nu


def check_ifpn_axioms(
    f: IfpnPair,
    grid: SampleGrid,
    alpha_grid: tuple[float, ...] | None = None,
    tol: float = DEFAULT_TOL,
) -> DecisionOutcome:
    """Check the fifteen pair axioms on the grid samples.

    The two limit axioms (value 1 resp. 0 as t grows) and left continuity
    cannot be refuted from finitely many samples; when those sub-checks do
    not pass they yield Inconclusive with diagnostics, never Refuted.  The
    alpha separation axioms are checked contrapositively: every non-origin
    point must dip below alpha (mu) and rise above alpha (nu) somewhere on a
    small-t extension of the ladder, for every alpha in ``alpha_grid``.
    """
    if grid.dimension != f.dimension:
        raise ValueError("grid dimension does not match the pair")
    if not grid.symmetric:
        raise ValueError("axiom checks need a symmetric grid")
    if alpha_grid is None:
        alpha_grid = default_alpha_grid()
    alphas = np.asarray(alpha_grid, dtype=float)
    if alphas.size == 0 or alphas.min() <= 0 or alphas.max() >= 1:
        raise ValueError("alpha grid must lie strictly inside (0, 1)")

    pts = grid.points
    ladder = np.asarray(grid.t_ladder, dtype=float)
    n_ext = max(5, int(round(9 * len(ladder) / DEFAULT_ALPHA_STEPS)))
    small = np.logspace(math.log10(SMALL_T_FLOOR), math.log10(ladder[0]), n_ext)
    ext_ladder = np.unique(np.concatenate([small, ladder]))
    resolution = (
        f"{grid.describe()}, {alphas.size} alphas, small-t floor "
        f"{SMALL_T_FLOOR:g}, tol {tol:g}"
    )
    zero = zero_point(grid.dimension)
    nonzero_mask = np.asarray([not x.is_zero(tol) for x in pts])

    MU, NU = _pair_values(f, pts, ladder)
    MU_ext, NU_ext = _pair_values(f, pts, ext_ladder)
    inconclusives: list[str] = []

    def fail(axiom: str, witness: dict, detail: str) -> DecisionOutcome:
        witness = {"axiom": axiom, **witness}
        return refuted(resolution, witness, detail=detail)

    # IFP.1: mu + nu <= 1 everywhere sampled (positive ladder and t <= 0)
    total = MU + NU
    bad = total > 1.0 + tol
    if bad.any():
        i, k = np.unravel_index(int(np.argmax(bad)), bad.shape)
        return fail(
            "IFP.1",
            {"x": pts[i].as_list(), "t": float(ladder[k]),
             "mu": float(MU[i, k]), "nu": float(NU[i, k])},
            "mu + nu exceeds 1",
        )
    for t in (-1.0, 0.0):
        for i, x in enumerate(pts):
            mu_v, nu_v = float(f.mu(x, t)), float(f.nu(x, t))
            # IFP.2 / IFP.9: boundary values at t <= 0
            if abs(mu_v) > tol or abs(nu_v - 1.0) > tol:
                return fail(
                    "IFP.2/IFP.9",
                    {"x": x.as_list(), "t": t, "mu": mu_v, "nu": nu_v},
                    "wrong value at t <= 0",
                )

    # IFP.3 / IFP.10: identically 1 (resp. 0) on t > 0 exactly at the origin
    zi = next(i for i, x in enumerate(pts) if x.coords == zero.coords)
    k = int(np.argmax(MU[zi] < 1.0 - tol))
    if MU[zi, k] < 1.0 - tol:
        return fail(
            "IFP.3",
            {"x": zero.as_list(), "t": float(ladder[k]), "mu": float(MU[zi, k])},
            "mu not 1 at the origin",
        )
    k = int(np.argmax(NU[zi] > tol))
    if NU[zi, k] > tol:
        return fail(
            "IFP.10",
            {"x": zero.as_list(), "t": float(ladder[k]), "nu": float(NU[zi, k])},
            "nu not 0 at the origin",
        )
    min_mu = MU_ext.min(axis=1)
    max_nu = NU_ext.max(axis=1)
    stuck = nonzero_mask & (min_mu > 1.0 - tol)
    if stuck.any():
        i = int(np.argmax(stuck))
        return fail(
            "IFP.3",
            {"x": pts[i].as_list(), "min_mu": float(min_mu[i])},
            "mu identically 1 at a non-origin point",
        )
    stuck = nonzero_mask & (max_nu < tol)
    if stuck.any():
        i = int(np.argmax(stuck))
        return fail(
            "IFP.10",
            {"x": pts[i].as_list(), "max_nu": float(max_nu[i])},
            "nu identically 0 at a non-origin point",
        )

    # IFP.4 / IFP.11: scalar monotonicity for |c| <= 1
    coords = coords_matrix(pts)
    for c in grid.scalars:
        if f.vectorised:
            r_c = f.norm.many(coords * c)
            MU_c = f.mu_profile(r_c[:, None], ladder[None, :])
            NU_c = f.nu_profile(r_c[:, None], ladder[None, :])
        else:
            MU_c = np.asarray([f.mu(x.scaled(c), ladder) for x in pts])
            NU_c = np.asarray([f.nu(x.scaled(c), ladder) for x in pts])
        bad = MU_c < MU - tol
        if bad.any():
            i, k = np.unravel_index(int(np.argmax(bad)), bad.shape)
            return fail(
                "IFP.4",
                {"x": pts[i].as_list(), "c": float(c), "t": float(ladder[k]),
                 "mu_cx": float(MU_c[i, k]), "mu_x": float(MU[i, k])},
                "mu decreased under |c| <= 1 scaling",
            )
        bad = NU_c > NU + tol
        if bad.any():
            i, k = np.unravel_index(int(np.argmax(bad)), bad.shape)
            return fail(
                "IFP.11",
                {"x": pts[i].as_list(), "c": float(c), "t": float(ladder[k]),
                 "nu_cx": float(NU_c[i, k]), "nu_x": float(NU[i, k])},
                "nu increased under |c| <= 1 scaling",
            )

    # IFP.5 / IFP.12: min/max additivity over point pairs and ladder pairs
    T2 = ladder[:, None] + ladder[None, :]
    n = len(pts)
    ii, jj = np.triu_indices(n)
    if f.vectorised:
        for start in range(0, len(ii), _PAIR_CHUNK):
            ic, jc = ii[start : start + _PAIR_CHUNK], jj[start : start + _PAIR_CHUNK]
            r_sum = f.norm.many(coords[ic] + coords[jc])
            lhs_mu = f.mu_profile(r_sum[:, None, None], T2[None, :, :])
            min_outer = np.minimum(MU[ic][:, :, None], MU[jc][:, None, :])
            bad = min_outer - lhs_mu > tol
            if bad.any():
                k, a, b = np.unravel_index(int(np.argmax(bad)), bad.shape)
                return fail(
                    "IFP.5",
                    {"x": pts[ic[k]].as_list(), "y": pts[jc[k]].as_list(),
                     "s": float(ladder[a]), "t": float(ladder[b]),
                     "mu_sum": float(lhs_mu[k, a, b]),
                     "min_parts": float(min_outer[k, a, b])},
                    "min additivity violated",
                )
            lhs_nu = f.nu_profile(r_sum[:, None, None], T2[None, :, :])
            max_outer = np.maximum(NU[ic][:, :, None], NU[jc][:, None, :])
            bad = lhs_nu - max_outer > tol
            if bad.any():
                k, a, b = np.unravel_index(int(np.argmax(bad)), bad.shape)
                return fail(
                    "IFP.12",
                    {"x": pts[ic[k]].as_list(), "y": pts[jc[k]].as_list(),
                     "s": float(ladder[a]), "t": float(ladder[b]),
                     "nu_sum": float(lhs_nu[k, a, b]),
                     "max_parts": float(max_outer[k, a, b])},
                    "max additivity violated",
                )
    else:
        for k in range(len(ii)):
            x, y = pts[ii[k]], pts[jj[k]]
            lhs_mu = np.asarray(f.mu(x + y, T2))
            min_outer = np.minimum(MU[ii[k]][:, None], MU[jj[k]][None, :])
            bad = min_outer - lhs_mu > tol
            if bad.any():
                a, b = np.unravel_index(int(np.argmax(bad)), bad.shape)
                return fail(
                    "IFP.5",
                    {"x": x.as_list(), "y": y.as_list(),
                     "s": float(ladder[a]), "t": float(ladder[b]),
                     "mu_sum": float(lhs_mu[a, b]),
                     "min_parts": float(min_outer[a, b])},
                    "min additivity violated",
                )
            lhs_nu = np.asarray(f.nu(x + y, T2))
            max_outer = np.maximum(NU[ii[k]][:, None], NU[jj[k]][None, :])
            bad = lhs_nu - max_outer > tol
            if bad.any():
                a, b = np.unravel_index(int(np.argmax(bad)), bad.shape)
                return fail(
                    "IFP.12",
                    {"x": x.as_list(), "y": y.as_list(),
                     "s": float(ladder[a]), "t": float(ladder[b]),
                     "nu_sum": float(lhs_nu[a, b]),
                     "max_parts": float(max_outer[a, b])},
                    "max additivity violated",
                )

    # IFP.6 / IFP.13: limits along the ladder top; not refutable by sampling
    short_mu = MU[:, -1] < 1.0 - tol
    if short_mu.any():
        i = int(np.argmax(short_mu))
        inconclusives.append(
            f"IFP.6: mu({pts[i].as_list()}, {ladder[-1]:g}) = {MU[i, -1]:.6g} "
            "has not reached 1 at the ladder top"
        )
    tall_nu = NU[:, -1] > tol
    if tall_nu.any():
        i = int(np.argmax(tall_nu))
        inconclusives.append(
            f"IFP.13: nu({pts[i].as_list()}, {ladder[-1]:g}) = {NU[i, -1]:.6g} "
            "has not reached 0 at the ladder top"
        )

    # IFP.7 / IFP.14: alpha separation, contrapositive form
    a_lo, a_hi = float(alphas.min()), float(alphas.max())
    bad = nonzero_mask & (min_mu > a_lo + tol)
    if bad.any():
        i = int(np.argmax(bad))
        return fail(
            "IFP.7",
            {"x": pts[i].as_list(), "alpha": a_lo, "min_mu": float(min_mu[i])},
            "mu never dips to alpha at a non-origin point",
        )
    bad = nonzero_mask & (max_nu < a_hi - tol)
    if bad.any():
        i = int(np.argmax(bad))
        return fail(
            "IFP.14",
            {"x": pts[i].as_list(), "alpha": a_hi, "max_nu": float(max_nu[i])},
            "nu never rises to alpha at a non-origin point",
        )

    # IFP.8 / IFP.15: left continuity via shrinking one-sided differences
    h1, h2 = CONTINUITY_STEPS
    for label, table, profile_or_eval in (("IFP.8", MU, "mu"), ("IFP.15", NU, "nu")):
        if f.vectorised:
            r = f.norm.many(coords)
            prof = f.mu_profile if profile_or_eval == "mu" else f.nu_profile
            v1 = prof(r[:, None], (ladder - h1)[None, :])
            v2 = prof(r[:, None], (ladder - h2)[None, :])
        else:
            ev = f.mu if profile_or_eval == "mu" else f.nu
            v1 = np.asarray([ev(x, ladder - h1) for x in pts])
            v2 = np.asarray([ev(x, ladder - h2) for x in pts])
        d1 = np.abs(table - v1)
        d2 = np.abs(table - v2)
        bad = d2 > np.maximum(CONTINUITY_TOL, 0.5 * d1)
        if bad.any():
            i, k = np.unravel_index(int(np.argmax(bad)), bad.shape)
            inconclusives.append(
                f"{label}: one-sided difference at x={pts[i].as_list()}, "
                f"t={ladder[k]:g} is {d2[i, k]:.3g} (h={h2:g}), not shrinking"
            )

    if inconclusives:
        return inconclusive(resolution, detail="; ".join(inconclusives))
    return holds(resolution)


def check_convergence(
    f: IfpnPair,
    s: SequenceSpec,
    tail: int = DEFAULT_TAIL,
    tol: float = DEFAULT_TOL,
    t_ladder: tuple[float, ...] | None = None,
) -> DecisionOutcome:
    """Check that the sequence converges to its declared limit under the pair.

    Convergence demands mu(terms(n) - limit, t) -> 1 and nu -> 0 for every
    t > 0.  The check samples the final quarter of indices up to ``tail``
    (at most ``MAX_TAIL_SAMPLES`` of them, endpoints always included) and
    requires mu >= 1 - tol and nu <= tol throughout.  A failing sample whose
    gap is still shrinking between the quarter start and the tail yields
    Inconclusive rather than Refuted.
    """
    if tail < 10:
        raise ValueError(f"tail must be at least 10, got {tail}")
    if t_ladder is None:
        t_ladder = tuple(float(t) for t in np.logspace(-4.0, 4.0, 33))
    ladder = np.asarray(t_ladder, dtype=float)
    n0 = max(1, math.ceil(0.75 * tail))
    count = tail - n0 + 1
    if count <= MAX_TAIL_SAMPLES:
        ns = np.arange(n0, tail + 1)
    else:
        ns = np.unique(np.linspace(n0, tail, MAX_TAIL_SAMPLES).astype(int))
    resolution = (
        f"tail {tail}, sampled {len(ns)} indices in [{n0}, {tail}], "
        f"{len(ladder)} t values, tol {tol:g}"
    )

    worst: tuple[float, int, float, float, float] | None = None
    for n in ns:
        d = s.terms(int(n)) - s.declared_limit
        mu_vals = np.asarray(f.mu(d, ladder), dtype=float)
        nu_vals = np.asarray(f.nu(d, ladder), dtype=float)
        gaps = np.maximum(1.0 - tol - mu_vals, nu_vals - tol)
        k = int(np.argmax(gaps))
        if gaps[k] > 0 and (worst is None or gaps[k] > worst[0]):
            worst = (float(gaps[k]), int(n), float(ladder[k]),
                     float(mu_vals[k]), float(nu_vals[k]))
    if worst is None:
        return holds(resolution)

    _, n_bad, t_bad, mu_bad, nu_bad = worst
    d_first = s.terms(int(ns[0])) - s.declared_limit
    d_last = s.terms(int(ns[-1])) - s.declared_limit
    gap_first = max(
        1.0 - float(f.mu(d_first, t_bad)), float(f.nu(d_first, t_bad))
    )
    gap_last = max(1.0 - float(f.mu(d_last, t_bad)), float(f.nu(d_last, t_bad)))
    trend = {
        "sequence": s.name, "t": t_bad,
        "gap_at_quarter_start": gap_first, "gap_at_tail": gap_last,
    }
    if gap_last < gap_first * (1.0 - 1e-6):
        return inconclusive(
            resolution,
            detail=f"{s.name}: still converging at n={n_bad}, t={t_bad:g}",
            trend=trend,
        )
    return refuted(
        resolution,
        {"sequence": s.name, "n": n_bad, "t": t_bad, "mu": mu_bad, "nu": nu_bad},
        detail="sequence does not converge to its declared limit",
        trend=trend,
    )
