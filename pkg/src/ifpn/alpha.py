"""Alpha-level norm families: extraction, validation, and reconstruction.

For a pair (mu, nu) the level functions

    ascending(x, alpha)  = inf {t > 0 : mu(x, t) >= alpha}
    descending(x, alpha) = inf {t > 0 : nu(x, t) <= alpha}

form an ascending (resp. descending) family of pseudo norms in alpha.  Both
infima are computed by bracket doubling plus bisection on the monotone
predicate, so results carry a one-sided error of at most ``bisect_tol``.
The family can be folded back into a pair by taking suprema/infima over
alpha, and the round trip reproduces the original pair pointwise away from
its jump abscissas in t.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .outcome import DecisionOutcome, holds, refuted
from .pairs import IfpnPair
from .search import BracketExceeded, bisect_boundary_batch, monotone_infimum_batch
from .vectorspace import (
    Point,
    PseudoNorm,
    SampleGrid,
    check_pseudo_norm_axioms,
    zero_point,
)

DEFAULT_BISECT_TOL = 1e-9
DEFAULT_BRACKET_CAP = 1e6
JUMP_PROBE = 1e-6
JUMP_SIZE = 0.1


@dataclass(frozen=True)
class AlphaFamily:
    """Both level families of a pair, realised as bisection queries."""

    source: IfpnPair
    bracket_cap: float = DEFAULT_BRACKET_CAP
    bisect_tol: float = DEFAULT_BISECT_TOL

    def ascending(self, x: Point, alpha: float) -> float:
        return alpha_norm(
            self.source, x, alpha, bracket_cap=self.bracket_cap,
            bisect_tol=self.bisect_tol,
        )

    def ascending_many(self, x: Point, alphas: np.ndarray) -> np.ndarray:
        return alpha_norm_many(
            self.source, x, alphas, bracket_cap=self.bracket_cap,
            bisect_tol=self.bisect_tol,
        )

    def descending(self, x: Point, alpha: float) -> float:
        return alpha_conorm(
            self.source, x, alpha, bracket_cap=self.bracket_cap,
            bisect_tol=self.bisect_tol,
        )

    def descending_many(self, x: Point, alphas: np.ndarray) -> np.ndarray:
        return alpha_conorm_many(
            self.source, x, alphas, bracket_cap=self.bracket_cap,
            bisect_tol=self.bisect_tol,
        )


def _check_alpha(alpha: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")


def alpha_norm_many(
    f: IfpnPair,
    x: Point,
    alphas,
    *,
    bracket_cap: float = DEFAULT_BRACKET_CAP,
    bisect_tol: float = DEFAULT_BISECT_TOL,
) -> np.ndarray:
    """Vectorised ascending level values of one point at many alphas."""
    alphas = np.asarray(alphas, dtype=float)
    for a in np.atleast_1d(alphas):
        _check_alpha(float(a))

    def predicate(ts: np.ndarray) -> np.ndarray:
        return np.asarray(f.mu(x, ts), dtype=float) >= alphas

    try:
        return monotone_infimum_batch(
            predicate, alphas.size, lo=0.0, hi_start=1.0,
            cap=bracket_cap, tol=bisect_tol,
        )
    except BracketExceeded as exc:
        idx = exc.detail.get("index", 0)
        raise BracketExceeded(
            f"mu({x.as_list()}, t) never reaches alpha="
            f"{float(np.atleast_1d(alphas)[idx]):g} below cap {bracket_cap:g}",
            exc.detail,
        ) from None


def alpha_norm(
    f: IfpnPair,
    x: Point,
    alpha: float,
    *,
    bracket_cap: float = DEFAULT_BRACKET_CAP,
    bisect_tol: float = DEFAULT_BISECT_TOL,
) -> float:
    """inf {t > 0 : mu(x, t) >= alpha}, within ``bisect_tol`` from above."""
    return float(
        alpha_norm_many(
            f, x, np.asarray([alpha]), bracket_cap=bracket_cap,
            bisect_tol=bisect_tol,
        )[0]
    )


def alpha_conorm_many(
    f: IfpnPair,
    x: Point,
    alphas,
    *,
    bracket_cap: float = DEFAULT_BRACKET_CAP,
    bisect_tol: float = DEFAULT_BISECT_TOL,
) -> np.ndarray:
    """Vectorised descending level values of one point at many alphas."""
    alphas = np.asarray(alphas, dtype=float)
    for a in np.atleast_1d(alphas):
        _check_alpha(float(a))

    def predicate(ts: np.ndarray) -> np.ndarray:
        return np.asarray(f.nu(x, ts), dtype=float) <= alphas

    try:
        return monotone_infimum_batch(
            predicate, alphas.size, lo=0.0, hi_start=1.0,
            cap=bracket_cap, tol=bisect_tol,
        )
    except BracketExceeded as exc:
        idx = exc.detail.get("index", 0)
        raise BracketExceeded(
            f"nu({x.as_list()}, t) never falls to alpha="
            f"{float(np.atleast_1d(alphas)[idx]):g} below cap {bracket_cap:g}",
            exc.detail,
        ) from None


def alpha_conorm(
    f: IfpnPair,
    x: Point,
    alpha: float,
    *,
    bracket_cap: float = DEFAULT_BRACKET_CAP,
    bisect_tol: float = DEFAULT_BISECT_TOL,
) -> float:
    """inf {t > 0 : nu(x, t) <= alpha}, within ``bisect_tol`` from above."""
    return float(
        alpha_conorm_many(
            f, x, np.asarray([alpha]), bracket_cap=bracket_cap,
            bisect_tol=bisect_tol,
        )[0]
    )


def _levels_flat(
    profile,
    r_flat: np.ndarray,
    a_flat: np.ndarray,
    *,
    ascending: bool,
    cap: float,
    tol: float,
) -> np.ndarray:
    """Element-wise level values for flat (norm, alpha) arrays of equal size."""

    def predicate(ts: np.ndarray) -> np.ndarray:
        vals = np.asarray(profile(r_flat, ts), dtype=float)
        return vals >= a_flat if ascending else vals <= a_flat

    return monotone_infimum_batch(
        predicate, r_flat.size, lo=0.0, hi_start=1.0, cap=cap, tol=tol
    )


def profile_levels(
    profile,
    norms: np.ndarray,
    alphas: np.ndarray,
    *,
    ascending: bool,
    cap: float = DEFAULT_BRACKET_CAP,
    tol: float = DEFAULT_BISECT_TOL,
) -> np.ndarray:
    """Level values over a (norms x alphas) grid for a norm-profiled pair.

    Returns shape (len(norms), len(alphas)).  This is the batched work-horse
    behind family validation, round trips, and the alpha-norm boundedness
    classifier; it runs every bisection in lockstep.
    """
    norms = np.asarray(norms, dtype=float)
    alphas = np.asarray(alphas, dtype=float)
    r_flat = np.repeat(norms, alphas.size)
    a_flat = np.tile(alphas, norms.size)
    flat = _levels_flat(profile, r_flat, a_flat, ascending=ascending, cap=cap, tol=tol)
    return flat.reshape(norms.size, alphas.size)


def _rebuilt_profile_values(
    profile,
    norms: np.ndarray,
    ts: np.ndarray,
    *,
    ascending: bool,
    cap: float,
    tol: float,
) -> np.ndarray:
    """Reconstructed mu (ascending) or nu values over (norms x ts), batched."""
    norms = np.asarray(norms, dtype=float)
    ts = np.asarray(ts, dtype=float)
    r_flat = np.repeat(norms, ts.size)
    t_flat = np.tile(ts, norms.size)

    def predicate(a_flat: np.ndarray) -> np.ndarray:
        levels = _levels_flat(
            profile, r_flat, a_flat, ascending=ascending, cap=cap, tol=tol
        )
        return levels <= t_flat

    side = "low" if ascending else "high"
    flat = bisect_boundary_batch(
        predicate, 0.0, 1.0, r_flat.size, tol=tol, true_side=side
    )
    return flat.reshape(norms.size, ts.size)


def check_family(
    fam: AlphaFamily,
    grid: SampleGrid,
    alpha_grid: tuple[float, ...],
    tol: float = 1e-9,
) -> DecisionOutcome:
    """Validate the family structure on the grid.

    (a) each fixed-alpha slice of both families satisfies the pseudo norm
    axioms, and (b) the ascending family is monotone non-decreasing and the
    descending family monotone non-increasing across ``alpha_grid``.
    Comparisons get ``2 * bisect_tol`` of extra slack for bisection error.
    """
    alphas = np.asarray(alpha_grid, dtype=float)
    slack = tol + 2.0 * fam.bisect_tol
    resolution = (
        f"{grid.describe()}, {alphas.size} alphas, bisect tol "
        f"{fam.bisect_tol:g}, slack {slack:g}"
    )

    asc = np.asarray([fam.ascending_many(x, alphas) for x in grid.points])
    desc = np.asarray([fam.descending_many(x, alphas) for x in grid.points])

    # (b) monotone ordering in alpha
    bad = asc[:, :-1] > asc[:, 1:] + slack
    if bad.any():
        i, j = np.unravel_index(int(np.argmax(bad)), bad.shape)
        return refuted(
            resolution,
            {"family": "ascending", "x": grid.points[i].as_list(),
             "alpha1": float(alphas[j]), "alpha2": float(alphas[j + 1]),
             "value1": float(asc[i, j]), "value2": float(asc[i, j + 1])},
            detail="ascending family not monotone",
        )
    bad = desc[:, :-1] < desc[:, 1:] - slack
    if bad.any():
        i, j = np.unravel_index(int(np.argmax(bad)), bad.shape)
        return refuted(
            resolution,
            {"family": "descending", "x": grid.points[i].as_list(),
             "alpha1": float(alphas[j]), "alpha2": float(alphas[j + 1]),
             "value1": float(desc[i, j]), "value2": float(desc[i, j + 1])},
            detail="descending family not monotone",
        )

    # (a) each slice is a pseudo norm on the grid
    f = fam.source
    for j, a in enumerate(alphas):
        for label, ascending in (("ascending", True), ("descending", False)):
            if f.vectorised:
                profile = f.mu_profile if ascending else f.nu_profile
                base_norm = f.norm

                def slice_many(m, _p=profile, _a=float(a), _n=base_norm):
                    levels = profile_levels(
                        _p, _n.many(m), np.asarray([_a]), ascending=ascending,
                        cap=fam.bracket_cap, tol=fam.bisect_tol,
                    )
                    return levels[:, 0]

                def slice_eval(q: Point, _many=slice_many):
                    return float(_many(np.asarray([q.coords]))[0])
            else:
                evaluate = fam.ascending if ascending else fam.descending

                def slice_eval(q: Point, _e=evaluate, _a=float(a)):
                    return _e(q, _a)

                slice_many = None
            slice_norm = PseudoNorm(
                f"{label}[alpha={a:g}]", grid.dimension, slice_eval, slice_many
            )
            sub = check_pseudo_norm_axioms(slice_norm, grid, tol=slack)
            if not sub.holds:
                witness = dict(sub.witness or {})
                witness.update({"family": label, "alpha": float(a)})
                return refuted(
                    resolution, witness,
                    detail=f"{label} slice at alpha={a:g}: {sub.detail}",
                )
    return holds(resolution)


def reconstruct(fam: AlphaFamily) -> IfpnPair:
    """Fold the families back into a pair.

    mu'(x, t) = sup {alpha : ascending(x, alpha) <= t} for t > 0, else 0;
    nu'(x, t) = inf {alpha : descending(x, alpha) <= t} for t > 0, else 1.
    Both bounds are realised by bisection on alpha over (0, 1), using the
    monotonicity of the families in alpha, to within ``bisect_tol``.
    """
    tol = fam.bisect_tol

    def mu(x: Point, t):
        ts = np.atleast_1d(np.asarray(t, dtype=float))
        out = np.zeros(ts.shape)
        pos = ts > 0
        if pos.any():
            tpos = ts[pos]

            def predicate(alphas: np.ndarray) -> np.ndarray:
                return fam.ascending_many(x, alphas) <= tpos

            out[pos] = bisect_boundary_batch(
                predicate, 0.0, 1.0, tpos.size, tol=tol, true_side="low"
            )
        return float(out[0]) if np.ndim(t) == 0 else out.reshape(np.shape(t))

    def nu(x: Point, t):
        ts = np.atleast_1d(np.asarray(t, dtype=float))
        out = np.ones(ts.shape)
        pos = ts > 0
        if pos.any():
            tpos = ts[pos]

            def predicate(alphas: np.ndarray) -> np.ndarray:
                return fam.descending_many(x, alphas) <= tpos

            out[pos] = bisect_boundary_batch(
                predicate, 0.0, 1.0, tpos.size, tol=tol, true_side="high"
            )
        return float(out[0]) if np.ndim(t) == 0 else out.reshape(np.shape(t))

    return IfpnPair(
        name=f"reconstructed({fam.source.name})",
        dimension=fam.source.dimension,
        mu=mu,
        nu=nu,
    )


def roundtrip_check(
    f: IfpnPair,
    grid: SampleGrid,
    tol: float = 1e-6,
    *,
    bisect_tol: float = DEFAULT_BISECT_TOL,
    bracket_cap: float = DEFAULT_BRACKET_CAP,
) -> DecisionOutcome:
    """Compare the pair against its reconstruction over grid x ladder.

    Pointwise comparison at a jump abscissa of mu(x, .) is resolution
    dependent, so any t where the pair moves by more than ``JUMP_SIZE``
    across a ``JUMP_PROBE`` neighbourhood is excluded and the exclusion is
    recorded in the outcome.
    """
    fam = AlphaFamily(f, bracket_cap=bracket_cap, bisect_tol=bisect_tol)
    ladder = np.asarray(grid.t_ladder, dtype=float)
    resolution = (
        f"{grid.describe()}, tol {tol:g}, bisect tol {bisect_tol:g}, "
        f"jump band {JUMP_PROBE:g}"
    )
    pts = grid.points
    lo_probe = np.maximum(ladder - JUMP_PROBE, ladder * 0.5)
    hi_probe = ladder + JUMP_PROBE

    if f.vectorised:
        from .vectorspace import coords_matrix

        rs = f.norm.many(coords_matrix(pts))
        MU = f.mu_profile(rs[:, None], ladder[None, :])
        NU = f.nu_profile(rs[:, None], ladder[None, :])
        near = np.abs(
            f.mu_profile(rs[:, None], hi_probe[None, :])
            - f.mu_profile(rs[:, None], lo_probe[None, :])
        )
        keep = near <= JUMP_SIZE
        MU_r = _rebuilt_profile_values(
            f.mu_profile, rs, ladder, ascending=True,
            cap=bracket_cap, tol=bisect_tol,
        )
        NU_r = _rebuilt_profile_values(
            f.nu_profile, rs, ladder, ascending=False,
            cap=bracket_cap, tol=bisect_tol,
        )
        err = np.where(keep, np.maximum(np.abs(MU_r - MU), np.abs(NU_r - NU)), 0.0)
        excluded = int((~keep).sum())
        if (err > tol).any():
            i, k = np.unravel_index(int(np.argmax(err > tol)), err.shape)
            return refuted(
                resolution,
                {"x": pts[i].as_list(), "t": float(ladder[k]),
                 "mu": float(MU[i, k]), "mu_rebuilt": float(MU_r[i, k]),
                 "nu": float(NU[i, k]), "nu_rebuilt": float(NU_r[i, k]),
                 "error": float(err[i, k])},
                detail="reconstruction mismatch",
                excluded_jump_samples=excluded,
            )
        out = holds(resolution)
        out.data["excluded_jump_samples"] = excluded
        return out

    rebuilt = reconstruct(fam)
    excluded = 0
    for x in pts:
        near = np.abs(np.asarray(f.mu(x, hi_probe)) - np.asarray(f.mu(x, lo_probe)))
        keep = near <= JUMP_SIZE
        excluded += int((~keep).sum())
        if not keep.any():
            continue
        ts = ladder[keep]
        mu_here = np.asarray(f.mu(x, ts))
        nu_here = np.asarray(f.nu(x, ts))
        mu_back = np.asarray(rebuilt.mu(x, ts))
        nu_back = np.asarray(rebuilt.nu(x, ts))
        err = np.maximum(np.abs(mu_back - mu_here), np.abs(nu_back - nu_here))
        if (err > tol).any():
            k = int(np.argmax(err))
            return refuted(
                resolution,
                {"x": x.as_list(), "t": float(ts[k]),
                 "mu": float(mu_here[k]), "mu_rebuilt": float(mu_back[k]),
                 "nu": float(nu_here[k]), "nu_rebuilt": float(nu_back[k]),
                 "error": float(err[k])},
                detail="reconstruction mismatch",
                excluded_jump_samples=excluded,
            )
    out = holds(resolution)
    out.data["excluded_jump_samples"] = excluded
    return out


def closed_form_ascending(p: PseudoNorm, x: Point, alpha: float) -> float:
    """Closed form of the ascending level for standard pairs, used as oracle.

    Inverting t/(t + r) >= alpha on t <= r and the 1-branch on t > r gives
    r * min(alpha / (1 - alpha), 1).
    """
    _check_alpha(alpha)
    return p(x) * min(alpha / (1.0 - alpha), 1.0)


def closed_form_descending(p: PseudoNorm, x: Point, alpha: float) -> float:
    """Closed form of the descending level for standard pairs (oracle)."""
    _check_alpha(alpha)
    return p(x) * min((1.0 - alpha) / alpha, 1.0)
