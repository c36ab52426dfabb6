"""Bracketing and bisection on monotone predicates.

The quantities this package computes are infima of half-line predicate sets,
``inf {t > 0 : P(t)}`` with ``P`` monotone in ``t``.  Because the true set is
an interval tail, plain bisection converges and needs no derivative or sign
change.  Batched variants run many independent one-dimensional searches in
lockstep on numpy arrays, which is what makes grid sweeps affordable.
"""

from __future__ import annotations

from typing import Callable

import numpy as np


class BracketExceeded(RuntimeError):
    """The predicate never became true below the search ceiling."""

    def __init__(self, message: str, detail: dict | None = None):
        super().__init__(message)
        self.detail = detail or {}


def monotone_infimum(
    predicate: Callable[[float], bool],
    *,
    lo: float = 0.0,
    hi_start: float = 1.0,
    cap: float = 1e6,
    tol: float = 1e-9,
    grow: float = 2.0,
) -> float:
    """Infimum of the true set of a monotone (false below, true above) predicate.

    Returns the upper bisection end, so the result lies in [inf, inf + tol].
    Raises BracketExceeded if the predicate is still false at ``cap``.
    """
    hi = hi_start
    while not predicate(hi):
        if hi >= cap:
            raise BracketExceeded(
                f"predicate still false at cap {cap:g}", {"cap": cap}
            )
        hi = min(hi * grow, cap)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:  # float spacing exhausted
            break
        if predicate(mid):
            hi = mid
        else:
            lo = mid
    return hi


def monotone_infimum_batch(
    predicate: Callable[[np.ndarray], np.ndarray],
    size: int,
    *,
    lo: float = 0.0,
    hi_start: float = 1.0,
    cap: float = 1e6,
    tol: float = 1e-9,
    grow: float = 2.0,
) -> np.ndarray:
    """Vectorised :func:`monotone_infimum` over ``size`` independent searches.

    ``predicate`` maps an array of trial points to a boolean array of the
    same shape.  All searches share ``lo``/``cap`` but bracket independently.
    """
    los = np.full(size, float(lo))
    his = np.full(size, float(hi_start))
    pending = ~np.asarray(predicate(his), dtype=bool)
    while pending.any():
        at_cap = pending & (his >= cap)
        if at_cap.any():
            idx = int(np.argmax(at_cap))
            raise BracketExceeded(
                f"predicate still false at cap {cap:g}",
                {"cap": cap, "index": idx},
            )
        his = np.where(pending, np.minimum(his * grow, cap), his)
        pending &= ~np.asarray(predicate(his), dtype=bool)
    while True:
        mids = 0.5 * (los + his)
        # an element is done below tol or once float spacing is exhausted
        active = (his - los > tol) & (mids > los) & (mids < his)
        if not active.any():
            break
        true_mask = np.asarray(predicate(mids), dtype=bool)
        his = np.where(active & true_mask, mids, his)
        los = np.where(active & ~true_mask, mids, los)
    return his


def bisect_boundary_batch(
    predicate: Callable[[np.ndarray], np.ndarray],
    lo: float,
    hi: float,
    size: int,
    *,
    tol: float = 1e-9,
    true_side: str = "high",
) -> np.ndarray:
    """Boundary of a monotone predicate on a fixed interval (lo, hi).

    ``true_side="high"``: predicate false near lo, true near hi; returns the
    upper end (infimum of the true set).  ``true_side="low"``: predicate true
    near lo; returns the lower end (supremum of the true set).  The endpoints
    are treated as virtual, the predicate is only evaluated strictly inside.
    """
    if true_side not in ("high", "low"):
        raise ValueError(f"true_side must be 'high' or 'low', got {true_side!r}")
    los = np.full(size, float(lo))
    his = np.full(size, float(hi))
    while True:
        mids = 0.5 * (los + his)
        active = (his - los > tol) & (mids > los) & (mids < his)
        if not active.any():
            break
        true_mask = np.asarray(predicate(mids), dtype=bool)
        if true_side == "high":
            his = np.where(active & true_mask, mids, his)
            los = np.where(active & ~true_mask, mids, los)
        else:
            los = np.where(active & true_mask, mids, los)
            his = np.where(active & ~true_mask, mids, his)
    return his if true_side == "high" else los
