"""Dense-scan root finding and cross-checks, independent of the ladder.

Everything here treats the spectral function as a black box on a window:
sample it on a fine grid, bisect every sign-change cell, and probe small-
magnitude dips for tangent (double) roots via the sign of a central
difference.  No derivative ladder, no separator structure, no SciPy root
finder; this is the reference implementation the fast solver is audited
against, so it shares as little machinery with it as possible.

The Weyl audit checks the root count against the leading-order expectation
``s0 * k / pi``; for a regular function the deviation is bounded by the
number of perturbing terms plus one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .trig import TrigSpectralFunction, eval_grid, regularity_sum, scalar_fn

__all__ = [
    "OracleReport",
    "WeylAudit",
    "scan_roots",
    "compare",
    "weyl_audit",
]

# Grid values below this (scaled) floor are exact zeros for sign purposes;
# cosine sums evaluated at machine-representable multiples of pi can land
# within a few ulps of zero without crossing.
_ZERO_FLOOR = 1e-13

# |f| below this fraction of the scale at a grid point flags a dip worth
# probing for a tangency even without a sign change nearby.
_DIP_FRACTION = 0.05


@dataclass(frozen=True, slots=True)
class OracleReport:
    """Outcome of comparing a solver root list against an oracle scan."""

    roots: tuple[float, ...]
    scan_step: float
    matched: tuple[tuple[int, float], ...]
    verdict: str
    mismatch_index: int | None = None
    message: str = ""

    @property
    def ok(self) -> bool:
        return self.verdict == "pass"

    @property
    def max_deviation(self) -> float:
        return max((d for _, d in self.matched), default=0.0)


@dataclass(frozen=True, slots=True)
class WeylAudit:
    expected: float
    actual: int
    deviation: float

    def within(self, bound: float) -> bool:
        return self.deviation <= bound


def _bisect_vec(g, lo: np.ndarray, hi: np.ndarray, flo: np.ndarray, tol: float) -> np.ndarray:
    """Vectorized bisection on cells known to contain a sign change.

    ``flo`` carries the signs at ``lo``.  Iterates until every cell is
    narrower than ``tol``; the number of steps is fixed by the widest cell.
    """
    lo = lo.copy()
    hi = hi.copy()
    width = float(np.max(hi - lo)) if lo.size else 0.0
    steps = max(0, math.ceil(math.log2(width / tol))) if width > tol else 0
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        fmid = g(mid)
        left = flo * fmid > 0.0
        lo = np.where(left, mid, lo)
        flo = np.where(left, fmid, flo)
        hi = np.where(left, hi, mid)
    return 0.5 * (lo + hi)


def _probe_extremum(
    f: TrigSpectralFunction,
    lo: float,
    hi: float,
    step: float,
    refine_tol: float,
    coincidence_tol: float,
    scale: float,
) -> list[float]:
    """Inspect a small-|f| dip for a root the grid signs missed.

    Locates the interior critical point by bisecting on the sign of the
    central difference f(x+h)-f(x-h), which is monotone-free of charge:
    a single extremum inside the dip is assumed, which holds at dip width
    a few grid cells.  Classification at the critical point x*:

    - |f(x*)| within the coincidence threshold: tangent root at x*.
    - f(x*) opposite in sign to the dip edges: two simple roots straddle
      x*, found by scalar bisection on each side.
    - otherwise: the dip does not reach zero; nothing to report.
    """
    g = scalar_fn(f)
    h = step / 32.0

    def slope(x: float) -> float:
        return g(x + h) - g(x - h)

    a, b = lo, hi
    sa = slope(a)
    sb = slope(b)
    if sa * sb > 0.0:
        return []
    for _ in range(200):
        if b - a <= refine_tol:
            break
        m = 0.5 * (a + b)
        sm = slope(m)
        if sm == 0.0:
            a = b = m
            break
        if sa * sm < 0.0:
            b, sb = m, sm
        else:
            a, sa = m, sm
    x_star = 0.5 * (a + b)
    f_star = g(x_star)
    if abs(f_star) <= coincidence_tol * scale:
        return [x_star]
    f_lo, f_hi = g(lo), g(hi)
    if f_star * f_lo < 0.0 and f_star * f_hi < 0.0:
        left = _bisect_scalar(g, lo, x_star, f_lo, refine_tol)
        right = _bisect_scalar(g, x_star, hi, f_star, refine_tol)
        return [left, right]
    return []


def _bisect_scalar(g, lo: float, hi: float, flo: float, tol: float) -> float:
    for _ in range(200):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        fmid = g(mid)
        if fmid == 0.0:
            return mid
        if flo * fmid < 0.0:
            hi = mid
        else:
            lo, flo = mid, fmid
    return 0.5 * (lo + hi)


def scan_roots(
    f: TrigSpectralFunction,
    window: tuple[float, float],
    scan_step: float | None = None,
    refine_tol: float = 1e-12,
    coincidence_tol: float = 1e-10,
) -> tuple[list[float], float]:
    """All roots of ``f`` in ``(lo, hi]`` by dense grid scan.

    Tangent roots are counted once.  Returns the roots and the grid step
    actually used (default: a fortieth of the shortest oscillation
    half-period, pi/(40*s0)).
    """
    lo, hi = window
    if not (0.0 <= lo < hi):
        raise ValueError(f"bad window ({lo}, {hi})")
    if scan_step is None:
        scan_step = math.pi / (40.0 * f.s0)
    elif not scan_step <= math.pi / (4.0 * f.s0):
        # The leading cosine must be oversampled well past Nyquist or the
        # sign pattern on the grid is meaningless.
        raise ValueError(
            f"scan_step {scan_step} too coarse: need at most pi/(4*s0) = "
            f"{math.pi / (4.0 * f.s0)}"
        )
    n_cells = max(1, math.ceil((hi - lo) / scan_step))
    xs = np.linspace(lo, hi, n_cells + 1)
    step = xs[1] - xs[0]
    g_vec = lambda arr: eval_grid(f, arr)  # noqa: E731
    ys = eval_grid(f, xs)
    scale = 1.0 + regularity_sum(f)

    # Exact zeros on the grid: collapse runs of consecutive near-zero
    # samples to their minimum-|y| representative.
    zero_mask = np.abs(ys) <= _ZERO_FLOOR * scale
    grid_roots: list[float] = []
    i = 0
    while i < len(xs):
        if zero_mask[i]:
            j = i
            while j + 1 < len(xs) and zero_mask[j + 1]:
                j += 1
            run = slice(i, j + 1)
            best = i + int(np.argmin(np.abs(ys[run])))
            grid_roots.append(float(xs[best]))
            i = j + 1
        else:
            i += 1

    signs = np.where(zero_mask, 0.0, np.sign(ys))
    s_lo, s_hi = signs[:-1], signs[1:]
    cross = s_lo * s_hi < 0.0
    idx = np.nonzero(cross)[0]
    crossing_roots = (
        _bisect_vec(g_vec, xs[idx], xs[idx + 1], ys[idx], refine_tol).tolist()
        if idx.size
        else []
    )

    # Dip probing: small |f| at a grid point with no sign change or exact
    # zero in the neighboring cells may hide a tangency.
    dip = (np.abs(ys) < _DIP_FRACTION * scale) & ~zero_mask
    near_cross = np.zeros_like(dip)
    if idx.size:
        near_cross[idx] = True
        near_cross[idx + 1] = True
    dip &= ~near_cross
    dip_idx = np.nonzero(dip)[0]
    probe_roots: list[float] = []
    if dip_idx.size:
        clusters: list[tuple[int, int]] = []
        start = prev = int(dip_idx[0])
        for t in dip_idx[1:]:
            t = int(t)
            if t == prev + 1:
                prev = t
            else:
                clusters.append((start, prev))
                start = prev = t
        clusters.append((start, prev))
        for c_lo, c_hi in clusters:
            a = xs[max(0, c_lo - 1)]
            b = xs[min(len(xs) - 1, c_hi + 1)]
            probe_roots.extend(
                _probe_extremum(f, float(a), float(b), float(step), refine_tol, coincidence_tol, scale)
            )

    roots = sorted(grid_roots + crossing_roots + probe_roots)
    roots = [r for r in roots if r > lo + refine_tol]
    deduped: list[float] = []
    for r in roots:
        if not deduped or r - deduped[-1] > 4.0 * refine_tol:
            deduped.append(r)
    return deduped, float(step)


def compare(
    solver_roots: list[float] | tuple[float, ...],
    oracle_roots: list[float],
    tol: float = 1e-9,
    scan_step: float = float("nan"),
) -> OracleReport:
    """Position-by-position match of two ascending root lists."""
    ns, no = len(solver_roots), len(oracle_roots)
    if ns != no:
        # Point at the first index where the lists already disagree; when
        # the common prefix matches, the divergence is right past it.
        where = min(ns, no)
        for i in range(min(ns, no)):
            if abs(solver_roots[i] - oracle_roots[i]) > tol:
                where = i
                break
        return OracleReport(
            roots=tuple(oracle_roots),
            scan_step=scan_step,
            matched=(),
            verdict="fail",
            mismatch_index=where,
            message=(
                f"count mismatch: solver found {ns} roots, oracle found {no} "
                f"(lists diverge at index {where})"
            ),
        )
    matched: list[tuple[int, float]] = []
    for i, (a, b) in enumerate(zip(solver_roots, oracle_roots)):
        d = abs(a - b)
        if d > tol:
            return OracleReport(
                roots=tuple(oracle_roots),
                scan_step=scan_step,
                matched=tuple(matched),
                verdict="fail",
                mismatch_index=i,
                message=(
                    f"root {i + 1} deviates by {d:.3e} (solver {a!r}, "
                    f"oracle {b!r}, tol {tol:g})"
                ),
            )
        matched.append((i + 1, d))
    return OracleReport(
        roots=tuple(oracle_roots),
        scan_step=scan_step,
        matched=tuple(matched),
        verdict="pass",
    )


def weyl_audit(
    roots,
    s0: float,
    window: tuple[float, float],
) -> WeylAudit:
    """Root count against the leading-order counting law ``s0*k/pi``.

    The expected count over ``(lo, hi]`` is ``s0*(hi-lo)/pi``; the audit
    reports the absolute deviation of the actual count.  ``roots`` is a
    sequence of numbers, each counting once, or of root-table entries
    (anything with ``k`` and ``kind`` attributes); a separator-coincidence
    entry is a zero of even order and counts twice, which is what the
    counting law sees.
    """
    lo, hi = window
    if hi <= lo:
        return WeylAudit(expected=0.0, actual=0, deviation=0.0)
    actual = 0
    for r in roots:
        k = getattr(r, "k", None)
        if k is None:
            k, weight = float(r), 1
        else:
            weight = 2 if getattr(r, "kind", "") == "separator-coincidence" else 1
        if lo < k <= hi:
            actual += weight
    expected = s0 * (hi - lo) / math.pi
    return WeylAudit(expected=expected, actual=actual, deviation=abs(actual - expected))
