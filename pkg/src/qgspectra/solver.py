"""Separator-bracketed root extraction over the derivative ladder.

At the regular level the extrema of the leading cosine separate the roots:
the function value at those points alternates in sign, so every interval
between consecutive separators brackets exactly one root.  One level down,
the roots just found act as separators (they are the extrema of the level
below), and a root may legitimately coincide with a separator; that case is
detected by a magnitude test before any interior search.  Descending level
by level yields the complete spectrum of the original function.

Interior refinement uses Brent's method on a guaranteed bracket.  A few
interior probe points per interval guard against silently dropping a root
pair: two sign changes inside one interval mean the separator structure is
broken, which aborts with a diagnostic rather than returning a bad table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from scipy.optimize import brentq

from .trig import (
    DerivativeLadder,
    TrigSpectralFunction,
    build_ladder,
    is_regular,
    regularity_sum,
    scalar_fn,
)

__all__ = [
    "INTERIOR",
    "SEPARATOR_COINCIDENCE",
    "SolverConfig",
    "RootEntry",
    "RootTable",
    "LadderSolution",
    "BracketError",
    "RefinementStall",
    "SeparatorFailure",
    "regular_separators",
    "extract_root",
    "descend_level",
    "solve_ladder",
]

INTERIOR = "interior"
SEPARATOR_COINCIDENCE = "separator-coincidence"

# Interval probe offsets: fractional parts of n*(sqrt(5)-1)/2, so probes
# never land on rational subdivisions where the roots of integer-action
# functions like to sit.
_PROBE_OFFSETS = (
    0.2360679774997898,
    0.4721359549995796,
    0.6180339887498949,
    0.8541019662496847,
)


class BracketError(RuntimeError):
    """Root refinement was asked to search an interval with no sign change."""


class RefinementStall(RuntimeError):
    """Bracketed refinement failed to converge."""


class SeparatorFailure(RuntimeError):
    """More than one root detected between consecutive separators."""

    def __init__(self, message: str, interval: tuple[float, float], level: int | None = None):
        super().__init__(message)
        self.interval = interval
        self.level = level


@dataclass(frozen=True, slots=True)
class SolverConfig:
    """Window and tolerances for the ladder solver.

    ``coincidence_tol`` is rescaled internally by ``1 + sum|a_j|`` of the
    function being tested, so it is a relative threshold.
    """

    k_max: float
    root_tol: float = 1e-12
    coincidence_tol: float = 1e-10
    max_order: int = 64

    def __post_init__(self) -> None:
        if not (math.isfinite(self.k_max) and self.k_max > 0.0):
            raise ValueError(f"k_max must be positive, got {self.k_max}")
        if not (0.0 < self.root_tol < self.k_max):
            raise ValueError(f"root_tol must be in (0, k_max), got {self.root_tol}")
        if not (self.coincidence_tol > 0.0):
            raise ValueError(f"coincidence_tol must be positive, got {self.coincidence_tol}")
        if self.max_order < 0:
            raise ValueError(f"max_order must be nonnegative, got {self.max_order}")


@dataclass(frozen=True, slots=True)
class RootEntry:
    n: int
    k: float
    kind: str


@dataclass(frozen=True, slots=True)
class RootTable:
    """Indexed roots of one ladder level, ascending in k, n starting at 1."""

    level: int
    entries: tuple[RootEntry, ...]

    def __post_init__(self) -> None:
        prev = 0.0
        for i, e in enumerate(self.entries):
            if e.n != i + 1:
                raise ValueError(f"root indices must run 1..N, got n={e.n} at position {i}")
            if e.k <= prev and i > 0:
                raise ValueError(f"roots must strictly increase, got {e.k} after {prev}")
            if e.kind not in (INTERIOR, SEPARATOR_COINCIDENCE):
                raise ValueError(f"unknown root kind {e.kind!r}")
            prev = e.k

    @classmethod
    def from_roots(cls, level: int, roots: Iterable[tuple[float, str]]) -> "RootTable":
        entries = tuple(
            RootEntry(i + 1, k, kind) for i, (k, kind) in enumerate(roots)
        )
        return cls(level, entries)

    @property
    def ks(self) -> list[float]:
        return [e.k for e in self.entries]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


@dataclass(frozen=True, slots=True)
class LadderSolution:
    """Ladder plus one root table per level, ordered from level M down to 0."""

    ladder: DerivativeLadder
    tables: tuple[RootTable, ...]

    @property
    def spectrum(self) -> RootTable:
        return self.tables[-1]

    @property
    def eigenvalues(self) -> tuple[float, ...]:
        return tuple(e.k * e.k for e in self.spectrum.entries)

    def table(self, level: int) -> RootTable:
        t = self.tables[self.ladder.order - level]
        assert t.level == level
        return t


def regular_separators(f: TrigSpectralFunction, k_max: float) -> list[float]:
    """Extrema of the leading cosine in (0, k_max].

    Only valid for regular functions: there the perturbation cannot flip
    the sign of the leading cosine at its extrema, so consecutive
    separators bracket exactly one root each.
    """
    if not is_regular(f):
        raise ValueError(
            "regularity condition violated: amplitude sum "
            f"{regularity_sum(f)} is not below 1"
        )
    spacing = math.pi / f.s0
    n = math.floor(-f.gamma0) + 1
    while f.gamma0 + n <= 0.0:
        n += 1
    while f.gamma0 + (n - 1) > 0.0:
        n -= 1
    out: list[float] = []
    while True:
        k = (f.gamma0 + n) * spacing
        if k > k_max:
            break
        if k > 0.0:
            out.append(k)
        n += 1
    return out


def _refine(g, lo: float, hi: float, flo: float, fhi: float, tol: float) -> float:
    if flo * fhi >= 0.0:
        raise BracketError(
            f"bracket violation: no sign change on [{lo}, {hi}] "
            f"(f(lo)={flo}, f(hi)={fhi})"
        )
    root, res = brentq(g, lo, hi, xtol=tol, maxiter=100, full_output=True, disp=False)
    if not res.converged:
        raise RefinementStall(f"refinement stall on [{lo}, {hi}]")
    return root


def extract_root(
    f: TrigSpectralFunction,
    bracket: tuple[float, float],
    root_tol: float = 1e-12,
) -> float:
    """One root inside a sign-change bracket, to within ``root_tol``.

    Brent iterates stay inside the bracket, so the result is guaranteed to
    lie in ``[lo, hi]``.  Raises :class:`BracketError` when the endpoint
    signs do not differ.
    """
    lo, hi = bracket
    if not lo < hi:
        raise ValueError(f"empty bracket [{lo}, {hi}]")
    g = scalar_fn(f)
    return _refine(g, lo, hi, g(lo), g(hi), root_tol)


def _sweep(
    f: TrigSpectralFunction,
    boundaries: Sequence[float],
    cfg: SolverConfig,
    *,
    coincidences: bool,
    level: int | None = None,
) -> list[tuple[float, str]]:
    """Roots of ``f`` in (0, k_max], bracketed by the given boundary points.

    Boundaries are either regular-level separators (``coincidences=False``)
    or the roots of the level above (``coincidences=True``); in the latter
    case a boundary where ``|f|`` is below the scaled coincidence threshold
    is itself recorded as a root and its two adjacent intervals are skipped.
    The window edges get the same magnitude test: a vanishing value at the
    lower edge is the trivial zero at k=0, which is excluded from the
    counting, while one at ``k_max`` is recorded as a root.
    """
    g = scalar_fn(f)
    thresh = cfg.coincidence_tol * (1.0 + regularity_sum(f))
    lo, hi = cfg.root_tol, cfg.k_max
    pts = [lo] + [b for b in boundaries if lo < b < hi] + [hi]
    vals = [g(p) for p in pts]
    n_iv = len(pts) - 1
    skip = [False] * n_iv

    found: list[tuple[float, str]] = []
    if coincidences:
        for j in range(1, n_iv):
            if abs(vals[j]) <= thresh:
                found.append((pts[j], SEPARATOR_COINCIDENCE))
                skip[j - 1] = True
                skip[j] = True
    if abs(vals[0]) <= thresh:
        skip[0] = True
    if abs(vals[-1]) <= thresh and not skip[n_iv - 1]:
        found.append((hi, INTERIOR))
        skip[n_iv - 1] = True

    for i in range(n_iv):
        if skip[i]:
            continue
        a, b = pts[i], pts[i + 1]
        if b - a <= 2.0 * cfg.root_tol:
            continue
        nodes = [a] + [a + t * (b - a) for t in _PROBE_OFFSETS] + [b]
        fvals = [vals[i]] + [g(x) for x in nodes[1:-1]] + [vals[i + 1]]
        changes = [j for j in range(len(nodes) - 1) if fvals[j] * fvals[j + 1] < 0.0]
        if not changes:
            continue
        if len(changes) > 1:
            raise SeparatorFailure(
                f"separator failure: {len(changes)} sign changes inside "
                f"({a}, {b}) at level {level}; the interval should bracket "
                "at most one root",
                interval=(a, b),
                level=level,
            )
        j = changes[0]
        root = _refine(g, nodes[j], nodes[j + 1], fvals[j], fvals[j + 1], cfg.root_tol)
        found.append((root, INTERIOR))

    found.sort(key=lambda rk: rk[0])
    return found


def descend_level(
    f_lower: TrigSpectralFunction,
    upper_roots: RootTable,
    cfg: SolverConfig,
) -> RootTable:
    """Roots of the level below, using the level above's roots as separators.

    ``upper_roots`` must be the complete root table of the derivative level
    of ``f_lower`` over the same window.
    """
    roots = _sweep(
        f_lower,
        [e.k for e in upper_roots.entries],
        cfg,
        coincidences=True,
        level=upper_roots.level - 1,
    )
    return RootTable.from_roots(upper_roots.level - 1, roots)


def _solve_regular_level(
    f: TrigSpectralFunction, cfg: SolverConfig, level: int
) -> RootTable:
    seps = regular_separators(f, cfg.k_max)
    roots = _sweep(f, seps, cfg, coincidences=False, level=level)
    return RootTable.from_roots(level, roots)


def solve_ladder(f: TrigSpectralFunction, cfg: SolverConfig) -> LadderSolution:
    """Complete spectrum of ``f`` over (0, k_max].

    Builds the derivative ladder, extracts the regular level's roots
    between leading-cosine extrema, then walks the ladder back down with
    each level's roots separating the next.  Root tables are returned for
    every level, ordered M..0; eigenvalues are the squared level-0 roots.
    """
    spacing = math.pi / f.s0
    if not cfg.root_tol < spacing:
        raise ValueError(
            f"root_tol {cfg.root_tol} must be smaller than the separator "
            f"spacing pi/s0 = {spacing}"
        )
    ladder = build_ladder(f, cfg.max_order)
    order = ladder.order
    tables = [_solve_regular_level(ladder.top, cfg, order)]
    for m in range(order - 1, -1, -1):
        tables.append(descend_level(ladder[m], tables[-1], cfg))
    return LadderSolution(ladder=ladder, tables=tuple(tables))
