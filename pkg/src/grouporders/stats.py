"""Monte Carlo estimation of cylinder probabilities, invariance gaps, and
ranking-uniformity chi-square tests.

A sampler is any callable taking a 64-bit seed and returning an OrderMatrix
whose window covers the sets being probed.  Per-sample seeds are derived
sub-streams, so reports are deterministic given (seed, N).  The chi-square
quantile is computed in-repo from the regularized incomplete gamma function
(series + continued fraction), accurate to well below 1e-8.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from . import rng
from .errors import DomainNotCovered
from .groups import GroupElement, Window
from .orders import CylinderSpec, OrderMatrix, matches_cylinder, translate_order

Sampler = Callable[[int], OrderMatrix]


@dataclass(frozen=True)
class EstimateReport:
    target: CylinderSpec
    samples: int
    hits: int
    frequency: Fraction
    stderr: float

    def __post_init__(self):
        if not 0 <= self.hits <= self.samples:
            raise ValueError("hit count out of range")
        if self.frequency != Fraction(self.hits, self.samples):
            raise ValueError("frequency must equal hits/samples")


def pattern_from_permutation(D: Window, perm: Sequence[int]) -> CylinderSpec:
    """Cylinder whose pattern ranks D's elements by the given permutation."""
    return CylinderSpec(D, OrderMatrix.from_ranks(D, list(perm)))


def all_total_patterns(D: Window) -> list[CylinderSpec]:
    return [
        pattern_from_permutation(D, perm)
        for perm in itertools.permutations(range(len(D)))
    ]


def permutation_rank(perm: Sequence[int]) -> int:
    """Lexicographic rank of a permutation of 0..k-1 (Lehmer code)."""
    k = len(perm)
    rank = 0
    for i in range(k):
        smaller = sum(1 for j in range(i + 1, k) if perm[j] < perm[i])
        rank += smaller * math.factorial(k - 1 - i)
    return rank


def pattern_id(c: CylinderSpec) -> int:
    return permutation_rank(c.pattern.ranks())


def ranking_of(m: OrderMatrix, F: Window) -> tuple[int, ...]:
    """Relative ranks of F's elements (window-index order) inside m."""
    positions = [m.window.position(x) for x in F]
    k = len(positions)
    ranks = []
    for a in range(k):
        below = 0
        for b in range(k):
            if a != b:
                if not m.decided(positions[a], positions[b]):
                    raise DomainNotCovered("order undecided on the probe set")
                if m.has(positions[b], positions[a]):
                    below += 1
        ranks.append(below)
    return tuple(ranks)


def estimate_cylinder(sampler: Sampler, c: CylinderSpec, N: int, seed: int) -> EstimateReport:
    if N < 1:
        raise ValueError("need at least one sample")
    hits = 0
    for i in range(N):
        m = sampler(rng.derive_seed(seed, "sample", i))
        if matches_cylinder(m, c):
            hits += 1
    freq = Fraction(hits, N)
    p = hits / N
    return EstimateReport(c, N, hits, freq, math.sqrt(p * (1 - p) / N))


@dataclass(frozen=True)
class InvarianceReport:
    element: GroupElement
    samples: int
    base_counts: tuple[int, ...]
    translated_counts: tuple[int, ...]
    max_gap: float

    def rows(self):
        for pid in range(len(self.base_counts)):
            yield (
                pid,
                self.base_counts[pid],
                self.translated_counts[pid],
                self.base_counts[pid] / self.samples,
                self.translated_counts[pid] / self.samples,
            )


def invariance_test(
    sampler: Sampler, g: GroupElement, D: Window, N: int, seed: int
) -> InvarianceReport:
    """Largest frequency gap, over all total patterns on D, between plain
    samples and their g-translates (paired: the same samples are reused)."""
    if len(D) > 4:
        raise ValueError("pattern enumeration is capped at |D| = 4")
    k = math.factorial(len(D))
    base = [0] * k
    translated = [0] * k
    for i in range(N):
        m = sampler(rng.derive_seed(seed, "sample", i))
        base[permutation_rank(ranking_of(m, D))] += 1
        translated[permutation_rank(ranking_of(translate_order(m, g), D))] += 1
    gap = max(abs(b - t) / N for b, t in zip(base, translated))
    return InvarianceReport(g, N, tuple(base), tuple(translated), gap)


@dataclass(frozen=True)
class ChisqReport:
    statistic: float
    dof: int
    counts: tuple[int, ...]

    def __iter__(self):
        return iter((self.statistic, self.dof))


def uniformity_chisq(sampler: Sampler, F: Window, N: int, seed: int) -> ChisqReport:
    """Chi-square statistic of the observed ranking cells against the
    uniform distribution on all |F|! rankings."""
    k = math.factorial(len(F))
    if k > 1000:
        raise ValueError("too many ranking cells (|F|! must stay <= 1000)")
    counts = [0] * k
    for i in range(N):
        m = sampler(rng.derive_seed(seed, "sample", i))
        counts[permutation_rank(ranking_of(m, F))] += 1
    if k == 1:
        return ChisqReport(0.0, 0, tuple(counts))
    expected = N / k
    stat = sum((c - expected) ** 2 / expected for c in counts)
    return ChisqReport(stat, k - 1, tuple(counts))


# -- chi-square quantiles (regularized incomplete gamma) -------------------

_GAMMA_EPS = 1e-14
_GAMMA_MAX_ITER = 10_000


def _gamma_p_series(a: float, x: float) -> float:
    term = 1.0 / a
    total = term
    for n in range(1, _GAMMA_MAX_ITER):
        term *= x / (a + n)
        total += term
        if abs(term) < abs(total) * _GAMMA_EPS:
            break
    return total * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _gamma_q_contfrac(a: float, x: float) -> float:
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, _GAMMA_MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _GAMMA_EPS:
            break
    return h * math.exp(-x + a * math.log(x) - math.lgamma(a))


def gamma_p(a: float, x: float) -> float:
    """Regularized lower incomplete gamma P(a, x)."""
    if x < 0 or a <= 0:
        raise ValueError("need x >= 0 and a > 0")
    if x == 0:
        return 0.0
    if x < a + 1.0:
        return _gamma_p_series(a, x)
    return 1.0 - _gamma_q_contfrac(a, x)


def chi2_cdf(x: float, dof: int) -> float:
    return gamma_p(dof / 2.0, x / 2.0)


def chi2_quantile(p: float, dof: int) -> float:
    """Inverse chi-square CDF by bisection; absolute accuracy ~1e-10."""
    if not 0.0 < p < 1.0:
        raise ValueError("p must lie strictly between 0 and 1")
    if dof < 1:
        raise ValueError("dof must be positive")
    lo, hi = 0.0, dof + 10.0 * math.sqrt(2.0 * dof) + 10.0
    while chi2_cdf(hi, dof) < p:
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if chi2_cdf(mid, dof) < p:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-12 * max(1.0, hi):
            break
    return 0.5 * (lo + hi)
