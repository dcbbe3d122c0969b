"""Limit densities, phase constants, and closed-form predictions.

Scaled by N**(h-1), the representation counts converge to the density of a
sum of h independent uniform [0,1] variables (the Irwin-Hall density); the
overlap moments of that density are the constants b_{h,k} driving the
critical-decay series g(c; s, d).  This module evaluates all of them in
double precision, plus the exact missing-value laws for the two-summand
slow-decay regime.

Everything is a pure function; the constant tables are cached and safe for
concurrent reads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .combinat import SignedCombination, rep_counts_all

# Large-N limiting fraction of subsets at p = 1/2 whose sumset beats their
# difference set (literature value); experiments assert a window around it.
SUM_DOMINATED_LIMIT_FRACTION = 4.5e-4

# Slow-decay limit of (missing sums) / (missing differences) for two summands.
COMPLEMENT_RATIO_LIMIT_H2 = 2.0


def missing_sums_asymptote_h2(p: float) -> float:
    """Leading-order missing-sum count 4/p^2 in the two-summand slow regime."""
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    return 4.0 / (p * p)


class SeriesConvergenceError(RuntimeError):
    """The alternating series did not meet its tolerance within the term cap."""


class SeriesValue(NamedTuple):
    value: float
    terms_used: int


class Regime(Enum):
    FAST = "fast"
    CRITICAL = "critical"
    SLOW_H2 = "slow-h2"
    SLOW = "slow"


@dataclass(frozen=True)
class PhaseConstants:
    """Table of the overlap-moment constants for one h.

    b[k-1] holds the order-k constant; quadrature_nodes[k-1] records how many
    Gauss-Legendre nodes per unit interval were used (enough to integrate the
    degree-(h-1)k piecewise polynomial exactly).
    """

    h: int
    k_max: int
    b: tuple[float, ...]
    quadrature_nodes: tuple[int, ...]


@dataclass(frozen=True)
class Prediction:
    """A single predicted statistic, tagged with the formula that produced it."""

    regime: Regime
    combo: SignedCombination
    kind: str  # 'cardinality-over-N' | 'ratio' | 'complement-count'
    predicted: float
    formula: str


def limit_density(u: float, h: int) -> float:
    """Density of a sum of h uniform [0,1] variables, evaluated at u.

    This is the scaling limit of rep_count(n)/N**(h-1) at u = (n + dN)/N.
    Evaluated on the left half and reflected: the density is symmetric about
    h/2 and the alternating sum is much better conditioned for small u.
    """
    if h < 2:
        raise ValueError(f"h must be at least 2, got {h}")
    if u < 0.0 or u > h:
        return 0.0
    if u > h / 2:
        u = h - u
    terms = []
    for i in range(math.floor(u) + 1):
        t = math.comb(h, i) * (u - i) ** (h - 1)
        terms.append(-t if i & 1 else t)
    return math.fsum(terms) / math.factorial(h - 1)


@lru_cache(maxsize=256)
def _gauss_legendre(order: int) -> tuple[tuple[float, ...], tuple[float, ...]]:
    nodes, weights = np.polynomial.legendre.leggauss(order)
    return tuple(nodes.tolist()), tuple(weights.tolist())


def quadrature_order(h: int, k: int) -> int:
    """Nodes per unit interval that integrate degree-(h-1)k polynomials exactly."""
    return ((h - 1) * k + 2) // 2


@lru_cache(maxsize=4096)
def b_constant(h: int, k: int) -> float:
    """Order-k overlap moment of the limit density: (1/k!) * integral of f^k.

    Per-unit-interval Gauss-Legendre quadrature; the integrand is polynomial
    of degree (h-1)k between integer breakpoints, so the fixed order is exact
    up to rounding.  b(h, 1) = 1 for every h (the density has unit mass).
    """
    if h < 2:
        raise ValueError(f"h must be at least 2, got {h}")
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    nodes, weights = _gauss_legendre(quadrature_order(h, k))
    contributions = []
    for j in range(h):
        for x, w in zip(nodes, weights):
            u = j + (x + 1.0) / 2.0
            contributions.append(0.5 * w * limit_density(u, h) ** k)
    return math.fsum(contributions) / math.factorial(k)


def phase_constants(h: int, k_max: int) -> PhaseConstants:
    """Tabulate b(h, k) for k = 1..k_max with quadrature metadata."""
    if k_max < 1:
        raise ValueError(f"k_max must be positive, got {k_max}")
    return PhaseConstants(
        h=h,
        k_max=k_max,
        b=tuple(b_constant(h, k) for k in range(1, k_max + 1)),
        quadrature_nodes=tuple(quadrature_order(h, k) for k in range(1, k_max + 1)),
    )


def _falling_binom(x: float, k: int) -> float:
    """x(x-1)...(x-k+1)/k! for real x."""
    out = 1.0
    for i in range(k):
        out *= x - i
    return out / math.factorial(k)


def b_constant_finiteN_oracle(
    h: int, k: int, combo: SignedCombination, N: int
) -> float:
    """Finite-N estimate of b(h, k) from exact representation counts.

    Sums the k-subset counts of the per-value representation classes and
    rescales by (s!d!)^k / N^((h-1)k+1); converges to b_constant(h, k) as N
    grows.  Independent of the quadrature path, so the two arbitrate each
    other.
    """
    if combo.h != h:
        raise ValueError(f"combo {combo} has h={combo.h}, expected {h}")
    if N < 1:
        raise ValueError(f"N must be positive, got {N}")
    perm = combo.block_permutations
    table = rep_counts_all(combo, N)
    total = math.fsum(_falling_binom(c / perm, k) for c in table.counts)
    return total * perm**k / N ** ((h - 1) * k + 1)


def g_series(
    c: float, combo: SignedCombination, k_max: int = 60, tol: float = 1e-14
) -> SeriesValue:
    """Critical-decay cardinality constant: alternating series in b(h, k).

    Sums (-1)^(k-1) b(h,k) (c^h / (s!d!))^k until two consecutive terms drop
    below tol times the running partial sum; raises if k_max terms are not
    enough.  The returned value is the exactly-rounded sum of the evaluated
    terms, which matters: mid-series terms can exceed the limit by orders of
    magnitude when c is large.
    """
    if c <= 0:
        raise ValueError(f"c must be positive, got {c}")
    y = c**combo.h / combo.block_permutations
    terms: list[float] = []
    partial = 0.0
    previous_small = False
    for k in range(1, k_max + 1):
        t = b_constant(combo.h, k) * y**k
        if k % 2 == 0:
            t = -t
        terms.append(t)
        partial += t
        small = abs(t) <= tol * abs(partial)
        if small and previous_small:
            return SeriesValue(math.fsum(terms), k)
        previous_small = small
    raise SeriesConvergenceError(
        f"series for c={c}, combo={combo} did not reach tol={tol} "
        f"within k_max={k_max} terms"
    )


def g_closed_form_h2(x: float) -> float:
    """Two-summand closed form 2(exp(-x) - (1 - x))/x, extended by 0 at x = 0.

    Strictly increasing from 0 to 2.  The critical-decay series for two
    summands sums to exactly this at x = c^2/(s!d!).
    """
    if x < 0:
        raise ValueError(f"x must be non-negative, got {x}")
    if x == 0.0:
        return 0.0
    if x < 1e-5:
        # Taylor head; the expm1 form loses relative accuracy as x -> 0.
        return x * (1.0 - x / 3.0 + x * x / 12.0)
    return 2.0 * (math.expm1(-x) + x) / x


def predicted_xk(
    h: int,
    k: int,
    combo: SignedCombination,
    c: float,
    delta: Fraction | float,
    N: int,
) -> float:
    """Expected number of k-fold collision classes among sampled h-tuples.

    b(h,k) c^(hk) / (s!d!)^k * N^((h-1)k + 1 - hk*delta).  At the critical
    exponent delta = (h-1)/h the N-power collapses to N itself.
    """
    if combo.h != h:
        raise ValueError(f"combo {combo} has h={combo.h}, expected {h}")
    if c <= 0:
        raise ValueError(f"c must be positive, got {c}")
    exponent = (h - 1) * k + 1 - h * k * float(delta)
    return b_constant(h, k) * c ** (h * k) / combo.block_permutations**k * N**exponent


def classify_regime(h: int, delta: Fraction) -> Regime:
    """Place a decay exponent relative to the transition point (h-1)/h.

    delta must be exact (Fraction, or a string like "2/3"); floats are
    rejected because equality with the transition point must be decidable.
    """
    if h < 2:
        raise ValueError(f"h must be at least 2, got {h}")
    if isinstance(delta, float):
        raise TypeError("delta must be an exact rational (Fraction or string), not float")
    delta = Fraction(delta)
    if not 0 < delta < 1:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    boundary = Fraction(h - 1, h)
    if delta > boundary:
        return Regime.FAST
    if delta == boundary:
        return Regime.CRITICAL
    return Regime.SLOW_H2 if h == 2 else Regime.SLOW


def predicted_ratio(
    combo1: SignedCombination,
    combo2: SignedCombination,
    regime: Regime,
    c: float | None = None,
) -> float:
    """Predicted |A_{s1,d1}| / |A_{s2,d2}| in the fast or critical regime."""
    if combo1.h != combo2.h:
        raise ValueError(
            f"combos must share the total summand count, got {combo1} and {combo2}"
        )
    if regime is Regime.FAST:
        return combo2.block_permutations / combo1.block_permutations
    if regime is Regime.CRITICAL:
        if c is None:
            raise ValueError("critical-regime ratio needs the coefficient c")
        return g_series(c, combo1).value / g_series(c, combo2).value
    raise ValueError(f"no general ratio prediction in regime {regime.value}")


def predict_ratio(
    combo1: SignedCombination,
    combo2: SignedCombination,
    delta: Fraction,
    c: float | None = None,
) -> Prediction:
    """Regime-aware cardinality-ratio prediction with its formula recorded."""
    regime = classify_regime(combo1.h, delta)
    value = predicted_ratio(combo1, combo2, regime, c)
    formula = (
        "s2!d2!/(s1!d1!)"
        if regime is Regime.FAST
        else "g_series(c;s1,d1)/g_series(c;s2,d2)"
    )
    return Prediction(regime=regime, combo=combo1, kind="ratio", predicted=value,
                      formula=formula)


def predict_cardinality_over_N(
    combo: SignedCombination, c: float, delta: Fraction
) -> Prediction:
    """Critical-decay size prediction |A_{s,d}|/N -> g(c; s, d)."""
    regime = classify_regime(combo.h, delta)
    if regime is not Regime.CRITICAL:
        raise ValueError(
            f"cardinality-over-N prediction holds at critical decay only, "
            f"delta={delta} gives {regime.value}"
        )
    return Prediction(regime=regime, combo=combo, kind="cardinality-over-N",
                      predicted=g_series(c, combo).value, formula="g_series(c;s,d)")


def predict_missing_sums_h2(N: int, p: float, delta: Fraction) -> Prediction:
    """Slow-decay missing-sum count prediction (exact per-value law, summed)."""
    regime = classify_regime(2, delta)
    if regime is not Regime.SLOW_H2:
        raise ValueError(
            f"the missing-sum prediction holds in the slow two-summand regime, "
            f"delta={delta} gives {regime.value}"
        )
    return Prediction(regime=regime, combo=SignedCombination(2, 0),
                      kind="complement-count",
                      predicted=expected_missing_sums_h2(N, p),
                      formula="sum of per-value missing-sum probabilities")


def predict_missing_diffs_h2(N: int, p: float, delta: Fraction) -> Prediction:
    """Slow-decay missing-difference count prediction (residue-chain product)."""
    regime = classify_regime(2, delta)
    if regime is not Regime.SLOW_H2:
        raise ValueError(
            f"the missing-difference prediction holds in the slow two-summand "
            f"regime, delta={delta} gives {regime.value}"
        )
    return Prediction(regime=regime, combo=SignedCombination(1, 1),
                      kind="complement-count",
                      predicted=expected_missing_diffs_h2(N, p),
                      formula="product of residue-chain no-pair probabilities")


def missing_sum_probability_h2(n: int, N: int, p: float) -> float:
    """Probability that n is missing from A+A under the binomial model.

    Exact for every n in [0, 2N]: the pair representations of n are disjoint
    element sets for n <= N, and n > N reduces to 2N - n by reflecting the
    ground set.
    """
    if not 0 <= n <= 2 * N:
        raise ValueError(f"n must lie in [0, {2 * N}], got {n}")
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    if n > N:
        n = 2 * N - n
    q = 1.0 - p * p
    if n % 2 == 0:
        return q ** (n // 2) * (1.0 - p)
    return q ** ((n + 1) // 2)


def expected_missing_sums_h2(N: int, p: float) -> float:
    """Expected count of values in [0, 2N] missing from A+A; exact.

    Direct sum of the per-value missing probabilities, folded across the
    midpoint; terms below 1e-30 are dropped (the truncated tail is smaller
    than 2N * 1e-30).  Tends to 4/p^2 as p -> 0 with N p^2 -> infinity.
    """
    if N < 0:
        raise ValueError(f"N must be non-negative, got {N}")
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    if N == 0:
        return 1.0 - p
    terms = [missing_sum_probability_h2(N, N, p)]
    for n in range(N):
        t = missing_sum_probability_h2(n, N, p)
        terms.append(2.0 * t)
        if t < 1e-30 and n % 2 == 1:
            # Odd-n probabilities dominate every later term, so this tail
            # truncation is safe; the dropped mass is below 2N * 1e-30.
            break
    return math.fsum(terms)


@lru_cache(maxsize=64)
def expected_missing_diffs_h2(N: int, p: float) -> float:
    """Expected count of values in [-N, N] missing from A-A; exact.

    A difference n >= 1 is present iff some residue chain {r, r+n, r+2n, ...}
    contains two adjacent chosen elements, and distinct chains are disjoint,
    so the missing probability is a product of per-chain no-adjacent-pair
    probabilities (a linear three-term recurrence in the chain length).
    Tends to 2(1-p^2)/p^2 as N -> infinity; 6 at p = 1/2.
    """
    if N < 0:
        raise ValueError(f"N must be non-negative, got {N}")
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    q = 1.0 - p
    pair_free = math.log1p(-p * p)  # log P(one disjoint adjacent pair not chosen)
    terms = [q ** (N + 1)]  # 0 is missing iff A is empty
    for n in range(1, N + 1):
        # The chains jointly contain N+1-n adjacent pairs, at least half of
        # them disjoint, which bounds the missing probability from above;
        # skip interior n whose bound is already negligible.
        if (N + 1 - n) * pair_free / 2.0 < -70.0:
            continue
        length, longer = divmod(N + 1, n)
        prev, cur = 1.0, 1.0  # no-pair probabilities for chain lengths 0 and 1
        for _ in range(length):
            prev, cur = cur, q * cur + p * q * prev
        missing = cur**longer * prev ** (n - longer)
        terms.append(2.0 * missing)
    return math.fsum(terms)
