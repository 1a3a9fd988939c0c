"""Card shuffles, Beatty spectra, Wythoff positions, and partition counts.

Four loosely related classics, all with exact integer backbones:

* perfect in-shuffles move card i to position 2i mod (2n+1), so the
  recycling count of a 2n-card deck is the multiplicative order of 2
  modulo 2n+1; the over-under (Monge) shuffle gets the same treatment by
  brute permutation analysis;
* the spectrum of alpha > 1 is the sequence floor(n*alpha); two spectra
  with 1/alpha + 1/beta = 1 (alpha irrational) tile the integers, and no
  three spectra can - witnesses for the failure are searched exhaustively;
* the cold positions of Wythoff's game are (floor(n*phi), floor(n*phi^2));
* partition counts p(n) by the pentagonal-number recurrence, with the
  classical asymptotic and its sharpened (n - 1/24) refinement.

Floors of irrational multiples are never trusted to floating point:
quadratic irrationals carry (x + y*sqrt(d)) exactly and every floor is
certified with integer square roots, falling back to float only as a
first guess.  Plain-float inputs get explicit ambiguity detection
instead.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Optional, Sequence, Union

import numpy as np

from .numerics import _as_fraction

# --------------------------------------------------------------------------
# shuffles


@dataclass(frozen=True)
class Deck:
    """A deck of even size; order lists card labels top-down."""

    order: tuple

    def __post_init__(self):
        order = tuple(self.order)
        object.__setattr__(self, "order", order)
        size = len(order)
        if size == 0 or size % 2 != 0:
            raise ValueError(f"deck size must be even and positive, got {size}")
        if sorted(order) != list(range(1, size + 1)):
            raise ValueError("order must be a permutation of 1..2n")

    @property
    def size(self) -> int:
        return len(self.order)

    @classmethod
    def identity(cls, size: int) -> "Deck":
        return cls(tuple(range(1, size + 1)))


def perfect_in_shuffle(deck: Deck) -> Deck:
    """Cut in half and interleave, bottom half's first card on top.

    The card at position i lands at position 2i mod (2n+1); eight cards
    starting in order end up as (5,1,6,2,7,3,8,4).
    """
    two_n = deck.size
    mod = two_n + 1
    new = [0] * two_n
    for i in range(1, two_n + 1):
        new[(2 * i) % mod - 1] = deck.order[i - 1]
    return Deck(tuple(new))


def monge_shuffle(deck: Deck) -> Deck:
    """Over-under shuffle: deal cards alternately onto top and bottom.

    Convention: first card starts the pile, second goes on top, third
    underneath, and so on.
    """
    pile: list = []
    for i, card in enumerate(deck.order):
        if i % 2 == 1:
            pile.insert(0, card)
        else:
            pile.append(card)
    return Deck(tuple(pile))


def _factorize(m: int) -> dict:
    """Trial-division factorization; fine for the modulus sizes in play."""
    factors: dict = {}
    x = m
    f = 2
    while f * f <= x:
        while x % f == 0:
            factors[f] = factors.get(f, 0) + 1
            x //= f
        f += 1 if f == 2 else 2
    if x > 1:
        factors[x] = factors.get(x, 0) + 1
    return factors


def shuffle_order(two_n: int) -> int:
    """Number of perfect in-shuffles that restore a 2n-card deck.

    Equals the multiplicative order of 2 modulo 2n+1, found by shrinking
    the Euler totient along its prime factors (no permutation is ever
    iterated here; the test suite does that independently).
    """
    if two_n < 2 or two_n % 2 != 0:
        raise ValueError(f"deck size must be even and >= 2, got {two_n}")
    m = two_n + 1
    phi = 1
    for prime, exp in _factorize(m).items():
        phi *= prime ** (exp - 1) * (prime - 1)
    order = phi
    for prime in _factorize(phi):
        while order % prime == 0 and pow(2, order // prime, m) == 1:
            order //= prime
    return order


def permutation_order(deck_map) -> int:
    """Order of a permutation (lcm of its cycle lengths).

    Accepts a Deck or a 0-indexed tuple new_position_of[i].
    """
    if isinstance(deck_map, Deck):
        perm = tuple(c - 1 for c in deck_map.order)
    else:
        perm = tuple(deck_map)
    seen = [False] * len(perm)
    lengths = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = perm[i]
            length += 1
        lengths.append(length)
    return reduce(math.lcm, lengths, 1)


def monge_order(two_n: int) -> int:
    """Shuffles needed for the over-under shuffle to recycle 2n cards."""
    return permutation_order(monge_shuffle(Deck.identity(two_n)))


def full_cycle_shuffle_stats(max_deck: int):
    """Survey decks 2n <= max_deck with 2n+1 prime: how often is the
    shuffle order maximal (= 2n)?  A statistics report, nothing more; no
    claim about the infinite pattern is implied.
    """
    hits, total = 0, 0
    sizes = []
    for two_n in range(2, max_deck + 1, 2):
        m = two_n + 1
        if _factorize(m).keys() == {m}:
            total += 1
            if shuffle_order(two_n) == two_n:
                hits += 1
                sizes.append(two_n)
    return {"prime_modulus_decks": total, "full_cycle_decks": hits, "sizes": sizes}


# --------------------------------------------------------------------------
# Beatty spectra


class FloorAmbiguityError(ValueError):
    """A float multiple sat too close to an integer to certify its floor."""


def _le_sqrt(t: int, Q: int, d: int) -> bool:
    """Exact test of  t <= Q * sqrt(d)  for integers (d > 0 non-square)."""
    if Q >= 0:
        if t <= 0:
            return True
        return t * t <= Q * Q * d
    if t >= 0:
        return False
    return t * t >= Q * Q * d


@dataclass(frozen=True)
class QuadSurd:
    """Exact quadratic irrational x + y*sqrt(d), x and y rational, y != 0.

    d must be a positive non-square integer, so the value is irrational
    and every floor comparison can be settled by integer arithmetic.
    """

    x: Fraction
    y: Fraction
    d: int

    def __post_init__(self):
        object.__setattr__(self, "x", _as_fraction(self.x))
        object.__setattr__(self, "y", _as_fraction(self.y))
        if self.d < 2 or math.isqrt(self.d) ** 2 == self.d:
            raise ValueError(f"d must be a non-square integer >= 2, got {self.d}")
        if self.y == 0:
            raise ValueError("y = 0 would make the value rational; use Fraction")

    def __float__(self) -> float:
        return float(self.x) + float(self.y) * math.sqrt(self.d)

    @classmethod
    def golden(cls) -> "QuadSurd":
        return cls(Fraction(1, 2), Fraction(1, 2), 5)

    @classmethod
    def golden_sq(cls) -> "QuadSurd":
        return cls(Fraction(3, 2), Fraction(1, 2), 5)

    @classmethod
    def sqrt(cls, d: int) -> "QuadSurd":
        return cls(Fraction(0), Fraction(1), d)

    def floor_times(self, n: int) -> int:
        """Exact floor(n * value)."""
        P_frac = n * self.x
        Q_frac = n * self.y
        R = math.lcm(P_frac.denominator, Q_frac.denominator)
        P = P_frac.numerator * (R // P_frac.denominator)
        Q = Q_frac.numerator * (R // Q_frac.denominator)
        f = math.floor(n * float(self))  # guess, then certify
        while not _le_sqrt(f * R - P, Q, self.d):
            f -= 1
        while _le_sqrt((f + 1) * R - P, Q, self.d):
            f += 1
        return f

    def pair_partner(self) -> "QuadSurd":
        """beta = alpha/(alpha - 1), the complementary spectrum generator."""
        u = self.x - 1
        v = self.y
        norm = u * u - v * v * self.d
        if norm == 0:
            raise ZeroDivisionError("alpha - 1 has zero norm")
        # 1 + 1/(alpha-1) = 1 + (u - v sqrt(d)) / norm
        return QuadSurd(1 + u / norm, -v / norm, self.d)


Alpha = Union[QuadSurd, Fraction, float]

# float multiples closer than this to an integer are refused, not guessed
_FLOAT_FLOOR_MARGIN = 1e-9


def _floors(alpha: Alpha, horizon: int):
    """All floor(n*alpha) <= horizon as an integer array, exactly.

    Floats are screened for ambiguous multiples; exact types are fast-
    pathed through numpy with certification of any borderline entries.
    """
    a = float(alpha)
    if a <= 1:
        raise ValueError(f"alpha must exceed 1, got {alpha!r}")
    count = int(horizon / a) + 2
    n = np.arange(1, count + 1, dtype=np.float64)
    prod = n * a
    guess = np.floor(prod).astype(np.int64)
    # distance to the nearest integer decides who needs a second look
    suspicious = np.abs(prod - np.rint(prod)) < max(
        _FLOAT_FLOOR_MARGIN, count * 8e-16 * a
    )
    if isinstance(alpha, QuadSurd):
        for i in np.nonzero(suspicious)[0]:
            guess[i] = alpha.floor_times(int(i) + 1)
    elif isinstance(alpha, (Fraction, int)):
        af = _as_fraction(alpha)
        for i in np.nonzero(suspicious)[0]:
            m = int(i) + 1
            guess[i] = (m * af.numerator) // af.denominator
    else:
        bad = np.nonzero(suspicious)[0]
        if bad.size:
            m = int(bad[0]) + 1
            raise FloorAmbiguityError(
                f"{m} * {alpha!r} is within {_FLOAT_FLOOR_MARGIN:g} of an "
                f"integer; pass a QuadSurd or Fraction for a certified floor"
            )
    vals = guess[guess <= horizon]
    return vals[vals >= 1]


@dataclass(frozen=True)
class Spectrum:
    """The integers floor(n*alpha), n = 1, 2, ..., clipped to a horizon."""

    alpha: object
    horizon: int
    values: tuple


def spectrum(alpha: Alpha, horizon: int) -> Spectrum:
    if horizon < 1:
        raise ValueError(f"horizon must be positive, got {horizon}")
    return Spectrum(alpha, horizon, tuple(int(v) for v in _floors(alpha, horizon)))


@dataclass(frozen=True)
class BeattyPairReport:
    alpha: object
    beta: object
    horizon: int
    disjoint: bool
    covers: bool
    first_missing: Optional[int]
    first_double: Optional[int]

    @property
    def ok(self) -> bool:
        return self.disjoint and self.covers


def beatty_pair_check(alpha: Alpha, horizon: int) -> BeattyPairReport:
    """Tile-check the spectra of alpha and beta = alpha/(alpha-1).

    For irrational alpha > 1 every integer in 1..horizon must be hit by
    exactly one of the two spectra; rational alpha is accepted so the
    inevitable collision can be observed.
    """
    if horizon < 1:
        raise ValueError(f"horizon must be positive, got {horizon}")
    if isinstance(alpha, QuadSurd):
        beta: Alpha = alpha.pair_partner()
    elif isinstance(alpha, (Fraction, int)):
        af = _as_fraction(alpha)
        if af <= 1:
            raise ValueError(f"alpha must exceed 1, got {alpha!r}")
        beta = af / (af - 1)
    else:
        if not alpha > 1:
            raise ValueError(f"alpha must exceed 1, got {alpha!r}")
        beta = alpha / (alpha - 1.0)

    hits = np.zeros(horizon + 1, dtype=np.int64)
    for g in (alpha, beta):
        vals = _floors(g, horizon)
        np.add.at(hits, vals, 1)
    hits = hits[1:]
    missing = np.nonzero(hits == 0)[0]
    doubled = np.nonzero(hits > 1)[0]
    return BeattyPairReport(
        alpha=alpha,
        beta=beta,
        horizon=horizon,
        disjoint=doubled.size == 0,
        covers=missing.size == 0,
        first_missing=int(missing[0]) + 1 if missing.size else None,
        first_double=int(doubled[0]) + 1 if doubled.size else None,
    )


@dataclass(frozen=True)
class TripleWitness:
    """Outcome of hunting for a tiling failure among three spectra."""

    witness: Optional[int]
    kind: Optional[str]  # "missing" or "double"
    inconclusive: bool


def triple_spectrum_search(alphas: Sequence[Alpha], horizon: int) -> TripleWitness:
    """Smallest integer <= horizon missed or doubly covered by three spectra.

    Three spectra can never tile the integers, so a witness exists for
    every genuine triple; if the horizon is exhausted without one the
    search reports inconclusive rather than claiming success.
    """
    if len(alphas) != 3:
        raise ValueError(f"need exactly three generators, got {len(alphas)}")
    if horizon < 1:
        return TripleWitness(None, None, True)
    hits = np.zeros(horizon + 1, dtype=np.int64)
    for g in alphas:
        np.add.at(hits, _floors(g, horizon), 1)
    hits = hits[1:]
    bad = np.nonzero(hits != 1)[0]
    if bad.size == 0:
        return TripleWitness(None, None, True)
    w = int(bad[0])
    kind = "missing" if hits[w] == 0 else "double"
    return TripleWitness(w + 1, kind, False)


def wythoff_cold(count: int):
    """(0,0) plus the first `count` cold pairs (floor(n*phi), floor(n*phi^2)).

    floor(n*phi) = (n + isqrt(5 n^2)) // 2 exactly, and the second
    coordinate is the first plus n.
    """
    if count < 1:
        raise ValueError(f"count must be positive, got {count}")
    pairs = [(0, 0)]
    for n in range(1, count + 1):
        a = (n + math.isqrt(5 * n * n)) // 2
        pairs.append((a, a + n))
    return pairs


# --------------------------------------------------------------------------
# partitions

_PARTITION_CACHE = [1]  # p(0); grows monotonically under the lock below
_PARTITION_LOCK = threading.Lock()


def partition_exact(n: int) -> int:
    """p(n) by the pentagonal-number recurrence, exact big integers.

    p(m) = sum_{k>=1} (-1)^(k+1) [ p(m - k(3k-1)/2) + p(m - k(3k+1)/2) ]

    Values are memoized; the lock keeps the cache append-only under
    concurrent callers.
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    with _PARTITION_LOCK:
        cache = _PARTITION_CACHE
        for m in range(len(cache), n + 1):
            total = 0
            k = 1
            while True:
                g1 = k * (3 * k - 1) // 2
                if g1 > m:
                    break
                sign = 1 if k % 2 == 1 else -1
                total += sign * cache[m - g1]
                g2 = k * (3 * k + 1) // 2
                if g2 <= m:
                    total += sign * cache[m - g2]
                k += 1
            cache.append(total)
        return cache[n]


def partition_uspensky(n: int):
    """(simple, refined) asymptotic values for p(n), log-space internally.

    simple  = exp(pi sqrt(2n/3)) / (4 n sqrt(3))
    refined = exp(pi sqrt((2/3)(n - 1/24))) / (4 sqrt(3) (n - 1/24))
              * (1 - sqrt(3) / (pi sqrt(2n - 1/12)))

    The refinement shifts n by 1/24 and applies a first correction
    factor; both values grow past float range around n ~ 3e5, at which
    point inf is returned (the logs stay finite internally).
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    log_simple = math.pi * math.sqrt(2.0 * n / 3.0) - math.log(4.0 * n * math.sqrt(3.0))
    m = n - 1.0 / 24.0
    log_main = math.pi * math.sqrt(2.0 * m / 3.0) - math.log(4.0 * math.sqrt(3.0) * m)
    corr = 1.0 - math.sqrt(3.0) / (math.pi * math.sqrt(2.0 * n - 1.0 / 12.0))
    log_refined = log_main + math.log(corr)
    simple = math.exp(log_simple) if log_simple < 709 else math.inf
    refined = math.exp(log_refined) if log_refined < 709 else math.inf
    return simple, refined


__all__ = [
    "Deck",
    "perfect_in_shuffle",
    "monge_shuffle",
    "shuffle_order",
    "monge_order",
    "permutation_order",
    "full_cycle_shuffle_stats",
    "QuadSurd",
    "Spectrum",
    "spectrum",
    "BeattyPairReport",
    "beatty_pair_check",
    "TripleWitness",
    "triple_spectrum_search",
    "wythoff_cold",
    "FloorAmbiguityError",
    "partition_exact",
    "partition_uspensky",
]
