"""Certified brackets for right binomial tails via continued fractions.

The tail P(S_n > l), for a threshold l strictly above the mean np, factors
as lead * S where lead = b(l+1; n, p) is the first omitted point mass and
S is the value of an alternating continued fraction built from two
coefficient families c_k, d_k.  Truncating the fraction after a -c_k gives
the convergent C_k, after a +d_k gives D_k, and the convergents interleave
around S:

    C_2 < D_2 < C_4 < D_4 < ... < S < ... < D_3 < C_3 < D_1 < C_1

so any even-indexed convergent is a certified lower bound for S and any
odd-indexed one a certified upper bound.  The terminal convergent
D_{n-l-1} equals S exactly.

Convergents are computed by the forward two-term recursion on numerators
A_m and denominators B_m (no bottom-up restart needed to refine), with
joint power-of-two rescaling to dodge overflow; rescaling by a power of
two is exact in binary floating point, so the ratios A_m/B_m are
bit-identical whether or not a rescale fired.

All of this is scalar-generic: feed Fraction inputs and every convergent
comes out as an exact rational, which is how the interleaving property is
verified in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional

from .numerics import LogProb, _as_fraction, binom_tail_exact, log_binom_pmf

# |A| or |B| beyond this triggers a joint rescale by RESCALE (exact in
# binary floats, so convergent ratios are unaffected bit-for-bit).
RESCALE_THRESHOLD = 2.0**512
RESCALE = 2.0**-512

# Certified-rounding margin: bracket endpoints computed in double
# precision are pushed outward by this relative amount so that the
# enclosure survives the accumulated roundoff of the recursion (a few
# hundred flops at ~1e-16 each).
_GUARD = 1e-12


class MethodNotApplicableError(ValueError):
    """The continued-fraction method needs l > n*p; see left_tail_bracket."""


class NumericDegeneracyError(ArithmeticError):
    """A convergent denominator hit zero (never expected for valid input)."""


@dataclass(frozen=True)
class TailQuery:
    """A right-tail problem P(S_n > l) for S_n ~ Binomial(n, p).

    Requires 0 <= l < n and l strictly greater than n*p (checked in exact
    rational arithmetic so borderline float inputs cannot sneak past).
    """

    n: int
    l: int
    p: object  # float or Fraction

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        if not 0 <= self.l < self.n:
            raise ValueError(f"l must lie in [0, n), got l={self.l}, n={self.n}")
        pf = _as_fraction(self.p)
        if not (0 < pf < 1):
            raise ValueError(f"p must lie strictly in (0, 1), got {self.p!r}")
        if self.l <= self.n * pf:
            raise MethodNotApplicableError(
                f"continued-fraction bracketing needs l > n*p "
                f"(l={self.l}, n*p={float(self.n * pf):g}); for left tails "
                f"use left_tail_bracket, or binom_tail_exact for a point value"
            )

    @property
    def q(self):
        return 1 - self.p

    @property
    def k_terminal(self) -> int:
        """Depth at which the continued fraction terminates (D_k = S)."""
        return self.n - self.l - 1


@dataclass(frozen=True)
class CfCoefficients:
    """One coefficient pair (c_k, d_k) of the tail's continued fraction."""

    k: int
    c: object
    d: object


def cf_coefficients(query: TailQuery, k: int) -> CfCoefficients:
    """Coefficient pair at depth k, 1 <= k <= n - l.

    c_k = (n-k-l)(l+k) / [(l+2k-1)(l+2k)] * p/q
    d_k = k(n+k)      / [(l+2k)(l+2k+1)] * p/q

    With Fraction p the pair is exact; c_{n-l} vanishes identically.
    """
    n, l, p = query.n, query.l, query.p
    if not 1 <= k <= n - l:
        raise ValueError(f"k must lie in [1, n-l]=[1, {n - l}], got {k}")
    ratio = p / (1 - p)
    c = (n - k - l) * (l + k) * ratio / ((l + 2 * k - 1) * (l + 2 * k))
    d = k * (n + k) * ratio / ((l + 2 * k) * (l + 2 * k + 1))
    return CfCoefficients(k=k, c=c, d=d)


@dataclass(frozen=True)
class ConvergentState:
    """Rolling state of the forward convergent recursion.

    Holds the last two numerators/denominators (A, B) and the index m of
    the newest convergent Q_m = A_curr/B_curr.  `scale` records the
    cumulative joint rescale factor applied to A and B; it never affects
    the ratios and exists only for bookkeeping.
    """

    m: int = 1
    A_prev: object = 0.0
    A_curr: object = 1.0
    B_prev: object = 1.0
    B_curr: object = 1.0
    scale: float = 1.0

    @property
    def value(self):
        """Q_m = A_m / B_m."""
        if self.B_curr == 0:
            raise NumericDegeneracyError(f"B_{self.m} = 0")
        return self.A_curr / self.B_curr


def _push(state: ConvergentState, coeff, sign: int) -> ConvergentState:
    """One half-step: X_new = X_curr + sign*coeff*X_prev for A and B."""
    A = state.A_curr + sign * coeff * state.A_prev
    B = state.B_curr + sign * coeff * state.B_prev
    scale = state.scale
    if isinstance(A, float) and (abs(A) > RESCALE_THRESHOLD or abs(B) > RESCALE_THRESHOLD):
        A *= RESCALE
        B *= RESCALE
        A_c = state.A_curr * RESCALE
        B_c = state.B_curr * RESCALE
        scale *= RESCALE
        return ConvergentState(state.m + 1, A_c, A, B_c, B, scale)
    return ConvergentState(state.m + 1, state.A_curr, A, state.B_curr, B, scale)


def advance_convergents(state: ConvergentState, coeffs: CfCoefficients) -> ConvergentState:
    """Advance two steps with the pair (c_k, d_k): Q_{2k} = C_k, Q_{2k+1} = D_k.

    The state must sit at m = 2k-1 (fresh states sit at m = 1, ready for
    k = 1).  Intermediate C_k is recoverable by doing the half-steps by
    hand; most callers want bracket_tail instead.
    """
    if state.m != 2 * coeffs.k - 1:
        raise ValueError(
            f"state at m={state.m} cannot take coefficient pair k={coeffs.k} "
            f"(expected m={2 * coeffs.k - 1})"
        )
    after_c = _push(state, coeffs.c, -1)
    return _push(after_c, coeffs.d, +1)


def convergent_stream(query: TailQuery):
    """Yield (k, kind, value) for C_1, D_1, C_2, D_2, ... up to termination.

    kind is "C" or "D".  Values are floats or Fractions depending on the
    scalar type of query.p.
    """
    exact = isinstance(query.p, (Fraction, int))
    state = ConvergentState() if not exact else ConvergentState(
        1, Fraction(0), Fraction(1), Fraction(1), Fraction(1), 1.0
    )
    for k in range(1, query.k_terminal + 1):
        cf = cf_coefficients(query, k)
        state = _push(state, cf.c, -1)
        yield k, "C", state.value
        state = _push(state, cf.d, +1)
        yield k, "D", state.value


@dataclass(frozen=True)
class TailBracket:
    """Certified enclosure lower <= P(S_n > l) <= upper."""

    lower: float
    upper: float
    k_used: int
    lead_term_log: LogProb
    converged: bool = True

    @property
    def width(self) -> float:
        return self.upper - self.lower


def bracket_tail(
    query: TailQuery, tol: float = 1e-8, k_max: Optional[int] = None
) -> TailBracket:
    """Two-sided certified bracket for P(S_n > l).

    Walks the convergent stream, keeping the largest even-indexed
    convergent (lower side) and the smallest odd-indexed one (upper side);
    the bracket is the pair scaled by the lead term, with endpoints pushed
    outward by a small certified-rounding margin.  Iteration stops as soon
    as upper - lower <= tol * upper (checked after every new convergent,
    so a run may stop midway through a depth), or at the terminal depth
    n - l - 1 where the last convergent equals the tail exactly, or at
    k_max, whichever comes first.

    If k_max cuts the run before tol is met the best bracket so far is
    returned with converged=False.
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    k_cap = query.k_terminal if k_max is None else min(k_max, query.k_terminal)
    if k_cap < 1:
        # n - l - 1 == 0: the tail is the lead term alone, bracket is exact.
        lead_log = log_binom_pmf(query.n, query.l + 1, query.p)
        val = math.exp(lead_log)
        return TailBracket(val * (1 - _GUARD), min(val * (1 + _GUARD), 1.0),
                           0, lead_log, True)

    lead_log = log_binom_pmf(query.n, query.l + 1, query.p)
    best_lo = 0.0  # even side, in S units
    best_hi = math.inf  # odd side
    k_used = 0
    converged = False
    for k, kind, value in convergent_stream(query):
        if k > k_cap:
            break
        v = float(value)
        k_used = k
        if k == query.k_terminal and kind == "D":
            best_lo = best_hi = v  # terminal convergent equals S exactly
            converged = True
            break
        if k % 2 == 0:
            best_lo = max(best_lo, v)
        else:
            best_hi = min(best_hi, v)
        if best_hi - best_lo <= tol * best_hi:
            converged = True
            break

    lead = math.exp(lead_log)
    lower = max(lead * best_lo * (1.0 - _GUARD), 0.0)
    upper = lead * best_hi * (1.0 + _GUARD) if best_hi < math.inf else 1.0
    return TailBracket(lower, min(upper, 1.0), k_used, lead_log, converged)


def left_tail_bracket(
    n: int, l: int, p, tol: float = 1e-8, k_max: Optional[int] = None
) -> TailBracket:
    """Certified bracket for a LEFT tail P(S_n <= l), for l < n*p - 1.

    Works on the flipped coin: P(S_n <= l) = P(S'_n > n-l-1) where S'
    counts failures, S' ~ Binomial(n, q).  The flipped threshold must
    itself clear the flipped mean, which is what the l < n*p - 1 bound
    guarantees; inside the sliver np-1 <= l <= np neither orientation is
    bracketable and binom_tail_exact is the tool.
    """
    flipped = TailQuery(n=n, l=n - l - 1, p=1 - _as_fraction(p))
    return bracket_tail(flipped, tol=tol, k_max=k_max)


class SeriesNotConvergedError(ArithmeticError):
    """Hypergeometric series failed to shrink within the term budget."""


def bahadur_tail(n: int, j: int, p, max_terms: int = 10**7) -> float:
    """P(S_n >= j) via the closed hypergeometric form.

    Evaluates lead * q * F(n+1, 1; j+1; p) where lead = C(n,j) p^j q^(n-j)
    and F's terms follow t_{k+1} = t_k * p (n+1+k)/(j+1+k).  The series is
    summed with periodic power-of-two rescaling (partial sums can dwarf
    float range when j is far below the mean) and truncated once a term
    drops below 1e-15 of the running sum.  Independent of the
    continued-fraction machinery; agrees with binom_tail_exact(n, j-1, p).
    """
    if not 1 <= j <= n:
        raise ValueError(f"j must lie in [1, n]=[1, {n}], got {j}")
    pf = _as_fraction(p)
    if not (0 < pf < 1):
        raise ValueError(f"p must lie strictly in (0, 1), got {p!r}")
    pflt = float(pf)
    lead_log = log_binom_pmf(n, j, pf)

    total = 1.0
    t = 1.0
    exponent = 0  # running sum is total * 2**exponent
    k = 0
    while True:
        t *= pflt * (n + 1 + k) / (j + 1 + k)
        total += t
        k += 1
        if t <= 1e-15 * total and pflt * (n + 1 + k) / (j + 1 + k) < 1.0:
            break
        if total > RESCALE_THRESHOLD:
            total *= RESCALE
            t *= RESCALE
            exponent += 512
        if k >= max_terms:
            raise SeriesNotConvergedError(
                f"series still growing after {max_terms} terms "
                f"(n={n}, j={j}, p={p!r}); fall back to binom_tail_exact"
            )
    log_val = lead_log + math.log1p(-pflt) + math.log(total) + exponent * math.log(2.0)
    return math.exp(min(log_val, 0.0))


__all__ = [
    "TailQuery",
    "CfCoefficients",
    "ConvergentState",
    "TailBracket",
    "cf_coefficients",
    "advance_convergents",
    "convergent_stream",
    "bracket_tail",
    "left_tail_bracket",
    "bahadur_tail",
    "binom_tail_exact",
    "MethodNotApplicableError",
    "NumericDegeneracyError",
    "SeriesNotConvergedError",
]
