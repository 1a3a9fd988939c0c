"""Shared numeric kernel: log-space binomial pmf and the exact tail oracle.

Conventions
-----------
Log-probabilities are plain floats ("LogProb"): the natural log of a value
in [0, 1], so always <= 0, with -inf standing for probability zero.

Probabilities ``p`` may be passed as ``float`` or ``fractions.Fraction``.
Floats are interpreted as the exact rationals they represent, which lets
the pmf be evaluated through exact integer arithmetic and only rounded
once, at the final log.  Relative accuracy of the returned log is a few
ulps (comfortably below the 1e-13 budget for n up to ~1e4).
"""

from __future__ import annotations

import math
import warnings
from fractions import Fraction

LogProb = float

_LN2 = math.log(2.0)


class TailConventionWarning(UserWarning):
    """Out-of-range threshold handled by convention rather than rejected."""


def _as_fraction(p) -> Fraction:
    """Exact rational value of a probability argument."""
    if isinstance(p, Fraction):
        return p
    if isinstance(p, int):
        return Fraction(p)
    return Fraction(p)  # floats convert exactly


def _check_p(p) -> Fraction:
    pf = _as_fraction(p)
    if not (0 < pf < 1):
        raise ValueError(f"p must lie strictly in (0, 1), got {p!r}")
    return pf


def _log_fraction(num: int, den: int) -> float:
    """ln(num/den) for positive big integers, accurate to a few ulps.

    The ratio is split as mantissa * 2**e with the mantissa in [0.5, 2),
    the mantissa extracted by one 64-bit-headroom integer division (no
    gcd reduction), so the only error growth is the final fused sum.
    Ratios inside (0.5, 2) go through log1p on the scaled difference to
    keep the *relative* error of a tiny log bounded.
    """
    if num == den:
        return 0.0
    if den < 2 * num and num < 2 * den:
        delta = num - den
        shift = 64 + den.bit_length() - abs(delta).bit_length()
        scaled = (delta << shift) // den
        return math.log1p(math.ldexp(float(scaled), -shift))
    e = num.bit_length() - den.bit_length()
    if e >= 0:
        scaled = (num << 64) // (den << e)
    else:
        scaled = (num << (64 - e)) // den
    mant = math.ldexp(float(scaled), -64)  # in [0.5, 2)
    return math.fsum([e * _LN2, math.log(mant)])


def log_binom_pmf(n: int, k: int, p) -> LogProb:
    """ln[ C(n,k) p^k (1-p)^(n-k) ], the log binomial point mass.

    Parameters
    ----------
    n : positive trial count
    k : success count, 0 <= k <= n
    p : success probability in (0, 1), float or Fraction

    Raises
    ------
    ValueError : k outside [0, n] or p outside (0, 1).
    """
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    if not 0 <= k <= n:
        raise ValueError(f"k must lie in [0, {n}], got {k}")
    pf = _check_p(p)
    pnum, pden = pf.numerator, pf.denominator
    qnum = pden - pnum
    num = math.comb(n, k) * pnum**k * qnum ** (n - k)
    den = pden**n
    # pmf < 1 on this domain; clamp shields the log1p path from a +ulp.
    return min(_log_fraction(num, den), 0.0)


def binom_tail_exact(n: int, l: int, p) -> float:
    """P(S_n > l): the right binomial tail, summed term by term.

    This is the oracle the bracketing machinery is tested against.  Terms
    are generated by the pmf ratio recurrence started at the largest term
    of the summation range (so underflow of far terms never poisons the
    start), then totalled with math.fsum, which is exact for floats and
    makes the summation order immaterial.

    By convention l > n returns 0.0 (with a TailConventionWarning) and
    l < 0 returns 1.0.
    """
    pf = _check_p(p)
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    if l > n:
        warnings.warn(
            f"threshold l={l} exceeds n={n}; tail is 0 by convention",
            TailConventionWarning,
            stacklevel=2,
        )
        return 0.0
    if l < 0:
        return 1.0
    if l == n:
        return 0.0

    pflt = float(pf)
    qflt = float(1 - pf)
    # Largest pmf over k in [l+1, n] sits at the mode clamped to the range.
    mode = min(max(int(math.floor((n + 1) * pflt)), l + 1), n)
    t_mode = math.exp(log_binom_pmf(n, mode, pf))
    if t_mode == 0.0:
        return 0.0  # whole tail below float underflow

    terms = [t_mode]
    t = t_mode
    for k in range(mode, l + 1, -1):  # downward: k -> k-1
        t *= k / (n - k + 1) * qflt / pflt
        terms.append(t)
    t = t_mode
    for k in range(mode, n):  # upward: k -> k+1
        t *= (n - k) / (k + 1) * pflt / qflt
        terms.append(t)
        if t == 0.0:
            break
    return min(math.fsum(terms), 1.0)


def binom_tail_fraction(n: int, l: int, p) -> Fraction:
    """P(S_n > l) as an exact Fraction (big-integer arithmetic).

    Trusted-oracle tier for tests; practical for n up to a few thousand.
    """
    pf = _check_p(p)
    if l >= n:
        return Fraction(0)
    if l < 0:
        return Fraction(1)
    pnum, pden = pf.numerator, pf.denominator
    qnum = pden - pnum
    total = sum(
        math.comb(n, k) * pnum**k * qnum ** (n - k) for k in range(l + 1, n + 1)
    )
    return Fraction(total, pden**n)
