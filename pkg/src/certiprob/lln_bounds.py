"""Executable sample-size bounds for the weak law of large numbers.

Two classical bounds are provided as honest integer outputs:

* the geometric-blocking bound: the smallest N such that for all n >= N
  the one-sided event {S_n/n >= p + eps} has probability below eta, and
* the all-following-trials bound N > (2/eps^2) ln(4/(eps^2 eta)) + 2,
  which controls |S_n/n - p| < eps simultaneously for every n >= N.

The blocking bound hinges on an auxiliary integer alpha, the least power
at which (p/(p+eps))^alpha <= eta.  An off-by-one in alpha silently voids
the guarantee, so alpha is certified in exact rational arithmetic rather
than trusted to floating logs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .numerics import _as_fraction


@dataclass(frozen=True)
class LlnQuery:
    """Accuracy/confidence request: |S_n/n - p| < eps with slack eta."""

    p: object
    eps: object
    eta: object

    def __post_init__(self):
        pf, ef, hf = map(_as_fraction, (self.p, self.eps, self.eta))
        for name, v in (("p", pf), ("eps", ef), ("eta", hf)):
            if not (0 < v < 1):
                raise ValueError(f"{name} must lie strictly in (0, 1), got {v}")
        if pf + ef > 1:
            raise ValueError(
                f"p + eps must not exceed 1 for the upper-tail event to be "
                f"non-trivial (p={self.p!r}, eps={self.eps!r})"
            )


def bernoulli_alpha(query: LlnQuery) -> int:
    """Least alpha >= 1 with (p/(p+eps))^alpha <= eta, certified exactly.

    A float-log estimate seeds the search; the answer is then pinned by
    exact rational power comparisons, so the result is immune to the
    rounding of the logs.
    """
    p = _as_fraction(query.p)
    eps = _as_fraction(query.eps)
    eta = _as_fraction(query.eta)
    ratio = p / (p + eps)

    guess = max(1, math.ceil(math.log(float(eta)) / math.log(float(ratio))))
    alpha = guess
    while ratio**alpha > eta:  # exact comparisons
        alpha += 1
    while alpha > 1 and ratio ** (alpha - 1) <= eta:
        alpha -= 1
    return alpha


def bernoulli_n_bound(query: LlnQuery) -> int:
    """Smallest certified N = ceil[(alpha(1+eps) - q) / (eps(p+eps))].

    For every n >= N the one-sided tail P(S_n >= upper_count(n, query))
    is below eta.  The ceiling is taken in exact rational arithmetic; an
    exactly integral bound is returned as that integer.
    """
    alpha = bernoulli_alpha(query)
    p = _as_fraction(query.p)
    eps = _as_fraction(query.eps)
    q = 1 - p
    bound = (alpha * (1 + eps) - q) / (eps * (p + eps))
    return max(1, math.ceil(bound))


def upper_count(n: int, query: LlnQuery) -> int:
    """The integer mu with mu - 1 < n*p + n*eps <= mu.

    The certified one-sided event at sample size n is {S_n >= mu}.
    """
    x = n * _as_fraction(query.p) + n * _as_fraction(query.eps)
    return math.ceil(x)


def bernoulli_n_bound_two_sided(query: LlnQuery) -> int:
    """Sample size after which BOTH tails are controlled at total level eta.

    Convention: eta is split evenly, each one-sided bound run at eta/2,
    with the lower tail handled on the flipped coin (p -> q).  The flipped
    query needs q + eps <= 1, i.e. eps <= p.
    """
    p = _as_fraction(query.p)
    eps = _as_fraction(query.eps)
    eta = _as_fraction(query.eta)
    if eps > p:
        raise ValueError(
            f"two-sided bound needs eps <= p so the lower-tail event is "
            f"non-trivial (p={query.p!r}, eps={query.eps!r})"
        )
    upper = bernoulli_n_bound(LlnQuery(p, eps, eta / 2))
    lower = bernoulli_n_bound(LlnQuery(1 - p, eps, eta / 2))
    return max(upper, lower)


def cantelli_n(eps, eta) -> int:
    """Smallest integer strictly above (2/eps^2) ln(4/(eps^2 eta)) + 2.

    From this N on, the relative frequency stays within eps of p on the
    N-th AND every later trial, with probability above 1 - eta.  The
    infinite-horizon guarantee itself is not desk-checkable; only the
    formula and its monotonicities are tested.
    """
    e = float(eps)
    h = float(eta)
    if not (0 < e < 1) or not (0 < h < 1):
        raise ValueError(f"eps and eta must lie strictly in (0, 1), got {eps!r}, {eta!r}")
    value = (2.0 / e**2) * math.log(4.0 / (e**2 * h)) + 2.0
    return math.floor(value) + 1


__all__ = [
    "LlnQuery",
    "bernoulli_alpha",
    "bernoulli_n_bound",
    "bernoulli_n_bound_two_sided",
    "upper_count",
    "cantelli_n",
]
