"""Probability of a success run: four genuinely different computations.

y_n is the probability of at least r consecutive successes somewhere in n
independent p-trials; z_n = 1 - y_n.  The module offers:

* the first-order difference scheme on z (linear time, any n),
* the closed-form alternating binomial sum read off the generating
  function z(xi) = (1 - p^r xi^r) / (1 - xi + q p^r xi^(r+1)),
* the eighteenth-century power-series division algorithm (sum the first
  n - r + 1 coefficients of p^r / (1 - q - cq^2 - ... - c^(r-1)q^r) with
  c = p/q, expanding in powers of q), carried out in exact rational
  arithmetic, and
* a dynamic program over the trailing run length, the oracle the other
  three are tested against.

All four accept Fraction p for exact results (the series division always
works exactly, converting float p to the rational it represents).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .numerics import _as_fraction


@dataclass(frozen=True)
class RunSpec:
    """Run-probability problem: n tosses, run length r, success chance p."""

    n: int
    r: int
    p: object

    def __post_init__(self):
        if not 1 <= self.r <= self.n:
            raise ValueError(f"need 1 <= r <= n, got r={self.r}, n={self.n}")
        pf = _as_fraction(self.p)
        if not (0 < pf < 1):
            raise ValueError(f"p must lie strictly in (0, 1), got {self.p!r}")


def run_prob_recursive(spec: RunSpec):
    """y_n by forward iteration of z_{m+1} = z_m - q p^r z_{m-r}.

    Seed values: z_j = 1 for j < r (too few tosses for any run) and
    z_r = 1 - p^r (all r tosses must succeed).  O(n) time, O(r) memory.
    """
    n, r, p = spec.n, spec.r, spec.p
    q = 1 - p
    step = q * p**r
    one = 1 - p * 0  # scalar-typed like p
    window = deque([one] * r + [one - p**r])  # z_0 .. z_r
    # window holds z_{m-r} .. z_m; advance m from r to n-1
    for _ in range(r, n):
        window.append(window[-1] - step * window.popleft())
    return 1 - window[-1]


def run_prob_beta(spec: RunSpec):
    """y_n from the generating-function coefficients in closed form.

    z_n = beta(n) - p^r beta(n-r) with
    beta(m) = sum_k (-1)^k C(m - k*r, k) (q p^r)^k, the sum running while
    the binomial is nonzero (k <= m/(r+1), the same cut-off either way).
    """
    n, r, p = spec.n, spec.r, spec.p
    q = 1 - p
    w = q * p**r

    def beta(m):
        total = 0 * p
        k = 0
        while m - k * r >= k:
            total += (-1) ** k * math.comb(m - k * r, k) * w**k
            k += 1
        return total

    z = beta(n) - p**r * beta(n - r)
    return 1 - z


def run_prob_demoivre(spec: RunSpec):
    """y_n by series division, exact in rational arithmetic.

    Expands p^r / (1 - sum_{j=1}^{r} c^(j-1) q^j) as a power series in q
    (c = p/q held as a coefficient), i.e. the linear recurrence
    a_k = sum_j c^(j-1) a_{k-j}, and returns p^r * sum_{k<=n-r} a_k q^k.
    Coefficient cancellation grows with n, hence Fractions throughout.
    """
    n, r = spec.n, spec.r
    p = _as_fraction(spec.p)
    q = 1 - p
    c = p / q
    cpow = [c ** (j - 1) for j in range(1, r + 1)]
    a = [Fraction(1)]
    for k in range(1, n - r + 1):
        a.append(sum(cpow[j - 1] * a[k - j] for j in range(1, min(k, r) + 1)))
    total = p**r * sum(a[k] * q**k for k in range(n - r + 1))
    return total if isinstance(spec.p, (Fraction, int)) else float(total)


def run_prob_oracle(spec: RunSpec):
    """y_n by dynamic programming over the current trailing run length.

    States 0..r-1 track the run in progress; r is absorbing ("run seen").
    Exact with Fraction p; the test suite additionally cross-checks this
    against full 2^n enumeration for small n.
    """
    n, r, p = spec.n, spec.r, spec.p
    q = 1 - p
    zero = 0 * p
    state = [zero] * (r + 1)
    state[0] = 1 - zero  # probability one, scalar-typed like p
    for _ in range(n):
        new = [zero] * (r + 1)
        new[r] = state[r]
        for j in range(r):
            if state[j] == 0:
                continue
            new[0] += state[j] * q
            if j + 1 == r:
                new[r] += state[j] * p
            else:
                new[j + 1] += state[j] * p
        state = new
    return state[r]


def gf_series_coefficients(r: int, p, count: int):
    """First `count` power-series coefficients of the no-run generating
    function (1 - p^r xi^r) / (1 - xi + q p^r xi^(r+1)), by direct
    polynomial long division.  Coefficient m is z_m.
    """
    if r < 1 or count < 0:
        raise ValueError("need r >= 1 and count >= 0")
    q = 1 - p
    num = {0: 1 + 0 * p, r: -(p**r)}
    den = {0: 1 + 0 * p, 1: -(1 + 0 * p), r + 1: q * p**r}
    out = []
    rem = dict(num)
    for m in range(count):
        cm = rem.get(m, 0 * p)
        out.append(cm)
        if cm != 0:
            for e, coef in den.items():
                if e == 0:
                    continue
                rem[m + e] = rem.get(m + e, 0 * p) - cm * coef
        rem.pop(m, None)
    return out


__all__ = [
    "RunSpec",
    "run_prob_recursive",
    "run_prob_beta",
    "run_prob_demoivre",
    "run_prob_oracle",
    "gf_series_coefficients",
]
