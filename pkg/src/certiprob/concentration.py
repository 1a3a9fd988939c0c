"""Exponential tail bound for sums of independent centered variables.

For S_n = X_1 + ... + X_n with E X_j = 0, B_n^2 = Var S_n, and moment
growth E|X_j^k| <= k! (sigma_j^2 / 2) c^(k-2) for all k >= 3,

    P(|S_n| > t) < 2 exp( -t^2 / (2 B_n^2 + 2 c t) ).

Uniformly bounded variables |X_j| <= M satisfy the moment condition with
c = M/3.  The module evaluates the bound, checks the moment condition
against user-supplied absolute moments, and ships a seeded Monte Carlo
harness for validating the bound empirically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

_C_FROM_M_TOL = 1e-15


@dataclass(frozen=True)
class BernsteinInput:
    """Bound inputs: variance of the sum, growth constant c, threshold t.

    Passing the uniform bound M instead of (or along with) c pins
    c = M/3; supplying both with c != M/3 is rejected.
    """

    B_n_sq: float
    t: float
    c: Optional[float] = None
    M: Optional[float] = None

    def __post_init__(self):
        if self.B_n_sq <= 0:
            raise ValueError(f"B_n_sq must be positive, got {self.B_n_sq!r}")
        if self.t < 0:
            raise ValueError(f"t must be non-negative, got {self.t!r}")
        if self.c is None and self.M is None:
            raise ValueError("provide c, or M (uniform bound) to set c = M/3")
        if self.M is not None:
            if self.M <= 0:
                raise ValueError(f"M must be positive, got {self.M!r}")
            implied = self.M / 3.0
            if self.c is None:
                object.__setattr__(self, "c", implied)
            elif abs(self.c - implied) > _C_FROM_M_TOL:
                raise ValueError(
                    f"c={self.c!r} contradicts M={self.M!r} (requires c = M/3)"
                )
        if self.c <= 0:
            raise ValueError(f"c must be positive, got {self.c!r}")


def bernstein_bound(inp: BernsteinInput) -> float:
    """2 exp(-t^2 / (2 B_n^2 + 2 c t)); lies in (0, 2], equals 2 at t = 0."""
    return 2.0 * math.exp(-inp.t**2 / (2.0 * inp.B_n_sq + 2.0 * inp.c * inp.t))


@dataclass(frozen=True)
class MomentCheckReport:
    """Per-variable, per-order verdicts for the moment-growth condition."""

    c: float
    k_max: int
    holds: bool
    failures: tuple  # (variable index, k) pairs where the inequality broke
    margins: tuple  # (j, k, moment, allowance) rows, for inspection


def moment_condition_check(
    sigma_sq: Sequence[float],
    c: float,
    moment_fn: Callable[[int, int], float],
    k_max: int = 10,
) -> MomentCheckReport:
    """Check E|X_j^k| <= k! (sigma_j^2 / 2) c^(k-2) for k = 3..k_max.

    moment_fn(j, k) must return the k-th absolute moment of variable j;
    exceptions it raises propagate annotated with the offending index.
    """
    if k_max < 3:
        raise ValueError(f"k_max must be at least 3, got {k_max}")
    if c <= 0:
        raise ValueError(f"c must be positive, got {c!r}")
    failures = []
    margins = []
    for j, s2 in enumerate(sigma_sq):
        if s2 <= 0:
            raise ValueError(f"sigma_sq[{j}] must be positive, got {s2!r}")
        for k in range(3, k_max + 1):
            try:
                mom = moment_fn(j, k)
            except Exception as exc:
                raise RuntimeError(
                    f"moment evaluator failed at variable {j}, order {k}"
                ) from exc
            allowance = math.factorial(k) * (s2 / 2.0) * c ** (k - 2)
            margins.append((j, k, mom, allowance))
            if mom > allowance:
                failures.append((j, k))
    return MomentCheckReport(
        c=float(c),
        k_max=k_max,
        holds=not failures,
        failures=tuple(failures),
        margins=tuple(margins),
    )


def mc_abs_sum_tail(
    n: int,
    t: float,
    seed: int,
    samples: int = 10**6,
    draw: Optional[Callable[[np.random.Generator, tuple], np.ndarray]] = None,
    chunk_samples: int = 20_000,
):
    """Seeded Monte Carlo estimate of P(|X_1 + ... + X_n| > t).

    Returns (p_hat, standard_error).  `draw(rng, shape)` produces the iid
    variables (default: uniform on [-1, 1], the standard bounded zero-mean
    test bed).  Work is split into chunks whose generators are spawned
    deterministically from the master seed, so the estimate is
    reproducible and chunks could run in parallel without changing it.
    """
    if samples < 1:
        raise ValueError(f"samples must be positive, got {samples}")
    if draw is None:
        draw = lambda rng, shape: rng.uniform(-1.0, 1.0, size=shape)
    master = np.random.SeedSequence(seed)
    n_chunks = math.ceil(samples / chunk_samples)
    children = master.spawn(n_chunks)
    exceed = 0
    done = 0
    for child in children:
        m = min(chunk_samples, samples - done)
        rng = np.random.default_rng(child)
        sums = draw(rng, (m, n)).sum(axis=1)
        exceed += int(np.count_nonzero(np.abs(sums) > t))
        done += m
    p_hat = exceed / samples
    se = math.sqrt(max(p_hat * (1.0 - p_hat), 1.0 / samples) / samples)
    return p_hat, se


__all__ = [
    "BernsteinInput",
    "MomentCheckReport",
    "bernstein_bound",
    "moment_condition_check",
    "mc_abs_sum_tail",
]
