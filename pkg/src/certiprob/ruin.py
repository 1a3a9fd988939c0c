"""Gambler's ruin with unequal stakes.

Player A stakes alpha per game and B stakes beta; A wins a game with
probability p, collecting beta from B, and otherwise pays alpha.  A is
ruined when their capital drops below alpha (cannot cover a stake), B
when theirs drops below beta.  Tracking A's capital c on {0, ..., a+b}:

    transient:  alpha <= c <= a+b-beta
    A-absorbed: c < alpha       B-absorbed: c > a+b-beta

For a fair game (p*beta = q*alpha) A's ruin probability y_a obeys the
printed pair of bounds

    (b - beta + 1)/(a + b - beta + 1) <= y_a <= b/(a + b - alpha + 1).

The exact absorption probability (fair or not) comes from the banded
linear system of the chain, and the characteristic polynomial
p z^(alpha+beta) - z^alpha + q = 0 whose roots drive closed-form
treatments is exposed with certified residuals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_banded

_FAIRNESS_TOL = 1e-12


class UnfairGameError(ValueError):
    """ruin_bounds_fair requires p*beta = q*alpha; use ruin_exact_chain."""


@dataclass(frozen=True)
class RuinGame:
    """Unequal-stakes ruin problem (fortunes a, b; stakes alpha, beta)."""

    a: int
    b: int
    alpha: int
    beta: int
    p: float

    def __post_init__(self):
        for name in ("a", "b", "alpha", "beta"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")
        if self.a < self.alpha or self.b < self.beta:
            raise ValueError(
                f"both players must cover one stake: need a >= alpha and "
                f"b >= beta, got a={self.a}, alpha={self.alpha}, "
                f"b={self.b}, beta={self.beta}"
            )
        if not 0 < self.p < 1:
            raise ValueError(f"p must lie strictly in (0, 1), got {self.p!r}")

    @property
    def q(self) -> float:
        return 1 - self.p

    @property
    def is_fair(self) -> bool:
        return abs(self.p * self.beta - self.q * self.alpha) <= _FAIRNESS_TOL


def ruin_bounds_fair(game: RuinGame):
    """The two-sided fair-game bounds (lower, upper) on A's ruin probability."""
    if not game.is_fair:
        raise UnfairGameError(
            f"game is not fair: p*beta={game.p * game.beta:.15g} != "
            f"q*alpha={game.q * game.alpha:.15g}; the printed bounds only "
            f"cover the fair case, use ruin_exact_chain for the exact value"
        )
    a, b, alpha, beta = game.a, game.b, game.alpha, game.beta
    lower = (b - beta + 1) / (a + b - beta + 1)
    upper = b / (a + b - alpha + 1)
    return lower, upper


def _absorption_probability(game: RuinGame, tol: float, side: str) -> float:
    """Solve the banded absorption system for the chosen ruin event."""
    a, b, alpha, beta, p, q = game.a, game.b, game.alpha, game.beta, game.p, game.q
    lo, hi = alpha, a + b - beta
    m = hi - lo + 1
    # (I - T) u = rhs over transient states; bandwidths (alpha below, beta above).
    ab = np.zeros((alpha + beta + 1, m))
    rhs = np.zeros(m)
    for j in range(m):
        ab[beta, j] = 1.0  # diagonal in LAPACK band storage
    for i in range(m):
        c = lo + i
        up = c + beta
        if up <= hi:
            j = up - lo
            ab[beta + i - j, j] = -p
        elif side == "B":
            rhs[i] += p
        down = c - alpha
        if down >= lo:
            j = down - lo
            ab[beta + i - j, j] = -q
        elif side == "A":
            rhs[i] += q
    u = solve_banded((alpha, beta), ab, rhs)

    # Certify: residual of the solved system must sit within tol.
    resid = rhs.copy()
    for i in range(m):
        c = lo + i
        resid[i] -= u[i]
        if c + beta <= hi:
            resid[i] += p * u[c + beta - lo]
        if c - alpha >= lo:
            resid[i] += q * u[c - alpha - lo]
    if np.max(np.abs(resid)) > max(tol, 1e-14):
        raise ArithmeticError(
            f"absorption solve residual {np.max(np.abs(resid)):.3e} exceeds "
            f"tolerance {tol:.3e}"
        )
    return float(min(max(u[game.a - lo], 0.0), 1.0))


def ruin_exact_chain(game: RuinGame, tol: float = 1e-10) -> float:
    """A's exact ruin probability from the absorbing chain (any p, any stakes).

    Direct banded elimination, O(a+b) time and memory, so sizes well past
    1e4 pose no problem; tol is the certified residual threshold of the
    solve.
    """
    return _absorption_probability(game, tol, side="A")


def ruin_chain_b_side(game: RuinGame, tol: float = 1e-10) -> float:
    """B's ruin probability, solved independently (complements A's)."""
    return _absorption_probability(game, tol, side="B")


def ruin_root_equation(game: RuinGame, residual_tol: float = 1e-10):
    """All alpha+beta complex roots of p z^(alpha+beta) - z^alpha + q = 0.

    z = 1 is always a root (p - 1 + q = 0); it is deflated first and the
    remaining roots found as companion-matrix eigenvalues, then polished
    with Newton steps on the original polynomial.  Every returned root is
    certified to |p z^(alpha+beta) - z^alpha + q| <= residual_tol.
    """
    alpha, beta, p, q = game.alpha, game.beta, game.p, game.q
    deg = alpha + beta
    coeffs = np.zeros(deg + 1)
    coeffs[0] = p  # z^(alpha+beta)
    coeffs[beta] = -1.0  # z^alpha
    coeffs[deg] = q  # constant

    # Synthetic division by (z - 1).
    deflated = np.empty(deg)
    acc = 0.0
    for i in range(deg):
        acc = coeffs[i] + acc
        deflated[i] = acc

    roots = list(np.roots(deflated)) if deg > 1 else []

    def f(z):
        return p * z**deg - z**alpha + q

    def fp(z):
        return p * deg * z ** (deg - 1) - alpha * z ** (alpha - 1)

    polished = [complex(1.0)]
    for z in roots:
        z = complex(z)
        for _ in range(50):
            if abs(f(z)) <= 1e-3 * residual_tol:
                break
            d = fp(z)
            if d == 0:
                break
            z = z - f(z) / d
        polished.append(z)

    worst = max(abs(f(z)) for z in polished)
    if worst > residual_tol:
        raise ArithmeticError(
            f"root polishing left residual {worst:.3e} > {residual_tol:.3e} "
            f"(alpha={alpha}, beta={beta}, p={p})"
        )
    polished.sort(key=lambda z: (round(z.real, 12), round(z.imag, 12)))
    return polished


__all__ = [
    "RuinGame",
    "UnfairGameError",
    "ruin_bounds_fair",
    "ruin_exact_chain",
    "ruin_chain_b_side",
    "ruin_root_equation",
]
