# Two asymptotic stories: counting integer partitions against their
# exponential approximation, and an exponential tail bound validated by
# seeded simulation.

import math

from certiprob import (
    BernsteinInput,
    bernstein_bound,
    partition_exact,
    partition_uspensky,
)
from certiprob.concentration import mc_abs_sum_tail

# --- partitions -------------------------------------------------------------
print("p(n) exactly vs the asymptotic formulas:")
print("   n        exact         simple/exact   refined/exact")
for n in (10, 50, 100, 200, 500):
    exact = partition_exact(n)
    simple, refined = partition_uspensky(n)
    print(f"{n:>5} {exact:>16} {simple / exact:>14.6f} {refined / exact:>14.9f}")
print("the (n - 1/24) shift plus one correction factor is dramatically closer")

# --- concentration ----------------------------------------------------------
print("\nsum of n uniform(-1,1) variables: certified tail bound vs simulation")
print("   n      t     bound       simulated (1e6 samples)")
for n in (10, 100, 1000):
    t = 2.5 * math.sqrt(n / 3.0)
    bound = bernstein_bound(BernsteinInput(B_n_sq=n / 3.0, t=t, M=1.0))
    p_hat, se = mc_abs_sum_tail(n, t, seed=7_000 + n, samples=10**6)
    print(f"{n:>5} {t:>7.2f} {bound:>10.5f}  {p_hat:.5f} +/- {3 * se:.5f}")
print("the bound holds with room to spare, as an inequality should")
