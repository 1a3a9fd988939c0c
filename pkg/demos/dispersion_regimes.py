# Can several series of Bernoulli counts be pooled as one phenomenon?
# The dispersion coefficient Q answers by comparing the spread of
# per-series counts to the binomial spread a common p would produce.

import numpy as np

from certiprob import CountVector, TrialMatrix, dispersion_Q, expected_D, moments_Q_hat
from certiprob.lexis import empirical_Q_hat

# Three trial matrices with the same grand mean but different structure:
same = TrialMatrix(p=((0.5,) * 6,) * 4)                      # one common p
strata = TrialMatrix(p=((0.2,) * 6, (0.8,) * 6, (0.35,) * 6, (0.65,) * 6))
cycles = TrialMatrix(p=((0.1, 0.9, 0.3, 0.7, 0.5, 0.5),) * 4)  # same row repeated

for label, trials in [("common p", same), ("row strata", strata), ("repeated row", cycles)]:
    D, regime = expected_D(trials)
    print(f"{label:<13} E(Q) = {D:.4f}   regime: {regime.value}")

# Simulated counts reproduce those expectations:
rng = np.random.default_rng(12345)
print("\nsimulated mean Q (10_000 replicates each):")
for label, trials in [("common p", same), ("row strata", strata), ("repeated row", cycles)]:
    probs = np.array(trials.p)
    qs = []
    for _ in range(10_000):
        m = (rng.random(probs.shape) < probs).sum(axis=1)
        qs.append(dispersion_Q(CountVector(m=tuple(int(x) for x in m), s=trials.s),
                               trials.grand_mean()))
    print(f"{label:<13} mean Q = {np.mean(qs):.4f}")

# With p unknown, the plug-in statistic keeps mean 1 in the common-p case
# and its exact variance obeys two printed bounds:
mean, var, bound1, bound2 = moments_Q_hat(n=6, s=5, p=0.4)
print(f"\nplug-in statistic, 6 series of 5: E = {float(mean):.1f}, "
      f"Var = {float(var):.4f} < {float(bound1):.4f} (and < {float(bound2):.4f})")

counts = CountVector(m=(3, 1, 2, 2, 4, 1), s=5)
print(f"one sample of counts {counts.m}: Q_hat = {float(empirical_Q_hat(counts)):.4f}")
