# How many coin tosses pin the frequency near p?  Two classical, fully
# explicit sample-size bounds, checked against the exact binomial tail.

from certiprob import LlnQuery, bernoulli_n_bound, binom_tail_exact, cantelli_n
from certiprob.lln_bounds import bernoulli_alpha, upper_count

print("one-sided bound: first N with P(S_n/n >= p + eps) < eta for all n >= N")
print("p     eps    eta     alpha      N")
for p, eps, eta in [
    (0.5, 0.5, 0.5),
    (0.5, 0.1, 0.01),
    (0.3, 0.05, 0.05),
    (0.5, 0.02, 0.1),
]:
    q = LlnQuery(p, eps, eta)
    print(f"{p:<5} {eps:<6} {eta:<6} {bernoulli_alpha(q):>5} {bernoulli_n_bound(q):>8}")

# The guarantee is checkable: at N the exact upper tail must sit below eta.
q = LlnQuery(0.5, 0.1, 0.01)
N = bernoulli_n_bound(q)
mu = upper_count(N, q)
tail = binom_tail_exact(N, mu - 1, 0.5)
print(f"\ncheck at N={N}: P(S_N >= {mu}) = {tail:.3e} < eta = {q.eta}")

# The stronger demand -- stay within eps on the N-th AND every later
# trial -- needs more tosses:
print("\nall-following-trials bound:")
print("eps    eta     N")
for eps, eta in [(0.5, 0.5), (0.1, 0.1), (0.1, 0.01), (0.05, 0.1)]:
    print(f"{eps:<6} {eta:<6} {cantelli_n(eps, eta):>8}")
