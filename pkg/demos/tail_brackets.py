# Certified two-sided brackets for a binomial tail, without any central
# limit theorem: the classic n = 9000, p = 1/3 example, asking for the
# probability of more than 3090 successes.

import math
from fractions import Fraction

from certiprob import TailQuery, bahadur_tail, binom_tail_exact, bracket_tail

n, l, p = 9000, 3090, Fraction(1, 3)

# What the normal approximation would say (no error control):
mean, sd = n * float(p), math.sqrt(n * float(p) * (1 - float(p)))
z = (l + 0.5 - mean) / sd
normal = 0.5 * math.erfc(z / math.sqrt(2))
print(f"normal approximation : {normal:.5f}   (how wrong? unknown a priori)")

# The exact value, by summing the pmf:
exact = binom_tail_exact(n, l, p)
print(f"exact tail           : {exact:.5f}")

# Certified brackets at increasing depth: every line is a PROOF that the
# tail lies between the two numbers.
query = TailQuery(n=n, l=l, p=p)
print("\ndepth   lower        upper        width")
for kmax in (2, 4, 6, 8, 12, 20):
    br = bracket_tail(query, tol=1e-300, k_max=kmax)
    print(f"{br.k_used:>5}   {br.lower:.9f}  {br.upper:.9f}  {br.width:.2e}")
    assert br.lower <= exact <= br.upper

# An independent closed form for the same quantity (lead term times a
# hypergeometric series) -- a completely different route to the answer:
closed = bahadur_tail(n, l + 1, p)
print(f"\nhypergeometric form  : {closed:.12f}")
print(f"exact                : {exact:.12f}")
print(f"relative difference  : {abs(closed - exact) / exact:.2e}")
