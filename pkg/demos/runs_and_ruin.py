# Two chapters of classical game analysis: waiting for a success run,
# and gambler's ruin when the two players stake different amounts.

from certiprob import (
    RuinGame,
    RunSpec,
    ruin_bounds_fair,
    ruin_exact_chain,
    ruin_root_equation,
    run_prob_beta,
    run_prob_demoivre,
    run_prob_oracle,
    run_prob_recursive,
)

# --- runs: four unrelated algorithms, one answer -------------------------
print("P(run of r heads within n fair tosses), four independent methods:")
print("n    r    recursion    closed form  series div   DP oracle")
for n, r in [(4, 2), (10, 3), (25, 4), (64, 6)]:
    spec = RunSpec(n, r, 0.5)
    vals = [run_prob_recursive(spec), run_prob_beta(spec),
            run_prob_demoivre(spec), run_prob_oracle(spec)]
    print(f"{n:<4} {r:<4} " + "  ".join(f"{float(v):.9f}" for v in vals))

# the linear-time recursion scales far beyond the others:
big = RunSpec(10**6, 20, 0.5)
print(f"\nn = 1e6, r = 20: P = {run_prob_recursive(big):.6f}  (recursion only)")

# --- ruin: unequal stakes -------------------------------------------------
# A stakes 2 per game, B stakes 1, and A wins a game with probability 2/3
# (p*beta = q*alpha: the game is fair in expectation).
game = RuinGame(a=20, b=20, alpha=2, beta=1, p=2 / 3)
lower, upper = ruin_bounds_fair(game)
exact = ruin_exact_chain(game)
print(f"\nfair unequal-stakes game {game.a}/{game.b}, stakes "
      f"{game.alpha}/{game.beta}, p = {game.p:.4f}")
print(f"printed bounds : {lower:.6f} <= ruin(A) <= {upper:.6f}")
print(f"exact chain    : {exact:.6f}")

# the unfair case has no printed bounds; the chain still answers exactly
skewed = RuinGame(a=20, b=20, alpha=2, beta=1, p=0.6)
print(f"same stakes, p = 0.6 (unfair): ruin(A) = {ruin_exact_chain(skewed):.6f}")

# every analysis of this game runs through one polynomial:
roots = ruin_root_equation(game)
print("\ncharacteristic roots of p z^(a+b) - z^a + q:")
for z in roots:
    print(f"  {z.real:+.6f} {z.imag:+.6f}i")
