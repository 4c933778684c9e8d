"""A credal bettor, before and after the signal.

An outcome Y is 0 with probability 1/3 and 1 with probability 2/3, and
a signal X is observed first, but nothing ties the signal to the
outcome: the credal set contains every joint with that Y-marginal that
places the signal mass at the corners.  The agent must predict Y and
pays 1 for a miss.

Two zero-sum games against a bookie fall out of this.  If the bookie
commits to a distribution before X is revealed, always predicting 1
guarantees expected loss 1/3.  If the bookie may commit after seeing
x, every posterior is possible and the agent can only guarantee 1/2.
The script solves both games, shows that the a posteriori optimal rule
loses the a priori game, and closes with an exit option that restores
time consistency but still admits a dynamically inconsistent pair.
"""

from credal import (
    DecisionProblem,
    ProblemSpace,
    check_time_consistency,
    check_weak_time_consistency,
    credal_set,
    falsify_dynamic_consistency,
    loss_function,
    solve_a_posteriori,
    solve_a_priori,
    verify_saddle,
    worst_case_loss,
)

SPACE = ProblemSpace(("0", "1"), ("0", "1"), ("0", "1", "exit"))

# Y-marginal fixed at (1/3, 2/3); the signal column is unconstrained.
GENERATORS = [
    [["1/3", "2/3"], ["0", "0"]],
    [["0", "2/3"], ["1/3", "0"]],
    [["1/3", "0"], ["0", "2/3"]],
    [["0", "0"], ["1/3", "2/3"]],
]


def prediction_problem(exit_reward=None):
    """0/1 miss loss; the optional third action pays ``exit_reward``."""
    if exit_reward is None:
        space = ProblemSpace(("0", "1"), ("0", "1"), ("0", "1"))
        table = [["0", "1"], ["1", "0"]]
    else:
        space = SPACE
        table = [["0", "1", str(-exit_reward)], ["1", "0", str(-exit_reward)]]
    p = credal_set(space, GENERATORS, convex=True)
    return DecisionProblem(p, loss_function(space, table))


def weights(action):
    return "(" + ", ".join(str(w) for w in action.weights) + ")"


def main():
    dp = prediction_problem()

    print("-- the a priori game (bookie moves first) --")
    sol = solve_a_priori(dp)
    print("value:", sol.value)
    for x, act in zip(dp.space.x_labels, sol.rule.per_x):
        print("  on x=%s play %s" % (x, weights(act)))
    print("unique optimal rule:", sol.unique)
    print("saddle verified:", verify_saddle(dp, sol.bookie_mixture, sol.rule).holds)

    print()
    print("-- the a posteriori game (bookie sees x first) --")
    post = solve_a_posteriori(dp)
    for x in dp.space.x_labels:
        pt = post.point(x)
        print("  x=%s: value %s, optimal actions %s" % (
            x, pt.value, " | ".join(weights(a) for a in pt.action_vertices)))

    print()
    print("-- the two notions disagree --")
    verdict = check_weak_time_consistency(dp)
    print("weak time consistency:", verdict.result)
    witness = verdict.witness
    print("witness rule (a posteriori optimal at every x):")
    for x, act in zip(dp.space.x_labels, witness.per_x):
        print("  on x=%s play %s" % (x, weights(act)))
    worst, _ = worst_case_loss(dp.credal, witness, dp.loss)
    print("its a priori worst case: %s  (optimum is %s)" % (worst, sol.value))

    print()
    print("-- an exit option worth 1 restores time consistency --")
    ext = prediction_problem(exit_reward=1)
    print("time consistency:", check_time_consistency(ext).result)
    dyn = falsify_dynamic_consistency(ext, budget=0)
    print("dynamic consistency:", dyn.result)
    pair = dyn.witness
    print("witness pair (%s):" % pair.condition)
    for x, a, b in pair.posterior:
        print("  at x=%s posterior worst cases %s vs %s" % (x, a, b))
    print("a priori worst cases %s vs %s" % pair.prior)
    print("delta never beats delta' after the signal, yet loses before it")


if __name__ == "__main__":
    main()
