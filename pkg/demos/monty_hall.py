"""Monty Hall with an adversarial host.

You pick door 1.  The host, who knows where the car is, opens door 2
or door 3 to show a goat.  When the car is behind door 1 the host may
favor either door; the credal set keeps both host strategies, so the
joint law of (car, opened door) is genuinely set-valued.

Switching always is minimax optimal and guarantees the car with
probability 2/3 (worst-case loss 1/3), and it is the *only* optimal
rule.  Updating by conditioning cannot see this: after observing the
opened door the posterior probability of door 1 ranges over [1/3, 1/2]
and sticking looks defensible.  A small fee for losing switches makes
the gap quantitative: the a posteriori optimal play switches with
probability exactly 10/21 < 1, and both conditioning-based rules fall
short of the a priori value.
"""

from fractions import Fraction

from credal import (
    DecisionProblem,
    LossFunction,
    ProblemSpace,
    credal_set,
    is_rectangular,
    solve_a_posteriori,
    solve_a_priori,
    solve_ignoring,
    worst_case_loss,
    rule_from_weights,
)

SPACE = ProblemSpace(("G2", "G3"), ("1", "2", "3"), ("1", "2", "3"))

# rows: opened door; columns: car position; one generator per host
# strategy for the car-behind-1 tie
HOST_OPENS_2 = [["1/3", "0", "1/3"], ["0", "1/3", "0"]]
HOST_OPENS_3 = [["0", "0", "1/3"], ["1/3", "1/3", "0"]]


def monty(fee=Fraction(0)):
    """Miss pays 1; a losing switch pays the fee on top."""
    table = []
    for car in SPACE.y_labels:
        row = []
        for final in SPACE.actions:
            loss = Fraction(int(final != car))
            if final != "1" and final != car:
                loss += fee
            row.append(loss)
        table.append(tuple(row))
    p = credal_set(SPACE, [HOST_OPENS_2, HOST_OPENS_3], convex=True)
    return DecisionProblem(p, LossFunction(SPACE, tuple(table)))


def main():
    dp = monty()
    sol = solve_a_priori(dp)
    print("worst-case loss of the best rule:", sol.value)
    print("rule is unique:", sol.unique)
    for x, act in zip(SPACE.x_labels, sol.rule.per_x):
        door = SPACE.actions[act.weights.index(Fraction(1))]
        print("  host opens %s -> take door %s" % (x[1], door))
    print("the set is not rectangular:", not is_rectangular(dp.credal))

    print()
    fee = Fraction(1, 10)
    print("-- losing switches now pay an extra %s --" % fee)
    dp = monty(fee)
    sol = solve_a_priori(dp)
    print("a priori value:", sol.value)
    post = solve_a_posteriori(dp)
    for x in SPACE.x_labels:
        pt = post.point(x)
        (act,) = pt.action_vertices
        switch = sum(
            (w for w, a in zip(act.weights, SPACE.actions) if a != "1"), Fraction(0)
        )
        print("  after %s: posterior value %s, switch with probability %s"
              % (x, pt.value, switch))

    pinned = rule_from_weights(
        SPACE, [post.point(x).action_vertices[0].weights for x in SPACE.x_labels]
    )
    print("follow the posterior rule a priori:",
          worst_case_loss(dp.credal, pinned, dp.loss)[0])
    ignoring = solve_ignoring(dp)
    print("ignore the signal entirely:", ignoring.value)
    print("either conditioning scheme beats the optimum %s: %s"
          % (sol.value, ignoring.matches_a_priori))


if __name__ == "__main__":
    main()
