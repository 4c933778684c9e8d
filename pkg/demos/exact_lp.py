"""The exact simplex layer on its own.

Everything above it reduces to linear programs over Fractions, so the
solver never rounds: optimality is certified by an exact dual, and
ties are real ties rather than epsilon artifacts.  Three views:

* a zero-sum game (rock, paper, scissors with a doubled scissors-rock
  payoff) solved to its exact mixed equilibrium,
* a two-variable LP with its primal and dual solutions side by side,
* an objective that is flat on an edge, where the optimal face comes
  back as two vertices instead of an arbitrary point on it.
"""

from credal.linprog import (
    GE,
    LE,
    lp_solve,
    make_lp,
    optimal_face_vertices,
    zero_sum_value,
)


def main():
    print("-- rock paper scissors, scissors beats rock double --")
    payoff = [
        ["0", "-1", "2"],
        ["1", "0", "-1"],
        ["-2", "1", "0"],
    ]
    value, row_mix, col_mix = zero_sum_value(payoff)
    print("value:", value)
    print("row mixture:", ", ".join(str(w) for w in row_mix))
    print("col mixture:", ", ".join(str(w) for w in col_mix))

    print()
    print("-- minimize 2x + 3y subject to x + y >= 4, x - y <= 2 --")
    lp = make_lp(
        objective=["2", "3"],
        rows=[["1", "1"], ["1", "-1"]],
        senses=[GE, LE],
        rhs=["4", "2"],
    )
    sol = lp_solve(lp)
    print("status:", sol.status)
    print("minimum:", sol.value, "at x,y =", ", ".join(str(v) for v in sol.primal))
    print("dual prices:", ", ".join(str(y) for y in sol.dual))
    # strong duality, checked by hand: b.y == c.x
    print("rhs . dual =", 4 * sol.dual[0] + 2 * sol.dual[1])

    print()
    print("-- minimize x + y subject to x + y >= 1 (a flat edge) --")
    lp = make_lp(
        objective=["1", "1"],
        rows=[["1", "1"]],
        senses=[GE],
        rhs=["1"],
    )
    sol = lp_solve(lp)
    print("minimum:", sol.value)
    for v in optimal_face_vertices(lp, sol.value):
        print("  optimal vertex:", ", ".join(str(c) for c in v))


if __name__ == "__main__":
    main()
