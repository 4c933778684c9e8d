"""What the hull construction adds, and what rectangularity buys.

The hull of a credal set collects every joint assembled from an
X-marginal of one member and per-signal conditionals of possibly
different members.  Mixing marginals and conditionals like this can
create genuinely new joints; a set that already contains all of them
is called rectangular.

Part one builds a two-generator set whose hull strictly extends it.
Part two takes a rectangular set and shows the guarantee that comes
with rectangularity (every a posteriori optimal rule is a priori
optimal) as well as its limit: full time consistency can still fail,
exhibited by a concrete a priori optimal rule that is beaten after one
signal.
"""

from credal import (
    DecisionProblem,
    ProblemSpace,
    check_time_consistency,
    check_weak_time_consistency,
    classification_loss,
    credal_set,
    hull,
    is_conservative,
    is_rectangular,
    joint,
    joint_polytope,
    member,
    set_equal,
)


def show_mass(mass):
    return "  ".join("[" + " ".join(str(v) for v in row) + "]" for row in mass)


def part_one():
    space = ProblemSpace(("0", "1"), ("0", "1"), ("0", "1"))
    p = credal_set(
        space,
        [
            [["1/3", "1/6"], ["1/3", "1/6"]],
            [["1/6", "1/3"], ["1/6", "1/3"]],
        ],
        convex=False,
    )
    print("-- two joints, one shared signal marginal --")
    for g in p.generators:
        print("  ", show_mass(g.mass))
    # marginal of the first, conditionals of the second
    pr3 = joint(space, [["1/3", "1/6"], ["1/6", "1/3"]])
    print("cross product", show_mass(pr3.mass))
    print("  in the set:     ", member(pr3.flatten(), joint_polytope(p)))
    print("  in the hull:    ", member(pr3.flatten(), joint_polytope(hull(p))))
    print("  set rectangular:", is_rectangular(p))
    h = hull(p)
    print("  hull of the hull adds nothing:",
          set_equal(joint_polytope(hull(h)), joint_polytope(h)))


def part_two():
    space = ProblemSpace(("0", "1"), ("0", "1", "2"), ("0", "1", "2"))
    p = credal_set(
        space,
        [
            [["1/6", "1/6", "1/6"], ["1/4", "1/5", "1/20"]],
            [["1/3", "1/3", "1/3"], ["0", "0", "0"]],
        ],
        convex=False,
    )
    dp = DecisionProblem(p, classification_loss(space))
    print()
    print("-- a rectangular set under classification loss --")
    print("rectangular:", is_rectangular(p))
    print("conservative:", is_conservative(p), " (one generator kills x=1)")
    print("weak time consistency:", check_weak_time_consistency(dp).result)
    verdict = check_time_consistency(dp)
    print("time consistency:", verdict.result)
    w = verdict.witness
    print("an a priori optimal rule picks action %s on x=%s,"
          % (space.actions[w.rule.per_x[1].weights.index(1)], w.x))
    print("  pays %s there while the a posteriori optimum pays %s"
          % (w.posterior_loss, w.posterior_value))


def main():
    part_one()
    part_two()


if __name__ == "__main__":
    main()
