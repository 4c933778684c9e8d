"""End-to-end acceptance checks.

Two layers.  First, frozen exact values for the bundled corpus cases:
solver output, consistency verdicts with their witnesses, calibration
and dilation reports.  Second, randomized suites (fixed seeds, 200
instances each) for the structural laws the library is built around:
rectangular sets behave well under conditioning, worst-case loss
decomposes by signal on them, the hull is idempotent, LP values sit
inside grid-search bounds, and every solution is a verified saddle
point.
"""

import random
from fractions import Fraction

from credal.calibration import (
    check_calibration,
    ignore_rule,
    is_sharply_calibrated,
    partition_conditioning,
    standard_conditioning,
)
from credal.consistency import (
    check_time_consistency,
    check_weak_time_consistency,
    falsify_dynamic_consistency,
)
from credal.core import (
    DecisionProblem,
    ProblemSpace,
    condition,
    credal_set,
    deterministic_rule,
    dilation_report,
    hull,
    is_conservative,
    is_rectangular,
    joint,
    joint_polytope,
    marginal_y,
    rule_from_weights,
)
from credal.corpus import load_case
from credal.minimax import (
    brute_force_value,
    solve_a_posteriori,
    solve_a_priori,
    solve_ignoring,
    verify_saddle,
    worst_case_loss,
    worst_case_posterior_loss,
)
from credal.polytope import member, set_equal, subset
from credal.sampling import (
    random_credal_set,
    random_joint,
    random_loss,
    random_partition,
    random_positive_joint,
    random_rule,
    simplex_point,
)

N = 200

ZERO = Fraction(0)


def _labels(n):
    return tuple(str(i) for i in range(n))


def space_of(nx, ny, na):
    return ProblemSpace(_labels(nx), _labels(ny), _labels(na))


def draw_set(rng, space, k, convex):
    return credal_set(space, [random_joint(rng, space).mass for _ in range(k)], convex)


# ---------------------------------------------------------------- corpus cases


def test_prediction_case_values_and_weak_inconsistency():
    case = load_case("example-2.1")
    dp = case.file.problem()
    sol = solve_a_priori(dp)
    assert sol.value == Fraction(1, 3)
    assert sol.unique
    assert sol.rule == deterministic_rule(dp.space, {"0": "1", "1": "1"})

    half = (Fraction(1, 2), Fraction(1, 2))
    post = solve_a_posteriori(dp)
    for x in ("0", "1"):
        point = post.point(x)
        assert point.value == Fraction(1, 2)
        assert tuple(a.weights for a in point.action_vertices) == (half,)

    verdict = check_weak_time_consistency(dp)
    assert verdict.result == "inconsistent"
    witness = verdict.witness
    assert tuple(a.weights for a in witness.per_x) == (half, half)
    # replay: the witness is a posteriori optimal yet loses a priori
    assert worst_case_loss(dp.credal, witness, dp.loss)[0] == Fraction(1, 2)
    for x in ("0", "1"):
        assert worst_case_posterior_loss(dp.credal, witness, dp.loss, x) == Fraction(1, 2)


def test_monty_hall_unique_switch_rule_and_conditioning_gap():
    dp = load_case("monty-hall").file.problem()
    sol = solve_a_priori(dp)
    assert sol.value == Fraction(1, 3)
    assert sol.unique
    assert sol.rule == deterministic_rule(dp.space, {"G2": "3", "G3": "2"})
    assert not is_rectangular(dp.credal)

    eps = load_case("monty-hall-eps").file.problem()
    esol = solve_a_priori(eps)
    assert esol.value == Fraction(11, 30)
    post = solve_a_posteriori(eps)
    (at_g2,) = post.point("G2").action_vertices
    (at_g3,) = post.point("G3").action_vertices
    assert post.point("G2").value == Fraction(11, 21)
    assert post.point("G3").value == Fraction(11, 21)
    assert at_g2.weights == (Fraction(11, 21), 0, Fraction(10, 21))
    assert at_g3.weights == (Fraction(11, 21), Fraction(10, 21), 0)

    # neither update-and-act scheme reaches the a priori value 11/30
    pinned = rule_from_weights(eps.space, [at_g2.weights, at_g3.weights])
    assert worst_case_loss(eps.credal, pinned, eps.loss)[0] == Fraction(11, 21)
    ignoring = solve_ignoring(eps)
    assert ignoring.value == Fraction(2, 3)
    assert not ignoring.matches_a_priori


def test_products_of_marginals_and_conditionals_extend_the_set():
    p = load_case("example-4.2").file.credal()
    pr3 = joint(p.space, [["1/3", "1/6"], ["1/6", "1/3"]])
    assert not member(pr3.flatten(), joint_polytope(p))
    assert member(pr3.flatten(), joint_polytope(hull(p)))


def test_rectangular_case_weak_consistent_but_time_inconsistent():
    dp = load_case("example-4.5").file.problem()
    assert is_rectangular(dp.credal)
    assert not is_conservative(dp.credal)
    assert check_weak_time_consistency(dp).result == "consistent"

    verdict = check_time_consistency(dp)
    assert verdict.result == "inconsistent"
    witness = verdict.witness
    assert witness.x == "1"
    assert witness.rule.per_x[1].weights == (0, 1, 0)
    assert witness.posterior_loss == Fraction(3, 5)
    assert witness.posterior_value == Fraction(1, 2)


def test_classification_case_stays_time_consistent():
    dp = load_case("example-4.6").file.problem()
    assert not is_rectangular(dp.credal)
    assert is_conservative(dp.credal)
    assert check_time_consistency(dp).result == "consistent"


def test_extended_prediction_case_dynamic_inconsistency():
    dp = load_case("example-2.1-ext").file.problem()
    assert check_time_consistency(dp).result == "consistent"

    verdict = falsify_dynamic_consistency(dp, budget=0)
    assert verdict.result == "inconsistent"
    witness = verdict.witness
    assert witness.condition == "condition-1"
    assert all(a <= b for _, a, b in witness.posterior)
    assert witness.prior[0] > witness.prior[1]
    # replay the pair through the loss primitives
    assert worst_case_loss(dp.credal, witness.delta, dp.loss)[0] == witness.prior[0]
    assert worst_case_loss(dp.credal, witness.delta_prime, dp.loss)[0] == witness.prior[1]
    for x, a, b in witness.posterior:
        assert worst_case_posterior_loss(dp.credal, witness.delta, dp.loss, x) == a
        assert worst_case_posterior_loss(dp.credal, witness.delta_prime, dp.loss, x) == b


def test_calibration_goldens_for_standard_and_ignore_updates():
    std = standard_conditioning()
    for cid in ("example-6.5", "example-6.6"):
        p = load_case(cid).file.credal()
        assert not check_calibration(std, p).calibrated

    p = load_case("example-6.7").file.credal()
    ign = ignore_rule()
    assert check_calibration(ign, p).calibrated
    assert not is_sharply_calibrated(ign, p).sharp
    assert check_calibration(std, p).calibrated
    assert is_sharply_calibrated(std, p).sharp


def test_two_coin_conditioning_dilates_the_heads_event():
    p = load_case("walley-two-coins").file.credal()
    row = next(r for r in dilation_report(p).rows if r.event == ("H",))
    assert row.prior == (Fraction(1, 2), Fraction(1, 2))
    assert row.posteriors == (("H", (0, 1)), ("T", (0, 1)))
    assert row.dilates


# ------------------------------------------------------------ property suites


def test_property_rectangular_sets_are_weak_time_consistent():
    rng = random.Random(17)
    for _ in range(N):
        nx = rng.choice((2, 3))
        space = space_of(nx, rng.choice((2, 3)), rng.choice((2, 3)))
        k = 2 if nx == 3 else rng.choice((2, 3))
        p = hull(draw_set(rng, space, k, rng.random() < 0.5))
        dp = DecisionProblem(p, random_loss(rng, space))
        assert check_weak_time_consistency(dp).result == "consistent"


def test_property_conservative_rectangular_sets_are_time_consistent():
    rng = random.Random(19)
    for _ in range(N):
        space = space_of(2, rng.choice((2, 3)), 2)
        k = rng.choice((2, 3))
        masses = [random_positive_joint(rng, space).mass for _ in range(k)]
        p = hull(credal_set(space, masses, rng.random() < 0.5))
        dp = DecisionProblem(p, random_loss(rng, space))
        assert check_time_consistency(dp).result == "consistent"


def test_property_standard_conditioning_sharp_on_rectangular_sets():
    rng = random.Random(23)
    std = standard_conditioning()
    for _ in range(N):
        nx = rng.choice((2, 2, 3))
        space = space_of(nx, rng.choice((2, 3)), 2)
        k = 2 if nx == 3 else rng.choice((2, 3))
        p = hull(draw_set(rng, space, k, True))
        assert check_calibration(std, p).calibrated
        assert is_sharply_calibrated(std, p).sharp


def test_property_cell_conditionals_lie_inside_partition_posteriors():
    rng = random.Random(29)
    for _ in range(N):
        space = space_of(rng.choice((2, 3)), rng.choice((2, 3)), 2)
        p = draw_set(rng, space, rng.randint(2, 4), True)
        part = random_partition(rng, space.x_labels)
        report = check_calibration(partition_conditioning(part), p)
        assert all(cls.forward for cls in report.per_class)


def _per_cell_masses(rng, space, cell, k):
    """Generators whose Y-conditionals agree across ``cell`` and float
    freely at every other signal; X-marginals kept strictly positive."""
    masses = []
    for _ in range(k):
        marg = simplex_point(rng, space.nx, positive=True)
        shared = simplex_point(rng, space.ny)
        rows = []
        for i, x in enumerate(space.x_labels):
            cond = shared if x in cell else simplex_point(rng, space.ny)
            rows.append([marg[i] * c for c in cond])
        masses.append(rows)
    return masses


def _pick_cell(rng, space):
    if space.nx == 2 or rng.random() < 0.6:
        return list(space.x_labels)
    return list(rng.sample(space.x_labels, 2))


def test_property_conditioning_inclusion_laws():
    # mixtures: the conditional of any mixture stays in the conditioned set
    rng = random.Random(47)
    checked = 0
    draws = 0
    while checked < N and draws < 2 * N:
        draws += 1
        nx = rng.choice((2, 3))
        space = space_of(nx, rng.choice((2, 3)), 2)
        k = rng.randint(2, 4)
        gens = [random_joint(rng, space) for _ in range(k)]
        p = credal_set(space, [g.mass for g in gens], True)
        event = sorted(rng.sample(space.x_labels, rng.randint(1, nx)))
        lam = simplex_point(rng, k)
        idx = [space.x_labels.index(x) for x in event]
        mixed = [
            [sum((lam[g] * gens[g].mass[i][y] for g in range(k)), ZERO)
             for y in range(space.ny)]
            for i in range(nx)
        ]
        mass = sum((mixed[i][y] for i in idx for y in range(space.ny)), ZERO)
        if mass == 0:
            continue
        q = tuple(
            sum((mixed[i][y] for i in idx), ZERO) / mass for y in range(space.ny)
        )
        post = marginal_y(condition(p, event))
        assert post.convex
        assert member(q, post)
        checked += 1
    assert checked == N

    # pooling: if disjoint parts all project equally, so does their union
    rng = random.Random(53)
    for _ in range(N):
        space = space_of(rng.choice((2, 3)), rng.choice((2, 3)), 2)
        cell = _pick_cell(rng, space)
        p = credal_set(space, _per_cell_masses(rng, space, cell, rng.randint(2, 3)), True)
        if len(cell) == 2:
            parts = [[cell[0]], [cell[1]]]
        elif rng.random() < 0.5:
            parts = [[x] for x in cell]
        else:
            lone = rng.choice(cell)
            parts = [[lone], [x for x in cell if x != lone]]
        projs = [marginal_y(condition(p, part)) for part in parts]
        for proj in projs[1:]:
            assert set_equal(proj, projs[0])
        pooled = marginal_y(condition(p, cell))
        for proj in projs:
            assert subset(pooled, proj)

    # intersection: a posterior shared by every signal of an event
    # survives conditioning on the event, for hull-closed finite sets
    rng = random.Random(59)
    nonvacuous = 0
    for _ in range(N):
        space = space_of(rng.choice((2, 3)), rng.choice((2, 3)), 2)
        cell = _pick_cell(rng, space)
        hp = hull(
            credal_set(space, _per_cell_masses(rng, space, cell, rng.randint(2, 3)), False)
        )
        if rng.random() < 0.75:
            union = sorted(rng.sample(cell, rng.randint(min(2, len(cell)), len(cell))))
        else:
            union = sorted(rng.sample(space.x_labels, rng.randint(2, space.nx)))
        per_signal = [set(marginal_y(condition(hp, (x,))).generators) for x in union]
        common = set.intersection(*per_signal)
        if not common:
            continue
        nonvacuous += 1
        pooled = marginal_y(condition(hp, union))
        for q in common:
            assert member(q, pooled)
    assert nonvacuous >= 140


def test_property_worst_case_loss_decomposes_by_signal():
    rng = random.Random(31)
    for _ in range(N):
        space = space_of(rng.choice((2, 3)), rng.choice((2, 3)), rng.choice((2, 3)))
        p = hull(draw_set(rng, space, rng.randint(2, 3), False))
        rule = random_rule(rng, space)
        loss = random_loss(rng, space)
        lhs = worst_case_loss(p, rule, loss)[0]
        per_x = [
            worst_case_posterior_loss(p, rule, loss, x) for x in space.x_labels
        ]
        rhs = max(
            sum(
                (sum(g.mass[i], ZERO) * per_x[i] for i in range(space.nx)), ZERO
            )
            for g in p.generators
        )
        assert lhs == rhs


def test_property_hull_idempotent_and_value_convexity_invariant():
    rng = random.Random(37)
    for _ in range(N):
        nx = rng.choice((2, 2, 3))
        space = space_of(nx, rng.choice((2, 3)), rng.choice((2, 3)))
        k = 2 if nx == 3 else rng.choice((2, 3))
        masses = [random_joint(rng, space).mass for _ in range(k)]
        h = hull(credal_set(space, masses, rng.random() < 0.5))
        assert set_equal(joint_polytope(hull(h)), joint_polytope(h))

        loss = random_loss(rng, space)
        finite = DecisionProblem(credal_set(space, masses, False), loss)
        closed = DecisionProblem(credal_set(space, masses, True), loss)
        assert (
            solve_a_priori(finite, face=False).value
            == solve_a_priori(closed, face=False).value
        )


def test_property_lp_value_within_grid_search_bounds():
    rng = random.Random(41)
    space = space_of(2, 2, 2)
    for _ in range(25):
        dp = DecisionProblem(
            random_credal_set(rng, space), random_loss(rng, space)
        )
        value = solve_a_priori(dp, face=False).value
        for grid in range(1, 9):
            lower, upper = brute_force_value(dp, grid)
            assert lower <= value <= upper


def test_property_solver_outputs_form_saddle_points():
    rng = random.Random(43)
    for _ in range(N):
        space = space_of(rng.choice((2, 3)), rng.choice((2, 3)), rng.choice((2, 3)))
        dp = DecisionProblem(
            random_credal_set(rng, space), random_loss(rng, space)
        )
        sol = solve_a_priori(dp, face=False)
        assert verify_saddle(dp, sol.bookie_mixture, sol.rule).holds
