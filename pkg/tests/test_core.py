"""Domain model: conditioning, marginals, hulls, rectangularity, dilation."""

from fractions import Fraction

import pytest

from credal.core import (
    Partition,
    ProblemSpace,
    UndefinedConditionalError,
    c_condition,
    condition,
    credal_set,
    dilation_report,
    hull,
    is_conservative,
    is_rectangular,
    joint,
    joint_polytope,
    marginal_y,
    support_x,
)
from credal.polytope import member, set_equal

from problems import (
    MIRROR_PAIR_CROSS,
    coin_pair_set,
    diagonal_set,
    fixed_outcome_set,
    half_dead_signal_problem,
    mirror_pair_set,
    monty_set,
    noise_pair_set,
    opposite_outcomes_problem,
    quadruple_set,
)

F = Fraction


def test_joint_validation():
    space = ProblemSpace(("0", "1"), ("0", "1"), ("a", "b"))
    with pytest.raises(ValueError):
        joint(space, [[F(1, 2), F(1, 2)], [F(1, 4), 0]])  # sums to 5/4
    with pytest.raises(ValueError):
        joint(space, [[F(3, 2), F(-1, 2)], [0, 0]])  # negative mass


def test_marginals_and_conditionals():
    g = mirror_pair_set().generators[0]
    assert g.x_marginal() == (F(1, 2), F(1, 2))
    assert g.y_marginal() == (F(2, 3), F(1, 3))
    assert g.conditional_y(0) == (F(2, 3), F(1, 3))


def test_marginal_y_polytope_of_fixed_outcome_set():
    m = marginal_y(fixed_outcome_set())
    assert m.generators == ((F(1, 3), F(2, 3)),)


def test_condition_gives_full_simplex_for_fixed_outcome_set():
    p = fixed_outcome_set()
    for x in ("0", "1"):
        proj = marginal_y(condition(p, [x]))
        assert set(proj.generators) == {(F(1), F(0)), (F(0), F(1))}


def test_condition_drops_zero_probability_generators():
    dp = half_dead_signal_problem()
    cond = condition(dp.credal, ["1"])
    assert len(cond.generators) == 1
    assert cond.generators[0].conditional_y(1) == (F(1, 2), F(2, 5), F(1, 10))


def test_condition_undefined_when_no_generator_sees_event():
    space = ProblemSpace(("0", "1"), ("0", "1"), ("a", "b"))
    p = credal_set(space, [[[F(1, 2), F(1, 2)], [0, 0]]], convex=True)
    with pytest.raises(UndefinedConditionalError):
        condition(p, ["1"])


def test_c_condition_routes_through_cells():
    p = fixed_outcome_set()
    part = Partition.whole(p.space.x_labels)
    whole = c_condition(p, part, "0")
    assert set_equal(joint_polytope(whole), joint_polytope(p))
    singles = Partition.singletons(p.space.x_labels)
    narrow = c_condition(p, singles, "0")
    assert support_x(narrow) == ("0",)


def test_monty_conditioning_matches_known_projection():
    p = monty_set()
    proj = marginal_y(condition(p, ["G2"]))
    assert set(proj.generators) == {
        (F(0), F(0), F(1)),
        (F(1, 2), F(0), F(1, 2)),
    }


def test_hull_contains_cross_product_member():
    p = mirror_pair_set(convex=False)
    h = hull(p)
    probe = tuple(v for row in MIRROR_PAIR_CROSS for v in row)
    assert not member(probe, joint_polytope(p))
    assert member(probe, joint_polytope(h))


def test_hull_of_noise_pair_contains_swapped_conditional():
    eps = F(1, 10)
    p = noise_pair_set(eps)
    swapped = (
        (1 - eps) ** 2,
        eps * (1 - eps),
        eps**2,
        eps * (1 - eps),
    )
    assert not member(swapped, joint_polytope(p))
    assert member(swapped, joint_polytope(hull(p)))


def test_fixed_outcome_set_hull_is_everything():
    p = fixed_outcome_set()
    h = hull(p)
    for corner in range(4):
        point = tuple(F(1) if i == corner else F(0) for i in range(4))
        assert member(point, joint_polytope(h))
    assert not is_rectangular(p)


def test_rectangularity_of_known_sets():
    assert is_rectangular(half_dead_signal_problem().credal)
    assert is_rectangular(quadruple_set())
    assert is_rectangular(diagonal_set())
    assert not is_rectangular(mirror_pair_set())
    assert not is_rectangular(monty_set())
    assert not is_rectangular(opposite_outcomes_problem().credal)


def test_hull_is_idempotent_on_known_sets():
    for p in (
        mirror_pair_set(),
        fixed_outcome_set(),
        monty_set(),
        quadruple_set(),
        coin_pair_set(),
    ):
        h = hull(p)
        assert set_equal(joint_polytope(hull(h)), joint_polytope(h))


def test_conservativeness():
    assert is_conservative(opposite_outcomes_problem().credal)
    assert is_conservative(quadruple_set())
    assert not is_conservative(half_dead_signal_problem().credal)
    assert not is_conservative(diagonal_set())


def test_support_x():
    assert support_x(half_dead_signal_problem().credal) == ("0", "1")
    space = ProblemSpace(("0", "1"), ("0", "1"), ("a", "b"))
    p = credal_set(space, [[[F(1, 2), F(1, 2)], [0, 0]]], convex=True)
    assert support_x(p) == ("0",)


def test_dilation_on_coin_pair():
    rep = dilation_report(coin_pair_set())
    row = rep.row_for(["H"])
    assert row.prior == (F(1, 2), F(1, 2))
    assert dict(row.posteriors) == {"H": (F(0), F(1)), "T": (F(0), F(1))}
    assert row.dilates
    assert rep.dilating_events() == (("H",), ("T",))


def test_dilation_on_fixed_outcome_set():
    rep = dilation_report(fixed_outcome_set())
    row = rep.row_for(["1"])
    assert row.prior == (F(2, 3), F(2, 3))
    assert dict(row.posteriors) == {"0": (F(0), F(1)), "1": (F(0), F(1))}
    assert row.dilates


def test_no_dilation_for_product_set():
    space = ProblemSpace(("0", "1"), ("0", "1"), ("a", "b"))
    prod = credal_set(
        space,
        [
            [[F(1, 4), F(1, 4)], [F(1, 4), F(1, 4)]],
            [[F(1, 3), F(1, 6)], [F(1, 3), F(1, 6)]],
        ],
        convex=True,
    )
    rep = dilation_report(prod)
    assert rep.dilating_events() == ()


def test_partition_canonical_form_and_parsing():
    labels = ("a", "b", "c")
    part = Partition(labels, (("c",), ("b", "a")))
    assert part.cells == (("a", "b"), ("c",))
    assert str(part) == "a,b|c"
    assert Partition.from_string(labels, "c|b,a") == part
    with pytest.raises(ValueError):
        Partition(labels, (("a", "b"),))  # misses c
    with pytest.raises(ValueError):
        Partition(labels, (("a", "b"), ("b", "c")))  # overlap


def test_credal_set_dedups_generators():
    p = credal_set(
        binary := ProblemSpace(("0", "1"), ("0", "1"), ("a", "b")),
        [
            [[F(1, 2), F(1, 2)], [0, 0]],
            [[F(1, 2), F(1, 2)], [0, 0]],
        ],
        convex=True,
    )
    assert binary is p.space
    assert len(p.generators) == 1
