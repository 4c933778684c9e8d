"""Exact LP core: frozen small cases, duality invariants, face enumeration."""

import random
from fractions import Fraction

import pytest

from credal.linprog import (
    EQ,
    GE,
    LE,
    INFEASIBLE,
    OPTIMAL,
    UNBOUNDED,
    DimensionError,
    LinearProgram,
    SizeLimitError,
    UnboundedFaceError,
    lp_solve,
    make_lp,
    optimal_face_vertices,
    zero_sum_value,
)

F = Fraction


def test_bound_attaining_minimum():
    # min x subject to x >= 0 only
    sol = lp_solve(make_lp([1], [], [], []))
    assert sol.status == OPTIMAL
    assert sol.value == 0
    assert sol.primal == (0,)


def test_simplex_corner():
    # min -x-y s.t. x+y <= 1, x,y >= 0
    sol = lp_solve(make_lp([-1, -1], [[1, 1]], [LE], [1]))
    assert sol.status == OPTIMAL
    assert sol.value == -1
    assert sum(sol.primal) == 1


def test_infeasible():
    sol = lp_solve(make_lp([1], [[1]], [LE], [-1]))
    assert sol.status == INFEASIBLE
    assert sol.value is None


def test_unbounded():
    sol = lp_solve(make_lp([-1], [], [], []))
    assert sol.status == UNBOUNDED


def test_equality_and_free_variable():
    # min t s.t. t = 5 with t free
    sol = lp_solve(make_lp([1], [[1]], [EQ], [5], lower_bounds=[None]))
    assert sol.status == OPTIMAL and sol.value == 5


def test_nonzero_lower_bounds():
    # min x+y s.t. x+y >= 3, x >= 1, y >= 1/2
    sol = lp_solve(
        make_lp([1, 1], [[1, 1]], [GE], [3], lower_bounds=[1, F(1, 2)])
    )
    assert sol.value == 3


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        make_lp([1, 2], [[1]], [LE], [0])
    with pytest.raises(DimensionError):
        make_lp([1], [[1]], [LE, LE], [0])


def test_beale_cycling_instance_terminates():
    # classic cycling instance for naive pivoting; Bland's rule must finish
    lp = make_lp(
        [F(-3, 4), 150, F(-1, 50), 6],
        [
            [F(1, 4), -60, F(-1, 25), 9],
            [F(1, 2), -90, F(-1, 50), 3],
            [0, 0, 1, 0],
        ],
        [LE, LE, LE],
        [0, 0, 1],
    )
    sol = lp_solve(lp)
    assert sol.status == OPTIMAL
    assert sol.value == F(-1, 20)


def test_prediction_rule_lp():
    # two-signal prediction game: 4 extreme scenarios, predict-1 is worth 1/3
    rows = []
    gens = [
        [F(2, 3), F(1, 3), 0, 0],
        [0, F(1, 3), F(2, 3), 0],
        [F(2, 3), 0, 0, F(1, 3)],
        [0, 0, F(2, 3), F(1, 3)],
    ]
    for g in gens:
        rows.append([-1] + g)
    rows.append([0, 1, 1, 0, 0])
    rows.append([0, 0, 0, 1, 1])
    lp = make_lp(
        [1, 0, 0, 0, 0],
        rows,
        [LE, LE, LE, LE, EQ, EQ],
        [0, 0, 0, 0, 1, 1],
        lower_bounds=[None, 0, 0, 0, 0],
    )
    sol = lp_solve(lp)
    assert sol.status == OPTIMAL
    assert sol.value == F(1, 3)
    # dual prices on the scenario rows form a probability mixture
    mix = [-sol.dual[i] for i in range(4)]
    assert all(m >= 0 for m in mix)
    assert sum(mix) == 1


def _random_feasible_lp(rng, n, m):
    rows = []
    rhs = []
    base = [F(1, n)] * n  # interior point of the simplex
    for _ in range(m):
        row = [F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)]
        slackness = F(rng.randint(0, 6), rng.randint(1, 4))
        rows.append(row)
        rhs.append(sum(a * b for a, b in zip(row, base)) + slackness)
    rows.append([1] * n)
    rhs.append(1)
    senses = [LE] * m + [EQ]
    obj = [F(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(n)]
    return make_lp(obj, rows, senses, rhs)


def test_random_lps_have_exact_certificates():
    rng = random.Random(0)
    for _ in range(60):
        n = rng.randint(2, 5)
        m = rng.randint(1, 4)
        lp = _random_feasible_lp(rng, n, m)
        sol = lp_solve(lp)
        assert sol.status == OPTIMAL
        # independent re-check of duality from the returned certificates
        primal_value = sum(c * x for c, x in zip(lp.objective, sol.primal))
        dual_value = sum(y * b for y, b in zip(sol.dual, lp.rhs))
        reduced = [
            c - sum(sol.dual[i] * lp.rows[i][j] for i in range(len(lp.rows)))
            for j, c in enumerate(lp.objective)
        ]
        assert primal_value == sol.value
        assert primal_value == dual_value  # all lower bounds are zero here
        assert all(r >= 0 for r in reduced)


def test_matching_pennies():
    value, p, q = zero_sum_value([[1, -1], [-1, 1]])
    assert value == 0
    assert p == (F(1, 2), F(1, 2))
    assert q == (F(1, 2), F(1, 2))


def test_single_entry_game():
    value, p, q = zero_sum_value([[5]])
    assert value == 5 and p == (1,) and q == (1,)


def test_binary_prediction_game():
    # actions vs two point-mass scenarios, 0/1 loss
    value, p, _ = zero_sum_value([[0, 1], [1, 0]])
    assert value == F(1, 2)
    assert p == (F(1, 2), F(1, 2))


def test_transpose_negation_identity():
    rng = random.Random(7)
    for _ in range(40):
        m = rng.randint(1, 4)
        n = rng.randint(1, 4)
        M = [
            [F(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(n)]
            for _ in range(m)
        ]
        v1, _, _ = zero_sum_value(M)
        neg_t = [[-M[i][j] for i in range(m)] for j in range(n)]
        v2, _, _ = zero_sum_value(neg_t)
        assert v1 == -v2


def test_face_of_whole_simplex():
    lp = make_lp([0, 0], [[1, 1]], [EQ], [1])
    verts = optimal_face_vertices(lp, 0)
    assert verts == [(0, 1), (1, 0)]


def test_face_single_vertex():
    lp = make_lp([1, 0], [[1, 1]], [EQ], [1])
    verts = optimal_face_vertices(lp, 0)
    assert verts == [(0, 1)]


def test_face_with_inactive_row_constraint():
    # the whole 3-simplex is optimal when the row is tight everywhere
    lp = make_lp(
        [0, 0, 0],
        [[F(2, 3), F(2, 3), F(2, 3)], [1, 1, 1]],
        [LE, EQ],
        [F(2, 3), 1],
    )
    verts = optimal_face_vertices(lp, 0)
    assert verts == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_face_not_attained_returns_empty():
    lp = make_lp([1, 0], [[1, 1]], [EQ], [1])
    assert optimal_face_vertices(lp, -1) == []


def test_face_unbounded_error():
    lp = make_lp([0, 1], [[0, 1]], [GE], [0])
    with pytest.raises(UnboundedFaceError):
        optimal_face_vertices(lp, 0)


def test_face_dimension_limit():
    n = 13
    lp = make_lp([0] * n, [[1] * n], [EQ], [1])
    with pytest.raises(SizeLimitError):
        optimal_face_vertices(lp, 0)


def test_face_vertices_deterministic():
    lp = make_lp([0, 0, 0], [[1, 1, 1]], [EQ], [1])
    a = optimal_face_vertices(lp, 0)
    b = optimal_face_vertices(lp, 0)
    assert a == b == sorted(b)


def test_game_value_matches_lp_duality_on_random_games():
    rng = random.Random(3)
    for _ in range(25):
        m = rng.randint(2, 4)
        n = rng.randint(2, 4)
        M = [
            [F(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(n)]
            for _ in range(m)
        ]
        value, p, q = zero_sum_value(M)
        # saddle: no pure deviation helps either player
        for j in range(n):
            assert sum(p[i] * M[i][j] for i in range(m)) <= value
        for i in range(m):
            assert sum(q[j] * M[i][j] for j in range(n)) >= value


def test_rank_deficient_equalities_keep_duals():
    # Membership query whose equality rows have rank 4 out of 7 (the
    # columns span a 3-flat inside the simplex).  Degenerate phase-1
    # pivoting used to drop a dependent row set here and the dual
    # extraction then hit a singular basis.
    gens = [
        ("0", "0", "1/3", "1/3", "1/3", "0"),
        ("0", "0", "1/3", "0", "2/9", "4/9"),
        ("1/6", "1/18", "1/9", "1/3", "1/3", "0"),
        ("1/6", "1/18", "1/9", "0", "2/9", "4/9"),
        ("0", "0", "2/3", "1/6", "1/6", "0"),
        ("0", "0", "2/3", "0", "1/9", "2/9"),
        ("1/3", "1/9", "2/9", "1/6", "1/6", "0"),
        ("1/3", "1/9", "2/9", "0", "1/9", "2/9"),
    ]
    cols = [[F(v) for v in g] for g in gens]
    point = cols[4]
    rows = [[c[d] for c in cols] for d in range(6)] + [[1] * 8]
    lp = make_lp([0] * 8, rows, [EQ] * 7, list(point) + [1])
    sol = lp_solve(lp)
    # lp_solve verifies strong duality before returning, so reaching
    # optimal at all is the regression check
    assert sol.status == OPTIMAL
    assert sol.value == 0
