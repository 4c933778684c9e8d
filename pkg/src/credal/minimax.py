"""Minimax-optimal decision rules against a credal set.

Two games are solved exactly:

* the prior game: pick a randomized rule before seeing the signal,
  against an adversary choosing the joint distribution from the credal
  set (an LP over rule space; the adversary's optimal mixture comes out
  of the dual prices);
* the posterior game: after observing ``x``, pick a randomized action
  against the conditioned outcome distributions (one small matrix game
  per signal value).

Signals outside the support (zero probability under every generator)
cannot influence expected loss; solvers pin the rule to the uniform
action there and report those signals as unconstrained.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    CredalSet,
    DecisionProblem,
    DecisionRule,
    JointDistribution,
    LossFunction,
    RandomizedAction,
    condition,
    marginal_y,
    rule_from_weights,
    support_x,
    uniform_action,
)
from .linprog import (
    EQ,
    LE,
    OPTIMAL,
    LinearProgram,
    SizeLimitError,
    lp_solve,
    make_lp,
    optimal_face_vertices,
    zero_sum_value,
)
from .polytope import VPolytope
from .rationals import rat

__all__ = [
    "MinimaxSolution",
    "PosteriorPoint",
    "PosteriorSolution",
    "SaddleReport",
    "IgnoringSolution",
    "CoverResult",
    "expected_loss",
    "worst_case_loss",
    "worst_case_posterior_loss",
    "solve_a_priori",
    "solve_a_posteriori",
    "verify_saddle",
    "solve_ignoring",
    "check_independence_cover",
    "brute_force_value",
]

ZERO = Fraction(0)
ONE = Fraction(1)

BRUTE_FORCE_LIMIT = 10**7


class SolverError(Exception):
    """A solver invariant failed; indicates a bug, not bad input."""


# ---------------------------------------------------------------------------
# loss evaluation primitives


def action_loss(loss: LossFunction, weights) -> tuple[Fraction, ...]:
    """Per-outcome expected loss of a randomized action."""
    return tuple(
        sum((w * loss.table[yi][ai] for ai, w in enumerate(weights)), ZERO)
        for yi in range(loss.space.ny)
    )


def expected_loss(g: JointDistribution, rule: DecisionRule, loss: LossFunction) -> Fraction:
    total = ZERO
    for xi in range(g.space.nx):
        row = g.mass[xi]
        weights = rule.per_x[xi].weights
        for yi, mass in enumerate(row):
            if mass != 0:
                total += mass * sum(
                    (w * loss.table[yi][ai] for ai, w in enumerate(weights)), ZERO
                )
    return total


def worst_case_loss(p: CredalSet, rule: DecisionRule, loss: LossFunction):
    """Max expected loss over the generators, with the first witness index.

    For a convex set the maximum over the hull is attained at a
    generator, so scanning the generator list is exact either way.
    """
    best = None
    witness = None
    for i, g in enumerate(p.generators):
        v = expected_loss(g, rule, loss)
        if best is None or v > best:
            best, witness = v, i
    return best, witness


def worst_case_posterior_loss(
    p: CredalSet, rule: DecisionRule, loss: LossFunction, x
) -> Fraction:
    """Worst expected loss of ``rule`` under the conditioned set at ``x``.

    Zero when no generator gives ``x`` positive probability; such
    signals carry no posterior risk.
    """
    xi = p.space.x_index(x)
    losses = action_loss(loss, rule.per_x[xi].weights)
    best = None
    for g in p.generators:
        px = sum(g.mass[xi], ZERO)
        if px == 0:
            continue
        v = sum((g.mass[xi][yi] * losses[yi] for yi in range(p.space.ny)), ZERO) / px
        if best is None or v > best:
            best = v
    return ZERO if best is None else best


# ---------------------------------------------------------------------------
# prior game


@dataclass(frozen=True)
class MinimaxSolution:
    """Equilibrium of the prior game.

    ``bookie_mixture`` weights the generators (the adversary's optimal
    mixture, from the LP duals); ``aggregate`` is the mixed joint it
    induces.  ``optimal_rule_vertices`` are all vertices of the optimal
    face of rule space, and ``rule`` is the lexicographically smallest.
    """

    value: Fraction
    rule: DecisionRule
    bookie_mixture: tuple[Fraction, ...]
    aggregate: JointDistribution
    optimal_rule_vertices: tuple[DecisionRule, ...] | None
    unconstrained_x: tuple[str, ...]

    @property
    def unique(self) -> bool:
        if self.optimal_rule_vertices is None:
            raise ValueError("solved with face=False; vertices not computed")
        return len(self.optimal_rule_vertices) == 1


def _generator_coefficients(dp: DecisionProblem, live_idx):
    """coef[i][k][a] = contribution of delta(x_k)(a) to E under generator i."""
    loss = dp.loss
    out = []
    for g in dp.credal.generators:
        per_gen = []
        for xi in live_idx:
            row = g.mass[xi]
            per_gen.append(
                tuple(
                    sum((row[yi] * loss.table[yi][ai] for yi in range(dp.space.ny)), ZERO)
                    for ai in range(dp.space.na)
                )
            )
        out.append(per_gen)
    return out


def _face_rules(dp, live_idx, coefs, value):
    """All vertices of the optimal face, embedded as full decision rules."""
    space = dp.space
    na = space.na
    n = len(live_idx) * na
    rows = []
    senses = []
    rhs = []
    for per_gen in coefs:
        rows.append([per_gen[k][a] for k in range(len(live_idx)) for a in range(na)])
        senses.append(LE)
        rhs.append(value)
    for k in range(len(live_idx)):
        rows.append([ONE if j // na == k else ZERO for j in range(n)])
        senses.append(EQ)
        rhs.append(ONE)
    face_lp = make_lp([ZERO] * n, rows, senses, rhs)
    verts = optimal_face_vertices(face_lp, 0)
    uniform = uniform_action(space)
    rules = []
    for v in verts:
        per_x = []
        for xi in range(space.nx):
            if xi in live_idx:
                k = live_idx.index(xi)
                per_x.append(RandomizedAction(tuple(v[k * na : (k + 1) * na])))
            else:
                per_x.append(uniform)
        rules.append(DecisionRule(space=space, per_x=tuple(per_x)))
    rules.sort(key=lambda r: r.flatten())
    return tuple(rules)


def solve_a_priori(dp: DecisionProblem, face: bool = True) -> MinimaxSolution:
    """Exact equilibrium of the prior game.

    LP: minimize t subject to, for every generator, the expected loss of
    the rule being at most t, with each per-signal action on the
    simplex.  The dual prices of the generator rows give the adversary's
    mixture; the result is checked with :func:`verify_saddle`.

    ``face=False`` skips the vertex enumeration of the optimal face (the
    expensive part); the reported rule is then the one the simplex
    landed on rather than the lexicographically smallest vertex.
    """
    space = dp.space
    live = support_x(dp.credal)
    live_idx = [space.x_index(x) for x in live]
    na = space.na
    k = len(dp.credal.generators)
    coefs = _generator_coefficients(dp, live_idx)

    nvars = 1 + len(live_idx) * na
    rows = []
    senses = []
    rhs = []
    for per_gen in coefs:
        rows.append(
            [-ONE]
            + [per_gen[kk][a] for kk in range(len(live_idx)) for a in range(na)]
        )
        senses.append(LE)
        rhs.append(ZERO)
    for kk in range(len(live_idx)):
        rows.append(
            [ZERO] + [ONE if (j // na) == kk else ZERO for j in range(nvars - 1)]
        )
        senses.append(EQ)
        rhs.append(ONE)
    lp = make_lp(
        [ONE] + [ZERO] * (nvars - 1),
        rows,
        senses,
        rhs,
        lower_bounds=[None] + [ZERO] * (nvars - 1),
    )
    sol = lp_solve(lp)
    if sol.status != OPTIMAL:
        raise SolverError("prior game LP must be solvable")
    value = sol.value

    mixture = tuple(-sol.dual[i] for i in range(k))
    total = sum(mixture, ZERO)
    if total != 1 or any(w < 0 for w in mixture):
        raise SolverError("dual prices are not a generator mixture")
    agg_mass = tuple(
        tuple(
            sum(
                (mixture[i] * dp.credal.generators[i].mass[xi][yi] for i in range(k)),
                ZERO,
            )
            for yi in range(space.ny)
        )
        for xi in range(space.nx)
    )
    aggregate = JointDistribution(space=space, mass=agg_mass)

    if face:
        vertices = _face_rules(dp, live_idx, coefs, value)
        if not vertices:
            raise SolverError("optimal face came back empty")
        rule = vertices[0]
    else:
        vertices = None
        uniform = uniform_action(space)
        per_x = []
        for xi in range(space.nx):
            if xi in live_idx:
                kk = live_idx.index(xi)
                per_x.append(
                    RandomizedAction(
                        tuple(sol.primal[1 + kk * na : 1 + (kk + 1) * na])
                    )
                )
            else:
                per_x.append(uniform)
        rule = DecisionRule(space=space, per_x=tuple(per_x))
    solution = MinimaxSolution(
        value=value,
        rule=rule,
        bookie_mixture=mixture,
        aggregate=aggregate,
        optimal_rule_vertices=vertices,
        unconstrained_x=tuple(x for x in space.x_labels if x not in live),
    )
    report = verify_saddle(dp, mixture, rule)
    if not report.holds:
        raise SolverError("saddle check failed: %s" % (report.failing,))
    return solution


# ---------------------------------------------------------------------------
# posterior game


@dataclass(frozen=True)
class PosteriorPoint:
    x: str
    value: Fraction
    action_vertices: tuple[RandomizedAction, ...]
    bookie_mixture: tuple[Fraction, ...]
    projection: VPolytope


@dataclass(frozen=True)
class PosteriorSolution:
    """Per-signal equilibria of the posterior games, support signals only."""

    per_x: tuple[PosteriorPoint, ...]

    def point(self, x) -> PosteriorPoint:
        x = str(x)
        for pt in self.per_x:
            if pt.x == x:
                return pt
        raise KeyError(x)

    def value(self, x) -> Fraction:
        return self.point(x).value


def _action_face(loss, projections, value):
    """Vertices of the optimal randomized-action set of one posterior game."""
    na = loss.space.na
    rows = []
    senses = []
    rhs = []
    for proj in projections:
        rows.append(
            [
                sum((proj[yi] * loss.table[yi][ai] for yi in range(loss.space.ny)), ZERO)
                for ai in range(na)
            ]
        )
        senses.append(LE)
        rhs.append(value)
    rows.append([ONE] * na)
    senses.append(EQ)
    rhs.append(ONE)
    lp = make_lp([ZERO] * na, rows, senses, rhs)
    verts = optimal_face_vertices(lp, 0)
    return tuple(RandomizedAction(v) for v in verts)


def solve_a_posteriori(dp: DecisionProblem) -> PosteriorSolution:
    """One matrix game per support signal: actions against the
    conditioned outcome distributions."""
    space = dp.space
    points = []
    for x in support_x(dp.credal):
        cond = condition(dp.credal, [x])
        proj = marginal_y(cond)
        projections = proj.generators
        matrix = [
            [
                sum(
                    (pj[yi] * dp.loss.table[yi][ai] for yi in range(space.ny)),
                    ZERO,
                )
                for pj in projections
            ]
            for ai in range(space.na)
        ]
        value, _row_mix, col_mix = zero_sum_value(matrix)
        points.append(
            PosteriorPoint(
                x=x,
                value=value,
                action_vertices=_action_face(dp.loss, projections, value),
                bookie_mixture=col_mix,
                projection=proj,
            )
        )
    return PosteriorSolution(per_x=tuple(points))


# ---------------------------------------------------------------------------
# saddle verification


@dataclass(frozen=True)
class SaddleReport:
    """Exact three-clause equilibrium check.

    ``value``: mixture-averaged expected loss of the rule.
    Clauses: the agent cannot improve against the aggregate; the bookie
    cannot improve against the rule; every generator in the mixture's
    support attains the bookie's maximum.
    """

    holds: bool
    value: Fraction
    agent_best_response: Fraction
    bookie_best_response: Fraction
    failing: tuple[str, ...]


def verify_saddle(dp: DecisionProblem, mixture, rule: DecisionRule) -> SaddleReport:
    gens = dp.credal.generators
    mixture = tuple(rat(w) for w in mixture)
    if len(mixture) != len(gens):
        raise ValueError("mixture length != number of generators")
    if any(w < 0 for w in mixture) or sum(mixture, ZERO) != 1:
        raise ValueError("mixture must be a probability vector")

    per_gen = [expected_loss(g, rule, dp.loss) for g in gens]
    value = sum((w * v for w, v in zip(mixture, per_gen)), ZERO)

    agg = [
        [
            sum((mixture[i] * gens[i].mass[xi][yi] for i in range(len(gens))), ZERO)
            for yi in range(dp.space.ny)
        ]
        for xi in range(dp.space.nx)
    ]
    agent_best = ZERO
    for xi in range(dp.space.nx):
        cell = [
            sum((agg[xi][yi] * dp.loss.table[yi][ai] for yi in range(dp.space.ny)), ZERO)
            for ai in range(dp.space.na)
        ]
        agent_best += min(cell)

    bookie_best = max(per_gen)

    failing = []
    if value != agent_best:
        failing.append("agent-deviation")
    if value != bookie_best:
        failing.append("bookie-deviation")
    if any(mixture[i] > 0 and per_gen[i] != bookie_best for i in range(len(gens))):
        failing.append("support-not-tight")
    return SaddleReport(
        holds=not failing,
        value=value,
        agent_best_response=agent_best,
        bookie_best_response=bookie_best,
        failing=tuple(failing),
    )


# ---------------------------------------------------------------------------
# signal-blind play


@dataclass(frozen=True)
class IgnoringSolution:
    """Best constant rule, with the marginal-game cross-check.

    The optimal constant rule's worst case depends on the joint set only
    through its Y-marginals; ``marginal_game_value`` re-derives the
    value from the marginal polytope and must agree exactly.
    """

    value: Fraction
    rule: DecisionRule
    action_vertices: tuple[RandomizedAction, ...]
    bookie_mixture: tuple[Fraction, ...]
    marginal_game_value: Fraction
    a_priori_value: Fraction
    matches_a_priori: bool


def solve_ignoring(dp: DecisionProblem, prior: MinimaxSolution | None = None) -> IgnoringSolution:
    """Prior game restricted to constant rules (ties every signal to one
    randomized action) and comparison against the unrestricted game."""
    space = dp.space
    na = space.na
    gens = dp.credal.generators
    # constant-rule LP: min t, per generator E[L_gamma] <= t over gamma
    rows = []
    senses = []
    rhs = []
    for g in gens:
        ym = g.y_marginal()
        rows.append(
            [-ONE]
            + [
                sum((ym[yi] * dp.loss.table[yi][ai] for yi in range(space.ny)), ZERO)
                for ai in range(na)
            ]
        )
        senses.append(LE)
        rhs.append(ZERO)
    rows.append([ZERO] + [ONE] * na)
    senses.append(EQ)
    rhs.append(ONE)
    lp = make_lp(
        [ONE] + [ZERO] * na,
        rows,
        senses,
        rhs,
        lower_bounds=[None] + [ZERO] * na,
    )
    sol = lp_solve(lp)
    if sol.status != OPTIMAL:
        raise SolverError("constant-rule LP must be solvable")
    value = sol.value
    mixture = tuple(-sol.dual[i] for i in range(len(gens)))

    proj = marginal_y(dp.credal)
    matrix = [
        [
            sum((pj[yi] * dp.loss.table[yi][ai] for yi in range(space.ny)), ZERO)
            for pj in proj.generators
        ]
        for ai in range(na)
    ]
    marginal_value, _gamma, _mix = zero_sum_value(matrix)
    if marginal_value != value:
        raise SolverError("marginal game disagrees with constant-rule LP")

    action_vertices = _action_face(dp.loss, [g.y_marginal() for g in gens], value)
    if not action_vertices:
        raise SolverError("constant-rule face came back empty")
    rule = rule_from_weights(space, [action_vertices[0].weights] * space.nx)

    if prior is None:
        prior = solve_a_priori(dp, face=False)
    return IgnoringSolution(
        value=value,
        rule=rule,
        action_vertices=action_vertices,
        bookie_mixture=mixture,
        marginal_game_value=marginal_value,
        a_priori_value=prior.value,
        matches_a_priori=value == prior.value,
    )


# ---------------------------------------------------------------------------
# independence cover


@dataclass(frozen=True)
class CoverResult:
    """Does every Y-marginal of the set extend to an independent member?"""

    holds: bool
    counterexample: tuple[Fraction, ...] | None
    tested: int


def _product_member(p: CredalSet, r) -> bool:
    space = p.space
    gens = p.generators
    if not p.convex:
        for g in gens:
            xm = g.x_marginal()
            if all(
                g.mass[xi][yi] == xm[xi] * r[yi]
                for xi in range(space.nx)
                for yi in range(space.ny)
            ):
                return True
        return False
    # q (x) r must be a convex combination of the generators
    k = len(gens)
    nx = space.nx
    rows = []
    rhs = []
    for xi in range(nx):
        for yi in range(space.ny):
            row = [ZERO] * (nx + k)
            row[xi] = r[yi]
            for i in range(k):
                row[nx + i] = -gens[i].mass[xi][yi]
            rows.append(row)
            rhs.append(ZERO)
    rows.append([ONE] * nx + [ZERO] * k)
    rhs.append(ONE)
    rows.append([ZERO] * nx + [ONE] * k)
    rhs.append(ONE)
    lp = make_lp([ZERO] * (nx + k), rows, [EQ] * len(rows), rhs)
    return lp_solve(lp).status == OPTIMAL


def check_independence_cover(
    p: CredalSet, samples: int = 20, rng: random.Random | None = None
) -> CoverResult:
    """Probe the Y-marginal polytope: vertices always, plus random
    rational mixtures of vertices when the set is convex."""
    if rng is None:
        rng = random.Random(0)
    proj = marginal_y(p)
    probes = list(proj.generators)
    if p.convex and len(proj.generators) > 1:
        verts = proj.generators
        for _ in range(samples):
            total = rng.randint(1, 24)
            parts = [0] * len(verts)
            for _ in range(total):
                parts[rng.randrange(len(verts))] += 1
            mix = tuple(
                sum(
                    (Fraction(parts[i], total) * verts[i][yi] for i in range(len(verts))),
                    ZERO,
                )
                for yi in range(p.space.ny)
            )
            if mix not in probes:
                probes.append(mix)
    for r in probes:
        if not _product_member(p, r):
            return CoverResult(holds=False, counterexample=r, tested=len(probes))
    return CoverResult(holds=True, counterexample=None, tested=len(probes))


# ---------------------------------------------------------------------------
# grid oracle


def brute_force_value(dp: DecisionProblem, grid: int):
    """Sandwich the prior-game value between grid bounds.

    ``upper``: best worst-case loss over all rules whose action weights
    are multiples of 1/grid.  ``lower``: upper minus the rounding slack
    ``|A| * spread(loss) / grid``.  Deliberately independent of the LP
    machinery.
    """
    if grid < 1:
        raise ValueError("grid must be >= 1")
    space = dp.space
    na = space.na
    count = (grid + 1) ** (space.nx * (na - 1))
    if count > BRUTE_FORCE_LIMIT:
        raise SizeLimitError("grid search of %d rules refused" % count)

    live = [space.x_index(x) for x in support_x(dp.credal)]
    uniform = uniform_action(space).weights

    def compositions(total, parts):
        if parts == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in compositions(total - first, parts - 1):
                yield (first,) + rest

    menu = [
        tuple(Fraction(c, grid) for c in comp) for comp in compositions(grid, na)
    ]
    best = None
    for combo in itertools.product(menu, repeat=len(live)):
        weights = []
        for xi in range(space.nx):
            if xi in live:
                weights.append(combo[live.index(xi)])
            else:
                weights.append(uniform)
        rule = rule_from_weights(space, weights)
        wc, _w = worst_case_loss(dp.credal, rule, dp.loss)
        if best is None or wc < best:
            best = wc
    slack = Fraction(na) * dp.loss.spread() / grid
    return best - slack, best
