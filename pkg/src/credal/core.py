"""Decision problems under credal uncertainty.

The model: a finite signal variable X is observed, a finite outcome
variable Y is bet on, and uncertainty about the joint distribution of
(X, Y) is a finitely generated set of joint distributions (a credal
set).  ``convex=True`` reads the generator list as its convex hull,
``convex=False`` as the bare finite set.

Conditioning is generator-wise, which is exact for both readings:
conditioning a convex hull on an event equals the convex hull of the
conditioned generators (the mixture weights renormalize), and a finite
set conditions pointwise.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .polytope import VPolytope, member, prune, set_equal, subset
from .rationals import rat, rat_matrix, rat_seq

__all__ = [
    "ProblemSpace",
    "JointDistribution",
    "CredalSet",
    "LossFunction",
    "DecisionProblem",
    "RandomizedAction",
    "DecisionRule",
    "Partition",
    "UndefinedConditionalError",
    "credal_set",
    "joint",
    "joint_polytope",
    "marginal_y",
    "condition",
    "c_condition",
    "hull",
    "is_rectangular",
    "is_conservative",
    "support_x",
    "dilation_report",
    "DilationReport",
    "DilationRow",
]

ZERO = Fraction(0)
ONE = Fraction(1)


class UndefinedConditionalError(Exception):
    """Conditioning event has probability zero under every generator."""


def _check_labels(labels, what):
    labels = tuple(str(v) for v in labels)
    if not labels:
        raise ValueError("%s must be nonempty" % what)
    if len(set(labels)) != len(labels):
        raise ValueError("%s must be distinct" % what)
    return labels


@dataclass(frozen=True)
class ProblemSpace:
    """Finite label sets for signals, outcomes and actions."""

    x_labels: tuple[str, ...]
    y_labels: tuple[str, ...]
    actions: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "x_labels", _check_labels(self.x_labels, "x labels"))
        object.__setattr__(self, "y_labels", _check_labels(self.y_labels, "y labels"))
        object.__setattr__(self, "actions", _check_labels(self.actions, "actions"))
        if len(self.actions) < 2:
            raise ValueError("a decision problem needs at least two actions")

    @property
    def nx(self):
        return len(self.x_labels)

    @property
    def ny(self):
        return len(self.y_labels)

    @property
    def na(self):
        return len(self.actions)

    def x_index(self, label) -> int:
        return self.x_labels.index(str(label))

    def y_index(self, label) -> int:
        return self.y_labels.index(str(label))

    def a_index(self, label) -> int:
        return self.actions.index(str(label))


@dataclass(frozen=True)
class JointDistribution:
    """Exact joint probability mass over X times Y (x-major matrix)."""

    space: ProblemSpace
    mass: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.mass) != self.space.nx:
            raise ValueError("mass needs one row per x label")
        total = ZERO
        for row in self.mass:
            if len(row) != self.space.ny:
                raise ValueError("mass row length != number of y labels")
            for v in row:
                if v < 0:
                    raise ValueError("negative probability mass")
                total += v
        if total != 1:
            raise ValueError("mass must sum to exactly 1, got %s" % total)

    def x_marginal(self) -> tuple[Fraction, ...]:
        return tuple(sum(row, ZERO) for row in self.mass)

    def y_marginal(self) -> tuple[Fraction, ...]:
        return tuple(
            sum((self.mass[i][j] for i in range(self.space.nx)), ZERO)
            for j in range(self.space.ny)
        )

    def conditional_y(self, xi: int) -> tuple[Fraction, ...] | None:
        """Conditional distribution of Y given X = x, None on zero mass."""
        px = sum(self.mass[xi], ZERO)
        if px == 0:
            return None
        return tuple(v / px for v in self.mass[xi])

    def event_x(self, x_indices) -> Fraction:
        return sum((sum(self.mass[i], ZERO) for i in x_indices), ZERO)

    def flatten(self) -> tuple[Fraction, ...]:
        return tuple(v for row in self.mass for v in row)


def joint(space: ProblemSpace, mass) -> JointDistribution:
    return JointDistribution(space=space, mass=rat_matrix(mass))


def _unflatten(space, flat):
    it = iter(flat)
    return tuple(tuple(next(it) for _ in range(space.ny)) for _ in range(space.nx))


@dataclass(frozen=True)
class CredalSet:
    """Finitely generated set of joint distributions on a shared space."""

    space: ProblemSpace
    generators: tuple[JointDistribution, ...]
    convex: bool

    def __post_init__(self):
        if not self.generators:
            raise ValueError("a credal set needs at least one generator")
        seen = []
        for g in self.generators:
            if g.space != self.space:
                raise ValueError("generator on a different space")
            if g.mass not in seen:
                seen.append(g.mass)
        object.__setattr__(
            self,
            "generators",
            tuple(JointDistribution(self.space, m) for m in seen),
        )


def credal_set(space, masses, convex) -> CredalSet:
    return CredalSet(
        space=space,
        generators=tuple(joint(space, m) for m in masses),
        convex=convex,
    )


@dataclass(frozen=True)
class LossFunction:
    """Loss of action a when outcome is y; losses may be negative."""

    space: ProblemSpace
    table: tuple[tuple[Fraction, ...], ...]  # rows: y, columns: a

    def __post_init__(self):
        if len(self.table) != self.space.ny:
            raise ValueError("loss table needs one row per y label")
        for row in self.table:
            if len(row) != self.space.na:
                raise ValueError("loss row length != number of actions")

    def value(self, yi: int, ai: int) -> Fraction:
        return self.table[yi][ai]

    def spread(self) -> Fraction:
        vals = [v for row in self.table for v in row]
        return max(vals) - min(vals)


def loss_function(space, table) -> LossFunction:
    return LossFunction(space=space, table=rat_matrix(table))


def classification_loss(space: ProblemSpace) -> LossFunction:
    """Zero-one loss; requires actions and outcomes to share labels."""
    table = [
        [ZERO if a == y else ONE for a in space.actions] for y in space.y_labels
    ]
    return LossFunction(space=space, table=tuple(tuple(r) for r in table))


@dataclass(frozen=True)
class DecisionProblem:
    credal: CredalSet
    loss: LossFunction

    def __post_init__(self):
        if self.credal.space != self.loss.space:
            raise ValueError("credal set and loss live on different spaces")

    @property
    def space(self) -> ProblemSpace:
        return self.credal.space


@dataclass(frozen=True)
class RandomizedAction:
    """Probability weights over the action set."""

    weights: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", rat_seq(self.weights))
        if any(w < 0 for w in self.weights):
            raise ValueError("negative action weight")
        if sum(self.weights, ZERO) != 1:
            raise ValueError("action weights must sum to 1")

    def is_deterministic(self) -> bool:
        return all(w in (0, 1) for w in self.weights)


@dataclass(frozen=True)
class DecisionRule:
    """One randomized action per signal value, in x-label order."""

    space: ProblemSpace
    per_x: tuple[RandomizedAction, ...]

    def __post_init__(self):
        if len(self.per_x) != self.space.nx:
            raise ValueError("a rule needs one action per x label")
        for act in self.per_x:
            if len(act.weights) != self.space.na:
                raise ValueError("action weight length != number of actions")

    def action(self, xi: int) -> RandomizedAction:
        return self.per_x[xi]

    def is_deterministic(self) -> bool:
        return all(a.is_deterministic() for a in self.per_x)

    def flatten(self) -> tuple[Fraction, ...]:
        return tuple(w for a in self.per_x for w in a.weights)


def rule_from_weights(space, weights) -> DecisionRule:
    return DecisionRule(
        space=space, per_x=tuple(RandomizedAction(rat_seq(w)) for w in weights)
    )


def deterministic_rule(space, assignment) -> DecisionRule:
    """Rule from a mapping x label -> action label."""
    weights = []
    for x in space.x_labels:
        ai = space.a_index(assignment[x])
        weights.append(tuple(ONE if k == ai else ZERO for k in range(space.na)))
    return rule_from_weights(space, weights)


def constant_rule(space, action_weights) -> DecisionRule:
    w = rat_seq(action_weights)
    return rule_from_weights(space, [w] * space.nx)


def uniform_action(space) -> RandomizedAction:
    return RandomizedAction(tuple(Fraction(1, space.na) for _ in range(space.na)))


@dataclass(frozen=True)
class Partition:
    """Partition of the x labels into disjoint nonempty cells.

    Stored canonically: cells sorted by their first label's position,
    labels inside a cell in x-label order.
    """

    labels: tuple[str, ...]
    cells: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        labels = tuple(str(v) for v in self.labels)
        order = {x: i for i, x in enumerate(labels)}
        seen = set()
        canon = []
        for cell in self.cells:
            cell = tuple(str(x) for x in cell)
            if not cell:
                raise ValueError("empty partition cell")
            for x in cell:
                if x not in order:
                    raise ValueError("unknown label %r" % (x,))
                if x in seen:
                    raise ValueError("label %r in two cells" % (x,))
                seen.add(x)
            canon.append(tuple(sorted(cell, key=order.get)))
        if seen != set(labels):
            raise ValueError("cells do not cover all labels")
        canon.sort(key=lambda c: order[c[0]])
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "cells", tuple(canon))

    def cell_of(self, x) -> tuple[str, ...]:
        x = str(x)
        for cell in self.cells:
            if x in cell:
                return cell
        raise KeyError(x)

    @classmethod
    def singletons(cls, labels) -> "Partition":
        labels = tuple(labels)
        return cls(labels=labels, cells=tuple((x,) for x in labels))

    @classmethod
    def whole(cls, labels) -> "Partition":
        labels = tuple(labels)
        return cls(labels=labels, cells=(labels,))

    @classmethod
    def from_string(cls, labels, text) -> "Partition":
        """Parse ``"a,b|c"`` into cells {a, b} and {c}."""
        cells = [
            tuple(part.strip() for part in chunk.split(",") if part.strip())
            for chunk in text.split("|")
        ]
        return cls(labels=tuple(labels), cells=tuple(c for c in cells if c))

    def __str__(self):
        return "|".join(",".join(cell) for cell in self.cells)


# ---------------------------------------------------------------------------
# operations


def joint_polytope(p: CredalSet) -> VPolytope:
    return VPolytope(
        dimension=p.space.nx * p.space.ny,
        generators=tuple(g.flatten() for g in p.generators),
        convex=p.convex,
    )


def _from_polytope(space, poly: VPolytope) -> CredalSet:
    return CredalSet(
        space=space,
        generators=tuple(
            JointDistribution(space, _unflatten(space, g)) for g in poly.generators
        ),
        convex=poly.convex,
    )


def prune_credal(p: CredalSet) -> CredalSet:
    return _from_polytope(p.space, prune(joint_polytope(p)))


def marginal_y(p: CredalSet) -> VPolytope:
    """Set of Y-marginals of the members of ``p``, as a polytope over Y."""
    poly = VPolytope(
        dimension=p.space.ny,
        generators=tuple(g.y_marginal() for g in p.generators),
        convex=p.convex,
    )
    return prune(poly) if p.convex else poly


def marginal_x_polytope(p: CredalSet) -> VPolytope:
    poly = VPolytope(
        dimension=p.space.nx,
        generators=tuple(g.x_marginal() for g in p.generators),
        convex=p.convex,
    )
    return prune(poly) if p.convex else poly


def support_x(p: CredalSet) -> tuple[str, ...]:
    """Signals that receive positive probability from some generator."""
    out = []
    for i, x in enumerate(p.space.x_labels):
        if any(sum(g.mass[i], ZERO) > 0 for g in p.generators):
            out.append(x)
    return tuple(out)


def condition(p: CredalSet, x_event) -> CredalSet:
    """Regular extension: condition every generator that gives the event
    positive probability on ``x_event`` (an iterable of x labels).

    Raises :class:`UndefinedConditionalError` when no generator does.
    The conditioned set is pruned.
    """
    idx = sorted(p.space.x_index(x) for x in x_event)
    if not idx:
        raise ValueError("conditioning event must be nonempty")
    kept = []
    for g in p.generators:
        pe = g.event_x(idx)
        if pe == 0:
            continue
        mass = tuple(
            tuple(v / pe for v in g.mass[i]) if i in idx else (ZERO,) * p.space.ny
            for i in range(p.space.nx)
        )
        kept.append(mass)
    if not kept:
        raise UndefinedConditionalError(
            "event {%s} has probability zero under every generator"
            % ",".join(p.space.x_labels[i] for i in idx)
        )
    return prune_credal(credal_set(p.space, kept, p.convex))


def c_condition(p: CredalSet, part: Partition, x) -> CredalSet:
    """Condition on the partition cell containing ``x``."""
    if tuple(part.labels) != p.space.x_labels:
        raise ValueError("partition is over different labels")
    return condition(p, part.cell_of(x))


def hull(p: CredalSet) -> CredalSet:
    """Products of an X-marginal of ``p`` with per-signal conditionals of ``p``.

    Generators: every product Q (x) R, with Q an X-marginal generator
    and, for each x with Q(x) > 0, R_x a conditional-given-x generator.
    For convex sets the generating pieces are pruned first (the product
    is linear in each piece, so the hull of products is unchanged); for
    finite sets every piece is kept.
    """
    space = p.space
    marg = [g.x_marginal() for g in p.generators]
    if p.convex:
        marg = list(prune(VPolytope(space.nx, tuple(marg), True)).generators)
    else:
        marg = list(dict.fromkeys(marg))

    cond_lists: list[list[tuple[Fraction, ...]]] = []
    for i in range(space.nx):
        conds = []
        for g in p.generators:
            c = g.conditional_y(i)
            if c is not None and c not in conds:
                conds.append(c)
        if p.convex and len(conds) > 1:
            conds = list(prune(VPolytope(space.ny, tuple(conds), True)).generators)
        cond_lists.append(conds)

    products = []
    for q in marg:
        live = [i for i in range(space.nx) if q[i] > 0]
        for choice in itertools.product(*(cond_lists[i] for i in live)):
            rows = []
            pick = dict(zip(live, choice))
            for i in range(space.nx):
                if i in pick:
                    rows.append(tuple(q[i] * v for v in pick[i]))
                else:
                    rows.append((ZERO,) * space.ny)
            products.append(tuple(rows))

    out = credal_set(space, products, p.convex)
    return prune_credal(out) if p.convex else out


def is_rectangular(p: CredalSet) -> bool:
    """Does ``p`` already contain every product it generates?

    Only the backward inclusion needs testing; ``p`` is always inside
    its own product construction.
    """
    return subset(joint_polytope(hull(p)), joint_polytope(p))


def is_conservative(p: CredalSet) -> bool:
    """Every generator gives every signal value positive probability."""
    return all(
        all(px > 0 for px in g.x_marginal()) for g in p.generators
    )


@dataclass(frozen=True)
class DilationRow:
    event: tuple[str, ...]
    prior: tuple[Fraction, Fraction]
    posteriors: tuple[tuple[str, tuple[Fraction, Fraction]], ...]
    dilates: bool


@dataclass(frozen=True)
class DilationReport:
    """Strict dilation: observing any signal widens the probability
    interval of the event on both sides."""

    rows: tuple[DilationRow, ...]

    def row_for(self, event) -> DilationRow:
        key = tuple(str(y) for y in event)
        for r in self.rows:
            if set(r.event) == set(key):
                return r
        raise KeyError(key)

    def dilating_events(self) -> tuple[tuple[str, ...], ...]:
        return tuple(r.event for r in self.rows if r.dilates)


def _event_prob(g: JointDistribution, y_idx) -> Fraction:
    return sum(
        (g.mass[i][j] for i in range(g.space.nx) for j in y_idx), ZERO
    )


def dilation_report(p: CredalSet) -> DilationReport:
    """Prior and per-signal posterior intervals for every proper Y-event."""
    space = p.space
    live = support_x(p)
    posterior_sets = {x: condition(p, [x]) for x in live}
    rows = []
    ys = list(range(space.ny))
    events = []
    for size in range(1, space.ny):
        events.extend(itertools.combinations(ys, size))
    for ev in events:
        pri = [_event_prob(g, ev) for g in p.generators]
        prior = (min(pri), max(pri))
        posts = []
        dil = bool(live)
        for x in live:
            vals = [_event_prob(g, ev) for g in posterior_sets[x].generators]
            lohi = (min(vals), max(vals))
            posts.append((x, lohi))
            if not (lohi[0] < prior[0] and lohi[1] > prior[1]):
                dil = False
        rows.append(
            DilationRow(
                event=tuple(space.y_labels[j] for j in ev),
                prior=prior,
                posteriors=tuple(posts),
                dilates=dil,
            )
        )
    return DilationReport(rows=tuple(rows))
