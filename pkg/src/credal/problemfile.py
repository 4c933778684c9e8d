"""Problem files: the on-disk JSON form of a decision problem.

A problem file carries the label sets, the credal set's generator
matrices, the convexity flag, and optionally a loss table.  All
numbers are reduced rational strings like ``"2/3"``; floats are never
read or written.  Parsing is strict and errors name the offending
field, since these files double as the golden corpus and as CLI
input.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    CredalSet,
    DecisionProblem,
    LossFunction,
    ProblemSpace,
    credal_set,
)

__all__ = [
    "ProblemFileError",
    "ProblemFile",
    "parse_problem_file",
    "load_problem_file",
    "render_problem_file",
    "problem_file_from",
]

# Keys consumed by the corpus loader; the base parser tolerates them.
AUX_KEYS = ("id", "note", "expectations")

_KEYS = ("x_labels", "y_labels", "actions", "convex", "generators", "loss")


class ProblemFileError(Exception):
    """Malformed problem file; the message names the field."""


def _fail(field, why):
    raise ProblemFileError("field %r: %s" % (field, why))


def _labels(doc, field):
    value = doc.get(field)
    if (
        not isinstance(value, list)
        or not value
        or not all(isinstance(v, str) for v in value)
    ):
        _fail(field, "expected a nonempty array of strings")
    if len(set(value)) != len(value):
        _fail(field, "labels must be distinct")
    return tuple(value)


def _rational(text, field):
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        _fail(field, "expected a rational string, got %r" % (text,))
    # Only "p" or "p/q"; Fraction() alone would also take "1.5" and "1e3".
    if not re.fullmatch(r"-?\d+(?:/[1-9]\d*)?", str(text)):
        _fail(field, "not a rational: %r" % (text,))
    return Fraction(str(text))


def _matrix(value, field, nrows, ncols):
    if not isinstance(value, list) or len(value) != nrows:
        _fail(field, "expected %d rows" % nrows)
    out = []
    for i, row in enumerate(value):
        if not isinstance(row, list) or len(row) != ncols:
            _fail(field, "row %d: expected %d entries" % (i, ncols))
        out.append(tuple(_rational(v, field) for v in row))
    return tuple(out)


@dataclass(frozen=True)
class ProblemFile:
    """Parsed problem file; exact rationals throughout."""

    x_labels: tuple[str, ...]
    y_labels: tuple[str, ...]
    actions: tuple[str, ...]
    convex: bool
    generators: tuple[tuple[tuple[Fraction, ...], ...], ...]
    loss: tuple[tuple[Fraction, ...], ...] | None

    def space(self) -> ProblemSpace:
        return ProblemSpace(self.x_labels, self.y_labels, self.actions)

    def credal(self) -> CredalSet:
        return credal_set(self.space(), self.generators, self.convex)

    def problem(self) -> DecisionProblem:
        if self.loss is None:
            raise ProblemFileError("field 'loss': required for this command")
        loss = LossFunction(space=self.space(), table=self.loss)
        return DecisionProblem(self.credal(), loss)


def parse_problem_file(text: str) -> ProblemFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ProblemFileError("not valid JSON: %s" % e) from None
    if not isinstance(doc, dict):
        raise ProblemFileError("top level must be an object")
    for key in doc:
        if key not in _KEYS and key not in AUX_KEYS:
            _fail(key, "unknown field")

    xs = _labels(doc, "x_labels")
    ys = _labels(doc, "y_labels")
    acts = _labels(doc, "actions")
    convex = doc.get("convex")
    if not isinstance(convex, bool):
        _fail("convex", "expected true or false")

    gens_doc = doc.get("generators")
    if not isinstance(gens_doc, list) or not gens_doc:
        _fail("generators", "expected a nonempty array of matrices")
    generators = []
    for k, g in enumerate(gens_doc):
        mat = _matrix(g, "generators[%d]" % k, len(xs), len(ys))
        total = sum(v for row in mat for v in row)
        if total != 1:
            _fail("generators[%d]" % k, "mass sums to %s, not 1" % total)
        if any(v < 0 for row in mat for v in row):
            _fail("generators[%d]" % k, "negative mass")
        generators.append(mat)

    loss_doc = doc.get("loss")
    loss = None
    if loss_doc is not None:
        loss = _matrix(loss_doc, "loss", len(ys), len(acts))

    return ProblemFile(
        x_labels=xs,
        y_labels=ys,
        actions=acts,
        convex=convex,
        generators=tuple(generators),
        loss=loss,
    )


def load_problem_file(path) -> ProblemFile:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ProblemFileError("cannot read %s: %s" % (path, e.strerror)) from None
    return parse_problem_file(text)


def _rstr(v: Fraction) -> str:
    return str(Fraction(v))


def render_problem_file(pf: ProblemFile) -> str:
    """Canonical JSON text; reparsing yields an identical value."""
    doc = {
        "x_labels": list(pf.x_labels),
        "y_labels": list(pf.y_labels),
        "actions": list(pf.actions),
        "convex": pf.convex,
        "generators": [
            [[_rstr(v) for v in row] for row in g] for g in pf.generators
        ],
    }
    if pf.loss is not None:
        doc["loss"] = [[_rstr(v) for v in row] for row in pf.loss]
    return json.dumps(doc, indent=2) + "\n"


def problem_file_from(credal: CredalSet, loss: LossFunction | None = None) -> ProblemFile:
    if loss is not None and loss.space != credal.space:
        raise ValueError("credal set and loss live on different spaces")
    space = credal.space
    return ProblemFile(
        x_labels=space.x_labels,
        y_labels=space.y_labels,
        actions=space.actions,
        convex=credal.convex,
        generators=tuple(g.mass for g in credal.generators),
        loss=None if loss is None else loss.table,
    )
