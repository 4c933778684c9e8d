"""Command-line front end.

Reads problem files (or bundled corpus cases by ``corpus/<id>`` paths),
dispatches to the library, and prints deterministic plain-text reports
with every number as a reduced rational.

Exit codes: 0 on success; 1 when ``--strict`` is set and the analysis
verdict is inconsistent, not calibrated, or a failed saddle check
(also for corpus mismatches); 2 on input errors.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from fractions import Fraction
from pathlib import Path

from .calibration import (
    ConvexityError,
    check_calibration,
    is_sharply_calibrated,
    partition_text,
    rule_from_spec,
)
from .consistency import (
    ConsistencyVerdict,
    PairWitness,
    SignalWitness,
    check_time_consistency,
    check_weak_time_consistency,
    falsify_dynamic_consistency,
    sufficient_conditions,
)
from .core import (
    DecisionRule,
    dilation_report,
    hull,
    is_conservative,
    is_rectangular,
    rule_from_weights,
    support_x,
)
from .corpus import CorpusError, corpus_text, load_case, run_case, load_corpus
from .linprog import LpError, SizeLimitError
from .minimax import (
    SolverError,
    brute_force_value,
    solve_a_posteriori,
    solve_a_priori,
    verify_saddle,
    worst_case_loss,
)
from .problemfile import ProblemFile, ProblemFileError, parse_problem_file
from .rationals import rat

__all__ = ["main", "run"]


class _InputError(Exception):
    pass


def _seed() -> int:
    raw = os.environ.get("CREDAL_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise _InputError("CREDAL_SEED must be an integer, got %r" % raw)


def _fr(v) -> str:
    return str(Fraction(v))


def _weights(ws) -> str:
    return "(%s)" % ", ".join(_fr(w) for w in ws)


def _rule_text(rule: DecisionRule) -> str:
    space = rule.space
    parts = []
    for x, act in zip(space.x_labels, rule.per_x):
        if act.is_deterministic():
            ai = act.weights.index(1)
            parts.append("%s->%s" % (x, space.actions[ai]))
        else:
            parts.append("%s: %s" % (x, _weights(act.weights)))
    return ", ".join(parts)


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _load_file(path_arg: str) -> ProblemFile:
    path = Path(path_arg)
    if path.exists():
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise _InputError("cannot read %s: %s" % (path_arg, e.strerror))
    else:
        # corpus/<id> (or a bare case id) falls back to the bundled data
        name = path_arg
        if name.startswith("corpus/"):
            name = name[len("corpus/"):]
        if name.endswith(".json"):
            name = name[: -len(".json")]
        if "/" in name or not name:
            raise _InputError("no such file: %s" % path_arg)
        text = corpus_text(name)
    return parse_problem_file(text)


def _parse_rule_arg(text: str, pf: ProblemFile) -> DecisionRule:
    """Decision rule from ``"w,w,.../w,w,..."`` with one block per signal."""
    blocks = text.split("/")
    if len(blocks) != len(pf.x_labels):
        raise _InputError(
            "--rule needs %d '/'-separated blocks" % len(pf.x_labels)
        )
    try:
        weights = [[rat(v) for v in b.split(",")] for b in blocks]
        return rule_from_weights(pf.space(), weights)
    except (ValueError, ZeroDivisionError) as e:
        raise _InputError("bad --rule: %s" % e)


def _parse_mixture_arg(text: str, pf: ProblemFile):
    try:
        return tuple(rat(v) for v in text.split(","))
    except (ValueError, ZeroDivisionError) as e:
        raise _InputError("bad --mixture: %s" % e)


# ---------------------------------------------------------------- subcommands

def _cmd_solve(args, out) -> int:
    pf = _load_file(args.file)
    sol = solve_a_priori(pf.problem())
    out("value: %s" % _fr(sol.value))
    out("rule: %s" % _rule_text(sol.rule))
    out("unique: %s" % _yes(sol.unique))
    out("face vertices: %d" % len(sol.optimal_rule_vertices))
    out("bookie mixture: %s" % ", ".join(_fr(w) for w in sol.bookie_mixture))
    out("aggregate:")
    for x, row in zip(pf.x_labels, sol.aggregate.mass):
        out("  %s: %s" % (x, " ".join(_fr(v) for v in row)))
    if sol.unconstrained_x:
        out("unconstrained signals: %s" % ", ".join(sol.unconstrained_x))
    return 0


def _cmd_posterior(args, out) -> int:
    pf = _load_file(args.file)
    dp = pf.problem()
    post = solve_a_posteriori(dp)
    live = support_x(dp.credal)
    out("support: %s" % ", ".join(live))
    for x in pf.x_labels:
        if x not in live:
            out("%s: never observed" % x)
            continue
        point = post.point(x)
        acts = " | ".join(_weights(a.weights) for a in point.action_vertices)
        out("%s: value %s, actions %s" % (x, _fr(point.value), acts))
    return 0


def _cmd_saddle(args, out) -> int:
    pf = _load_file(args.file)
    dp = pf.problem()
    rule = _parse_rule_arg(args.rule, pf)
    mixture = _parse_mixture_arg(args.mixture, pf)
    try:
        rep = verify_saddle(dp, mixture, rule)
    except ValueError as e:
        raise _InputError(str(e))
    out("value: %s" % _fr(rep.value))
    out("agent best response: %s" % _fr(rep.agent_best_response))
    out("bookie best response: %s" % _fr(rep.bookie_best_response))
    if rep.holds:
        out("saddle: yes")
        return 0
    out("saddle: no (%s)" % ", ".join(rep.failing))
    return 1 if args.strict else 0


def _cmd_hull(args, out) -> int:
    pf = _load_file(args.file)
    p = pf.credal()
    h = hull(p)
    out("generators: %d" % len(h.generators))
    for g in h.generators:
        out("  " + " / ".join(" ".join(_fr(v) for v in row) for row in g.mass))
    out("convex: %s" % _yes(h.convex))
    out("rectangular: %s" % _yes(is_rectangular(p)))
    return 0


def _cmd_check(args, out) -> int:
    pf = _load_file(args.file)
    p = pf.credal()
    if args.what == "rect":
        out("rectangular: %s" % _yes(is_rectangular(p)))
    elif args.what == "conservative":
        out("conservative: %s" % _yes(is_conservative(p)))
    else:
        rep = dilation_report(p)
        for row in rep.rows:
            posts = "  ".join(
                "%s [%s, %s]" % (x, _fr(lo), _fr(hi))
                for x, (lo, hi) in row.posteriors
            )
            out(
                "event %s: prior [%s, %s]  %s  dilation %s"
                % (
                    ",".join(row.event),
                    _fr(row.prior[0]),
                    _fr(row.prior[1]),
                    posts,
                    _yes(row.dilates),
                )
            )
    return 0


_TITLES = {
    "weak-time": "weak time consistency",
    "time": "time consistency",
    "dynamic": "dynamic consistency",
}


def _emit_pair(prefix: str, w: PairWitness, out):
    out("%scondition: %s" % (prefix, w.condition))
    out("%sdelta: %s" % (prefix, _rule_text(w.delta)))
    out("%sdelta prime: %s" % (prefix, _rule_text(w.delta_prime)))
    for x, a, b in w.posterior:
        out("%ssignal %s: %s vs %s" % (prefix, x, _fr(a), _fr(b)))
    out("%sprior worst case: %s vs %s" % (prefix, _fr(w.prior[0]), _fr(w.prior[1])))


def _emit_verdict(v: ConsistencyVerdict, dp, out):
    out("%s: %s" % (_TITLES[v.kind], v.result))
    if isinstance(v.witness, SignalWitness):
        out("witness rule: %s" % _rule_text(v.witness.rule))
        out("at signal: %s" % v.witness.x)
        out("posterior loss: %s" % _fr(v.witness.posterior_loss))
        out("posterior value: %s" % _fr(v.witness.posterior_value))
    elif isinstance(v.witness, DecisionRule):
        out("witness rule: %s" % _rule_text(v.witness))
        wc, _ = worst_case_loss(dp.credal, v.witness, dp.loss)
        out("witness prior worst case: %s" % _fr(wc))
    elif isinstance(v.witness, PairWitness):
        _emit_pair("", v.witness, out)
    if v.strict_variant_witness is not None:
        out("strict-variant pair (reported only):")
        _emit_pair("  ", v.strict_variant_witness, out)


def _cmd_consistency(args, out) -> int:
    pf = _load_file(args.file)
    dp = pf.problem()
    out("structure: %s" % sufficient_conditions(dp).summary())
    if args.what == "weak":
        verdict = check_weak_time_consistency(dp)
    elif args.what == "time":
        verdict = check_time_consistency(dp)
    else:
        rng = random.Random(_seed())
        verdict = falsify_dynamic_consistency(dp, budget=args.budget, rng=rng)
    _emit_verdict(verdict, dp, out)
    if args.strict and verdict.result == "inconsistent":
        return 1
    return 0


def _cmd_calibrate(args, out) -> int:
    pf = _load_file(args.file)
    p = pf.credal()
    try:
        rule = rule_from_spec(args.rule, pf.x_labels)
    except ValueError as e:
        raise _InputError(str(e))
    rep = check_calibration(rule, p)
    out("rule: %s" % rule.label())
    out("classes: %s" % partition_text(rep.classes))
    for cl in rep.per_class:
        out(
            "class %s: forward %s, backward %s"
            % (",".join(cl.cell), _yes(cl.forward), _yes(cl.backward))
        )
    for cell in rep.excluded:
        out("excluded: %s" % ",".join(cell))
    out("verdict: %s" % ("calibrated" if rep.calibrated else "not calibrated"))
    if not rep.calibrated:
        failing = [cl.cell for cl in rep.per_class if not cl.matches]
        out("failing classes: %s" % "; ".join(",".join(c) for c in failing))
        out("semi-calibrated: %s" % _yes(rep.semi_calibrated))
    if args.sharp:
        if not rep.calibrated:
            out("sharp: skipped (rule not calibrated)")
        else:
            verdict = is_sharply_calibrated(rule, p)
            out("sharp: %s" % _yes(verdict.sharp))
            if verdict.witness is not None:
                out("narrower partition: %s" % partition_text(verdict.witness))
    if args.strict and not rep.calibrated:
        return 1
    return 0


def _cmd_oracle(args, out) -> int:
    pf = _load_file(args.file)
    dp = pf.problem()
    if args.grid < 1:
        raise _InputError("--grid must be at least 1")
    lower, upper = brute_force_value(dp, args.grid)
    value = solve_a_priori(dp, face=False).value
    out("grid: %d" % args.grid)
    out("lower bound: %s" % _fr(lower))
    out("upper bound: %s" % _fr(upper))
    out("lp value: %s" % _fr(value))
    out("within bounds: %s" % _yes(lower <= value <= upper))
    return 0


def _cmd_corpus(args, out) -> int:
    total = 0
    failed = 0
    for case in load_corpus():
        res = run_case(case)
        total += len(res.results)
        bad = [r for r in res.results if not r.ok]
        failed += len(bad)
        out("%s: %d %s" % (res.id, len(res.results), "ok" if res.ok else "FAIL"))
        for r in bad:
            out(
                "  FAIL %s %s: expected %r, got %r"
                % (r.op, dict(r.args), r.expected, r.actual)
            )
    out(
        "corpus: %d expectations, %d failed" % (total, failed)
        if failed
        else "corpus: %d expectations, all passed" % total
    )
    return 1 if failed else 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="credal",
        description="Exact minimax decision making with credal sets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, with_file=True):
        sp = sub.add_parser(name, help=help_text)
        if with_file:
            sp.add_argument("file", help="problem file or corpus/<id>")
        sp.add_argument(
            "--strict",
            action="store_true",
            help="exit 1 on a failing verdict",
        )
        sp.set_defaults(fn=fn)
        return sp

    add("solve", _cmd_solve, "a priori game: value, rule, equilibrium")
    add("posterior", _cmd_posterior, "per-signal games after conditioning")

    sp = add("saddle", _cmd_saddle, "verify a provided equilibrium")
    sp.add_argument("--rule", required=True, help="weights w,w,.../w,w,... per signal")
    sp.add_argument("--mixture", required=True, help="bookie weights p,p,...")

    add("hull", _cmd_hull, "marginal-conditional product construction")

    sp = sub.add_parser("check", help="structural checks on the credal set")
    sp.add_argument("what", choices=("rect", "conservative", "dilation"))
    sp.add_argument("file", help="problem file or corpus/<id>")
    sp.add_argument("--strict", action="store_true", help=argparse.SUPPRESS)
    sp.set_defaults(fn=_cmd_check)

    sp = sub.add_parser("consistency", help="time-consistency analyses")
    sp.add_argument("what", choices=("weak", "time", "dynamic"))
    sp.add_argument("file", help="problem file or corpus/<id>")
    sp.add_argument("--budget", type=int, default=0, help="extra random rules")
    sp.add_argument(
        "--strict", action="store_true", help="exit 1 on a failing verdict"
    )
    sp.set_defaults(fn=_cmd_consistency)

    sp = add("calibrate", _cmd_calibrate, "calibration of an update rule")
    sp.add_argument(
        "--rule",
        required=True,
        help="standard | ignore | partition:a,b|c",
    )
    sp.add_argument("--sharp", action="store_true", help="also test sharpness")

    sp = add("oracle", _cmd_oracle, "brute-force bounds for the a priori value")
    sp.add_argument("--grid", type=int, required=True, help="grid denominator")

    sp = sub.add_parser("corpus", help="bundled worked examples")
    sp.add_argument("action", choices=("run",))
    sp.add_argument("--strict", action="store_true", help=argparse.SUPPRESS)
    sp.set_defaults(fn=_cmd_corpus)

    return parser


def run(argv=None, stdout=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 2

    def out(line: str):
        print(line, file=stdout)

    try:
        return args.fn(args, out)
    except (_InputError, ProblemFileError, CorpusError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    except (ConvexityError, SizeLimitError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    except (SolverError, LpError) as e:
        print("internal error: %s" % e, file=sys.stderr)
        return 2


def main() -> int:
    return run()


if __name__ == "__main__":
    sys.exit(main())
