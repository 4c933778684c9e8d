"""Exact minimax decision making with finitely generated credal sets.

The package works entirely in rational arithmetic: credal sets are
given by finitely many joint distributions over signal x outcome, and
every solver, consistency check and calibration report returns exact
``fractions.Fraction`` values.  The most common entry points are
re-exported here; the submodules hold the rest (``linprog`` for the
simplex core, ``sampling`` for random instances, ``corpus`` for the
bundled worked cases).
"""

from .calibration import (
    CalibrationReport,
    SharpnessVerdict,
    UpdateRule,
    check_calibration,
    equivalence_classes,
    ignore_rule,
    is_sharply_calibrated,
    partition_conditioning,
    sharp_partition,
    standard_conditioning,
    table_rule,
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
    CredalSet,
    DecisionProblem,
    DecisionRule,
    DilationReport,
    JointDistribution,
    LossFunction,
    Partition,
    ProblemSpace,
    RandomizedAction,
    UndefinedConditionalError,
    c_condition,
    classification_loss,
    condition,
    constant_rule,
    credal_set,
    deterministic_rule,
    dilation_report,
    hull,
    is_conservative,
    is_rectangular,
    joint,
    joint_polytope,
    loss_function,
    marginal_y,
    rule_from_weights,
    support_x,
)
from .corpus import corpus_ids, load_case, run_case, run_corpus
from .minimax import (
    IgnoringSolution,
    MinimaxSolution,
    PosteriorSolution,
    SaddleReport,
    brute_force_value,
    expected_loss,
    solve_a_posteriori,
    solve_a_priori,
    solve_ignoring,
    verify_saddle,
    worst_case_loss,
    worst_case_posterior_loss,
)
from .polytope import VPolytope, member, prune, set_equal, subset
from .problemfile import (
    ProblemFile,
    ProblemFileError,
    load_problem_file,
    parse_problem_file,
    problem_file_from,
    render_problem_file,
)
from .rationals import rat, rat_matrix, rat_seq

__all__ = [
    "CalibrationReport",
    "SharpnessVerdict",
    "UpdateRule",
    "check_calibration",
    "equivalence_classes",
    "ignore_rule",
    "is_sharply_calibrated",
    "partition_conditioning",
    "sharp_partition",
    "standard_conditioning",
    "table_rule",
    "ConsistencyVerdict",
    "PairWitness",
    "SignalWitness",
    "check_time_consistency",
    "check_weak_time_consistency",
    "falsify_dynamic_consistency",
    "sufficient_conditions",
    "CredalSet",
    "DecisionProblem",
    "DecisionRule",
    "DilationReport",
    "JointDistribution",
    "LossFunction",
    "Partition",
    "ProblemSpace",
    "RandomizedAction",
    "UndefinedConditionalError",
    "c_condition",
    "classification_loss",
    "condition",
    "constant_rule",
    "credal_set",
    "deterministic_rule",
    "dilation_report",
    "hull",
    "is_conservative",
    "is_rectangular",
    "joint",
    "joint_polytope",
    "loss_function",
    "marginal_y",
    "rule_from_weights",
    "support_x",
    "corpus_ids",
    "load_case",
    "run_case",
    "run_corpus",
    "IgnoringSolution",
    "MinimaxSolution",
    "PosteriorSolution",
    "SaddleReport",
    "brute_force_value",
    "expected_loss",
    "solve_a_posteriori",
    "solve_a_priori",
    "solve_ignoring",
    "verify_saddle",
    "worst_case_loss",
    "worst_case_posterior_loss",
    "VPolytope",
    "member",
    "prune",
    "set_equal",
    "subset",
    "ProblemFile",
    "ProblemFileError",
    "load_problem_file",
    "parse_problem_file",
    "problem_file_from",
    "render_problem_file",
    "rat",
    "rat_matrix",
    "rat_seq",
]
