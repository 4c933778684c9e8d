"""When is an update rule an honest summary of a credal set?

An update rule sends each signal to a set of opinions about the
outcome.  Signals producing the same opinion set are indistinguishable
to anyone following the rule, so the rule should be judged against the
credal set conditioned on those *classes*: it is calibrated when the
two always agree, and sharp when no strictly more informative rule is
also calibrated.

Three small sets tell the story.  Flipping one of two mirrored coins
shows conditioning that widens an interval from a point to [0, 1]
(dilation) and fails calibration.  A set with a fixed outcome marginal
shows why: both signals produce the same vacuous posterior, and the
pooled class disagrees with it.  A two-point set shows the other
extreme, where standard conditioning is exactly as fine as the data
allows and ignoring the signal wastes it.
"""

from credal import (
    ProblemSpace,
    check_calibration,
    credal_set,
    dilation_report,
    equivalence_classes,
    ignore_rule,
    is_sharply_calibrated,
    sharp_partition,
    standard_conditioning,
)


def cells(partition):
    return "  ".join("{" + ",".join(c) + "}" for c in partition.cells)


def interval(bounds):
    return "[%s, %s]" % bounds


def report(name, p):
    std = check_calibration(standard_conditioning(), p)
    print("%s:" % name)
    print("  classes of standard conditioning:",
          "  ".join("{" + ",".join(c.cell) + "}" for c in std.per_class))
    print("  standard calibrated:", std.calibrated,
          " semi-calibrated:", std.semi_calibrated)
    ign = check_calibration(ignore_rule(), p)
    print("  ignore calibrated:", ign.calibrated)
    part, _ = sharp_partition(p)
    print("  sharpest calibrated partition:", cells(part))


def main():
    coin = ProblemSpace(("H", "T"), ("H", "T"), ("H", "T"))
    two_coins = credal_set(
        coin,
        [
            [["0", "1/2"], ["1/2", "0"]],
            [["1/2", "0"], ["0", "1/2"]],
        ],
        convex=True,
    )
    print("-- two mirrored coins: observe one, bet on the other --")
    for row in dilation_report(two_coins).rows:
        posts = "  ".join("%s->%s" % (x, interval(b)) for x, b in row.posteriors)
        print("event {%s}: prior %s, posteriors %s, dilation: %s"
              % (",".join(row.event), interval(row.prior), posts, row.dilates))
    report("calibration", two_coins)

    print()
    print("-- fixed outcome marginal, footloose signal --")
    space = ProblemSpace(("0", "1"), ("0", "1"), ("0", "1"))
    footloose = credal_set(
        space,
        [
            [["1/2", "1/2"], ["0", "0"]],
            [["0", "1/2"], ["1/2", "0"]],
            [["1/2", "0"], ["0", "1/2"]],
            [["0", "0"], ["1/2", "1/2"]],
        ],
        convex=True,
    )
    report("calibration", footloose)
    print("  both signals yield the vacuous posterior, so they form one")
    print("  class; conditioning on the whole class gives the tight")
    print("  marginal instead, and calibration fails one way only")

    print()
    print("-- the signal determines the outcome --")
    telling = credal_set(
        space,
        [
            [["1", "0"], ["0", "0"]],
            [["0", "0"], ["0", "1"]],
        ],
        convex=True,
    )
    std = standard_conditioning()
    ign = ignore_rule()
    print("standard: calibrated %s, sharp %s" % (
        check_calibration(std, telling).calibrated,
        is_sharply_calibrated(std, telling).sharp))
    print("ignore:   calibrated %s, sharp %s" % (
        check_calibration(ign, telling).calibrated,
        is_sharply_calibrated(ign, telling).sharp))
    print("classes of standard conditioning:",
          cells(equivalence_classes(std, telling)))


if __name__ == "__main__":
    main()
