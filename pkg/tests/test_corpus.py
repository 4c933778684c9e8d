from fractions import Fraction

import pytest

from credal.corpus import (
    CorpusError,
    _parse_case,
    corpus_ids,
    load_case,
    load_corpus,
    run_case,
)
from credal.problemfile import (
    ProblemFileError,
    parse_problem_file,
    render_problem_file,
)

F = Fraction

EXPECTED_IDS = {
    "example-2.1",
    "example-2.1-ext",
    "example-4.2",
    "example-4.3",
    "example-4.5",
    "example-4.6",
    "monty-hall",
    "monty-hall-eps",
    "walley-two-coins",
    "example-6.5",
    "example-6.6",
    "example-6.7",
}


def test_corpus_ids():
    assert set(corpus_ids()) == EXPECTED_IDS
    assert len(load_corpus()) == len(EXPECTED_IDS)


def test_door_game_vertices_exact():
    case = load_case("monty-hall")
    assert case.file.x_labels == ("G2", "G3")
    assert case.file.generators == (
        ((F(1, 3), F(0), F(1, 3)), (F(0), F(1, 3), F(0))),
        ((F(0), F(0), F(1, 3)), (F(1, 3), F(1, 3), F(0))),
    )
    assert case.file.convex


def test_mirror_pair_generators_exact():
    case = load_case("example-4.2")
    assert case.file.generators == (
        ((F(1, 3), F(1, 6)), (F(1, 3), F(1, 6))),
        ((F(1, 6), F(1, 3)), (F(1, 6), F(1, 3))),
    )
    assert not case.file.convex
    assert case.file.loss is None


def test_quadruple_generators_exact():
    case = load_case("example-6.5")
    assert case.file.generators == (
        ((F(1, 4), F(1, 4)), (F(1, 4), F(1, 4))),
        ((F(1, 8), F(3, 8)), (F(1, 8), F(3, 8))),
        ((F(1, 4), F(1, 4)), (F(1, 8), F(3, 8))),
        ((F(1, 8), F(3, 8)), (F(1, 4), F(1, 4))),
    )


@pytest.mark.parametrize("case_id", sorted(EXPECTED_IDS))
def test_expectations_replay(case_id):
    case = load_case(case_id)
    result = run_case(case)
    bad = [
        "%s %s: expected %r, got %r" % (r.op, dict(r.args), r.expected, r.actual)
        for r in result.results
        if not r.ok
    ]
    assert not bad, "\n".join(bad)


def test_every_expectation_documents_its_oracle():
    for case in load_corpus():
        for exp in case.expectations:
            assert exp.note, "%s: %s lacks a note" % (case.id, exp.op)


def test_unknown_case_is_named():
    with pytest.raises(CorpusError, match="no-such-case"):
        load_case("no-such-case")


def test_id_mismatch_is_rejected():
    import credal.corpus as corpus_mod

    raw = corpus_mod.corpus_text("example-4.2").replace(
        '"id": "example-4.2"', '"id": "other"'
    )
    with pytest.raises(CorpusError, match="example-4.2"):
        _parse_case("example-4.2", raw)


def test_problem_file_roundtrip_on_corpus():
    for case in load_corpus():
        text = render_problem_file(case.file)
        assert parse_problem_file(text) == case.file


def test_credal_only_case_refuses_problem():
    with pytest.raises(ProblemFileError, match="loss"):
        load_case("example-6.7").problem()
