"""Coset enumeration over the trivial subgroup."""

import pytest

from exotic4 import (
    DEFAULT_LIMIT,
    Completed,
    LimitExceeded,
    Presentation,
    certified_collapse,
    commutator,
    enumerate_cosets,
    gen,
    parse_relation,
    parse_word,
    tietze_simplify,
)


def pres(gens, *texts):
    return Presentation(tuple(gens), tuple(parse_relation(t) for t in texts))


S3 = pres(["a", "b"], "a^2", "b^2", "(a*b)^3")
Q8 = pres(["i", "j"], "i^4", "j^2 = i^2", "j^-1*i*j = i^-1")
Z5 = pres(["a"], "a^5")
FREE2 = Presentation(("a", "b"), ())


@pytest.mark.parametrize("strategy", ["hlt", "felsch"])
@pytest.mark.parametrize(
    "presentation,order",
    [(S3, 6), (Q8, 8), (Z5, 5), (pres(["a", "b"], "a", "b"), 1)],
    ids=["sym3", "quat8", "cyc5", "trivial"],
)
def test_finite_groups_enumerate_to_their_order(presentation, order, strategy):
    outcome = enumerate_cosets(presentation, strategy=strategy)
    assert outcome.completed
    assert outcome.result == Completed(order)
    assert outcome.index == order


def test_infinite_group_hits_the_limit():
    outcome = enumerate_cosets(FREE2, limit=500)
    assert not outcome.completed
    assert isinstance(outcome.result, LimitExceeded)
    assert outcome.result.cosets_used >= 500
    assert outcome.index is None


def test_limit_is_a_value_not_an_exception():
    # An undersized table on a finite group must also return LimitExceeded.
    outcome = enumerate_cosets(Q8, limit=3)
    assert isinstance(outcome.result, (Completed, LimitExceeded))
    assert not outcome.completed


def test_unknown_strategy_rejected():
    with pytest.raises(ValueError):
        enumerate_cosets(S3, strategy="bogus")


def test_index_invariant_under_renaming_and_relator_order():
    renamed = pres(["x", "y"], "x^2", "y^2", "(x*y)^3")
    shuffled = pres(["a", "b"], "(a*b)^3", "a^2", "b^2")
    for p in (renamed, shuffled):
        assert enumerate_cosets(p).index == 6


def test_index_invariant_under_tietze_simplification():
    # Presentations with removable generators still enumerate to the same
    # index after simplification.
    z6 = pres(["x", "y", "z"], "z = x*y", "x^2", "y^3", "[x, y]")
    before = enumerate_cosets(z6)
    after = enumerate_cosets(tietze_simplify(z6).presentation)
    assert before.completed and after.completed
    assert before.index == after.index == 6


def test_stats_are_recorded():
    outcome = enumerate_cosets(S3)
    assert outcome.stats.definitions >= outcome.index - 1
    assert outcome.stats.max_live >= outcome.index
    assert outcome.stats.coincidences >= 0
    assert outcome.stats.duration >= 0.0


def test_default_limit_is_a_million():
    assert DEFAULT_LIMIT == 1_000_000


def test_collapse_certificate_via_elimination_alone():
    result = certified_collapse(pres(["a", "b"], "a", "b"))
    assert result.certified
    assert result.presentation.generators == ()
    assert result.enumeration is None  # elimination already emptied it


def test_collapse_certificate_via_enumeration():
    # A balanced trivial-group presentation that generator elimination
    # cannot finish (every generator occurs repeatedly in each relator);
    # enumeration of the original presentation supplies the certificate.
    stubborn = pres(["x", "y"], "x^2 = y^3", "x*y*x = y*x*y")
    simplified = tietze_simplify(stubborn).presentation
    assert simplified.generators  # elimination alone cannot finish
    result = certified_collapse(stubborn)
    assert result.certified
    assert result.presentation.generators == ()
    assert result.enumeration is not None
    assert result.enumeration.index == 1


def test_collapse_refused_for_nontrivial_group():
    result = certified_collapse(S3)
    assert not result.certified
    assert result.enumeration.index == 6


def test_collapse_refused_when_limit_blocks():
    result = certified_collapse(FREE2, limit=200)
    assert not result.certified
    assert not result.enumeration.completed


def test_commutator_quotient_of_free_group():
    # Abelianized rank-2 free group modulo squares: Z/2 x Z/2.
    p = Presentation(
        ("a", "b"),
        (commutator(gen("a"), gen("b")), parse_word("a^2"), parse_word("b^2")),
    )
    assert enumerate_cosets(p).index == 4
