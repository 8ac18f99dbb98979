"""Free-group words: reduction, algebra, and the text syntax."""

import random

import pytest

from exotic4 import Word, commutator, gen, parse_relation, parse_word, relator
from exotic4.words import WordSyntaxError

from _oracles import flat_letters, random_syllables, stack_reduce


a, b = gen("a"), gen("b")


def test_power_cancellation_gives_identity():
    w = a ** 3 * a ** -3
    assert w.is_identity()
    assert w.length == 0
    assert str(w) == "1"


def test_commutator_expands_to_length_four():
    w = commutator(a, b)
    assert w.syllables == (("a", -1), ("b", -1), ("a", 1), ("b", 1))
    assert w.length == 4


def test_product_inverse_reverses_factors():
    assert (a * b).inverse() == b.inverse() * a.inverse()
    w = parse_word("a^2*b^-3*a")
    assert (w * w.inverse()).is_identity()
    assert w.inverse().inverse() == w


def test_parse_squared_commutator_times_inverse_generator():
    w = parse_word("[b2, c1^-1]^2 * d1^-1")
    assert w.length == 9
    assert w.syllables == (
        ("b2", -1), ("c1", 1), ("b2", 1), ("c1", -1),
        ("b2", -1), ("c1", 1), ("b2", 1), ("c1", -1),
        ("d1", -1),
    )


def test_parse_grouping_and_powers():
    assert parse_word("(a*b)^2") == a * b * a * b
    assert parse_word("(a*b)^-1") == b.inverse() * a.inverse()
    assert parse_word("1") == Word()
    assert parse_word("a^0") == Word()


def test_relation_becomes_left_times_right_inverse():
    assert parse_relation("x = y") == relator(gen("x"), gen("y"))
    assert parse_relation("x = y") == gen("x") * gen("y").inverse()
    # a bare word is already a relator
    assert parse_relation("x*y") == gen("x") * gen("y")


@pytest.mark.parametrize(
    "text",
    ["", "a^", "[a,", "(a", ")", "a**b", "a^x", "[a b]", "a = b = c", "= a", "a^1.5"],
)
def test_syntax_errors_carry_a_column(text):
    with pytest.raises(WordSyntaxError) as err:
        parse_relation(text)
    assert "column" in str(err.value)
    assert err.value.pos >= 0


def test_reduction_matches_letter_stack_oracle():
    rng = random.Random(20240815)
    names = ["a", "b", "c"]
    for _ in range(300):
        sylls = random_syllables(rng, names, rng.randint(0, 12))
        w = Word()
        for name, exp in sylls:
            w = w * gen(name) ** exp
        assert flat_letters(w.syllables) == stack_reduce(flat_letters(sylls))


def test_reduction_is_idempotent():
    rng = random.Random(7)
    names = ["a", "b"]
    for _ in range(200):
        sylls = random_syllables(rng, names, rng.randint(0, 10))
        w = Word()
        for name, exp in sylls:
            w = w * gen(name) ** exp
        assert Word(w.syllables) == w


def test_str_parse_round_trip():
    rng = random.Random(99)
    names = ["a1", "b1", "ct", "d3"]
    for _ in range(200):
        sylls = random_syllables(rng, names, rng.randint(0, 8))
        w = Word()
        for name, exp in sylls:
            w = w * gen(name) ** exp
        assert parse_word(str(w)) == w


def test_powers_and_conjugates():
    w = parse_word("a*b^-1")
    assert w ** 0 == Word()
    assert w ** -2 == (w.inverse()) ** 2
    assert w.conjugate(gen("c")) == parse_word("c^-1*a*b^-1*c")


def test_cyclic_reduction_strips_conjugating_frame():
    assert parse_word("a*b*a^-1").cyclically_reduced() == b
    w = commutator(a, b)
    assert w.cyclically_reduced().length == w.length


def test_substitution_rewrites_each_occurrence():
    w = parse_word("a*b*a^-1")
    rewritten = w.substitute("a", parse_word("c*d"))
    assert rewritten == parse_word("c*d*b*d^-1*c^-1")
    unchanged = w.substitute("z", parse_word("c"))
    assert unchanged == w


def test_symbols_lists_every_generator_used():
    w = parse_word("[a, b]^2 * c")
    assert w.symbols() == {"a", "b", "c"}


def test_words_hash_and_compare_by_reduced_form():
    assert hash(a * b * b.inverse()) == hash(a)
    assert a * b != b * a
    assert len({a * b, a * b, b * a}) == 2
