import pytest
from hypothesis import given, strategies as st

from isoper.errors import ParseError, UnknownSymbol
from isoper.words import Alphabet, Word, format_codes, parse_word, reduce, word_length, words_up_to

from oracles import all_words, naive_reduce

AB = Alphabet(("a", "b"))
codes = st.lists(st.sampled_from([1, -1, 2, -2]), max_size=20)


def test_parse_exponents_and_identity():
    assert parse_word("a^3 b^-1", AB).codes == (1, 1, 1, -2)
    assert parse_word("a b b^-1 a^-1", AB).codes == ()
    assert parse_word("1", AB).codes == ()
    assert str(parse_word("a a b^-2", AB)) == "a^2 b^-2"


@pytest.mark.parametrize("text", ["a^0", "a^", "a^x", "a^-0"])
def test_parse_rejects_bad_tokens(text):
    with pytest.raises(ParseError):
        parse_word(text, AB)


def test_unknown_symbol():
    with pytest.raises(UnknownSymbol):
        parse_word("c", AB)


def test_unreduced_word_rejected():
    with pytest.raises(ValueError):
        Word(AB, (1, -1))


def test_weighted_length():
    W = Alphabet(("a", "b"), (2, 3))
    w = reduce([("a", 1), ("b", -1), ("a", 1)], W)
    assert word_length(w) == 7
    assert word_length(W.identity()) == 0


def test_shortlex_puts_inverse_first():
    order = words_up_to(AB, 1)
    assert order == [(), (-1,), (1,), (-2,), (2,)]


@pytest.mark.parametrize("n", range(0, 7))
def test_words_up_to_matches_enumeration(n):
    got = words_up_to(AB, n)
    assert set(got) == all_words(2, n)
    assert len(got) == len(set(got))
    assert len(got) == 1 + sum(4 * 3 ** (k - 1) for k in range(1, n + 1))


def test_words_up_to_weighted():
    W = Alphabet(("a", "b"), (2, 1))
    got = words_up_to(W, 3)
    assert all(W.codes_length(w) <= 3 for w in got)
    assert (1, 2) in got and (1, 1) not in got


@given(codes)
def test_reduce_agrees_with_stack(cs):
    assert reduce(cs, AB).codes == naive_reduce(cs)


@given(codes, codes, codes)
def test_multiplication_associative(x, y, z):
    X, Y, Z = (reduce(c, AB) for c in (x, y, z))
    assert (X * Y) * Z == X * (Y * Z)


@given(codes)
def test_inverse(x):
    X = reduce(x, AB)
    assert (X * ~X).codes == ()
    assert ~~X == X
    assert word_length(~X) == word_length(X)


@given(codes)
def test_format_parse_round_trip(x):
    X = reduce(x, AB)
    assert parse_word(format_codes(X.codes, AB), AB) == X


@given(codes, st.integers(0, 4))
def test_power(x, n):
    X = reduce(x, AB)
    assert (X ** n) * (X ** -n) == AB.identity()
