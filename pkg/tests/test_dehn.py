import pytest

from isoper.dehn import (AreaSearcher, SearchBudget, area_search, catalog_presentation, check_gersten_bound,
                         dehn_table, evaluate_expression, null_words, parse_presentation_text,
                         weighted_area_search)
from isoper.errors import BudgetExceeded, EmptyRelator, ParseError, UncertifiedSample
from isoper.words import parse_word

from oracles import all_words, conjugates, naive_reduce, z2_winding_area

Z2_TEXT = """
# commuting pair
[generators]
a
b 1
[relators]
a b a^-1 b^-1
[model]
z2
"""


def test_parse_presentation(z2):
    P = parse_presentation_text(Z2_TEXT, "z2")
    assert P.relators == z2.relators
    assert P.M == 4
    assert parse_presentation_text(P.format()).relators == P.relators


@pytest.mark.parametrize("text,line,column", [
    ("[generators]\na 0\n", 2, 3),
    ("[generators]\na x\n", 2, 3),
    ("[generators]\na\n[relators]\na^0\n", 4, 1),
    ("[generators]\na\n[relators]\na b\n", 4, None),
    ("[genera\n", 1, 1),
    ("a\n", 1, 1),
])
def test_parse_errors_carry_position(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_presentation_text(text)
    assert info.value.line == line
    if column is not None:
        assert info.value.column == column


def test_empty_relator():
    with pytest.raises(EmptyRelator):
        parse_presentation_text("[generators]\na\n[relators]\na a^-1\n")


def test_null_words_z2(z2):
    words = null_words(z2, 4)
    assert words[0] == ()
    # the 8 rotations and inverses of the commutator
    assert len([w for w in words if len(w) == 4]) == 8


def test_area_of_commutator(z2):
    res = area_search(z2, parse_word("a b a^-1 b^-1", z2.alphabet))
    assert res.count == 1 and res.certified
    assert res.weighted_cost == 4
    assert evaluate_expression(res.expression, z2).codes == (1, 2, -1, -2)


def test_area_expression_replays(z2, z2_searcher):
    for w in null_words(z2, 8)[1:40]:
        res = z2_searcher.search(w)
        assert evaluate_expression(res.expression, z2).codes == w


def test_per_word_area_matches_winding(z2, z2_searcher):
    for w in null_words(z2, 6):
        res = z2_searcher.search(w)
        assert res.certified
        assert res.count == z2_winding_area(w), w


def test_area_two_against_brute_force(z2):
    y = z2.alphabet.parse("a^2 b a^-2 b^-1").codes
    rels = [r.codes for r in z2.relators]
    one = conjugates(rels, 4, 2)
    assert y not in one
    two = conjugates(rels, 2, 2)
    assert any(naive_reduce(u + v) == y for u in two for v in two)
    assert area_search(z2, y).count == 2


def test_free_group_areas_are_zero():
    P = catalog_presentation("free2")
    table = dehn_table(P, 6)
    assert [s.value for s in table] == [0] * 7
    assert table[6].words_checked == 1


def test_weighted_area(z2):
    y = z2.alphabet.parse("a^2 b a^-2 b^-1")
    res = weighted_area_search(z2, y)
    assert res.weighted_cost == 10 and res.certified


def test_dehn_table_values(z2):
    table = dehn_table(z2, 6)
    assert [s.value for s in table] == [0, 0, 0, 0, 1, 1, 2]
    assert all(s.certified for s in table)
    assert str(table[4].witness) == "a^-1 b^-1 a b"


def test_budget_marks_uncertified(z2):
    tight = SearchBudget(max_states=10)
    table = dehn_table(z2, 6, tight)
    assert not table[6].certified and table[6].partial


def test_search_raises_on_budget(z2):
    with pytest.raises(BudgetExceeded):
        area_search(z2, z2.alphabet.parse("a^3 b^3 a^-3 b^-3"), SearchBudget(max_count=2))


def test_non_null_word_rejected(z2):
    with pytest.raises(Exception):
        area_search(z2, z2.alphabet.parse("a b"))


def test_gersten_rows(z2):
    f = dehn_table(z2, 6)
    fp = dehn_table(z2, 6, weighted=True)
    rows = check_gersten_bound([(n, f[n], fp[n]) for n in (4, 6)], z2.M)
    assert [r.f for r in rows] == [1, 2]
    # each relator costs at least M
    assert all(r.f_prime >= z2.M * r.f for r in rows)
    assert all(r.holds for r in rows)
    with pytest.raises(UncertifiedSample):
        check_gersten_bound([(4, 1, 4, False)], z2.M)


def test_gersten_formula():
    (row,) = check_gersten_bound([(8, 4, 40)], 4)
    assert row.bound == 2 * 4 * 16 + (16 + 4) * 4
    assert row.slack == row.bound - 40


def test_weighted_cost_needs_long_conjugator(z2):
    # no conjugator of length <= 1 produces this rotation of the relator
    y = (-1, -2, 1, 2)
    r = z2.relators[0].codes
    assert y not in conjugates([r], 1, 2) and y in conjugates([r], 2, 2)
    assert weighted_area_search(z2, y).weighted_cost == 4 + 2 * 2
