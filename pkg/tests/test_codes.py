import pytest
from hypothesis import given, strategies as st

from lucastile.codes import (
    CodeSet,
    as_residue_vector,
    circulant_rows,
    enumerate_U,
    filter_even_threes,
    filter_odd_zeros,
    independent_sets,
    lagarias_shor_code,
    lagarias_shor_matrix,
    pack_word,
    subset_row_sums,
    transpose,
    unpack_word,
)
from lucastile.errors import UsageError
from lucastile.lucas import lucas_number, lucas_vertices
from oracles import (
    A5_DISPLAY,
    U3_FIGURE,
    U5_DISPLAY,
    all_subsets,
    brute_independent_sets,
    circ_rows,
    sum_rows_mod4,
)


def words(*strings):
    return {tuple(int(c) for c in s) for s in strings}


def test_circulant_rows_n3_matches_figure_vectors():
    assert set(circulant_rows(3, (1, 2, 0)).rows) == U3_FIGURE
    assert circulant_rows(3, (1, 2, 0)).rows == ((1, 2, 0), (0, 1, 2), (2, 0, 1))


def test_circulant_rows_n5_is_displayed_matrix():
    assert list(lagarias_shor_matrix(5).rows) == A5_DISPLAY


def test_circulant_rows_single():
    assert circulant_rows(1, (1,)).rows == ((1,),)


def test_circulant_rows_dimension_mismatch():
    with pytest.raises(UsageError):
        circulant_rows(4, (1, 2, 0))


def test_residue_vector_rejects_out_of_range():
    with pytest.raises(UsageError):
        as_residue_vector((0, 4))


def test_transpose():
    assert transpose(lagarias_shor_matrix(3)).rows == ((1, 0, 2), (2, 1, 0), (0, 2, 1))
    assert transpose(circulant_rows(1, (1,))).rows == ((1,),)
    a5 = lagarias_shor_matrix(5)
    assert transpose(transpose(a5)) == a5


@pytest.mark.parametrize("n", [1, 3, 5, 7])
def test_transpose_is_circulant_with_first_column(n):
    a = lagarias_shor_matrix(n)
    t = transpose(a)
    assert t == circulant_rows(n, tuple(r[0] for r in a.rows))


def test_subset_row_sums_n3():
    assert subset_row_sums(lagarias_shor_matrix(3)).as_set() == words(
        "000", "120", "012", "201", "132", "321", "213", "333")


def test_subset_row_sums_single_row():
    assert subset_row_sums(circulant_rows(1, (1,))).as_set() == {(0,), (1,)}


@pytest.mark.parametrize("n", [3, 5, 7])
def test_subset_row_sums_against_enumeration(n):
    a = lagarias_shor_matrix(n)
    expected = {sum_rows_mod4(circ_rows(n), s) for s in all_subsets(n)}
    got = subset_row_sums(a)
    assert got.as_set() == expected
    assert (0,) * n in got
    assert len(got) == 2 ** n


def test_filters():
    va = subset_row_sums(lagarias_shor_matrix(3))
    assert filter_even_threes(va).as_set() == words("000", "120", "012", "201")
    vat = subset_row_sums(transpose(lagarias_shor_matrix(3)))
    assert filter_odd_zeros(vat).as_set() == words("000", "102", "210", "021")
    assert len(filter_even_threes(CodeSet(2, ()))) == 0
    assert filter_even_threes(CodeSet.from_words(2, [(3, 3)])).words == ((3, 3),)
    assert len(filter_odd_zeros(CodeSet.from_words(2, [(1, 1)]))) == 0
    assert filter_odd_zeros(CodeSet.from_words(2, [(0, 1)])).words == ((0, 1),)


def test_lagarias_shor_code_n3():
    assert lagarias_shor_code(3).as_set() == words(
        "000", "120", "012", "201", "222", "320", "032", "203")


@pytest.mark.parametrize("n", [3, 5, 7, 9, 11])
def test_lagarias_shor_code_size(n):
    assert len(lagarias_shor_code(n)) == 2 ** n


@pytest.mark.parametrize("n", [4, 1, 2, -3])
def test_lagarias_shor_code_rejects(n):
    with pytest.raises(UsageError):
        lagarias_shor_code(n)


def test_enumerate_U_paper_values():
    assert enumerate_U(3).as_set() == U3_FIGURE
    assert enumerate_U(5).as_set() == set(U5_DISPLAY)
    assert len(enumerate_U(7)) == 28


def test_enumerate_U_rejects_even():
    with pytest.raises(UsageError):
        enumerate_U(6)


@pytest.mark.parametrize("n", [3, 5, 7, 9])
def test_enumerate_U_against_enumeration(n):
    rows = circ_rows(n)
    expected = {sum_rows_mod4(rows, sorted(s)) for s in brute_independent_sets(n, True) if s}
    assert enumerate_U(n).as_set() == expected
    assert (0,) * n not in enumerate_U(n)


def test_independent_sets_examples():
    f = frozenset
    assert independent_sets(3, True) == {f(), f({1}), f({2}), f({3})}
    assert independent_sets(4, True) == {f(), f({1}), f({2}), f({3}), f({4}), f({1, 3}), f({2, 4})}
    assert independent_sets(2, False) == {f(), f({1}), f({2})}


@pytest.mark.parametrize("n", range(1, 11))
@pytest.mark.parametrize("cyclic", [True, False])
def test_independent_sets_brute_force(n, cyclic):
    assert independent_sets(n, cyclic) == brute_independent_sets(n, cyclic)


@pytest.mark.parametrize("n", [3, 5, 7, 9, 11, 13])
def test_U_plus_zero_counts_lucas_number(n):
    assert len(enumerate_U(n)) + 1 == lucas_number(n) == len(lucas_vertices(n))


@pytest.mark.parametrize("n", [3, 5, 7, 9, 11])
def test_two_to_zero_substitution_gives_lucas_vertices(n):
    subst = {tuple(0 if e == 2 else e for e in w) for w in enumerate_U(n).words}
    assert subst | {(0,) * n} == lucas_vertices(n)


def test_code_words_are_canonically_ordered():
    code = lagarias_shor_code(7)
    assert list(code.words) == sorted(code.words)


@given(st.lists(st.integers(0, 3), min_size=1, max_size=31))
def test_pack_roundtrip(word):
    assert unpack_word(pack_word(word), len(word)) == tuple(word)


@given(st.integers(1, 6), st.data())
def test_packed_array_matches_pack_word(n, data):
    ws = data.draw(st.lists(st.tuples(*[st.integers(0, 3)] * n), min_size=1, max_size=20))
    code = CodeSet.from_words(n, ws)
    assert code.packed().tolist() == [pack_word(w) for w in code.words]
