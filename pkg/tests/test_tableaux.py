import itertools
import json
from bisect import bisect_right

import pytest
from hypothesis import given, settings, strategies as st

from heapable.tableaux import (
    HeapTableau,
    Shape,
    TableauPairError,
    build_PQ,
    delete_max_standard,
    insert,
    invert_PQ,
    is_heap_tableau,
    is_standard,
    iter_build_PQ,
    lex_leq,
    shape_from_json,
    shape_of,
    shape_to_json,
    tableau_from_json,
    tableau_to_json,
    tableau_violations,
)

permutations_small = st.permutations(range(1, 8))


def nine_cell_tableau():
    return HeapTableau(2, {"": [2, 4, 8], "0": [11, 12, 13], "1": [6, 14], "10": [10]})


def test_nine_cell_tableau_is_valid():
    assert is_heap_tableau(nine_cell_tableau())


def test_insert_appends_to_root_vector():
    t, trace = insert(nine_cell_tableau(), 9)
    assert t.vectors[""] == [2, 4, 8, 9]
    assert trace.steps == []
    assert trace.final_address == ""
    assert not trace.created
    assert trace.path == [("", "appended")]


def test_insert_bump_chain_starts_new_vector():
    t, _ = insert(nine_cell_tableau(), 9)
    t, trace = insert(t, 7)
    assert t.vectors[""] == [2, 4, 7, 9]
    assert t.vectors["0"] == [8, 12, 13]
    assert t.vectors["00"] == [11]
    assert t.vectors["1"] == [6, 14]
    assert trace.steps == [("", 8), ("0", 11)]
    assert trace.final_address == "00"
    assert trace.created


def test_insert_into_empty():
    t, trace = insert(HeapTableau(2), 5)
    assert t.vectors == {"": [5]}
    assert trace.path == [("", "created")]


def test_insert_rejects_duplicates():
    with pytest.raises(ValueError, match="present"):
        insert(nine_cell_tableau(), 12)


def test_insert_leaves_input_untouched():
    t = nine_cell_tableau()
    insert(t, 9)
    assert t == nine_cell_tableau()


@given(perm=permutations_small, k=st.integers(1, 3))
@settings(max_examples=150, deadline=None)
def test_insert_preserves_invariants_and_trace_shape(perm, k):
    t = HeapTableau(k)
    for v in perm:
        before = t.n
        t, trace = insert(t, v)
        assert is_heap_tableau(t)
        assert t.n == before + 1
        # consecutive trace addresses descend one level at a time
        addresses = [a for a, _ in trace.steps] + [trace.final_address]
        for parent, child in zip(addresses, addresses[1:]):
            assert child[:-1] == parent
        displaced = [v for _, v in trace.steps]
        assert displaced == sorted(displaced)
        assert len(set(displaced)) == len(displaced)


def test_violations_reported():
    bad_heap = HeapTableau(2, {"": [2], "0": [1]})
    assert tableau_violations(bad_heap) == [("b", ("0", 1))]

    bad_column = HeapTableau(2, {"": [2, 2]})
    assert tableau_violations(bad_column) == [("c", ("", 2))]

    empty_vec = HeapTableau(2, {"": [1], "0": []})
    assert ("a", ("0", 0)) in tableau_violations(empty_vec)

    bad_digit = HeapTableau(2, {"": [1], "7": [2]})
    assert ("a", ("7", 0)) in tableau_violations(bad_digit)

    orphan_row = HeapTableau(2, {"": [1], "0": [2, 3]})
    assert tableau_violations(orphan_row) == [("b", ("0", 2))]


def test_lex_order_facts():
    assert lex_leq("", "10")
    assert lex_leq("0", "0")
    assert lex_leq("0", "01")
    assert lex_leq("0", "1")
    assert lex_leq("0", "10")
    assert lex_leq("10", "11")
    assert not lex_leq("01", "10")
    assert not lex_leq("10", "01")
    assert not lex_leq("001", "01")
    assert not lex_leq("1", "0")


def test_build_PQ_worked_example():
    P, Q = build_PQ([4, 2, 6, 3, 5, 1], 2)
    assert P.vectors == {"": [1, 3, 5], "0": [4, 6], "1": [2]}
    assert Q.vectors == {"": [1, 3, 5], "0": [2, 4], "1": [6]}
    assert is_standard(Q)
    assert not is_standard(P)


def test_build_PQ_identity_permutation():
    P, Q = build_PQ([1, 2, 3, 4], 2)
    assert P.vectors == {"": [1, 2, 3, 4]}
    assert Q.vectors == {"": [1, 2, 3, 4]}


def test_build_PQ_rejects_non_permutation():
    with pytest.raises(ValueError, match="permutation"):
        build_PQ([1, 3], 2)


def test_build_PQ_stepwise_shapes_and_standard():
    for P, Q, _ in iter_build_PQ([4, 2, 6, 3, 5, 1], 2):
        assert shape_of(P).lengths == shape_of(Q).lengths
        assert is_heap_tableau(Q)
        assert is_standard(Q)


@pytest.mark.parametrize("k", [2, 3])
def test_bijection_on_all_small_permutations(k):
    seen = set()
    for perm in itertools.permutations(range(1, 6)):
        P, Q = build_PQ(perm, k)
        assert is_standard(Q)
        assert shape_of(P).lengths == shape_of(Q).lengths
        seen.add((P.frozen(), Q.frozen()))
        assert invert_PQ(P, Q, k) == list(perm)
    assert len(seen) == 120


@pytest.mark.parametrize("k", [2, 3])
def test_bijection_exhaustive_length_seven(k):
    for perm in itertools.permutations(range(1, 8)):
        P, Q = build_PQ(perm, k)
        assert invert_PQ(P, Q, k) == list(perm)


def test_invert_worked_example():
    P = HeapTableau(2, {"": [1, 3, 5], "0": [4, 6], "1": [2]})
    Q = HeapTableau(2, {"": [1, 3, 5], "0": [2, 4], "1": [6]})
    assert invert_PQ(P, Q, 2) == [4, 2, 6, 3, 5, 1]


def test_invert_single_cell():
    assert invert_PQ(HeapTableau(2, {"": [7]}), HeapTableau(2, {"": [1]}), 2) == [7]


def test_invert_structured_errors():
    P = HeapTableau(2, {"": [1, 3]})
    Q = HeapTableau(2, {"": [1], "0": [2]})
    with pytest.raises(TableauPairError) as err:
        invert_PQ(P, Q, 2)
    assert err.value.cell is not None

    bad_q = HeapTableau(2, {"": [1, 7]})
    with pytest.raises(TableauPairError, match="standard"):
        invert_PQ(HeapTableau(2, {"": [3, 9]}), bad_q, 2)

    malformed = HeapTableau(2, {"": [2, 1]})
    with pytest.raises(TableauPairError, match="malformed"):
        invert_PQ(malformed, HeapTableau(2, {"": [1, 2]}), 2)


def test_invert_unwinding_failure_names_cell():
    # valid pair outside the bijection's image: after unwinding 4 and 3,
    # the root vector holds only values above the next chain value
    p = HeapTableau(2, {"": [1, 2], "0": [3], "1": [4]})
    q = HeapTableau(2, {"": [1, 4], "0": [2], "1": [3]})
    assert is_heap_tableau(p) and is_standard(q)
    with pytest.raises(TableauPairError, match="no element below") as err:
        invert_PQ(p, q, 2)
    assert err.value.cell == ("", 1)


def test_delete_max_standard():
    Q = HeapTableau(2, {"": [1, 3, 5], "0": [2, 4], "1": [6]})
    reduced = delete_max_standard(Q)
    assert reduced.vectors == {"": [1, 3, 5], "0": [2, 4]}
    assert is_standard(reduced)

    assert delete_max_standard(HeapTableau(2, {"": [1]})).vectors == {}

    with pytest.raises(ValueError, match="standard"):
        delete_max_standard(HeapTableau(2, {"": [2]}))


@given(perm=permutations_small, k=st.integers(2, 3))
@settings(max_examples=100, deadline=None)
def test_delete_max_keeps_standard(perm, k):
    _, q = build_PQ(list(perm), k)
    while q.n:
        q = delete_max_standard(q)
        assert is_standard(q)


def test_is_standard_requires_exact_labels():
    assert is_standard(HeapTableau(2, {"": [1]}))
    assert not is_standard(HeapTableau(2, {"": [2]}))
    assert not is_standard(HeapTableau(2, {"": [1, 1]}))
    # right child labelled before the left sibling exists
    assert not is_standard(HeapTableau(2, {"": [1, 2], "1": [3]}))


def _column_insert_oracle(perm):
    """Independent column-insertion on a plain list of columns."""
    columns: list[list[int]] = []
    for x in perm:
        col = 0
        while True:
            if col == len(columns):
                columns.append([x])
                break
            vec = columns[col]
            if x > vec[-1]:
                vec.append(x)
                break
            j = bisect_right(vec, x)
            vec[j], x = x, vec[j]
            col += 1
    return columns


@given(perm=st.permutations(range(1, 7)))
@settings(max_examples=200, deadline=None)
def test_arity_one_matches_column_insertion(perm):
    P, _ = build_PQ(list(perm), 1)
    columns = _column_insert_oracle(perm)
    assert P.vectors == {"0" * i: col for i, col in enumerate(columns)}
    # columns of a standard-shape diagram: lengths never grow, rows increase
    lengths = [len(c) for c in columns]
    assert lengths == sorted(lengths, reverse=True)
    for left, right in zip(columns, columns[1:]):
        for row, v in enumerate(right):
            assert left[row] < v


def test_json_round_trip():
    t = nine_cell_tableau()
    text = tableau_to_json(t)
    assert tableau_from_json(text) == t
    assert json.loads(text)["vectors"]["10"] == [10]
    # canonical address order: by length, then lexicographic
    assert list(json.loads(text)["vectors"]) == ["", "0", "1", "10"]

    s = shape_of(t)
    assert shape_from_json(shape_to_json(s)) == s
    assert json.loads(shape_to_json(s)) == {"k": 2, "lengths": {"": 3, "0": 3, "1": 2, "10": 1}}


def test_shape_validation():
    Shape(2, {"": 2, "0": 1}).validate()
    with pytest.raises(ValueError, match="parent"):
        Shape(2, {"": 2, "00": 1}).validate()
    with pytest.raises(ValueError, match="longer"):
        Shape(2, {"": 1, "0": 2}).validate()
    with pytest.raises(ValueError, match="alphabet"):
        Shape(2, {"": 1, "3": 1}).validate()
    with pytest.raises(ValueError, match="positive"):
        Shape(2, {"": 0}).validate()
