import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from siegelfj.linalg import CoeffVector, combine, echelonize, in_rowspace, nullspace, rank

ORDER = tuple(range(8))
rows_strategy = st.lists(
    st.dictionaries(st.sampled_from(ORDER), st.fractions(max_denominator=20).filter(bool),
                    max_size=5),
    max_size=7,
)


def _is_rref(basis):
    pos = {k: i for i, k in enumerate(basis.order)}
    last = -1
    for row, p in zip(basis.rows, basis.pivots):
        assert row[p] == 1
        assert min(pos[k] for k in row) == pos[p]
        assert pos[p] > last
        last = pos[p]
        for other in basis.rows:
            if other is not row:
                assert other.get(p, 0) == 0
    return True


def test_coeff_vector_drops_zeros():
    v = CoeffVector({"a": 1, "b": 0, "c": Fraction(0)})
    assert dict(v) == {"a": 1}
    assert (v - v).is_zero()
    assert v.get("b") == 0
    assert (v + CoeffVector({"b": 2})).scale(Fraction(1, 2)) == CoeffVector({"a": Fraction(1, 2), "b": 1})


def test_dependent_pair():
    b = echelonize([{"a": 1, "b": 2}, {"a": 2, "b": 4}], ["a", "b"])
    assert b.rank == 1
    assert b.rows == (CoeffVector({"a": 1, "b": 2}),)


def test_empty_input():
    b = echelonize([], ["a", "b"])
    assert b.rank == 0 and b.rows == () and b.pivots == ()


def test_identity_has_trivial_nullspace():
    assert nullspace([{"x": 1}, {"y": 1}], ["x", "y"]).rank == 0


def test_symmetry_prototype_nullspace():
    ns = nullspace([{"x": 1, "y": -1}], ["x", "y"])
    assert ns.rows == (CoeffVector({"x": 1, "y": 1}),)


def test_random_five_by_eight():
    rng = random.Random(20261019)
    unknowns = [f"u{i}" for i in range(8)]
    mat = [{u: Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for u in unknowns} for _ in range(5)]
    ns = nullspace(mat, unknowns)
    assert rank(mat, unknowns) + ns.rank == 8
    for v in ns.rows:
        for row in mat:
            assert CoeffVector(row).dot(v) == 0


def test_membership_examples():
    b = echelonize([{0: 1, 1: 2}, {1: 1, 2: 3}, {3: 5}], ORDER)
    ok, witness = in_rowspace(CoeffVector(), b)
    assert ok and all(c == 0 for c in witness)
    s = b.rows[0] + b.rows[2]
    ok, witness = in_rowspace(s, b)
    assert ok and combine(witness, b.rows) == s
    outside = b.rows[1] + CoeffVector({7: 1})
    assert in_rowspace(outside, b) == (False, None)


def test_unknown_index_rejected():
    with pytest.raises(ValueError):
        echelonize([{"z": 1}], ["a"])
    with pytest.raises(ValueError):
        echelonize([], ["a", "a"])


@settings(max_examples=150, deadline=None)
@given(rows_strategy)
def test_echelonize_properties(rows):
    basis = echelonize(rows, ORDER)
    assert _is_rref(basis)
    # idempotent
    assert echelonize(basis.rows, ORDER) == basis
    # same span
    for row in rows:
        ok, witness = in_rowspace(row, basis)
        assert ok and combine(witness, basis.rows) == CoeffVector(row)
    for row in basis.rows:
        assert in_rowspace(row, echelonize(rows[::-1], ORDER))[0]


@settings(max_examples=100, deadline=None)
@given(rows_strategy, st.randoms(use_true_random=False))
def test_deterministic_under_row_permutation(rows, rnd):
    shuffled = list(rows)
    rnd.shuffle(shuffled)
    assert echelonize(shuffled, ORDER) == echelonize(rows, ORDER)


@settings(max_examples=150, deadline=None)
@given(rows_strategy)
def test_nullspace_annihilates(rows):
    ns = nullspace(rows, ORDER)
    assert _is_rref(ns)
    assert ns.rank + rank(rows, ORDER) == len(ORDER)
    for v in ns.rows:
        for row in rows:
            assert CoeffVector(row).dot(v) == 0
