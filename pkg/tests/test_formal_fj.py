import random
from fractions import Fraction
from math import gcd, isqrt

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles_ref import e8_theta_index_one
from siegelfj.errors import (
    PrecisionCapError, PrecisionError, SymmetryError, UnsupportedWeightError,
)
from siegelfj.formal_fj import (
    FormalFJTruncation, build_symmetry_system, compute_siegel_space, extract_siegel_fourier,
    index_set_siegel, precision_floor, reduce_form, reduced_universe, solve_fm_space,
)
from siegelfj.jacobi import JacobiExpansion, jacobi_basis
from siegelfj.linalg import CoeffVector, echelonize, in_rowspace, rank
from siegelfj.oracles import dim_siegel_even


def test_index_set_siegel():
    prec = 4
    s = index_set_siegel(prec)
    brute = [(n, r, m) for m in range(prec) for n in range(prec)
             for r in range(-10, 11) if 4 * n * m >= r * r]
    assert list(s) == brute
    assert (1, 3, 1) not in s and (1, 2, 1) in s
    assert len(index_set_siegel(1)) == 1


def test_precision_floor():
    assert precision_floor(4) == 2
    assert precision_floor(10) == 3
    assert precision_floor(20) == 4
    for k in range(0, 120, 2):
        b = precision_floor(k)
        assert b > k / 10
        assert all(12 * (b - 1) > k + 2 * m for m in range(b))


@given(st.integers(0, 30), st.integers(-40, 40), st.integers(0, 30))
def test_reduce_form_properties(n, r, m):
    if 4 * n * m < r * r:
        with pytest.raises(ValueError):
            reduce_form(n, r, m)
        return
    a, b, c = reduce_form(n, r, m)
    assert 0 <= b <= a <= c
    assert 4 * a * c - b * b == 4 * n * m - r * r
    assert gcd(a, b, c) == gcd(n, r, m)
    assert reduce_form(a, b, c) == (a, b, c)


@given(st.integers(0, 6), st.integers(0, 6), st.integers(0, 6),
       st.lists(st.sampled_from(["S", "T", "Ti", "N"]), max_size=8))
def test_reduce_form_is_a_class_invariant(n, r, m, moves):
    if not (0 <= r <= n <= m) or 4 * n * m < r * r:
        return
    key = reduce_form(n, r, m)
    a, b, c = n, r, m
    for move in moves:
        # U^T [[a, b/2], [b/2, c]] U for generators of GL_2(Z)
        if move == "S":
            a, b, c = c, -b, a
        elif move == "T":
            a, b, c = a, b + 2 * a, a + b + c
        elif move == "Ti":
            a, b, c = a, b - 2 * a, a - b + c
        else:
            b = -b
    assert reduce_form(a, b, c) == key


def test_reduced_universe_order():
    u = reduced_universe(3)
    assert u == ((0, 0, 0), (0, 0, 1), (1, 0, 1), (1, 1, 1),
                 (0, 0, 2), (1, 0, 2), (1, 1, 2), (2, 0, 2), (2, 1, 2), (2, 2, 2))


def _bases(k, prec):
    return [jacobi_basis(k, m, prec) for m in range(prec)]


def test_symmetry_system_shape():
    system = build_symmetry_system(10, _bases(10, 3))
    assert system.unknowns[0][0] == 0 and system.unknowns == tuple(sorted(system.unknowns))
    for row in system.rows:
        assert row and len({m for m, _ in row}) <= 2


def test_symmetry_rank_against_bruteforce_enumeration():
    k, prec = 10, 3
    bases = _bases(k, prec)
    system = build_symmetry_system(k, bases)
    # every (m, n, r) with m != n and any r in a generous window
    elements = [jb.elements() for jb in bases]
    rows = []
    for m in range(prec):
        for n in range(prec):
            for r in range(-3 * prec, 3 * prec + 1):
                row = {}
                for i, e in enumerate(elements[m]):
                    row[(m, i)] = row.get((m, i), 0) + e.coefficient(n, r)
                for j, e in enumerate(elements[n]):
                    row[(n, j)] = row.get((n, j), 0) - e.coefficient(m, r)
                rows.append(row)
    assert rank(system.rows, system.unknowns) == rank(rows, system.unknowns)


def test_symmetry_system_rejects_mismatched_bases():
    with pytest.raises(ValueError):
        build_symmetry_system(10, [jacobi_basis(10, 0, 3), jacobi_basis(10, 2, 3)])
    with pytest.raises(PrecisionError):
        build_symmetry_system(10, [jacobi_basis(10, 0, 3), jacobi_basis(10, 1, 4),
                                   jacobi_basis(10, 2, 3)])


@pytest.mark.parametrize("k, prec, dim", [(4, 2, 1), (0, 2, 1), (0, 4, 1), (12, 3, 3)])
def test_solve_fm_space_examples(k, prec, dim):
    assert solve_fm_space(k, prec).dimension == dim


def test_weight_zero_is_the_constant():
    (const,) = solve_fm_space(0, 3).siegel_elements()
    assert dict(const.coeffs) == {(0, 0, 0): 1}


@pytest.mark.parametrize("k, dim", [(2, 0), (4, 1), (10, 2), (20, 5), (24, 8)])
def test_compute_siegel_space(k, dim):
    fm, prec = compute_siegel_space(k)
    assert fm.dimension == dim == dim_siegel_even(k)
    assert prec >= precision_floor(k)


def test_precision_cap():
    with pytest.raises(PrecisionCapError) as info:
        compute_siegel_space(30, max_precision=3)
    assert "30" in str(info.value)
    with pytest.raises(PrecisionError):
        compute_siegel_space(30, start=2)


@pytest.mark.parametrize("bad", [7, -2, Fraction(9, 2), 3.0])
def test_unsupported_weights(bad):
    with pytest.raises(UnsupportedWeightError):
        solve_fm_space(bad, 3)


@pytest.mark.parametrize("k", [4, 6, 10, 12, 16, 20])
def test_monotone_inclusion(k):
    low = precision_floor(k)
    small = solve_fm_space(k, low).expansion_basis()
    for e in solve_fm_space(k, low + 1).elements():
        assert in_rowspace(e.truncate(low).to_vector(), small)[0]


@pytest.mark.parametrize("k", range(0, 27, 2))
def test_symmetry_and_determination(k):
    fm, prec = compute_siegel_space(k)
    assert all(m <= k // 10 for m in fm.pivot_indices())
    for e in fm.elements():
        assert e.symmetry_violations() == []
        sf = extract_siegel_fourier(e)
        assert sf.coefficient(0, 0, 0) == e.coefficient(0, 0, 0)
        if prec > 1:
            assert sf.coefficient(1, 0, 1) == e.components[1].coefficient(1, 0)


def test_siegel_eisenstein_weight_four():
    # E4 = 1 + 240 * (Maass lift of E_{4,1}); E_{4,1} from the E8 lattice theta series
    prec = 3
    fm, b = compute_siegel_space(4, start=prec)
    (sf,) = fm.siegel_elements()
    e41 = e8_theta_index_one((prec - 1) ** 2 + 1)

    def e(n, r):
        return e41.get((n, r), 0)

    for n, r, m in reduced_universe(prec):
        g = gcd(n, r, m)
        expected = 1 if g == 0 else 240 * sum(d ** 3 * e(n * m // (d * d), r // d)
                                               for d in range(1, g + 1) if g % d == 0)
        assert sf.coefficient(n, r, m) == expected
    assert sf.coefficient(1, 1, 1) == 13440 and sf.coefficient(1, 0, 1) == 30240


def test_extract_detects_asymmetry():
    fm = solve_fm_space(10, 3)
    e = fm.elements()[0]
    comps = list(e.components)
    phi = comps[2]
    bumped = dict(phi.coeffs)
    bumped[(1, 1)] = bumped.get((1, 1), 0) + 1
    comps[2] = JacobiExpansion(phi.weight, 2, phi.precision, CoeffVector(bumped))
    broken = FormalFJTruncation(e.weight, e.precision, tuple(comps))
    assert broken.symmetry_violations()
    with pytest.raises(SymmetryError):
        extract_siegel_fourier(broken)


def test_siegel_basis_is_canonical():
    fm, _ = compute_siegel_space(12)
    basis = fm.siegel_basis()
    assert basis == echelonize(list(basis.rows)[::-1], reduced_universe(fm.precision))
    rng = random.Random(5)
    mix = [sum((row.scale(rng.randint(1, 9)) for row in basis.rows), CoeffVector())
           for _ in range(basis.rank)] + list(basis.rows)
    assert echelonize(mix, basis.order) == basis


def test_provider_is_used():
    calls = []

    def provider(k, m, prec):
        calls.append((k, m, prec))
        return jacobi_basis(k, m, prec)

    solve_fm_space(10, 3, provider=provider)
    assert calls == [(10, 0, 3), (10, 1, 3), (10, 2, 3)]


def test_isqrt_window_is_complete():
    # rows outside |r| <= isqrt(4nm) are identically 0 = 0
    k, prec = 12, 3
    for e in solve_fm_space(k, prec).elements():
        for m in range(prec):
            for n in range(prec):
                for r in range(isqrt(4 * n * m) + 1, 4 * prec):
                    assert e.coefficient(n, r, m) == e.coefficient(m, r, n) == 0


def test_igusa_chi10_frozen_coefficients():
    # Maass lift of Delta * phi_{-2,1}, worked out by hand from the theta and Delta oracles:
    # c(2,2,2) = c(phi; 3, 0) + 2^9 c(phi; 1, 1) = (-56 + 288 - 504) + 512
    fm, prec = compute_siegel_space(10, start=3)
    space = echelonize([s.coeffs for s in fm.siegel_elements()], reduced_universe(prec))
    cusp = [row for row in space.rows if not any(row.get((0, 0, m), 0) for m in range(prec))]
    (chi,) = cusp
    chi = chi.scale(1 / chi[(1, 1, 1)])
    expected = {(1, 1, 1): 1, (1, 0, 1): -2, (1, 1, 2): -16, (1, 0, 2): 36,
                (2, 2, 2): 240}
    assert {key: chi.get(key, 0) for key in expected} == expected
