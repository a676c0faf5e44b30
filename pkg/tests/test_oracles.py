from fractions import Fraction
from math import gcd

import pytest

from siegelfj.errors import PrecisionError, UnsupportedWeightError
from siegelfj.formal_fj import compute_siegel_space, extract_siegel_fourier, solve_fm_space
from siegelfj.jacobi import cusp_forms, jacobi_basis
from siegelfj.linalg import in_rowspace
from siegelfj.oracles import (
    dim_jacobi_even, dim_siegel_even, dimension_table, saito_kurokawa_lift, siegel_product,
)


def _generating_function(kmax):
    dims = [0] * (kmax + 1)
    dims[0] = 1
    for w in (4, 6, 10, 12):
        for k in range(w, kmax + 1):
            dims[k] += dims[k - w]
    return dims


def test_dim_examples():
    assert dim_siegel_even(0) == 1
    assert dim_siegel_even(10) == 2
    assert dim_siegel_even(16) == 4
    assert dim_siegel_even(-2) == 0


def test_dims_match_generating_function():
    dims = _generating_function(60)
    assert dimension_table(60) == {k: dims[k] for k in range(0, 61, 2)}


def test_odd_weight_rejected():
    with pytest.raises(UnsupportedWeightError):
        dim_siegel_even(35)
    with pytest.raises(UnsupportedWeightError):
        dim_jacobi_even(5, 1)


def _cusp(k, prec):
    (phi,) = cusp_forms(jacobi_basis(k, 1, prec))
    return phi


@pytest.mark.parametrize("k", [10, 12])
def test_lift_examples(k):
    phi = _cusp(k, 5)
    lift = saito_kurokawa_lift(phi, 3)
    assert lift.coefficient(1, 1, 1) == phi.coefficient(1, 1)
    assert all(lift.coefficient(0, 0, m) == 0 for m in range(3))
    # divisors 1 and 2 of gcd(2, 2, 2): c(phi; 4, 2) + 2^(k-1) c(phi; 1, 1)
    assert lift.coefficient(2, 2, 2) == phi.coefficient(4, 2) + 2 ** (k - 1) * phi.coefficient(1, 1)


@pytest.mark.parametrize("k", [10, 12, 14, 16, 18])
def test_lift_is_symmetric_and_in_space(k):
    fm, prec = compute_siegel_space(k)
    forms = cusp_forms(jacobi_basis(k, 1, (prec - 1) ** 2 + 3))
    assert len(forms) == dim_jacobi_even(k, 1) - 1
    for phi in forms:
        lift = saito_kurokawa_lift(phi, prec)
        assert lift.symmetry_violations() == []
        assert in_rowspace(extract_siegel_fourier(lift).coeffs, fm.siegel_basis())[0]


def test_lift_bruteforce_divisor_sum():
    k = 10
    phi = _cusp(k, 10)
    lift = saito_kurokawa_lift(phi, 4)
    for m in range(4):
        for n in range(4):
            for r in range(-6, 7):
                if 4 * n * m < r * r:
                    continue
                g = gcd(gcd(n, r), m)
                expected = Fraction(0)
                for d in range(1, g + 1):
                    if g % d == 0:
                        expected += d ** (k - 1) * phi.coefficient(n * m // d ** 2, r // d)
                assert lift.coefficient(n, r, m) == expected


def test_lift_preconditions():
    with pytest.raises(ValueError):
        saito_kurokawa_lift(jacobi_basis(10, 2, 4).elements()[0], 2)
    eis = jacobi_basis(4, 1, 5).elements()[0]
    with pytest.raises(ValueError):
        saito_kurokawa_lift(eis, 2)
    with pytest.raises(PrecisionError):
        saito_kurokawa_lift(_cusp(10, 3), 3)


@pytest.fixture(scope="module")
def small_forms():
    prec = 3
    forms = {}
    for k in (0, 4, 6, 10):
        fm = solve_fm_space(k, prec)
        forms[k] = fm.elements()
    return forms


def test_product_identity(small_forms):
    (one,) = small_forms[0]
    for f in small_forms[10]:
        assert siegel_product(one, f) == f


def test_product_commutative_associative(small_forms):
    (e4,) = small_forms[4]
    (e6,) = small_forms[6]
    chi = small_forms[10][0]
    assert siegel_product(e4, e6) == siegel_product(e6, e4)
    assert siegel_product(siegel_product(e4, e6), chi) == siegel_product(e4, siegel_product(e6, chi))


def test_product_of_symmetric_is_symmetric(small_forms):
    (e4,) = small_forms[4]
    assert siegel_product(e4, e4).symmetry_violations() == []


def test_product_precision_mismatch(small_forms):
    (e4,) = small_forms[4]
    with pytest.raises(PrecisionError):
        siegel_product(e4, solve_fm_space(4, 2).elements()[0])
