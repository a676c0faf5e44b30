r"""
Independent cross-checks for computed spaces.

* :func:`dim_siegel_even` counts monomials in the Igusa generators of
  weights 4, 6, 10 and 12.
* :func:`saito_kurokawa_lift` builds a Siegel cusp form from an index one
  Jacobi cusp form by the classical divisor sum, giving elements that must
  lie in the computed space.
* :func:`siegel_product` multiplies two expansions coefficientwise, so
  products of computed forms can be tested for membership.

Nothing here looks inside the linear-algebra formulation of ``formal_fj``;
only its public value types are used.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

from .elliptic import dim_elliptic
from .errors import PrecisionError, UnsupportedWeightError
from .formal_fj import FormalFJTruncation
from .jacobi import JacobiExpansion, jacobi_universe
from .linalg import CoeffVector

SIEGEL_GENERATOR_WEIGHTS = (4, 6, 10, 12)


def dim_siegel_even(k: int) -> int:
    """Number of ``(a, b, c, d) >= 0`` with ``4a + 6b + 10c + 12d = k``."""
    if k % 2:
        raise UnsupportedWeightError(f"odd weight {k} is not supported")
    if k < 0:
        return 0
    count = 0
    for d in range(k // 12 + 1):
        for c in range((k - 12 * d) // 10 + 1):
            rest = k - 12 * d - 10 * c
            count += sum(1 for b in range(rest // 6 + 1) if (rest - 6 * b) % 4 == 0)
    return count


def dim_jacobi_even(k: int, m: int) -> int:
    r"""Closed formula for ``dim J_{k,m}``, even ``k >= 4``:
    `\sum_{j=0}^{m} (\dim M_{k+2j} - \lceil j^2/4m \rceil)`."""
    if k % 2:
        raise UnsupportedWeightError(f"odd weight {k} is not supported")
    if m == 0:
        return dim_elliptic(k)
    return sum(dim_elliptic(k + 2 * j) - (-(-j * j // (4 * m))) for j in range(m + 1))


def dimension_table(kmax: int) -> dict[int, int]:
    return {k: dim_siegel_even(k) for k in range(0, kmax + 1, 2)}


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def saito_kurokawa_lift(phi: JacobiExpansion, prec: int) -> FormalFJTruncation:
    r"""Maass lift of an index one Jacobi cusp form, truncated to ``m, n < prec``.

    `c(n, r, m) = \sum_{d | (n, r, m)} d^{k-1} c(\phi; nm/d^2, r/d)`.
    ``phi`` must be known to precision greater than ``(prec - 1)^2``.
    """
    if phi.index != 1:
        raise ValueError(f"Saito-Kurokawa lift needs index 1 (got {phi.index})")
    if phi.coefficient(0, 0) != 0:
        raise ValueError("Saito-Kurokawa lift is only implemented for cusp forms")
    if phi.precision <= (prec - 1) ** 2:
        raise PrecisionError(
            f"lift to precision {prec} needs the Jacobi form to precision > {(prec - 1) ** 2}")
    k = phi.weight
    comps = []
    for m in range(prec):
        vals = {}
        for n, r in jacobi_universe(m, prec):
            g = gcd(n, r, m)
            if g == 0:
                continue
            vals[(n, r)] = sum((Fraction(d) ** (k - 1) * phi.coefficient(n * m // (d * d), r // d)
                                for d in _divisors(g)), Fraction(0))
        comps.append(JacobiExpansion(k, m, prec, CoeffVector(vals)))
    return FormalFJTruncation(k, prec, tuple(comps))


def siegel_product(a: FormalFJTruncation, b: FormalFJTruncation) -> FormalFJTruncation:
    """Product of two expansions, valid on the common window ``m, n < B``."""
    if a.precision != b.precision:
        raise PrecisionError(f"precision mismatch: {a.precision} vs {b.precision}")
    prec = a.precision
    comps = []
    for m in range(prec):
        vals = {}
        for n, r in jacobi_universe(m, prec):
            total = Fraction(0)
            for m1 in range(m + 1):
                m2 = m - m1
                for n1 in range(n + 1):
                    n2 = n - n1
                    b1, b2 = 4 * n1 * m1, 4 * n2 * m2
                    s1 = isqrt(b1)
                    for r1 in range(-s1, s1 + 1):
                        r2 = r - r1
                        if r2 * r2 > b2:
                            continue
                        x = a.coefficient(n1, r1, m1)
                        if x:
                            total += x * b.coefficient(n2, r2, m2)
            vals[(n, r)] = total
        comps.append(JacobiExpansion(a.weight + b.weight, m, prec, CoeffVector(vals)))
    return FormalFJTruncation(a.weight + b.weight, prec, tuple(comps))
