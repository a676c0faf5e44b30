r"""
Jacobi forms of even weight, integral index and trivial type.

Holomorphic Jacobi forms are computed inside the ring of weak Jacobi forms,
which for even weight is free over `M_*` on the two index one generators
`\phi_{-2,1}` and `\phi_{0,1}`:

    J^{weak}_{k,m} = \bigoplus_{j=0}^{m} M_{k+2j} \phi_{-2,1}^j \phi_{0,1}^{m-j}.

A weak form is holomorphic exactly when `c(n, r) = 0` for every class with
`4nm - r^2 < 0`; each such class has a representative with `0 <= r <= m`
and therefore `n < m/4`, which gives a finite linear system.

Two storage formats are used:

* :class:`WeakJacobi` keeps every `(n, r)` with `n < B` (needed by the
  convolution product);
* :class:`JacobiExpansion` keeps only canonical pairs `0 <= r <= m` with
  nonnegative discriminant; every other coefficient is recovered through
  :func:`canonicalize`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from ._backend import kernels
from .elliptic import QSeries, mf_basis
from .errors import PrecisionError, UnsupportedWeightError
from .linalg import CoeffVector, EchelonBasis, combine, echelonize, nullspace


def canonicalize(n: int, r: int, m: int, prec: int | None = None):
    """Canonical representative of the coefficient class of ``(n, r)``.

    Applies ``r -> r + 2*lam*m, n -> n + lam*r + lam^2*m`` and ``r -> -r`` to
    reach ``0 <= r' <= m``; the discriminant ``4nm - r^2`` is preserved.

    Returns ``((n', r'), defined)`` where ``defined`` is false when ``n'``
    is at or beyond ``prec``. For ``m = 0`` the pair is returned unchanged;
    ``r != 0`` then denotes the identically zero class.
    """
    if m < 0:
        raise ValueError("index must be nonnegative")
    if m == 0:
        return (n, r), prec is None or n < prec
    t = r % (2 * m)
    if t > m:
        t -= 2 * m
    lam = (t - r) // (2 * m)
    n2 = n + lam * r + lam * lam * m
    return (n2, abs(t)), prec is None or n2 < prec


def discriminant(n: int, r: int, m: int) -> int:
    return 4 * n * m - r * r


def jacobi_universe(m: int, prec: int) -> tuple[tuple[int, int], ...]:
    """Canonical pairs ``(n, r)``, ``0 <= r <= m``, ``4nm - r^2 >= 0``, ``n < prec``."""
    if m == 0:
        return tuple((n, 0) for n in range(prec))
    return tuple((n, r) for n in range(prec) for r in range(min(m, isqrt(4 * n * m)) + 1))


def index_set_jacobi(m: int, prec: int) -> list[tuple[int, int]]:
    """All ``(n, r)`` with ``0 <= n < prec`` and ``4nm - r^2 >= 0``."""
    out = []
    for n in range(prec):
        bound = isqrt(4 * n * m)
        out.extend((n, r) for r in range(-bound, bound + 1))
    return out


@dataclass(frozen=True, eq=True)
class WeakJacobi:
    """Weak Jacobi expansion with all ``(n, r)`` stored, ``n < precision``."""

    weight: int
    index: int
    coeffs: tuple = field(repr=False)

    __hash__ = None

    @property
    def precision(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, key):
        n, r = key
        if n < 0:
            return Fraction(0)
        if n >= self.precision:
            raise PrecisionError(f"coefficient ({n}, {r}) beyond precision {self.precision}")
        return Fraction(self.coeffs[n].get(r, 0))

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return scale_by_series(self, other)
        return jacobi_mul(self, other)

    def truncate(self, prec: int) -> WeakJacobi:
        if prec > self.precision:
            raise PrecisionError(f"cannot extend precision {self.precision} to {prec}")
        return WeakJacobi(self.weight, self.index, self.coeffs[:prec])

    def invariance_violations(self) -> list[tuple[int, int]]:
        """Pairs whose coefficient differs from that of their canonical class."""
        bad = []
        for n, row in enumerate(self.coeffs):
            for r, c in row.items():
                (n2, r2), _ = canonicalize(n, r, self.index)
                if self.index == 0:
                    if r != 0 and c:
                        bad.append((n, r))
                    continue
                ref = self.coeffs[n2].get(r2, 0) if n2 >= 0 else 0
                if ref != c:
                    bad.append((n, r))
        return bad


def _series(prec, terms):
    out = [{} for _ in range(prec)]
    for (n, r), c in terms.items():
        if n < prec and c:
            out[n][r] = out[n].get(r, 0) + c
    return out


@lru_cache(maxsize=None)
def _theta_quotient(prec: int):
    # prod_{n>=1} (1 - q^n z)^2 (1 - q^n/z)^2 / (1 - q^n)^4
    acc = _series(prec, {(0, 0): 1})
    for n in range(1, prec):
        plus = _series(prec, {(0, 0): 1, (n, 1): -1})
        minus = _series(prec, {(0, 0): 1, (n, -1): -1})
        geo = _series(prec, {(n * j, 0): 1 for j in range(prec // n + 1)})
        for factor in (plus, plus, minus, minus, geo, geo, geo, geo):
            acc = kernels.convolve(acc, factor, prec)
    return acc


@lru_cache(maxsize=None)
def weak_generators(prec: int) -> tuple[WeakJacobi, WeakJacobi]:
    r"""The weak Jacobi forms `\phi_{-2,1}` and `\phi_{0,1}` to precision ``prec``.

    `\phi_{-2,1} = \theta_1(\tau,z)^2/\eta^6 = (\zeta - 2 + \zeta^{-1})
    \prod_n (1-q^n\zeta)^2(1-q^n\zeta^{-1})^2(1-q^n)^{-4}` and
    `\phi_{0,1} = 12\,\phi_{-2,1}\,\wp/(2\pi i)^2`, with the Weierstrass
    function expanded as `1/12 + \zeta/(1-\zeta)^2 + \sum_{n\ge1}\sum_{d|n}
    d(\zeta^d - 2 + \zeta^{-d})q^n`. Both are normalized by `c(0, 1) = 1`.
    """
    if prec < 1:
        raise ValueError("precision must be positive")
    quotient = _theta_quotient(prec)
    phi_m2 = kernels.convolve(_series(prec, {(0, -1): 1, (0, 0): -2, (0, 1): 1}), quotient, prec)
    wp = {}
    for n in range(1, prec):
        for d in range(1, n + 1):
            if n % d == 0:
                for r, c in ((d, d), (0, -2 * d), (-d, d)):
                    wp[(n, r)] = wp.get((n, r), 0) + c
    tail = kernels.convolve(phi_m2, _series(prec, wp), prec)
    phi_0 = []
    for n in range(prec):
        row = dict(phi_m2[n])
        for part in (quotient[n], tail[n]):
            for r, c in part.items():
                row[r] = row.get(r, 0) + 12 * c
        phi_0.append({r: c for r, c in row.items() if c})
    return (WeakJacobi(-2, 1, tuple(phi_m2)), WeakJacobi(0, 1, tuple(phi_0)))


def jacobi_mul(f: WeakJacobi, g: WeakJacobi) -> WeakJacobi:
    """Product in ``(q, zeta)``; weights and indices add, precision clamps."""
    prec = min(f.precision, g.precision)
    return WeakJacobi(f.weight + g.weight, f.index + g.index,
                      tuple(kernels.convolve(list(f.coeffs), list(g.coeffs), prec)))


def scale_by_series(f: WeakJacobi, g: QSeries) -> WeakJacobi:
    """Multiply a weak Jacobi expansion by an elliptic modular form."""
    prec = min(f.precision, g.precision)
    gs = [{0: c} if c else {} for c in g.coeffs[:prec]]
    return WeakJacobi(f.weight + g.weight, f.index,
                      tuple(kernels.convolve(list(f.coeffs), gs, prec)))


def weak_from_series(g: QSeries) -> WeakJacobi:
    return WeakJacobi(g.weight, 0, tuple({0: c} if c else {} for c in g.coeffs))


@lru_cache(maxsize=None)
def weak_monomial(j: int, m: int, prec: int) -> WeakJacobi:
    r"""`\phi_{-2,1}^j \phi_{0,1}^{m-j}` to precision ``prec``."""
    if not 0 <= j <= m:
        raise ValueError("need 0 <= j <= m")
    if m == 0:
        return WeakJacobi(0, 0, ({0: 1},) + ({},) * (prec - 1))
    phi_m2, phi_0 = weak_generators(prec)
    if j > 0:
        return jacobi_mul(weak_monomial(j - 1, m - 1, prec), phi_m2)
    return jacobi_mul(weak_monomial(0, m - 1, prec), phi_0)


@dataclass(frozen=True, eq=True)
class JacobiExpansion:
    """Holomorphic Jacobi expansion stored on canonical pairs."""

    weight: int
    index: int
    precision: int
    coeffs: CoeffVector

    def coefficient(self, n: int, r: int) -> Fraction:
        """``c(n, r)`` for any integers ``n < precision`` and ``r``."""
        if n >= self.precision:
            raise PrecisionError(f"coefficient ({n}, {r}) beyond precision {self.precision}")
        if self.index == 0:
            return self.coeffs.get((n, 0), Fraction(0)) if r == 0 else Fraction(0)
        if 4 * n * self.index < r * r:
            return Fraction(0)
        key, _ = canonicalize(n, r, self.index)
        return self.coeffs.get(key, Fraction(0))

    def __getitem__(self, key):
        return self.coefficient(*key)

    def universe(self):
        return jacobi_universe(self.index, self.precision)

    def truncate(self, prec: int) -> JacobiExpansion:
        if prec > self.precision:
            raise PrecisionError(f"cannot extend precision {self.precision} to {prec}")
        return JacobiExpansion(self.weight, self.index, prec,
                               CoeffVector({k: v for k, v in self.coeffs.items() if k[0] < prec}))

    def to_weak(self) -> WeakJacobi:
        rows = []
        for n, r in index_set_jacobi(self.index, self.precision):
            while len(rows) <= n:
                rows.append({})
            c = self.coefficient(n, r)
            if c:
                rows[n][r] = c
        while len(rows) < self.precision:
            rows.append({})
        return WeakJacobi(self.weight, self.index, tuple(rows))

    @classmethod
    def from_weak(cls, f: WeakJacobi) -> JacobiExpansion:
        """Canonical storage of ``f``; raises if ``f`` is not holomorphic."""
        m = f.index
        coeffs = {}
        for n, row in enumerate(f.coeffs):
            for r, c in row.items():
                if not c:
                    continue
                if m == 0 and r != 0 or 4 * n * m < r * r:
                    raise ValueError(f"not holomorphic: c({n}, {r}) = {c}")
                if 0 <= r <= m:
                    coeffs[(n, r)] = c
        return cls(f.weight, m, f.precision, CoeffVector(coeffs))


def specialize_z0(phi) -> QSeries:
    """The q-series ``phi(tau, 0)``: coefficient of ``q^n`` is ``sum_r c(n, r)``."""
    weak = phi.to_weak() if isinstance(phi, JacobiExpansion) else phi
    return QSeries(weak.weight, tuple(sum(row.values(), Fraction(0)) for row in weak.coeffs))


def check_jacobi_precision(k: int, m: int, prec: int) -> None:
    # injective truncation needs B > (k + 2m)/12 + 1
    if 12 * (prec - 1) <= k + 2 * m:
        raise PrecisionError(
            f"precision {prec} too small for J_{{{k},{m}}}: need B > ({k} + 2*{m})/12 + 1")


def holomorphy_conditions(m: int) -> list[tuple[int, int]]:
    """Canonical pairs with negative discriminant (all have ``n <= m/4``)."""
    out = []
    n = 0
    while 4 * n * m < m * m:
        out.extend((n, r) for r in range(isqrt(4 * n * m) + 1, m + 1) if 4 * n * m < r * r)
        n += 1
    return out


@dataclass(frozen=True)
class JacobiBasis:
    """Echelonized truncated Fourier expansions spanning ``J_{k,m}``."""

    weight: int
    index: int
    precision: int
    basis: EchelonBasis
    weak_dimension: int = field(default=0, compare=False)
    constraint_rank: int = field(default=0, compare=False)

    @property
    def dimension(self) -> int:
        return self.basis.rank

    def __len__(self):
        return self.basis.rank

    def elements(self) -> list[JacobiExpansion]:
        return [JacobiExpansion(self.weight, self.index, self.precision, row)
                for row in self.basis.rows]

    def __iter__(self):
        return iter(self.elements())


def weak_family(k: int, m: int, prec: int) -> list[WeakJacobi]:
    family = []
    for j in range(m + 1):
        monomial = weak_monomial(j, m, prec)
        for b in mf_basis(k + 2 * j, prec):
            family.append(scale_by_series(monomial, b))
    return family


@lru_cache(maxsize=256)
def jacobi_basis(k: int, m: int, prec: int) -> JacobiBasis:
    """Basis of ``J_{k,m}`` truncated to ``n < prec``, echelonized over
    canonical ``(n, r)`` in lexicographic order."""
    if k % 2:
        raise UnsupportedWeightError(f"only even weight is supported (got {k})")
    if m < 0 or int(m) != m:
        raise UnsupportedWeightError(f"index must be a nonnegative integer (got {m})")
    if k < 0:
        raise UnsupportedWeightError(f"weight must be nonnegative (got {k})")
    check_jacobi_precision(k, m, prec)
    family = weak_family(k, m, prec)
    rows = []
    for n, r in holomorphy_conditions(m):
        rows.append({i: w.coeffs[n].get(r, 0) for i, w in enumerate(family)})
    holo = nullspace(rows, range(len(family)))
    constraint_rank = len(family) - holo.rank
    expansions = []
    for vec in holo.rows:
        acc = [{} for _ in range(prec)]
        for i, c in vec.items():
            for n, row in enumerate(family[i].coeffs):
                for r, x in row.items():
                    acc[n][r] = acc[n].get(r, 0) + c * x
        weak = WeakJacobi(k, m, tuple({r: x for r, x in row.items() if x} for row in acc))
        expansions.append(JacobiExpansion.from_weak(weak).coeffs)
    basis = echelonize(expansions, jacobi_universe(m, prec))
    return JacobiBasis(k, m, prec, basis, len(family), constraint_rank)


def cusp_forms(jb: JacobiBasis) -> list[JacobiExpansion]:
    """Echelonized basis of the cusp forms in ``jb`` (all zero-discriminant
    coefficients vanish)."""
    m = jb.index
    zero_classes = [(n, r) for n, r in jacobi_universe(m, jb.precision)
                    if 4 * n * m == r * r]
    elements = jb.elements()
    rows = [{i: e.coeffs.get(key, 0) for i, e in enumerate(elements)} for key in zero_classes]
    kernel = nullspace(rows, range(len(elements)))
    vectors = [combine([vec.get(i, 0) for i in range(len(elements))],
                       [e.coeffs for e in elements]) for vec in kernel.rows]
    ech = echelonize(vectors, jacobi_universe(m, jb.precision))
    return [JacobiExpansion(jb.weight, m, jb.precision, row) for row in ech.rows]
