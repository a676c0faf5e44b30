r"""
Truncated formal Fourier-Jacobi expansions and the precision loop.

For even weight and trivial type a truncated formal Fourier-Jacobi expansion
of precision `B` is a family `(\phi_m)_{0 \le m < B}` of truncated Jacobi
forms `\phi_m \in J_{k,m}` with

    c(\phi_m; n, r) = c(\phi_n; m, r)    for all  0 <= m, n < B,  r in Z.

Writing each `\phi_m` in coordinates of an echelon basis of `J_{k,m}` turns
this into a homogeneous linear system whose nullspace is `FM_B`. The space
shrinks with `B` once `B > k/10`, and coincides with the truncated Siegel
modular forms as soon as its dimension matches `\dim M^{(2)}_k`, which is
what :func:`compute_siegel_space` iterates towards.
"""
from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import PrecisionCapError, PrecisionError, SymmetryError, UnsupportedWeightError
from .jacobi import JacobiBasis, JacobiExpansion, jacobi_basis, jacobi_universe
from .linalg import CoeffVector, EchelonBasis, combine, echelonize, nullspace

log = logging.getLogger(__name__)

JacobiProvider = Callable[[int, int, int], JacobiBasis]


def check_weight(k) -> int:
    if isinstance(k, bool) or not isinstance(k, int):
        if isinstance(k, Fraction) and k.denominator == 1:
            k = int(k)
        else:
            raise UnsupportedWeightError(f"only integral weight is supported (got {k!r})")
    if k % 2:
        raise UnsupportedWeightError(f"odd weight {k} is not supported")
    if k < 0:
        raise UnsupportedWeightError(f"weight must be nonnegative (got {k})")
    return k


@dataclass(frozen=True)
class SiegelIndexSet:
    """``{(n, r, m) : 0 <= n, m < B, 4nm - r^2 >= 0}`` ordered by ``(m, n, r)``."""

    precision: int
    triples: tuple[tuple[int, int, int], ...]

    def __len__(self):
        return len(self.triples)

    def __iter__(self):
        return iter(self.triples)

    def __contains__(self, triple):
        n, r, m = triple
        return 0 <= n < self.precision and 0 <= m < self.precision and 4 * n * m >= r * r


def index_set_siegel(prec: int) -> SiegelIndexSet:
    triples = []
    for m in range(prec):
        for n in range(prec):
            bound = isqrt(4 * n * m)
            triples.extend((n, r, m) for r in range(-bound, bound + 1))
    return SiegelIndexSet(prec, tuple(triples))


def fj_universe(prec: int) -> tuple[tuple[int, int, int], ...]:
    """Coordinates ``(m, n, r)`` of a truncation: canonical ``(n, r)`` per ``m``."""
    return tuple((m, n, r) for m in range(prec) for n, r in jacobi_universe(m, prec))


def reduce_form(n: int, r: int, m: int) -> tuple[int, int, int]:
    """``GL_2(Z)``-reduced representative of ``[[n, r/2], [r/2, m]]``.

    The result ``(n', r', m')`` satisfies ``0 <= r' <= n' <= m'``.
    """
    if n < 0 or m < 0 or 4 * n * m < r * r:
        raise ValueError(f"({n}, {r}, {m}) is not positive semidefinite")
    while True:
        if n > m:
            n, m = m, n
        if n == 0:
            return (0, 0, m)
        t = r % (2 * n)
        if t > n:
            t -= 2 * n
        lam = (t - r) // (2 * n)
        m += lam * r + lam * lam * n
        r = t
        if n <= m:
            return (n, abs(r), m)


def reduced_universe(prec: int) -> tuple[tuple[int, int, int], ...]:
    """Reduced triples ``(n, r, m)`` with ``m < prec``, ordered by ``(m, n, r)``."""
    return tuple((n, r, m) for m in range(prec) for n in range(m + 1)
                 for r in range(n + 1) if n or not r)


@dataclass(frozen=True)
class FormalFJTruncation:
    weight: int
    precision: int
    components: tuple[JacobiExpansion, ...]

    def __post_init__(self):
        if len(self.components) != self.precision:
            raise ValueError("need exactly one component per index m < precision")
        for m, phi in enumerate(self.components):
            if phi.index != m or phi.precision != self.precision:
                raise ValueError(f"component {m} has index {phi.index}, precision {phi.precision}")

    def coefficient(self, n: int, r: int, m: int) -> Fraction:
        """``c(phi_m; n, r)``."""
        if not 0 <= m < self.precision:
            raise PrecisionError(f"index {m} beyond precision {self.precision}")
        return self.components[m].coefficient(n, r)

    def symmetry_violations(self) -> list[tuple[int, int, int]]:
        """Exhaustive scan of ``c(phi_m; n, r) == c(phi_n; m, r)``."""
        bad = []
        for m in range(self.precision):
            for n in range(self.precision):
                bound = isqrt(4 * n * m)
                for r in range(-bound, bound + 1):
                    if self.coefficient(n, r, m) != self.coefficient(m, r, n):
                        bad.append((n, r, m))
        return bad

    def to_vector(self) -> CoeffVector:
        return CoeffVector({(m, n, r): c for m, phi in enumerate(self.components)
                            for (n, r), c in phi.coeffs.items()})

    def truncate(self, prec: int) -> FormalFJTruncation:
        if prec > self.precision:
            raise PrecisionError(f"cannot extend precision {self.precision} to {prec}")
        return FormalFJTruncation(self.weight, prec,
                                  tuple(phi.truncate(prec) for phi in self.components[:prec]))

    def is_zero(self):
        return all(phi.coeffs.is_zero() for phi in self.components)


@dataclass(frozen=True)
class SiegelFourier:
    """Fourier coefficients ``c(n, r, m)`` on reduced triples, ``m < precision``."""

    weight: int
    precision: int
    coeffs: CoeffVector

    def __getitem__(self, triple):
        return self.coefficient(*triple)

    def coefficient(self, n: int, r: int, m: int) -> Fraction:
        key = reduce_form(n, r, m)
        if key[2] >= self.precision:
            raise PrecisionError(f"{(n, r, m)} reduces to {key}, beyond precision {self.precision}")
        return self.coeffs.get(key, Fraction(0))

    def universe(self):
        return reduced_universe(self.precision)

    def to_truncation(self) -> FormalFJTruncation:
        comps = []
        for m in range(self.precision):
            vals = {(n, r): self.coefficient(n, r, m) for n, r in jacobi_universe(m, self.precision)}
            comps.append(JacobiExpansion(self.weight, m, self.precision, CoeffVector(vals)))
        return FormalFJTruncation(self.weight, self.precision, tuple(comps))

    def truncate(self, prec: int) -> SiegelFourier:
        if prec > self.precision:
            raise PrecisionError(f"cannot extend precision {self.precision} to {prec}")
        return SiegelFourier(self.weight, prec,
                             CoeffVector({k: v for k, v in self.coeffs.items() if k[2] < prec}))


def extract_siegel_fourier(elem: FormalFJTruncation) -> SiegelFourier:
    """Siegel coefficients ``c(n, r, m) = c(phi_m; n, r)`` on reduced triples.

    Every triple of the index set is reduced and compared with the value
    already recorded for its class; a disagreement raises
    :class:`SymmetryError`.
    """
    seen: dict = {}
    for n, r, m in index_set_siegel(elem.precision):
        key = reduce_form(n, r, m)
        value = elem.coefficient(n, r, m)
        if key in seen:
            if seen[key] != value:
                raise SymmetryError((n, r, m), value, seen[key])
        else:
            seen[key] = value
    return SiegelFourier(elem.weight, elem.precision, CoeffVector(seen))


def precision_floor(k: int) -> int:
    """Smallest precision the algorithm starts from: ``floor(k/10) + 2``.

    It exceeds ``k/10`` and, for every ``m < B``, exceeds ``(k + 2m)/12 + 1``.
    """
    return check_weight(k) // 10 + 2


@dataclass(frozen=True)
class SymmetrySystem:
    unknowns: tuple[tuple[int, int], ...]
    rows: tuple[dict, ...]


def build_symmetry_system(k: int, bases: list[JacobiBasis]) -> SymmetrySystem:
    """Linear conditions ``c(phi_m; n, r) - c(phi_n; m, r) = 0`` for ``m < n``.

    Unknowns are ``(m, i)``: the coordinate of ``phi_m`` along the ``i``-th
    element of ``bases[m]``.
    """
    prec = len(bases)
    for m, jb in enumerate(bases):
        if jb.index != m or jb.weight != k:
            raise ValueError(f"bases[{m}] is J_{{{jb.weight},{jb.index}}}")
        if jb.precision != prec:
            raise PrecisionError(f"inconsistent precisions: bases[{m}] has {jb.precision}, expected {prec}")
    elements = [jb.elements() for jb in bases]
    unknowns = tuple((m, i) for m in range(prec) for i in range(len(elements[m])))
    rows = []
    for m in range(prec):
        for n in range(m + 1, prec):
            bound = isqrt(4 * n * m)
            for r in range(-bound, bound + 1):
                row = {}
                for i, b in enumerate(elements[m]):
                    c = b.coefficient(n, r)
                    if c:
                        row[(m, i)] = c
                for j, b in enumerate(elements[n]):
                    c = b.coefficient(m, r)
                    if c:
                        row[(n, j)] = -c
                if row:
                    rows.append(row)
    return SymmetrySystem(unknowns, tuple(rows))


@dataclass(frozen=True)
class FMBasis:
    """Echelon basis of ``FM_B`` in Jacobi-basis coordinates."""

    weight: int
    precision: int
    jacobi_bases: tuple[JacobiBasis, ...]
    basis: EchelonBasis

    @property
    def dimension(self) -> int:
        return self.basis.rank

    def __len__(self):
        return self.basis.rank

    def materialize(self, coords) -> FormalFJTruncation:
        comps = []
        for m, jb in enumerate(self.jacobi_bases):
            vec = combine([coords.get((m, i), 0) for i in range(len(jb))], jb.basis.rows)
            comps.append(JacobiExpansion(self.weight, m, self.precision, vec))
        return FormalFJTruncation(self.weight, self.precision, tuple(comps))

    def elements(self) -> list[FormalFJTruncation]:
        return [self.materialize(row) for row in self.basis.rows]

    def expansion_basis(self) -> EchelonBasis:
        """Echelon basis over ``fj_universe`` coordinates ``(m, n, r)``."""
        return echelonize([e.to_vector() for e in self.elements()], fj_universe(self.precision))

    def siegel_elements(self) -> list[SiegelFourier]:
        return [extract_siegel_fourier(e) for e in self.elements()]

    def siegel_basis(self) -> EchelonBasis:
        """Echelon basis over reduced triples, ordered by ``(m, n, r)``."""
        return echelonize([s.coeffs for s in self.siegel_elements()],
                          reduced_universe(self.precision))

    def pivot_indices(self) -> list[int]:
        return [m for m, _ in self.basis.pivots]


def solve_fm_space(k: int, prec: int, provider: JacobiProvider | None = None) -> FMBasis:
    """``FM_B`` for weight ``k`` and precision ``prec``."""
    k = check_weight(k)
    if prec < precision_floor(k):
        raise PrecisionError(f"precision {prec} below the floor {precision_floor(k)} for weight {k}")
    provider = provider or jacobi_basis
    bases = [provider(k, m, prec) for m in range(prec)]
    system = build_symmetry_system(k, bases)
    return FMBasis(k, prec, tuple(bases), nullspace(system.rows, system.unknowns))


def compute_siegel_space(k: int, max_precision: int = 20, start: int | None = None,
                         provider: JacobiProvider | None = None) -> tuple[FMBasis, int]:
    """Run the precision loop until ``dim FM_B == dim M^(2)_k``.

    Starts at ``precision_floor(k)`` (or ``start``), increments ``B`` by one
    on mismatch, and raises :class:`PrecisionCapError` past ``max_precision``.
    """
    from .oracles import dim_siegel_even

    k = check_weight(k)
    target = dim_siegel_even(k)
    floor = precision_floor(k)
    prec = floor if start is None else start
    if prec < floor:
        raise PrecisionError(f"start precision {prec} below the floor {floor} for weight {k}")
    last = None
    while prec <= max_precision:
        fm = solve_fm_space(k, prec, provider)
        log.info("weight %d, B = %d: dim FM_B = %d, target %d", k, prec, fm.dimension, target)
        if fm.dimension == target:
            return fm, prec
        last = fm.dimension
        prec += 1
    raise PrecisionCapError(k, max_precision, last, target)
