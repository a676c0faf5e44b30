r"""
Exact sparse linear algebra over the rationals.

Every space of Fourier expansions in this package is represented by an
:class:`EchelonBasis`: the reduced row-echelon basis of a span of sparse
rational vectors over an explicitly ordered index universe. Pivots are always
the first nonzero entry in universe order, so the representation is canonical
and independent of how the spanning set was listed.
"""
from __future__ import annotations

from collections.abc import Hashable, Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction

from ._backend import kernels


class CoeffVector(Mapping):
    """Immutable sparse vector of rationals; zeros are never stored."""

    __slots__ = ("_entries", "_hash")

    def __init__(self, entries: Mapping | Iterable = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        self._entries = {k: Fraction(v) for k, v in items if v}
        self._hash = None

    def __getitem__(self, key):
        return self._entries[key]

    def get(self, key, default=0):
        return self._entries.get(key, default)

    def __iter__(self):
        return iter(self._entries)

    def __len__(self):
        return len(self._entries)

    def __eq__(self, other):
        if isinstance(other, CoeffVector):
            return self._entries == other._entries
        if isinstance(other, Mapping):
            return self._entries == {k: v for k, v in other.items() if v}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._entries.items()))
        return self._hash

    def __repr__(self):
        return f"CoeffVector({self._entries!r})"

    def __add__(self, other):
        out = dict(self._entries)
        for k, v in other.items():
            out[k] = out.get(k, 0) + v
        return CoeffVector(out)

    def __sub__(self, other):
        out = dict(self._entries)
        for k, v in other.items():
            out[k] = out.get(k, 0) - v
        return CoeffVector(out)

    def __neg__(self):
        return CoeffVector({k: -v for k, v in self._entries.items()})

    def scale(self, c):
        c = Fraction(c)
        return CoeffVector({k: c * v for k, v in self._entries.items()})

    def dot(self, other: Mapping):
        return sum((v * other.get(k, 0) for k, v in self._entries.items()),
                   Fraction(0))

    def restrict(self, keys):
        keys = set(keys)
        return CoeffVector({k: v for k, v in self._entries.items() if k in keys})

    def is_zero(self):
        return not self._entries


@dataclass(frozen=True)
class EchelonBasis:
    """Reduced row-echelon basis of a subspace of ``Q^order``.

    ``rows[i]`` has entry 1 at ``pivots[i]`` and 0 at every other pivot;
    pivots increase strictly in the order of ``order``.
    """

    order: tuple
    rows: tuple[CoeffVector, ...]
    pivots: tuple

    @property
    def rank(self) -> int:
        return len(self.rows)

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def position(self) -> dict:
        return {k: i for i, k in enumerate(self.order)}


def _positions(order: Sequence[Hashable]) -> dict:
    pos = {}
    for i, key in enumerate(order):
        if key in pos:
            raise ValueError(f"duplicate index {key!r} in order")
        pos[key] = i
    return pos


def _encode(row: Mapping, pos: dict) -> dict:
    try:
        return {pos[k]: v for k, v in row.items() if v}
    except KeyError as exc:
        raise ValueError(f"index {exc.args[0]!r} not in the index universe") from None


def echelonize(rows: Iterable[Mapping], order: Sequence[Hashable]) -> EchelonBasis:
    """RREF basis of the row span of ``rows`` over the index order ``order``."""
    order = tuple(order)
    pos = _positions(order)
    reduced = kernels.rref(_encode(r, pos) for r in rows)
    return EchelonBasis(
        order=order,
        rows=tuple(CoeffVector({order[c]: x for c, x in v.items()}) for _, v in reduced),
        pivots=tuple(order[p] for p, _ in reduced),
    )


def nullspace(rows: Iterable[Mapping], unknowns: Sequence[Hashable]) -> EchelonBasis:
    """RREF basis of ``{x : M x = 0}`` where ``M`` has the given rows."""
    unknowns = tuple(unknowns)
    pos = _positions(unknowns)
    reduced = kernels.rref(_encode(r, pos) for r in rows)
    pivot_cols = [p for p, _ in reduced]
    pivot_set = set(pivot_cols)
    kernel = []
    for f in range(len(unknowns)):
        if f in pivot_set:
            continue
        vec = {f: Fraction(1)}
        for p, r in reduced:
            x = r.get(f)
            if x:
                vec[p] = -x
        kernel.append(vec)
    reduced_kernel = kernels.rref(kernel)
    return EchelonBasis(
        order=unknowns,
        rows=tuple(CoeffVector({unknowns[c]: x for c, x in v.items()})
                   for _, v in reduced_kernel),
        pivots=tuple(unknowns[p] for p, _ in reduced_kernel),
    )


def reduce_vector(v: Mapping, basis: EchelonBasis) -> tuple[CoeffVector, tuple]:
    """Split ``v`` into a combination of ``basis`` rows plus a residual."""
    residual, coeffs = kernels.reduce_row(dict(v.items()), basis.pivots,
                                          [dict(r.items()) for r in basis.rows])
    return CoeffVector(residual), tuple(Fraction(c) for c in coeffs)


def in_rowspace(v: Mapping, basis: EchelonBasis) -> tuple[bool, tuple | None]:
    """Membership test with witness.

    Returns ``(True, coeffs)`` with ``v == sum(c * row)`` when ``v`` lies in
    the span of ``basis``, else ``(False, None)``.
    """
    residual, coeffs = reduce_vector(v, basis)
    if residual.is_zero():
        return True, coeffs
    return False, None


def combine(coeffs: Iterable, rows: Iterable[Mapping]) -> CoeffVector:
    """Linear combination ``sum(c * row)``."""
    acc: dict = {}
    for c, row in zip(coeffs, rows):
        if not c:
            continue
        for k, x in row.items():
            acc[k] = acc.get(k, 0) + c * x
    return CoeffVector(acc)


def rank(rows: Iterable[Mapping], order: Sequence[Hashable]) -> int:
    return echelonize(rows, order).rank
