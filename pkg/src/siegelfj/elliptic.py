r"""
Truncated q-expansions of level one elliptic modular forms.

A :class:`QSeries` carries its weight and the coefficients of `q^0, ...,
q^{B-1}`. Arithmetic clamps to the smaller precision so nothing past the
truncation horizon is ever read.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import PrecisionError, UnsupportedWeightError
from .linalg import EchelonBasis, echelonize


@dataclass(frozen=True)
class QSeries:
    weight: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a q-series needs precision at least 1")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def precision(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __mul__(self, other: QSeries) -> QSeries:
        return series_mul(self, other)

    def __add__(self, other: QSeries) -> QSeries:
        return series_add(self, other)

    def __sub__(self, other: QSeries) -> QSeries:
        return series_add(self, series_scale(other, -1))

    def truncate(self, prec: int) -> QSeries:
        if prec > self.precision:
            raise PrecisionError(f"cannot extend precision {self.precision} to {prec}")
        return QSeries(self.weight, self.coeffs[:prec])

    def as_vector(self) -> dict:
        return {n: c for n, c in enumerate(self.coeffs) if c}

    def __repr__(self):
        body = ", ".join(str(c) for c in self.coeffs)
        return f"QSeries(weight={self.weight}, [{body}])"


def series_mul(f: QSeries, g: QSeries) -> QSeries:
    """Cauchy product truncated to the smaller precision; weights add."""
    prec = min(f.precision, g.precision)
    out = [Fraction(0)] * prec
    for i in range(prec):
        a = f.coeffs[i]
        if not a:
            continue
        for j in range(prec - i):
            out[i + j] += a * g.coeffs[j]
    return QSeries(f.weight + g.weight, tuple(out))


def series_add(f: QSeries, g: QSeries) -> QSeries:
    if f.weight != g.weight:
        raise ValueError(f"cannot add weight {f.weight} and weight {g.weight}")
    prec = min(f.precision, g.precision)
    return QSeries(f.weight, tuple(f.coeffs[i] + g.coeffs[i] for i in range(prec)))


def series_scale(f: QSeries, c) -> QSeries:
    c = Fraction(c)
    return QSeries(f.weight, tuple(c * x for x in f.coeffs))


def series_pow(f: QSeries, e: int, prec: int | None = None) -> QSeries:
    if prec is None:
        prec = f.precision
    out = QSeries(0, (1,) + (0,) * (prec - 1))
    for _ in range(e):
        out = out * f
    return out


def sigma(n: int, s: int) -> int:
    return sum(d ** s for d in range(1, n + 1) if n % d == 0)


_EISENSTEIN_FACTOR = {4: 240, 6: -504}


@lru_cache(maxsize=None)
def eisenstein(k: int, prec: int) -> QSeries:
    """Normalized Eisenstein series ``E_k`` (constant term 1), ``k`` in {4, 6}."""
    if k not in _EISENSTEIN_FACTOR:
        raise UnsupportedWeightError(f"eisenstein series only for k = 4, 6 (got {k})")
    if prec < 1:
        raise ValueError("precision must be positive")
    c = _EISENSTEIN_FACTOR[k]
    return QSeries(k, (1,) + tuple(c * sigma(n, k - 1) for n in range(1, prec)))


def eta_product(prec: int) -> list[int]:
    """Coefficients of prod_{n>=1} (1 - q^n) below ``prec``."""
    out = [0] * prec
    out[0] = 1
    for n in range(1, prec):
        for i in range(prec - 1, n - 1, -1):
            out[i] -= out[i - n]
    return out


@lru_cache(maxsize=None)
def delta(prec: int) -> QSeries:
    """Discriminant cusp form ``q * prod (1 - q^n)^24``."""
    if prec < 1:
        raise ValueError("precision must be positive")
    eta = QSeries(0, tuple(eta_product(prec)))
    p24 = series_pow(eta, 24)
    return QSeries(12, (0,) + p24.coeffs[: prec - 1])


def dim_elliptic(k: int) -> int:
    """Dimension of the space of level one modular forms of weight ``k``."""
    if k < 0 or k % 2:
        return 0
    if k % 12 == 2:
        return k // 12
    return k // 12 + 1


def monomial_exponents(k: int) -> list[tuple[int, int]]:
    """All ``(a, b)`` with ``4a + 6b = k``, ordered by ``a`` descending."""
    return [(a, (k - 4 * a) // 6) for a in range(k // 4, -1, -1) if (k - 4 * a) % 6 == 0]


def check_elliptic_precision(k: int, prec: int) -> None:
    # truncation to prec coefficients is injective iff prec > k/12 + 1
    if 12 * (prec - 1) <= k:
        raise PrecisionError(
            f"precision {prec} too small for weight {k}: need B > {k}/12 + 1")


@lru_cache(maxsize=None)
def mf_echelon(k: int, prec: int) -> EchelonBasis:
    if k % 2 or k < 0:
        raise UnsupportedWeightError(f"weight must be even and nonnegative (got {k})")
    check_elliptic_precision(k, prec)
    e4, e6 = eisenstein(4, prec), eisenstein(6, prec)
    rows = []
    for a, b in monomial_exponents(k):
        f = series_pow(e4, a, prec) * series_pow(e6, b, prec)
        rows.append(f.as_vector())
    return echelonize(rows, range(prec))


def mf_basis(k: int, prec: int) -> tuple[QSeries, ...]:
    """Echelonized basis of ``M_k`` truncated to ``prec`` coefficients.

    Raises :class:`PrecisionError` unless ``prec > k/12 + 1``.
    """
    ech = mf_echelon(k, prec)
    return tuple(QSeries(k, tuple(row.get(n, 0) for n in range(prec))) for row in ech.rows)
