"""Pure-Python hot kernels.

This module is the reference implementation; ``_ckernels.pyx`` mirrors it
function for function. Both operate on plain containers:

* sparse rows are ``dict[int, int | Fraction]`` keyed by column position;
* truncated two-variable series are lists (one slot per power of q) of
  ``dict[int, coefficient]`` keyed by the power of zeta.
"""
from fractions import Fraction
from math import gcd, lcm


def primitive_row(row):
    """Scale a rational sparse row to a primitive integer row.

    Zero entries are dropped. The sign is left untouched.
    """
    items = [(c, x) for c, x in row.items() if x]
    if not items:
        return {}
    den = lcm(*[x.denominator for _, x in items if type(x) is not int] or [1])
    ints = {c: int(x * den) for c, x in items}
    g = gcd(*ints.values())
    if g != 1:
        ints = {c: x // g for c, x in ints.items()}
    return ints


def _eliminate(v, w, c):
    """Primitive part of ``a*v - b*w`` with ``a, b`` chosen to clear column ``c``."""
    a, b = w[c], v[c]
    g = gcd(a, b)
    if g != 1:
        a, b = a // g, b // g
    out = {k: a * x for k, x in v.items()} if a != 1 else dict(v)
    for k, y in w.items():
        z = out.get(k, 0) - b * y
        if z:
            out[k] = z
        else:
            out.pop(k, None)
    if out:
        g = gcd(*out.values())
        if g != 1:
            out = {k: x // g for k, x in out.items()}
    return out


def _cost(row, c):
    return (len(row), abs(row[c]).bit_length())


def rref(rows):
    """Reduced row-echelon form of the span of ``rows``.

    Fraction-free Gauss-Jordan elimination on primitive integer rows,
    column by column; in each column the cheapest candidate row becomes the
    pivot. The reduced row-echelon form of a span is unique, so neither the
    pivot choice nor the order of ``rows`` affects the result.

    Returns a list of ``(pivot, {column: Fraction})`` sorted by pivot, with
    each pivot entry equal to one.
    """
    active = [v for v in (primitive_row(r) for r in rows) if v]
    done = {}
    while active:
        c = min(min(v) for v in active)
        cand = [v for v in active if min(v) == c]
        active = [v for v in active if min(v) != c]
        pivot = min(cand, key=lambda v: _cost(v, c))
        for v in cand:
            if v is not pivot:
                v = _eliminate(v, pivot, c)
                if v:
                    active.append(v)
        done[c] = pivot

    reduced = {}
    for p in sorted(done, reverse=True):
        v = done[p]
        for q in sorted(k for k in v if k != p and k in reduced):
            if v.get(q):
                v = _eliminate(v, reduced[q], q)
        reduced[p] = v

    out = []
    for p in sorted(reduced):
        v = reduced[p]
        lead = v[p]
        out.append((p, {c: Fraction(x, lead) for c, x in sorted(v.items())}))
    return out


def reduce_row(row, pivots, rows):
    """Reduce ``row`` against an RREF given as parallel pivot/row lists.

    Returns ``(residual, coefficients)``: ``row = sum(coef_i * rows_i) +
    residual`` and the residual vanishes on every pivot column.
    """
    v = {c: Fraction(x) for c, x in row.items() if x}
    coeffs = []
    for p, r in zip(pivots, rows):
        x = v.get(p, 0)
        coeffs.append(x)
        if not x:
            continue
        for c, y in r.items():
            z = v.get(c, 0) - x * y
            if z:
                v[c] = z
            else:
                v.pop(c, None)
    return v, coeffs


def convolve(f, g, prec):
    """Truncated product of two (q, zeta) series.

    ``f`` and ``g`` are lists indexed by the q-exponent; only terms with
    q-exponent below ``prec`` are produced.
    """
    out = [{} for _ in range(prec)]
    nf = min(len(f), prec)
    for n1 in range(nf):
        fn = f[n1]
        if not fn:
            continue
        ng = min(len(g), prec - n1)
        for n2 in range(ng):
            gn = g[n2]
            if not gn:
                continue
            o = out[n1 + n2]
            for r1, a in fn.items():
                for r2, b in gn.items():
                    r = r1 + r2
                    o[r] = o.get(r, 0) + a * b
    for n in range(prec):
        out[n] = {r: x for r, x in out[n].items() if x}
    return out
