# cython: language_level=3
"""Compiled twin of ``siegelfj._pykernels``.

Same functions, same containers, same results. ``rref`` copies the rows
into a dense matrix of GMP integers and runs the elimination entirely in C;
the other kernels keep Python numbers and gain from typed loops.
"""
from cpython.bytes cimport PyBytes_FromStringAndSize
from libc.stdlib cimport free, malloc

from fractions import Fraction

from siegelfj._pykernels import primitive_row


cdef extern from "gmp.h":
    ctypedef struct __mpz_struct:
        pass
    ctypedef __mpz_struct mpz_t[1]
    ctypedef __mpz_struct *mpz_ptr

    void mpz_init(mpz_ptr)
    void mpz_clear(mpz_ptr)
    void mpz_set(mpz_ptr, mpz_ptr)
    void mpz_set_si(mpz_ptr, long)
    long mpz_get_si(mpz_ptr)
    int mpz_fits_slong_p(mpz_ptr)
    int mpz_sgn(mpz_ptr)
    int mpz_cmp_ui(mpz_ptr, unsigned long)
    size_t mpz_sizeinbase(mpz_ptr, int)
    void mpz_neg(mpz_ptr, mpz_ptr)
    void mpz_abs(mpz_ptr, mpz_ptr)
    void mpz_mul(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_submul(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_gcd(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_divexact(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_import(mpz_ptr, size_t, int, size_t, int, size_t, const void *)
    void *mpz_export(void *, size_t *, int, size_t, int, size_t, mpz_ptr)


cdef void _to_mpz(mpz_ptr z, object x):
    cdef bytes data
    if -(1 << 62) < x < (1 << 62):
        mpz_set_si(z, <long>x)
        return
    data = abs(x).to_bytes((abs(x).bit_length() + 7) // 8, "big")
    mpz_import(z, len(data), 1, 1, 0, 0, <const char *>data)
    if x < 0:
        mpz_neg(z, z)


cdef object _from_mpz(mpz_ptr z):
    cdef size_t count = 0
    cdef char *buf
    if mpz_fits_slong_p(z):
        return mpz_get_si(z)
    buf = <char *>mpz_export(NULL, &count, 1, 1, 0, 0, z)
    try:
        x = int.from_bytes(PyBytes_FromStringAndSize(buf, count), "big")
    finally:
        free(buf)
    return -x if mpz_sgn(z) < 0 else x


cdef class _Matrix:
    """Dense ``nrows x ncols`` matrix of ``mpz_t`` with swappable rows."""
    cdef Py_ssize_t nrows, ncols
    cdef mpz_ptr *rows
    cdef mpz_t a, b, g

    def __cinit__(self, Py_ssize_t nrows, Py_ssize_t ncols):
        cdef Py_ssize_t i, j
        self.nrows, self.ncols = nrows, ncols
        self.rows = <mpz_ptr *>malloc(max(nrows, 1) * sizeof(mpz_ptr))
        if self.rows == NULL:
            raise MemoryError()
        for i in range(nrows):
            self.rows[i] = <mpz_ptr>malloc(max(ncols, 1) * sizeof(mpz_t))
            if self.rows[i] == NULL:
                self.nrows = i
                raise MemoryError()
            for j in range(ncols):
                mpz_init(&self.rows[i][j])
        mpz_init(self.a)
        mpz_init(self.b)
        mpz_init(self.g)

    def __dealloc__(self):
        cdef Py_ssize_t i, j
        if self.rows != NULL:
            for i in range(self.nrows):
                for j in range(self.ncols):
                    mpz_clear(&self.rows[i][j])
                free(self.rows[i])
            free(self.rows)
        mpz_clear(self.a)
        mpz_clear(self.b)
        mpz_clear(self.g)

    cdef void make_primitive(self, Py_ssize_t i, Py_ssize_t start):
        cdef mpz_ptr row = self.rows[i]
        cdef Py_ssize_t j
        mpz_set_si(self.g, 0)
        for j in range(start, self.ncols):
            if mpz_sgn(&row[j]):
                mpz_gcd(self.g, self.g, &row[j])
                if mpz_cmp_ui(self.g, 1) == 0:
                    return
        if mpz_sgn(self.g) == 0:
            return
        for j in range(start, self.ncols):
            if mpz_sgn(&row[j]):
                mpz_divexact(&row[j], &row[j], self.g)

    cdef void eliminate(self, Py_ssize_t i, Py_ssize_t t, Py_ssize_t c, Py_ssize_t start):
        # row_i <- a * row_i - b * row_t, clearing column c, then primitive part
        cdef mpz_ptr v = self.rows[i]
        cdef mpz_ptr w = self.rows[t]
        cdef Py_ssize_t j
        mpz_gcd(self.g, &w[c], &v[c])
        mpz_divexact(self.a, &w[c], self.g)
        mpz_divexact(self.b, &v[c], self.g)
        for j in range(start, self.ncols):
            if mpz_sgn(&v[j]) and mpz_cmp_ui(self.a, 1) != 0:
                mpz_mul(&v[j], &v[j], self.a)
            if mpz_sgn(&w[j]):
                mpz_submul(&v[j], self.b, &w[j])
        self.make_primitive(i, start)


def rref(rows):
    """Reduced row-echelon form of the span of ``rows``; see ``_pykernels.rref``."""
    cdef list ints = [v for v in (primitive_row(r) for r in rows) if v]
    if not ints:
        return []
    cdef Py_ssize_t nrows = len(ints)
    cdef Py_ssize_t ncols = max(max(v) for v in ints) + 1
    cdef _Matrix mat = _Matrix(nrows, ncols)
    cdef Py_ssize_t i, j, c, r = 0, best, t, s
    cdef size_t size, best_size
    cdef mpz_ptr tmp
    cdef dict v
    for i in range(nrows):
        for j, x in ints[i].items():
            _to_mpz(&mat.rows[i][j], x)

    cdef list pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        best = -1
        for i in range(r, nrows):
            if mpz_sgn(&mat.rows[i][c]):
                size = mpz_sizeinbase(&mat.rows[i][c], 2)
                if best < 0 or size < best_size:
                    best, best_size = i, size
        if best < 0:
            continue
        tmp = mat.rows[r]
        mat.rows[r] = mat.rows[best]
        mat.rows[best] = tmp
        for i in range(r + 1, nrows):
            if mpz_sgn(&mat.rows[i][c]):
                mat.eliminate(i, r, c, c)
        pivots.append(c)
        r += 1

    for t in range(r - 1, -1, -1):
        c = pivots[t]
        for s in range(t):
            if mpz_sgn(&mat.rows[s][c]):
                mat.eliminate(s, t, c, pivots[s])

    cdef list out = []
    for t in range(r):
        c = pivots[t]
        lead = _from_mpz(&mat.rows[t][c])
        v = {}
        for j in range(c, ncols):
            if mpz_sgn(&mat.rows[t][j]):
                v[j] = Fraction(_from_mpz(&mat.rows[t][j]), lead)
        out.append((c, v))
    return out


def reduce_row(row, pivots, rows):
    cdef dict v = {}
    cdef dict r
    cdef list coeffs = []
    cdef object c, x, y, z, p
    for c, x in row.items():
        if x:
            v[c] = Fraction(x)
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


def convolve(list f, list g, Py_ssize_t prec):
    cdef list out = [{} for _ in range(prec)]
    cdef Py_ssize_t n1, n2, nf, ng, r1, r2, r
    cdef dict fn, gn, o
    cdef object a, b
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
    for n1 in range(prec):
        o = out[n1]
        out[n1] = {k: x for k, x in o.items() if x}
    return out
