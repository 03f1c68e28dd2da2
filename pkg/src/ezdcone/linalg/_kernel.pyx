# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled exact kernels: dense GMP rationals with zero skipping.

Same contracts as ``_kernel_py``; the reduced row-echelon form is unique,
so both backends return identical results.
"""

from fractions import Fraction

from libc.stdlib cimport malloc, free


cdef extern from "gmp.h":
    ctypedef struct __mpz_struct:
        pass
    ctypedef struct __mpq_struct:
        pass
    ctypedef __mpz_struct* mpz_ptr
    ctypedef __mpq_struct* mpq_ptr

    void mpq_init(mpq_ptr)
    void mpq_clear(mpq_ptr)
    void mpq_set(mpq_ptr, mpq_ptr)
    void mpq_set_si(mpq_ptr, long, unsigned long)
    int mpq_set_str(mpq_ptr, const char*, int)
    void mpq_canonicalize(mpq_ptr)
    void mpq_mul(mpq_ptr, mpq_ptr, mpq_ptr)
    void mpq_sub(mpq_ptr, mpq_ptr, mpq_ptr)
    void mpq_add(mpq_ptr, mpq_ptr, mpq_ptr)
    void mpq_inv(mpq_ptr, mpq_ptr)
    void mpq_swap(mpq_ptr, mpq_ptr)
    int mpq_sgn(mpq_ptr)
    int mpq_cmp_si(mpq_ptr, long, unsigned long)
    mpz_ptr mpq_numref(mpq_ptr)
    mpz_ptr mpq_denref(mpq_ptr)
    int mpz_fits_slong_p(mpz_ptr)
    long mpz_get_si(mpz_ptr)
    char* mpz_get_str(char*, int, mpz_ptr)


cdef long _SMALL = 1 << 62

try:
    Fraction(1, 1, _normalize=False)
    def _frac(n, d):
        return Fraction(n, d, _normalize=False)
except TypeError:  # Python >= 3.12
    _frac = Fraction._from_coprime_ints


cdef void _set(mpq_ptr q, object x):
    cdef object n = x.numerator
    cdef object d = x.denominator
    if -_SMALL < n < _SMALL and d < _SMALL:
        mpq_set_si(q, <long>n, <unsigned long>d)
    else:
        mpq_set_str(q, ("%d/%d" % (n, d)).encode(), 10)


cdef object _zint(mpz_ptr z):
    cdef char* s
    if mpz_fits_slong_p(z):
        return mpz_get_si(z)
    s = mpz_get_str(NULL, 16, z)
    try:
        return int(s.decode(), 16)
    finally:
        free(s)


cdef object _get(mpq_ptr q):
    return _frac(_zint(mpq_numref(q)), _zint(mpq_denref(q)))


def rref_rows(rows, Py_ssize_t ncols):
    """Gauss-Jordan over Q. Returns (nonzero reduced rows, pivot columns)."""
    rows = [row_ for row_ in rows if row_]
    cdef Py_ssize_t n = len(rows)
    if n == 0 or ncols == 0:
        return [], []
    cdef Py_ssize_t total = n * ncols
    cdef __mpq_struct* data = <__mpq_struct*>malloc(total * sizeof(__mpq_struct))
    cdef __mpq_struct** rowp = <__mpq_struct**>malloc(n * sizeof(__mpq_struct*))
    cdef Py_ssize_t* idx = <Py_ssize_t*>malloc(ncols * sizeof(Py_ssize_t))
    cdef __mpq_struct tmp
    cdef __mpq_struct inv
    cdef Py_ssize_t i, j, c, p, r, k, nidx
    cdef __mpq_struct* prow
    cdef __mpq_struct* row
    pivots = []
    out = []
    mpq_init(&tmp)
    mpq_init(&inv)
    for i in range(total):
        mpq_init(&data[i])
    try:
        for i in range(n):
            rowp[i] = data + i * ncols
            for j, x in rows[i].items():
                _set(&rowp[i][j], x)
        r = 0
        for c in range(ncols):
            if r == n:
                break
            p = r
            while p < n and mpq_sgn(&rowp[p][c]) == 0:
                p += 1
            if p == n:
                continue
            prow = rowp[p]
            rowp[p] = rowp[r]
            rowp[r] = prow
            mpq_inv(&inv, &prow[c])
            nidx = 0
            for j in range(c, ncols):
                if mpq_sgn(&prow[j]) != 0:
                    mpq_mul(&prow[j], &prow[j], &inv)
                    idx[nidx] = j
                    nidx += 1
            for i in range(n):
                if i == r:
                    continue
                row = rowp[i]
                if mpq_sgn(&row[c]) == 0:
                    continue
                mpq_set(&inv, &row[c])
                for k in range(nidx):
                    j = idx[k]
                    mpq_mul(&tmp, &inv, &prow[j])
                    mpq_sub(&row[j], &row[j], &tmp)
            pivots.append(c)
            r += 1
        for i in range(r):
            row = rowp[i]
            d = {}
            for j in range(ncols):
                if mpq_sgn(&row[j]) != 0:
                    d[j] = _get(&row[j])
            out.append(d)
    finally:
        for i in range(total):
            mpq_clear(&data[i])
        mpq_clear(&tmp)
        mpq_clear(&inv)
        free(data)
        free(rowp)
        free(idx)
    return out, pivots


def matmul_rows(a_rows, b_rows, Py_ssize_t ncols):
    """Sparse product; ``b_rows`` indexed by the inner dimension."""
    cdef Py_ssize_t nb = len(b_rows)
    cdef Py_ssize_t i, j, k, t, cnt
    cdef __mpq_struct* acc
    cdef char* touched
    cdef Py_ssize_t* tlist
    cdef __mpq_struct tmp
    cdef __mpq_struct a
    # flatten b into (column, value) arrays
    cdef Py_ssize_t* bstart = <Py_ssize_t*>malloc((nb + 1) * sizeof(Py_ssize_t))
    nnz = 0
    for k in range(nb):
        bstart[k] = nnz
        nnz += len(b_rows[k])
    bstart[nb] = nnz
    cdef Py_ssize_t bn = nnz
    cdef Py_ssize_t* bcol = <Py_ssize_t*>malloc((bn + 1) * sizeof(Py_ssize_t))
    cdef __mpq_struct* bval = <__mpq_struct*>malloc((bn + 1) * sizeof(__mpq_struct))
    acc = <__mpq_struct*>malloc((ncols + 1) * sizeof(__mpq_struct))
    touched = <char*>malloc(ncols + 1)
    tlist = <Py_ssize_t*>malloc((ncols + 1) * sizeof(Py_ssize_t))
    for t in range(bn):
        mpq_init(&bval[t])
    for j in range(ncols):
        mpq_init(&acc[j])
        touched[j] = 0
    mpq_init(&tmp)
    mpq_init(&a)
    out = []
    try:
        t = 0
        for k in range(nb):
            for j, x in b_rows[k].items():
                bcol[t] = j
                _set(&bval[t], x)
                t += 1
        for arow in a_rows:
            cnt = 0
            for k, x in arow.items():
                _set(&a, x)
                for t in range(bstart[k], bstart[k + 1]):
                    j = bcol[t]
                    if not touched[j]:
                        touched[j] = 1
                        tlist[cnt] = j
                        cnt += 1
                        mpq_mul(&acc[j], &a, &bval[t])
                    else:
                        mpq_mul(&tmp, &a, &bval[t])
                        mpq_add(&acc[j], &acc[j], &tmp)
            d = {}
            for t in range(cnt):
                j = tlist[t]
                touched[j] = 0
                if mpq_sgn(&acc[j]) != 0:
                    d[j] = _get(&acc[j])
            out.append(d)
    finally:
        for t in range(bn):
            mpq_clear(&bval[t])
        for j in range(ncols):
            mpq_clear(&acc[j])
        mpq_clear(&tmp)
        mpq_clear(&a)
        free(bstart)
        free(bcol)
        free(bval)
        free(acc)
        free(touched)
        free(tlist)
    return out
