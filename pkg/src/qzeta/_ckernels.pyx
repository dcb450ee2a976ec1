# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled twin of ``_pykernels``.

The series kernels keep coefficients as Python objects (they must also serve
quaternions) and gain only from typed loops.  The determinant kernels copy
their rational input into native GMP ``mpq_t`` arrays, eliminate there, and
convert the result back; rationals cross the boundary as decimal strings so
this module never shares GMP memory with gmpy2.
"""

from cpython.mem cimport PyMem_Free, PyMem_Malloc
from libc.stdlib cimport free, malloc
from libc.string cimport strlen


cdef extern from "gmp.h":
    ctypedef struct __mpz_struct:
        pass
    ctypedef __mpz_struct* mpz_ptr
    ctypedef struct __mpq_struct:
        pass
    ctypedef __mpq_struct* mpq_ptr
    size_t mpz_sizeinbase(mpz_ptr, int)
    mpz_ptr mpq_numref(mpq_ptr)
    mpz_ptr mpq_denref(mpq_ptr)
    void mpq_init(mpq_ptr)
    void mpq_clear(mpq_ptr)
    void mpq_set(mpq_ptr, mpq_ptr)
    void mpq_set_ui(mpq_ptr, unsigned long, unsigned long)
    int mpq_set_str(mpq_ptr, const char*, int)
    char* mpq_get_str(char*, int, mpq_ptr)
    void mpq_canonicalize(mpq_ptr)
    void mpq_add(mpq_ptr, mpq_ptr, mpq_ptr)
    void mpq_sub(mpq_ptr, mpq_ptr, mpq_ptr)
    void mpq_mul(mpq_ptr, mpq_ptr, mpq_ptr)
    void mpq_div(mpq_ptr, mpq_ptr, mpq_ptr)
    void mpq_neg(mpq_ptr, mpq_ptr)
    int mpq_sgn(mpq_ptr)

BACKEND = "cython"


def mul_trunc(a_in, b_in, Py_ssize_t order, zero):
    cdef list a = list(a_in)
    cdef list b = list(b_in)
    cdef list out = [zero] * (order + 1)
    cdef Py_ssize_t la = len(a), lb = len(b)
    cdef Py_ssize_t i, j, stop
    cdef object x, y
    if la > order + 1:
        la = order + 1
    for i in range(la):
        x = a[i]
        if not x:
            continue
        stop = order + 1 - i
        if stop > lb:
            stop = lb
        for j in range(stop):
            y = b[j]
            if y:
                out[i + j] = out[i + j] + x * y
    return out


def inv_trunc(a_in, Py_ssize_t order, inv0, zero):
    cdef list a = list(a_in)
    cdef list out = [zero] * (order + 1)
    cdef Py_ssize_t la = len(a)
    cdef Py_ssize_t m, k, stop
    cdef object acc, x, y
    out[0] = inv0
    for m in range(1, order + 1):
        acc = zero
        stop = m
        if stop > la - 1:
            stop = la - 1
        for k in range(1, stop + 1):
            x = a[k]
            if x:
                y = out[m - k]
                if y:
                    acc = acc + x * y
        if acc:
            out[m] = -(inv0 * acc)
    return out



# -- native rational buffers ----------------------------------------------


cdef class _Buf:
    """A block of initialised ``mpq_t`` values, cleared on collection."""

    cdef mpq_ptr q
    cdef Py_ssize_t size

    def __cinit__(self, Py_ssize_t size):
        cdef Py_ssize_t k
        self.size = 0
        self.q = <mpq_ptr>PyMem_Malloc((size if size > 0 else 1) * sizeof(__mpq_struct))
        if self.q == NULL:
            raise MemoryError()
        for k in range(size):
            mpq_init(&self.q[k])
        self.size = size

    def __dealloc__(self):
        cdef Py_ssize_t k
        if self.q != NULL:
            for k in range(self.size):
                mpq_clear(&self.q[k])
            PyMem_Free(self.q)


cdef void _load(mpq_ptr dst, x) except *:
    if not x:
        return  # buffers start at zero
    cdef bytes raw = str(x).encode("ascii")
    if mpq_set_str(dst, raw, 10) != 0:
        raise ValueError(f"not a rational: {x!r}")
    mpq_canonicalize(dst)


cdef object _store(mpq_ptr src, make):
    cdef size_t room = mpz_sizeinbase(mpq_numref(src), 10) + mpz_sizeinbase(mpq_denref(src), 10) + 3
    cdef char* text = <char*>malloc(room)
    if text == NULL:
        raise MemoryError()
    try:
        mpq_get_str(text, 10, src)
        return make(text[:strlen(text)].decode("ascii"))
    finally:
        free(text)


cdef inline bint _zero(mpq_ptr a, Py_ssize_t L):
    cdef Py_ssize_t k
    for k in range(L):
        if mpq_sgn(&a[k]) != 0:
            return False
    return True


cdef inline void _clear(mpq_ptr a, Py_ssize_t L):
    cdef Py_ssize_t k
    for k in range(L):
        mpq_set_ui(&a[k], 0, 1)


cdef inline void _copy(mpq_ptr dst, mpq_ptr src, Py_ssize_t L):
    cdef Py_ssize_t k
    for k in range(L):
        mpq_set(&dst[k], &src[k])


# out = a * b (out must not alias a or b)
cdef void _rmul(mpq_ptr out, mpq_ptr a, mpq_ptr b, Py_ssize_t L, mpq_ptr t):
    cdef Py_ssize_t i, j
    _clear(out, L)
    for i in range(L):
        if mpq_sgn(&a[i]) == 0:
            continue
        for j in range(L - i):
            if mpq_sgn(&b[j]) != 0:
                mpq_mul(t, &a[i], &b[j])
                mpq_add(&out[i + j], &out[i + j], t)


# d -= a * b
cdef void _rsubmul(mpq_ptr d, mpq_ptr a, mpq_ptr b, Py_ssize_t L, mpq_ptr t):
    cdef Py_ssize_t i, j
    for i in range(L):
        if mpq_sgn(&a[i]) == 0:
            continue
        for j in range(L - i):
            if mpq_sgn(&b[j]) != 0:
                mpq_mul(t, &a[i], &b[j])
                mpq_sub(&d[i + j], &d[i + j], t)


# out = a^-1 given a[0] != 0
cdef void _rinv(mpq_ptr out, mpq_ptr a, Py_ssize_t L, mpq_ptr t, mpq_ptr acc):
    cdef Py_ssize_t m, k
    mpq_set_ui(t, 1, 1)
    mpq_div(&out[0], t, &a[0])
    for m in range(1, L):
        mpq_set_ui(acc, 0, 1)
        for k in range(1, m + 1):
            if mpq_sgn(&a[k]) != 0 and mpq_sgn(&out[m - k]) != 0:
                mpq_mul(t, &a[k], &out[m - k])
                mpq_add(acc, acc, t)
        mpq_mul(t, &out[0], acc)
        mpq_neg(&out[m], t)


def det_real(re, Py_ssize_t n, Py_ssize_t order, zero, one):
    """Determinant over ``Q[t]/(t^(order+1))``; ``None`` if no unit pivot exists."""
    cdef Py_ssize_t L = order + 1
    cdef _Buf A = _Buf(n * n * L)
    cdef _Buf W = _Buf(4 * L + 2)
    cdef mpq_ptr det = W.q
    cdef mpq_ptr prod = &W.q[L]
    cdef mpq_ptr pinv = &W.q[2 * L]
    cdef mpq_ptr f = &W.q[3 * L]
    cdef mpq_ptr t = &W.q[4 * L]
    cdef mpq_ptr acc = &W.q[4 * L + 1]
    cdef Py_ssize_t r, c, k, p, prow, row
    cdef int sign = 1
    cdef list perm = list(range(n))
    cdef list nz
    make = type(one)
    for r in range(n):
        for c in range(n):
            coeffs = re[r][c]
            for k in range(L):
                _load(&A.q[(r * n + c) * L + k], coeffs[k])
    mpq_set_ui(&det[0], 1, 1)
    for c in range(n):
        p = -1
        for r in range(c, n):
            if mpq_sgn(&A.q[(<Py_ssize_t>perm[r] * n + c) * L]) != 0:
                p = r
                break
        if p < 0:
            return None
        if p != c:
            perm[p], perm[c] = perm[c], perm[p]
            sign = -sign
        prow = perm[c]
        _rmul(prod, det, &A.q[(prow * n + c) * L], L, t)
        _copy(det, prod, L)
        _rinv(pinv, &A.q[(prow * n + c) * L], L, t, acc)
        nz = [k for k in range(c + 1, n) if not _zero(&A.q[(prow * n + k) * L], L)]
        for r in range(c + 1, n):
            row = perm[r]
            if _zero(&A.q[(row * n + c) * L], L):
                continue
            _rmul(f, &A.q[(row * n + c) * L], pinv, L, t)
            for k in nz:
                _rsubmul(&A.q[(row * n + k) * L], f, &A.q[(prow * n + k) * L], L, t)
    out = []
    for k in range(L):
        if sign < 0:
            mpq_neg(&det[k], &det[k])
        out.append(_store(&det[k], make))
    return out


# (outr + i outi) = (ar + i ai)(br + i bi), no aliasing
cdef void _cmul(mpq_ptr outr, mpq_ptr outi, mpq_ptr ar, mpq_ptr ai, mpq_ptr br, mpq_ptr bi,
                Py_ssize_t L, mpq_ptr t):
    cdef Py_ssize_t i, j
    cdef bint xr, xi
    _clear(outr, L)
    _clear(outi, L)
    for i in range(L):
        xr = mpq_sgn(&ar[i]) != 0
        xi = mpq_sgn(&ai[i]) != 0
        if not xr and not xi:
            continue
        for j in range(L - i):
            if mpq_sgn(&br[j]) != 0:
                if xr:
                    mpq_mul(t, &ar[i], &br[j])
                    mpq_add(&outr[i + j], &outr[i + j], t)
                if xi:
                    mpq_mul(t, &ai[i], &br[j])
                    mpq_add(&outi[i + j], &outi[i + j], t)
            if mpq_sgn(&bi[j]) != 0:
                if xr:
                    mpq_mul(t, &ar[i], &bi[j])
                    mpq_add(&outi[i + j], &outi[i + j], t)
                if xi:
                    mpq_mul(t, &ai[i], &bi[j])
                    mpq_sub(&outr[i + j], &outr[i + j], t)


# (dr + i di) -= (ar + i ai)(br + i bi)
cdef void _csubmul(mpq_ptr dr, mpq_ptr di, mpq_ptr ar, mpq_ptr ai, mpq_ptr br, mpq_ptr bi,
                   Py_ssize_t L, mpq_ptr t):
    cdef Py_ssize_t i, j
    cdef bint xr, xi
    for i in range(L):
        xr = mpq_sgn(&ar[i]) != 0
        xi = mpq_sgn(&ai[i]) != 0
        if not xr and not xi:
            continue
        for j in range(L - i):
            if mpq_sgn(&br[j]) != 0:
                if xr:
                    mpq_mul(t, &ar[i], &br[j])
                    mpq_sub(&dr[i + j], &dr[i + j], t)
                if xi:
                    mpq_mul(t, &ai[i], &br[j])
                    mpq_sub(&di[i + j], &di[i + j], t)
            if mpq_sgn(&bi[j]) != 0:
                if xr:
                    mpq_mul(t, &ar[i], &bi[j])
                    mpq_sub(&di[i + j], &di[i + j], t)
                if xi:
                    mpq_mul(t, &ai[i], &bi[j])
                    mpq_add(&dr[i + j], &dr[i + j], t)


# out = a^-1 over Q(i), given a[0] != 0; s holds 5 scratch values
cdef void _cinv(mpq_ptr outr, mpq_ptr outi, mpq_ptr ar, mpq_ptr ai, Py_ssize_t L, mpq_ptr s):
    cdef mpq_ptr t = &s[0]
    cdef mpq_ptr sr = &s[1]
    cdef mpq_ptr si = &s[2]
    cdef mpq_ptr u = &s[3]
    cdef mpq_ptr nrm = &s[4]
    cdef Py_ssize_t m, k
    mpq_mul(nrm, &ar[0], &ar[0])
    mpq_mul(t, &ai[0], &ai[0])
    mpq_add(nrm, nrm, t)
    mpq_div(&outr[0], &ar[0], nrm)
    mpq_div(t, &ai[0], nrm)
    mpq_neg(&outi[0], t)
    for m in range(1, L):
        mpq_set_ui(sr, 0, 1)
        mpq_set_ui(si, 0, 1)
        for k in range(1, m + 1):
            if mpq_sgn(&ar[k]) == 0 and mpq_sgn(&ai[k]) == 0:
                continue
            mpq_mul(t, &ar[k], &outr[m - k])
            mpq_add(sr, sr, t)
            mpq_mul(t, &ai[k], &outi[m - k])
            mpq_sub(sr, sr, t)
            mpq_mul(t, &ar[k], &outi[m - k])
            mpq_add(si, si, t)
            mpq_mul(t, &ai[k], &outr[m - k])
            mpq_add(si, si, t)
        # out[m] = -(inv0 * s)
        mpq_mul(t, &outr[0], sr)
        mpq_mul(u, &outi[0], si)
        mpq_sub(t, t, u)
        mpq_neg(&outr[m], t)
        mpq_mul(t, &outr[0], si)
        mpq_mul(u, &outi[0], sr)
        mpq_add(t, t, u)
        mpq_neg(&outi[m], t)


def det_complex(re, im, Py_ssize_t n, Py_ssize_t order, zero, one):
    """Determinant over ``Q(i)[t]/(t^(order+1))`` from split real/imaginary
    coefficient arrays; ``(re, im)`` lists or ``None`` if no unit pivot exists."""
    cdef Py_ssize_t L = order + 1
    cdef _Buf R = _Buf(n * n * L)
    cdef _Buf M = _Buf(n * n * L)
    cdef _Buf W = _Buf(8 * L + 5)
    cdef mpq_ptr detr = W.q
    cdef mpq_ptr deti = &W.q[L]
    cdef mpq_ptr pr = &W.q[2 * L]
    cdef mpq_ptr pi = &W.q[3 * L]
    cdef mpq_ptr invr = &W.q[4 * L]
    cdef mpq_ptr invi = &W.q[5 * L]
    cdef mpq_ptr fr = &W.q[6 * L]
    cdef mpq_ptr fi = &W.q[7 * L]
    cdef mpq_ptr s = &W.q[8 * L]
    cdef Py_ssize_t r, c, k, p, prow, row, a, b
    cdef int sign = 1
    cdef list perm = list(range(n))
    cdef list nz
    make = type(one)
    for r in range(n):
        for c in range(n):
            cr = re[r][c]
            ci = im[r][c]
            for k in range(L):
                _load(&R.q[(r * n + c) * L + k], cr[k])
                _load(&M.q[(r * n + c) * L + k], ci[k])
    mpq_set_ui(&detr[0], 1, 1)
    for c in range(n):
        p = -1
        for r in range(c, n):
            a = (<Py_ssize_t>perm[r] * n + c) * L
            if mpq_sgn(&R.q[a]) != 0 or mpq_sgn(&M.q[a]) != 0:
                p = r
                break
        if p < 0:
            return None
        if p != c:
            perm[p], perm[c] = perm[c], perm[p]
            sign = -sign
        prow = perm[c]
        a = (prow * n + c) * L
        _cmul(pr, pi, detr, deti, &R.q[a], &M.q[a], L, s)
        _copy(detr, pr, L)
        _copy(deti, pi, L)
        _cinv(invr, invi, &R.q[a], &M.q[a], L, s)
        nz = [k for k in range(c + 1, n)
              if not (_zero(&R.q[(prow * n + k) * L], L) and _zero(&M.q[(prow * n + k) * L], L))]
        for r in range(c + 1, n):
            row = perm[r]
            a = (row * n + c) * L
            if _zero(&R.q[a], L) and _zero(&M.q[a], L):
                continue
            _cmul(fr, fi, &R.q[a], &M.q[a], invr, invi, L, s)
            for k in nz:
                a = (row * n + k) * L
                b = (prow * n + k) * L
                _csubmul(&R.q[a], &M.q[a], fr, fi, &R.q[b], &M.q[b], L, s)
    outr, outi = [], []
    for k in range(L):
        if sign < 0:
            mpq_neg(&detr[k], &detr[k])
            mpq_neg(&deti[k], &deti[k])
        outr.append(_store(&detr[k], make))
        outi.append(_store(&deti[k], make))
    return outr, outi
