"""Pure-Python kernels: truncated convolution, series inverse, determinant.

Coefficient objects only need ``+``, ``-``, ``*`` and truthiness, so the same
code serves rationals, Gaussian rationals and quaternions.  Products keep the
left factor on the left.  ``_ckernels.pyx`` mirrors these signatures exactly.
"""

BACKEND = "python"


def mul_trunc(a, b, order, zero):
    """Coefficients 0..order of a*b."""
    out = [zero] * (order + 1)
    lb = len(b)
    for i in range(min(len(a), order + 1)):
        x = a[i]
        if not x:
            continue
        for j in range(min(lb, order + 1 - i)):
            y = b[j]
            if y:
                out[i + j] = out[i + j] + x * y
    return out


def inv_trunc(a, order, inv0, zero):
    """Right inverse of a unit series with ``inv0 = a[0]**-1``."""
    out = [zero] * (order + 1)
    out[0] = inv0
    la = len(a)
    for m in range(1, order + 1):
        acc = zero
        for k in range(1, min(m, la - 1) + 1):
            x = a[k]
            if x:
                y = out[m - k]
                if y:
                    acc = acc + x * y
        if acc:
            out[m] = -(inv0 * acc)
    return out


def _is_zero(c):
    for x in c:
        if x:
            return False
    return True


def _rmul(a, b, order, zero):
    out = [zero] * (order + 1)
    for i in range(order + 1):
        x = a[i]
        if not x:
            continue
        for j in range(order + 1 - i):
            y = b[j]
            if y:
                out[i + j] += x * y
    return out


def _rsubmul(d, a, b, order):
    """d -= a*b in place (commutative coefficients)."""
    for i in range(order + 1):
        x = a[i]
        if not x:
            continue
        for j in range(order + 1 - i):
            y = b[j]
            if y:
                d[i + j] -= x * y


def _rinv(a, order, zero):
    a0 = a[0]
    inv0 = 1 / a0
    out = [zero] * (order + 1)
    out[0] = inv0
    for m in range(1, order + 1):
        acc = zero
        for k in range(1, m + 1):
            x = a[k]
            if x:
                y = out[m - k]
                if y:
                    acc += x * y
        out[m] = -inv0 * acc
    return out


def det_real(re, n, order, zero, one):
    """Determinant of an n x n matrix of commutative series.

    ``re[r][c]`` is a coefficient list of length ``order + 1``.  Rows are
    pivoted onto entries with a nonzero constant term; returns ``None`` when
    some column has no such entry.
    """
    A = [[list(e) for e in row] for row in re]
    det = [zero] * (order + 1)
    det[0] = one
    sign = 1
    for c in range(n):
        p = -1
        for r in range(c, n):
            if A[r][c][0]:
                p = r
                break
        if p < 0:
            return None
        if p != c:
            A[p], A[c] = A[c], A[p]
            sign = -sign
        piv = A[c][c]
        det = _rmul(det, piv, order, zero)
        pinv = _rinv(piv, order, zero)
        prow = A[c]
        nz = [k for k in range(c + 1, n) if not _is_zero(prow[k])]
        for r in range(c + 1, n):
            lead = A[r][c]
            if _is_zero(lead):
                continue
            f = _rmul(lead, pinv, order, zero)
            row = A[r]
            for k in nz:
                _rsubmul(row[k], f, prow[k], order)
    if sign < 0:
        det = [-x for x in det]
    return det


def _cmul(ar, ai, br, bi, order, zero):
    outr = [zero] * (order + 1)
    outi = [zero] * (order + 1)
    for i in range(order + 1):
        xr = ar[i]
        xi = ai[i]
        if not xr and not xi:
            continue
        for j in range(order + 1 - i):
            yr = br[j]
            yi = bi[j]
            if xr:
                if yr:
                    outr[i + j] += xr * yr
                if yi:
                    outi[i + j] += xr * yi
            if xi:
                if yr:
                    outi[i + j] += xi * yr
                if yi:
                    outr[i + j] -= xi * yi
    return outr, outi


def _csubmul(dr, di, ar, ai, br, bi, order):
    for i in range(order + 1):
        xr = ar[i]
        xi = ai[i]
        if not xr and not xi:
            continue
        for j in range(order + 1 - i):
            yr = br[j]
            yi = bi[j]
            if xr:
                if yr:
                    dr[i + j] -= xr * yr
                if yi:
                    di[i + j] -= xr * yi
            if xi:
                if yr:
                    di[i + j] -= xi * yr
                if yi:
                    dr[i + j] += xi * yi


def _cinv(ar, ai, order, zero):
    n0 = ar[0] * ar[0] + ai[0] * ai[0]
    ir = ar[0] / n0
    ii = -ai[0] / n0
    outr = [zero] * (order + 1)
    outi = [zero] * (order + 1)
    outr[0] = ir
    outi[0] = ii
    for m in range(1, order + 1):
        sr = zero
        si = zero
        for k in range(1, m + 1):
            xr = ar[k]
            xi = ai[k]
            if not xr and not xi:
                continue
            yr = outr[m - k]
            yi = outi[m - k]
            sr += xr * yr - xi * yi
            si += xr * yi + xi * yr
        outr[m] = -(ir * sr - ii * si)
        outi[m] = -(ir * si + ii * sr)
    return outr, outi


def det_complex(re, im, n, order, zero, one):
    """Determinant over Q(i)[t]/(t^(order+1)) with split real/imaginary parts.

    Returns ``(re_coeffs, im_coeffs)`` or ``None`` if pivoting fails.
    """
    R = [[list(e) for e in row] for row in re]
    M = [[list(e) for e in row] for row in im]
    detr = [zero] * (order + 1)
    deti = [zero] * (order + 1)
    detr[0] = one
    sign = 1
    for c in range(n):
        p = -1
        for r in range(c, n):
            if R[r][c][0] or M[r][c][0]:
                p = r
                break
        if p < 0:
            return None
        if p != c:
            R[p], R[c] = R[c], R[p]
            M[p], M[c] = M[c], M[p]
            sign = -sign
        pr = R[c][c]
        pi = M[c][c]
        detr, deti = _cmul(detr, deti, pr, pi, order, zero)
        invr, invi = _cinv(pr, pi, order, zero)
        prow_r = R[c]
        prow_i = M[c]
        nz = [k for k in range(c + 1, n) if not (_is_zero(prow_r[k]) and _is_zero(prow_i[k]))]
        for r in range(c + 1, n):
            lr = R[r][c]
            li = M[r][c]
            if _is_zero(lr) and _is_zero(li):
                continue
            fr, fi = _cmul(lr, li, invr, invi, order, zero)
            row_r = R[r]
            row_i = M[r]
            for k in nz:
                _csubmul(row_r[k], row_i[k], fr, fi, prow_r[k], prow_i[k], order)
    if sign < 0:
        detr = [-x for x in detr]
        deti = [-x for x in deti]
    return detr, deti
