# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: the fast twin of ``fknichols._kernels_py``.

Integer work runs in typed int64 loops.  The exact cyclotomic combine has a
magnitude guard; inputs that could overflow 64-bit intermediates are routed
to the pure-Python implementation, so results are always exact.
"""

from libc.stdlib cimport malloc, free

from fknichols import _kernels_py as _py

UNDEFINED = -1
DIAGONAL_M = -2

cdef long long _gcd_ll(long long a, long long b) noexcept:
    cdef long long t
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef long long _inv_ll(long long a, long long n) noexcept:
    """Inverse of a mod n for gcd(a, n) = 1 (extended Euclid).

    cdivision is active: reduce to a nonnegative representative by hand.
    """
    cdef long long lm = 1, hm = 0, low = a % n, high = n, r, nm, nw, out
    if low < 0:
        low += n
    while low > 1:
        r = high // low
        nm = hm - lm * r
        nw = high - low * r
        hm = lm
        high = low
        lm = nm
        low = nw
    out = lm % n
    if out < 0:
        out += n
    return out


def cartan_mrow(diag, edge, n_mod, i):
    cdef Py_ssize_t r = len(diag)
    cdef Py_ssize_t ii = i, j
    cdef long long N = n_mod
    cdef long long d, e, g1, g, m1, m2, target, n_g
    row = [0] * r
    row[ii] = DIAGONAL_M
    d = diag[ii] % N
    if d < 0:
        d += N
    erow = edge[ii]
    for j in range(r):
        if j == ii:
            continue
        e = erow[j] % N
        if e < 0:
            e += N
        if e == 0:
            row[j] = 0
            continue
        if d == 0:
            row[j] = UNDEFINED
            continue
        g1 = _gcd_ll(N, d)
        m1 = N // g1 - 1
        g = _gcd_ll(d, N)
        target = (N - e) % N
        if target % g:
            row[j] = m1
        else:
            n_g = N // g
            m2 = (target // g) * _inv_ll(d // g, n_g) % n_g
            row[j] = m1 if m1 < m2 else m2
    return row


def reflect_exponent_matrix(b, n_mod, i, mrow):
    cdef Py_ssize_t r = len(b)
    cdef Py_ssize_t j, k
    cdef long long N = n_mod
    cdef long long mj, mk, bji, bii
    cdef long long *flat = <long long *> malloc(r * r * sizeof(long long))
    cdef long long *mr = <long long *> malloc(r * sizeof(long long))
    cdef long long *out = <long long *> malloc(r * r * sizeof(long long))
    if flat == NULL or mr == NULL or out == NULL:
        raise MemoryError
    try:
        for j in range(r):
            mr[j] = mrow[j]
            row = b[j]
            for k in range(r):
                flat[j * r + k] = row[k]
        bii = flat[i * r + i]
        for j in range(r):
            mj = mr[j]
            bji = flat[j * r + i]
            for k in range(r):
                mk = mr[k]
                out[j * r + k] = (
                    flat[j * r + k] + mk * bji + mj * flat[i * r + k] + mj * mk * bii
                ) % N
                if out[j * r + k] < 0:
                    out[j * r + k] += N
        return [[out[j * r + k] for k in range(r)] for j in range(r)]
    finally:
        free(flat)
        free(mr)
        free(out)


def scan_bad_reflection(diag, edge, n_mod):
    cdef Py_ssize_t r = len(diag)
    cdef Py_ssize_t j, v, w
    cdef long long N = n_mod
    cdef long long dj, mv, mw, val, e, d, g1, g, m1, m2, target, n_g
    cdef long long *dg = <long long *> malloc(r * sizeof(long long))
    cdef long long *eg = <long long *> malloc(r * r * sizeof(long long))
    cdef long long *m = <long long *> malloc(r * sizeof(long long))
    if dg == NULL or eg == NULL or m == NULL:
        raise MemoryError
    try:
        for j in range(r):
            dg[j] = diag[j] % N
            if dg[j] < 0:
                dg[j] += N
            row = edge[j]
            for w in range(r):
                eg[j * r + w] = row[w] % N
                if eg[j * r + w] < 0:
                    eg[j * r + w] += N
        for j in range(r):
            # inline Cartan m-row at j
            d = dg[j]
            m[j] = -2
            if d == 0:
                continue  # any failure here was visible at the current state
            g1 = _gcd_ll(N, d)
            m1 = N // g1 - 1
            for w in range(r):
                if w == j:
                    continue
                e = eg[j * r + w]
                if e == 0:
                    m[w] = 0
                    continue
                g = _gcd_ll(d, N)
                target = (N - e) % N
                if target % g:
                    m[w] = m1
                else:
                    n_g = N // g
                    m2 = (target // g) * _inv_ll(d // g, n_g) % n_g
                    m[w] = m1 if m1 < m2 else m2
            dj = d
            for v in range(r):
                if v == j:
                    continue
                mv = m[v]
                if (dg[v] + mv * eg[j * r + v] + mv * mv * dj) % N:
                    continue
                for w in range(r):
                    if w == v:
                        continue
                    if w == j:
                        val = (-eg[j * r + v] - 2 * mv * dj) % N
                    else:
                        mw = m[w]
                        val = (
                            eg[v * r + w]
                            + mv * eg[j * r + w]
                            + mw * eg[j * r + v]
                            + 2 * mv * mw * dj
                        ) % N
                    if val % N:
                        return j, v
        return None
    finally:
        free(dg); free(eg); free(m)


def reflect_diagram(diag, edge, n_mod, i, mrow):
    cdef Py_ssize_t r = len(diag)
    cdef Py_ssize_t ii = i
    cdef Py_ssize_t j, k
    cdef long long N = n_mod
    cdef long long di, mj, mk, val, t
    cdef long long *dg = <long long *> malloc(r * sizeof(long long))
    cdef long long *mr = <long long *> malloc(r * sizeof(long long))
    cdef long long *eg = <long long *> malloc(r * r * sizeof(long long))
    cdef long long *nd = <long long *> malloc(r * sizeof(long long))
    cdef long long *ne = <long long *> malloc(r * r * sizeof(long long))
    if dg == NULL or mr == NULL or eg == NULL or nd == NULL or ne == NULL:
        raise MemoryError
    try:
        for j in range(r):
            dg[j] = diag[j]
            mr[j] = mrow[j]
            row = edge[j]
            for k in range(r):
                eg[j * r + k] = row[k]
        di = dg[ii] % N
        for j in range(r):
            if j == ii:
                nd[j] = dg[j] % N
            else:
                mj = mr[j]
                nd[j] = (dg[j] + mj * eg[ii * r + j] + mj * mj * di) % N
            if nd[j] < 0:
                nd[j] += N
        for j in range(r):
            ne[j * r + j] = 0
        for j in range(r):
            for k in range(j + 1, r):
                if j == ii or k == ii:
                    t = j + k - ii
                    val = (-eg[ii * r + t] - 2 * mr[t] * di) % N
                else:
                    val = (
                        eg[j * r + k]
                        + mr[j] * eg[ii * r + k]
                        + mr[k] * eg[ii * r + j]
                        + 2 * mr[j] * mr[k] * di
                    ) % N
                if val < 0:
                    val += N
                ne[j * r + k] = val
                ne[k * r + j] = val
        new_diag = [nd[j] for j in range(r)]
        new_edge = [[ne[j * r + k] for k in range(r)] for j in range(r)]
        return new_diag, new_edge
    finally:
        free(dg); free(mr); free(eg); free(nd); free(ne)


def _max_abs(tup):
    m = 0
    for x in tup:
        v = -x if x < 0 else x
        if v > m:
            m = v
    return m


def combine_exact(amul, aidx, aco, bmul, bidx, bco, phi, red):
    cdef Py_ssize_t na = len(aidx), nb = len(bidx)
    cdef Py_ssize_t p = phi
    cdef Py_ssize_t ia, ib, q, s, t, nout, pos
    # magnitude guard in exact Python arithmetic: route anything that could
    # overflow 64-bit intermediates to the pure big-integer twin
    ma = _max_abs(amul)
    mb = _max_abs(bmul)
    mva = max((_max_abs(c) for c in aco), default=0)
    mvb = max((_max_abs(c) for c in bco), default=0)
    mred = 1
    for rrow in red:
        v = _max_abs(rrow)
        if v > mred:
            mred = v
    guard = (ma * mva + mb * mvb + 1) * int(p) * (1 + mred * int(p))
    if guard >= 1 << 61:
        return _py.combine_exact(amul, aidx, aco, bmul, bidx, bco, phi, red)

    cdef long long *am = <long long *> malloc(p * sizeof(long long))
    cdef long long *bm = <long long *> malloc(p * sizeof(long long))
    cdef long long *va = <long long *> malloc((na * p or 1) * sizeof(long long))
    cdef long long *vb = <long long *> malloc((nb * p or 1) * sizeof(long long))
    cdef long long *redc = <long long *> malloc(((p - 1) * p or 1) * sizeof(long long))
    cdef long long *conv = <long long *> malloc((2 * p - 1) * sizeof(long long))
    cdef long long *acc = <long long *> malloc(p * sizeof(long long))
    cdef long long *tmp = <long long *> malloc(p * sizeof(long long))
    cdef long long *out_co = <long long *> malloc(((na + nb) * p or 1) * sizeof(long long))
    cdef long long *out_idx = <long long *> malloc(((na + nb) or 1) * sizeof(long long))
    if (am == NULL or bm == NULL or va == NULL or vb == NULL or redc == NULL
            or conv == NULL or acc == NULL or tmp == NULL or out_co == NULL
            or out_idx == NULL):
        raise MemoryError
    cdef long long g, x
    cdef bint nonzero
    try:
        for q in range(p):
            am[q] = amul[q]
            bm[q] = bmul[q]
        for s in range(na):
            c = aco[s]
            for q in range(p):
                va[s * p + q] = c[q]
        for s in range(nb):
            c = bco[s]
            for q in range(p):
                vb[s * p + q] = c[q]
        for s in range(p - 1):
            rrow = red[s]
            for q in range(p):
                redc[s * p + q] = rrow[q]

        ia = 0
        ib = 0
        nout = 0
        while ia < na or ib < nb:
            if ib >= nb or (ia < na and aidx[ia] < bidx[ib]):
                pos = aidx[ia]
                _mulred(acc, am, &va[ia * p], p, redc, conv)
                ia += 1
            elif ia >= na or bidx[ib] < aidx[ia]:
                pos = bidx[ib]
                _mulred(acc, bm, &vb[ib * p], p, redc, conv)
                for q in range(p):
                    acc[q] = -acc[q]
                ib += 1
            else:
                pos = aidx[ia]
                _mulred(acc, am, &va[ia * p], p, redc, conv)
                _mulred(tmp, bm, &vb[ib * p], p, redc, conv)
                for q in range(p):
                    acc[q] -= tmp[q]
                ia += 1
                ib += 1
            nonzero = False
            for q in range(p):
                if acc[q] != 0:
                    nonzero = True
                    break
            if nonzero:
                out_idx[nout] = pos
                for q in range(p):
                    out_co[nout * p + q] = acc[q]
                nout += 1
        # content strip
        g = 0
        for s in range(nout):
            for q in range(p):
                x = out_co[s * p + q]
                if x:
                    g = _gcd_ll(g, x)
                    if g == 1:
                        break
            if g == 1:
                break
        if g > 1:
            for s in range(nout):
                for q in range(p):
                    out_co[s * p + q] //= g
        idx_list = [out_idx[s] for s in range(nout)]
        co_list = [tuple(out_co[s * p + q] for q in range(p)) for s in range(nout)]
        return idx_list, co_list
    finally:
        free(am); free(bm); free(va); free(vb); free(redc)
        free(conv); free(acc); free(tmp); free(out_co); free(out_idx)


cdef void _mulred(long long *out, long long *a, long long *b, Py_ssize_t p,
                  long long *redc, long long *conv) noexcept:
    cdef Py_ssize_t i, j, k
    cdef long long v
    if p == 1:
        out[0] = a[0] * b[0]
        return
    for i in range(2 * p - 1):
        conv[i] = 0
    for i in range(p):
        if a[i] != 0:
            for j in range(p):
                conv[i + j] += a[i] * b[j]
    for i in range(p):
        out[i] = conv[i]
    for k in range(p, 2 * p - 1):
        v = conv[k]
        if v != 0:
            for i in range(p):
                out[i] += v * redc[(k - p) * p + i]


def combine_mod(amul, aidx, aco, bmul, bidx, bco, p):
    cdef Py_ssize_t na = len(aidx), nb = len(bidx)
    cdef long long pp = p
    cdef long long am = amul % pp, bm = bmul % pp, c
    cdef Py_ssize_t ia = 0, ib = 0
    idx_out = []
    co_out = []
    cdef long long va, vb
    while ia < na or ib < nb:
        if ib >= nb or (ia < na and aidx[ia] < bidx[ib]):
            va = aco[ia]
            c = am * va % pp
            pos = aidx[ia]
            ia += 1
        elif ia >= na or bidx[ib] < aidx[ia]:
            vb = bco[ib]
            c = (pp - bm * vb % pp) % pp
            pos = bidx[ib]
            ib += 1
        else:
            va = aco[ia]
            vb = bco[ib]
            c = (am * va - bm * vb) % pp
            if c < 0:
                c += pp
            pos = aidx[ia]
            ia += 1
            ib += 1
        if c:
            idx_out.append(pos)
            co_out.append(c)
    return idx_out, co_out
