"""Pure-Python kernels: the fallback twin of the compiled extension.

Every function here has an identical counterpart in ``fknichols._kernels``
(Cython).  ``fknichols.backend`` picks one implementation at import time.

Conventions shared by both backends:

* Braiding exponent data is integer arithmetic mod N.  A "Cartan m-row" for
  vertex ``i`` stores ``m[j] = -a_ij >= 0`` for ``j != i``, ``m[i] = -2``
  (so the reflection formula is uniform in j), and ``m[j] = -1`` marks an
  undefined entry.
* Exact sparse vectors over the ring Z[zeta] are pairs ``(idx, co)`` where
  ``idx`` is a strictly increasing list of ints and ``co`` a parallel list
  of coefficient tuples of length phi (the degree of the cyclotomic ring).
  ``red`` is the reduction table: ``red[k]`` gives the coefficient tuple of
  ``x**(phi+k)`` reduced mod the cyclotomic polynomial.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd

UNDEFINED = -1
DIAGONAL_M = -2


@lru_cache(maxsize=65536)
def _inv_mod(a: int, n: int) -> int:
    return pow(a, -1, n)


def _min_solution(d: int, target: int, n: int) -> int | None:
    """Least m >= 0 with m*d = target (mod n), or None."""
    g = gcd(d, n)
    if target % g:
        return None
    n_g = n // g
    return (target // g) * _inv_mod(d // g, n_g) % n_g


def cartan_mrow(diag, edge, n_mod, i):
    """Cartan m-row at vertex i from diagram exponent data.

    ``diag[j]`` is the exponent of q_jj, ``edge[j][k]`` the exponent of
    q_jk q_kj (symmetric, 0 on the diagonal), both mod ``n_mod``.
    """
    r = len(diag)
    row = [0] * r
    row[i] = DIAGONAL_M
    d = diag[i] % n_mod
    for j in range(r):
        if j == i:
            continue
        e = edge[i][j] % n_mod
        if e == 0:
            row[j] = 0
            continue
        if d == 0:
            row[j] = UNDEFINED
            continue
        m1 = n_mod // gcd(n_mod, d) - 1
        m2 = _min_solution(d, (n_mod - e) % n_mod, n_mod)
        row[j] = m1 if m2 is None else min(m1, m2)
    return row


def reflect_exponent_matrix(b, n_mod, i, mrow):
    """Reflected exponent matrix b'_jk = B(s_i e_j, s_i e_k) mod n_mod."""
    r = len(b)
    bii = b[i][i]
    out = []
    for j in range(r):
        mj = mrow[j]
        bji = b[j][i]
        row_j = b[j]
        row_i = b[i]
        new_row = [0] * r
        for k in range(r):
            new_row[k] = (
                row_j[k] + mrow[k] * bji + mj * row_i[k] + mj * mrow[k] * bii
            ) % n_mod
        out.append(new_row)
    return out


def reflect_diagram(diag, edge, n_mod, i, mrow):
    """Reflected (diag, edge) diagram data at vertex i."""
    r = len(diag)
    di = diag[i] % n_mod
    new_diag = list(diag)
    for j in range(r):
        if j != i:
            mj = mrow[j]
            new_diag[j] = (diag[j] + mj * edge[i][j] + mj * mj * di) % n_mod
    new_edge = [[0] * r for _ in range(r)]
    for j in range(r):
        for k in range(j + 1, r):
            if j == i or k == i:
                t = j + k - i
                val = (-edge[i][t] - 2 * mrow[t] * di) % n_mod
            else:
                val = (
                    edge[j][k]
                    + mrow[j] * edge[i][k]
                    + mrow[k] * edge[i][j]
                    + 2 * mrow[j] * mrow[k] * di
                ) % n_mod
            new_edge[j][k] = val
            new_edge[k][j] = val
    return new_diag, new_edge


def scan_bad_reflection(diag, edge, n_mod):
    """First (j, v) such that reflecting at j gives vertex v label 1 while v
    keeps an incident edge, scanning all j at once; None if no single
    reflection exposes a failure.

    Labels after reflecting at j follow d'_v = d_v + m_v e_jv + m_v^2 d_j
    and the edges of a label-0 candidate are checked explicitly, so the
    whole scan is quadratic instead of cubic.
    """
    r = len(diag)
    for j in range(r):
        if diag[j] % n_mod == 0:
            # undefined (visible at the current state) or the identity
            continue
        m = cartan_mrow(diag, edge, n_mod, j)
        dj = diag[j] % n_mod
        erow = edge[j]
        for v in range(r):
            if v == j:
                continue
            mv = m[v]
            if (diag[v] + mv * erow[v] + mv * mv * dj) % n_mod:
                continue
            # candidate: check v stays connected in the reflected diagram
            for w in range(r):
                if w == v:
                    continue
                if w == j:
                    val = (-erow[v] - 2 * mv * dj) % n_mod
                else:
                    val = (
                        edge[v][w]
                        + mv * erow[w]
                        + m[w] * erow[v]
                        + 2 * mv * m[w] * dj
                    ) % n_mod
                if val:
                    return j, v
    return None


def _cyc_mul(a, b, phi, red):
    """Product of two coefficient tuples mod the cyclotomic polynomial."""
    if phi == 1:
        return (a[0] * b[0],)
    conv = [0] * (2 * phi - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    conv[i + j] += ai * bj
    out = conv[:phi]
    for k in range(phi, 2 * phi - 1):
        v = conv[k]
        if v:
            rk = red[k - phi]
            for m in range(phi):
                if rk[m]:
                    out[m] += v * rk[m]
    return tuple(out)


def _content(co_list):
    g = 0
    for co in co_list:
        for x in co:
            if x:
                g = gcd(g, x)
                if g == 1:
                    return 1
    return g


def combine_exact(amul, aidx, aco, bmul, bidx, bco, phi, red):
    """Sparse combination amul*A - bmul*B over Z[zeta], content-stripped.

    Returns (idx, co) with zero entries dropped.
    """
    na, nb = len(aidx), len(bidx)
    ia = ib = 0
    idx_out = []
    co_out = []
    while ia < na or ib < nb:
        if ib >= nb or (ia < na and aidx[ia] < bidx[ib]):
            c = _cyc_mul(amul, aco[ia], phi, red)
            pos = aidx[ia]
            ia += 1
        elif ia >= na or bidx[ib] < aidx[ia]:
            t = _cyc_mul(bmul, bco[ib], phi, red)
            c = tuple(-x for x in t)
            pos = bidx[ib]
            ib += 1
        else:
            ca = _cyc_mul(amul, aco[ia], phi, red)
            cb = _cyc_mul(bmul, bco[ib], phi, red)
            c = tuple(x - y for x, y in zip(ca, cb))
            pos = aidx[ia]
            ia += 1
            ib += 1
        if any(c):
            idx_out.append(pos)
            co_out.append(c)
    g = _content(co_out)
    if g > 1:
        co_out = [tuple(x // g for x in c) for c in co_out]
    return idx_out, co_out


def combine_mod(amul, aidx, aco, bmul, bidx, bco, p):
    """Sparse combination amul*A - bmul*B over the prime field F_p."""
    na, nb = len(aidx), len(bidx)
    ia = ib = 0
    idx_out = []
    co_out = []
    while ia < na or ib < nb:
        if ib >= nb or (ia < na and aidx[ia] < bidx[ib]):
            c = amul * aco[ia] % p
            pos = aidx[ia]
            ia += 1
        elif ia >= na or bidx[ib] < aidx[ia]:
            c = -bmul * bco[ib] % p
            pos = bidx[ib]
            ib += 1
        else:
            c = (amul * aco[ia] - bmul * bco[ib]) % p
            pos = aidx[ia]
            ia += 1
            ib += 1
        if c:
            idx_out.append(pos)
            co_out.append(c)
    return idx_out, co_out
