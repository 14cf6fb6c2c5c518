"""Backend parity: the compiled kernels must agree with the pure twins on
randomized inputs, including the big-coefficient path of the exact combine
(which exercises the compiled kernel's overflow guard and fallback)."""

import random

import pytest

from fknichols import _kernels_py
from fknichols.cyclotomic import reduction_rows
from fknichols._numtheory import euler_phi

compiled = pytest.importorskip("fknichols._kernels")


def _random_diagram(rand):
    r = rand.randrange(1, 8)
    n = rand.randrange(2, 40)
    diag = [rand.randrange(n) for _ in range(r)]
    edge = [[0] * r for _ in range(r)]
    for i in range(r):
        for j in range(i + 1, r):
            e = rand.randrange(n)
            edge[i][j] = edge[j][i] = e
    return diag, edge, n


def test_cartan_and_reflect_parity():
    rand = random.Random(5)
    for _ in range(1500):
        diag, edge, n = _random_diagram(rand)
        r = len(diag)
        for i in range(r):
            fast = compiled.cartan_mrow(diag, edge, n, i)
            pure = _kernels_py.cartan_mrow(diag, edge, n, i)
            assert fast == pure, (diag, edge, n, i)
            if _kernels_py.UNDEFINED in pure:
                continue
            fd, fe = compiled.reflect_diagram(diag, edge, n, i, pure)
            pd, pe = _kernels_py.reflect_diagram(diag, edge, n, i, pure)
            assert list(fd) == list(pd)
            assert [list(x) for x in fe] == [list(x) for x in pe]
            b = [[rand.randrange(n) for _ in range(r)] for _ in range(r)]
            fm = compiled.reflect_exponent_matrix(b, n, i, pure)
            pm = _kernels_py.reflect_exponent_matrix(b, n, i, pure)
            assert [list(x) for x in fm] == [list(x) for x in pm]


def _random_sparse(rand, phi, span, max_coeff):
    nnz = rand.randrange(0, 10)
    idx = sorted(rand.sample(range(span), nnz))
    co = [
        tuple(rand.randrange(-max_coeff, max_coeff + 1) for _ in range(phi))
        for _ in idx
    ]
    keep = [k for k, c in zip(idx, co) if any(c)]
    co = [c for c in co if any(c)]
    return keep, co


@pytest.mark.parametrize("conductor", [1, 2, 3, 4, 8, 10, 12])
@pytest.mark.parametrize("max_coeff", [7, 2**40])
def test_combine_exact_parity(conductor, max_coeff):
    rand = random.Random(conductor * max_coeff)
    phi = euler_phi(conductor)
    red = reduction_rows(conductor)
    for _ in range(200):
        amul = tuple(rand.randrange(-max_coeff, max_coeff + 1) for _ in range(phi))
        bmul = tuple(rand.randrange(-max_coeff, max_coeff + 1) for _ in range(phi))
        aidx, aco = _random_sparse(rand, phi, 40, max_coeff)
        bidx, bco = _random_sparse(rand, phi, 40, max_coeff)
        fast = compiled.combine_exact(amul, aidx, aco, bmul, bidx, bco, phi, red)
        pure = _kernels_py.combine_exact(amul, aidx, aco, bmul, bidx, bco, phi, red)
        assert list(fast[0]) == list(pure[0])
        assert [tuple(c) for c in fast[1]] == [tuple(c) for c in pure[1]]


def test_combine_mod_parity():
    rand = random.Random(99)
    for _ in range(400):
        p = rand.choice([5, 97, 193, 2**31 - 1])
        na = rand.randrange(0, 8)
        nb = rand.randrange(0, 8)
        aidx = sorted(rand.sample(range(30), na))
        bidx = sorted(rand.sample(range(30), nb))
        aco = [rand.randrange(1, p) for _ in aidx]
        bco = [rand.randrange(1, p) for _ in bidx]
        am, bm = rand.randrange(p), rand.randrange(p)
        fast = compiled.combine_mod(am, aidx, aco, bm, bidx, bco, p)
        pure = _kernels_py.combine_mod(am, aidx, aco, bm, bidx, bco, p)
        assert list(fast[0]) == list(pure[0])
        assert list(fast[1]) == list(pure[1])
