import itertools

import pytest

from fknichols import diagonal as dg
from fknichols import reflection_groups as rg
from fknichols import symmetrizer as sm
from fknichols.cyclotomic import CyclotomicNumber, find_modular_spec


def diag_space(*args):
    if len(args) == 1:
        return sm.space_from_diagonal(dg.full_cyclic_braiding(args[0]))
    return sm.space_from_diagonal(dg.cyclic_braiding(args[0], args[1]))


@pytest.fixture(scope="module")
def b2_space(yd_cache):
    return sm.space_from_yd(yd_cache(2, 1, 2))


def test_braid_lift_identity_and_transposition():
    space = diag_space(4)
    ident = sm.braid_lift(space, 2, (0, 1))
    assert ident == sm.MonomialMatrix.identity(space.dim**2, space.scalar_order)
    psi = sm.braid_lift(space, 2, (1, 0))
    assert psi == sm._psi_matrix(space, 2, 1)


def test_braid_lift_longest_element_both_words():
    for space in (diag_space(4), diag_space(8, [2, 7])):
        p1 = sm._psi_matrix(space, 3, 1)
        p2 = sm._psi_matrix(space, 3, 2)
        word121 = p1.compose(p2).compose(p1)
        word212 = p2.compose(p1).compose(p2)
        assert word121 == word212
        assert sm.braid_lift(space, 3, (2, 1, 0)) == word121


def _lift_along(space, degree, word):
    out = sm.MonomialMatrix.identity(space.dim**degree, space.scalar_order)
    for pos in word:
        out = sm._psi_matrix(space, degree, pos).compose(out)
    return out


def _alternate_reduced_word(perm):
    """Reduced word built from the highest descent (differs from bubble order)."""
    p = list(perm)
    word = []
    while True:
        descents = [i for i in range(len(p) - 1) if p[i] > p[i + 1]]
        if not descents:
            return word
        i = descents[-1]
        p[i], p[i + 1] = p[i + 1], p[i]
        word.append(i + 1)


def test_matsumoto_reduced_word_independence(rng):
    for _ in range(6):
        n = rng.choice([3, 4, 5, 6, 8])
        r = rng.randrange(2, 4)
        rows = tuple(tuple(rng.randrange(n) for _ in range(r)) for _ in range(r))
        space = sm.space_from_diagonal(dg.DiagonalBraiding(n, rows))
        assert sm.yang_baxter_holds(space)
        for d in (3, 4):
            for perm in itertools.permutations(range(d)):
                w1 = sm.reduced_word(perm)
                w2 = _alternate_reduced_word(perm)
                assert len(w1) == len(w2)
                assert _lift_along(space, d, w1) == _lift_along(space, d, w2)


@pytest.mark.parametrize(
    "space_args, degrees",
    [
        ((2,), range(4)),
        ((3,), range(5)),
        ((4,), range(5)),
        ((6, (1, 3)), range(5)),
        ((8, (2, 7)), range(5)),
    ],
    ids=["C2", "C3", "C4", "C6-13", "C8-27"],
)
def test_recursive_equals_direct(space_args, degrees):
    space = diag_space(*space_args)
    calc = sm.NicholsCalculator(space)
    for d in degrees:
        assert calc.graded_dim(d) == sm.direct_graded_dim(space, d), d


def test_recursive_equals_direct_group_case(b2_space, yd_cache):
    for space in (
        b2_space,
        sm.space_from_yd(yd_cache(3, 3, 2)),
        sm.space_from_yd(yd_cache(4, 2, 2)),
    ):
        calc = sm.NicholsCalculator(space)
        for d in range(4):
            assert calc.graded_dim(d) == sm.direct_graded_dim(space, d)


def test_quadratic_multidegree_sums(b2_space, yd_cache):
    for space in (b2_space, sm.space_from_yd(yd_cache(4, 2, 2))):
        calc = sm.QuadraticCalculator(space)
        for d in range(5):
            md = calc.multidegree_dims(d)
            assert sum(md.values()) == calc.graded_dim(d)


def test_c2_graded_dims():
    space = diag_space(2)
    assert [sm.nichols_graded_dim(space, d) for d in range(4)] == [1, 1, 0, 0]


def test_b2_nichols_series(b2_space):
    calc = sm.NicholsCalculator(b2_space)
    dims = [calc.graded_dim(d) for d in range(9)]
    assert dims == [1, 4, 8, 12, 14, 12, 8, 4, 1]
    assert sum(dims) == 64
    # the series equals the expansion of (1+t)^4 (1+t^2)^2 = specialized
    # multigraded polynomial (1+t1)^2 (1+t1t2)^2 (1+t2)^2 at t1 = t2 = t
    poly = [1]
    for factor in ([1, 1], [1, 1], [1, 0, 1], [1, 0, 1], [1, 1], [1, 1]):
        new = [0] * 9
        for i, x in enumerate(poly):
            for j, y in enumerate(factor):
                if i + j <= 8:
                    new[i + j] += x * y
        poly = new
    assert dims == poly


def test_b2_bigraded_component(b2_space):
    calc = sm.NicholsCalculator(b2_space)
    md = calc.multidegree_dims(2)
    # coefficient of t1 t2 in (1+t1)^2 (1+t1t2)^2 (1+t2)^2: expand exactly
    coeff = 0
    for a in range(3):
        for b in range(3):
            for c in range(3):
                from math import comb

                if a + b == 1 and c + b == 1:
                    coeff += comb(2, a) * comb(2, b) * comb(2, c)
    assert coeff == 6
    assert md[("V0", "V1")] == coeff
    assert md[("V0", "V0")] == 1 and md[("V1", "V1")] == 1


def test_multidegree_specialization(b2_space):
    calc = sm.NicholsCalculator(b2_space)
    for d in range(5):
        md = calc.multidegree_dims(d)
        assert sum(md.values()) == calc.graded_dim(d)
        assert all(len(key) == d for key in md)


def _full_matrix_rank_fraction(space, degree):
    """Independent oracle: dense RREF rank of the whole symmetrizer."""
    from fknichols._linalg import rref_fraction
    from fractions import Fraction

    L = space.scalar_order
    size = space.dim**degree
    cols = []
    for key in range(size):
        total = {}
        for perm in itertools.permutations(range(degree)):
            vec = {key: CyclotomicNumber.one(L)}
            for pos in sm.reduced_word(perm):
                new = {}
                w = space.dim ** (degree - pos - 1)
                for kk, c in vec.items():
                    pair = (kk // w) % (space.dim**2)
                    t = space.braid_targets[pair]
                    e = space.braid_exps[pair]
                    nk = kk + (t - pair) * w
                    new[nk] = c * CyclotomicNumber.zeta_power(L, e)
                vec = new
            for kk, c in vec.items():
                total[kk] = total.get(kk, CyclotomicNumber.zero(L)) + c
        cols.append(total)
    # spread cyclotomic coordinates into rational rows
    from fknichols._numtheory import euler_phi

    phi = euler_phi(L)
    rows = []
    for coord in range(size):
        for component in range(phi):
            rows.append(
                [Fraction(col.get(coord, CyclotomicNumber.zero(L)).coeffs[component]) for col in cols]
            )
    _, pivots = rref_fraction(rows)
    return len(pivots)


def test_blockwise_rank_equals_full_matrix_rank(b2_space):
    calc = sm.NicholsCalculator(b2_space)
    for d in (2, 3):
        assert calc.graded_dim(d) == _full_matrix_rank_fraction(b2_space, d)


def test_quadratic_relations_s2(yd_cache):
    space = sm.space_from_yd(yd_cache(1, 1, 2))
    rels = sm.quadratic_relations(space)
    assert len(rels) == 1  # all of V ox V; E = k + V
    calc = sm.QuadraticCalculator(space)
    assert [calc.graded_dim(d) for d in range(4)] == [1, 1, 0, 0]


def test_quadratic_relations_dimensions(b2_space, yd_cache):
    assert len(sm.quadratic_relations(b2_space)) == 16 - 8
    d5 = sm.space_from_yd(yd_cache(5, 5, 2))
    assert len(sm.quadratic_relations(d5)) == 25 - 16


def test_b2_quadratic_series(b2_space):
    calc = sm.QuadraticCalculator(b2_space)
    assert [calc.graded_dim(d) for d in range(6)] == [1, 4, 8, 12, 16, 20]


def test_dihedral_quadratic_series(yd_cache):
    d5 = sm.space_from_yd(yd_cache(5, 5, 2))
    calc = sm.QuadraticCalculator(d5)
    assert [calc.graded_dim(d) for d in range(5)] == [1, 5, 16, 45, 121]
    d7 = sm.space_from_yd(yd_cache(7, 7, 2))
    calc = sm.QuadraticCalculator(d7)
    assert [calc.graded_dim(d) for d in range(4)] == [1, 7, 36, 175]


def _ideal_rank_fraction(space, degree):
    """Independent oracle for the quadratic ideal: dense RREF of the span of
    all V^i ox R ox V^(d-2-i)."""
    from fknichols._linalg import rref_fraction
    from fractions import Fraction
    from fknichols._numtheory import euler_phi

    L = space.scalar_order
    phi = euler_phi(L)
    dim = space.dim
    rels = sm.quadratic_relations(space)
    cols = []
    for i in range(degree - 1):
        left = dim**i
        right = dim ** (degree - 2 - i)
        for rel in rels:
            for lo in range(left):
                for hi in range(right):
                    col = {}
                    for key, c in rel.items():
                        packed = (lo * dim**2 + key) * right + hi
                        col[packed] = c
                    cols.append(col)
    rows = []
    for coord in range(dim**degree):
        for component in range(phi):
            rows.append(
                [
                    Fraction(
                        col.get(coord, CyclotomicNumber.zero(L)).coeffs[component]
                    )
                    for col in cols
                ]
            )
    _, pivots = rref_fraction(rows)
    return len(pivots)


def test_c4_compare_diverges_at_three_with_oracle():
    space = diag_space(4)
    cmp = sm.hilbert_compare(space, 3)
    assert cmp.nichols.per_degree == (1, 3, 7, 14)
    assert cmp.quadratic.per_degree == (1, 3, 7, 16)
    assert cmp.divergence_degree == 3
    # independent dense oracle for the degree-3 ideal rank
    assert 27 - _ideal_rank_fraction(space, 3) == 16


def test_b2_compare_diverges_at_four(b2_space):
    cmp = sm.hilbert_compare(b2_space, 4)
    assert cmp.nichols.per_degree == (1, 4, 8, 12, 14)
    assert cmp.quadratic.per_degree == (1, 4, 8, 12, 16)
    assert cmp.divergence_degree == 4
    assert 16 - _ideal_rank_fraction(b2_space, 2) == 8
    assert 64 - _ideal_rank_fraction(b2_space, 3) == 12
    assert 256 - _ideal_rank_fraction(b2_space, 4) == 16


def test_s2_compare_never_diverges(yd_cache):
    space = sm.space_from_yd(yd_cache(1, 1, 2))
    cmp = sm.hilbert_compare(space, 5)
    assert cmp.divergence_degree is None


def test_nichols_bounded_by_quadratic(b2_space, yd_cache):
    for space, maxd in [
        (b2_space, 5),
        (diag_space(4), 4),
        (sm.space_from_yd(yd_cache(5, 5, 2)), 3),
    ]:
        cmp = sm.hilbert_compare(space, maxd)
        for d in range(maxd + 1):
            assert cmp.nichols.per_degree[d] <= cmp.quadratic.per_degree[d]
        assert cmp.nichols.per_degree[:3] == cmp.quadratic.per_degree[:3]


def test_modular_mode_matches_exact(b2_space):
    for d in range(5):
        assert sm.nichols_graded_dim(b2_space, d, mode="modular") == (
            sm.nichols_graded_dim(b2_space, d)
        )
    space = diag_space(4)
    spec = find_modular_spec(4, index=1)
    for d in range(5):
        assert sm.nichols_graded_dim(space, d, mode="modular", spec=spec) == (
            sm.nichols_graded_dim(space, d)
        )
    calc = sm.QuadraticCalculator(b2_space, mode="modular")
    assert [calc.graded_dim(d) for d in range(5)] == [1, 4, 8, 12, 16]


def test_budget_error():
    space = diag_space(4)
    with pytest.raises(sm.ResourceBudgetError) as err:
        sm.nichols_graded_dim(space, 6, block_budget=10)
    assert err.value.required > 10
    # modular mode doubles the cap
    small = diag_space(2)
    assert sm.nichols_graded_dim(small, 2, block_budget=1) == 0  # blocks of size 1


def test_g442_multigraded_matches_b2_under_bijection(b2_space, yd_cache):
    src_mod = yd_cache(2, 1, 2)
    dst_mod = yd_cache(4, 4, 2)
    dst_space = sm.space_from_yd(dst_mod)
    hb = sm.nichols_hilbert(b2_space, 4)
    hi = sm.nichols_hilbert(dst_space, 4)
    label_map = {"V0": "Veven", "V1": "Vodd"}
    translated = {
        tuple(sorted(label_map[l] for l in md)): v
        for md, v in hb.per_multidegree.items()
    }
    assert translated == hi.per_multidegree
    assert hb.per_degree == hi.per_degree


def test_hilbert_json_round_trip(b2_space):
    import json

    data = sm.nichols_hilbert(b2_space, 3)
    text = json.dumps(sm.hilbert_to_json(data), sort_keys=True)
    assert json.dumps(json.loads(text), sort_keys=True) == text
