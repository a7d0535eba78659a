from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uqbl.lattice import cartan_data

RANKS = (2, 3, 4)


def kac_matrix(l):
    # B_l^(1): node 0 attached to node 2, node l short
    n = l + 1
    A = [[0] * n for _ in range(n)]
    for i in range(n):
        A[i][i] = 2
    edges = [(0, 2)] + [(i, i + 1) for i in range(1, l - 1)]
    for i, j in edges:
        A[i][j] = A[j][i] = -1
    A[l - 1][l] = -1
    A[l][l - 1] = -2
    if l == 2:
        # nodes 0 and 1 both meet the short node 2
        A = [[2, 0, -1], [0, 2, -1], [-2, -2, 2]]
    return A


@pytest.mark.parametrize("l", RANKS)
def test_cartan_matrix(l):
    cd = cartan_data(l)
    assert [list(r) for r in cd.A] == kac_matrix(l)
    assert cd.d == tuple([1] * l + [Fraction(1, 2)])


@pytest.mark.parametrize("l", RANKS)
def test_form_on_roots(l):
    cd = cartan_data(l)
    for i in range(l + 1):
        for j in range(l + 1):
            assert cd.form(cd.simple_root(i), cd.simple_root(j)) == cd.d[i] * cd.A[i][j]
            assert cd.d[i] * cd.A[i][j] == cd.d[j] * cd.A[j][i]


@pytest.mark.parametrize("l", RANKS)
def test_fundamental_weights_are_dual(l):
    cd = cartan_data(l)
    for i in range(l + 1):
        for j in range(l + 1):
            assert cd.pairing(j, cd.fundamental(i)) == (1 if i == j else 0)
        assert cd.level(cd.fundamental(i)) == cd.comarks[i]
        assert cd.pairing("d", cd.fundamental(i)) == 0


@pytest.mark.parametrize("l", RANKS)
def test_null_root(l):
    cd = cartan_data(l)
    delta = cd.zero()
    for i, a in enumerate(cd.marks):
        delta = delta + cd.simple_root(i) * a
    assert delta == cd.delta
    for i in range(l + 1):
        assert cd.form(delta, cd.simple_root(i)) == 0
    assert cd.form(delta, delta) == 0


@pytest.mark.parametrize("l", RANKS)
def test_classical_weights(l):
    cd = cartan_data(l)
    lam1 = cd.classical_weight(1)
    laml = cd.classical_weight(l)
    assert cd.form(lam1, lam1) == 1
    assert cd.form(laml, laml) == Fraction(l, 4)
    assert cd.level(lam1) == 0
    with pytest.raises(ValueError):
        cd.classical_weight(0)


@pytest.mark.parametrize("l", RANKS)
def test_generator_exponents_round_trip(l):
    cd = cartan_data(l)
    for i in range(1, l + 1):
        a = cd.simple_root(i)
        m = cd.exponents_of(a)
        assert cd.classical_part(cd.weight_from_exponents(m)) == cd.classical_part(a)
    with pytest.raises(ValueError):
        # lambda_l is not in the span for the NS lattice
        cd.exponents_of(cd.classical_weight(l))


def test_rank_one_rejected():
    with pytest.raises(ValueError):
        cartan_data(1)


vec = st.lists(st.integers(-3, 3), min_size=3, max_size=3).map(tuple)


@settings(max_examples=80, deadline=None)
@given(vec, vec, vec)
def test_cocycle_is_bimultiplicative(m, m2, n):
    cd = cartan_data(3)
    s = tuple(a + b for a, b in zip(m, m2))
    assert cd.cocycle_sign(s, n) == cd.cocycle_sign(m, n) * cd.cocycle_sign(m2, n)
    assert cd.cocycle_sign(n, s) == cd.cocycle_sign(n, m) * cd.cocycle_sign(n, m2)


@settings(max_examples=80, deadline=None)
@given(vec, vec)
def test_cocycle_commutator(m, n):
    cd = cartan_data(3)
    g = cd.generator_gram
    off = sum(m[a] * n[b] * g[a][b] for a in range(3) for b in range(3) if a != b)
    assert cd.cocycle_sign(m, n) * cd.cocycle_sign(n, m) == (-1) ** int(off)
