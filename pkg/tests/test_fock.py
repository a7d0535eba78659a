from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uqbl.currents import boson_op, fermion_op
from uqbl.fock import (
    FockMonomial,
    FockVector,
    Sector,
    apply_boson,
    apply_fermion,
    apply_G,
    basis_list,
    boson_bracket,
    enumerate_basis,
    fock_module,
    g_eigenvalue,
    generating_function_counts,
    graded_dimensions,
)
from uqbl.qscalar import T, ZERO, q_pow


def fermion_series(n_fermions, sector, top2, sign=1):
    """Coefficients (in steps of 1/2) of prod (1 + sign*x^k)^n over fermion modes k > 0."""
    series = [0] * (top2 + 1)
    series[0] = 1
    start = 1 if sector is Sector.NS else 2
    for two_k in range(start, top2 + 1, 2):
        for _ in range(n_fermions):
            for e in range(top2, two_k - 1, -1):
                series[e] += sign * series[e - two_k]
    return series


def free_fermion_dims(l, label, top):
    """Graded dimensions of the whole Fock space from 2l+1 free fermions."""
    mod = fock_module(l, label)
    top2 = int(2 * (top + mod.offset))
    s = fermion_series(2 * l + 1, mod.space.sector, top2)
    zero = 2 ** (l + 1) if mod.space.sector is Sector.R else 1
    return {Fraction(e, 2) - mod.offset: zero * c for e, c in enumerate(s) if c}


def vacuum_module_dims(l, top):
    """Even fermion number part: the vacuum module of so(2l+1) at level one."""
    top2 = int(2 * top)
    plus = fermion_series(2 * l + 1, Sector.NS, top2)
    minus = fermion_series(2 * l + 1, Sector.NS, top2, sign=-1)
    return {Fraction(e, 2): (a + b) // 2 for e, (a, b) in enumerate(zip(plus, minus)) if a + b}


@pytest.mark.parametrize("l,label,top", [(2, "0", 3), (2, "l", 3), (3, "0", 2), (3, "l", 2), (2, "1", Fraction(5, 2))])
def test_dimensions_match_free_fermions(l, label, top):
    mod = fock_module(l, label)
    got = {k: len(v) for k, v in enumerate_basis(mod, top).items()}
    assert got == free_fermion_dims(l, label, top)
    assert got == generating_function_counts(mod, top)


@pytest.mark.parametrize("l", [2, 3])
def test_irreducible_vacuum_module(l):
    mod = fock_module(l, "0")
    got = {k: len(v) for k, v in enumerate_basis(mod, 2, irreducible=True).items()}
    assert got == vacuum_module_dims(l, 2)


def test_hand_counts():
    rows = graded_dimensions(fock_module(2, "0"), 1)
    assert [(r["degree"], r["dim"], r["dim_G_plus"]) for r in rows] == [("0", 1, 1), ("1/2", 5, 0), ("1", 10, 10)]
    rows = graded_dimensions(fock_module(2, "l"), 1)
    assert [(r["degree"], r["dim"], r["dim_G_plus"]) for r in rows] == [("0", 8, 4), ("1", 40, 20)]


def test_boson_bracket_hand_values():
    q1 = q_pow(1)
    assert boson_bracket(2, 1, 1, 1) == q1 + q1.inverse()
    assert boson_bracket(2, 2, 2, 1) == (T + T.inverse()) ** 2
    assert boson_bracket(2, 1, 2, 1) == -(T + T.inverse())
    assert boson_bracket(2, 2, 1, 1) == boson_bracket(2, 1, 2, 1)
    assert boson_bracket(3, 1, 3, 2) == ZERO
    with pytest.raises(ValueError):
        boson_bracket(2, 1, 1, 0)


def test_boson_action():
    mod = fock_module(2, "0")
    v = mod.highest_vector()
    w = apply_boson(1, -1, apply_boson(2, -1, v))
    assert apply_boson(1, -1, apply_boson(2, -1, v)) == apply_boson(2, -1, apply_boson(1, -1, v))
    assert apply_boson(1, 1, w) == apply_boson(2, -1, v).scale(boson_bracket(2, 1, 1, 1)) + apply_boson(1, -1, v).scale(
        boson_bracket(2, 1, 2, 1)
    )
    assert apply_boson(1, 2, w).is_zero()
    with pytest.raises(ValueError):
        apply_boson(1, 0, v)
    with pytest.raises(ValueError):
        apply_boson(3, -1, v)


def test_fermion_signs():
    mod = fock_module(2, "0")
    v = mod.highest_vector()
    a = apply_fermion(Fraction(-1, 2), apply_fermion(Fraction(-3, 2), v))
    b = apply_fermion(Fraction(-3, 2), apply_fermion(Fraction(-1, 2), v))
    assert a == -b
    assert apply_fermion(Fraction(-1, 2), apply_fermion(Fraction(-1, 2), v)).is_zero()
    assert apply_fermion(Fraction(1, 2), apply_fermion(Fraction(-1, 2), v)) == v.scale(T + T.inverse())
    with pytest.raises(ValueError):
        apply_fermion(1, v)


def test_ramond_zero_mode_squares_to_one():
    mod = fock_module(2, "l")
    v = mod.highest_vector()
    p0 = fermion_op(mod.space, 0)
    assert p0(p0(v)) == v
    assert g_eigenvalue(mod.space, mod.highest) == 1
    assert apply_G(p0(v)) == -p0(v)


def test_g_sign_convention():
    for l in (2, 3):
        for lab in ("0", "1", "l"):
            mod = fock_module(l, lab)
            expected = -1 if lab == "1" else 1
            assert g_eigenvalue(mod.space, mod.highest) == expected


def test_vectors_from_different_spaces_do_not_mix():
    a = fock_module(2, "0").highest_vector()
    b = fock_module(2, "l").highest_vector()
    with pytest.raises(ValueError):
        a + b


def test_basis_is_sorted_and_unique():
    mod = fock_module(2, "l")
    basis = basis_list(mod, 2)
    assert len(set(basis)) == len(basis)
    assert basis == sorted(basis, key=mod.space.sort_key)
    assert mod.degree(basis[0]) == 0


@pytest.fixture(scope="module")
def ns_states():
    return basis_list(fock_module(2, "0"), Fraction(3, 2))


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_g_is_an_involution_commuting_with_bosons(data, ns_states):
    mod = fock_module(2, "0")
    sp = mod.space
    m = data.draw(st.sampled_from(ns_states))
    v = FockVector.basis(sp, m)
    assert apply_G(apply_G(v)) == v
    j = data.draw(st.integers(1, 2))
    n = data.draw(st.integers(-2, 2).filter(bool))
    a = boson_op(sp, j, n)
    assert apply_G(a(v)) == a(apply_G(v))
    k = data.draw(st.sampled_from([Fraction(x, 2) for x in (-3, -1, 1, 3)]))
    p = fermion_op(sp, k)
    assert apply_G(p(v)) == -p(apply_G(v))


def test_degree_relative_to_module():
    m0 = fock_module(2, "0")
    m1 = fock_module(2, "1")
    assert m1.degree(m0.highest) == Fraction(-1, 2)
    assert m0.degree(m1.highest) == Fraction(1, 2)
    assert m0.degree(FockMonomial(((1, 2),), (3,), m0.highest_lattice)) == Fraction(7, 2)
