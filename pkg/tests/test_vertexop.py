from collections import Counter
from fractions import Fraction

import pytest

from uqbl.currents import boson_op, chevalley_op
from uqbl.fock import FockMonomial, FockVector, basis_list, fock_module
from uqbl.qscalar import OMEGA, ONE, ZERO, q_int, q_omega_pow
from uqbl.report import run_check
from uqbl.vertexop import (
    FAMILIES,
    dual_checks,
    g_anticommutation_checks,
    intertwining_checks,
    leading_term_checks,
    matrix_element,
    mode_window,
    normalization_checks,
    normalization_value,
    vo_family,
)


def failing(checks):
    return Counter(r.relation for r in map(run_check, checks) if r.failures)


def states(l, label, D, irreducible=None):
    mod = fock_module(l, label)
    return basis_list(mod, D, irreducible=(label != "l") if irreducible is None else irreducible)


@pytest.mark.parametrize("kind", FAMILIES)
@pytest.mark.parametrize("label", ["0", "1", "l"])
def test_normalized_conditions_hold(kind, label):
    assert normalization_value(vo_family(2, kind, label)) == ONE


@pytest.mark.parametrize(
    "l,kind,label,expected",
    [
        (2, "I", "0", ONE),
        (2, "I", "1", OMEGA.inverse()),
        (3, "I", "1", -OMEGA.inverse()),
        (2, "I", "l", ONE),
        (2, "I*", "l", ONE),
        (2, "II", "l", -ONE),
        (2, "II*", "l", -ONE),
        (2, "II*", "1", -ONE),
        (2, "II*", "0", -OMEGA.inverse()),
        (3, "II*", "0", OMEGA.inverse()),
    ],
)
def test_closed_form_prefactor_values(l, kind, label, expected):
    assert normalization_value(vo_family(l, kind, label, normalization="closed-form")) == expected


def test_normalization_and_leading_term_suites():
    assert failing(normalization_checks(2)) == Counter()
    res = [run_check(c) for c in leading_term_checks(2)]
    assert all(r.status == "pass" for r in res)
    notes = {r.module: r.note for r in res}
    assert "(t^2 + 1)/(t)" in notes["1"]


def test_odd_rank_ramond_family_is_rejected():
    with pytest.raises(ValueError):
        normalization_value(vo_family(3, "I", "l", normalization="closed-form"))
    with pytest.raises(ValueError):
        normalization_checks(3, labels=("l",))


def test_printed_ramond_exponent_moves_the_leading_term():
    fam = vo_family(2, "I", "l", shift="printed", normalization="closed-form")
    assert fam.mode_coset == Fraction(1, 2)
    assert normalization_value(fam) == ZERO


@pytest.mark.parametrize("kind", ["I", "II"])
@pytest.mark.parametrize("label", ["0", "1", "l"])
def test_intertwining_small(kind, label):
    fam = vo_family(2, kind, label)
    st = states(2, label, Fraction(1, 2))
    low = states(2, label, 0)
    assert failing(intertwining_checks(fam, st, 1, coproduct_states=low)) == Counter()


def test_printed_type_two_weights_break_intertwining():
    st = states(2, "0", 1)
    low = states(2, "0", 0)
    good = vo_family(2, "II", "0", reading="corrected")
    bad = vo_family(2, "II", "0", reading="printed")
    assert failing(intertwining_checks(good, st, 1, coproduct_states=low)) == Counter()
    broken = failing(intertwining_checks(bad, st, 1, coproduct_states=low))
    assert broken["coproduct"] > 0
    assert broken["[a_1,X_1]"] > 0


def test_a1_minus_sign():
    # [a_1(-1), X_{2l+1}(N)] = +[1](q^{2l-1/2} omega)^{-1} X_{2l+1}(N+1); the opposite sign fails
    l = 2
    fam = vo_family(l, "I", "0")
    sp = fam.space
    a = boson_op(sp, 1, -1)
    c = q_int(1) * q_omega_pow(-(2 * l - Fraction(1, 2)), -1)
    plus = minus = 0
    for m in states(l, "0", 1):
        v = FockVector.basis(sp, m)
        for N in range(-1, 2):
            X = fam.component(2 * l + 1, N)
            lhs = a(X(v)) - X(a(v))
            rhs = fam.component(2 * l + 1, N + 1)(v)
            plus += not (lhs - rhs.scale(c)).is_zero()
            minus += not (lhs + rhs.scale(c)).is_zero()
    assert plus == 0
    assert minus > 0


def test_e_i_kills_the_right_components():
    # e_i moves v_{i+1} -> v_i and v_{2l-i+2} -> v_{2l-i+1}, so [e_i, X_m] = 0 for m = i+1, 2l-i+2
    l = 2
    fam = vo_family(l, "I", "0")
    sp = fam.space
    i = 1
    e = chevalley_op(sp, "e", i)
    tally = {}
    for m_idx in (i + 1, 2 * l - i + 2, 2 * l - i + 1):
        bad = 0
        for m in states(l, "0", 1):
            v = FockVector.basis(sp, m)
            for N in range(-1, 2):
                X = fam.component(m_idx, N)
                bad += not (e(X(v)) - X(e(v))).is_zero()
        tally[m_idx] = bad
    assert tally[i + 1] == 0
    assert tally[2 * l - i + 2] == 0
    assert tally[2 * l - i + 1] > 0


def test_dual_and_g_suites():
    fam = vo_family(2, "I*", "0")
    assert failing(dual_checks(fam, states(2, "0", Fraction(1, 2)), 1)) == Counter()
    fam = vo_family(2, "II*", "l")
    assert failing(dual_checks(fam, states(2, "l", 0), 1)) == Counter()
    fam = vo_family(2, "I", "l")
    assert failing(g_anticommutation_checks(fam, states(2, "l", 1), 1)) == Counter()


def test_matrix_element_weight_grading():
    l = 2
    fam = vo_family(l, "I", "0")
    tgt = fock_module(l, "1")
    src = fock_module(l, "0")
    assert matrix_element(fam, tgt.highest, 2 * l + 1, 0, src.highest) == ONE
    # v_1 carries the opposite weight, so this entry vanishes
    assert matrix_element(fam, tgt.highest, 1, 0, src.highest) == ZERO
    off = FockMonomial((), (), tuple(a + b for a, b in zip(tgt.highest_lattice, (1, 0))))
    assert matrix_element(fam, off, 2 * l + 1, 0, src.highest) == ZERO


def test_mode_window():
    assert mode_window(vo_family(2, "I", "0"), 2) == [-2, -1, 0, 1, 2]
    with pytest.raises(ValueError):
        vo_family(2, "I", "0").check_index(6)
    with pytest.raises(ValueError):
        vo_family(2, "III", "0")
