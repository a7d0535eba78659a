from fractions import Fraction

import pytest

from uqbl.evalrep import EvalVector, MixedTensor, coproduct_apply, eval_generator, eval_module
from uqbl.fock import FockVector, basis_list, fock_module
from uqbl.qscalar import ONE, ZERO, q_binomial, q_int, q_pow
from uqbl.vertexop import chevalley_table

RANKS = (2, 3)


def gen(V, g, i, w, power=1):
    return eval_generator(V, g, i, w, power)


@pytest.mark.parametrize("l", RANKS)
def test_e_f_bracket_on_v(l):
    V = eval_module(l)
    d = V.cd.d
    for m in range(1, 2 * l + 2):
        w = EvalVector.basis(m)
        for i in range(l + 1):
            for j in range(l + 1):
                lhs = gen(V, "e", i, gen(V, "f", j, w)) - gen(V, "f", j, gen(V, "e", i, w))
                rhs = EvalVector()
                if i == j:
                    rhs = w.scale(q_int(V.h_value(i, m), d[i]))
                assert lhs == rhs, (i, j, m)


@pytest.mark.parametrize("l", RANKS)
def test_weights_of_e(l):
    V = eval_module(l)
    A = V.cd.A
    for m in range(1, 2 * l + 2):
        w = EvalVector.basis(m)
        for i in range(l + 1):
            for j in range(l + 1):
                ew = gen(V, "e", j, w)
                lhs = gen(V, "K", i, ew)
                rhs = gen(V, "e", j, gen(V, "K", i, w)).scale(q_pow(V.cd.d[i] * A[i][j]))
                assert lhs == rhs


@pytest.mark.parametrize("l", RANKS)
@pytest.mark.parametrize("g", ["e", "f"])
def test_serre_on_v(l, g):
    V = eval_module(l)
    A = V.cd.A
    for i in range(l + 1):
        for j in range(l + 1):
            if i == j:
                continue
            p = 1 - A[i][j]
            for m in range(1, 2 * l + 2):
                total = EvalVector()
                for k in range(p + 1):
                    w = EvalVector.basis(m)
                    for _ in range(k):
                        w = gen(V, g, i, w)
                    w = gen(V, g, j, w)
                    for _ in range(p - k):
                        w = gen(V, g, i, w)
                    total = total + w.scale(q_binomial(p, k, V.cd.d[i]) * (-1) ** k)
                assert total.is_zero(), (g, i, j, m)


def test_weights_of_extremal_vectors():
    V = eval_module(3)
    assert V.classical_weight(1) == (1, 0, 0)
    assert V.classical_weight(7) == (-1, 0, 0)
    assert V.classical_weight(4) == (0, 0, 0)
    # e_0 raises the z power, f_0 lowers it
    assert gen(V, "e", 0, EvalVector.basis(1)) == EvalVector.basis(6, 1)
    assert gen(V, "f", 0, EvalVector.basis(6)) == EvalVector.basis(1, -1)


def _delta(g, i, T, ops):
    return coproduct_apply(g, i, T, ops)


@pytest.mark.parametrize("side", ["I", "II"])
def test_coproduct_is_a_homomorphism(side):
    # K [Delta e_i, Delta f_j] = delta_ij (K^2 - 1)/(q_i - q_i^{-1}) with K = Delta(q_i^{h_i})
    l = 2
    mod = fock_module(l, "0")
    sp = mod.space
    ops = chevalley_table(sp)
    d = sp.cd.d
    for mono in basis_list(mod, Fraction(1, 2)):
        for m in (1, l + 1, 2 * l + 1):
            T = MixedTensor(sp, side)
            T.add_component(m, 0, FockVector.basis(sp, mono))
            for i in range(l + 1):
                c = ONE / (q_pow(d[i]) - q_pow(-d[i]))
                for j in range(l + 1):
                    ef = _delta("e", i, _delta("f", j, T, ops), ops)
                    fe = _delta("f", j, _delta("e", i, T, ops), ops)
                    lhs = _delta("K", i, ef - fe, ops)
                    rhs = MixedTensor(sp, side)
                    if i == j:
                        KK = _delta("K", i, _delta("K", i, T, ops), ops)
                        for (mm, p), v in KK.terms.items():
                            rhs.add_component(mm, p, v.scale(c))
                        for (mm, p), v in T.terms.items():
                            rhs.add_component(mm, p, v.scale(-c))
                    assert (lhs - rhs).is_zero(), (side, i, j, m, mono)


def test_unknown_generator():
    V = eval_module(2)
    with pytest.raises(ValueError):
        gen(V, "x", 1, EvalVector.basis(1))
    assert EvalVector.basis(1).scale(ZERO).is_zero()
