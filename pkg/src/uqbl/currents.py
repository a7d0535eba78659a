"""Drinfeld currents, Chevalley generators and their relation suites on the level-one Fock spaces.

Conventions: ``x_i^{+-}(z) = sum_n x_i^{+-}(n) z^{-n}``, ``gamma^{1/2} = t = q^{1/2}``.
``phi_i^+(r)`` is the coefficient of ``u^{-r}`` (r >= 0) and ``phi_i^-(-r)``
the coefficient of ``u^{r}``; both vanish outside these ranges.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable, Optional

from .fock import (
    FockModule,
    FockMonomial,
    FockSpace,
    FockVector,
    FreeFieldOperator,
    _acc,
    apply_linear,
    boson_bracket,
)
from .lattice import AffineWeight
from .qscalar import OMEGA, ONE, ZERO, Scalar, q_binomial, q_int, q_pow, t_pow
from .report import Check

__all__ = [
    "Op",
    "x_operator",
    "x_op",
    "x_mode",
    "phi_op",
    "phi_mode",
    "boson_op",
    "fermion_op",
    "h_value",
    "q_h_op",
    "q_d_op",
    "chevalley_op",
    "chevalley",
    "e0_prime",
    "f0_prime",
    "p_chain",
    "drinfeld_checks",
    "chevalley_checks",
    "serre_checks",
    "isomorphism_checks",
]


class Op:
    """Linear operator on one Fock space, evaluated per monomial with memoization.

    ``weight`` is the classical weight shift and ``degree`` the change of degree.
    """

    def __init__(self, key, space: FockSpace, terms: Callable, weight: AffineWeight, degree=0):
        self.key = key
        self.space = space
        self._terms = terms
        self.weight = weight
        self.degree = Fraction(degree)
        self._memo: dict = {}

    def terms(self, mono: FockMonomial):
        hit = self._memo.get(mono)
        if hit is None:
            hit = tuple(self._terms(mono))
            self._memo[mono] = hit
        return hit

    def __call__(self, v: FockVector) -> FockVector:
        if v.space is not self.space:
            raise ValueError("operator %r applied to a vector of another space" % (self.key,))
        return apply_linear(self.space, self.terms, v)

    def on(self, mono: FockMonomial) -> FockVector:
        return FockVector(self.space, dict(self.terms(mono)))

    def __repr__(self):
        return "Op(%r)" % (self.key,)


def _memo_op(space: FockSpace, key, build: Callable[[], Op]) -> Op:
    k = ("op",) + key
    op = space.cache.get(k)
    if op is None:
        op = build()
        space.cache[k] = op
    return op


def vector_op(key, space, fn: Callable[[FockVector], FockVector], weight, degree=0) -> Op:
    """Wrap a vector-level function as a memoized :class:`Op`."""
    return Op(key, space, lambda m: fn(FockVector.basis(space, m)).terms.items(), weight, degree)


def _classical_root(space: FockSpace, i: int) -> AffineWeight:
    cd = space.cd
    return cd.classical_to_affine(cd.classical_part(cd.simple_root(i)))


# -- currents -------------------------------------------------------------------------------


def x_operator(space: FockSpace, i: int, sign: int) -> FreeFieldOperator:
    """The free-field expression of ``x_i^{sign}(z)``."""
    key = ("xff", i, sign)
    hit = space.cache.get(key)
    if hit is not None:
        return hit
    cd = space.cd
    l = cd.rank
    if not 1 <= i <= l or sign not in (1, -1):
        raise ValueError("x_i^{+-} needs 1 <= i <= %d and sign +-1" % l)
    om = OMEGA if i == l else ONE

    def create(j, k):
        if j != i:
            return ZERO
        return q_pow(Fraction(-sign * k, 2)) / q_int(k) * om * sign

    def translate(c, k):
        return -sign * q_pow(Fraction(-sign * k, 2)) / q_int(k) * om * boson_bracket(l, i, c, k)

    alpha = cd.simple_root(i)
    exps = cd.exponents_of(alpha)
    # e^{-alpha_i} is the group inverse of e^{alpha_i}; it differs from the
    # normal-form word e^{-m} by the cocycle sign eps(m, -m)
    minus = tuple(-e for e in exps)
    inv_sign = cd.cocycle_sign(exps, minus) if sign < 0 else 1
    op = FreeFieldOperator(
        key,
        space,
        create,
        translate,
        tuple(sign * e for e in exps),
        prefactor=ONE if inv_sign > 0 else -ONE,
        shift=Fraction(1) if i < l else Fraction(1, 2),
        eigen_weight=alpha * sign,
        fermion=(i == l),
    )
    space.cache[key] = op
    return op


def x_op(space: FockSpace, i: int, sign: int, n: int) -> Op:
    ff = x_operator(space, i, sign)
    return _memo_op(
        space,
        ("x", i, sign, n),
        lambda: Op(("x", i, sign, n), space, lambda m: ff.mode_terms(-n, m), _classical_root(space, i) * sign, -n),
    )


def x_mode(i: int, sign: int, n: int, v: FockVector) -> FockVector:
    return x_op(v.space, i, sign, n)(v)


def phi_operator(space: FockSpace, i: int, sign: int) -> FreeFieldOperator:
    key = ("phiff", i, sign)
    hit = space.cache.get(key)
    if hit is not None:
        return hit
    cd = space.cd
    l = cd.rank
    di = cd.d[i]
    qi_diff = q_pow(di) - q_pow(-di)
    zero_lat = tuple([0] * l)
    if sign > 0:
        create = lambda j, k: ZERO
        translate = lambda c, k: qi_diff * boson_bracket(l, i, c, k)
    else:
        create = lambda j, k: -qi_diff if j == i else ZERO
        translate = lambda c, k: ZERO
    op = FreeFieldOperator(
        key,
        space,
        create,
        translate,
        zero_lat,
        eigen_weight=cd.simple_root(i) * sign,
        base=(1, 0),
        eigen_z=False,
    )
    space.cache[key] = op
    return op


def phi_op(space: FockSpace, i: int, sign: int, r: int) -> Op:
    """``phi_i^+(r)`` (coefficient of ``u^{-r}``) or ``phi_i^-(r)`` in the standard index, ``r <= 0``."""
    zero = space.cd.zero()
    if (sign > 0 and r < 0) or (sign < 0 and r > 0):
        return _memo_op(space, ("phi", i, sign, r), lambda: Op(("phi", i, sign, r), space, lambda m: (), zero, -r))
    ff = phi_operator(space, i, sign)
    N = -r if sign > 0 else -r  # u^{-r} for phi^+, u^{|r|} = u^{-r} for phi^-(r), r <= 0
    return _memo_op(
        space, ("phi", i, sign, r), lambda: Op(("phi", i, sign, r), space, lambda m: ff.mode_terms(N, m), zero, -r)
    )


def phi_mode(i: int, sign: int, r: int, v: FockVector) -> FockVector:
    """Index convention: ``phi^+(r)`` is the ``u^{-r}`` and ``phi^-(r)`` the ``u^{r}`` coefficient, ``r >= 0``."""
    if r < 0:
        raise ValueError("phi modes are indexed by r >= 0")
    return phi_op(v.space, i, sign, r if sign > 0 else -r)(v)


def boson_op(space: FockSpace, j: int, k: int) -> Op:
    from .fock import _boson_terms

    zero = space.cd.zero()
    return _memo_op(space, ("a", j, k), lambda: Op(("a", j, k), space, lambda m: _boson_terms(space, j, k, m), zero, -k))


def fermion_op(space: FockSpace, k) -> Op:
    from .fock import _fermion_terms

    k = Fraction(k)
    two_k = int(2 * k)
    if not space.fermion_parity_ok(two_k) or 2 * k != two_k:
        raise ValueError("fermion mode %s not in the %s sector" % (k, space.sector.value))
    zero = space.cd.zero()
    return _memo_op(space, ("psi", two_k), lambda: Op(("psi", two_k), space, lambda m: _fermion_terms(space, two_k, m), zero, -k))


def h_value(space: FockSpace, i: int, lat: tuple) -> Fraction:
    """``<h_i, beta>``; for ``i = 0`` through ``gamma q^{-sum a_j^vee h_j}``."""
    cd = space.cd
    if i == 0:
        return 1 - sum(cd.comarks[j] * h_value(space, j, lat) for j in range(1, cd.rank + 1))
    return space.pairing(cd.simple_root(i), lat) / cd.d[i]


def q_h_op(space: FockSpace, i: int, power=1) -> Op:
    """``q^{power * h_i}``."""
    power = Fraction(power)
    zero = space.cd.zero()
    return _memo_op(
        space,
        ("qh", i, power),
        lambda: Op(("qh", i, power), space, lambda m: ((m, q_pow(power * h_value(space, i, m.lattice))),), zero),
    )


def q_d_op(module: FockModule, power=1) -> Op:
    """``q^{power * d}`` with ``d = -degree`` relative to ``module``."""
    space = module.space
    power = Fraction(power)
    zero = space.cd.zero()
    return _memo_op(
        space,
        ("qd", module.label, power),
        lambda: Op(("qd", module.label, power), space, lambda m: ((m, q_pow(-power * module.degree(m))),), zero),
    )


# -- Chevalley generators -------------------------------------------------------------------


def _w(space: FockSpace, i: int, sign: int, A: Op) -> Op:
    """``w_i^{sign}(A) = x_i^{sign}(0) A - q^{sign (alpha_i, wt A)} A x_i^{sign}(0)``."""
    cd = space.cd
    x0 = x_op(space, i, sign, 0)
    c = q_pow(sign * cd.form(cd.simple_root(i), A.weight))

    def fn(v):
        return x0(A(v)) - A(x0(v)).scale(c)

    return vector_op(("w", i, sign, A.key), space, fn, A.weight + x0.weight, A.degree)


def _w_chain(space: FockSpace, sign: int, inner: Op) -> Op:
    l = space.rank
    order = list(range(2, l + 1)) + list(range(l, 1, -1))
    op = inner
    for i in reversed(order):
        op = _w(space, i, sign, op)
    return op


def e0_prime(space: FockSpace) -> Op:
    """``e_0' = w_2^- ... w_l^- w_l^- ... w_2^- x_1^-(1)``."""
    return _memo_op(space, ("e0'",), lambda: _w_chain(space, -1, x_op(space, 1, -1, 1)))


def f0_prime(space: FockSpace) -> Op:
    """``w_2^+ ... w_l^+ w_l^+ ... w_2^+ x_1^+(-1)``."""
    return _memo_op(space, ("f0'",), lambda: _w_chain(space, 1, x_op(space, 1, 1, -1)))


def chevalley_op(space: FockSpace, gen: str, i: int) -> Op:
    """``gen`` in ``{'e', 'f'}``; ``i = 0`` uses the nested ``w`` maps."""
    if gen not in ("e", "f"):
        raise ValueError("Chevalley generator must be 'e' or 'f'")
    sign = 1 if gen == "e" else -1
    if i >= 1:
        return x_op(space, i, sign, 0)
    l = space.rank
    cd = space.cd
    if gen == "e":
        inner = e0_prime(space)
        pre = q_h_op(space, 0, 1)

        def fn(v):
            return inner(pre(v)).scale(q_pow(-1))

    else:
        inner = f0_prime(space)
        pre = q_h_op(space, 0, -1)
        coef = q_pow(2 * l - 3) * OMEGA * OMEGA * q_pow(1)

        def fn(v):
            return pre(inner(v)).scale(coef)

    return _memo_op(space, ("chev", gen, 0), lambda: vector_op(("chev", gen, 0), space, fn, inner.weight, inner.degree))


def chevalley(gen: str, i: int, v: FockVector, module: Optional[FockModule] = None) -> FockVector:
    """Apply ``e_i``, ``f_i``, ``q^{h_i}`` (``gen='qh'``) or ``q^{d}`` (``gen='qd'``, needs ``module``)."""
    if gen == "qh":
        return q_h_op(v.space, i)(v)
    if gen == "qd":
        if module is None:
            raise ValueError("q^d needs the module for its degree reference")
        return q_d_op(module, i)(v)
    return chevalley_op(v.space, gen, i)(v)


def p_chain(space: FockSpace, x: Op, kind: str = "qi") -> Op:
    """``P_2^+ ... P_l^+ P_l^+ ... P_2^+ x`` with ``P_i^+ X = [x_i^+(0), X] q_i^{-h_i}``.

    ``kind='q'`` uses ``q^{-h_i}`` at every node instead.
    """
    l = space.rank
    cd = space.cd
    order = list(range(2, l + 1)) + list(range(l, 1, -1))
    op = x
    for i in reversed(order):
        xi = x_op(space, i, 1, 0)
        qh = q_h_op(space, i, -(cd.d[i] if kind == "qi" else 1))
        inner = op

        def fn(v, xi=xi, qh=qh, inner=inner):
            w = qh(v)
            return xi(inner(w)) - inner(xi(w))

        op = vector_op(("P", i, kind, op.key), space, fn, op.weight + xi.weight, op.degree)
    return op


# -- relation suites ----------------------------------------------------------------------------


def _state_fn(space: FockSpace, fn: Callable[[FockVector], FockVector]) -> Callable[[FockMonomial], FockVector]:
    return lambda m: fn(FockVector.basis(space, m))


def _gamma_half(power) -> Scalar:
    """``gamma^{power/2}`` at level one: ``t^{power}``."""
    p = Fraction(power)
    if p.denominator != 1:
        raise ValueError("gamma^{1/2} powers must be integral")
    return t_pow(int(p))


def drinfeld_checks(module: FockModule, states: list, mode_bound: int) -> list:
    """Instances of the Drinfeld relations for all ``i, j`` and modes in ``[-M, M]``."""
    space = module.space
    cd = space.cd
    l = cd.rank
    M = mode_bound
    modes = range(-M, M + 1)
    out = []
    lab = module.label

    def add(rel, params, fn):
        out.append(Check("drinfeld", rel, params, lab, _state_fn(space, fn), list(states)))

    # q_i^{h_i} x_j^{+-}(n) q_i^{-h_i} = q_i^{+-a_ij} x_j^{+-}(n)
    for i in range(1, l + 1):
        Ki = q_h_op(space, i, cd.d[i])
        Kinv = q_h_op(space, i, -cd.d[i])
        for j in range(1, l + 1):
            for s in (1, -1):
                for n in modes:
                    x = x_op(space, j, s, n)
                    c = q_pow(s * cd.d[i] * cd.A[i][j])
                    add("K-x", {"i": i, "j": j, "sign": s, "n": n}, lambda v, x=x, c=c, Ki=Ki, Kinv=Kinv: Ki(x(Kinv(v))) - x(v).scale(c))
    # q^d x q^{-d} = q^n x
    qd, qdi = q_d_op(module, 1), q_d_op(module, -1)
    for j in range(1, l + 1):
        for s in (1, -1):
            for n in modes:
                x = x_op(space, j, s, n)
                add("qd-x", {"j": j, "sign": s, "n": n}, lambda v, x=x, n=n: qd(x(qdi(v))) - x(v).scale(q_pow(n)))
    # [a_i(n), a_j(m)]
    for i in range(1, l + 1):
        for j in range(1, l + 1):
            for n in modes:
                if n == 0:
                    continue
                for m in modes:
                    if m == 0:
                        continue
                    a, b = boson_op(space, i, n), boson_op(space, j, m)
                    c = boson_bracket(l, i, j, n) if n + m == 0 else ZERO
                    add("a-a", {"i": i, "j": j, "n": n, "m": m}, lambda v, a=a, b=b, c=c: a(b(v)) - b(a(v)) - v.scale(c))
    # [a_i(n), x_j^{+-}(m)] = +-(1/n)[n a_ij]_{q_i} gamma^{-+|n|/2} x_j^{+-}(n+m)
    for i in range(1, l + 1):
        for j in range(1, l + 1):
            for s in (1, -1):
                for n in modes:
                    if n == 0:
                        continue
                    for m in modes:
                        a = boson_op(space, i, n)
                        x = x_op(space, j, s, m)
                        y = x_op(space, j, s, n + m)
                        c = q_int(n * cd.A[i][j], cd.d[i]) * Fraction(s, n) * _gamma_half(-s * abs(n))
                        add(
                            "a-x",
                            {"i": i, "j": j, "sign": s, "n": n, "m": m},
                            lambda v, a=a, x=x, y=y, c=c: a(x(v)) - x(a(v)) - y(v).scale(c),
                        )
    # x_i(n+1) x_j(m) - q_i^{+-a_ij} x_j(m) x_i(n+1) = q_i^{+-a_ij} x_i(n) x_j(m+1) - x_j(m+1) x_i(n)
    for i in range(1, l + 1):
        for j in range(1, l + 1):
            for s in (1, -1):
                c = q_pow(s * cd.d[i] * cd.A[i][j])
                for n in range(-M, M):
                    for m in range(-M, M):
                        xi1, xj = x_op(space, i, s, n + 1), x_op(space, j, s, m)
                        xi, xj1 = x_op(space, i, s, n), x_op(space, j, s, m + 1)

                        def fn(v, xi1=xi1, xj=xj, xi=xi, xj1=xj1, c=c):
                            lhs = xi1(xj(v)) - xj(xi1(v)).scale(c)
                            rhs = xi(xj1(v)).scale(c) - xj1(xi(v))
                            return lhs - rhs

                        add("x-x", {"i": i, "j": j, "sign": s, "n": n, "m": m}, fn)
    # [x_i^+(n), x_j^-(m)]
    for i in range(1, l + 1):
        qi = q_pow(cd.d[i]) - q_pow(-cd.d[i])
        for j in range(1, l + 1):
            for n in modes:
                for m in modes:
                    xp, xm = x_op(space, i, 1, n), x_op(space, j, -1, m)
                    if i == j:
                        pp = phi_op(space, i, 1, n + m)
                        pm = phi_op(space, i, -1, n + m)
                        cp = _gamma_half(n - m) / qi
                        cm = _gamma_half(m - n) / qi

                        def fn(v, xp=xp, xm=xm, pp=pp, pm=pm, cp=cp, cm=cm):
                            return xp(xm(v)) - xm(xp(v)) - pp(v).scale(cp) + pm(v).scale(cm)

                    else:

                        def fn(v, xp=xp, xm=xm):
                            return xp(xm(v)) - xm(xp(v))

                    add("x+x-", {"i": i, "j": j, "n": n, "m": m}, fn)
    out.extend(serre_drinfeld_checks(module, states, mode_bound))
    return out


def serre_drinfeld_checks(module: FockModule, states: list, mode_bound: int) -> list:
    """Serre relations for the currents: one check per ``(i, j, sign)`` covering every
    multiset ``{r_1..r_p}`` and every ``s`` in ``[-M, M]``.

    The sum over permutations is symmetric, so multisets suffice.  All instances
    for one state share their right suffixes, and the words of each instance are
    grouped by their leftmost operator before it is applied.
    """
    space = module.space
    cd = space.cd
    l = cd.rank
    M = mode_bound
    out = []
    for i in range(1, l + 1):
        for j in range(1, l + 1):
            if i == j:
                continue
            p = 1 - cd.A[i][j]
            for s in (1, -1):
                fn = _serre_block(space, i, j, s, p, M)
                out.append(
                    Check(
                        "drinfeld",
                        "drinfeld-serre",
                        {"i": i, "j": j, "sign": s, "p": p, "modes": "|r|,|s| <= %d" % M},
                        module.label,
                        fn,
                        list(states),
                        compare=_first_failures,
                        note="instances per state: %d" % _serre_instance_count(p, M),
                    )
                )
    return out


def _serre_instance_count(p: int, M: int) -> int:
    return sum(1 for _ in itertools.combinations_with_replacement(range(-M, M + 1), p)) * (2 * M + 1)


def _first_failures(results: dict):
    bad = [(k, v) for k, v in results.items() if not v.is_zero()]
    if not bad:
        return None
    (rs, t), v = bad[0]
    return "%d instance(s) fail; first r=%s s=%s: %s" % (len(bad), rs, t, v.render())


def _serre_block(space: FockSpace, i: int, j: int, sign: int, p: int, M: int):
    cd = space.cd
    modes = range(-M, M + 1)
    coeffs = [(-1) ** k * q_binomial(p, k, cd.d[i]) for k in range(p + 1)]
    ops = {("i", r): x_op(space, i, sign, r) for r in modes}
    ops.update({("j", r): x_op(space, j, sign, r) for r in modes})
    plan = []
    for rs in itertools.combinations_with_replacement(modes, p):
        perms = sorted(set(itertools.permutations(rs)))
        mult = _orbit_multiplicity(rs)
        for t in modes:
            words = []
            for perm in perms:
                for k in range(p + 1):
                    word = tuple(("i", r) for r in perm[:k]) + (("j", t),) + tuple(("i", r) for r in perm[k:])
                    words.append((coeffs[k] * mult, word))
            plan.append(((rs, t), words))

    def fn(mono):
        memo = {(): FockVector.basis(space, mono)}

        def suffix(word):
            hit = memo.get(word)
            if hit is None:
                hit = ops[word[0]](suffix(word[1:]))
                memo[word] = hit
            return hit

        results = {}
        for key, words in plan:
            groups: dict = {}
            for c, word in words:
                acc = groups.setdefault(word[0], {})
                for m, x in suffix(word[1:]).terms.items():
                    _acc(acc, m, x * c)
            total: dict = {}
            for head, acc in groups.items():
                for m, x in ops[head](FockVector(space, acc)).terms.items():
                    _acc(total, m, x)
            results[key] = FockVector(space, total)
        return results

    return fn


def _orbit_multiplicity(rs) -> int:
    from collections import Counter
    from math import factorial

    m = 1
    for c in Counter(rs).values():
        m *= factorial(c)
    return m


def _word_sum(space: FockSpace, words, mult: int = 1):
    """``sum coeff * (op_1 ... op_n)(v)`` with shared right suffixes evaluated once."""

    def fn(v):
        memo = {(): v}

        def suffix(ops):
            key = tuple(o.key for o in ops)
            hit = memo.get(key)
            if hit is None:
                hit = ops[0](suffix(ops[1:]))
                memo[key] = hit
            return hit

        total: dict = {}
        for c, ops in words:
            w = suffix(tuple(ops))
            cc = c * mult
            for m, x in w.terms.items():
                _acc(total, m, x * cc)
        return FockVector(space, total)

    return fn


def chevalley_checks(module: FockModule, states: list) -> list:
    """``[e_i, f_j]`` and the weight relations for ``i, j = 0..l``."""
    space = module.space
    cd = space.cd
    l = cd.rank
    out = []
    lab = module.label
    E = [chevalley_op(space, "e", i) for i in range(l + 1)]
    F = [chevalley_op(space, "f", i) for i in range(l + 1)]
    for i in range(l + 1):
        di = cd.d[i]
        qi = q_pow(di) - q_pow(-di)
        K, Kinv = q_h_op(space, i, di), q_h_op(space, i, -di)
        for j in range(l + 1):
            e, f = E[i], F[j]
            if i == j:

                def fn(v, e=e, f=f, K=K, Kinv=Kinv, qi=qi):
                    return e(f(v)) - f(e(v)) - (K(v) - Kinv(v)).scale(qi.inverse())

            else:

                def fn(v, e=e, f=f):
                    return e(f(v)) - f(e(v))

            out.append(Check("chevalley", "e-f", {"i": i, "j": j}, lab, _state_fn(space, fn), list(states)))
    # q^{h_j} e_i q^{-h_j} = q^{a_ji} e_i; same for f with the inverse; q^d with delta_{i0}
    for i in range(l + 1):
        for j in range(l + 1):
            Q, Qi = q_h_op(space, j, 1), q_h_op(space, j, -1)
            for gen, X, s in (("e", E[i], 1), ("f", F[i], -1)):
                c = q_pow(s * cd.A[j][i])
                out.append(
                    Check(
                        "chevalley",
                        "qh-%s" % gen,
                        {"h": j, "i": i},
                        lab,
                        _state_fn(space, lambda v, Q=Q, Qi=Qi, X=X, c=c: Q(X(Qi(v))) - X(v).scale(c)),
                        list(states),
                    )
                )
        qd, qdi = q_d_op(module, 1), q_d_op(module, -1)
        for gen, X, s in (("e", E[i], 1), ("f", F[i], -1)):
            c = q_pow(s if i == 0 else 0)
            out.append(
                Check(
                    "chevalley",
                    "qd-%s" % gen,
                    {"i": i},
                    lab,
                    _state_fn(space, lambda v, X=X, c=c: qd(X(qdi(v))) - X(v).scale(c)),
                    list(states),
                )
            )
    return out


def serre_checks(module: FockModule, states: list) -> list:
    """Chevalley q-Serre relations for all ``i != j`` in ``0..l``."""
    space = module.space
    cd = space.cd
    l = cd.rank
    out = []
    for gen in ("e", "f"):
        X = [chevalley_op(space, gen, i) for i in range(l + 1)]
        for i in range(l + 1):
            for j in range(l + 1):
                if i == j:
                    continue
                p = 1 - cd.A[i][j]
                words = []
                for k in range(p + 1):
                    c = (-1) ** k * q_binomial(p, k, cd.d[i])
                    words.append((c, [X[i]] * (p - k) + [X[j]] + [X[i]] * k))
                out.append(
                    Check(
                        "serre",
                        "chevalley-serre-%s" % gen,
                        {"i": i, "j": j, "p": p},
                        module.label,
                        _state_fn(space, _word_sum(space, words)),
                        list(states),
                    )
                )
    return out


def isomorphism_checks(module: FockModule, states: list, kind: str = "qi") -> list:
    """The ``P^+`` chain applied to ``e_0'`` against ``(q^{1/2}+q^{-1/2})^2 x_1^-(1)``."""
    space = module.space
    chain = p_chain(space, e0_prime(space), kind)
    x = x_op(space, 1, -1, 1)
    c = (q_pow(Fraction(1, 2)) + q_pow(Fraction(-1, 2))) ** 2
    fn = lambda v: chain(v) - x(v).scale(c)
    return [Check("isomorphism", "P-chain", {"kind": kind}, module.label, _state_fn(space, fn), list(states))]
