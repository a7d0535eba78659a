"""The (2l+1)-dimensional evaluation module ``V_z`` and coproduct actions on mixed tensors."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .fock import FockSpace, FockVector, _acc
from .lattice import cartan_data
from .qscalar import ONE, ZERO, Scalar, omega_pow, q_pow

__all__ = [
    "EvalModule",
    "EvalVector",
    "MixedTensor",
    "eval_module",
    "eval_generator",
    "coproduct_apply",
]


class EvalVector:
    """Finite combination of ``v_m z^p``; keys are ``(m, p)`` with rational ``p``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[dict] = None):
        self.terms = terms if terms is not None else {}

    @classmethod
    def basis(cls, m: int, zpow=0, coeff: Scalar = ONE) -> "EvalVector":
        return cls({(m, Fraction(zpow)): coeff})

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, c)
        return EvalVector(out)

    def __sub__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, -c)
        return EvalVector(out)

    def scale(self, c) -> "EvalVector":
        c = Scalar.coerce(c)
        out = {}
        for k, x in self.terms.items():
            _acc(out, k, x * c)
        return EvalVector(out)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, EvalVector) and self.terms == other.terms

    __hash__ = None

    def __repr__(self):
        items = sorted(self.terms.items())
        return "EvalVector(%s)" % ", ".join("(%s)*v%d*z^%s" % (c, m, p) for (m, p), c in items)


class EvalModule:
    """Matrix units of ``e_i``, ``f_i`` (transposes) and diagonal ``h_i`` for rank ``l``."""

    def __init__(self, rank: int):
        self.rank = l = rank
        self.cd = cartan_data(rank)
        self.dim = 2 * l + 1
        w = omega_pow(Fraction(-1, 2))
        e = {}
        for i in range(1, l):
            e[i] = [(i, i + 1, ONE), (2 * l - i + 1, 2 * l - i + 2, ONE)]
        e[l] = [(l, l + 1, w), (l + 1, l + 2, w)]
        e[0] = [(2 * l, 1, ONE), (2 * l + 1, 2, ONE)]
        self.e = e
        self.f = {i: [(c, r, x) for r, c, x in ents] for i, ents in e.items()}
        h = {}
        for i in range(1, l):
            h[i] = {i: 1, i + 1: -1, 2 * l - i + 1: 1, 2 * l - i + 2: -1}
        h[l] = {l: 2, l + 2: -2}
        h[0] = {1: -1, 2: -1, 2 * l: 1, 2 * l + 1: 1}
        self.h = h

    def h_value(self, i: int, m: int) -> int:
        return self.h[i].get(m, 0)

    def weight_exponent(self, i: int, m: int) -> Fraction:
        """Exponent of ``q`` in ``q_i^{h_i} v_m``."""
        return self.cd.d[i] * self.h_value(i, m)

    def matrix(self, gen: str, i: int) -> list:
        """Dense matrix (list of rows) of ``e_i``, ``f_i`` or ``h_i``, ignoring the ``z`` shift."""
        n = self.dim
        M = [[ZERO] * n for _ in range(n)]
        if gen == "h":
            for m, x in self.h[i].items():
                M[m - 1][m - 1] = Scalar(x)
            return M
        for r, c, x in (self.e if gen == "e" else self.f)[i]:
            M[r - 1][c - 1] = x
        return M

    def classical_weight(self, m: int) -> tuple:
        """Coordinates of ``wt(v_m)`` over ``lambda_1..lambda_l`` (``<h_i, wt> = h_i(m)``)."""
        return tuple(Fraction(self.h_value(i, m)) for i in range(1, self.rank + 1))


@lru_cache(maxsize=None)
def eval_module(rank: int) -> EvalModule:
    return EvalModule(rank)


def eval_generator(V: EvalModule, gen: str, i: int, w: EvalVector, power=1) -> EvalVector:
    """``e_i``, ``f_i``, ``h_i`` or ``q_i^{power h_i}`` (``gen='K'``) on ``w``."""
    out: dict = {}
    if gen in ("h", "K"):
        for (m, p), c in w.terms.items():
            x = V.h_value(i, m)
            coef = Scalar(x) if gen == "h" else q_pow(power * V.cd.d[i] * x)
            _acc(out, (m, p), c * coef)
        return EvalVector(out)
    if gen not in ("e", "f"):
        raise ValueError("unknown generator %r" % gen)
    ents = V.e[i] if gen == "e" else V.f[i]
    dz = (1 if gen == "e" else -1) if i == 0 else 0
    for (m, p), c in w.terms.items():
        for r, col, x in ents:
            if col == m:
                _acc(out, (r, p + dz), c * x)
    return EvalVector(out)


class MixedTensor:
    """``sum_{m,p} F_{m,p} (x) v_m z^p`` (side ``'I'``) or ``v_m z^p (x) F_{m,p}`` (side ``'II'``)."""

    __slots__ = ("space", "side", "terms")

    def __init__(self, space: FockSpace, side: str, terms: Optional[dict] = None):
        if side not in ("I", "II"):
            raise ValueError("side must be 'I' or 'II'")
        self.space = space
        self.side = side
        self.terms = {k: v for k, v in (terms or {}).items() if not v.is_zero()}

    def add_component(self, m: int, zpow, vec: FockVector) -> None:
        key = (m, Fraction(zpow))
        old = self.terms.get(key)
        new = vec if old is None else old + vec
        if new.is_zero():
            self.terms.pop(key, None)
        else:
            self.terms[key] = new

    def __sub__(self, other: "MixedTensor") -> "MixedTensor":
        out = MixedTensor(self.space, self.side, dict(self.terms))
        for (m, p), v in other.terms.items():
            out.add_component(m, p, -v)
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def truncate(self, keep) -> "MixedTensor":
        """Drop Fock monomials for which ``keep(monomial)`` is false."""
        out = {}
        for k, v in self.terms.items():
            w = FockVector(v.space, {m: c for m, c in v.terms.items() if keep(m)})
            if not w.is_zero():
                out[k] = w
        return MixedTensor(self.space, self.side, out)

    def render(self) -> str:
        parts = []
        for (m, p), v in sorted(self.terms.items()):
            tag = "v%d*z^%s" % (m, p)
            parts.append("[%s]%s%s" % (v.render(), " (x) " if self.side == "I" else " <- ", tag))
        return " + ".join(parts) if parts else "0"


def coproduct_apply(gen: str, i: int, T: MixedTensor, fock_ops: dict) -> MixedTensor:
    """Apply ``Delta(e_i) = e_i (x) 1 + q_i^{h_i} (x) e_i``, ``Delta(f_i) = f_i (x) q_i^{-h_i} + 1 (x) f_i``
    or ``Delta(q_i^{h_i})`` (``gen='K'``).

    ``fock_ops`` maps ``('e'|'f', i)`` and ``('K', i, +-1)`` to Fock operators.
    """
    V = eval_module(T.space.rank)
    out = MixedTensor(T.space, T.side)
    for (m, p), F in T.terms.items():
        single = EvalVector.basis(m, p)
        if gen == "K":
            c = q_pow(V.weight_exponent(i, m))
            out.add_component(m, p, fock_ops[("K", i, 1)](F).scale(c))
            continue
        if gen not in ("e", "f"):
            raise ValueError("unknown generator %r" % gen)
        moved = eval_generator(V, gen, i, single)
        if T.side == "I":
            # Fock factor on the left
            if gen == "e":
                out.add_component(m, p, fock_ops[("e", i)](F))
                KF = fock_ops[("K", i, 1)](F)
                for (m2, p2), c in moved.terms.items():
                    out.add_component(m2, p2, KF.scale(c))
            else:
                c0 = q_pow(-V.weight_exponent(i, m))
                out.add_component(m, p, fock_ops[("f", i)](F).scale(c0))
                for (m2, p2), c in moved.terms.items():
                    out.add_component(m2, p2, F.scale(c))
        else:
            # V factor on the left
            if gen == "e":
                for (m2, p2), c in moved.terms.items():
                    out.add_component(m2, p2, F.scale(c))
                c0 = q_pow(V.weight_exponent(i, m))
                out.add_component(m, p, fock_ops[("e", i)](F).scale(c0))
            else:
                KF = fock_ops[("K", i, -1)](F)
                for (m2, p2), c in moved.terms.items():
                    out.add_component(m2, p2, KF.scale(c))
                out.add_component(m, p, fock_ops[("f", i)](F))
    return out
