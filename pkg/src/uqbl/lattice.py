"""Cartan data of the affine algebra of type B_l^(1) and the extended weight lattice.

Affine weights are coordinate vectors over ``(Lambda_0, ..., Lambda_l, delta)``.
The lattice group algebra is generated by ``e^{lambda_1}, e^{alpha_1}, ...,
e^{alpha_{l-1}}`` whose normal-ordered words carry a sign cocycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Optional, Sequence

from flint import fmpq, fmpq_mat

__all__ = [
    "CartanData",
    "AffineWeight",
    "ClassicalVector",
    "GroupAlgebraElement",
    "cartan_data",
    "bilinear_form",
    "dual_pairing",
    "classical_weight",
    "cocycle_mul",
    "weight_of",
]

HALF = Fraction(1, 2)


def _q(x) -> fmpq:
    x = Fraction(x)
    return fmpq(x.numerator, x.denominator)


@dataclass(frozen=True)
class AffineWeight:
    """Rational coordinates over ``Lambda_0..Lambda_l, delta``."""

    coords: tuple

    def __add__(self, other: "AffineWeight") -> "AffineWeight":
        return AffineWeight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "AffineWeight") -> "AffineWeight":
        return AffineWeight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "AffineWeight":
        return AffineWeight(tuple(-a for a in self.coords))

    def __mul__(self, c) -> "AffineWeight":
        return AffineWeight(tuple(a * c for a in self.coords))

    __rmul__ = __mul__

    def render(self) -> str:
        names = ["L%d" % i for i in range(len(self.coords) - 1)] + ["delta"]
        parts = ["%s*%s" % (c, n) for c, n in zip(self.coords, names) if c != 0]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class ClassicalVector:
    """Rational coordinates over the classical fundamental weights ``lambda_1..lambda_l``."""

    coords: tuple

    def __add__(self, other):
        return ClassicalVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return ClassicalVector(tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-other)


@dataclass(frozen=True)
class GroupAlgebraElement:
    """Signed normal-form word ``sign * e^{m_0 lambda_1} e^{m_1 alpha_1} ... e^{m_{l-1} alpha_{l-1}} [e^{Lambda}]``.

    ``marker`` is None or the index i of the vacuum ``e^{Lambda_i}``; it is
    always rightmost and carries no cocycle sign.
    """

    sign: int
    exponents: tuple
    marker: Optional[int] = None

    def __neg__(self):
        return GroupAlgebraElement(-self.sign, self.exponents, self.marker)


class CartanData:
    """Cartan matrix, symmetrizing factors and bilinear form for B_l^(1), l >= 2."""

    def __init__(self, rank: int):
        if rank < 2:
            raise ValueError("B_l^(1) needs rank l >= 2, got %r" % rank)
        self.rank = l = rank
        self.A = self._affine_cartan(l)
        self.d = tuple([Fraction(1)] * l + [HALF])
        # comarks a_i^vee and marks a_i (delta = sum a_i alpha_i)
        self.comarks = tuple([1, 1] + [2] * (l - 2) + [1])
        self.marks = tuple([1, 1] + [2] * (l - 1))
        self.Abar = tuple(tuple(row[1:]) for row in self.A[1:])
        inv = fmpq_mat([[int(x) for x in row] for row in self.Abar]).inv()
        self.Abar_inv = tuple(
            tuple(Fraction(int(inv[i, j].p), int(inv[i, j].q)) for j in range(l)) for i in range(l)
        )
        self.gram = self._build_gram()

    @staticmethod
    def _affine_cartan(l: int) -> tuple:
        A = [[0] * (l + 1) for _ in range(l + 1)]
        for i in range(l + 1):
            A[i][i] = 2
        if l == 2:
            A[0][2] = A[1][2] = -1
            A[2][0] = A[2][1] = -2
        else:
            A[0][2] = A[2][0] = -1
            A[1][2] = A[2][1] = -1
            for i in range(2, l):
                A[i][i + 1] = -1
                A[i + 1][i] = -1
            A[l][l - 1] = -2
        return tuple(tuple(r) for r in A)

    def _build_gram(self) -> tuple:
        l = self.rank
        n = l + 2
        g = [[Fraction(0)] * n for _ in range(n)]
        dl = n - 1
        g[0][dl] = g[dl][0] = Fraction(1)
        for i in range(1, l + 1):
            for j in range(1, l + 1):
                g[i][j] = self.d[i] * self.Abar_inv[i - 1][j - 1]
            # (Lambda_i, delta) = a_i^vee, the only choice consistent with the
            # explicit values at i = 0, 1, l.
            g[i][dl] = g[dl][i] = Fraction(self.comarks[i])
        return tuple(tuple(r) for r in g)

    # -- weights ------------------------------------------------------------------
    def zero(self) -> AffineWeight:
        return AffineWeight(tuple([Fraction(0)] * (self.rank + 2)))

    def fundamental(self, i: int) -> AffineWeight:
        c = [Fraction(0)] * (self.rank + 2)
        c[i] = Fraction(1)
        return AffineWeight(tuple(c))

    @cached_property
    def delta(self) -> AffineWeight:
        c = [Fraction(0)] * (self.rank + 2)
        c[-1] = Fraction(1)
        return AffineWeight(tuple(c))

    def simple_root(self, i: int) -> AffineWeight:
        l = self.rank
        c = [Fraction(self.A[j][i]) for j in range(l + 1)] + [Fraction(1 if i == 0 else 0)]
        return AffineWeight(tuple(c))

    def classical_weight(self, i: int) -> AffineWeight:
        if not 1 <= i <= self.rank:
            raise ValueError("classical weight index must be in 1..%d" % self.rank)
        return self.fundamental(i) - self.fundamental(0) * self.comarks[i]

    def form(self, x: AffineWeight, y: AffineWeight) -> Fraction:
        g = self.gram
        total = Fraction(0)
        for i, a in enumerate(x.coords):
            if a == 0:
                continue
            row = g[i]
            for j, b in enumerate(y.coords):
                if b != 0:
                    total += a * b * row[j]
        return total

    def level(self, x: AffineWeight) -> Fraction:
        return sum((Fraction(self.comarks[i]) * x.coords[i] for i in range(self.rank + 1)), Fraction(0))

    def pairing(self, h, x: AffineWeight) -> Fraction:
        """``<h_i, x> = (alpha_i, x)/d_i`` for integer ``h``; ``<d, x> = (Lambda_0, x)`` for ``h == 'd'``."""
        if h == "d":
            return self.form(self.fundamental(0), x)
        return self.form(self.simple_root(h), x) / self.d[h]

    def classical_part(self, x: AffineWeight) -> ClassicalVector:
        return ClassicalVector(tuple(x.coords[1 : self.rank + 1]))

    def classical_to_affine(self, v: ClassicalVector) -> AffineWeight:
        out = self.zero()
        for i, c in enumerate(v.coords, start=1):
            if c:
                out = out + self.classical_weight(i) * c
        return out

    # -- lattice group algebra ---------------------------------------------------------
    @cached_property
    def generators(self) -> tuple:
        """Affine weights of the generators ``lambda_1, alpha_1, ..., alpha_{l-1}``."""
        return (self.classical_weight(1),) + tuple(self.simple_root(i) for i in range(1, self.rank))

    @cached_property
    def generator_gram(self) -> tuple:
        gens = self.generators
        return tuple(tuple(self.form(a, b) for b in gens) for a in gens)

    @cached_property
    def _classical_solver(self):
        # columns: classical coordinates of each generator
        l = self.rank
        cols = [self.classical_part(g).coords for g in self.generators]
        M = fmpq_mat([[_q(cols[j][i]) for j in range(l)] for i in range(l)])
        return M.inv()

    def exponents_of(self, x: AffineWeight) -> tuple:
        """Integer generator exponents ``m`` with classical part of ``x`` = sum m_a g_a."""
        inv = self._classical_solver
        l = self.rank
        v = self.classical_part(x).coords
        out = []
        for a in range(l):
            s = sum((Fraction(int(inv[a, b].p), int(inv[a, b].q)) * v[b] for b in range(l)), Fraction(0))
            if s.denominator != 1:
                raise ValueError("%s is not in the lattice spanned by the generators" % (x.render(),))
            out.append(int(s))
        return tuple(out)

    def weight_from_exponents(self, m: Sequence[int]) -> AffineWeight:
        out = self.zero()
        for c, g in zip(m, self.generators):
            if c:
                out = out + g * c
        return out

    @lru_cache(maxsize=None)
    def cocycle_sign(self, m: tuple, n: tuple) -> int:
        """Sign picked up when normal-ordering ``e^{m} e^{n}`` into ``e^{m+n}``."""
        g = self.generator_gram
        total = 0
        for a in range(len(m)):
            if m[a] == 0:
                continue
            for b in range(a):
                if n[b]:
                    total += m[a] * n[b] * g[a][b]
        if Fraction(total).denominator != 1:
            raise ValueError("non-integral cocycle exponent")
        return -1 if int(total) % 2 else 1

    def __repr__(self):
        return "CartanData(rank=%d)" % self.rank


@lru_cache(maxsize=None)
def cartan_data(rank: int) -> CartanData:
    return CartanData(rank)


def bilinear_form(cd: CartanData, x: AffineWeight, y: AffineWeight) -> Fraction:
    return cd.form(x, y)


def dual_pairing(cd: CartanData, h, x: AffineWeight) -> Fraction:
    return cd.pairing(h, x)


def classical_weight(cd: CartanData, i: int) -> AffineWeight:
    return cd.classical_weight(i)


def cocycle_mul(cd: CartanData, x: GroupAlgebraElement, y: GroupAlgebraElement) -> GroupAlgebraElement:
    if x.marker is not None and y.marker is not None:
        raise ValueError("cannot multiply two vacuum markers")
    if x.marker is not None:
        raise ValueError("a vacuum marker must stay rightmost")
    sign = x.sign * y.sign * cd.cocycle_sign(tuple(x.exponents), tuple(y.exponents))
    exps = tuple(a + b for a, b in zip(x.exponents, y.exponents))
    return GroupAlgebraElement(sign, exps, y.marker)


def weight_of(cd: CartanData, x: GroupAlgebraElement) -> ClassicalVector:
    w = cd.weight_from_exponents(x.exponents)
    if x.marker is not None:
        w = w + cd.fundamental(x.marker)
    return cd.classical_part(w)
