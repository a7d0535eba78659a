"""Level-one Fock spaces: q-bosons ``a_j(m)``, one fermion ``Psi(k)`` and a lattice part.

A monomial ``a_{j1}(-m1) ... Psi(-k1) Psi(-k2) ... (x) e^{beta}`` is stored as a
``FockMonomial`` with

* ``bosons``: sorted tuple of ``(j, m)`` pairs, repeats allowed,
* ``fermions``: strictly decreasing tuple of *twice* the modes ``k`` (so NS
  and R modes are both integers),
* ``lattice``: generator exponents of ``beta`` relative to the space's
  reference vacuum (``e^{Lambda_0}`` in NS, ``e^{Lambda_l}`` in R).

The modules ``Lambda_0`` and ``Lambda_1`` share the NS space; they differ in
the reference used for degrees and in the eigenvalue of ``G``.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, NamedTuple, Optional

from flint import fmpq, fmpq_mat

from .lattice import AffineWeight, CartanData, cartan_data
from .qscalar import ONE, ZERO, Scalar, q_int, q_omega_pow, q_pow

__all__ = [
    "Sector",
    "FockMonomial",
    "FockSpace",
    "FockModule",
    "FockVector",
    "FreeFieldOperator",
    "fock_space",
    "clear_caches",
    "fock_module",
    "boson_bracket",
    "apply_boson",
    "apply_fermion",
    "apply_lattice",
    "apply_partial",
    "apply_sign",
    "apply_d",
    "apply_q_power",
    "apply_G",
    "g_eigenvalue",
    "degree_of",
    "enumerate_basis",
    "basis_list",
    "graded_dimensions",
    "generating_function_counts",
]

MODULE_LABELS = ("0", "1", "l")


def _fq(x) -> fmpq:
    x = Fraction(x)
    return fmpq(x.numerator, x.denominator)


class Sector(Enum):
    NS = "NS"
    R = "R"


class FockMonomial(NamedTuple):
    bosons: tuple
    fermions: tuple
    lattice: tuple

    def render(self, space: "FockSpace") -> str:
        parts = ["a%d(-%d)" % (j, m) for j, m in self.bosons]
        parts += ["psi(-%s)" % Fraction(k2, 2) for k2 in self.fermions]
        lat = ",".join(str(x) for x in self.lattice)
        return "%s|[%s]" % ("*".join(parts) if parts else "1", lat)


class FockVector:
    """Finite linear combination of monomials of one Fock space."""

    __slots__ = ("space", "terms")

    def __init__(self, space: "FockSpace", terms: Optional[dict] = None):
        self.space = space
        self.terms = terms if terms is not None else {}

    @classmethod
    def basis(cls, space, mono: FockMonomial, coeff: Scalar = ONE) -> "FockVector":
        return cls(space, {mono: coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def items(self):
        return self.terms.items()

    def coefficient(self, mono: FockMonomial) -> Scalar:
        return self.terms.get(mono, ZERO)

    def _check(self, other):
        if other.space is not self.space:
            raise ValueError("vectors live in different Fock spaces")

    def __add__(self, other: "FockVector") -> "FockVector":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            _acc(out, m, c)
        return FockVector(self.space, out)

    def __sub__(self, other: "FockVector") -> "FockVector":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            _acc(out, m, -c)
        return FockVector(self.space, out)

    def __neg__(self):
        return FockVector(self.space, {m: -c for m, c in self.terms.items()})

    def scale(self, c) -> "FockVector":
        c = Scalar.coerce(c)
        if c.is_zero():
            return FockVector(self.space)
        if c == ONE:
            return self
        out = {}
        for m, x in self.terms.items():
            y = x * c
            if not y.is_zero():
                out[m] = y
        return FockVector(self.space, out)

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.space is other.space and self.terms == other.terms

    __hash__ = None

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: self.space.sort_key(kv[0]))

    def render(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join("(%s)*%s" % (c, m.render(self.space)) for m, c in self.sorted_items())

    def __repr__(self):
        return "FockVector(%s)" % self.render()


def _acc(d: dict, key, c: Scalar) -> None:
    old = d.get(key)
    if old is None:
        if not c.is_zero():
            d[key] = c
        return
    new = old + c
    if new.is_zero():
        del d[key]
    else:
        d[key] = new


def apply_linear(space: "FockSpace", func: Callable, v: FockVector) -> FockVector:
    """Extend ``func(monomial) -> iterable of (monomial, Scalar)`` linearly to ``v``."""
    out: dict = {}
    for m, c in v.terms.items():
        for m2, c2 in func(m):
            _acc(out, m2, c * c2)
    return FockVector(space, out)


@lru_cache(maxsize=None)
def boson_bracket(rank: int, i: int, j: int, n: int) -> Scalar:
    """``[a_i(n), a_j(-n)]`` at level one."""
    cd = cartan_data(rank)
    if n == 0:
        raise ValueError("boson zero modes are not part of the algebra")
    di, dj = cd.d[i], cd.d[j]
    val = q_int(n * cd.A[i][j], di) * (q_pow(n) - q_pow(-n)) / (q_pow(dj) - q_pow(-dj))
    return val * Fraction(1, n)


class FockSpace:
    """One of the two level-one Fock spaces (NS or R) for a fixed rank."""

    def __init__(self, cd: CartanData, sector: Sector):
        self.cd = cd
        self.rank = cd.rank
        self.sector = sector
        self.ref_index = 0 if sector is Sector.NS else cd.rank
        self.ref_weight = cd.fundamental(self.ref_index)
        self._pair_cache: dict = {}
        self._gram = cd.generator_gram
        r = self.pair_vector(self.ref_weight)
        self._ref_pairs = r[1]
        self.ref_norm = r[0]
        self.cache: dict = {}
        self._zero_lat = tuple([0] * cd.rank)

    # -- lattice bookkeeping ------------------------------------------------------
    def pair_vector(self, gamma: AffineWeight):
        """Return ``(c, v)`` with ``(gamma, beta) = c + sum_a m_a v_a`` for ``beta = ref + sum m_a g_a``."""
        key = gamma.coords
        hit = self._pair_cache.get(key)
        if hit is None:
            cd = self.cd
            hit = (cd.form(gamma, self.ref_weight), tuple(cd.form(gamma, g) for g in cd.generators))
            self._pair_cache[key] = hit
        return hit

    def pairing(self, gamma: AffineWeight, lat: tuple) -> Fraction:
        c, v = self.pair_vector(gamma)
        return c + sum((m * x for m, x in zip(lat, v) if m), Fraction(0))

    def weight(self, lat: tuple) -> AffineWeight:
        return self.ref_weight + self.cd.weight_from_exponents(lat)

    def lattice_energy(self, lat: tuple) -> Fraction:
        """``((beta,beta) - (ref,ref))/2``."""
        g = self._gram
        e = Fraction(0)
        for a, ma in enumerate(lat):
            if not ma:
                continue
            e += ma * self._ref_pairs[a]
            row = g[a]
            for b, mb in enumerate(lat):
                if mb:
                    e += Fraction(ma * mb) * row[b] / 2
        return e

    def degree(self, mono: FockMonomial) -> Fraction:
        key = ("deg", mono)
        d = self.cache.get(key)
        if d is None:
            d = (
                sum(m for _, m in mono.bosons)
                + Fraction(sum(mono.fermions), 2)
                + self.lattice_energy(mono.lattice)
            )
            self.cache[key] = d
        return d

    def fermion_parity_ok(self, two_k: int) -> bool:
        return (two_k % 2 == 1) if self.sector is Sector.NS else (two_k % 2 == 0)

    def sort_key(self, mono: FockMonomial):
        return (self.degree(mono), mono.lattice, mono.bosons, mono.fermions)

    def vacuum(self) -> FockMonomial:
        return FockMonomial((), (), self._zero_lat)

    def __repr__(self):
        return "FockSpace(rank=%d, %s)" % (self.rank, self.sector.value)


_SPACES: list = []


@lru_cache(maxsize=None)
def fock_space(rank: int, sector: Sector) -> FockSpace:
    space = FockSpace(cartan_data(rank), sector)
    _SPACES.append(space)
    return space


def clear_caches() -> None:
    """Drop memoized operator actions on every Fock space built so far."""
    for space in _SPACES:
        space.cache.clear()


class FockModule:
    """A labelled module ``Lambda_0``, ``Lambda_1`` or ``Lambda_l`` inside its Fock space."""

    def __init__(self, rank: int, label: str):
        if label not in MODULE_LABELS:
            raise ValueError("module label must be one of %s" % (MODULE_LABELS,))
        self.rank = rank
        self.label = label
        self.index = {"0": 0, "1": 1, "l": rank}[label]
        self.space = fock_space(rank, Sector.R if label == "l" else Sector.NS)
        cd = self.space.cd
        hw = cd.fundamental(self.index)
        self.highest_lattice = cd.exponents_of(hw - self.space.ref_weight)
        self.highest = FockMonomial((), (), self.highest_lattice)
        self.offset = self.space.lattice_energy(self.highest_lattice)

    @property
    def name(self) -> str:
        return "Lambda_%s" % self.label

    def degree(self, mono: FockMonomial) -> Fraction:
        return self.space.degree(mono) - self.offset

    def highest_vector(self) -> FockVector:
        return FockVector.basis(self.space, self.highest)

    def __repr__(self):
        return "FockModule(rank=%d, %s)" % (self.rank, self.name)


@lru_cache(maxsize=None)
def fock_module(rank: int, label: str) -> FockModule:
    return FockModule(rank, label)


# -- elementary operators ------------------------------------------------------------


def _boson_terms(space: FockSpace, j: int, k: int, mono: FockMonomial):
    if k < 0:
        bos = tuple(sorted(mono.bosons + ((j, -k),)))
        return ((FockMonomial(bos, mono.fermions, mono.lattice), ONE),)
    out = []
    counts = Counter(mono.bosons)
    for (c, m), r in sorted(counts.items()):
        if m != k:
            continue
        coef = boson_bracket(space.rank, j, c, k)
        if coef.is_zero():
            continue
        bos = list(mono.bosons)
        bos.remove((c, m))
        out.append((FockMonomial(tuple(bos), mono.fermions, mono.lattice), coef * r))
    return out


def apply_boson(j: int, k: int, v: FockVector) -> FockVector:
    space = v.space
    if k == 0:
        raise ValueError("a_j(0) is not part of the algebra")
    if not 1 <= j <= space.rank:
        raise ValueError("boson colour must be in 1..%d" % space.rank)
    return apply_linear(space, lambda m: _boson_terms(space, j, k, m), v)


def fermion_create(fermions: tuple, two_k: int):
    """Left-multiply by ``Psi(-k)``; returns ``(new tuple, sign)`` or None when zero."""
    pos = 0
    for x in fermions:
        if x > two_k:
            pos += 1
        else:
            break
    sign = -1 if pos % 2 else 1
    if pos < len(fermions) and fermions[pos] == two_k:
        if two_k != 0:
            return None
        # Psi(0)^2 = 1
        return fermions[:pos] + fermions[pos + 1 :], sign
    return fermions[:pos] + (two_k,) + fermions[pos:], sign


@lru_cache(maxsize=None)
def _anticomm(two_k: int) -> Scalar:
    k = Fraction(two_k, 2)
    return q_pow(k) + q_pow(-k)


def fermion_annihilate(fermions: tuple, two_k: int):
    """Apply ``Psi(k)``, ``k > 0``; returns ``(new tuple, coefficient)`` or None."""
    for pos, x in enumerate(fermions):
        if x == two_k:
            c = _anticomm(two_k)
            return fermions[:pos] + fermions[pos + 1 :], (-c if pos % 2 else c)
        if x < two_k:
            break
    return None


def _fermion_terms(space, two_k, mono):
    if two_k <= 0:
        res = fermion_create(mono.fermions, -two_k)
        if res is None:
            return ()
        f, s = res
        return ((FockMonomial(mono.bosons, f, mono.lattice), ONE if s > 0 else -ONE),)
    res = fermion_annihilate(mono.fermions, two_k)
    if res is None:
        return ()
    f, c = res
    return ((FockMonomial(mono.bosons, f, mono.lattice), c),)


def apply_fermion(k, v: FockVector) -> FockVector:
    """``Psi(k) v``; ``k`` is a half-integer in NS and an integer in R."""
    space = v.space
    two_k = Fraction(k) * 2
    if two_k.denominator != 1 or not space.fermion_parity_ok(int(two_k)):
        raise ValueError("fermion mode %s does not belong to the %s sector" % (k, space.sector.value))
    two_k = int(two_k)
    return apply_linear(space, lambda m: _fermion_terms(space, two_k, m), v)


def apply_lattice(exps: tuple, v: FockVector, sign: int = 1) -> FockVector:
    """Left-multiply by the normal-form word ``sign * e^{sum m_a g_a}``."""
    space = v.space
    cd = space.cd
    exps = tuple(exps)

    def f(m):
        s = sign * cd.cocycle_sign(exps, m.lattice)
        lat = tuple(a + b for a, b in zip(exps, m.lattice))
        return ((FockMonomial(m.bosons, m.fermions, lat), ONE if s > 0 else -ONE),)

    return apply_linear(space, f, v)


def apply_partial(gamma: AffineWeight, v: FockVector) -> FockVector:
    """``partial_gamma``: multiply each term by ``(gamma, beta)``."""
    space = v.space
    return apply_linear(space, lambda m: ((m, Scalar(space.pairing(gamma, m.lattice))),), v)


def sign_exponent(space: FockSpace, gamma: AffineWeight, lat: tuple) -> int:
    e = 2 * space.pairing(gamma, lat)
    if e.denominator != 1:
        raise ValueError("(-1)^{2 partial} has non-integer exponent %s on this sector" % e)
    return int(e)


def apply_sign(gamma: AffineWeight, v: FockVector) -> FockVector:
    """``(-1)^{2 partial_gamma}``."""
    space = v.space
    return apply_linear(
        space, lambda m: ((m, -ONE if sign_exponent(space, gamma, m.lattice) % 2 else ONE),), v
    )


def apply_q_power(gamma: AffineWeight, v: FockVector, scale=1) -> FockVector:
    """``q^{scale * partial_gamma}``."""
    space = v.space
    return apply_linear(space, lambda m: ((m, q_pow(scale * space.pairing(gamma, m.lattice))),), v)


def degree_of(module: FockModule, mono: FockMonomial) -> Fraction:
    return module.degree(mono)


def apply_d(module: FockModule, v: FockVector, power: Optional[int] = None) -> FockVector:
    """``d`` (eigenvalue ``-degree``) or, with ``power`` set, ``q^{power * d}``."""
    if power is None:
        return apply_linear(v.space, lambda m: ((m, Scalar(-module.degree(m))),), v)
    return apply_linear(v.space, lambda m: ((m, q_pow(-power * module.degree(m))),), v)


def g_exponent(space: FockSpace, mono: FockMonomial) -> int:
    cd = space.cd
    e = Fraction(len(mono.fermions))
    for i in range(1, cd.rank + 1):
        lam = cd.classical_weight(i)
        e += 2 * space.pairing(lam, mono.lattice)
        if space.sector is Sector.R:
            e -= 2 * cd.form(lam, cd.classical_weight(cd.rank))
    if e.denominator != 1:
        raise ValueError("G has a non-integer exponent on %r" % (mono,))
    return int(e)


def g_eigenvalue(space: FockSpace, mono: FockMonomial) -> int:
    key = ("G", mono)
    g = space.cache.get(key)
    if g is None:
        g = -1 if g_exponent(space, mono) % 2 else 1
        space.cache[key] = g
    return g


def apply_G(v: FockVector) -> FockVector:
    space = v.space
    return apply_linear(space, lambda m: ((m, ONE if g_eigenvalue(space, m) > 0 else -ONE),), v)


# -- free-field exponentials ---------------------------------------------------------------


class FreeFieldOperator:
    """A vertex-type operator

        pre * z^shift * exp(sum_{j,k>0} C_{jk} a_j(-k) z^k) exp(annihilation)
            * e^{lattice} * (b z)^{(mu,beta)+c} * (-1)^{2(nu,beta)} * [Psi(z)]

    where the annihilation exponential is described through its translation
    weights: it maps ``a_c(-k)`` to ``a_c(-k) + W_{ck} z^{-k}``.  The base ``b``
    is ``q^{base[0]} omega^{base[1]}``; with ``eigen_z`` false the eigenvalue
    factor carries no power of ``z``.
    """

    def __init__(
        self,
        key,
        space: FockSpace,
        create: Callable[[int, int], Scalar],
        translate: Callable[[int, int], Scalar],
        lattice: tuple,
        prefactor: Scalar = ONE,
        shift=Fraction(0),
        eigen_weight: Optional[AffineWeight] = None,
        eigen_const=Fraction(0),
        base=(0, 0),
        eigen_z: bool = True,
        sign_weight: Optional[AffineWeight] = None,
        fermion: bool = False,
    ):
        self.key = key
        self.space = space
        self.rank = space.rank
        self._create_fn = create
        self._translate_fn = translate
        self.lattice = tuple(lattice)
        self.prefactor = prefactor
        self.shift = Fraction(shift)
        self.eigen_weight = eigen_weight
        self.eigen_const = Fraction(eigen_const)
        self.base = (Fraction(base[0]), Fraction(base[1]))
        self.eigen_z = eigen_z
        self.sign_weight = sign_weight
        self.fermion = fermion
        self._coef_cache: dict = {}
        self._create_cache: dict = {}
        self._translate_cache: dict = {}
        self._mode_cache: dict = {}

    def create_coefficient(self, j: int, k: int) -> Scalar:
        key = ("c", j, k)
        c = self._coef_cache.get(key)
        if c is None:
            c = self._create_fn(j, k)
            self._coef_cache[key] = c
        return c

    def translate_weight(self, j: int, k: int) -> Scalar:
        key = ("t", j, k)
        c = self._coef_cache.get(key)
        if c is None:
            c = self._translate_fn(j, k)
            self._coef_cache[key] = c
        return c

    def creation_part(self, J: int):
        """Coefficient of ``z^J`` in the creation exponential: list of ``(bosons, Scalar)``."""
        hit = self._create_cache.get(J)
        if hit is not None:
            return hit
        parts = [(j, k) for k in range(1, J + 1) for j in range(1, self.rank + 1)]
        parts = [p for p in parts if not self.create_coefficient(*p).is_zero()]
        out = []

        def rec(idx, remaining, chosen, coef):
            if remaining == 0:
                out.append((tuple(sorted(chosen)), coef))
                return
            for t in range(idx, len(parts)):
                j, k = parts[t]
                if k > remaining:
                    continue
                c = self.create_coefficient(j, k)
                power = ONE
                for r in range(1, remaining // k + 1):
                    power = power * c
                    rec(t + 1, remaining - r * k, chosen + [(j, k)] * r, coef * power * Fraction(1, math.factorial(r)))

        rec(0, J, [], ONE)
        self._create_cache[J] = out
        return out

    def translation(self, bosons: tuple):
        """Image of ``bosons`` under the annihilation exponential: list of ``(bosons, Scalar, K)``
        meaning ``coefficient * z^{-K}``."""
        hit = self._translate_cache.get(bosons)
        if hit is not None:
            return hit
        terms = [((), ONE, 0)]
        for (c, k), r in sorted(Counter(bosons).items()):
            w = self.translate_weight(c, k)
            opts = []
            for s in range(r + 1):
                if s < r and w.is_zero():
                    continue
                coef = Scalar(math.comb(r, s)) * (w ** (r - s)) if s < r else ONE
                opts.append((((c, k),) * s, coef, k * (r - s)))
            terms = [(b1 + b2, c1 * c2, K1 + K2) for b1, c1, K1 in terms for b2, c2, K2 in opts]
        out = [(tuple(sorted(b)), c, K) for b, c, K in terms]
        self._translate_cache[bosons] = out
        return out

    def mode_terms(self, N, mono: FockMonomial):
        """Coefficient of ``z^N`` applied to ``mono`` as a tuple of ``(monomial, Scalar)``."""
        N = Fraction(N)
        key = (N, mono)
        hit = self._mode_cache.get(key)
        if hit is not None:
            return hit
        out = tuple(self._compute(N, mono).items())
        self._mode_cache[key] = out
        return out

    def _compute(self, N: Fraction, mono: FockMonomial) -> dict:
        space = self.space
        lat = mono.lattice
        coef0 = self.prefactor
        zpow = self.shift
        if self.eigen_weight is not None:
            e = space.pairing(self.eigen_weight, lat) + self.eigen_const
            if self.base != (0, 0):
                coef0 = coef0 * q_omega_pow(self.base[0] * e, self.base[1] * e)
            if self.eigen_z:
                zpow += e
        if self.sign_weight is not None and sign_exponent(space, self.sign_weight, lat) % 2:
            coef0 = -coef0
        s = space.cd.cocycle_sign(self.lattice, lat)
        if s < 0:
            coef0 = -coef0
        new_lat = tuple(a + b for a, b in zip(self.lattice, lat))

        # fermion options as (fermions, coefficient, z-exponent)
        result: dict = {}
        for bos_t, c_t, K in self.translation(mono.bosons):
            base_room = N - zpow + K  # = J + fermion z-exponent
            if self.fermion:
                f_opts = []
                for x in mono.fermions:
                    if x > 0:
                        res = fermion_annihilate(mono.fermions, x)
                        f_opts.append((res[0], res[1], -Fraction(x, 2)))
                start = 1 if space.sector is Sector.NS else 0
                two_k = start
                while Fraction(two_k, 2) <= base_room:
                    res = fermion_create(mono.fermions, two_k)
                    if res is not None:
                        f_opts.append((res[0], ONE if res[1] > 0 else -ONE, Fraction(two_k, 2)))
                    two_k += 2
            else:
                f_opts = [(mono.fermions, ONE, Fraction(0))]
            c_0t = coef0 * c_t
            for ferm, c_f, zf in f_opts:
                J = base_room - zf
                if J < 0:
                    continue
                if J.denominator != 1:
                    raise ValueError("non-integral creation order %s in mode extraction" % J)
                pre = c_0t if c_f is ONE else (-c_0t if c_f == -1 else c_0t * c_f)
                for bos_c, c_c in self.creation_part(int(J)):
                    bos = tuple(sorted(bos_t + bos_c)) if bos_c else bos_t
                    _acc(result, FockMonomial(bos, ferm, new_lat), pre * c_c)
        return result

    def apply(self, N, v: FockVector) -> FockVector:
        return apply_linear(v.space, lambda m: self.mode_terms(N, m), v)


# -- bases ----------------------------------------------------------------------------


def _lattice_points(space: FockSpace, bound: Fraction):
    """All exponent vectors with ``lattice_energy <= bound``.

    Completing the square, ``E(m) = (m+c)^T G (m+c)/2 - c^T G c/2`` with
    ``c = G^{-1} r``, so each coordinate lies within ``sqrt(2 R (G^{-1})_{aa})``
    of ``-c_a``.
    """
    l = space.rank
    G = fmpq_mat([[_fq(x) for x in row] for row in space._gram])
    Ginv = G.inv()
    r = fmpq_mat([[_fq(x)] for x in space._ref_pairs])
    c = Ginv * r
    cGc = (c.transpose() * G * c)[0, 0]
    R = Fraction(int(cGc.p), int(cGc.q)) / 2 + Fraction(bound)
    if R < 0:
        return []
    ranges = []
    for a in range(l):
        ca = Fraction(int(c[a, 0].p), int(c[a, 0].q))
        ga = Fraction(int(Ginv[a, a].p), int(Ginv[a, a].q))
        half = math.isqrt(math.ceil(2 * R * ga)) + 1
        ranges.append(range(math.floor(-ca) - half, math.ceil(-ca) + half + 1))
    return [m for m in itertools.product(*ranges) if space.lattice_energy(m) <= bound]


def _boson_multisets(rank: int, budget: int):
    """``{total: [bosons tuples]}`` for all colored partitions of total <= budget."""
    parts = [(j, m) for m in range(1, budget + 1) for j in range(1, rank + 1)]
    out = {}

    def rec(idx, remaining, chosen):
        total = budget - remaining
        out.setdefault(total, []).append(tuple(sorted(chosen)))
        for t in range(idx, len(parts)):
            j, m = parts[t]
            if m <= remaining:
                rec(t, remaining - m, chosen + [(j, m)])

    rec(0, budget, [])
    return out


def _fermion_sets(sector: Sector, budget: Fraction):
    """``[(twice-modes tuple, energy)]`` for distinct modes of total energy <= budget."""
    start = 1 if sector is Sector.NS else 0
    modes = []
    x = start
    while Fraction(x, 2) <= budget:
        modes.append(x)
        x += 2
    out = []
    for r in range(len(modes) + 1):
        for combo in itertools.combinations(modes, r):
            e = Fraction(sum(combo), 2)
            if e <= budget:
                out.append((tuple(sorted(combo, reverse=True)), e))
    return out


def enumerate_basis(module: FockModule, max_degree, irreducible: bool = False) -> dict:
    """Canonical monomials of degree <= ``max_degree`` (relative to the module), grouped by degree.

    With ``irreducible`` set, only monomials in the ``G`` eigenspace of the
    highest weight vector are kept.
    """
    space = module.space
    D = Fraction(max_degree)
    if D < 0:
        raise ValueError("max_degree must be >= 0")
    top = D + module.offset
    lat_pts = _lattice_points(space, top)
    if not lat_pts:
        return {}
    min_lat = min(space.lattice_energy(m) for m in lat_pts)
    room = top - min_lat
    bos_sets = _boson_multisets(space.rank, int(math.floor(room)))
    ferm_sets = _fermion_sets(space.sector, room)
    g_hw = g_eigenvalue(space, module.highest)
    groups: dict = {}
    for lat in lat_pts:
        el = space.lattice_energy(lat)
        for fs, ef in ferm_sets:
            if el + ef > top:
                continue
            for tot, blist in bos_sets.items():
                if el + ef + tot > top:
                    continue
                for b in blist:
                    m = FockMonomial(b, fs, lat)
                    if irreducible and g_eigenvalue(space, m) != g_hw:
                        continue
                    groups.setdefault(module.degree(m), []).append(m)
    out = {}
    for deg in sorted(groups):
        out[deg] = sorted(groups[deg], key=space.sort_key)
    return out


def basis_list(module: FockModule, max_degree, irreducible: bool = False) -> list:
    return [m for ms in enumerate_basis(module, max_degree, irreducible).values() for m in ms]


def graded_dimensions(module: FockModule, max_degree) -> list:
    """Rows ``{degree, dim, dim_G_plus, dim_G_minus}``."""
    rows = []
    for deg, monos in enumerate_basis(module, max_degree).items():
        plus = sum(1 for m in monos if g_eigenvalue(module.space, m) > 0)
        rows.append({"degree": str(deg), "dim": len(monos), "dim_G_plus": plus, "dim_G_minus": len(monos) - plus})
    return rows


def generating_function_counts(module: FockModule, max_degree) -> dict:
    """Independent count of monomials per degree from the product of the boson,
    fermion and lattice generating functions (series in ``x^{1/2}``)."""
    space = module.space
    D2 = int(2 * (Fraction(max_degree) + module.offset))
    size = D2 + 1
    # bosons: prod_m (1 - x^m)^{-l}, in half-steps
    series = [0] * size
    series[0] = 1
    for m in range(1, D2 // 2 + 1):
        for _ in range(space.rank):
            for e in range(2 * m, size):
                series[e] += series[e - 2 * m]
    # fermions: prod (1 + x^k)
    start = 1 if space.sector is Sector.NS else 0
    for two_k in range(start, size, 2):
        new = list(series)
        for e in range(two_k, size):
            new[e] += series[e - two_k]
        series = new
    # lattice theta series
    theta = Counter()
    for lat in _lattice_points(space, Fraction(D2, 2)):
        e2 = 2 * space.lattice_energy(lat)
        theta[int(e2)] += 1
    total = [0] * size
    for e, n in theta.items():
        for k in range(size - e):
            total[e + k] += n * series[k]
    out = {}
    for e2, n in enumerate(total):
        deg = Fraction(e2, 2) - module.offset
        if n and deg <= Fraction(max_degree):
            out[deg] = n
    return out
