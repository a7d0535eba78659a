"""Exact coefficient field for the level-one computations.

Every coefficient lives in ``K = Q(t)[u] / (u^2 - omega)`` where ``t`` stands
for ``q^(1/2)`` and ``u`` for ``omega^(1/2)``, ``omega = 1/(t + 1/t)``.
Rational functions in ``t`` are kept in canonical form (coprime numerator and
denominator, monic denominator), so equality is structural.

Polynomial arithmetic is delegated to python-flint.
"""

from __future__ import annotations

import ast
import re
from fractions import Fraction
from functools import lru_cache
from typing import Union

from flint import fmpq, fmpq_poly

__all__ = [
    "RationalFunction",
    "Scalar",
    "ScalarZeroDivision",
    "T",
    "Q",
    "OMEGA",
    "U",
    "ZERO",
    "ONE",
    "laurent",
    "q_pow",
    "t_pow",
    "q_int",
    "q_binomial",
    "scalar_arith",
    "evaluate_numeric",
    "parse_scalar",
    "omega_pow",
    "q_omega_pow",
]

_P_ONE = fmpq_poly([1])
_P_ZERO = fmpq_poly([])


class ScalarZeroDivision(ZeroDivisionError):
    """Division by an exact zero in the coefficient field."""


def _to_fmpq(c) -> fmpq:
    if isinstance(c, fmpq):
        return c
    if isinstance(c, Fraction):
        return fmpq(c.numerator, c.denominator)
    return fmpq(c)


class RationalFunction:
    """An element of Q(t) stored as ``num/den`` with ``den`` monic."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, _reduced=False):
        if not isinstance(num, fmpq_poly):
            num = fmpq_poly([_to_fmpq(num)]) if not isinstance(num, (list, tuple)) else fmpq_poly(num)
        if den is None:
            den = _P_ONE
            _reduced = True
        elif not isinstance(den, fmpq_poly):
            den = fmpq_poly([_to_fmpq(den)]) if not isinstance(den, (list, tuple)) else fmpq_poly(den)
        if not _reduced:
            if den.is_zero():
                raise ScalarZeroDivision("zero denominator")
            if num.is_zero():
                den = _P_ONE
            else:
                if den.degree() > 0:
                    g = num.gcd(den)
                    if g.degree() > 0:
                        num = num / g
                        den = den / g
                lc = den[den.degree()]
                if lc != 1:
                    num = num / lc
                    den = den / lc
        self.num = num
        self.den = den
        self._hash = None

    # -- construction helpers -------------------------------------------------
    @classmethod
    def monomial(cls, coeff, exponent: int) -> "RationalFunction":
        c = _to_fmpq(coeff)
        if c == 0:
            return cls(_P_ZERO, _P_ONE, True)
        if exponent >= 0:
            coeffs = [0] * exponent + [c]
            return cls(fmpq_poly(coeffs), _P_ONE, True)
        return cls(fmpq_poly([c]), fmpq_poly([0] * (-exponent) + [1]), True)

    # -- predicates -----------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.den == _P_ONE and self.num == _P_ONE

    def is_laurent(self) -> bool:
        """True when the denominator is a power of t."""
        d = self.den
        n = d.degree()
        return all(d[i] == 0 for i in range(n))

    def laurent_coeffs(self) -> dict[int, Fraction]:
        if not self.is_laurent():
            raise ValueError("not a Laurent polynomial: %s" % self)
        shift = self.den.degree()
        out = {}
        for i in range(self.num.degree() + 1):
            c = self.num[i]
            if c != 0:
                out[i - shift] = Fraction(int(c.p), int(c.q))
        return out

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction(other)
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if n1.is_zero():
            return other
        if n2.is_zero():
            return self
        if d1 == d2:
            if d1 == _P_ONE:
                return RationalFunction(n1 + n2, _P_ONE, True)
            return RationalFunction(n1 + n2, d1)
        # Henrici: only factors of gcd(d1, d2) can cancel
        if d1 == _P_ONE:
            return RationalFunction(n1 * d2 + n2, d2, True)
        if d2 == _P_ONE:
            return RationalFunction(n1 + n2 * d1, d1, True)
        g = d1.gcd(d2)
        if g == _P_ONE:
            return RationalFunction(n1 * d2 + n2 * d1, d1 * d2, True)
        b1 = d1 / g
        b2 = d2 / g
        num = n1 * b2 + n2 * b1
        if num.is_zero():
            return RationalFunction(_P_ZERO, _P_ONE, True)
        g2 = num.gcd(g)
        if g2 != _P_ONE:
            num = num / g2
            g = g / g2
        return RationalFunction(num, b1 * b2 * g, True)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, True)

    def __sub__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction(other)
        return self + (-other)

    def __rsub__(self, other):
        return RationalFunction(other) - self

    def __mul__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction(other)
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if n1.is_zero() or n2.is_zero():
            return RationalFunction(_P_ZERO, _P_ONE, True)
        # cross-cancellation keeps both operands' reduced form
        if d2 != _P_ONE:
            g = n1.gcd(d2)
            if g != _P_ONE:
                n1 = n1 / g
                d2 = d2 / g
        if d1 != _P_ONE:
            g = n2.gcd(d1)
            if g != _P_ONE:
                n2 = n2 / g
                d1 = d1 / g
        return RationalFunction(n1 * n2, d1 * d2, True)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.num.is_zero():
            raise ScalarZeroDivision("inverse of zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RationalFunction(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunction(self.num ** n, self.den ** n, True)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            try:
                other = RationalFunction(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((str(self.num), str(self.den)))
        return self._hash

    # -- evaluation / rendering -------------------------------------------------
    def evaluate(self, t0) -> Fraction:
        x = _to_fmpq(t0)
        d = self.den(x)
        if d == 0:
            raise ScalarZeroDivision("pole at t = %s" % t0)
        v = self.num(x) / d
        return Fraction(int(v.p), int(v.q))

    def __str__(self):
        num = _poly_str(self.num)
        if self.den == _P_ONE:
            return num
        return "(%s)/(%s)" % (num, _poly_str(self.den))

    __repr__ = __str__


def _poly_str(p: fmpq_poly) -> str:
    if p.is_zero():
        return "0"
    terms = []
    for i in range(p.degree(), -1, -1):
        c = p[i]
        if c == 0:
            continue
        c = Fraction(int(c.p), int(c.q))
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if i == 0:
            body = str(a)
        else:
            mon = "t" if i == 1 else "t^%d" % i
            body = mon if a == 1 else "%s*%s" % (a, mon)
        terms.append((sign, body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += " %s %s" % (sign, body)
    return out


_RF_ZERO = RationalFunction(_P_ZERO, _P_ONE, True)
_RF_ONE = RationalFunction(_P_ONE, _P_ONE, True)
# omega = 1/(t + 1/t) = t/(t^2 + 1)
_RF_OMEGA = RationalFunction(fmpq_poly([0, 1]), fmpq_poly([1, 0, 1]), True)


class Scalar:
    """``even + odd * u`` with ``u^2 = omega``; an element of the field K."""

    __slots__ = ("even", "odd")

    def __init__(self, even=0, odd=None):
        if not isinstance(even, RationalFunction):
            even = RationalFunction(even)
        if odd is not None and not isinstance(odd, RationalFunction):
            odd = RationalFunction(odd)
        if odd is not None and odd.num.is_zero():
            odd = None
        self.even = even
        self.odd = odd

    @staticmethod
    def coerce(x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        return Scalar(x)

    def is_zero(self) -> bool:
        return self.odd is None and self.even.num.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        if not isinstance(other, Scalar):
            other = Scalar(other)
        if self.odd is None and other.odd is None:
            return Scalar(self.even + other.even)
        odd = other.odd if self.odd is None else (self.odd if other.odd is None else self.odd + other.odd)
        return Scalar(self.even + other.even, odd)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.even, None if self.odd is None else -self.odd)

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            other = Scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return Scalar(other) - self

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, RationalFunction):
                other = Scalar(other)
            else:
                c = other
                if c == 1:
                    return self
                return Scalar(self.even * c, None if self.odd is None else self.odd * c)
        a, b, c, d = self.even, self.odd, other.even, other.odd
        if b is None and d is None:
            return Scalar(a * c)
        if b is None:
            return Scalar(a * c, a * d)
        if d is None:
            return Scalar(a * c, b * c)
        return Scalar(a * c + b * d * _RF_OMEGA, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ScalarZeroDivision("division by zero in K")
        if self.odd is None:
            return Scalar(self.even.inverse())
        a, b = self.even, self.odd
        norm = a * a - b * b * _RF_OMEGA
        inv = norm.inverse()
        return Scalar(a * inv, -b * inv)

    def __truediv__(self, other):
        return self * Scalar.coerce(other).inverse()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar(other)
            except TypeError:
                return NotImplemented
        if (self.odd is None) != (other.odd is None):
            return False
        return self.even == other.even and (self.odd is None or self.odd == other.odd)

    def __hash__(self):
        return hash((self.even, self.odd))

    def __str__(self):
        if self.odd is None:
            return str(self.even)
        ev = "" if self.even.is_zero() else "%s + " % _paren(self.even)
        return "%s%s*u" % (ev, _paren(self.odd))

    def __repr__(self):
        return "Scalar(%s)" % self


def _paren(rf: RationalFunction) -> str:
    s = str(rf)
    if rf.den == _P_ONE and (" " in s or s.startswith("-")):
        return "(%s)" % s
    return s


ZERO = Scalar(_RF_ZERO)
ONE = Scalar(_RF_ONE)
T = Scalar(RationalFunction.monomial(1, 1))
Q = Scalar(RationalFunction.monomial(1, 2))
OMEGA = Scalar(_RF_OMEGA)
U = Scalar(_RF_ZERO, _RF_ONE)


def laurent(coeffs: dict[int, object]) -> Scalar:
    """Scalar from ``{exponent of t: rational coefficient}``."""
    out = _RF_ZERO
    for e, c in coeffs.items():
        out = out + RationalFunction.monomial(c, e)
    return Scalar(out)


@lru_cache(maxsize=None)
def t_pow(n: int) -> Scalar:
    return Scalar(RationalFunction.monomial(1, n))


def q_pow(x) -> Scalar:
    """``q^x`` for ``x`` in (1/2)Z."""
    two_x = Fraction(x) * 2
    if two_x.denominator != 1:
        raise ValueError("q^%s is not representable with integer powers of t" % x)
    return t_pow(int(two_x))


@lru_cache(maxsize=None)
def _q_int_cached(m: int, d: Fraction) -> Scalar:
    e = int(2 * d)
    if e * Fraction(1, 2) != d or e <= 0:
        raise ValueError("q_int needs d in (1/2)Z_{>0}, got %s" % d)
    num = t_pow(e * m) - t_pow(-e * m)
    den = t_pow(e) - t_pow(-e)
    return num / den


def q_int(m: int, d=1) -> Scalar:
    """The q-integer ``[m]_{q^d}``."""
    return _q_int_cached(int(m), Fraction(d))


def q_binomial(n: int, m: int, d=1) -> Scalar:
    if not 0 <= m <= n:
        raise ValueError("q_binomial requires 0 <= m <= n, got n=%s m=%s" % (n, m))
    num = ONE
    den = ONE
    for k in range(1, n + 1):
        num = num * q_int(k, d)
    for k in range(1, m + 1):
        den = den * q_int(k, d)
    for k in range(1, n - m + 1):
        den = den * q_int(k, d)
    return num / den


def scalar_arith(a, b, kind: str) -> Scalar:
    a = Scalar.coerce(a)
    b = Scalar.coerce(b)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    raise ValueError("unknown arithmetic kind %r" % kind)


def evaluate_numeric(s: Scalar, t0) -> tuple[Fraction, Fraction]:
    """Evaluate at ``t = t0``; returns ``(even, odd)`` with value ``even + odd*u``.

    ``u`` stays symbolic: it is the positive square root of ``omega(t0)``.
    """
    s = Scalar.coerce(s)
    ev = s.even.evaluate(t0)
    od = Fraction(0) if s.odd is None else s.odd.evaluate(t0)
    return ev, od


# -- parsing -------------------------------------------------------------------

_ALLOWED = re.compile(r"^[\s0-9tuq()+\-*/^.]*$")


def parse_scalar(text: str) -> Scalar:
    """Parse the text rendering produced by ``str(Scalar)``.

    Accepts ``t``, ``u``, ``q`` (= t^2), integers, ``+ - * / ^`` and parentheses.
    """
    if not _ALLOWED.match(text):
        raise ValueError("unexpected characters in scalar text: %r" % text)
    tree = ast.parse(text.replace("^", "**"), mode="eval")
    return _eval_node(tree.body)


def _eval_node(node) -> Scalar:
    if isinstance(node, ast.BinOp):
        left = _eval_node(node.left)
        if isinstance(node.op, ast.Pow):
            exp = node.right
            sign = 1
            if isinstance(exp, ast.UnaryOp) and isinstance(exp.op, ast.USub):
                sign, exp = -1, exp.operand
            if not (isinstance(exp, ast.Constant) and isinstance(exp.value, int)):
                raise ValueError("exponents must be integer literals")
            return left ** (sign * exp.value)
        right = _eval_node(node.right)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            return left / right
        raise ValueError("unsupported operator")
    if isinstance(node, ast.UnaryOp):
        val = _eval_node(node.operand)
        if isinstance(node.op, ast.USub):
            return -val
        if isinstance(node.op, ast.UAdd):
            return val
        raise ValueError("unsupported unary operator")
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return Scalar(node.value)
    if isinstance(node, ast.Name):
        return {"t": T, "u": U, "q": Q}[node.id]
    raise ValueError("cannot parse scalar expression")


@lru_cache(maxsize=None)
def _omega_half_pow(two_x: int) -> Scalar:
    whole, odd = divmod(two_x, 2)
    base = OMEGA ** whole
    return base * U if odd else base


def omega_pow(x) -> Scalar:
    """``omega^x`` for ``x`` in (1/2)Z, using ``omega^{1/2} = u``."""
    two_x = Fraction(x) * 2
    if two_x.denominator != 1:
        raise ValueError("omega^%s is not in K" % x)
    return _omega_half_pow(int(two_x))


def q_omega_pow(a, b) -> Scalar:
    """``q^a * omega^b`` with ``a, b`` in (1/2)Z."""
    return q_pow(a) * omega_pow(b)
