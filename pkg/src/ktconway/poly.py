"""Exact Laurent polynomials in one variable.

Coefficients are Python ints and every derived quantity is a
:class:`fractions.Fraction`; nothing here ever touches a float.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Union

__all__ = [
    "LaurentPoly",
    "VariableMismatch",
    "Infinity",
    "INF",
    "ExtendedRational",
    "add",
    "mul",
    "kth_derivative_at_one",
    "h_expansion",
    "substitute_power",
    "alexander_to_conway",
    "conway_to_alexander",
    "format_extended",
    "parse_extended",
]

# desk-scale diagrams stay far below this; anything larger is a bookkeeping bug
MAX_EXPONENT = 1 << 20


class VariableMismatch(ValueError):
    """Two polynomials in different variables were combined."""


class LaurentPoly:
    """Immutable Laurent polynomial ``sum c_m * var**m`` with integer coefficients."""

    __slots__ = ("_var", "_terms", "_hash")

    def __init__(self, var: str, terms: Mapping[int, int] | None = None):
        clean = {}
        for e, c in (terms or {}).items():
            e = int(e)
            c = int(c)
            if abs(e) > MAX_EXPONENT:
                raise OverflowError(f"exponent {e} out of range")
            if c:
                clean[e] = c
        self._var = var
        self._terms = dict(sorted(clean.items()))
        self._hash = None

    # construction helpers -------------------------------------------------

    @classmethod
    def constant(cls, var: str, c: int) -> "LaurentPoly":
        return cls(var, {0: c})

    @classmethod
    def monomial(cls, var: str, exponent: int, c: int = 1) -> "LaurentPoly":
        return cls(var, {exponent: c})

    @classmethod
    def from_coeffs(cls, var: str, low: int, coeffs: Iterable[int]) -> "LaurentPoly":
        """Build from a dense coefficient list whose first entry has exponent ``low``."""
        return cls(var, {low + i: c for i, c in enumerate(coeffs) if c})

    # basic accessors ---------------------------------------------------------

    @property
    def var(self) -> str:
        return self._var

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def coeff(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def min_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return next(iter(self._terms))

    @property
    def max_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return next(reversed(self._terms))

    def evaluate(self, x):
        """Evaluate at ``x`` (an int or Fraction; negative powers use Fraction)."""
        total = Fraction(0)
        for e, c in self._terms.items():
            total += c * Fraction(x) ** e
        return total

    def at_one(self) -> int:
        return sum(self._terms.values())

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``var**k``."""
        return LaurentPoly(self._var, {e + k: c for e, c in self._terms.items()})

    def invert_variable(self) -> "LaurentPoly":
        """Return ``p(var**-1)``."""
        return LaurentPoly(self._var, {-e: c for e, c in self._terms.items()})

    def rename(self, var: str) -> "LaurentPoly":
        return LaurentPoly(var, self._terms)

    def is_symmetric(self) -> bool:
        return all(self._terms.get(-e, 0) == c for e, c in self._terms.items())

    # arithmetic ----------------------------------------------------------

    def _check(self, other: "LaurentPoly") -> None:
        if self._var != other._var:
            raise VariableMismatch(f"variable mismatch: {self._var!r} vs {other._var!r}")

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, int):
            return LaurentPoly(self._var, {0: other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(self._var, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self._var, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(self._var, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have negative powers")
            (e, c), = self._terms.items()
            if abs(c) != 1:
                raise ValueError("monomial is not a unit")
            return LaurentPoly(self._var, {e * k: c ** (-k)})
        result = LaurentPoly(self._var, {0: 1})
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod_exact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient ``self / other``; raises if the division leaves a remainder."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return LaurentPoly(self._var)
        rem = dict(self._terms)
        lead_e = other.max_exp
        lead_c = other._terms[lead_e]
        low = other.min_exp
        quot: dict[int, int] = {}
        while rem:
            e = max(rem)
            c = rem[e]
            if c % lead_c or e - lead_e < min(self._terms) - low:
                raise ArithmeticError("inexact polynomial division")
            qe = e - lead_e
            qc = c // lead_c
            quot[qe] = qc
            for oe, oc in other._terms.items():
                k = oe + qe
                v = rem.get(k, 0) - qc * oc
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return LaurentPoly(self._var, quot)

    # comparison / hashing ---------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            return self._terms == ({0: other} if other else {})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._var == other._var and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._var, tuple(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({self._var!r}, {self._terms!r})"

    def __str__(self):
        return self.render()

    def render(self) -> str:
        """Canonical text form, highest exponent first, e.g. ``-q^4 + 2q^3 + q^-2``."""
        if not self._terms:
            return "0"
        parts = []
        for e, c in reversed(self._terms.items()):
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                mono = self._var if e == 1 else f"{self._var}^{e}"
                body = mono if mag == 1 else f"{mag}{mono}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)


def add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    p._check(q)
    return p + q


def mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    p._check(q)
    return p * q


def kth_derivative_at_one(p: LaurentPoly, k: int) -> Fraction:
    """``p^(k)(1)``: each ``c x^m`` contributes ``c * m (m-1) ... (m-k+1)``."""
    if k < 0:
        raise ValueError("derivative order must be non-negative")
    total = 0
    for m, c in p.terms.items():
        falling = 1
        for i in range(k):
            falling *= m - i
        total += c * falling
    return Fraction(total)


def h_expansion(p: LaurentPoly, order: int) -> list[Fraction]:
    """Taylor coefficients of ``p(e^h)`` up to ``h**order``."""
    if order < 0:
        raise ValueError("order must be non-negative")
    out = []
    for n in range(order + 1):
        s = sum(c * m**n for m, c in p.terms.items())
        out.append(Fraction(s, math.factorial(n)))
    return out


def substitute_power(p: LaurentPoly, new_var: str, step: int) -> LaurentPoly:
    """Rewrite ``p`` in ``new_var = var**step``, i.e. exponent ``m`` becomes ``m / step``."""
    if step == 0:
        raise ValueError("step must be nonzero")
    out = {}
    for m, c in p.terms.items():
        if m % step:
            raise ValueError(f"exponent {m} of {p.var} not divisible by {step}")
        out[m // step] = c
    return LaurentPoly(new_var, out)


def _z2_basis(i: int, var: str) -> LaurentPoly:
    # (t - 2 + t^-1)^i
    return LaurentPoly(var, {1: 1, 0: -2, -1: 1}) ** i


def alexander_to_conway(delta: LaurentPoly, new_var: str = "z") -> LaurentPoly:
    """Convert a normalized Alexander polynomial to the Conway polynomial.

    Uses ``z**2 = t - 2 + t**-1`` and peels off the top degree repeatedly.
    """
    if not delta.is_symmetric():
        raise ValueError(f"Alexander polynomial {delta} is not symmetric")
    if delta.at_one() != 1:
        raise ValueError(f"Alexander polynomial {delta} is not normalized (value at 1 is {delta.at_one()})")
    rem = delta
    out = {}
    while not rem.is_zero():
        top = rem.max_exp
        c = rem.coeff(top)
        out[2 * top] = c
        rem = rem - c * _z2_basis(top, delta.var)
    return LaurentPoly(new_var, out)


def conway_to_alexander(nabla: LaurentPoly, new_var: str = "t") -> LaurentPoly:
    """Inverse of :func:`alexander_to_conway` for polynomials with even powers only."""
    out = LaurentPoly(new_var)
    for e, c in nabla.terms.items():
        if e % 2 or e < 0:
            raise ValueError("Conway polynomial of a knot has only non-negative even powers")
        out = out + c * _z2_basis(e // 2, new_var)
    return out


class Infinity:
    """The extended value larger than every rational."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __eq__(self, other):
        return isinstance(other, Infinity)

    def __hash__(self):
        return hash("ktconway.INF")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return isinstance(other, Infinity)

    def __gt__(self, other):
        return not isinstance(other, Infinity)

    def __ge__(self, other):
        return True


INF = Infinity()

ExtendedRational = Union[Fraction, Infinity]


def format_extended(x: ExtendedRational) -> str:
    """Render as ``"p/q"`` (``"p"`` for integers) or ``"inf"``."""
    if isinstance(x, Infinity):
        return "inf"
    return str(Fraction(x))


def parse_extended(s: str) -> ExtendedRational:
    s = s.strip()
    if s == "inf":
        return INF
    return Fraction(s)
