"""Exact scalar arithmetic over Q and prime fields GF(p).

Field elements are plain Python values: :class:`fractions.Fraction` for the
rationals and ``int`` residues in ``[0, p)`` for GF(p).  A :class:`FieldSpec`
knows how to canonicalise, combine and render them, so polynomial code never
needs to branch on the field kind.  :class:`Scalar` wraps a value together
with its field for callers who want operator syntax.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Value = Union[int, Fraction]

MODULUS_LIMIT = 1 << 31

# Deterministic for n < 3,215,031,751 (Jaeschke); covers every 31-bit modulus.
_MR_WITNESSES = (2, 3, 5, 7)


class FieldError(ValueError):
    pass


class NonPrimeModulus(FieldError):
    pass


class ModulusTooLarge(FieldError):
    pass


class FieldMismatch(FieldError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for 0 <= n < 2**31."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    if n >= MODULUS_LIMIT:
        raise ModulusTooLarge(n)
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class FieldKind(enum.Enum):
    RATIONALS = "Q"
    PRIME = "GF"


@dataclass(frozen=True)
class FieldSpec:
    kind: FieldKind
    modulus: int | None = None

    def __post_init__(self):
        if self.kind is FieldKind.RATIONALS:
            if self.modulus is not None:
                raise FieldError("the rationals take no modulus")
        elif self.modulus is None:
            raise FieldError("a prime field needs a modulus")

    @property
    def is_prime_field(self) -> bool:
        return self.kind is FieldKind.PRIME

    @property
    def characteristic(self) -> int:
        return self.modulus or 0

    def __str__(self):
        return "Q" if self.modulus is None else f"GF({self.modulus})"

    # element handling -------------------------------------------------

    def __call__(self, x) -> Value:
        """Canonical field element for an int, Fraction or ``"a/b"`` string."""
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldMismatch(f"{x.field} vs {self}")
            return x.value
        if self.modulus is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.modulus == 0:
                raise DivisionByZero(f"denominator of {x} vanishes in {self}")
            return x.numerator * pow(x.denominator, -1, self.modulus) % self.modulus
        return int(x) % self.modulus

    @property
    def zero(self) -> Value:
        return self(0)

    @property
    def one(self) -> Value:
        return self(1)

    def add(self, a: Value, b: Value) -> Value:
        return a + b if self.modulus is None else (a + b) % self.modulus

    def sub(self, a: Value, b: Value) -> Value:
        return a - b if self.modulus is None else (a - b) % self.modulus

    def mul(self, a: Value, b: Value) -> Value:
        return a * b if self.modulus is None else a * b % self.modulus

    def neg(self, a: Value) -> Value:
        return -a if self.modulus is None else -a % self.modulus

    def inv(self, a: Value) -> Value:
        if not a:
            raise DivisionByZero(f"inverse of zero in {self}")
        if self.modulus is None:
            return 1 / a
        return pow(a, -1, self.modulus)

    def div(self, a: Value, b: Value) -> Value:
        return self.mul(a, self.inv(b))

    def render(self, a: Value) -> str:
        if isinstance(a, Fraction) and a.denominator != 1:
            return f"{a.numerator}/{a.denominator}"
        return str(int(a))

    def lift(self, a: Value) -> int:
        """Integer representative of a residue (the least non-negative one)."""
        if self.modulus is None:
            if a.denominator != 1:
                raise FieldError(f"{a} is not an integer")
            return a.numerator
        return a


QQ = FieldSpec(FieldKind.RATIONALS)


def field_make(kind: FieldKind | str, modulus: int | None = None) -> FieldSpec:
    """Validated field constructor.

    >>> field_make("GF", 7)
    FieldSpec(kind=<FieldKind.PRIME: 'GF'>, modulus=7)
    """
    kind = FieldKind(kind) if isinstance(kind, str) else kind
    if kind is FieldKind.RATIONALS:
        return QQ
    if modulus is None:
        raise FieldError("a prime field needs a modulus")
    if modulus >= MODULUS_LIMIT:
        raise ModulusTooLarge(f"{modulus} does not fit in 31 bits")
    if not is_prime(modulus):
        raise NonPrimeModulus(f"{modulus} is not prime")
    return FieldSpec(FieldKind.PRIME, modulus)


def GF(p: int) -> FieldSpec:
    return field_make(FieldKind.PRIME, p)


def parse_field(text: str) -> FieldSpec:
    """``q`` / ``Q`` / ``0`` for the rationals, ``gf:P`` or a bare prime otherwise."""
    t = text.strip().lower()
    if t in ("q", "qq", "0"):
        return QQ
    if t.startswith("gf:"):
        t = t[3:]
    elif t.startswith("gf(") and t.endswith(")"):
        t = t[3:-1]
    try:
        p = int(t)
    except ValueError:
        raise FieldError(f"unrecognised field {text!r}") from None
    return GF(p)


@dataclass(frozen=True)
class Scalar:
    """A field element bound to its field; immutable."""

    field: FieldSpec
    value: Value

    @classmethod
    def of(cls, field: FieldSpec, x) -> Scalar:
        return cls(field, field(x))

    def _other(self, other) -> Value:
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        return self.field(other)

    def __add__(self, other):
        return Scalar(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return Scalar(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return Scalar(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Scalar(self.field, self.field.div(self.value, self._other(other)))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def inv(self) -> Scalar:
        return Scalar(self.field, self.field.inv(self.value))

    def __bool__(self):
        return bool(self.value)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field(other)
        except (TypeError, ValueError, ZeroDivisionError):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __str__(self):
        return self.field.render(self.value)


def scalar_arith(a: Scalar, b: Scalar | None, op: str) -> Scalar:
    """Dispatch ``add|sub|mul|div|inv|neg``; unary ops ignore ``b``."""
    if op == "inv":
        return a.inv()
    if op == "neg":
        return -a
    if b is None:
        raise TypeError(f"{op} needs two operands")
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    try:
        return {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__, "div": a.__truediv__}[op](b)
    except KeyError:
        raise ValueError(f"unknown op {op!r}") from None
