"""Commutative polynomials over a fixed, ordered variable list.

The canonical ring has the sixteen parameters ``l1..l8, m1..m8`` (the
coefficients of the two degree-3 identities), but any variable list works;
the mini systems use ``l, lp``.  Monomials are dense exponent tuples.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .coeff import QQ, FieldMismatch, FieldSpec, Scalar, Value

ExpVec = tuple  # tuple[int, ...], one entry per variable

EXPONENT_CAP = (1 << 16) - 1

PARAMS: tuple[str, ...] = tuple(f"l{i}" for i in range(1, 9)) + tuple(f"m{i}" for i in range(1, 9))


class ExponentOverflow(OverflowError):
    pass


class LengthMismatch(ValueError):
    pass


class MissingAssignment(KeyError):
    pass


class PolySyntaxError(ValueError):
    pass


# ---------------------------------------------------------------------------
# monomial orders


class OrderKind(enum.Enum):
    LEX = "lp"
    DEGLEX = "Dp"
    DEGREVLEX = "dp"


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order on exponent vectors of a fixed length.

    ``precedence`` lists variable indices from most to least significant;
    ``None`` means the natural order of the variable list.
    """

    kind: OrderKind = OrderKind.DEGREVLEX
    precedence: tuple[int, ...] | None = None

    def prec(self, n: int) -> tuple[int, ...]:
        if self.precedence is None:
            return tuple(range(n))
        if sorted(self.precedence) != list(range(n)):
            raise LengthMismatch(f"precedence {self.precedence} is not a permutation of {n} variables")
        return self.precedence

    def key(self, e: ExpVec):
        """Sort key: ``key(a) > key(b)`` iff ``a > b`` in this order."""
        p = self.precedence or range(len(e))
        if self.kind is OrderKind.LEX:
            return tuple(e[i] for i in p)
        if self.kind is OrderKind.DEGLEX:
            return (sum(e),) + tuple(e[i] for i in p)
        return (sum(e),) + tuple(-e[i] for i in reversed(tuple(p)))

    @property
    def name(self) -> str:
        return self.kind.value


LEX = MonomialOrder(OrderKind.LEX)
DEGLEX = MonomialOrder(OrderKind.DEGLEX)
DEGREVLEX = MonomialOrder(OrderKind.DEGREVLEX)


def parse_order(name: str, precedence: Sequence[int] | None = None) -> MonomialOrder:
    """Map the external CAS names ``dp``/``Dp``/``lp`` (or long names) to an order."""
    aliases = {
        "dp": OrderKind.DEGREVLEX, "degrevlex": OrderKind.DEGREVLEX, "grevlex": OrderKind.DEGREVLEX,
        "Dp": OrderKind.DEGLEX, "deglex": OrderKind.DEGLEX, "grlex": OrderKind.DEGLEX,
        "lp": OrderKind.LEX, "lex": OrderKind.LEX,
    }
    kind = aliases.get(name) or aliases.get(name.lower() if name.lower() != "dp" else name)
    if kind is None:
        raise ValueError(f"unknown monomial order {name!r}")
    return MonomialOrder(kind, tuple(precedence) if precedence is not None else None)


def order_compare(o: MonomialOrder, m1: ExpVec, m2: ExpVec) -> int:
    """-1, 0 or 1 as ``m1`` is smaller than, equal to or bigger than ``m2``."""
    if len(m1) != len(m2):
        raise LengthMismatch(f"{len(m1)} vs {len(m2)} exponents")
    k1, k2 = o.key(m1), o.key(m2)
    return (k1 > k2) - (k1 < k2)


def mono_mul(a: ExpVec, b: ExpVec) -> ExpVec:
    e = tuple(x + y for x, y in zip(a, b))
    if max(e, default=0) > EXPONENT_CAP:
        raise ExponentOverflow(f"exponent above {EXPONENT_CAP}")
    return e


def mono_divides(a: ExpVec, b: ExpVec) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: ExpVec, a: ExpVec) -> ExpVec:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: ExpVec, b: ExpVec) -> ExpVec:
    return tuple(max(x, y) for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# polynomials


class ParamPoly:
    """Sparse commutative polynomial; immutable by convention.

    ``terms`` maps exponent tuples to nonzero canonical field values.
    """

    __slots__ = ("field", "varnames", "_terms", "_hash")

    def __init__(self, terms: Mapping[ExpVec, object] | Iterable = (), field: FieldSpec = QQ,
                 varnames: Sequence[str] = PARAMS):
        self.field = field
        self.varnames = tuple(varnames)
        n = len(self.varnames)
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[ExpVec, Value] = {}
        for e, c in items:
            e = tuple(e)
            if len(e) != n:
                raise LengthMismatch(f"exponent vector {e} for {n} variables")
            if min(e, default=0) < 0:
                raise ValueError(f"negative exponent in {e}")
            if max(e, default=0) > EXPONENT_CAP:
                raise ExponentOverflow(f"exponent above {EXPONENT_CAP}")
            c = field.add(clean.get(e, field.zero), field(c))
            if c:
                clean[e] = c
            else:
                clean.pop(e, None)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, field: FieldSpec, varnames: tuple) -> ParamPoly:
        p = cls.__new__(cls)
        p.field, p.varnames, p._terms, p._hash = field, varnames, terms, None
        return p

    # constructors ------------------------------------------------------

    @classmethod
    def zero(cls, field: FieldSpec = QQ, varnames: Sequence[str] = PARAMS) -> ParamPoly:
        return cls({}, field, varnames)

    @classmethod
    def const(cls, c, field: FieldSpec = QQ, varnames: Sequence[str] = PARAMS) -> ParamPoly:
        return cls({(0,) * len(varnames): c}, field, varnames)

    @classmethod
    def one(cls, field: FieldSpec = QQ, varnames: Sequence[str] = PARAMS) -> ParamPoly:
        return cls.const(1, field, varnames)

    @classmethod
    def var(cls, name: str, field: FieldSpec = QQ, varnames: Sequence[str] = PARAMS) -> ParamPoly:
        varnames = tuple(varnames)
        i = _var_index(name, varnames)
        e = [0] * len(varnames)
        e[i] = 1
        return cls({tuple(e): 1}, field, varnames)

    @classmethod
    def parse(cls, text: str, field: FieldSpec = QQ, varnames: Sequence[str] = PARAMS) -> ParamPoly:
        return parse_poly(text, field, varnames)

    # basic queries -----------------------------------------------------

    @property
    def terms(self) -> dict[ExpVec, Value]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    @property
    def nvars(self) -> int:
        return len(self.varnames)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def coefficient(self, e: ExpVec) -> Value:
        return self._terms.get(tuple(e), self.field.zero)

    def constant_term(self) -> Value:
        return self.coefficient((0,) * self.nvars)

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def leading_monomial(self, order: MonomialOrder = DEGREVLEX) -> ExpVec:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self._terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder = DEGREVLEX) -> Value:
        return self._terms[self.leading_monomial(order)]

    def sorted_terms(self, order: MonomialOrder = DEGREVLEX) -> list[tuple[ExpVec, Value]]:
        return sorted(self._terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def variables(self) -> list[str]:
        used = set()
        for e in self._terms:
            used.update(i for i, k in enumerate(e) if k)
        return [self.varnames[i] for i in sorted(used)]

    # arithmetic --------------------------------------------------------

    def _check(self, other: ParamPoly):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        if self.varnames != other.varnames:
            raise FieldMismatch(f"variables {self.varnames} vs {other.varnames}")

    def _coerce(self, other) -> ParamPoly:
        if isinstance(other, ParamPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Scalar)) or hasattr(other, "denominator"):
            return ParamPoly.const(other, self.field, self.varnames)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        f = self.field
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = f.add(out.get(e, f.zero), c)
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return ParamPoly._raw(out, f, self.varnames)

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        return ParamPoly._raw({e: f.neg(c) for e, c in self._terms.items()}, f, self.varnames)

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
        f = self.field
        out: dict[ExpVec, Value] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = mono_mul(e1, e2)
                s = f.add(out.get(e, f.zero), f.mul(c1, c2))
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return ParamPoly._raw(out, f, self.varnames)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = ParamPoly.one(self.field, self.varnames)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> ParamPoly:
        f = self.field
        c = f(c)
        if not c:
            return ParamPoly.zero(f, self.varnames)
        return ParamPoly._raw({e: f.mul(v, c) for e, v in self._terms.items()}, f, self.varnames)

    def mul_term(self, e: ExpVec, c) -> ParamPoly:
        f = self.field
        c = f(c)
        if not c:
            return ParamPoly.zero(f, self.varnames)
        return ParamPoly._raw({mono_mul(m, e): f.mul(v, c) for m, v in self._terms.items()},
                              f, self.varnames)

    def monic(self, order: MonomialOrder = DEGREVLEX) -> ParamPoly:
        return self.scale(self.field.inv(self.leading_coefficient(order)))

    def change_field(self, field: FieldSpec) -> ParamPoly:
        return ParamPoly(self._terms, field, self.varnames)

    def evaluate(self, point: Mapping[str, object]) -> Scalar:
        return ppoly_substitute(self, point)

    # comparison & display ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, ParamPoly):
            return (self.field == other.field and self.varnames == other.varnames
                    and self._terms == other._terms)
        if isinstance(other, int):
            return self._terms == ParamPoly.const(other, self.field, self.varnames)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.varnames, frozenset(self._terms.items())))
        return self._hash

    def render(self, order: MonomialOrder = DEGREVLEX, style: str = "internal") -> str:
        names = script_names(self.varnames) if style == "script" else self.varnames
        return render_terms(self.sorted_terms(order), names, self.field)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"ParamPoly({self.render()!r}, {self.field})"


def _var_index(name: str, varnames: tuple[str, ...]) -> int:
    try:
        return varnames.index(name)
    except ValueError:
        pass
    alias = _SCRIPT_VAR.fullmatch(name)
    if alias and varnames == PARAMS:
        letter = "l" if alias.group(1) == "x" else "m"
        return PARAMS.index(f"{letter}{alias.group(2)}")
    raise PolySyntaxError(f"unknown variable {name!r}")


_SCRIPT_VAR = re.compile(r"([xy])\(([1-8])\)")


def script_names(varnames: Sequence[str]) -> tuple[str, ...]:
    """``l3 -> x(3)``, ``m3 -> y(3)``; other names pass through."""
    out = []
    for v in varnames:
        m = re.fullmatch(r"([lm])(\d+)", v)
        out.append(f"{'x' if m.group(1) == 'l' else 'y'}({m.group(2)})" if m else v)
    return tuple(out)


def render_monomial(e: ExpVec, names: Sequence[str]) -> str:
    parts = []
    for i, k in enumerate(e):
        if k == 1:
            parts.append(names[i])
        elif k > 1:
            parts.append(f"{names[i]}^{k}")
    return "*".join(parts)


def render_terms(terms: Iterable[tuple[ExpVec, Value]], names: Sequence[str], field: FieldSpec) -> str:
    """Render ``[(exp, coeff), ...]`` in the given order as ``a - b + 2*c``."""
    out: list[str] = []
    for e, c in terms:
        neg = field.modulus is None and c < 0
        mag = -c if neg else c
        mono = render_monomial(e, names)
        cs = field.render(mag)
        if not mono:
            body = cs
        elif cs == "1":
            body = mono
        else:
            body = f"{cs}*{mono}"
        if out:
            out.append(f" - {body}" if neg else f" + {body}")
        else:
            out.append(f"- {body}" if neg else body)
    return "".join(out) or "0"


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>[xy]\(\d+\)|[A-Za-z_][A-Za-z_0-9']*)|(?P<op>[-+*/^()])|(?P<minus>−))")


def parse_poly(text: str, field: FieldSpec = QQ, varnames: Sequence[str] = PARAMS) -> ParamPoly:
    """Parse ``m5*m5 + m6*m1 - 1``, ``y(5)*y(5) - 1``, ``2/3*l1^2`` and the like.

    Terms are products of integers, ``a/b`` rationals and variables with an
    optional ``^k``; they are joined by ``+``/``-`` (a leading sign is allowed).
    """
    varnames = tuple(varnames)
    toks = []
    pos = 0
    s = text.strip().rstrip(";")
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            raise PolySyntaxError(f"bad character at {pos}: {s[pos:pos + 10]!r}")
        if m.group("num"):
            toks.append(("num", int(m.group("num")), m.start("num")))
        elif m.group("var"):
            toks.append(("var", _var_index(m.group("var"), varnames), m.start("var")))
        elif m.group("minus"):
            toks.append(("op", "-", m.start("minus")))
        elif m.group("op"):
            toks.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
        while pos < len(s) and s[pos].isspace():
            pos += 1
    if not toks:
        raise PolySyntaxError("empty polynomial")

    n = len(varnames)
    zero = (0,) * n
    terms: list[tuple[ExpVec, object]] = []
    i = 0

    def expect_factor():
        nonlocal i
        if i >= len(toks):
            raise PolySyntaxError("unexpected end of input")
        kind, val, at = toks[i]
        i += 1
        if kind == "num":
            coef = field(val)
            if i < len(toks) and toks[i][:2] == ("op", "/"):
                if i + 1 >= len(toks) or toks[i + 1][0] != "num":
                    raise PolySyntaxError(f"bad rational at {at}")
                coef = field.div(coef, field(toks[i + 1][1]))
                i += 2
            return coef, zero
        if kind == "var":
            k = 1
            if i < len(toks) and toks[i][:2] == ("op", "^"):
                if i + 1 >= len(toks) or toks[i + 1][0] != "num":
                    raise PolySyntaxError(f"bad exponent at {at}")
                k = toks[i + 1][1]
                i += 2
            e = [0] * n
            e[val] = k
            return field.one, tuple(e)
        raise PolySyntaxError(f"unexpected {val!r} at {at}")

    sign = 1
    if toks[0][:2] in (("op", "-"), ("op", "+")):
        sign = -1 if toks[0][1] == "-" else 1
        i = 1
    while True:
        coef, e = expect_factor()
        while i < len(toks) and toks[i][:2] == ("op", "*"):
            i += 1
            c2, e2 = expect_factor()
            coef, e = field.mul(coef, c2), mono_mul(e, e2)
        terms.append((e, coef if sign > 0 else field.neg(coef)))
        if i >= len(toks):
            break
        kind, val, at = toks[i]
        if kind != "op" or val not in "+-":
            raise PolySyntaxError(f"expected + or - at {at}, got {val!r}")
        sign = 1 if val == "+" else -1
        i += 1
    return ParamPoly(terms, field, varnames)


# ---------------------------------------------------------------------------
# module-level operations


def ppoly_arith(a: ParamPoly, b, op: str) -> ParamPoly:
    if op == "scale":
        return a.scale(b)
    if not isinstance(b, ParamPoly):
        raise TypeError("second operand must be a ParamPoly")
    a._check(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def ppoly_substitute(p: ParamPoly, point: Mapping[str, object]) -> Scalar:
    """Evaluate ``p`` at ``point``; only variables occurring in ``p`` must be assigned."""
    f = p.field
    vals = {}
    for name in p.variables():
        if name not in point:
            raise MissingAssignment(name)
        vals[p.varnames.index(name)] = f(point[name])
    total = f.zero
    for e, c in p.items():
        t = c
        for i, k in enumerate(e):
            if k:
                t = f.mul(t, _pow(f, vals[i], k))
        total = f.add(total, t)
    return Scalar(f, total)


def _pow(f: FieldSpec, a: Value, k: int) -> Value:
    if f.modulus is not None:
        return pow(a, k, f.modulus)
    return a ** k


def params(field: FieldSpec = QQ) -> tuple[list[ParamPoly], list[ParamPoly]]:
    """The generators ``([l1..l8], [m1..m8])`` of the parameter ring."""
    lam = [ParamPoly.var(f"l{i}", field) for i in range(1, 9)]
    mu = [ParamPoly.var(f"m{i}", field) for i in range(1, 9)]
    return lam, mu
