"""Free non-associative words and polynomials.

A word is a full binary tree: a leaf is a letter string (``"b"``, ``"b'"``,
``"x"``, ``"y"``; any lowercase letter with an optional prime is accepted),
a product is a ``(left, right)`` tuple.  Tuples keep words hashable and
cheap to build, which matters because the expansion pipelines create a few
thousand of them.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Mapping, Sequence, Union

from .coeff import QQ, FieldSpec
from .cpoly import PARAMS, ParamPoly

Word = Union[str, tuple]

B, BP, X, Y = "b", "b'", "x", "y"
BETA_LETTERS = frozenset({B, BP})
CHI_LETTERS = frozenset({X, Y})

# canonical subtree order: x < y < b < b'
DEFAULT_LETTER_ORDER: tuple[str, ...] = (X, Y, B, BP)


class WordSyntaxError(ValueError):
    def __init__(self, msg: str, position: int):
        super().__init__(f"{msg} at position {position}")
        self.position = position


def letter_class(letter: str) -> str:
    """``"beta"`` for b, b'; ``"chi"`` for x, y."""
    if letter in BETA_LETTERS:
        return "beta"
    if letter in CHI_LETTERS:
        return "chi"
    raise ValueError(f"{letter!r} is not in the alphabet b, b', x, y")


def is_leaf(w: Word) -> bool:
    return isinstance(w, str)


def mul(u: Word, v: Word) -> Word:
    return (u, v)


def degree(w: Word) -> int:
    if isinstance(w, str):
        return 1
    return degree(w[0]) + degree(w[1])


def leaves(w: Word) -> list[str]:
    if isinstance(w, str):
        return [w]
    return leaves(w[0]) + leaves(w[1])


# ---------------------------------------------------------------------------
# text form


def word_parse(text: str) -> Word:
    """Parse the bracket grammar ``word := letter | "(" word word ")"``.

    The outermost product may omit its parentheses, so ``(bx)y`` and
    ``((bx)y)`` are the same word; ``bxy`` is rejected as ambiguous.
    """
    s = text.replace("′", "'")
    pos = 0

    def skip():
        nonlocal pos
        while pos < len(s) and s[pos].isspace():
            pos += 1

    def seq(closing: bool) -> list[Word]:
        nonlocal pos
        items = []
        while True:
            skip()
            if pos >= len(s):
                if closing:
                    raise WordSyntaxError("missing ')'", pos)
                return items
            ch = s[pos]
            if ch == ")":
                if not closing:
                    raise WordSyntaxError("unbalanced ')'", pos)
                return items
            if ch == "(":
                start = pos
                pos += 1
                inner = seq(True)
                pos += 1
                if len(inner) != 2:
                    raise WordSyntaxError("a bracket must hold exactly two factors", start)
                items.append((inner[0], inner[1]))
            elif "a" <= ch <= "z":
                pos += 1
                if pos < len(s) and s[pos] == "'":
                    pos += 1
                    items.append(ch + "'")
                else:
                    items.append(ch)
            else:
                raise WordSyntaxError(f"unexpected {ch!r}", pos)
            if len(items) > 2:
                raise WordSyntaxError("ambiguous product, brackets required", pos - 1)

    items = seq(False)
    if not items:
        raise WordSyntaxError("empty word", 0)
    return items[0] if len(items) == 1 else (items[0], items[1])


def render(w: Word) -> str:
    """Fully parenthesised except the outermost product: ``(bx)y``, ``(bb')(xy)``."""
    if isinstance(w, str):
        return w
    return _render_inner(w[0]) + _render_inner(w[1])


def _render_inner(w: Word) -> str:
    if isinstance(w, str):
        return w
    return "(" + _render_inner(w[0]) + _render_inner(w[1]) + ")"


W = word_parse


# ---------------------------------------------------------------------------
# types and ordering


def type_of(w: Word) -> dict[str, int]:
    """Letter multiplicities; their sum is the degree."""
    return dict(Counter(leaves(w)))


def type_key(w: Word) -> tuple:
    """Hashable form of :func:`type_of`, sorted by letter."""
    return tuple(sorted(Counter(leaves(w)).items()))


def serialize(w: Word, letter_order: Sequence[str] = DEFAULT_LETTER_ORDER) -> tuple:
    """Preorder code; products rank above every letter."""
    node = len(letter_order)

    def rank(a: str) -> int:
        try:
            return letter_order.index(a)
        except ValueError:
            raise ValueError(f"letter {a!r} missing from order {letter_order}") from None

    out: list[int] = []

    def walk(u):
        if isinstance(u, str):
            out.append(rank(u))
        else:
            out.append(node)
            walk(u[0])
            walk(u[1])

    walk(w)
    return tuple(out)


def word_key(w: Word, letter_order: Sequence[str] = DEFAULT_LETTER_ORDER) -> tuple:
    return (degree(w), serialize(w, _extend_order(w, letter_order)))


def _extend_order(w: Word, letter_order: Sequence[str]) -> tuple[str, ...]:
    extra = sorted(set(leaves(w)) - set(letter_order))
    return tuple(letter_order) + tuple(extra)


def anticomm_normal_form(w: Word, letter_order: Sequence[str] = DEFAULT_LETTER_ORDER) -> tuple[int, Word]:
    """Normal form modulo ``uv = -vu``.

    Children are normalised first; a node whose left child serialises above
    its right child is swapped and the sign flips.  Squares ``uu`` stay put.
    """
    order = tuple(letter_order)

    def nf(u):
        if isinstance(u, str):
            return 1, u
        s1, a = nf(u[0])
        s2, c = nf(u[1])
        if serialize(a, order) > serialize(c, order):
            return -s1 * s2, (c, a)
        return s1 * s2, (a, c)

    return nf(w)


def anticommutative_reduce(lambdas: Sequence):
    """Coefficients of ``y(zx)`` and ``x(yz)`` after folding the eight template
    monomials of ``z(xy) = l1 (zx)y + ... + l8 x(yz)`` modulo anticommutativity.

    Works for numbers, :class:`Scalar` and :class:`ParamPoly` alike.
    """
    from .identity import TEMPLATE

    if len(lambdas) != 8:
        raise ValueError("need exactly eight coefficients")
    order = ("x", "y", "z")
    basis = [anticomm_normal_form(word_parse(t), order) for t in ("y(zx)", "x(yz)")]
    acc = [lambdas[0] * 0, lambdas[0] * 0]
    for c, t in zip(lambdas, TEMPLATE):
        s, nf = anticomm_normal_form(t, order)
        for j, (sb, b) in enumerate(basis):
            if nf == b:
                acc[j] = acc[j] + c * (s * sb)
                break
        else:
            raise AssertionError(f"{render(t)} left the two-element basis")
    return acc[0], acc[1]


# ---------------------------------------------------------------------------
# polynomials


class NAPoly:
    """Linear combination of words with :class:`ParamPoly` coefficients."""

    __slots__ = ("field", "varnames", "_terms")

    def __init__(self, terms: Mapping[Word, object] | Iterable = (), field: FieldSpec = QQ,
                 varnames: Sequence[str] = PARAMS):
        self.field = field
        self.varnames = tuple(varnames)
        self._terms: dict[Word, ParamPoly] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for w, c in items:
            self._add_term(w, self._coef(c))

    def _coef(self, c) -> ParamPoly:
        if isinstance(c, ParamPoly):
            if c.field != self.field or c.varnames != self.varnames:
                raise ValueError("coefficient ring mismatch")
            return c
        return ParamPoly.const(c, self.field, self.varnames)

    def _add_term(self, w: Word, c: ParamPoly):
        if isinstance(w, str):
            w = word_parse(w)
        old = self._terms.get(w)
        new = c if old is None else old + c
        if new:
            self._terms[w] = new
        else:
            self._terms.pop(w, None)

    @classmethod
    def monomial(cls, w: Word | str, coeff=1, field: FieldSpec = QQ,
                 varnames: Sequence[str] = PARAMS) -> NAPoly:
        if isinstance(w, str):
            w = word_parse(w)
        return cls({w: coeff}, field, varnames)

    def _empty(self) -> NAPoly:
        return NAPoly((), self.field, self.varnames)

    def items(self):
        return self._terms.items()

    def words(self) -> list[Word]:
        return sorted(self._terms, key=word_key)

    def coefficient(self, w: Word | str) -> ParamPoly:
        if isinstance(w, str):
            w = word_parse(w)
        return self._terms.get(w) or ParamPoly.zero(self.field, self.varnames)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __contains__(self, w):
        return w in self._terms

    def __add__(self, other: NAPoly) -> NAPoly:
        out = self._empty()
        out._terms = dict(self._terms)
        for w, c in other._terms.items():
            out._add_term(w, c)
        return out

    def __neg__(self) -> NAPoly:
        out = self._empty()
        out._terms = {w: -c for w, c in self._terms.items()}
        return out

    def __sub__(self, other: NAPoly) -> NAPoly:
        return self + (-other)

    def scale(self, c) -> NAPoly:
        c = self._coef(c)
        out = self._empty()
        for w, v in self._terms.items():
            out._add_term(w, v * c)
        return out

    def __eq__(self, other):
        if not isinstance(other, NAPoly):
            return NotImplemented
        return self._terms == other._terms

    def render(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for w in self.words():
            c = self._terms[w]
            cs = c.render()
            if len(c) > 1:
                cs = f"({cs})"
            parts.append(f"{cs} {render(w)}")
        return " + ".join(parts)

    def __repr__(self):
        return f"NAPoly({self.render()!r})"


def homogeneous_components(p: NAPoly) -> dict[tuple, NAPoly]:
    """Split ``p`` by word type; keys come from :func:`type_key`."""
    out: dict[tuple, NAPoly] = {}
    for w, c in p.items():
        k = type_key(w)
        if k not in out:
            out[k] = p._empty()
        out[k]._terms[w] = c
    return out
