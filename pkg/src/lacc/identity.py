"""The two eight-term degree-3 identities and the obstruction system they force.

Every expansion step substitutes three units into one of the templates

    z(xy) = l1 (zx)y + l2 (xz)y + l3 y(zx) + l4 y(xz)
          + l5 (zy)x + l6 (yz)x + l7 x(zy) + l8 x(yz)
    (xy)z = m1 (zx)y + ... + m8 x(yz)

The rules are not confluent, so the pipelines below fix the order of
expansion steps explicitly; the coefficients that survive after collecting
over fixed word bases are the 128 polynomials f1..f128.
"""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Sequence

from .coeff import QQ
from .cpoly import PARAMS, ParamPoly, params
from .magma import (BETA_LETTERS, CHI_LETTERS, NAPoly, Word, is_leaf, leaves, render,
                    word_parse)

TEMPLATE: tuple[Word, ...] = tuple(word_parse(t) for t in (
    "(zx)y", "(xz)y", "y(zx)", "y(xz)", "(zy)x", "(yz)x", "x(zy)", "x(yz)"))

SYSTEM_SIZE = 128


class BadShape(ValueError):
    pass


class BadPath(ValueError):
    pass


class ExtractionError(ValueError):
    """Words were left over after collecting coefficients over a basis."""


class MissingData(FileNotFoundError):
    pass


class LengthMismatch(ValueError):
    pass


@dataclass(frozen=True)
class IdentityRule:
    """``kind`` fixes how units are read off a node; ``coeffs`` are the eight
    template coefficients (normally l1..l8 or m1..m8)."""

    kind: str  # "lambda": z(xy);  "mu": (xy)z
    coeffs: tuple

    def units(self, node: Word) -> dict[str, Word]:
        if is_leaf(node):
            raise BadShape(f"{render(node)} is a letter, not a product")
        if self.kind == "mu":
            if is_leaf(node[0]):
                raise BadShape(f"mu rule needs a product on the left of {render(node)}")
            return {"x": node[0][0], "y": node[0][1], "z": node[1]}
        if is_leaf(node[1]):
            raise BadShape(f"lambda rule needs a product on the right of {render(node)}")
        return {"z": node[0], "x": node[1][0], "y": node[1][1]}

    def instantiate(self, node: Word) -> list[tuple[ParamPoly, Word]]:
        u = self.units(node)
        return [(c, _subst(t, u)) for c, t in zip(self.coeffs, TEMPLATE)]


def _subst(t: Word, units: dict[str, Word]) -> Word:
    if is_leaf(t):
        return units[t]
    return (_subst(t[0], units), _subst(t[1], units))


_LAM, _MU = params()
LAMBDA_RULE = IdentityRule("lambda", tuple(_LAM))
MU_RULE = IdentityRule("mu", tuple(_MU))


def rule(kind: str) -> IdentityRule:
    return {"lambda": LAMBDA_RULE, "mu": MU_RULE}[kind]


# ---------------------------------------------------------------------------
# expansion


def _norm_path(path) -> str:
    if isinstance(path, str):
        p = path.upper()
    else:
        p = "".join("LR"[int(i)] for i in path)
    if set(p) - {"L", "R"}:
        raise BadPath(f"path {path!r} may only contain L and R")
    return p


def subword(w: Word, path) -> Word:
    for step in _norm_path(path):
        if is_leaf(w):
            raise BadPath(f"path {path!r} runs past a letter")
        w = w[0] if step == "L" else w[1]
    return w


def replace_at(w: Word, path, new: Word) -> Word:
    p = _norm_path(path)
    if not p:
        return new
    if is_leaf(w):
        raise BadPath(f"path {path!r} runs past a letter")
    if p[0] == "L":
        return (replace_at(w[0], p[1:], new), w[1])
    return (w[0], replace_at(w[1], p[1:], new))


def expand_word(w: Word, path, rule: IdentityRule, coeff: ParamPoly | None = None) -> NAPoly:
    """Replace the product at ``path`` by the rule's eight-term instantiation."""
    if isinstance(w, str):
        w = word_parse(w)
    node = subword(w, path)
    out = NAPoly()
    for c, t in rule.instantiate(node):
        out._add_term(replace_at(w, path, t), c if coeff is None else coeff * c)
    return out


def expand_at(p: NAPoly, path, rule: IdentityRule, only: Word | None = None) -> NAPoly:
    """Expand every monomial of ``p`` (or just ``only``) at ``path``.

    Existing coefficients multiply the template coefficients; like terms merge.
    """
    if isinstance(only, str):
        only = word_parse(only)
    out = NAPoly((), p.field, p.varnames)
    for w, c in p.items():
        if only is None or w == only:
            for w2, c2 in expand_word(w, path, rule, c).items():
                out._add_term(w2, c2)
        else:
            out._add_term(w, c)
    return out


def root_rule(node: Word) -> IdentityRule:
    """Mu when the left factor is a product, lambda when only the right one is."""
    if is_leaf(node):
        raise BadShape(f"{render(node)} is a letter")
    if not is_leaf(node[0]):
        return MU_RULE
    if not is_leaf(node[1]):
        return LAMBDA_RULE
    raise BadShape(f"{render(node)} has no product factor")


def extract(p: NAPoly, basis: Sequence[Word]) -> list[ParamPoly]:
    """Coefficients of ``p`` over ``basis``; fails if anything is left over."""
    basis = [word_parse(b) if isinstance(b, str) else b for b in basis]
    stray = set(w for w, _ in p.items()) - set(basis)
    if stray:
        raise ExtractionError("words outside the basis: " + ", ".join(sorted(render(w) for w in stray)))
    return [p.coefficient(b) for b in basis]


# ---------------------------------------------------------------------------
# the three pipelines

STAGE1_STARTS = tuple(word_parse(t) for t in ("(bx)y", "(xb)y", "y(bx)", "y(xb)"))
STAGE1_BASIS = tuple(word_parse(t) for t in (
    "(bx)y", "(xb)y", "y(bx)", "y(xb)", "(by)x", "(yb)x", "x(by)", "x(yb)"))

MIXED_XY = tuple(word_parse(t) for t in (
    "(b'y)(bx)", "(yb')(bx)", "(bx)(b'y)", "(bx)(yb')",
    "(b'y)(xb)", "(yb')(xb)", "(xb)(b'y)", "(xb)(yb')"))
MIXED_YX = tuple(word_parse(t) for t in (
    "(b'x)(by)", "(xb')(by)", "(by)(b'x)", "(by)(xb')",
    "(b'x)(yb)", "(xb')(yb)", "(yb)(b'x)", "(yb)(xb')"))


def kappa(z: str) -> tuple[Word, ...]:
    """The eight degree-3 words in b, b', z that occur inside the blocks."""
    return tuple(word_parse(t.replace("z", z)) for t in (
        "(zb)b'", "(bz)b'", "b'(zb)", "b'(bz)", "(zb')b", "(b'z)b", "b(zb')", "b(b'z)"))


# (block name, basis) in output order
BRACKET_BLOCKS: tuple[tuple[str, tuple[Word, ...]], ...] = (
    ("mixed(bx,b'y)", MIXED_XY),
    ("mixed(by,b'x)", MIXED_YX),
    ("kappa(x)*y", tuple((k, "y") for k in kappa("x"))),
    ("y*kappa(x)", tuple(("y", k) for k in kappa("x"))),
    ("kappa(y)*x", tuple((k, "x") for k in kappa("y"))),
    ("x*kappa(y)", tuple(("x", k) for k in kappa("y"))),
)

BB_XY = word_parse("(bb')(xy)")
XY_BB = word_parse("(xy)(bb')")


@dataclass(frozen=True)
class Provenance:
    index: int
    pipeline: str
    block: str
    word: str


@dataclass
class ObstructionSystem:
    polys: list[ParamPoly]
    provenance: list[Provenance] = field(default_factory=list)

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def f(self, i: int) -> ParamPoly:
        """1-based access, ``f(1)`` .. ``f(128)``."""
        if i < 1:
            raise IndexError(i)
        return self.polys[i - 1]

    def subsystem(self, lo: int, hi: int) -> list[ParamPoly]:
        return self.polys[lo - 1:hi]


def _is_chi_against_beta(w: Word) -> bool:
    if is_leaf(w):
        return False
    a, c = w
    for leaf, prod in ((a, c), (c, a)):
        if is_leaf(leaf) and leaf in BETA_LETTERS and not is_leaf(prod) \
                and set(leaves(prod)) <= CHI_LETTERS:
            return True
    return False


def stage1_block(start: Word) -> list[ParamPoly]:
    """Eight coefficients from decomposing one of the four stage-1 start words."""
    p = expand_at(NAPoly.monomial(start), "", root_rule(start))
    for w in [w for w, _ in p.items() if _is_chi_against_beta(w)]:
        p = expand_at(p, "", root_rule(w), only=w)
    p = p - NAPoly.monomial(start)
    return extract(p, STAGE1_BASIS)


def generate_stage1() -> list[ParamPoly]:
    out = []
    for t in STAGE1_STARTS:
        out.extend(stage1_block(t))
    return out


def _side(word: Word, root: IdentityRule, reexpand_root: bool) -> NAPoly:
    """One side of a degree-4 decomposition.

    After the root step every term has one degree-3 factor; it is expanded
    in place.  With ``reexpand_root`` the whole term is then expanded at the
    root, the freshly built degree-2 product riding along as an opaque unit.
    """
    out = NAPoly()
    for w, c in expand_word(word, "", root).items():
        path = "L" if not is_leaf(w[0]) else "R"
        for w2, c2 in expand_word(w, path, root_rule(subword(w, path)), c).items():
            if reexpand_root:
                for w3, c3 in expand_word(w2, "", root_rule(w2), c2).items():
                    out._add_term(w3, c3)
            else:
                out._add_term(w2, c2)
    return out


def bracket_pipeline(word: Word, positive_root: IdentityRule, negative_root: IdentityRule
                     ) -> list[tuple[str, int, ParamPoly]]:
    """Collect ``positive - negative`` over the six 8-word blocks.

    The positive side keeps the chi product ``(xy)`` as the opaque unit of
    its root step and gets the extra root expansion; the negative side keeps
    ``(bb')`` opaque.

    Returns ``(block, position, coefficient)`` triples in output order.
    """
    delta = _side(word, positive_root, True) - _side(word, negative_root, False)
    out = []
    used = set()
    for name, basis in BRACKET_BLOCKS:
        for j, b in enumerate(basis, 1):
            out.append((name, j, delta.coefficient(b)))
            used.add(b)
    stray = [w for w, _ in delta.items() if w not in used]
    if stray:
        raise ExtractionError("words outside the blocks: " + ", ".join(render(w) for w in stray))
    return out


def generate_stage2() -> list[ParamPoly]:
    return [c for _, _, c in bracket_pipeline(BB_XY, MU_RULE, LAMBDA_RULE)]


def generate_stage3() -> list[ParamPoly]:
    return [c for _, _, c in bracket_pipeline(XY_BB, LAMBDA_RULE, MU_RULE)]


def _stage1_with_provenance() -> list[tuple[ParamPoly, str, str]]:
    rows = []
    for t in STAGE1_STARTS:
        for b, c in zip(STAGE1_BASIS, stage1_block(t)):
            rows.append((c, f"start {render(t)}", render(b)))
    return rows


def _bracket_with_provenance(word, pos, neg) -> list[tuple[ParamPoly, str, str]]:
    rows = []
    blocks = dict(BRACKET_BLOCKS)
    for name, j, c in bracket_pipeline(word, pos, neg):
        rows.append((c, name, render(blocks[name][j - 1])))
    return rows


def generate_full(parallel: bool = False) -> ObstructionSystem:
    """All 128 polynomials, f1..f32 from P1, f33..f80 from P2, f81..f128 from P3."""
    jobs = [
        ("P1", _stage1_with_provenance, ()),
        ("P2", _bracket_with_provenance, (BB_XY, MU_RULE, LAMBDA_RULE)),
        ("P3", _bracket_with_provenance, (XY_BB, LAMBDA_RULE, MU_RULE)),
    ]
    if parallel:
        with concurrent.futures.ThreadPoolExecutor(3) as ex:
            results = [ex.submit(fn, *args) for _, fn, args in jobs]
            results = [r.result() for r in results]
    else:
        results = [fn(*args) for _, fn, args in jobs]
    polys, prov = [], []
    for (name, _, _), rows in zip(jobs, results):
        for c, block, w in rows:
            polys.append(c)
            prov.append(Provenance(len(polys), name, block, w))
    return ObstructionSystem(polys, prov)


# ---------------------------------------------------------------------------
# bundled reference data


def appendix_path() -> Path:
    return Path(str(resources.files("lacc") / "data" / "appendix_a.txt"))


def read_appendix_lines(path: str | Path | None = None) -> dict[int, str]:
    """``{i: "m5*m5 + ... - 1"}`` exactly as written in the data file."""
    path = Path(path) if path is not None else appendix_path()
    if not path.is_file():
        raise MissingData(f"reference data not found: {path}")
    rows: dict[int, str] = {}
    for n, line in enumerate(path.read_text().splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        lhs, sep, rhs = line.partition("=")
        lhs = lhs.strip()
        if not sep or not lhs.startswith("f") or not lhs[1:].isdigit():
            raise ValueError(f"{path}:{n}: expected 'f<i> = <poly>'")
        rows[int(lhs[1:])] = rhs.strip()
    return rows


def load_appendix(path: str | Path | None = None) -> ObstructionSystem:
    rows = read_appendix_lines(path)
    polys = [ParamPoly.parse(rows[i], QQ, PARAMS) for i in sorted(rows)]
    return ObstructionSystem(polys)


@dataclass
class AppendixReport:
    total: int
    matched: int
    mismatches: list[dict]

    @property
    def ok(self) -> bool:
        return self.matched == self.total and not self.mismatches

    def summary(self) -> str:
        return f"{self.matched}/{self.total}"


def verify_appendix(system: ObstructionSystem, reference: ObstructionSystem) -> AppendixReport:
    if len(system) != len(reference):
        raise LengthMismatch(f"generated {len(system)} polynomials, reference has {len(reference)}")
    bad = []
    for i, (g, r) in enumerate(zip(system, reference), 1):
        if g != r:
            bad.append({"index": i, "generated": g.render(), "reference": r.render()})
    return AppendixReport(len(system), len(system) - len(bad), bad)


# ---------------------------------------------------------------------------
# the commutative mini system

MINI_VARS = ("l", "lp")


def _comm_nf(w: Word) -> Word:
    """Normal form modulo ``uv = vu``: children sorted by rendering."""
    if is_leaf(w):
        return w
    a, c = _comm_nf(w[0]), _comm_nf(w[1])
    return (a, c) if render(a) <= render(c) else (c, a)


def _comm_expand(w: Word, lam: ParamPoly, lamp: ParamPoly) -> NAPoly:
    # z(xy) = l (zx)y + lp (zy)x, read modulo commutativity
    z, (x, y) = w
    out = NAPoly((), QQ, MINI_VARS)
    out._add_term(_comm_nf(((z, x), y)), lam)
    out._add_term(_comm_nf(((z, y), x)), lamp)
    return out


def mini_system(case: str = "commutative") -> list[ParamPoly]:
    """Constraints on ``l, lp`` forced in the commutative case.

    ``b(xy) = b(yx)`` gives ``l - lp``; then, with ``lp = l``, rewriting
    ``(bx)y = y(bx)`` twice gives ``(l^2 - 1)(bx)y + (l^2 + l)(by)x = 0``.
    """
    if case.lower() != "commutative":
        raise ValueError(f"unknown mini system {case!r}")
    lam = ParamPoly.var("l", QQ, MINI_VARS)
    lamp = ParamPoly.var("lp", QQ, MINI_VARS)
    bx_y, by_x = word_parse("(bx)y"), word_parse("(by)x")

    sym = _comm_expand(word_parse("b(xy)"), lam, lamp) - _comm_expand(word_parse("b(yx)"), lam, lamp)
    first = extract(sym, [_comm_nf(bx_y), _comm_nf(by_x)])[0]

    # (bx)y = y(bx) = l (yb)x + l (yx)b, then expand b(xy) inside again
    step = _comm_expand(word_parse("y(bx)"), lam, lam)
    bxy = _comm_nf(word_parse("b(xy)"))
    c = step.coefficient(bxy)
    rest = NAPoly([(w, v) for w, v in step.items() if w != bxy], QQ, MINI_VARS)
    total = rest + _comm_expand(bxy, lam, lam).scale(c) - NAPoly({_comm_nf(bx_y): 1}, QQ, MINI_VARS)
    second, third = extract(total, [_comm_nf(bx_y), _comm_nf(by_x)])
    return [first, second, third]
