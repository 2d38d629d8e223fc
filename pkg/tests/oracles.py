"""Independent reference implementations used only by the tests.

Nothing here imports the engine code paths under test: polynomials are
plain ``{exponent tuple: Fraction}`` dicts, and Groebner bases come from
sympy.
"""

from fractions import Fraction
from itertools import product

import sympy

from lacc.coeff import QQ
from lacc.cpoly import ParamPoly


def dict_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for (ea, ca), (eb, cb) in product(a.items(), b.items()):
        e = tuple(x + y for x, y in zip(ea, eb))
        out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def dict_eval(a: dict, point: list) -> Fraction:
    total = Fraction(0)
    for e, c in a.items():
        t = Fraction(c)
        for x, k in zip(point, e):
            t *= Fraction(x) ** k
        total += t
    return total


SYMPY_ORDER = {"lp": "lex", "Dp": "grlex", "dp": "grevlex"}


def sympy_basis(gens: list[ParamPoly], order_name: str) -> set[ParamPoly]:
    """Reduced monic Groebner basis from sympy, converted back to ParamPoly."""
    f = gens[0].field
    names = gens[0].varnames
    syms = sympy.symbols(" ".join(f"v{i}" for i in range(len(names))))
    if len(names) == 1:
        syms = (syms,)
    exprs = []
    for g in gens:
        exprs.append(sum(sympy.Rational(int(Fraction(c).numerator), int(Fraction(c).denominator))
                         * sympy.prod([s ** k for s, k in zip(syms, e)])
                         for e, c in g.items()))
    kw = {"modulus": f.modulus} if f.modulus else {"domain": "QQ"}
    gb = sympy.groebner(exprs, *syms, order=SYMPY_ORDER[order_name], **kw)
    out = set()
    for p in gb.exprs:
        poly = sympy.Poly(p, *syms, **({"modulus": f.modulus} if f.modulus else {"domain": "QQ"}))
        terms = {}
        for mon, c in poly.terms():
            if f.modulus:
                terms[mon] = int(c) % f.modulus
            else:
                terms[mon] = Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1]))
        pp = ParamPoly(terms, f, names)
        out.add(pp.monic(_order(order_name)))
    return out


def _order(name):
    from lacc.cpoly import parse_order
    return parse_order(name)


def to_dict(p: ParamPoly) -> dict:
    return {e: Fraction(c) for e, c in p.items()}


def from_dict(d: dict, names) -> ParamPoly:
    return ParamPoly(d, QQ, names)
