"""Buchberger's algorithm over GF(p) and Q, with optional cofactor tracking.

Inside the engine a monomial is a single Python int::

    M = (order_key << KSHIFT) | exponents

The low part packs one 17-bit field per variable (16 value bits plus a guard
bit), the high part packs the digits of a linear order key, so

* ``M1 * M2`` is ``M1 + M2`` and ``M1 / M2`` is ``M1 - M2``,
* comparing ints compares monomials in the chosen order,
* divisibility is one subtract-and-mask on the low part.

For degrevlex the key digits are ``(deg, s_{n-1}, ..., s_1)`` with ``s_k`` the
sum of the first ``k`` exponents in precedence order; lexicographic
comparison of these partial sums is exactly degree-reverse-lex, and the map
is linear in the exponents, which is what makes ``M1 + M2`` work.

Polynomials over GF(p) are kept monic with int residues; over Q they are kept
primitive with integer coefficients (fraction-free reduction).
"""

from __future__ import annotations

import heapq
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .coeff import QQ, FieldMismatch, FieldSpec
from .cpoly import (DEGREVLEX, EXPONENT_CAP, ExponentOverflow, LengthMismatch, MonomialOrder,
                    OrderKind, ParamPoly, mono_div, mono_divides, mono_lcm, mono_mul)

EW = 17          # exponent field width, top bit is the guard
KW = 21          # order-key digit width; 16 * (2**16 - 1) < 2**20
CHECK_EVERY = 4096


class BudgetExceeded(RuntimeError):
    def __init__(self, msg: str, stats: dict):
        super().__init__(msg)
        self.stats = stats


@dataclass
class Budget:
    seconds: float | None = None
    pairs: int | None = None


@dataclass
class Ideal:
    generators: list[ParamPoly]
    field: FieldSpec = QQ
    order: MonomialOrder = DEGREVLEX

    def __post_init__(self):
        gens = [g for g in self.generators if g]
        for g in gens:
            if g.field != self.field:
                raise FieldMismatch(f"generator over {g.field}, ideal over {self.field}")
            if g.varnames != gens[0].varnames:
                raise FieldMismatch("generators use different variable lists")
        self.generators = list(self.generators)

    @property
    def varnames(self) -> tuple[str, ...]:
        return self.generators[0].varnames


@dataclass
class CofactorCertificate:
    """``sum(c_i * g_i) == target``.

    Over Q ``cleared_integer`` is an ``m`` with every ``m * c_i`` integral,
    so ``m = sum((m c_i) g_i)`` holds with integer-coefficient cofactors.
    """

    cofactors: list[ParamPoly]
    target: ParamPoly
    cleared_integer: int | None = None


@dataclass
class Derivation:
    """Straight-line proof that ``target`` lies in the ideal.

    ``steps[k] = (poly, terms)`` claims ``poly == sum(coef * x^shift * source)``
    over ``terms = [(coef, shift, src)]``, where ``src < 0`` is generator
    ``~src`` and ``src >= 0`` is the earlier step ``src``; the last step is
    the target.  Far smaller than expanded cofactors, which for the full
    system run to many millions of terms.
    """

    steps: list[tuple[ParamPoly, list[tuple[object, tuple, int]]]]
    target: ParamPoly


@dataclass
class GroebnerBasis:
    elements: list[ParamPoly]
    order: MonomialOrder
    field: FieldSpec
    stats: dict = field(default_factory=dict)
    certificate: CofactorCertificate | None = None
    cofactors: list[list[ParamPoly]] | None = None
    derivation: Derivation | None = None

    @property
    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant() and bool(self.elements[0])

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


# ---------------------------------------------------------------------------
# packed monomials


class _Codec:
    def __init__(self, n: int, order: MonomialOrder):
        self.n = n
        self.order = order
        self.prec = order.prec(n)
        self.kind = order.kind
        self.ndig = n + 1 if order.kind is OrderKind.DEGLEX else n
        self.kshift = n * EW
        self.guard = sum(1 << (EW * i + EW - 1) for i in range(n))
        self.emask = (1 << self.kshift) - 1

    def digits(self, e) -> list[int]:
        p = self.prec
        if self.kind is OrderKind.LEX:
            return [e[i] for i in p]
        if self.kind is OrderKind.DEGLEX:
            return [sum(e)] + [e[i] for i in p]
        sums, s = [], 0
        for i in p[:-1]:
            s += e[i]
            sums.append(s)
        return [sum(e)] + sums[::-1]

    def encode(self, e) -> int:
        k = 0
        for d in self.digits(e):
            k = (k << KW) | d
        x = 0
        for i in reversed(range(self.n)):
            x = (x << EW) | e[i]
        return (k << self.kshift) | x

    def decode(self, m: int) -> tuple[int, ...]:
        x = m & self.emask
        mask = (1 << EW) - 1
        return tuple((x >> (EW * i)) & mask for i in range(self.n))

    def divides(self, a: int, b: int) -> bool:
        g = self.guard
        return ((b & self.emask | g) - (a & self.emask)) & g == g


class _Elt:
    """Basis element: terms sorted by decreasing monomial, leading term first.

    ``trace`` (cofactor mode only) lists ``(coef, shift, src)`` with
    ``element = sum(coef * x^shift * source)``; ``src >= 0`` names an earlier
    element, ``src < 0`` the generator ``~src``.
    """

    __slots__ = ("idx", "terms", "lm", "lme", "lmt", "lc", "deg", "trace", "sugar")

    def __init__(self, idx, terms, codec: _Codec, trace=None):
        self.idx = idx
        self.terms = terms
        self.lm, self.lc = terms[0]
        self.lme = self.lm & codec.emask
        self.lmt = codec.decode(self.lm)
        self.deg = sum(self.lmt)
        self.trace = trace
        self.sugar = self.deg


# ---------------------------------------------------------------------------
# the engine


class _Engine:
    def __init__(self, ideal: Ideal, strategy: str, track: bool, budget: Budget | None):
        if not ideal.generators:
            raise ValueError("an ideal needs at least one generator")
        self.field = ideal.field
        self.P = ideal.field.modulus
        self.order = ideal.order
        self.varnames = ideal.varnames
        self.codec = _Codec(len(self.varnames), ideal.order)
        if strategy not in ("normal", "fifo", "sugar"):
            raise ValueError(f"unknown strategy {strategy!r}")
        self.strategy = strategy
        self.track = track
        self.budget = budget or Budget()
        self.ngens = len(ideal.generators)
        self.gens = ideal.generators
        self.elts: list[_Elt] = []
        self.active: list[int] = []
        self.pairs: list = []           # heap of (key, serial, i, j)
        self.live: set[tuple[int, int]] = set()
        self.serial = 0
        self.unit: _Elt | None = None
        self.t0 = time.monotonic()
        self.steps = 0
        self.stats = {
            "pairs_created": 0, "pairs_processed": 0, "skipped_coprime": 0,
            "skipped_chain": 0, "skipped_duplicate_lcm": 0, "reductions_to_zero": 0,
            "basis_max": 0, "elapsed_seconds": 0.0,
        }

    # budget ------------------------------------------------------------

    def _check_budget(self):
        b = self.budget
        if b.seconds is not None and time.monotonic() - self.t0 >= b.seconds:
            self._fail(f"time budget of {b.seconds}s exhausted")
        if b.pairs is not None and self.stats["pairs_processed"] > b.pairs:
            self._fail(f"pair budget of {b.pairs} exhausted")

    def _fail(self, msg):
        self.stats["elapsed_seconds"] = round(time.monotonic() - self.t0, 3)
        self.stats["basis_size"] = len(self.active)
        raise BudgetExceeded(msg, dict(self.stats))

    # conversions -------------------------------------------------------

    def _from_poly(self, p: ParamPoly) -> tuple[dict[int, int], int]:
        """Packed form and the integer the polynomial was multiplied by."""
        enc = self.codec.encode
        if self.P:
            return {enc(e): c for e, c in p.items()}, 1
        den = 1
        for c in p._terms.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
        return {enc(e): int(c * den) for e, c in p.items()}, den

    def _to_poly(self, terms) -> ParamPoly:
        dec = self.codec.decode
        if self.P:
            return ParamPoly({dec(m): c for m, c in terms}, self.field, self.varnames)
        return ParamPoly({dec(m): Fraction(c) for m, c in terms}, self.field, self.varnames)

    # reduction ---------------------------------------------------------

    def _find_reducer(self, m: int) -> _Elt | None:
        g = self.codec.guard
        x = (m & self.codec.emask) | g
        elts = self.elts
        for i in self.active:
            e = elts[i]
            if (x - e.lme) & g == g:
                return e
        return None

    def _reduce(self, poly: dict[int, int], trace):
        """Full reduction against the active basis, consuming ``poly``.

        Returns ``(terms, trace)``.  Over Q the reduction is fraction free:
        the result is ``mult * poly - sum(c_k x^s_k r_k)`` for an integer
        ``mult`` accumulated along the way, and the trace accounts for it.
        """
        P = self.P
        guard = self.codec.guard
        heap = [-m for m in poly]
        heapq.heapify(heap)
        out: list[list] = []
        mult = 1
        steps = [] if trace is not None else None
        while heap:
            m = -heapq.heappop(heap)
            c = poly.pop(m, 0)
            if not c:
                continue
            self.steps += 1
            if self.steps % CHECK_EVERY == 0:
                self._check_budget()
            r = self._find_reducer(m)
            if r is None:
                out.append([m, c])
                continue
            shift = m - r.lm
            if P:
                # basis elements are monic
                for t, a in r.terms[1:]:
                    k = t + shift
                    if k & guard:
                        raise ExponentOverflow(f"exponent above {EXPONENT_CAP}")
                    old = poly.get(k)
                    if old is None:
                        poly[k] = -c * a % P
                        heapq.heappush(heap, -k)
                    else:
                        v = (old - c * a) % P
                        if v:
                            poly[k] = v
                        else:
                            del poly[k]
                if steps is not None:
                    steps.append((-c % P, shift, r.idx, 1))
            else:
                lc = r.lc
                g = math.gcd(lc, c)
                a_mul, c_mul = lc // g, c // g
                if a_mul != 1:
                    for k in poly:
                        poly[k] *= a_mul
                    for term in out:
                        term[1] *= a_mul
                    mult *= a_mul
                for t, a in r.terms[1:]:
                    k = t + shift
                    if k & guard:
                        raise ExponentOverflow(f"exponent above {EXPONENT_CAP}")
                    old = poly.get(k)
                    if old is None:
                        poly[k] = -c_mul * a
                        heapq.heappush(heap, -k)
                    else:
                        v = old - c_mul * a
                        if v:
                            poly[k] = v
                        else:
                            del poly[k]
                if steps is not None:
                    steps.append((-c_mul, shift, r.idx, mult))
        if trace is not None:
            trace = [(c * mult, s, src) for c, s, src in trace]
            trace += [(c * (mult // at), s, src) for c, s, src, at in steps]
        return out, trace

    def _normalize(self, terms: list, trace):
        """Monic over GF(p); primitive with positive leading coefficient over Q."""
        P = self.P
        if P:
            lc = terms[0][1]
            if lc == 1:
                return [(m, c) for m, c in terms], trace
            inv = pow(lc, -1, P)
            if trace is not None:
                trace = [(c * inv % P, s, src) for c, s, src in trace]
            return [(m, c * inv % P) for m, c in terms], trace
        g = 0
        for _, c in terms:
            g = math.gcd(g, c)
            if g == 1:
                break
        if terms[0][1] < 0:
            g = -g
        if trace is not None and g != 1:
            trace = [(Fraction(c, g), s, src) for c, s, src in trace]
        return [(m, c // g) for m, c in terms], trace

    # pair bookkeeping --------------------------------------------------

    def _lcm_tuple(self, i, j):
        return mono_lcm(self.elts[i].lmt, self.elts[j].lmt)

    def _push_pair(self, i, j, lcm_t):
        key = self._pair_key(i, j, lcm_t)
        self.serial += 1
        heapq.heappush(self.pairs, (key, self.serial, i, j))
        self.live.add((i, j))
        self.stats["pairs_created"] += 1

    def _pair_key(self, i, j, lcm_t):
        if self.strategy == "fifo":
            return (0,)
        if self.strategy == "sugar":
            a, b = self.elts[i], self.elts[j]
            d = sum(lcm_t)
            return (max(a.sugar - a.deg, b.sugar - b.deg) + d, self.codec.encode(lcm_t))
        return (sum(lcm_t),)

    def _update(self, h: _Elt):
        """Gebauer-Moeller installation of ``h`` with the product and chain criteria."""
        elts = self.elts
        t = h.idx
        hl = h.lmt
        cand = []
        for i in self.active:
            lt = mono_lcm(elts[i].lmt, hl)
            cand.append((i, lt, _coprime(elts[i].lmt, hl)))

        # chain criterion among the new pairs: drop (i,t) when another new
        # lcm strictly divides its lcm
        kept = []
        for a, (i, lt, cp) in enumerate(cand):
            dominated = False
            for b, (j, lt2, _) in enumerate(cand):
                if a != b and lt2 != lt and mono_divides(lt2, lt):
                    dominated = True
                    break
            if dominated:
                self.stats["skipped_chain"] += 1
            else:
                kept.append((i, lt, cp))
        # equal lcms: keep one; if any of them is coprime the whole group goes
        by_lcm: dict[tuple, list] = {}
        for i, lt, cp in kept:
            by_lcm.setdefault(lt, []).append((i, cp))
        new_pairs = []
        for lt, group in by_lcm.items():
            self.stats["skipped_duplicate_lcm"] += len(group) - 1
            if any(cp for _, cp in group):
                self.stats["skipped_coprime"] += 1
                continue
            new_pairs.append((group[0][0], lt))

        # old pairs made redundant by h
        dead = []
        for (i, j) in self.live:
            lij = self._lcm_tuple(i, j)
            if mono_divides(hl, lij) and mono_lcm(elts[i].lmt, hl) != lij \
                    and mono_lcm(elts[j].lmt, hl) != lij:
                dead.append((i, j))
        for d in dead:
            self.live.discard(d)
        self.stats["skipped_chain"] += len(dead)

        # h makes basis elements with divisible leading monomials redundant
        self.active = [i for i in self.active if not mono_divides(hl, elts[i].lmt)]
        self.active.append(t)
        self.active.sort(key=lambda i: elts[i].lm)
        for i, lt in new_pairs:
            self._push_pair(i, t, lt)
        self.stats["basis_max"] = max(self.stats["basis_max"], len(self.active))

    def _add(self, terms, trace, sugar):
        e = _Elt(len(self.elts), terms, self.codec, trace)
        e.sugar = max(sugar, e.deg)
        self.elts.append(e)
        if len(terms) == 1 and terms[0][0] == 0:
            self.unit = e
            return e
        self._update(e)
        return e

    # main loop ---------------------------------------------------------

    def _spoly(self, i, j):
        a, b = self.elts[i], self.elts[j]
        lcm_t = mono_lcm(a.lmt, b.lmt)
        lcm_m = self.codec.encode(lcm_t)
        sa, sb = lcm_m - a.lm, lcm_m - b.lm
        P = self.P
        poly: dict[int, int] = {}
        if P:
            fa, fb = 1, 1
        else:
            g = math.gcd(a.lc, b.lc)
            fa, fb = b.lc // g, a.lc // g
        for t, c in a.terms[1:]:
            poly[t + sa] = c * fa % P if P else c * fa
        for t, c in b.terms[1:]:
            k = t + sb
            v = poly.get(k, 0) - c * fb
            if P:
                v %= P
            if v:
                poly[k] = v
            else:
                poly.pop(k, None)
        trace = [(fa, sa, i), (-fb % P if P else -fb, sb, j)] if self.track else None
        sugar = max(a.sugar - a.deg, b.sugar - b.deg) + sum(lcm_t)
        return poly, trace, sugar

    def run(self):
        self._check_budget()
        gens = []
        for k, g in enumerate(self.gens):
            if not g:
                continue
            poly, den = self._from_poly(g)
            trace = [(den, 0, ~k)] if self.track else None
            gens.append((max(poly), poly, trace, g.total_degree()))
        gens.sort(key=lambda x: x[0])
        for _, poly, trace, deg in gens:
            terms, trace = self._reduce(poly, trace)
            if terms:
                terms, trace = self._normalize(terms, trace)
                self._add(terms, trace, deg)
                if self.unit:
                    return
        while self.pairs:
            _, _, i, j = heapq.heappop(self.pairs)
            if (i, j) not in self.live:
                continue
            self.live.discard((i, j))
            self.stats["pairs_processed"] += 1
            self._check_budget()
            poly, trace, sugar = self._spoly(i, j)
            terms, trace = self._reduce(poly, trace)
            if not terms:
                self.stats["reductions_to_zero"] += 1
                continue
            terms, trace = self._normalize(terms, trace)
            self._add(terms, trace, sugar)
            if self.unit:
                return

    def reduced_basis(self) -> list[_Elt]:
        """Interreduce the minimal basis (tails fully reduced, normalized)."""
        if self.unit:
            return [self.unit]
        elts = self.elts
        minimal = sorted(self.active, key=lambda i: elts[i].lm)
        out = []
        saved = self.active
        for i in minimal:
            e = elts[i]
            self.active = [k for k in minimal if k != i]
            trace = [(1, 0, i)] if self.track else None
            terms, trace = self._reduce({m: c for m, c in e.terms}, trace)
            terms, trace = self._normalize(terms, trace)
            r = _Elt(len(elts), terms, self.codec, trace)
            elts.append(r)
            out.append(r)
        self.active = saved
        return out

    def cofactors(self, e: _Elt, max_terms: int | None = None) -> list[dict[int, object]]:
        """Expand ``e`` in the generators by walking its trace backwards.

        Raises :class:`CofactorsTooLarge` once more than ``max_terms``
        monomials are held at the same time.
        """
        P = self.P
        pending: dict[int, dict] = {e.idx: {0: 1}}
        heap = [-e.idx]
        out: list[dict] = [dict() for _ in range(self.ngens)]
        held = 1
        while heap:
            i = -heapq.heappop(heap)
            mult = pending.pop(i)
            held -= len(mult)
            for coef, shift, src in self.elts[i].trace:
                if src < 0:
                    tgt = out[~src]
                else:
                    tgt = pending.get(src)
                    if tgt is None:
                        tgt = pending[src] = {}
                        heapq.heappush(heap, -src)
                before = len(tgt)
                for m, a in mult.items():
                    k = m + shift
                    v = tgt.get(k, 0) + a * coef
                    if P:
                        v %= P
                    if v:
                        tgt[k] = v
                    else:
                        tgt.pop(k, None)
                held += len(tgt) - before
                if max_terms is not None and held > max_terms:
                    raise CofactorsTooLarge(f"more than {max_terms} cofactor terms")
        return out

    def derivation(self, e: _Elt) -> Derivation:
        """The ancestors of ``e`` as a replayable straight-line program."""
        need, stack = set(), [e.idx]
        while stack:
            i = stack.pop()
            if i in need:
                continue
            need.add(i)
            stack.extend(src for _, _, src in self.elts[i].trace if src >= 0)
        order = sorted(need)
        pos = {i: k for k, i in enumerate(order)}
        dec = self.codec.decode
        steps = []
        for i in order:
            el = self.elts[i]
            terms = [(coef, dec(shift), pos[src] if src >= 0 else src) for coef, shift, src in el.trace]
            steps.append((self._to_poly(el.terms), terms))
        return Derivation(steps, steps[-1][0])


class CofactorsTooLarge(MemoryError):
    pass


def _coprime(a, b) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# public API


def buchberger(ideal: Ideal, strategy: str = "normal", cofactors: bool = False,
               budget: Budget | None = None, max_cofactor_terms: int | None = 2_000_000) -> GroebnerBasis:
    """Reduced Groebner basis of ``ideal`` under ``ideal.order``.

    Stops as soon as a nonzero constant appears (the basis is then ``[1]``).
    With ``cofactors`` every step is recorded.  Each basis element is then
    expanded in the generators (``gb.cofactors``) and, for the unit ideal, a
    :class:`CofactorCertificate` is attached.  When the expansion would hold
    more than ``max_cofactor_terms`` monomials it is abandoned, and only the
    replayable :class:`Derivation` of the unit element remains.
    """
    eng = _Engine(ideal, strategy, cofactors, budget)
    eng.run()
    red = eng.reduced_basis()
    elements = [eng._to_poly(e.terms) for e in red]
    lcs = [p.leading_coefficient(ideal.order) for p in elements]
    if not eng.P:
        elements = [p.scale(1 / lc) for p, lc in zip(elements, lcs)]
    stats = dict(eng.stats)
    stats["elapsed_seconds"] = round(time.monotonic() - eng.t0, 3)
    stats["basis_size"] = len(elements)
    stats["strategy"] = strategy
    gb = GroebnerBasis(elements, ideal.order, ideal.field, stats)
    if cofactors:
        if eng.unit is not None:
            gb.derivation = eng.derivation(eng.unit)
        try:
            rows = []
            for e, lc in zip(red, lcs):
                inv = ideal.field.inv(ideal.field(lc))
                rows.append([c.scale(inv) for c in _cofactor_polys(eng, e, max_cofactor_terms)])
            gb.cofactors = rows
            if eng.unit is not None:
                gb.certificate = _certificate(eng, rows[0])
            stats["cofactors"] = "expanded"
        except CofactorsTooLarge as exc:
            stats["cofactors"] = f"not expanded: {exc}"
        stats["cofactor_seconds"] = round(time.monotonic() - eng.t0 - stats["elapsed_seconds"], 3)
    return gb


def _cofactor_polys(eng: _Engine, e: _Elt, max_terms=None) -> list[ParamPoly]:
    dec = eng.codec.decode
    out = []
    for terms in eng.cofactors(e, max_terms):
        out.append(ParamPoly({dec(m): c for m, c in terms.items()}, eng.field, eng.varnames))
    return out


def _certificate(eng: _Engine, cofs: list[ParamPoly]) -> CofactorCertificate:
    one = ParamPoly.one(eng.field, eng.varnames)
    if eng.P:
        return CofactorCertificate(cofs, one)
    m = 1
    for c in cofs:
        for v in c._terms.values():
            m = m * v.denominator // math.gcd(m, v.denominator)
    return CofactorCertificate(cofs, one, m)


def contains_one(ideal: Ideal, strategy: str = "normal", cofactors: bool = False,
                 budget: Budget | None = None) -> tuple[str, GroebnerBasis]:
    """``("UnitIdeal", gb)`` when the reduced basis is ``[1]``, else ``("ProperIdeal", gb)``."""
    gb = buchberger(ideal, strategy, cofactors, budget)
    return ("UnitIdeal" if gb.is_unit else "ProperIdeal"), gb


def verify_certificate(cert: CofactorCertificate, generators: Sequence[ParamPoly]) -> bool:
    """Recompute ``sum(c_i g_i)`` by plain polynomial arithmetic."""
    if len(cert.cofactors) != len(generators):
        raise LengthMismatch(f"{len(cert.cofactors)} cofactors for {len(generators)} generators")
    if not generators:
        return False
    total = ParamPoly.zero(generators[0].field, generators[0].varnames)
    for c, g in zip(cert.cofactors, generators):
        if c:
            total = total + c * g
    if total != cert.target:
        return False
    if cert.cleared_integer is not None:
        m = cert.cleared_integer
        if m <= 0:
            return False
        # m * 1 = sum((m * c_i) * g_i) with every m * c_i integral
        if any(getattr(v * m, "denominator", 1) != 1 for c in cert.cofactors for v in c._terms.values()):
            return False
    return True


def verify_derivation(der: Derivation, generators: Sequence[ParamPoly]) -> bool:
    """Replay every step with plain polynomial arithmetic.

    True when each step equals its claimed combination and the last step is
    the target, which then lies in the ideal of ``generators``.
    """
    if not der.steps or not generators:
        return False
    f = generators[0].field
    names = generators[0].varnames
    done: list[ParamPoly] = []
    for poly, terms in der.steps:
        acc: dict = {}
        for coef, shift, src in terms:
            if src < 0:
                if ~src >= len(generators):
                    return False
                base = generators[~src]
            elif src < len(done):
                base = done[src]
            else:
                return False
            c = f(coef)
            for e, a in base.items():
                k = mono_mul(e, shift)
                v = f.add(acc.get(k, f.zero), f.mul(c, a))
                if v:
                    acc[k] = v
                else:
                    acc.pop(k, None)
        if ParamPoly(acc, f, names) != poly:
            return False
        done.append(poly)
    return done[-1] == der.target


# ---------------------------------------------------------------------------
# plain division, independent of the packed engine


def reduce(p: ParamPoly, basis: Sequence[ParamPoly], order: MonomialOrder = DEGREVLEX
           ) -> tuple[ParamPoly, list[ParamPoly]]:
    """Multivariate division: ``p = sum(q_i * b_i) + r`` with ``r`` fully reduced."""
    for b in basis:
        p._check(b)
        if not b:
            raise ValueError("cannot divide by the zero polynomial")
    f = p.field
    lead = [(b.leading_monomial(order), b.leading_coefficient(order)) for b in basis]
    quot: list[dict] = [dict() for _ in basis]
    rem: dict = {}
    work = dict(p._terms)
    while work:
        m = max(work, key=order.key)
        c = work[m]
        for k, (lm, lc) in enumerate(lead):
            if mono_divides(lm, m):
                q = f.div(c, lc)
                s = mono_div(m, lm)
                quot[k][s] = f.add(quot[k].get(s, f.zero), q)
                for e, a in basis[k].items():
                    key = mono_mul(e, s)
                    v = f.sub(work.get(key, f.zero), f.mul(q, a))
                    if v:
                        work[key] = v
                    else:
                        work.pop(key, None)
                break
        else:
            rem[m] = c
            del work[m]
    return (ParamPoly(rem, f, p.varnames),
            [ParamPoly(q, f, p.varnames) for q in quot])


def s_polynomial(f: ParamPoly, g: ParamPoly, order: MonomialOrder = DEGREVLEX) -> ParamPoly:
    a, b = f.leading_monomial(order), g.leading_monomial(order)
    lcm = mono_lcm(a, b)
    fa = f.mul_term(mono_div(lcm, a), f.field.inv(f.leading_coefficient(order)))
    gb = g.mul_term(mono_div(lcm, b), g.field.inv(g.leading_coefficient(order)))
    return fa - gb


def is_groebner(basis: Sequence[ParamPoly], order: MonomialOrder = DEGREVLEX) -> bool:
    """Every S-polynomial reduces to zero modulo ``basis``."""
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            r, _ = reduce(s_polynomial(basis[i], basis[j], order), basis, order)
            if r:
                return False
    return True


def is_reduced(basis: Sequence[ParamPoly], order: MonomialOrder = DEGREVLEX) -> bool:
    """Monic, and no term of any element divisible by another element's leading monomial."""
    lms = [b.leading_monomial(order) for b in basis]
    for i, b in enumerate(basis):
        if b.leading_coefficient(order) != b.field.one:
            return False
        for e in b._terms:
            for j, lm in enumerate(lms):
                if j != i and mono_divides(lm, e):
                    return False
    return True
