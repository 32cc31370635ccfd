"""Buchberger's algorithm over the rationals.

Pairs are processed by the normal strategy (smallest lcm degree first, ties by
generator index) and pruned with Buchberger's coprime and chain criteria.  A
budget on the number of S-pair reductions turns runaway computations into a
:class:`BudgetExceeded` error.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import BudgetExceeded, UsageError
from .poly import (
    GREVLEX,
    MonomialOrder,
    Polynomial,
    format_polynomial,
    mono_div,
    mono_divides,
    mono_lcm,
    parse,
    parse_order,
)

DEFAULT_BUDGET = 10**6


@dataclass(frozen=True)
class Ideal:
    generators: tuple[Polynomial, ...]
    order: MonomialOrder = GREVLEX

    def __post_init__(self):
        gens = tuple(g for g in self.generators if not g.is_zero())
        if gens:
            vt = gens[0].vt
            if any(g.vt != vt for g in gens):
                raise UsageError("ideal generators must share one variable table")
        object.__setattr__(self, "generators", gens)

    @property
    def vt(self):
        return self.generators[0].vt if self.generators else None


@dataclass(frozen=True)
class GroebnerBasis:
    elements: tuple[Polynomial, ...]
    order: MonomialOrder
    reduced: bool = True
    stats: dict = field(default_factory=dict, compare=False)

    def normal_form(self, p: Polynomial) -> Polynomial:
        return normal_form(p, self.elements, self.order)

    def contains(self, p: Polynomial) -> bool:
        return normal_form(p, self.elements, self.order).is_zero()

    def leading_monomials(self):
        return [g.leading_monomial(self.order) for g in self.elements]

    def to_json(self) -> dict:
        return {
            "order": self.order.describe(),
            "basis": [format_polynomial(g, self.order) for g in self.elements],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def from_json(cls, data: dict, vt) -> "GroebnerBasis":
        order = parse_order(data["order"])
        return cls(tuple(parse(t, vt) for t in data["basis"]), order)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
    if f.is_zero() or g.is_zero():
        raise UsageError("S-polynomial of the zero polynomial is undefined")
    mf, cf = f.leading_term(order)
    mg, cg = g.leading_term(order)
    lcm = mono_lcm(mf, mg)
    return f.mul_term(mono_div(lcm, mf), 1 / cf) - g.mul_term(mono_div(lcm, mg), 1 / cg)


def normal_form(p: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> Polynomial:
    """Full multivariate division remainder of ``p`` by ``basis``.

    The current leading term is reduced by the first basis element (in list
    order) whose leading term divides it; irreducible terms move to the
    remainder.
    """
    return _divide(p, basis, order, track=False)[1]


def divide(p: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder = GREVLEX):
    """Quotients and remainder: ``p == sum(q_i * basis[i]) + r``."""
    return _divide(p, basis, order, track=True)


def _divide(p, basis, order, track):
    vt = p.vt
    key = order.key(vt)
    divisors = []
    for b in basis:
        if b.is_zero():
            raise UsageError("cannot divide by the zero polynomial")
        if b.vt != vt:
            raise UsageError("basis and polynomial live over different tables")
        m, c = b.leading_term(order)
        tail = [(bm, bc) for bm, bc in b.items() if bm != m]
        divisors.append((m, c, tail))
    quotients = [{} for _ in basis] if track else None

    work = dict(p.items())
    heap = [(_Desc(key(m)), m) for m in work]
    heapq.heapify(heap)
    remainder = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = work.pop(m, None)
        if c is None:
            continue
        for k, (lm, lc, tail) in enumerate(divisors):
            if mono_divides(lm, m):
                q = mono_div(m, lm)
                f = c / lc
                if track:
                    quotients[k][q] = quotients[k].get(q, 0) + f
                for bm, bc in tail:
                    nm = tuple(a + b for a, b in zip(bm, q))
                    old = work.get(nm)
                    if old is None:
                        work[nm] = -f * bc
                        heapq.heappush(heap, (_Desc(key(nm)), nm))
                    else:
                        s = old - f * bc
                        if s:
                            work[nm] = s
                        else:
                            del work[nm]
                break
        else:
            remainder[m] = c
    rem = Polynomial._raw(vt, remainder)
    if not track:
        return None, rem
    return [Polynomial(vt, q) for q in quotients], rem


class _Desc:
    """Inverts comparison so heapq pops the largest key first."""

    __slots__ = ("k",)

    def __init__(self, k):
        self.k = k

    def __lt__(self, other):
        return self.k > other.k

    def __eq__(self, other):
        return self.k == other.k


def _minimalize(basis, order):
    keep = []
    lms = [g.leading_monomial(order) for g in basis]
    for i, g in enumerate(basis):
        redundant = False
        for j in range(len(basis)):
            if j == i:
                continue
            if mono_divides(lms[j], lms[i]) and (lms[j] != lms[i] or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(g)
    return keep


def _interreduce(basis, order):
    out = []
    for i, g in enumerate(basis):
        others = basis[:i] + basis[i + 1:]
        lm, lc = g.leading_term(order)
        tail = Polynomial._raw(g.vt, {m: c for m, c in g.items() if m != lm})
        r = normal_form(tail, others, order) if others else tail
        out.append((Polynomial.monomial(g.vt, lm, lc) + r).monic(order))
    return out


def buchberger(ideal: Ideal, budget: int = DEFAULT_BUDGET, reduce: bool = True) -> GroebnerBasis:
    """Groebner basis of ``ideal`` (reduced unless ``reduce`` is False).

    With ``reduce=False`` the result is a minimal monic basis whose elements are
    the monic input generators plus whatever S-pair remainders were needed.
    """
    order = ideal.order
    if not ideal.generators:
        return GroebnerBasis((), order, reduce, {"pairs_reduced": 0})
    key = order.key(ideal.vt)
    basis = [g.monic(order) for g in ideal.generators]
    lms = [g.leading_monomial(order) for g in basis]
    pending: set = set()
    stats = {"pairs_reduced": 0, "criterion1": 0, "criterion2": 0, "zero_reductions": 0}

    def add_pairs(j):
        for i in range(j):
            pending.add((i, j))

    for j in range(len(basis)):
        add_pairs(j)

    def select():
        return min(pending, key=lambda ij: (sum(mono_lcm(lms[ij[0]], lms[ij[1]])), ij[1], ij[0]))

    def chain_criterion(i, j, lcm):
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if (min(i, k), max(i, k)) in pending or (min(j, k), max(j, k)) in pending:
                continue
            if mono_divides(lms[k], lcm):
                return True
        return False

    while pending:
        i, j = select()
        pending.discard((i, j))
        lcm = mono_lcm(lms[i], lms[j])
        if all(a == 0 or b == 0 for a, b in zip(lms[i], lms[j])):
            stats["criterion1"] += 1
            continue
        if chain_criterion(i, j, lcm):
            stats["criterion2"] += 1
            continue
        if stats["pairs_reduced"] >= budget:
            stats["basis_size"] = len(basis)
            stats["pending_pairs"] = len(pending) + 1
            raise BudgetExceeded(
                f"pair-reduction budget of {budget} exhausted with {len(basis)} basis elements",
                stats,
            )
        stats["pairs_reduced"] += 1
        h = normal_form(s_polynomial(basis[i], basis[j], order), basis, order)
        if h.is_zero():
            stats["zero_reductions"] += 1
            continue
        basis.append(h.monic(order))
        lms.append(basis[-1].leading_monomial(order))
        add_pairs(len(basis) - 1)

    basis = _minimalize(basis, order)
    if reduce:
        basis = _interreduce(basis, order)
    basis.sort(key=lambda g: key(g.leading_monomial(order)), reverse=True)
    stats["basis_size"] = len(basis)
    return GroebnerBasis(tuple(basis), order, reduce, stats)


def is_groebner_basis(elements: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    elements = list(elements)
    for i in range(len(elements)):
        for j in range(i + 1, len(elements)):
            s = s_polynomial(elements[i], elements[j], order)
            if not normal_form(s, elements, order).is_zero():
                return False
    return True


def ideal_membership(p: Polynomial, ideal: Ideal, budget: int = DEFAULT_BUDGET) -> bool:
    if not ideal.generators:
        return p.is_zero()
    return buchberger(ideal, budget).contains(p)


def elimination_ideal(ideal: Ideal, keep: Iterable[str], budget: int = DEFAULT_BUDGET) -> list[Polynomial]:
    """Reduced-basis elements that only involve ``keep``.

    The ideal's order must eliminate every variable outside ``keep`` (see
    :meth:`MonomialOrder.elimination`).
    """
    if not ideal.generators:
        return []
    vt = ideal.vt
    keep = set(keep)
    for nm in keep:
        vt.index(nm)
    drop = [nm for nm in vt.names if nm not in keep]
    used_drop = {nm for g in ideal.generators for nm in g.variables()} & set(drop)
    if used_drop and not (ideal.order.eliminates(vt, drop) or ideal.order.eliminates(vt, used_drop)):
        raise UsageError(f"order {ideal.order} does not eliminate {sorted(used_drop)}")
    gb = buchberger(ideal, budget)
    return [g for g in gb.elements if set(g.variables()) <= keep]
