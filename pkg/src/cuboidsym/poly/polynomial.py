"""Sparse multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from ..errors import GradingError, UsageError
from ..exactnum import as_rational
from .order import GREVLEX, MonomialOrder
from .table import VarTable

Monomial = tuple  # exponent vector, one entry per table variable


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True when monomial ``a`` divides ``b``."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


class Polynomial:
    """Immutable map from exponent vectors to nonzero Fractions over a VarTable.

    Arithmetic operators accept other polynomials on the same table as well as
    ints and Fractions.
    """

    __slots__ = ("vt", "_terms", "_hash")

    def __init__(self, vt: VarTable, terms: Mapping[Monomial, object] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict = {}
        width = len(vt)
        for mono, c in items:
            mono = tuple(mono)
            if len(mono) != width or any(e < 0 for e in mono):
                raise UsageError(f"bad exponent vector {mono} for {width} variables")
            c = as_rational(c)
            if c:
                s = clean.get(mono, 0) + c
                if s:
                    clean[mono] = s
                else:
                    del clean[mono]
        self.vt = vt
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, vt: VarTable, terms: dict) -> "Polynomial":
        # caller guarantees: exact Fractions, no zeros, correct widths
        p = object.__new__(cls)
        p.vt = vt
        p._terms = terms
        p._hash = None
        return p

    # constructors ---------------------------------------------------------
    @classmethod
    def zero(cls, vt: VarTable) -> "Polynomial":
        return cls._raw(vt, {})

    @classmethod
    def constant(cls, vt: VarTable, c=1) -> "Polynomial":
        c = as_rational(c)
        return cls._raw(vt, {(0,) * len(vt): c} if c else {})

    @classmethod
    def var(cls, vt: VarTable, name: str, power: int = 1) -> "Polynomial":
        mono = [0] * len(vt)
        mono[vt.index(name)] = power
        return cls._raw(vt, {tuple(mono): Fraction(1)})

    @classmethod
    def monomial(cls, vt: VarTable, mono: Monomial, c=1) -> "Polynomial":
        return cls(vt, {tuple(mono): c})

    # container protocol ------------------------------------------------------
    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def monomials(self):
        return self._terms.keys()

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def constant_value(self) -> Fraction:
        return self._terms.get((0,) * len(self.vt), Fraction(0))

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.vt == other.vt and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vt, frozenset(self._terms.items())))
        return self._hash

    # arithmetic -------------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.vt is not self.vt and other.vt != self.vt:
                raise UsageError("polynomials live over different variable tables")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Polynomial.constant(self.vt, other)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for m, c in small.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                del out[m]
        return Polynomial._raw(self.vt, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.vt, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        c = as_rational(c)
        if not c:
            return Polynomial.zero(self.vt)
        return Polynomial._raw(self.vt, {m: v * c for m, v in self._terms.items()})

    def mul_term(self, mono: Monomial, c) -> "Polynomial":
        c = as_rational(c)
        if not c:
            return Polynomial.zero(self.vt)
        return Polynomial._raw(
            self.vt, {mono_mul(m, mono): v * c for m, v in self._terms.items()}
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial._raw(self.vt, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            from ..exactnum import rat_inv

            return self.scale(rat_inv(as_rational(other)))
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise UsageError("polynomial powers need a non-negative integer exponent")
        result = Polynomial.constant(self.vt, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # structure --------------------------------------------------------------
    def degree(self) -> int:
        return max((sum(m) for m in self._terms), default=-1)

    def variables(self) -> list[str]:
        used = set()
        for m in self._terms:
            used.update(i for i, e in enumerate(m) if e)
        return [self.vt.names[i] for i in sorted(used)]

    def sorted_terms(self, order: MonomialOrder = GREVLEX):
        """Terms in descending order."""
        key = order.key(self.vt)
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self, order: MonomialOrder = GREVLEX) -> tuple[Monomial, Fraction]:
        if not self._terms:
            raise UsageError("the zero polynomial has no leading term")
        key = order.key(self.vt)
        m = max(self._terms, key=key)
        return m, self._terms[m]

    def leading_monomial(self, order: MonomialOrder = GREVLEX) -> Monomial:
        return self.leading_term(order)[0]

    def leading_coefficient(self, order: MonomialOrder = GREVLEX) -> Fraction:
        return self.leading_term(order)[1]

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        if not self._terms:
            return self
        return self.scale(1 / self.leading_coefficient(order))

    def content(self) -> Fraction:
        """Positive rational c with self/c integral and primitive (0 for zero)."""
        if not self._terms:
            return Fraction(0)
        nums = [c.numerator for c in self._terms.values()]
        dens = [c.denominator for c in self._terms.values()]
        g = 0
        for v in nums:
            g = math.gcd(g, v)
        lcm = 1
        for d in dens:
            lcm = lcm * d // math.gcd(lcm, d)
        return Fraction(g, lcm)

    def primitive(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        """Integer coefficients with gcd 1 and positive leading coefficient."""
        if not self._terms:
            return self
        p = self.scale(1 / self.content())
        if p.leading_coefficient(order) < 0:
            p = -p
        return p

    def map_vars(self, target: VarTable, mapping: Mapping[str, str] | None = None) -> "Polynomial":
        """Re-express over another table, renaming variables through ``mapping``."""
        mapping = mapping or {}
        names = self.vt.names
        used = {i for m in self._terms for i, e in enumerate(m) if e}
        idx = {i: target.index(mapping.get(names[i], names[i])) for i in used}
        out: dict = {}
        for m, c in self._terms.items():
            new = [0] * len(target)
            for i, e in enumerate(m):
                if e:
                    new[idx[i]] += e
            new = tuple(new)
            s = out.get(new, 0) + c
            if s:
                out[new] = s
            else:
                del out[new]
        return Polynomial._raw(target, out)

    def __repr__(self):
        from .textio import format_polynomial

        return f"Polynomial({format_polynomial(self)!r})"

    def __str__(self):
        from .textio import format_polynomial

        return format_polynomial(self)


# Functional surface ---------------------------------------------------------

def poly_add(a: Polynomial, b: Polynomial) -> Polynomial:
    return a + a._coerce(b)


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    return a * a._coerce(b)


def poly_pow(a: Polynomial, k: int) -> Polynomial:
    return a ** k


def substitute(p: Polynomial, bindings: Mapping[str, Polynomial]) -> Polynomial:
    """Simultaneously replace variables by polynomials over the same table."""
    vt = p.vt
    bound = {}
    for name, value in bindings.items():
        if name not in vt:
            raise UsageError(f"cannot bind unknown variable {name!r}")
        if not isinstance(value, Polynomial):
            value = Polynomial.constant(vt, value)
        elif value.vt != vt:
            raise UsageError(f"binding for {name!r} lives over a different table")
        bound[vt.index(name)] = value
    if not bound:
        return p
    powers: dict = {}

    def power(i, e):
        key = (i, e)
        if key not in powers:
            powers[key] = bound[i] ** e
        return powers[key]

    result: dict = {}
    for mono, c in p.items():
        rest = list(mono)
        factor = None
        for i in bound:
            e = mono[i]
            if e:
                rest[i] = 0
                factor = power(i, e) if factor is None else factor * power(i, e)
        if factor is None:
            part = {mono: c}
        else:
            part = factor.mul_term(tuple(rest), c)._terms
        for m, v in part.items():
            s = result.get(m, 0) + v
            if s:
                result[m] = s
            else:
                del result[m]
    return Polynomial._raw(vt, result)


def _row_degrees(vt: VarTable, mono: Monomial, rows) -> tuple[int, ...]:
    return tuple(sum(mono[i] for i in row) for row in rows)


def homogeneous_components(p: Polynomial) -> list[tuple[tuple[int, ...], Polynomial]]:
    """Split into row-homogeneous pieces, sorted by multidegree.

    Invariant variables carry no row degree, so ``L^2*x1`` sits in the same
    component as ``x1``.
    """
    rows = p.vt.row_slices()
    groups: dict = {}
    for mono, c in p.items():
        groups.setdefault(_row_degrees(p.vt, mono, rows), {})[mono] = c
    return [(deg, Polynomial._raw(p.vt, groups[deg])) for deg in sorted(groups)]


def multidegree(p: Polynomial) -> tuple[int, ...]:
    """Per-row degree vector of a row-homogeneous polynomial."""
    m, _ = p.vt.require_matrix()
    comps = homogeneous_components(p)
    if not comps:
        return (0,) * m
    if len(comps) > 1:
        from .textio import format_polynomial

        offending = [(deg, format_polynomial(q)) for deg, q in comps]
        raise GradingError(
            "polynomial is not homogeneous in the matrix rows: "
            + "; ".join(f"{list(d)}: {s}" for d, s in offending),
            offending,
        )
    return comps[0][0]


def eval_terms(p: Polynomial, point: Mapping[str, float], order: MonomialOrder = GREVLEX) -> list[float]:
    """Float value of every term, in descending ``order``."""
    vt = p.vt
    values = []
    needed = p.variables()
    missing = [v for v in needed if v not in point]
    if missing:
        raise UsageError(f"no value given for {missing}")
    coords = [float(point[nm]) if nm in point else 0.0 for nm in vt.names]
    for mono, c in p.sorted_terms(order):
        t = float(c)
        for i, e in enumerate(mono):
            if e:
                t *= coords[i] ** e
        values.append(t)
    return values


def eval_float(p: Polynomial, point: Mapping[str, float], order: MonomialOrder = GREVLEX) -> float:
    """Double-precision value, summed left to right in descending ``order``."""
    total = 0.0
    for t in eval_terms(p, point, order):
        total += t
    return total
