"""Multisymmetric polynomials: the column action of S_n on an m x n matrix.

Polynomials live over a :class:`VarTable` with a matrix layout.  Elementary
multisymmetric polynomials are represented twice: as their expansion in the
matrix entries and as an abstract variable ``E<alpha>`` of the same table, so
that :func:`decompose` and :func:`expand_in_matrix_vars` are inverse maps.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import CuboidSymError, MultiIndexError, SymmetryError, UsageError
from .linalg import LinearSolver
from .poly import MonomialOrder, Polynomial, VarTable, elementary_indices, substitute
from .poly.table import elementary_name


@dataclass(frozen=True)
class MultiIndex:
    """``alpha = [a1, ..., am]`` with non-negative parts and ``|alpha| <= n``."""

    parts: tuple[int, ...]
    n: int

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(int(a) for a in self.parts))
        if any(a < 0 for a in self.parts):
            raise MultiIndexError(f"negative part in {list(self.parts)}")
        if sum(self.parts) > self.n:
            raise MultiIndexError(f"|{list(self.parts)}| = {sum(self.parts)} exceeds n = {self.n}")

    @property
    def size(self) -> int:
        return sum(self.parts)

    def factorial(self) -> int:
        """``a1! * ... * am! * (n - |alpha|)!``.

        The last factor counts the unused columns; with it ``n!/alpha!`` is the
        exact number of monomials in the elementary polynomial.
        """
        out = math.factorial(self.n - self.size)
        for a in self.parts:
            out *= math.factorial(a)
        return out

    def term_count(self) -> int:
        return math.factorial(self.n) // self.factorial()

    def __str__(self):
        return "[" + ",".join(map(str, self.parts)) + "]"


def _as_multiindex(alpha, n) -> MultiIndex:
    if isinstance(alpha, MultiIndex):
        if alpha.n != n:
            raise MultiIndexError(f"multi-index bound {alpha.n} does not match n = {n}")
        return alpha
    return MultiIndex(tuple(alpha), n)


@dataclass(frozen=True)
class ColumnAction:
    """A permutation of columns ``1..n`` given by its image vector.

    ``ColumnAction((2, 3, 1))`` sends column 1 to 2, 2 to 3 and 3 to 1, so
    ``x1 -> x2``.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise UsageError(f"{list(self.images)} is not a permutation of 1..{len(self.images)}")

    @property
    def n(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "ColumnAction":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, i: int, j: int, n: int) -> "ColumnAction":
        img = list(range(1, n + 1))
        img[i - 1], img[j - 1] = j, i
        return cls(tuple(img))

    def __call__(self, column: int) -> int:
        return self.images[column - 1]

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            nxt = self(start)
            while nxt != start:
                cyc.append(nxt)
                seen.add(nxt)
                nxt = self(nxt)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def __str__(self):
        cyc = self.cycles()
        if not cyc:
            return "id"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def all_permutations(n: int) -> list[ColumnAction]:
    return [ColumnAction(tuple(p)) for p in itertools.permutations(range(1, n + 1))]


def adjacent_transpositions(n: int) -> list[ColumnAction]:
    return [ColumnAction.transposition(i, i + 1, n) for i in range(1, n)]


@lru_cache(maxsize=1024)
def _index_map(vt: VarTable, sigma: ColumnAction) -> tuple[int, ...]:
    m, n = vt.require_matrix()
    if sigma.n != n:
        raise UsageError(f"permutation acts on {sigma.n} columns but the matrix has {n}")
    target = list(range(len(vt)))
    for name, (i, j) in vt.positions.items():
        target[vt.index(name)] = vt.index(vt.matrix_name(i, sigma(j)))
    return tuple(target)


def apply_permutation(p: Polynomial, sigma: ColumnAction) -> Polynomial:
    """Replace every matrix entry ``x_ij`` by ``x_{i sigma(j)}``; invariants stay."""
    target = _index_map(p.vt, sigma)
    out = {}
    width = len(p.vt)
    for mono, c in p.items():
        new = [0] * width
        for i, e in enumerate(mono):
            if e:
                new[target[i]] = e
        out[tuple(new)] = c
    return Polynomial._raw(p.vt, out)


def symmetrize(q: Polynomial) -> Polynomial:
    """Average of ``q`` over all ``n!`` column permutations."""
    _, n = q.vt.require_matrix()
    total = Polynomial.zero(q.vt)
    for sigma in all_permutations(n):
        total = total + apply_permutation(q, sigma)
    return total.scale(Fraction(1, math.factorial(n)))


def symmetry_witness(p: Polynomial) -> ColumnAction | None:
    """First adjacent transposition that moves ``p``, or ``None`` if invariant."""
    _, n = p.vt.require_matrix()
    for sigma in adjacent_transpositions(n):
        if apply_permutation(p, sigma) != p:
            return sigma
    return None


def is_multisymmetric(p: Polynomial) -> bool:
    return symmetry_witness(p) is None


def monomial_x_alpha(vt: VarTable, alpha) -> Polynomial:
    """``alpha[0]`` entries of row 1 from the first columns, then row 2 from the next, ..."""
    m, n = vt.require_matrix()
    alpha = _as_multiindex(alpha, n)
    if len(alpha.parts) != m:
        raise MultiIndexError(f"multi-index {alpha} has {len(alpha.parts)} parts for {m} rows")
    mono = [0] * len(vt)
    col = 1
    for row, a in enumerate(alpha.parts, start=1):
        for _ in range(a):
            mono[vt.index(vt.matrix_name(row, col))] = 1
            col += 1
    return Polynomial.monomial(vt, mono)


@dataclass(frozen=True)
class ElementaryBasisElement:
    multi_index: MultiIndex
    polynomial: Polynomial
    e_variable: str


@lru_cache(maxsize=512)
def _elementary_cached(vt: VarTable, parts: tuple[int, ...]) -> ElementaryBasisElement:
    _, n = vt.require_matrix()
    alpha = MultiIndex(parts, n)
    x_alpha = monomial_x_alpha(vt, alpha)
    # the orbit sum of x^alpha equals (n!/alpha!) * S(x^alpha); summing the
    # distinct images directly avoids a detour through fractions
    orbit = {next(iter(apply_permutation(x_alpha, s).monomials())) for s in all_permutations(n)}
    poly = Polynomial(vt, {mono: 1 for mono in orbit})
    name = elementary_name(parts)
    return ElementaryBasisElement(alpha, poly, name)


def elementary(vt: VarTable, alpha) -> ElementaryBasisElement:
    """The elementary multisymmetric polynomial ``e_alpha`` over ``vt``'s matrix."""
    m, n = vt.require_matrix()
    alpha = _as_multiindex(alpha, n)
    if len(alpha.parts) != m:
        raise MultiIndexError(f"multi-index {alpha} has {len(alpha.parts)} parts for {m} rows")
    return _elementary_cached(vt, alpha.parts)


def enumerate_elementary(m: int, n: int, vt: VarTable | None = None) -> list[ElementaryBasisElement]:
    """All ``e_alpha`` with ``0 < |alpha| <= n``, in the table's fixed order."""
    if vt is None:
        vt = VarTable.matrix(m, n)
    elif vt.shape != (m, n):
        raise UsageError(f"table has shape {vt.shape}, expected {(m, n)}")
    return [elementary(vt, alpha) for alpha in elementary_indices(m, n)]


# Expansion and decomposition ------------------------------------------------

def _require_elementary_vars(vt: VarTable):
    m, n = vt.require_matrix()
    names = [nm for nm in vt.names if nm in vt.elementary]
    if len(names) != len(elementary_indices(m, n)):
        raise UsageError("table lacks the elementary variables E<alpha>")
    return names


def expansion_bindings(vt: VarTable) -> dict[str, Polynomial]:
    return {nm: _elementary_cached(vt, alpha).polynomial for nm, alpha in vt.elementary.items()}


def expand_in_matrix_vars(q: Polynomial) -> Polynomial:
    """Replace every elementary variable by its expansion in the matrix entries."""
    vt = q.vt
    for nm in q.variables():
        if nm.startswith("E") and nm not in vt.elementary:
            raise UsageError(f"unknown elementary variable {nm!r}")
    if not vt.elementary:
        return q
    used = set(q.variables()) & set(vt.elementary)
    return substitute(q, {nm: p for nm, p in expansion_bindings(vt).items() if nm in used})


def _is_orbit_representative(vt: VarTable, mono) -> bool:
    rows = vt.row_slices()
    cols = [tuple(mono[row[j]] for row in rows) for j in range(len(rows[0]))]
    return all(cols[j] >= cols[j + 1] for j in range(len(cols) - 1))


def _products_with_multidegree(target, degrees):
    """Exponent vectors over the elementary indices summing to ``target``."""
    out = []

    def rec(k, remaining, current):
        if not any(remaining):
            out.append(tuple(current) + (0,) * (len(degrees) - len(current)))
            return
        if k == len(degrees):
            return
        d = degrees[k]
        e = 0
        while all(r - e * a >= 0 for r, a in zip(remaining, d)):
            rec(k + 1, tuple(r - e * a for r, a in zip(remaining, d)), current + [e])
            e += 1

    rec(0, tuple(target), [])
    return out


class _GradedSystem:
    """Linear system expressing multidegree-``alpha`` invariants through E-products."""

    def __init__(self, vt: VarTable, alpha: tuple[int, ...]):
        self.vt = vt
        enames = _require_elementary_vars(vt)
        eidx = [vt.index(nm) for nm in enames]
        degrees = [vt.elementary[nm] for nm in enames]
        width = len(vt)
        candidates = []
        for exps in _products_with_multidegree(alpha, degrees):
            mono = [0] * width
            for i, e in zip(eidx, exps):
                mono[i] = e
            candidates.append(tuple(mono))
        key = MonomialOrder.grevlex(enames).key(vt)
        candidates.sort(key=key, reverse=True)
        self.candidates = candidates

        bindings = expansion_bindings(vt)
        columns = []
        reps: dict = {}
        for mono in candidates:
            expansion = Polynomial.constant(vt, 1)
            for i, e in enumerate(mono):
                if e:
                    expansion = expansion * bindings[vt.names[i]] ** e
            col = {}
            for em, c in expansion.items():
                if _is_orbit_representative(vt, em):
                    reps.setdefault(em, len(reps))
                    col[em] = c
            columns.append(col)
        self.reps = reps
        matrix = [[col.get(rep, 0) for col in columns] for rep in reps]
        self.solver = LinearSolver(matrix) if matrix else None

    @property
    def rank(self) -> int:
        """Dimension spanned by the candidates; below ``len(candidates)`` iff relations exist."""
        return self.solver.rank if self.solver else 0

    def solve(self, target: dict):
        """Coefficients for the candidates, or ``None`` if out of their span."""
        rhs = [0] * len(self.reps)
        for mono, c in target.items():
            if _is_orbit_representative(self.vt, mono):
                if mono not in self.reps:
                    return None
                rhs[self.reps[mono]] = c
        if self.solver is None:
            return [] if not any(rhs) else None
        return self.solver.solve(rhs)


@lru_cache(maxsize=256)
def _graded_system(vt: VarTable, alpha: tuple[int, ...]) -> _GradedSystem:
    return _GradedSystem(vt, alpha)


def decompose(p: Polynomial) -> Polynomial:
    """Write a multisymmetric ``p`` as a polynomial in the E-variables.

    Invariant variables (such as ``L``) pass through as scalars.  Where the
    elementary polynomials satisfy relations the representative is fixed:
    candidate products are ranked by grevlex over the E-variables (largest
    first), the system is row-reduced and free coefficients are set to zero.
    """
    vt = p.vt
    m, n = vt.require_matrix()
    _require_elementary_vars(vt)
    witness = symmetry_witness(p)
    if witness is not None:
        raise SymmetryError(f"polynomial is not multisymmetric: moved by {witness}", witness)

    rows = vt.row_slices()
    matrix_idx = {i for row in rows for i in row}
    groups: dict = {}
    for mono, c in p.items():
        inv = tuple(0 if i in matrix_idx else e for i, e in enumerate(mono))
        mat = tuple(e if i in matrix_idx else 0 for i, e in enumerate(mono))
        deg = tuple(sum(mono[i] for i in row) for row in rows)
        groups.setdefault((deg, inv), {})[mat] = c

    out: dict = {}
    for (deg, inv), part in sorted(groups.items()):
        system = _graded_system(vt, deg)
        coeffs = system.solve(part)
        if coeffs is None:
            raise CuboidSymError(f"component of multidegree {list(deg)} is outside the span of E-products")
        for mono, c in zip(system.candidates, coeffs):
            if c:
                key = tuple(a + b for a, b in zip(mono, inv))
                s = out.get(key, 0) + c
                if s:
                    out[key] = s
                else:
                    del out[key]
    return Polynomial._raw(vt, out)

