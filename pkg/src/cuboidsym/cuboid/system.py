"""The cuboid system: a 2x3 matrix of edges and face diagonals plus the space diagonal.

Rows are ``(x1, x2, x3)`` (edges) and ``(d1, d2, d3)`` (face diagonals); ``L``
is the space diagonal and is fixed by every column permutation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

from ..errors import UsageError
from ..groebner import divide, normal_form
from ..linalg import rank
from ..multisym import ElementaryBasisElement, enumerate_elementary, expand_in_matrix_vars
from ..poly import MonomialOrder, Polynomial, VarTable, format_polynomial, parse

CUBOID_VT = VarTable.matrix(2, 3, ("x", "d"), ("L",))

E_NAMES = ("E10", "E20", "E30", "E01", "E02", "E03", "E21", "E11", "E12")
MATRIX_NAMES = ("x1", "x2", "x3", "d1", "d2", "d3")

# grevlex with E10 > E20 > E30 > E01 > E02 > E03 > E21 > E11 > E12 > L > matrix
# entries, graded by the degree in the matrix entries (E_a weighs |a|), the
# grading under which every factor equation is homogeneous
DISPLAY_ORDER = MonomialOrder.weighted_grevlex(
    E_NAMES + ("L",) + MATRIX_NAMES,
    {nm: sum(CUBOID_VT.elementary[nm]) for nm in E_NAMES},
)

# d_i^2 and L^2 lead every reduction-basis element under this ranking
REDUCTION_ORDER = MonomialOrder.grevlex(("d1", "d2", "d3", "L", "x1", "x2", "x3") + E_NAMES)

_GENERATOR_TEXT = (
    "x1^2 + x2^2 - d3^2",
    "d3^2 + x3^2 - L^2",
    "x2^2 + x3^2 - d1^2",
    "d1^2 + x1^2 - L^2",
    "x3^2 + x1^2 - d2^2",
    "d2^2 + x2^2 - L^2",
)

_REDUCTION_TEXT = (
    "d1^2 - L^2 + x1^2",
    "d2^2 - L^2 + x2^2",
    "d3^2 - L^2 + x3^2",
    "L^2 - x1^2 - x2^2 - x3^2",
)

# row k: reduction_basis[k] == sum(c * generators[j])
_CERTIFICATES = (
    (0, 0, 0, 1, 0, 0),
    (0, 0, 0, 0, 0, 1),
    (0, 1, 0, 0, 0, 0),
    (-1, -1, 0, 0, 0, 0),
)


def P(text: str) -> Polynomial:
    """Parse ``text`` over the cuboid table."""
    return parse(text, CUBOID_VT)


@dataclass(frozen=True)
class CuboidSystem:
    var_table: VarTable
    generators: tuple[Polynomial, ...]
    reduction_basis: tuple[Polynomial, ...]
    certificates: tuple[tuple[int, ...], ...]
    order: MonomialOrder = REDUCTION_ORDER

    def certificate_combination(self, k: int) -> Polynomial:
        out = Polynomial.zero(self.var_table)
        for c, g in zip(self.certificates[k], self.generators):
            if c:
                out = out + g.scale(c)
        return out

    def check_certificates(self) -> bool:
        return all(
            self.certificate_combination(k) == b for k, b in enumerate(self.reduction_basis)
        )

    def leading_terms_coprime(self) -> bool:
        lms = [b.leading_monomial(self.order) for b in self.reduction_basis]
        return all(
            not any(a and b for a, b in zip(lms[i], lms[j]))
            for i in range(len(lms))
            for j in range(i + 1, len(lms))
        )


@lru_cache(maxsize=None)
def cuboid_system() -> CuboidSystem:
    return CuboidSystem(
        CUBOID_VT,
        tuple(P(t) for t in _GENERATOR_TEXT),
        tuple(P(t) for t in _REDUCTION_TEXT),
        _CERTIFICATES,
    )


def cuboid_generators() -> list[Polynomial]:
    return list(cuboid_system().generators)


def cuboid_elementaries() -> list[ElementaryBasisElement]:
    return enumerate_elementary(2, 3, CUBOID_VT)


def elementary_linear_rank() -> tuple[int, int]:
    """Rank of the nine E-expansions together with ``L`` and ``1``, and the count 11.

    Full rank means no nonzero rational linear relation holds among them.
    """
    polys = [e.polynomial for e in cuboid_elementaries()]
    polys += [Polynomial.var(CUBOID_VT, "L"), Polynomial.constant(CUBOID_VT, 1)]
    monos = sorted({m for p in polys for m in p.monomials()})
    return rank([[p.coefficient(m) for m in monos] for p in polys]), len(polys)


def _check_domain(p: Polynomial):
    if p.vt != CUBOID_VT:
        raise UsageError("polynomial is not over the cuboid variable table")
    stray = [nm for nm in p.variables() if nm in CUBOID_VT.elementary]
    if stray:
        raise UsageError(f"expand E-variables before reducing (found {', '.join(stray)})")


def reduce_cuboid(p: Polynomial) -> Polynomial:
    """Normal form modulo the cuboid ideal: no ``d_i^2`` and no ``L^2`` survive."""
    _check_domain(p)
    return normal_form(p, cuboid_system().reduction_basis, REDUCTION_ORDER)


def reduce_with_quotients(p: Polynomial) -> tuple[list[Polynomial], Polynomial]:
    _check_domain(p)
    return divide(p, cuboid_system().reduction_basis, REDUCTION_ORDER)


@dataclass(frozen=True)
class Verification:
    """Outcome of a membership test, with the division certificate.

    ``expanded == sum(q * b for q, b in zip(quotients, basis)) + remainder``
    """

    member: bool
    expanded: Polynomial
    quotients: tuple[Polynomial, ...]
    remainder: Polynomial

    def __bool__(self):
        return self.member

    def check(self) -> bool:
        total = self.remainder
        for q, b in zip(self.quotients, cuboid_system().reduction_basis):
            total = total + q * b
        return total == self.expanded

    def summary(self) -> str:
        if self.member:
            terms = sum(len(q) for q in self.quotients)
            return f"member ({terms} quotient terms)"
        return f"remainder {format_polynomial(self.remainder, REDUCTION_ORDER)}"


def verify_polynomial(p: Polynomial) -> Verification:
    expanded = expand_in_matrix_vars(p)
    quotients, remainder = reduce_with_quotients(expanded)
    return Verification(remainder.is_zero(), expanded, tuple(quotients), remainder)


# ---------------------------------------------------------------- rewriting

@dataclass(frozen=True)
class RewriteRule:
    """``var^power -> replacement``."""

    var: str
    power: int
    replacement: Polynomial

    def __str__(self):
        return f"{self.var}^{self.power} -> {format_polynomial(self.replacement, DISPLAY_ORDER)}"


def _rule(var: str, rhs: str) -> RewriteRule:
    return RewriteRule(var, 2, P(rhs))


RULE_SETS: Mapping[str, tuple[RewriteRule, ...]] = {
    # the sum of squared edges is L^2, solved for x1^2
    "x-sum": (_rule("x1", "L^2 - x2^2 - x3^2"),),
    # the face diagonals squared sum to 2 L^2, solved for d1^2
    "d-sum": (_rule("d1", "2*L^2 - d2^2 - d3^2"),),
    # x_i^2 = L^2 - d_i^2
    "x-via-L": (
        _rule("x1", "L^2 - d1^2"),
        _rule("x2", "L^2 - d2^2"),
        _rule("x3", "L^2 - d3^2"),
    ),
    # x_i^2 = (d_j^2 + d_k^2 - d_i^2) / 2
    "x-via-faces": (
        _rule("x1", "1/2*d2^2 + 1/2*d3^2 - 1/2*d1^2"),
        _rule("x2", "1/2*d3^2 + 1/2*d1^2 - 1/2*d2^2"),
        _rule("x3", "1/2*d1^2 + 1/2*d2^2 - 1/2*d3^2"),
    ),
    # d_i^2 = x_j^2 + x_k^2
    "d-via-edges": (
        _rule("d1", "x2^2 + x3^2"),
        _rule("d2", "x3^2 + x1^2"),
        _rule("d3", "x1^2 + x2^2"),
    ),
    # d_i^2 = L^2 - x_i^2
    "d-via-L": (
        _rule("d1", "L^2 - x1^2"),
        _rule("d2", "L^2 - x2^2"),
        _rule("d3", "L^2 - x3^2"),
    ),
    # the reduction basis read as rules
    "normal": (
        _rule("d1", "L^2 - x1^2"),
        _rule("d2", "L^2 - x2^2"),
        _rule("d3", "L^2 - x3^2"),
        _rule("L", "x1^2 + x2^2 + x3^2"),
    ),
}


def rule_set(name: str) -> tuple[RewriteRule, ...]:
    try:
        return RULE_SETS[name]
    except KeyError:
        raise UsageError(f"unknown rule set {name!r}; known: {', '.join(RULE_SETS)}") from None


def _applicable(vt, mono, rules):
    return [r for r in rules if mono[vt.index(r.var)] >= r.power]


def rewrite(
    p: Polynomial,
    rules: Sequence[RewriteRule] | str,
    rng: random.Random | None = None,
    max_steps: int = 100_000,
) -> Polynomial:
    """Apply ``rules`` until no term contains a rule's left side.

    Without ``rng`` every reducible term is rewritten fully by its first
    applicable rule on each pass.  With ``rng`` a single ``var^power`` factor of
    a randomly chosen term is replaced per step, by a randomly chosen
    applicable rule, which makes it possible to test confluence empirically.
    """
    if isinstance(rules, str):
        rules = rule_set(rules)
    vt = p.vt
    for step in range(max_steps):
        reducible = [(m, c) for m, c in p.items() if _applicable(vt, m, rules)]
        if not reducible:
            return p
        if rng is None:
            out = p
            for mono, c in reducible:
                rule = _applicable(vt, mono, rules)[0]
                i = vt.index(rule.var)
                k, rest = divmod(mono[i], rule.power)
                left = tuple(rest if j == i else e for j, e in enumerate(mono))
                out = out - Polynomial.monomial(vt, mono, c) + (rule.replacement**k).mul_term(left, c)
            p = out
        else:
            mono, c = reducible[rng.randrange(len(reducible))]
            opts = _applicable(vt, mono, rules)
            rule = opts[rng.randrange(len(opts))]
            i = vt.index(rule.var)
            left = tuple(e - rule.power if j == i else e for j, e in enumerate(mono))
            p = p - Polynomial.monomial(vt, mono, c) + rule.replacement.mul_term(left, c)
    raise UsageError(f"rewriting did not terminate within {max_steps} steps")
