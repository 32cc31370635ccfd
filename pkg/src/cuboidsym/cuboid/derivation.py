"""Derivation of factor equations from the cuboid system.

A recipe starts from a product of E-variables, expands it into the matrix
entries, rewrites squares with one of the named rule sets, decomposes the
result back into E-variables and subtracts.  Lower equations then eliminate
the E-variables that should not remain.  Every step is recorded so a trace can
be replayed and checked independently.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Mapping

from ..errors import PipelineError, UsageError
from ..linalg import LinearSolver
from ..multisym import decompose, expand_in_matrix_vars
from ..poly import Polynomial, format_polynomial, mono_div, mono_divides, parse
from .catalog import CATALOG_IDS, FactorEquation, catalog_by_id, first_difference, normalize
from .system import CUBOID_VT, DISPLAY_ORDER, rewrite


@dataclass(frozen=True)
class Recipe:
    id: str
    target: str
    rules: str | None = None
    eliminations: tuple[tuple[str, str], ...] = ()
    label: str = ""

    @property
    def combination(self) -> bool:
        return self.rules is None

    def step_rules(self) -> list[str]:
        if self.combination:
            head = [f"load:{self.target}"]
        else:
            head = ["expand", f"rewrite:{self.rules}", "decompose", "subtract-from-target"]
        tail = [f"eliminate:{mono}:{rel}" for mono, rel in self.eliminations]
        return head + tail + ["normalize"]


RECIPES: tuple[Recipe, ...] = (
    Recipe("F1", "E10^2", "x-sum", label="first factor equation (square of E10)"),
    Recipe("F2", "E01^2", "d-sum", label="second factor equation (square of E01)"),
    Recipe("F3", "E10^3", "x-via-L", (("E02", "F2"),), "third factor equation (cube of E10)"),
    Recipe("F4", "E01^3", "d-via-edges", (("E20", "F1"),), "fourth factor equation (cube of E01)"),
    Recipe(
        "F5", "E20^2", "x-via-L",
        (("E02", "F2"), ("E20", "F1"), ("E03", "F4")),
        "fifth factor equation (square of E20)",
    ),
    Recipe(
        "F6", "E02^2", "d-via-L",
        (("E02", "F2"), ("E20", "F1"), ("E30", "F3")),
        "sixth factor equation (square of E02)",
    ),
    Recipe("L1", "F5", None, (("E11^2", "F6"),), "combination of F5 and F6 free of E11^2"),
    Recipe("L2", "F5", None, (("E10*E12", "F6"),), "combination of F5 and F6 free of E10*E12"),
    Recipe(
        "F7", "E20*E30", "x-via-L",
        (("E02", "F2"), ("E20", "F1"), ("E03", "F4"), ("E30", "F3"), ("E11^2", "L2")),
        "seventh factor equation (product E20*E30)",
    ),
    Recipe(
        "F8", "E02*E03", "d-via-L",
        (("E02", "F2"), ("E20", "F1"), ("E03", "F4"), ("E30", "F3"), ("E11^2", "L2")),
        "eighth factor equation (product E02*E03)",
    ),
)

# second rewriting route for the two cubes; both must land on the same equation
ALTERNATE_RULES = {"F3": "x-via-faces", "F4": "d-via-L"}


def recipe(eq_id: str) -> Recipe:
    for r in RECIPES:
        if r.id == eq_id:
            return r
    raise UsageError(f"no recipe for {eq_id!r}; known: {', '.join(CATALOG_IDS)}")


@dataclass(frozen=True)
class Step:
    rule: str
    poly: Polynomial


@dataclass(frozen=True)
class DerivationTrace:
    target: str
    steps: tuple[Step, ...]
    result: FactorEquation
    recipe: Recipe = field(compare=False, default=None)

    def to_json(self) -> dict:
        return {
            "target": self.target,
            "steps": [{"rule": s.rule, "poly": format_polynomial(s.poly, DISPLAY_ORDER)} for s in self.steps],
            "result_id": self.result.id,
        }


def eliminate_monomial(p: Polynomial, relation: Polynomial, monomial: Polynomial | str) -> Polynomial:
    """Use ``relation = 0`` to rewrite every occurrence of ``monomial`` in ``p``.

    ``monomial`` must occur in ``relation`` and must not divide any other term
    of it, otherwise the substitution would not terminate.
    """
    if isinstance(monomial, str):
        monomial = parse(monomial, p.vt)
    if len(monomial) != 1:
        raise UsageError("elimination target must be a single monomial")
    (mono, _), = monomial.items()
    c = relation.coefficient(mono)
    if not c:
        raise UsageError(f"relation does not contain {format_polynomial(monomial)}")
    rest = Polynomial._raw(relation.vt, {m: v for m, v in relation.items() if m != mono})
    if any(mono_divides(mono, m) for m in rest.monomials()):
        raise UsageError(f"relation cannot be solved for {format_polynomial(monomial)}")
    rhs = rest.scale(-1 / c)
    while True:
        hits = [(m, v) for m, v in p.items() if mono_divides(mono, m)]
        if not hits:
            return p
        out = Polynomial._raw(p.vt, {m: v for m, v in p.items() if not mono_divides(mono, m)})
        for m, v in hits:
            out = out + rhs.mul_term(mono_div(m, mono), v)
        p = out


def _apply(rule: str, state: Polynomial | None, target: Polynomial | None, results: Mapping[str, FactorEquation]):
    kind, _, arg = rule.partition(":")
    if kind == "expand":
        return expand_in_matrix_vars(target)
    if kind == "rewrite":
        return rewrite(state, arg)
    if kind == "decompose":
        rep = decompose(state)
        if expand_in_matrix_vars(rep) != state:
            raise PipelineError("decomposition does not expand back to its input", rule)
        return rep
    if kind == "subtract-from-target":
        return target - state
    if kind == "load":
        return _lookup(results, arg, rule).lhs
    if kind == "eliminate":
        mono, _, rel = arg.partition(":")
        return eliminate_monomial(state, _lookup(results, rel, rule).lhs, mono)
    if kind == "normalize":
        return normalize(state)
    raise PipelineError(f"unknown step {rule!r}", rule)


def _lookup(results, eq_id, rule):
    try:
        return results[eq_id]
    except KeyError:
        raise PipelineError(f"step needs {eq_id}, which has not been derived yet", rule) from None


def run_recipe(r: Recipe, results: Mapping[str, FactorEquation]) -> DerivationTrace:
    target = None if r.combination else parse(r.target, CUBOID_VT)
    state = None
    steps = []
    for rule in r.step_rules():
        state = _apply(rule, state, target, results)
        steps.append(Step(rule, state))
    if state.is_zero():
        raise PipelineError(f"recipe {r.id} collapsed to zero", steps[-1].rule)
    return DerivationTrace(r.target, tuple(steps), FactorEquation(r.id, state, r.label), r)


def replay(trace: DerivationTrace, results: Mapping[str, FactorEquation]) -> bool:
    """Recompute every step of ``trace`` and compare with the recorded states."""
    target = None if trace.steps[0].rule.startswith("load:") else parse(trace.target, CUBOID_VT)
    state = None
    for step in trace.steps:
        state = _apply(step.rule, state, target, results)
        if state != step.poly:
            return False
    return state == trace.result.lhs


def derive_factor_equations(only: str | None = None) -> list[DerivationTrace]:
    """Run every recipe in order; later recipes use earlier results.

    With ``only`` the prerequisites still run but only that trace is returned.
    """
    results: dict[str, FactorEquation] = {}
    traces = []
    for r in RECIPES:
        t = run_recipe(r, results)
        results[r.id] = t.result
        traces.append(t)
        if only is not None and r.id == only:
            return [t]
    if only is not None:
        raise UsageError(f"unknown equation id {only!r}")
    return traces


def branch_results(skip: tuple[str, str] | None = None) -> dict[str, tuple[Polynomial, Polynomial]]:
    """Primary and alternate results for F3 and F4.

    ``skip=(eq_id, monomial)`` drops that elimination from the alternate branch
    of ``eq_id`` only.
    """
    results = {}
    out = {}
    for r in RECIPES:
        if r.id in ALTERNATE_RULES:
            primary = run_recipe(r, results).result.lhs
            alt = replace(r, rules=ALTERNATE_RULES[r.id])
            if skip is not None and skip[0] == r.id:
                alt = replace(alt, eliminations=tuple(e for e in alt.eliminations if e[0] != skip[1]))
            out[r.id] = (primary, run_recipe(alt, results).result.lhs)
            results[r.id] = FactorEquation(r.id, primary)
        elif r.id in ("F1", "F2"):
            results[r.id] = run_recipe(r, results).result
        if len(out) == len(ALTERNATE_RULES):
            break
    return out


def derivation_branch_equivalence(skip: tuple[str, str] | None = None) -> bool:
    return all(a == b for a, b in branch_results(skip).values())


def compare_with_catalog(traces, catalog: Mapping[str, FactorEquation] | None = None):
    """``(id, difference)`` for every trace; ``difference`` is ``None`` on a match."""
    catalog = catalog if catalog is not None else catalog_by_id()
    out = []
    for t in traces:
        golden = catalog.get(t.result.id)
        if golden is None:
            out.append((t.result.id, ("<missing from catalog>", None, None)))
        else:
            out.append((t.result.id, first_difference(t.result.lhs, golden.lhs)))
    return out


def dump_traces(traces) -> str:
    return json.dumps([t.to_json() for t in traces], indent=2) + "\n"


def combination_coefficients(target: Polynomial, sources) -> list | None:
    """Rational ``c`` with ``target == sum(c_i * sources[i])``, or ``None``."""
    sources = list(sources)
    monos = sorted({m for p in [target, *sources] for m in p.monomials()})
    matrix = [[p.coefficient(m) for p in sources] for m in monos]
    coeffs = LinearSolver(matrix).solve([target.coefficient(m) for m in monos])
    if coeffs is None:
        return None
    total = Polynomial.zero(target.vt)
    for c, p in zip(coeffs, sources):
        total = total + p.scale(c)
    return coeffs if total == target else None
