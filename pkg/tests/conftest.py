from __future__ import annotations

import sys
from fractions import Fraction
from pathlib import Path

import pytest
import sympy
from hypothesis import strategies as st

from cuboidsym.poly import Polynomial, VarTable

DATA = Path(__file__).parent / "data"

XYZ = VarTable(("x", "y", "z"))
MAT23 = VarTable.matrix(2, 3, ("x", "d"), ("L",))

# acceptance lines collected during the run, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def to_sympy(p: Polynomial):
    """Independent rendering of ``p`` as a sympy expression (test oracle)."""
    syms = [sympy.Symbol(_sym_name(nm)) for nm in p.vt.names]
    expr = sympy.Integer(0)
    for mono, c in p.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(syms, mono):
            if e:
                term *= s**e
        expr += term
    return expr


def sympy_symbols(vt: VarTable):
    return [sympy.Symbol(_sym_name(nm)) for nm in vt.names]


def from_sympy(expr, vt: VarTable) -> Polynomial:
    syms = sympy_symbols(vt)
    poly = sympy.Poly(sympy.expand(expr), *syms)
    return Polynomial(vt, {mono: Fraction(int(c.p), int(c.q)) for mono, c in poly.terms()})


def _sym_name(nm: str) -> str:
    return nm.replace("[", "_").replace(",", "_").replace("]", "")


coefficients = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def polynomials(vt: VarTable = XYZ, max_degree: int = 3, max_terms: int = 5):
    width = len(vt)
    monomials = st.lists(st.integers(0, max_degree), min_size=width, max_size=width).map(tuple)
    return st.dictionaries(monomials, coefficients, max_size=max_terms).map(lambda d: Polynomial(vt, d))


def matrix_polynomials(vt: VarTable = MAT23, max_row_degree: int = 2, max_terms: int = 4):
    """Random polynomials in the matrix entries (and the invariant ``L``)."""
    rows = vt.row_slices()
    scalars = [vt.index(nm) for nm in vt.names if nm in vt.invariant and nm not in vt.elementary]

    @st.composite
    def mono(draw):
        e = [0] * len(vt)
        for row in rows:
            for _ in range(draw(st.integers(0, max_row_degree))):
                e[draw(st.sampled_from(row))] += 1
        for i in scalars:
            e[i] = draw(st.integers(0, 1))
        return tuple(e)

    return st.dictionaries(mono(), coefficients, max_size=max_terms).map(lambda d: Polynomial(vt, d))


@pytest.fixture
def run_cli(capsys):
    from cuboidsym.cli import main

    def run(*argv, stdin: str | None = None):
        if stdin is not None:
            import io

            old = sys.stdin
            sys.stdin = io.StringIO(stdin)
            try:
                code = main(list(argv))
            finally:
                sys.stdin = old
        else:
            code = main(list(argv))
        out = capsys.readouterr()
        return code, out.out, out.err

    return run
