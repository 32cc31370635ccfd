import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import MAT23, matrix_polynomials
from cuboidsym.errors import GradingError, MultiIndexError, SymmetryError, UsageError
from cuboidsym.multisym import (
    ColumnAction,
    MultiIndex,
    all_permutations,
    apply_permutation,
    decompose,
    elementary,
    enumerate_elementary,
    expand_in_matrix_vars,
    is_multisymmetric,
    monomial_x_alpha,
    symmetrize,
    symmetry_witness,
)
from cuboidsym.poly import Polynomial, VarTable, elementary_indices, multidegree, parse

VT = MAT23


def P(text, vt=VT):
    return parse(text, vt)


def brute_force_elementary(vt, alpha):
    """Sum over injective column assignments, deduplicated: an independent oracle."""
    m, n = vt.shape
    out = {}
    slots = [row for row, a in enumerate(alpha, start=1) for _ in range(a)]
    for cols in itertools.permutations(range(1, n + 1), len(slots)):
        mono = [0] * len(vt)
        for row, col in zip(slots, cols):
            mono[vt.index(vt.matrix_name(row, col))] += 1
        out[tuple(mono)] = 1
    return Polynomial(vt, out)


# ---------------------------------------------------------------- types

def test_multi_index_validation():
    assert MultiIndex((2, 1), 3).size == 3
    with pytest.raises(MultiIndexError):
        MultiIndex((2, 2), 3)
    with pytest.raises(MultiIndexError):
        MultiIndex((-1, 1), 3)


def test_column_action_validation_and_text():
    assert str(ColumnAction((2, 1, 3))) == "(1 2)"
    assert str(ColumnAction.identity(3)) == "id"
    assert ColumnAction((2, 3, 1)).cycles() == [(1, 2, 3)]
    with pytest.raises(UsageError):
        ColumnAction((1, 1, 3))


# ---------------------------------------------------------------- action

def test_apply_permutation_examples():
    assert apply_permutation(P("x1"), ColumnAction((2, 3, 1))) == P("x2")
    s = P("x1+x2+x3")
    assert all(apply_permutation(s, g) == s for g in all_permutations(3))
    assert apply_permutation(P("x1*d2"), ColumnAction.transposition(1, 2, 3)) == P("x2*d1")
    assert apply_permutation(P("L*x1"), ColumnAction((3, 1, 2))) == P("L*x3")


def test_symmetrize_examples():
    assert symmetrize(P("x1")) == P("1/3*x1 + 1/3*x2 + 1/3*x3")
    assert symmetrize(P("x1*d2")) == P("1/6*(x1*d2+d1*x2+x2*d3+d2*x3+x3*d1+d3*x1)")
    assert symmetrize(Polynomial.constant(VT, 7)) == Polynomial.constant(VT, 7)


def test_is_multisymmetric_examples():
    assert is_multisymmetric(P("x1+x2+x3"))
    assert not is_multisymmetric(P("x1"))
    assert is_multisymmetric(P("x1*d2*d3+x2*d3*d1+x3*d1*d2"))
    assert symmetry_witness(P("x1")) == ColumnAction.transposition(1, 2, 3)
    # fixed by (1 2) but not by (2 3)
    assert symmetry_witness(P("x1 + x2")) == ColumnAction.transposition(2, 3, 3)


@settings(max_examples=60, deadline=None)
@given(matrix_polynomials())
def test_symmetrize_idempotent_and_fixed_points(q):
    s = symmetrize(q)
    assert symmetrize(s) == s
    assert is_multisymmetric(s)
    assert (symmetrize(q) == q) == is_multisymmetric(q)


def test_symmetrize_needs_a_matrix():
    with pytest.raises(UsageError):
        symmetrize(parse("x", VarTable(("x",))))


# ---------------------------------------------------------------- elementary polynomials

def test_monomial_x_alpha_examples():
    assert monomial_x_alpha(VT, (2, 1)) == P("x1*x2*d3")
    assert monomial_x_alpha(VT, (0, 0)) == Polynomial.constant(VT, 1)
    assert monomial_x_alpha(VT, (3, 0)) == P("x1*x2*x3")


def test_elementary_examples():
    assert elementary(VT, (2, 1)).polynomial == P("x1*x2*d3 + x2*x3*d1 + x3*x1*d2")
    assert elementary(VT, (0, 3)).polynomial == P("d1*d2*d3")
    assert elementary(VT, (1, 0)).polynomial == P("x1+x2+x3")
    assert elementary(VT, (2, 1)).e_variable == "E21"


def test_enumerate_elementary_counts():
    assert len(enumerate_elementary(2, 3)) == 9
    one_row = enumerate_elementary(1, 3)
    assert len(one_row) == 3
    vt1 = one_row[0].polynomial.vt
    assert [e.polynomial for e in one_row] == [
        parse("x1+x2+x3", vt1),
        parse("x1*x2+x1*x3+x2*x3", vt1),
        parse("x1*x2*x3", vt1),
    ]
    assert len(enumerate_elementary(1, 1)) == 1


@pytest.mark.parametrize("shape", [(1, 3), (2, 2), (2, 3), (3, 3), (2, 4)])
def test_term_count_and_grading(shape):
    m, n = shape
    vt = VarTable.matrix(m, n)
    for alpha in elementary_indices(m, n):
        e = elementary(vt, alpha)
        count = math.factorial(n) // (math.prod(math.factorial(a) for a in alpha) * math.factorial(n - sum(alpha)))
        assert len(e.polynomial) == count == e.multi_index.term_count()
        assert all(c == 1 for _, c in e.polynomial.items())
        assert multidegree(e.polynomial) == tuple(alpha)
        assert e.polynomial == brute_force_elementary(vt, alpha)


def test_orbit_sum_matches_scaled_symmetrization():
    # e_alpha is the orbit sum of x^alpha, i.e. |orbit| * S(x^alpha)
    for alpha in elementary_indices(2, 3):
        e = elementary(VT, alpha)
        scaled = symmetrize(monomial_x_alpha(VT, alpha)).scale(e.multi_index.term_count())
        assert scaled == e.polynomial


# ---------------------------------------------------------------- decomposition

def test_decompose_examples():
    assert decompose(P("x1^2+x2^2+x3^2")) == P("E10^2 - 2*E20")
    assert decompose(P("x1*d1+x2*d2+x3*d3")) == P("E10*E01 - E11")
    assert decompose(P("x1*d2*d3+x2*d3*d1+x3*d1*d2")) == P("E12")
    assert decompose(P("L^2*(x1+x2+x3) - 3")) == P("E10*L^2 - 3")


def test_decompose_oracles_by_brute_force_expansion():
    e10 = P("x1+x2+x3")
    e20 = P("x1*x2+x2*x3+x3*x1")
    e01 = P("d1+d2+d3")
    e11 = brute_force_elementary(VT, (1, 1))
    assert e10 * e10 - e20.scale(2) == P("x1^2+x2^2+x3^2")
    assert e10 * e01 - e11 == P("x1*d1+x2*d2+x3*d3")


def test_decompose_rejects_non_symmetric_input():
    with pytest.raises(SymmetryError) as info:
        decompose(P("x1"))
    assert info.value.witness == ColumnAction.transposition(1, 2, 3)


def test_expand_examples():
    assert expand_in_matrix_vars(P("E30")) == P("x1*x2*x3")
    assert expand_in_matrix_vars(P("E10^2 - 2*E20 - L^2")) == P("x1^2+x2^2+x3^2-L^2")
    assert expand_in_matrix_vars(Polynomial.constant(VT, 1)) == Polynomial.constant(VT, 1)


def test_newton_identities_one_row():
    vt = VarTable.matrix(1, 3)
    p2 = parse("x1^2+x2^2+x3^2", vt)
    p3 = parse("x1^3+x2^3+x3^3", vt)
    # hand-derived: p2 = e1^2 - 2 e2, p3 = e1^3 - 3 e1 e2 + 3 e3
    assert decompose(p2) == parse("E[1]^2 - 2*E[2]", vt)
    assert decompose(p3) == parse("E[1]^3 - 3*E[1]*E[2] + 3*E[3]", vt)
    assert expand_in_matrix_vars(parse("E[1]^3 - 3*E[1]*E[2] + 3*E[3]", vt)) == p3


def random_e_polynomial(rng: random.Random, vt=VT, max_row_degree=3, terms=4):
    names = [nm for nm in vt.names if nm in vt.elementary]
    out = Polynomial.zero(vt)
    for _ in range(terms):
        mono = [0] * len(vt)
        deg = [0] * vt.shape[0]
        for _ in range(rng.randint(0, 3)):
            nm = rng.choice(names)
            alpha = vt.elementary[nm]
            if all(d + a <= max_row_degree for d, a in zip(deg, alpha)):
                mono[vt.index(nm)] += 1
                deg = [d + a for d, a in zip(deg, alpha)]
        if "L" in vt.names:
            mono[vt.index("L")] = rng.randint(0, 2)
        out = out + Polynomial.monomial(vt, tuple(mono), Fraction(rng.randint(-9, 9), rng.randint(1, 4)))
    return expand_in_matrix_vars(out)


def test_round_trip_random():
    rng = random.Random(11)
    for _ in range(40):
        p = random_e_polynomial(rng)
        assert expand_in_matrix_vars(decompose(p)) == p


def test_round_trip_other_shapes():
    rng = random.Random(5)
    for shape in [(1, 4), (2, 2), (3, 2)]:
        vt = VarTable.matrix(*shape)
        for _ in range(5):
            p = random_e_polynomial(rng, vt, max_row_degree=2)
            assert expand_in_matrix_vars(decompose(p)) == p


def test_decompose_is_unique_below_first_relation():
    # the products of E-variables are linearly independent until multidegree (3,2)
    from cuboidsym.multisym import _graded_system

    for deg in [(2, 2), (3, 1), (1, 3), (3, 0), (4, 0), (2, 1)]:
        system = _graded_system(VT, deg)
        assert system.rank == len(system.candidates)
    for deg in [(3, 2), (2, 3)]:
        system = _graded_system(VT, deg)
        assert (len(system.candidates), system.rank) == (13, 12)


def test_decompose_requires_multidegree_components_to_be_spanned():
    # a symmetric polynomial whose row-2 degree exceeds n still decomposes
    p = P("d1^4+d2^4+d3^4")
    assert expand_in_matrix_vars(decompose(p)) == p


def test_grading_error_propagates_for_plain_tables():
    with pytest.raises(GradingError):
        multidegree(P("x1 + d1"))
