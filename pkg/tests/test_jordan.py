from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from superalg.jordan import (
    GradingMismatch,
    JordanSuperAlgebra,
    check_jordan_identity,
    check_supercommutative,
    jordan_bilinear,
    jordan_from_graded,
    jordan_generalized_depth_d,
    jordan_hamiltonian_odd,
    jordan_matrix,
)
from superalg.liealg import DiagonalDerivation, build_classical, grade_by_element, depth_one_grading

seeds = st.integers(0, 2**32 - 1)


def _graded_sl2():
    g = build_classical("sl", 2, 0)
    ix = {n: i for i, n in enumerate(g.names)}
    graded, _ = grade_by_element(g, {ix["E1,1-E2,2"]: Fraction(1, 2)})
    return graded, ix


def _graded_gl22():
    g = build_classical("gl", 2, 2)
    graded, _ = grade_by_element(g, DiagonalDerivation([1, 0, 1, 0]))
    return graded, {n: i for i, n in enumerate(g.names)}


def _restrict(J, names):
    """Structure constants of J keyed by basis names."""
    return {(J.names[i], J.names[j]): {J.names[k]: c for k, c in v.items()} for (i, j), v in J.table.items()}


# -- graded construction -------------------------------------------------------


def test_sl2_gives_one_dimensional_algebra():
    g, ix = _graded_sl2()
    J = jordan_from_graded(g, {ix["E1,2"]: 1})
    assert J.names == ("E2,1",)
    assert J.table == {(0, 0): {0: Fraction(-2)}}
    assert check_jordan_identity(J).ok


def test_zero_p_gives_zero_product():
    g, _ = _graded_sl2()
    assert jordan_from_graded(g, {}).table == {}


def test_gl22_block_grading_matches_mat11():
    g, ix = _graded_gl22()
    p = {ix["E1,2"]: 1, ix["E3,4"]: 1}
    J = jordan_from_graded(g, p)
    mat = jordan_matrix("mat", 1, 1)
    # g_-1 = {E2,1, E2,3, E4,1, E4,3} ~ 2x2 block of rows (2,4), columns (1,3)
    iso = {"E2,1": "E1,1", "E2,3": "E1,2", "E4,1": "E2,1", "E4,3": "E2,2"}
    got = {(iso[a], iso[b]): {iso[k]: c for k, c in v.items()} for (a, b), v in _restrict(J, J.names).items()}
    want = _restrict(mat, mat.names)
    scale = got[("E1,1", "E1,1")]["E1,1"] / want[("E1,1", "E1,1")]["E1,1"]
    assert scale != 0
    assert got == {k: {n: scale * c for n, c in v.items()} for k, v in want.items()}


def test_odd_p_is_rejected():
    g, ix = _graded_gl22()
    with pytest.raises(GradingMismatch):
        jordan_from_graded(g, {ix["E1,4"]: 1})


def test_ungraded_algebra_is_rejected():
    with pytest.raises(GradingMismatch):
        jordan_from_graded(build_classical("sl", 2, 0), {0: 1})


@given(seeds)
def test_graded_product_is_linear_in_p(seed):
    rng = random.Random(seed)
    g, ix = _graded_gl22()
    even_top = [ix[n] for n in ("E1,2", "E3,4")]
    p1 = {i: Fraction(rng.randint(-3, 3)) for i in even_top}
    p2 = {i: Fraction(rng.randint(-3, 3)) for i in even_top}
    s = {i: p1[i] + p2[i] for i in even_top}
    t1, t2, ts = (jordan_from_graded(g, p) for p in (p1, p2, s))
    for i in range(t1.dim):
        for j in range(t1.dim):
            a, b = t1.q(i, j), t2.q(i, j)
            added = {k: a.get(k, 0) + b.get(k, 0) for k in set(a) | set(b)}
            assert ts.q(i, j) == {k: v for k, v in added.items() if v}


@pytest.mark.parametrize("case", [("sl", (2, 1, 1, 0), ""), ("osp", (4, 1), ""), ("pe", (3, 1), "L2"),
                                  ("psl", (2, 1), "")])
def test_graded_jordan_identity_on_depth_one_gradings(case):
    g, _ = depth_one_grading(*case)
    top = [i for i in range(g.dim) if g.degrees[i] == 1 and g.parities[i] == 0]
    p = {i: Fraction(k + 1) for k, i in enumerate(top)}
    J = jordan_from_graded(g, p)
    assert not check_supercommutative(J)
    assert check_jordan_identity(J).ok


def test_depth_one_generalised_product_restricts():
    g, ix = _graded_gl22()
    p = {ix["E1,2"]: 1, ix["E3,4"]: 1}
    J1 = jordan_from_graded(g, p)
    J2, rep = jordan_generalized_depth_d(g, p, include_zero=False)
    assert J2.table == J1.table and rep.closed


def test_generalised_zero_p():
    g, _ = _graded_gl22()
    J, rep = jordan_generalized_depth_d(g, {})
    assert J.table == {} and rep.supercommutative and rep.jordan_identity


def test_gl3_two_step_grading_report():
    g, _ = grade_by_element(build_classical("gl", 3, 0), DiagonalDerivation([1, 0, -1]))
    ix = {n: i for i, n in enumerate(g.names)}
    p = {ix["E1,2"]: 1, ix["E2,3"]: 1}
    J, rep = jordan_generalized_depth_d(g, p)
    assert set(rep.degrees) == {-2, -1, 0}
    assert isinstance(rep.jordan_identity, bool)
    assert J.dim == 6


# -- matrix and form algebras --------------------------------------------------


def test_mat11_odd_product():
    J = jordan_matrix("mat", 1, 1)
    ix = {n: i for i, n in enumerate(J.names)}
    assert J.product({ix["E1,2"]: 1}, {ix["E2,1"]: 1}) == {ix["E1,1"]: 1, ix["E2,2"]: -1}


def test_mat10_doubles_products():
    J = jordan_matrix("mat", 1, 0)
    assert J.table == {(0, 0): {0: Fraction(2)}}
    assert J.unit == {0: Fraction(1, 2)}


def _jordan_sdim(kind, m, n):
    if kind == "mat":
        return (m * m + n * n, 2 * m * n)
    if kind in ("q", "pe"):
        return (m * m, m * m)
    # symmetric part of the orthogonal block, skew-Hamiltonian part of the symplectic one
    return (m * (m + 1) // 2 + n * (2 * n - 1), 2 * m * n)


@pytest.mark.parametrize("kind, m, n", [("mat", 1, 1), ("mat", 2, 1), ("mat", 3, 0), ("q", 1, 0), ("q", 2, 0),
                                        ("q", 3, 0), ("osp", 1, 1), ("osp", 2, 1), ("osp", 3, 0), ("pe", 1, 0),
                                        ("pe", 2, 0), ("pe", 3, 0)])
def test_matrix_jordan_algebras(kind, m, n):
    J = jordan_matrix(kind, m, n)
    assert J.sdim == _jordan_sdim(kind, m, n)
    assert not check_supercommutative(J)
    assert check_jordan_identity(J).ok


@pytest.mark.parametrize("kind, m", [("mat", 2), ("q", 2)])
def test_parity_additivity(kind, m):
    J = jordan_matrix(kind, m, 1 if kind == "mat" else 0)
    for (i, j), v in J.table.items():
        for k in v:
            assert J.parities[k] == (J.parities[i] + J.parities[j]) % 2


def test_bilinear_examples():
    J = jordan_bilinear(2, 0)
    e, x2 = 0, 1
    assert J.product({e: 1}, {e: 1}) == {e: 1}
    for i in range(J.dim):
        assert J.product({e: 1}, {i: 1}) == {i: 1}
    assert J.product({x2: 1}, {x2: 1}) == {e: -1}


@pytest.mark.parametrize("m, n", [(1, 0), (2, 0), (3, 0), (1, 1), (2, 1), (3, 1), (1, 2)])
def test_bilinear_jordan_identity(m, n):
    J = jordan_bilinear(m, n)
    assert not check_supercommutative(J)
    assert check_jordan_identity(J).ok


# -- odd Hamiltonian algebra ---------------------------------------------------


def test_hamiltonian_bracket_entries():
    H = jordan_hamiltonian_odd(2)
    ix = {n: i for i, n in enumerate(H.names)}
    assert H.product({ix["Pi(t1)"]: 1}, {ix["Pi(t2)"]: 1}) == {ix["1"]: 1}
    for f in ("1", "t1", "t2", "t1t2"):
        assert H.product({ix[f"Pi({f})"]: 1}, {ix["Pi(1)"]: 1}) == {}


@pytest.mark.parametrize("m", [2, 3])
def test_hamiltonian_supercommutative_and_jordan(m):
    H = jordan_hamiltonian_odd(m)
    assert H.dim == 2 ** (m + 1)
    assert not check_supercommutative(H)
    assert check_jordan_identity(H).ok


def test_literal_odd_table_is_not_parity_additive():
    H = jordan_hamiltonian_odd(2, variant="odd")
    assert check_supercommutative(H)


# -- checker -------------------------------------------------------------------


def test_corrupted_table_fails_with_witness():
    J = jordan_matrix("mat", 1, 1).perturbed(0, 0, 0)
    rep = check_jordan_identity(J)
    assert not rep.ok
    assert rep.witness


def test_noncommutative_table_is_caught():
    J = JordanSuperAlgebra(("a", "b"), (0, 0), {(0, 1): {0: Fraction(1)}})
    assert check_supercommutative(J)
    assert not check_jordan_identity(J).ok


@given(seeds)
def test_rescaled_mat10_products_stay_jordan(seed):
    rng = random.Random(seed)
    delta = Fraction(rng.choice([-2, -1, 1, 2, 3]))
    J = jordan_matrix("mat", 1, 0).perturbed(0, 0, 0, delta)
    # a scaled product x o x = c x stays Jordan; the identity must still pass
    assert check_jordan_identity(J).ok


def test_non_jordan_commutative_algebra_fails():
    # x o x = y, y o y = x is commutative but not Jordan
    J = JordanSuperAlgebra(("x", "y"), (0, 0), {(0, 0): {1: Fraction(1)}, (1, 1): {0: Fraction(1)}})
    assert not check_supercommutative(J)
    assert not check_jordan_identity(J).ok
