from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import BUILDER_CASES, DEPTH_ONE_CASES, classical_sdim, depth_one_dims
from superalg.liealg import (
    DiagonalDerivation,
    GradingError,
    LieSuperAlgebra,
    NotClosed,
    UnsupportedParameters,
    abelian,
    build_classical,
    change_basis,
    check_axioms,
    from_matrices,
    grade_by_element,
    killing_form,
    subalgebra_closure,
    depth_one_grading,
    trace_form,
)
from superalg.sampling import random_element
from superalg.scalars import VariableContext

seeds = st.integers(0, 2**32 - 1)


def _sl2():
    g = build_classical("sl", 2, 0)
    return g, {n: i for i, n in enumerate(g.names)}


def test_abelian_bracket_is_zero():
    g = abelian([0, 1, 1])
    assert g.bracket({0: 1, 1: 2}, {1: 1, 2: 3}) == {}
    assert check_axioms(g).ok


def test_sl2_relations():
    g, ix = _sl2()
    e, f, h = ix["E1,2"], ix["E2,1"], ix["E1,1-E2,2"]
    assert g.bracket({h: 1}, {e: 1}) == {e: 2}
    assert g.bracket({h: 1}, {f: 1}) == {f: -2}
    assert g.bracket({e: 1}, {f: 1}) == {h: 1}


def test_gl11_odd_bracket():
    g = build_classical("gl", 1, 1)
    ix = {n: i for i, n in enumerate(g.names)}
    assert g.bracket({ix["E1,2"]: 1}, {ix["E2,1"]: 1}) == {ix["E1,1"]: 1, ix["E2,2"]: 1}


def test_gl21_passes():
    assert check_axioms(build_classical("gl", 2, 1)).ok


def test_perturbed_gl2_fails_with_triple():
    g = build_classical("gl", 2, 0).perturbed(0, 1, 1)
    rep = check_axioms(g)
    assert not rep.ok
    w = rep.witness()
    assert w["kind"] == "jacobi_violations"
    assert {"i", "j", "k", "residual"} <= set(w["detail"])


def test_antisymmetry_violation_is_reported():
    g = LieSuperAlgebra(("a", "b"), (0, 0), {(0, 1): {0: Fraction(1)}})
    rep = check_axioms(g)
    assert rep.antisymmetry_violations and not rep.ok


@pytest.mark.parametrize("series, m, n", BUILDER_CASES)
def test_builders_pass_jacobi_and_have_classical_dims(series, m, n):
    g = build_classical(series, m, n)
    assert g.sdim == classical_sdim(series, m, n)
    assert check_axioms(g).ok


@pytest.mark.parametrize("series, m, n, sdim", [("gl", 1, 1, (2, 2)), ("q", 2, None, (4, 4)),
                                                ("osp", 1, 1, (3, 2))])
def test_builder_examples(series, m, n, sdim):
    assert build_classical(series, m, n).sdim == sdim


def test_split_osp_is_isomorphic_in_dimension():
    assert build_classical("osp", 4, 1, split=True).sdim == build_classical("osp", 4, 1).sdim


@pytest.mark.parametrize("args", [("gl", 5, 0), ("xx", 1, 1), ("psl", 2, 3), ("q", 0, None)])
def test_unsupported_parameters(args):
    with pytest.raises(UnsupportedParameters):
        build_classical(*args)


@pytest.mark.parametrize("series, params, variant", DEPTH_ONE_CASES)
def test_depth_one_dimensions(series, params, variant):
    g, rep = depth_one_grading(series, params, variant)
    g0, gm1 = depth_one_dims(series, params, variant)
    assert rep.depth == 1
    assert tuple(rep.dims[0]) == g0
    assert tuple(rep.dims[-1]) == gm1
    assert check_axioms(g).ok


def test_pe_gradings_distinguish_sym_and_alt():
    _, s2 = depth_one_grading("pe", (3, 1), "S2")
    _, l2 = depth_one_grading("pe", (3, 1), "L2")
    assert s2.dims[-1] == (2, 2)
    assert l2.dims[-1] == (2, 3)


def test_peq_has_length_two():
    _, rep = depth_one_grading("pe", (3,))
    assert rep.length == 2


def test_gl_block_grading_report():
    g = build_classical("gl", 3, 2)
    _, rep = grade_by_element(g, DiagonalDerivation([1, 0, 0, 1, 0]))
    assert (rep.depth, rep.length) == (1, 1)
    assert rep.dims[0] == (1 + 1 + 4 + 1, 2 * 1 * 1 + 2 * 2 * 1)


def test_grading_by_zero_element_is_trivial():
    g = abelian([0, 1])
    graded, rep = grade_by_element(g, {})
    assert graded.degrees == (0, 0)
    assert rep.dims == {0: (1, 1)}


def test_grading_by_element_of_algebra():
    g, ix = _sl2()
    graded, rep = grade_by_element(g, {ix["E1,1-E2,2"]: Fraction(1, 2)})
    assert rep.dims == {-1: (1, 0), 0: (1, 0), 1: (1, 0)}


def test_non_diagonal_element_needs_rebase():
    g, ix = _sl2()
    h = {ix["E1,2"]: 1, ix["E2,1"]: 1}
    with pytest.raises(GradingError):
        grade_by_element(g, h)
    _, rep = grade_by_element(g, h, rebase=True)
    assert sorted(rep.dims) == [-2, 0, 2]


def test_subalgebra_closure_examples():
    g, ix = _sl2()
    assert len(subalgebra_closure(g, [{ix["E1,2"]: 1}])) == 1
    assert len(subalgebra_closure(g, [{ix["E1,2"]: 1}, {ix["E2,1"]: 1}])) == 3
    assert subalgebra_closure(g, []) == []


def test_from_matrices_detects_non_closure():
    e = {(0, 1): Fraction(1)}
    f = {(1, 0): Fraction(1)}
    with pytest.raises(NotClosed):
        from_matrices([e, f], ["e", "f"], (2, 0))


def test_change_basis_preserves_axioms():
    g, _ = _sl2()
    h = change_basis(g, [{0: 1, 1: 1}, {0: 1, 1: -1}, {2: 1}])
    assert check_axioms(h).ok


def test_invariant_forms_of_sl2():
    g, ix = _sl2()
    h = ix["E1,1-E2,2"]
    assert killing_form(g)[h][h] == 8
    assert trace_form(g)[h][h] == 2


@given(seeds, st.sampled_from([("gl", 1, 1), ("sl", 2, 1), ("osp", 1, 1), ("q", 2, None), ("pe", 2, None)]))
def test_lambda_point_jacobi(seed, case):
    """Super Jacobi for brackets of even Grassmann-valued points."""
    rng = random.Random(seed)
    g = build_classical(*case)
    ctx = VariableContext.create(0, 4)

    def point():
        return [random_element(rng, ctx, p, terms=2) for p in g.parities]

    x, y, z = point(), point(), point()
    br = g.bracket_points
    total = [ctx.zero()] * g.dim
    for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
        total = [t + v for t, v in zip(total, br(a, br(b, c)))]
    assert not any(total)
    assert br(x, y) == [-v for v in br(y, x)]
