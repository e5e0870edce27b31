from __future__ import annotations

import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from superalg.crossratio import (
    DegenerateQuadruple,
    PointQuadruple,
    apply_linear,
    block_linear,
    cross_ratio,
    cross_ratio_quadric,
    invariance_harness,
    invariants,
    invariants_ber,
    invariants_det,
    invariants_qet,
    inversion,
    moebius_apply,
    quadric_harness,
    quadric_inversion,
    random_quadric_isometry,
    translation,
)
from superalg.sampling import (
    random_element,
    random_invertible,
    random_matrix,
    random_quadruple,
    random_queer,
    random_queer_quadruple,
)
from superalg.scalars import VariableContext
from superalg.supermatrix import BlockSignature, SuperMatrix

seeds = st.integers(0, 2**32 - 1)
KW = dict(terms=2, max_odd_degree=2, coeff_range=2)


def _scalar_quadruple(*vals):
    ctx = VariableContext.create(0, 0)
    sig = BlockSignature(1, 0)
    return PointQuadruple(*(SuperMatrix(ctx, sig, sig, [[v]]) for v in vals))


def _mat(ctx, rows):
    n = len(rows)
    return SuperMatrix(ctx, BlockSignature(n, 0), BlockSignature(n, 0), rows)


# -- cross ratio ---------------------------------------------------------------


def test_scalar_cross_ratio():
    x = cross_ratio(_scalar_quadruple(0, 1, 2, 3))
    assert x.entries[0][0].body() == Fraction(-1, 3)


def test_b_equals_d_gives_identity(rng):
    ctx = VariableContext.create(0, 3)
    q = random_quadruple(rng, ctx, (2, 1), **KW)
    q = PointQuadruple(q.a, q.b, q.c, q.b)
    assert cross_ratio(q) == SuperMatrix.identity(ctx, (2, 1))


def test_degenerate_quadruple_raises():
    with pytest.raises(DegenerateQuadruple):
        cross_ratio(_scalar_quadruple(0, 1, 1, 3))


def _inv11(ctx, m):
    """Inverse of an even (1|1) matrix by the explicit block formula."""
    (a, b), (c, d) = m
    s1 = (a - b * d.inverse() * c).inverse()
    s2 = (d - c * a.inverse() * b).inverse()
    return [[s1, -(a.inverse() * b * s2)], [-(d.inverse() * c * s1), s2]]


def _mul11(x, y):
    return [[x[i][0] * y[0][j] + x[i][1] * y[1][j] for j in range(2)] for i in range(2)]


def test_one_one_cross_ratio_matches_stepwise_oracle(rng):
    ctx = VariableContext.create(0, 3)
    q = random_quadruple(rng, ctx, (1, 1), **KW)
    a, b, c, d = ([list(r) for r in p.entries] for p in q.points)

    def sub(x, y):
        return [[x[i][j] - y[i][j] for j in range(2)] for i in range(2)]

    want = _mul11(_mul11(_mul11(sub(a, b), _inv11(ctx, sub(c, b))), sub(c, d)), _inv11(ctx, sub(a, d)))
    got = cross_ratio(q)
    assert [list(r) for r in got.entries] == want


def test_translation_leaves_cross_ratio_unchanged(rng):
    ctx = VariableContext.create(0, 3)
    q = random_quadruple(rng, ctx, (1, 1), **KW)
    t = translation(random_matrix(rng, ctx, (1, 1), 0, **KW))
    assert cross_ratio(q.map(lambda z: moebius_apply(t, z))) == cross_ratio(q)


def test_scalar_permutation_identity():
    x = cross_ratio(_scalar_quadruple(0, 1, 2, 5)).entries[0][0]
    y = cross_ratio(_scalar_quadruple(0, 5, 2, 1)).entries[0][0]
    assert x * y == x.context.one()


# -- det / Ber / qet collections -----------------------------------------------


def test_det_invariants_scalar():
    inv = invariants_det(_scalar_quadruple(0, 1, 2, 3))
    assert inv.as_strings() == ["-1/3", "-1"]


@pytest.mark.parametrize("m", [1, 2, 3])
def test_det_of_identity_is_binomial(m):
    ctx = VariableContext.create(0, 0)
    eye = SuperMatrix.identity(ctx, (m, 0))
    inv = invariants_det(eye)
    assert [c.body() for c in inv.coefficients] == [comb(m, k) * (-1) ** k for k in range(m + 1)]


def test_det_two_by_two_trace_and_determinant():
    ctx = VariableContext.create(0, 0)
    pts = [_mat(ctx, r) for r in ([[1, 2], [0, 1]], [[0, 0], [0, 0]], [[2, 1], [1, 3]], [[5, 0], [1, 4]])]
    q = PointQuadruple(*pts)
    x = [[e.body() for e in r] for r in cross_ratio(q).entries]
    tr = x[0][0] + x[1][1]
    det = x[0][0] * x[1][1] - x[0][1] * x[1][0]
    assert [c.body() for c in invariants_det(q).coefficients] == [det, -tr, 1]


def test_ber_of_identity_on_one_one():
    ctx = VariableContext.create(0, 2)
    inv = invariants_ber(SuperMatrix.identity(ctx, (1, 1)))
    assert inv.coefficients == [ctx.one(), ctx.zero(), ctx.zero()]


@given(seeds, st.sampled_from([(1, 0), (2, 0)]))
def test_ber_equals_det_on_even_signatures(seed, sig):
    rng = random.Random(seed)
    ctx = VariableContext.create(0, 2)
    q = random_quadruple(rng, ctx, sig, **KW)
    assert invariants_ber(q).coefficients == invariants_det(q).coefficients


@given(seeds)
def test_ber_one_one_matches_schur_series(seed):
    rng = random.Random(seed)
    ctx = VariableContext.create(0, 3)
    x = cross_ratio(random_quadruple(rng, ctx, (1, 1), **KW))
    (a, beta), (gamma, d) = x.entries
    di = d.inverse()
    # Ber(X - l) = (a - l)(d - l)^-1 - beta gamma (d - l)^-2
    want = []
    for k in range(3):
        c = a * di ** (k + 1) - beta * gamma * di ** (k + 2) * (k + 1)
        if k:
            c = c - di ** k
        want.append(c)
    assert invariants_ber(x, 2).coefficients == want


@pytest.mark.parametrize("n", [1, 2])
def test_qet_of_purely_even_points_vanishes(rng, n):
    q = random_queer_quadruple(rng, VariableContext.create(0, 0), n)
    assert all(not c for c in invariants_qet(q).coefficients)


def test_qet_b_equals_d():
    ctx = VariableContext.create(0, 2)
    inv = invariants_qet(SuperMatrix.identity(ctx, (1, 1)), 3)
    assert all(not c for c in inv.coefficients)


@given(seeds)
def test_qet_one_matches_log_series(seed):
    rng = random.Random(seed)
    ctx = VariableContext.create(0, 3)
    x = cross_ratio(random_queer_quadruple(rng, ctx, 1, **KW))
    (a, b), _ = x.entries
    # b is odd, so b^2 = 0 and qet(X - l) = (a - l)^-1 b
    assert not b * b
    ai = a.inverse()
    assert invariants_qet(x, 3).coefficients == [b * ai ** (k + 1) for k in range(4)]


def test_unknown_variant():
    with pytest.raises(ValueError):
        invariants("xyz", _scalar_quadruple(0, 1, 2, 3))


def test_det_rejects_odd_dimensions(rng):
    ctx = VariableContext.create(0, 2)
    with pytest.raises(ValueError):
        invariants_det(SuperMatrix.identity(ctx, (1, 1)))


# -- invariance ----------------------------------------------------------------


def _generators(rng, ctx, sig):
    return [translation(random_matrix(rng, ctx, sig, 0, **KW)),
            block_linear(random_invertible(rng, ctx, sig, **KW), random_invertible(rng, ctx, sig, **KW)),
            inversion(ctx, sig)]


@given(seeds, st.sampled_from([(1, 0), (2, 0), (1, 1), (2, 1)]))
def test_invariance_under_generators(seed, sig):
    rng = random.Random(seed)
    ctx = VariableContext.create(0, 2)
    q = random_quadruple(rng, ctx, sig, **KW)
    variants = ("det", "ber") if not sig[1] else ("ber",)
    rep = invariance_harness(q, _generators(rng, ctx, sig), variants)
    assert rep.ok and rep.checked == 3


@given(seeds, st.sampled_from([1, 2]))
def test_qet_invariance(seed, n):
    rng = random.Random(seed)
    ctx = VariableContext.create(0, 2)
    q = random_queer_quadruple(rng, ctx, n, **KW)
    gens = [translation(random_queer(rng, ctx, n, 0, **KW)),
            block_linear(random_queer(rng, ctx, n, 0, invertible=True, **KW),
                         random_queer(rng, ctx, n, 0, invertible=True, **KW)),
            inversion(ctx, (n, n))]
    rep = invariance_harness(q, gens, ("qet",))
    assert rep.ok and rep.checked == 3


def test_right_multiplication_fixes_cross_ratio(rng):
    ctx = VariableContext.create(0, 2)
    q = random_quadruple(rng, ctx, (1, 1), **KW)
    g = block_linear(SuperMatrix.identity(ctx, (1, 1)), random_invertible(rng, ctx, (1, 1), **KW))
    assert cross_ratio(q.map(lambda z: moebius_apply(g, z))) == cross_ratio(q)


# -- quadric -------------------------------------------------------------------


def test_quadric_one_dimensional_is_square():
    ctx = VariableContext.create(0, 0)
    pts = [[ctx.const(v)] for v in (0, 1, 2, 3)]
    assert cross_ratio_quadric(*pts, [[1]], [0]) == ctx.const(Fraction(1, 9))


def test_quadric_b_equals_d():
    ctx = VariableContext.create(0, 0)
    a, b, c = [ctx.const(1), ctx.const(0)], [ctx.const(0), ctx.const(2)], [ctx.const(3), ctx.const(1)]
    assert cross_ratio_quadric(a, b, c, b, [[1, 0], [0, 1]], [0, 0]) == ctx.one()


def test_quadric_euclidean_square():
    ctx = VariableContext.create(0, 0)
    pts = [[ctx.const(x), ctx.const(y)] for x, y in ((0, 0), (1, 0), (1, 1), (0, 1))]
    assert cross_ratio_quadric(*pts, [[1, 0], [0, 1]], [0, 0]) == ctx.one()


def _super_quadric(m, n):
    size = m + 2 * n
    gram = [[Fraction(0)] * size for _ in range(size)]
    for i in range(m):
        gram[i][i] = Fraction(1)
    for i in range(n):
        gram[m + i][m + n + i] = Fraction(1)
        gram[m + n + i][m + i] = Fraction(-1)
    return gram, [0] * m + [1] * (2 * n)


@given(seeds, st.sampled_from([(2, 0), (3, 0), (1, 1), (2, 1)]))
def test_quadric_invariance(seed, mn):
    rng = random.Random(seed)
    m, n = mn
    ctx = VariableContext.create(0, 3)
    gram, parities = _super_quadric(m, n)
    pts = [[random_element(rng, ctx, p, **KW) for p in parities] for _ in range(4)]
    iso = random_quadric_isometry(rng, m, n)
    rep = quadric_harness(pts, gram, parities, [("iso", lambda x: apply_linear(iso, x)),
                                                ("inv", quadric_inversion(gram, parities))])
    assert rep.ok


def test_isotropic_quadruple_is_degenerate():
    ctx = VariableContext.create(0, 0)
    pts = [[ctx.const(x), ctx.const(y)] for x, y in ((2, 0), (0, 0), (1, 1), (0, 3))]
    with pytest.raises(DegenerateQuadruple):
        cross_ratio_quadric(*pts, [[1, 0], [0, -1]], [0, 0])


def test_quadric_harness_flags_a_non_isometry():
    ctx = VariableContext.create(0, 0)
    pts = [[ctx.const(x), ctx.const(y)] for x, y in ((0, 0), (1, 0), (1, 2), (3, 1))]
    stretch = [[Fraction(2), Fraction(0)], [Fraction(0), Fraction(1)]]
    rep = quadric_harness(pts, [[1, 0], [0, 1]], [0, 0], [("stretch", lambda x: apply_linear(stretch, x))])
    assert not rep.ok
