from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from superalg.sampling import random_invertible, random_matrix, random_nilpotent, random_queer
from superalg.scalars import NotInvertible, VariableContext
from superalg.supermatrix import (
    BlockSignature,
    ShapeError,
    SuperMatrix,
    berezinian,
    berezinian_dual,
    queer_determinant,
    queer_determinant_series,
    queer_trace,
    st_sign,
    supertrace,
)

seeds = st.integers(0, 2**32 - 1)
signatures = st.sampled_from([(1, 0), (0, 1), (1, 1), (2, 1), (1, 2), (2, 2)])
S11 = BlockSignature(1, 1)


def _m(ctx, rows, data, parity=0):
    return SuperMatrix(ctx, BlockSignature(*rows), BlockSignature(*rows), data, parity)


# -- examples ------------------------------------------------------------------


def test_gl11_bracket_of_matrix_units(ctx4):
    e11 = SuperMatrix.unit(ctx4, S11, 0, 0)
    e12 = SuperMatrix.unit(ctx4, S11, 0, 1)
    assert e11.bracket(e12) == e12


def test_odd_anticommutator_in_mat11(ctx4):
    e12 = SuperMatrix.unit(ctx4, S11, 0, 1)
    e21 = SuperMatrix.unit(ctx4, S11, 1, 0)
    e11 = SuperMatrix.unit(ctx4, S11, 0, 0)
    e22 = SuperMatrix.unit(ctx4, S11, 1, 1)
    assert e12.jordan(e21) == e11 - e22


def test_even_jordan_minus_swap_is_zero(ctx4, rng):
    x = random_matrix(rng, ctx4, (2, 1), 0)
    y = random_matrix(rng, ctx4, (2, 1), 0)
    assert x.jordan(y) - y.jordan(x) == SuperMatrix.zero(ctx4, (2, 1))


def test_supertranspose_of_diagonal(ctx4):
    x = _m(ctx4, (1, 1), [[2, 0], [0, 3]])
    assert x.supertranspose() == x


def test_supertranspose_off_diagonal_signs(ctx4):
    xi, eta = ctx4.odd(0), ctx4.odd(1)
    x = _m(ctx4, (1, 1), [[0, xi], [eta, 0]])
    # even X: [[A, B], [C, D]]^st = [[A^t, -C^t], [B^t, D^t]]
    assert x.supertranspose() == _m(ctx4, (1, 1), [[0, -eta], [xi, 0]])
    assert st_sign(0, 1, 0) == -1 and st_sign(1, 0, 0) == 1


def test_supertrace_examples(ctx4):
    assert supertrace(_m(ctx4, (1, 1), [[2, 0], [0, 3]])) == ctx4.const(-1)
    assert supertrace(SuperMatrix.unit(ctx4, S11, 0, 1)) == ctx4.zero()


def test_berezinian_examples(ctx4):
    xi, eta = ctx4.odd(0), ctx4.odd(1)
    assert berezinian(_m(ctx4, (1, 1), [[6, 0], [0, 3]])) == ctx4.const(2)
    x = _m(ctx4, (1, 1), [[1, xi], [eta, 1]])
    y = _m(ctx4, (1, 1), [[1, eta], [xi, 1]])
    assert berezinian(x) == 1 - xi * eta
    assert berezinian(y) == 1 - eta * xi
    assert berezinian(x @ y) == berezinian(x) * berezinian(y) == ctx4.one()


def test_berezinian_rejects_odd_and_singular(ctx4):
    odd = SuperMatrix.unit(ctx4, S11, 0, 1)
    with pytest.raises(ValueError):
        berezinian(odd)
    with pytest.raises(NotInvertible):
        berezinian(_m(ctx4, (1, 1), [[1, 0], [0, ctx4.odd(0) * ctx4.odd(1)]]))


def test_queer_trace_examples(ctx4):
    one, zero = ctx4.one(), ctx4.zero()
    eye2 = [[one, zero], [zero, one]]
    zeros = [[zero, zero], [zero, zero]]
    # odd q-shape is [[a, b], [-b, -a]]
    x = SuperMatrix.from_blocks(ctx4, zeros, eye2, [[-one, zero], [zero, -one]], zeros, parity=1)
    assert queer_trace(x) == ctx4.const(2)
    y = SuperMatrix.from_blocks(ctx4, eye2, zeros, zeros, eye2)
    assert queer_trace(y) == ctx4.zero()


def test_queer_trace_rejects_other_shapes(ctx4, rng):
    with pytest.raises(ShapeError):
        queer_trace(random_matrix(rng, ctx4, (1, 1), 0, body=True, terms=4))


def test_queer_determinant_examples(ctx4):
    t1 = ctx4.odd(0)
    x = _m(ctx4, (1, 1), [[1, t1], [t1, 1]])
    assert queer_determinant(x) == t1
    even = _m(ctx4, (2, 2), [[2, 1, 0, 0], [1, 1, 0, 0], [0, 0, 2, 1], [0, 0, 1, 1]])
    assert queer_determinant(even) == ctx4.zero()
    assert queer_determinant(SuperMatrix.identity(ctx4, (2, 2))) == ctx4.zero()


def test_inverse_exp_log_examples(ctx4):
    xi = ctx4.odd(0)
    x = _m(ctx4, (1, 1), [[1, xi], [0, 1]])
    assert x.inverse() == _m(ctx4, (1, 1), [[1, -xi], [0, 1]])
    assert SuperMatrix.zero(ctx4, (2, 1)).exp_nilpotent() == SuperMatrix.identity(ctx4, (2, 1))


def test_parity_mismatch_rejected(ctx4):
    with pytest.raises(ValueError):
        _m(ctx4, (1, 1), [[ctx4.odd(0), 0], [0, 1]])


# -- properties ----------------------------------------------------------------


@given(seeds, signatures)
def test_supertrace_kills_brackets(seed, sig):
    rng = random.Random(seed)
    ctx = VariableContext.create(0, 5)
    px, py = rng.randint(0, 1), rng.randint(0, 1)
    x = random_matrix(rng, ctx, sig, px)
    y = random_matrix(rng, ctx, sig, py)
    assert supertrace(x.bracket(y)) == ctx.zero()


@given(seeds, signatures)
def test_supertranspose_contract(seed, sig):
    rng = random.Random(seed)
    ctx = VariableContext.create(0, 5)
    px, py = rng.randint(0, 1), rng.randint(0, 1)
    x = random_matrix(rng, ctx, sig, px)
    y = random_matrix(rng, ctx, sig, py)
    sign = -1 if px and py else 1
    assert (x @ y).supertranspose() == (y.supertranspose() @ x.supertranspose()).scale(sign)
    assert supertrace(x.supertranspose()) == supertrace(x)


def test_unsigned_transpose_breaks_contract(rng):
    ctx = VariableContext.create(0, 4)
    bad = 0
    for _ in range(10):
        x = random_matrix(rng, ctx, (1, 1), 0)
        y = random_matrix(rng, ctx, (1, 1), 0)

        def plain(z):
            (a, b), (c, d) = z.entries
            return _m(ctx, (1, 1), [[a, c], [b, d]])

        bad += plain(x @ y) != plain(y) @ plain(x)
    assert bad > 0


def test_mirrored_convention_also_satisfies_contract(rng):
    """Moving the sign to the other off-diagonal block passes too; the choice is a convention."""
    ctx = VariableContext.create(0, 4)
    for _ in range(10):
        x = random_matrix(rng, ctx, (1, 1), 0)
        y = random_matrix(rng, ctx, (1, 1), 0)

        def mirrored(z):
            (a, b), (c, d) = z.entries
            return _m(ctx, (1, 1), [[a, c], [-b, d]])

        assert mirrored(x @ y) == mirrored(y) @ mirrored(x)


@given(seeds, signatures)
def test_berezinian_multiplicative(seed, sig):
    rng = random.Random(seed)
    ctx = VariableContext.create(0, 5)
    x = random_invertible(rng, ctx, sig)
    y = random_invertible(rng, ctx, sig)
    assert berezinian(x @ y) == berezinian(x) * berezinian(y)


@given(seeds, signatures)
def test_berezinian_schur_forms_agree(seed, sig):
    rng = random.Random(seed)
    ctx = VariableContext.create(0, 5)
    x = random_invertible(rng, ctx, sig)
    assert berezinian(x) == berezinian_dual(x)


@given(seeds, signatures)
def test_berezinian_of_exp_is_exp_of_supertrace(seed, sig):
    rng = random.Random(seed)
    ctx = VariableContext.create(0, 4)
    x = random_nilpotent(rng, ctx, sig, 0)
    assert berezinian(x.exp_nilpotent()) == supertrace(x).exp()


@given(seeds, st.sampled_from([1, 2]))
def test_queer_trace_kills_brackets(seed, n):
    rng = random.Random(seed)
    ctx = VariableContext.create(0, 4)
    x = random_queer(rng, ctx, n, rng.randint(0, 1))
    y = random_queer(rng, ctx, n, rng.randint(0, 1))
    assert queer_trace(x.bracket(y)) == ctx.zero()


@given(seeds, st.sampled_from([1, 2]))
def test_qet_additive(seed, n):
    rng = random.Random(seed)
    ctx = VariableContext.create(0, 5)
    x = random_queer(rng, ctx, n, 0, invertible=True)
    y = random_queer(rng, ctx, n, 0, invertible=True)
    assert queer_determinant(x @ y) == queer_determinant(x) + queer_determinant(y)


@given(seeds, st.sampled_from([1, 2]))
def test_qet_of_exp_is_qtr(seed, n):
    rng = random.Random(seed)
    ctx = VariableContext.create(0, 5)
    z = random_queer(rng, ctx, n, 0, nilpotent=True)
    assert queer_determinant(z.exp_nilpotent()) == queer_trace(z)


@given(seeds, st.sampled_from([1, 2]))
def test_qet_matches_closed_series(seed, n):
    rng = random.Random(seed)
    ctx = VariableContext.create(0, 5)
    x = random_queer(rng, ctx, n, 0, invertible=True)
    assert queer_determinant(x) == queer_determinant_series(x)


@given(seeds, signatures)
def test_exp_log_round_trip(seed, sig):
    rng = random.Random(seed)
    ctx = VariableContext.create(0, 4)
    x = random_nilpotent(rng, ctx, sig, 0)
    assert x.exp_nilpotent().log_unipotent() == x


@given(seeds, signatures)
def test_inverse(seed, sig):
    rng = random.Random(seed)
    ctx = VariableContext.create(0, 5)
    x = random_invertible(rng, ctx, sig)
    assert x @ x.inverse() == SuperMatrix.identity(ctx, sig)
