"""Seeded random generators for scalars and supermatrices (test harnesses)."""

from __future__ import annotations

import random
from fractions import Fraction

from .scalars import SuperPolynomial, VariableContext
from .supermatrix import BlockSignature, SuperMatrix

__all__ = [
    "random_element",
    "random_matrix",
    "random_invertible",
    "random_nilpotent",
    "random_queer",
    "random_quadruple",
    "random_queer_quadruple",
]


def random_element(rng: random.Random, ctx: VariableContext, parity: int | None = None, *,
                   terms: int = 3, max_odd_degree: int = 3, body: bool = True,
                   coeff_range: int = 3) -> SuperPolynomial:
    """Sum of a few random odd monomials with small integer coefficients.

    ``parity`` restricts the monomials; ``body=False`` drops the constant term.
    """
    out: dict = {}
    zero = (0,) * ctx.even_count
    for _ in range(terms):
        k = rng.randint(0, min(max_odd_degree, ctx.odd_count))
        if parity is not None and (k & 1) != parity:
            k = k + 1 if k + 1 <= min(max_odd_degree, ctx.odd_count) else k - 1
            if k < 0 or (k & 1) != parity:
                continue
        if k == 0 and not body:
            continue
        mask = 0
        for i in rng.sample(range(ctx.odd_count), k):
            mask |= 1 << i
        c = rng.randint(-coeff_range, coeff_range)
        if c:
            out[(zero, mask)] = out.get((zero, mask), 0) + Fraction(c)
    return SuperPolynomial(ctx, out)


def _entry(rng, ctx, parity, *, body, **kw):
    return random_element(rng, ctx, parity, body=body, **kw)


def random_matrix(rng: random.Random, ctx: VariableContext, sig, parity: int = 0, *,
                  body: bool = True, **kw) -> SuperMatrix:
    sig = sig if isinstance(sig, BlockSignature) else BlockSignature(*sig)
    data = [[_entry(rng, ctx, (parity + sig.parity(i) + sig.parity(j)) & 1, body=body, **kw)
             for j in range(sig.size)] for i in range(sig.size)]
    return SuperMatrix(ctx, sig, sig, data, parity)


def _invertible_int_matrix(rng, n, coeff_range=2):
    from .linalg import det_laplace
    while True:
        m = [[Fraction(rng.randint(-coeff_range, coeff_range)) for _ in range(n)] for _ in range(n)]
        if n == 0 or det_laplace(m, Fraction(1), Fraction(0)) != 0:
            return m


def random_invertible(rng: random.Random, ctx: VariableContext, sig, **kw) -> SuperMatrix:
    """Even matrix whose body is a random invertible block-diagonal integer matrix."""
    sig = sig if isinstance(sig, BlockSignature) else BlockSignature(*sig)
    soul = random_matrix(rng, ctx, sig, 0, body=False, **kw)
    a = _invertible_int_matrix(rng, sig.even_dim)
    d = _invertible_int_matrix(rng, sig.odd_dim)
    m = sig.even_dim
    data = [list(r) for r in soul.entries]
    for i in range(sig.size):
        for j in range(sig.size):
            if i < m and j < m:
                data[i][j] = data[i][j] + a[i][j]
            elif i >= m and j >= m:
                data[i][j] = data[i][j] + d[i - m][j - m]
    return SuperMatrix(ctx, sig, sig, data, 0)


def random_nilpotent(rng: random.Random, ctx: VariableContext, sig, parity: int = 0, **kw) -> SuperMatrix:
    return random_matrix(rng, ctx, sig, parity, body=False, **kw)


def random_queer(rng: random.Random, ctx: VariableContext, n: int, parity: int = 0, *,
                 invertible: bool = False, nilpotent: bool = False, **kw) -> SuperMatrix:
    """Matrix of q(n) shape ``[[a, b], [b, a]]`` (even) or ``[[a, b], [-b, -a]]`` (odd)."""
    body = not nilpotent
    a = [[random_element(rng, ctx, parity, body=body, **kw) for _ in range(n)] for _ in range(n)]
    b = [[random_element(rng, ctx, parity ^ 1, body=body, **kw) for _ in range(n)] for _ in range(n)]
    if invertible:
        base = _invertible_int_matrix(rng, n)
        a = [[x.soul() + base[i][j] for j, x in enumerate(r)] for i, r in enumerate(a)]
    if parity:
        c = [[-x for x in r] for r in b]
        d = [[-x for x in r] for r in a]
    else:
        c, d = b, a
    return SuperMatrix.from_blocks(ctx, a, b, c, d, parity)


def _nonsingular(blocks) -> bool:
    from .linalg import det_laplace
    return all(det_laplace(b, Fraction(1), Fraction(0)) != 0 for b in blocks if b)


def _body_blocks(x: SuperMatrix, m: int):
    body = x.body_matrix()
    return [[r[:m] for r in body[:m]], [r[m:] for r in body[m:]]]


def _point(rng, ctx, sig, coeff_range=3, **kw) -> SuperMatrix:
    """Even matrix: random soul plus a random integer block-diagonal body."""
    soul = random_matrix(rng, ctx, sig, 0, body=False, **kw)
    m = sig.even_dim
    data = [list(r) for r in soul.entries]
    for i in range(sig.size):
        for j in range(sig.size):
            if (i < m) == (j < m):
                data[i][j] = data[i][j] + rng.randint(-coeff_range, coeff_range)
    return SuperMatrix(ctx, sig, sig, data, 0)


def random_quadruple(rng: random.Random, ctx: VariableContext, sig, *, max_tries: int = 1000, **kw):
    """Four even points with invertible bodies and invertible differences A-B, C-B, C-D, A-D.

    These conditions make the cross ratio, its Ber expansion and the image
    under inversion all well defined.
    """
    from .crossratio import PointQuadruple

    sig = sig if isinstance(sig, BlockSignature) else BlockSignature(*sig)
    m = sig.even_dim
    for _ in range(max_tries):
        pts = [_point(rng, ctx, sig, **kw) for _ in range(4)]
        a, b, c, d = pts
        mats = pts + [a - b, c - b, c - d, a - d]
        if all(_nonsingular(_body_blocks(x, m)) for x in mats):
            return PointQuadruple(a, b, c, d)
    raise RuntimeError("could not sample a non-degenerate quadruple")


def random_queer_quadruple(rng: random.Random, ctx: VariableContext, n: int, *, max_tries: int = 1000, **kw):
    """Like :func:`random_quadruple` with every point of even q(n) shape."""
    from .crossratio import PointQuadruple

    for _ in range(max_tries):
        pts = [random_queer(rng, ctx, n, 0, invertible=True, **kw) for _ in range(4)]
        a, b, c, d = pts
        mats = pts + [a - b, c - b, c - d, a - d]
        if all(_nonsingular(_body_blocks(x, n)[:1]) for x in mats):
            return PointQuadruple(a, b, c, d)
    raise RuntimeError("could not sample a non-degenerate quadruple")
