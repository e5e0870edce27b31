"""Supermatrices over :class:`SuperPolynomial` and their traces and determinants.

Rows and columns are split by a :class:`BlockSignature` ``(m|n)``: the first
``m`` indices are even, the last ``n`` odd.  A matrix of parity ``p`` has entry
``(i, j)`` of parity ``p + p(i) + p(j)``.  Products are plain matrix products;
the parity rule makes them compatible with the super structure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .linalg import SingularPivot, det_bareiss, gauss_jordan_inverse
from .scalars import (
    EVEN,
    INHOMOGENEOUS,
    ODD,
    ContextMismatch,
    NotInvertible,
    SuperPolynomial,
    VariableContext,
    as_fraction,
)

__all__ = [
    "BlockSignature",
    "SuperMatrix",
    "SignatureMismatch",
    "ShapeError",
    "berezinian",
    "berezinian_dual",
    "supertrace",
    "queer_trace",
    "queer_determinant",
    "queer_determinant_series",
    "is_queer_shape",
    "st_sign",
]


class SignatureMismatch(ValueError):
    pass


class ShapeError(ValueError):
    pass


@dataclass(frozen=True)
class BlockSignature:
    even_dim: int
    odd_dim: int

    def __post_init__(self):
        if self.even_dim < 0 or self.odd_dim < 0:
            raise ValueError("block dimensions must be non-negative")

    @property
    def size(self) -> int:
        return self.even_dim + self.odd_dim

    def parity(self, i: int) -> int:
        return EVEN if i < self.even_dim else ODD

    def __str__(self):
        return f"({self.even_dim}|{self.odd_dim})"


def st_sign(i_parity: int, j_parity: int, parity: int) -> int:
    """Sign with which ``X[j][i]`` enters ``X^st[i][j]``.

    ``(-1)^((p(i) + p(j)) * (p(j) + p(X)))``: for even ``X`` this gives
    ``[[A^t, -C^t], [B^t, D^t]]``.  This is the convention for which
    ``(XY)^st = (-1)^(p(X)p(Y)) Y^st X^st`` and ``str(X^st) = str(X)`` hold
    with supercommutative entries.
    """
    return -1 if ((i_parity + j_parity) * (j_parity + parity)) & 1 else 1


class SuperMatrix:
    """Immutable block matrix over a supercommutative algebra."""

    __slots__ = ("context", "rows", "cols", "entries", "parity")

    def __init__(self, context: VariableContext, rows: BlockSignature, cols: BlockSignature,
                 entries: Sequence[Sequence], parity=EVEN, check: bool = True):
        self.context = context
        self.rows = rows
        self.cols = cols
        grid = []
        for row in entries:
            grid.append(tuple(_lift(context, x) for x in row))
        self.entries = tuple(grid)
        self.parity = parity
        if check:
            self._validate()

    def _validate(self):
        if len(self.entries) != self.rows.size or any(len(r) != self.cols.size for r in self.entries):
            raise SignatureMismatch("entry grid does not match block signature")
        if self.parity is INHOMOGENEOUS:
            return
        for i, row in enumerate(self.entries):
            for j, x in enumerate(row):
                if x.context != self.context:
                    raise ContextMismatch("entry from a different context")
                if x.is_zero():
                    continue
                want = (self.parity + self.rows.parity(i) + self.cols.parity(j)) & 1
                if x.parity() != want:
                    raise ValueError(
                        f"entry ({i},{j}) has parity {x.parity()}, expected {want} for a "
                        f"{'odd' if self.parity else 'even'} matrix")

    # constructors -------------------------------------------------------

    @classmethod
    def build(cls, context, rows, cols=None, data=None, parity=EVEN):
        rows = _sig(rows)
        cols = rows if cols is None else _sig(cols)
        return cls(context, rows, cols, data, parity)

    @classmethod
    def zero(cls, context, rows, cols=None, parity=EVEN):
        rows = _sig(rows)
        cols = rows if cols is None else _sig(cols)
        z = context.zero()
        return cls(context, rows, cols, [[z] * cols.size for _ in range(rows.size)], parity, check=False)

    @classmethod
    def identity(cls, context, sig):
        sig = _sig(sig)
        one, z = context.one(), context.zero()
        return cls(context, sig, sig, [[one if i == j else z for j in range(sig.size)] for i in range(sig.size)],
                   EVEN, check=False)

    @classmethod
    def unit(cls, context, sig, i, j):
        """Matrix unit ``E_ij`` (parity p(i) + p(j))."""
        sig = _sig(sig)
        one, z = context.one(), context.zero()
        data = [[one if (a, b) == (i, j) else z for b in range(sig.size)] for a in range(sig.size)]
        return cls(context, sig, sig, data, (sig.parity(i) + sig.parity(j)) & 1, check=False)

    @classmethod
    def from_blocks(cls, context, a, b, c, d, parity=EVEN):
        m, n = len(a), len(d)
        data = [list(a[i]) + list(b[i]) for i in range(m)] + [list(c[i]) + list(d[i]) for i in range(n)]
        sig = BlockSignature(m, n)
        return cls(context, sig, sig, data, parity)

    # block access -------------------------------------------------------

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def block(self, name: str):
        m, p = self.rows.even_dim, self.cols.even_dim
        r = range(0, m) if name in "AB" else range(m, self.rows.size)
        c = range(0, p) if name in "AC" else range(p, self.cols.size)
        return [[self.entries[i][j] for j in c] for i in r]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def map(self, fn: Callable[[SuperPolynomial], SuperPolynomial], parity=None) -> SuperMatrix:
        return SuperMatrix(self.context, self.rows, self.cols,
                           [[fn(x) for x in r] for r in self.entries],
                           self.parity if parity is None else parity, check=False)

    def body_matrix(self) -> list[list[Fraction]]:
        return [[x.body() for x in r] for r in self.entries]

    def is_nilpotent(self) -> bool:
        return all(x.is_nilpotent() for r in self.entries for x in r)

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.entries for x in r)

    # algebra ------------------------------------------------------------

    def _same_shape(self, other: SuperMatrix):
        if not isinstance(other, SuperMatrix):
            raise TypeError("expected a SuperMatrix")
        if other.context != self.context:
            raise ContextMismatch("matrices over different contexts")
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise SignatureMismatch(f"signatures {self.rows}x{self.cols} and {other.rows}x{other.cols} differ")

    def __add__(self, other: SuperMatrix) -> SuperMatrix:
        self._same_shape(other)
        parity = self.parity if self.parity == other.parity else INHOMOGENEOUS
        return SuperMatrix(self.context, self.rows, self.cols,
                           [[x + y for x, y in zip(r, s)] for r, s in zip(self.entries, other.entries)],
                           parity, check=False)

    def __neg__(self):
        return self.map(lambda x: -x)

    def __sub__(self, other: SuperMatrix) -> SuperMatrix:
        return self + (-other)

    def scale(self, c) -> SuperMatrix:
        """Left multiplication by a scalar (number or even/odd SuperPolynomial)."""
        if isinstance(c, SuperPolynomial):
            cp = c.parity()
            if cp is INHOMOGENEOUS:
                raise ValueError("scalar must be homogeneous")
            parity = INHOMOGENEOUS if self.parity is INHOMOGENEOUS else (self.parity + cp) & 1
            # row sign (-1)^(p(c) p(i)) keeps scalar multiplication compatible with products
            data = [[-(c * x) if cp and self.rows.parity(i) else c * x for x in r]
                    for i, r in enumerate(self.entries)]
            return SuperMatrix(self.context, self.rows, self.cols, data, parity, check=False)
        c = as_fraction(c)
        return self.map(lambda x: x.scale(c))

    def __matmul__(self, other: SuperMatrix) -> SuperMatrix:
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        if other.context != self.context:
            raise ContextMismatch("matrices over different contexts")
        if self.cols != other.rows:
            raise SignatureMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        n = self.cols.size
        z = self.context.zero()
        data = []
        for r in self.entries:
            row = []
            for j in range(other.cols.size):
                acc = z
                for k in range(n):
                    a = r[k]
                    if a:
                        b = other.entries[k][j]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            data.append(row)
        if self.parity is INHOMOGENEOUS or other.parity is INHOMOGENEOUS:
            parity = INHOMOGENEOUS
        else:
            parity = (self.parity + other.parity) & 1
        return SuperMatrix(self.context, self.rows, other.cols, data, parity, check=False)

    def __mul__(self, other):
        if isinstance(other, SuperMatrix):
            return self @ other
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def _homogeneous(self, what):
        if self.parity is INHOMOGENEOUS:
            raise ValueError(f"{what} requires a homogeneous matrix")

    def bracket(self, other: SuperMatrix) -> SuperMatrix:
        """Supercommutator ``XY - (-1)^(p(X)p(Y)) YX``."""
        self._homogeneous("bracket")
        other._homogeneous("bracket")
        xy, yx = self @ other, other @ self
        return xy + yx if self.parity and other.parity else xy - yx

    def jordan(self, other: SuperMatrix) -> SuperMatrix:
        """Super anticommutator ``XY + (-1)^(p(X)p(Y)) YX``."""
        self._homogeneous("jordan product")
        other._homogeneous("jordan product")
        xy, yx = self @ other, other @ self
        return xy - yx if self.parity and other.parity else xy + yx

    def supertranspose(self) -> SuperMatrix:
        self._homogeneous("supertranspose")
        data = []
        for i in range(self.cols.size):
            pi = self.cols.parity(i)
            row = []
            for j in range(self.rows.size):
                x = self.entries[j][i]
                row.append(x if st_sign(pi, self.rows.parity(j), self.parity) > 0 else -x)
            data.append(row)
        return SuperMatrix(self.context, self.cols, self.rows, data, self.parity, check=False)

    def __eq__(self, other):
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return (self.context == other.context and self.rows == other.rows and self.cols == other.cols
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in r) for r in self.entries)
        return f"SuperMatrix{self.rows}x{self.cols}[{body}]"

    # inverse and series -------------------------------------------------

    def _require_square(self, what):
        if not self.is_square:
            raise SignatureMismatch(f"{what} requires a square matrix with equal row/column signatures")

    def inverse(self) -> SuperMatrix:
        self._require_square("inverse")
        if self.parity != EVEN:
            raise ValueError("only even supermatrices are inverted")
        try:
            inv = gauss_jordan_inverse(self.entries, self.context.one(), self.context.zero())
        except SingularPivot as exc:
            raise NotInvertible("body matrix is singular") from exc
        return SuperMatrix(self.context, self.rows, self.cols, inv, EVEN, check=False)

    def exp_nilpotent(self) -> SuperMatrix:
        self._require_square("exp")
        if self.parity != EVEN:
            raise ValueError("exp requires an even matrix")
        if not self.is_nilpotent():
            raise ValueError("exp requires a matrix with entries in the soul ideal")
        result = SuperMatrix.identity(self.context, self.rows)
        power = result
        k = 0
        while True:
            k += 1
            power = (power @ self).scale(Fraction(1, k))
            if power.is_zero():
                return result
            result = result + power

    def log_unipotent(self) -> SuperMatrix:
        self._require_square("log")
        ident = SuperMatrix.identity(self.context, self.rows)
        n = self - ident
        if self.parity != EVEN or not n.is_nilpotent():
            raise ValueError("log requires an even matrix of the form 1 + (soul-valued matrix)")
        result = SuperMatrix.zero(self.context, self.rows)
        power = ident
        k = 0
        while True:
            k += 1
            power = power @ n
            if power.is_zero():
                return result
            result = result + power.scale(Fraction(1 if k % 2 else -1, k))


def _sig(s) -> BlockSignature:
    if isinstance(s, BlockSignature):
        return s
    m, n = s
    return BlockSignature(m, n)


def _lift(context, x) -> SuperPolynomial:
    if isinstance(x, SuperPolynomial):
        return x
    return context.const(x)


# ---------------------------------------------------------------------------
# traces and determinants


def supertrace(x: SuperMatrix) -> SuperPolynomial:
    """``tr(A) - (-1)^p(X) tr(D)``."""
    x._require_square("supertrace")
    x._homogeneous("supertrace")
    m = x.rows.even_dim
    tr_a = x.context.zero()
    for i in range(m):
        tr_a = tr_a + x.entries[i][i]
    tr_d = x.context.zero()
    for i in range(m, x.rows.size):
        tr_d = tr_d + x.entries[i][i]
    return tr_a + tr_d if x.parity else tr_a - tr_d


def _det(rows, ctx):
    return det_bareiss(rows, ctx.one(), ctx.zero())


def _matmul(a, b, ctx):
    z = ctx.zero()
    out = []
    for r in a:
        row = []
        for j in range(len(b[0]) if b else 0):
            acc = z
            for k, x in enumerate(r):
                if x and b[k][j]:
                    acc = acc + x * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def _block_inverse(rows, ctx):
    return gauss_jordan_inverse(rows, ctx.one(), ctx.zero())


def berezinian(x: SuperMatrix) -> SuperPolynomial:
    """``Ber X = det(A - B D^-1 C) * det(D)^-1``."""
    x._require_square("Berezinian")
    if x.parity != EVEN:
        raise ValueError("Berezinian is defined here for even matrices only")
    ctx = x.context
    a, b, c, d = (x.block(k) for k in "ABCD")
    if not d:
        return _det(a, ctx)
    try:
        d_inv = _block_inverse(d, ctx)
    except SingularPivot as exc:
        raise NotInvertible("D block has singular body") from exc
    if not a:
        return _det(d_inv, ctx)
    bdc = _matmul(_matmul(b, d_inv, ctx), c, ctx)
    schur = [[a[i][j] - bdc[i][j] for j in range(len(a))] for i in range(len(a))]
    return _det(schur, ctx) * _det(d_inv, ctx)


def berezinian_dual(x: SuperMatrix) -> SuperPolynomial:
    """``Ber X = det(A) * det(D - C A^-1 B)^-1``; needs invertible A body."""
    x._require_square("Berezinian")
    if x.parity != EVEN:
        raise ValueError("Berezinian is defined here for even matrices only")
    ctx = x.context
    a, b, c, d = (x.block(k) for k in "ABCD")
    if not a:
        return _det(d, ctx).inverse()
    try:
        a_inv = _block_inverse(a, ctx)
    except SingularPivot as exc:
        raise NotInvertible("A block has singular body") from exc
    if not d:
        return _det(a, ctx)
    cab = _matmul(_matmul(c, a_inv, ctx), b, ctx)
    schur = [[d[i][j] - cab[i][j] for j in range(len(d))] for i in range(len(d))]
    return _det(a, ctx) * _det(schur, ctx).inverse()


# ---------------------------------------------------------------------------
# queer trace and determinant
#
# Grassmann-valued points of q(n) are realised as the plain-product
# supercommutant of the odd matrix [[0, 1], [1, 0]] in Mat(n|n):
#   even matrices [[a, b], [b, a]],  odd matrices [[a, b], [-b, -a]].


def is_queer_shape(x: SuperMatrix) -> bool:
    if x.rows != x.cols or x.rows.even_dim != x.rows.odd_dim or x.parity is INHOMOGENEOUS:
        return False
    n = x.rows.even_dim
    e = x.entries
    flip = -1 if x.parity == ODD else 1
    for i in range(n):
        for j in range(n):
            if e[n + i][n + j] != (e[i][j] if flip > 0 else -e[i][j]):
                return False
            if e[n + i][j] != (e[i][n + j] if flip > 0 else -e[i][n + j]):
                return False
    return True


def _require_queer(x: SuperMatrix):
    if not is_queer_shape(x):
        raise ShapeError("matrix is not of q(n) shape")


def queer_trace(x: SuperMatrix) -> SuperPolynomial:
    """Trace of the off-diagonal block ``b`` of ``[[a, b], [+-b, +-a]]``."""
    _require_queer(x)
    n = x.rows.even_dim
    acc = x.context.zero()
    for i in range(n):
        acc = acc + x.entries[i][n + i]
    return acc


def queer_body(x: SuperMatrix) -> SuperMatrix:
    """Purely numerical part of a q(n)-shaped even matrix."""
    return x.map(lambda e: x.context.const(e.body()))


def queer_determinant(x: SuperMatrix) -> SuperPolynomial:
    """``qtr(log(X0^-1 X))`` with ``X0`` the numerical body of ``X``."""
    _require_queer(x)
    if x.parity != EVEN:
        raise ValueError("qet needs an even matrix")
    x0 = queer_body(x)
    try:
        x0_inv = x0.inverse()
    except NotInvertible as exc:
        raise NotInvertible("body of the q(n) matrix is singular") from exc
    return queer_trace((x0_inv @ x).log_unipotent())


def queer_determinant_series(x: SuperMatrix) -> SuperPolynomial:
    """Closed series ``sum_k tr(T^(2k+1)) / (2k+1)`` with ``T = a^-1 b``.

    Independent route to qet for even ``[[a, b], [b, a]]``: it factors as
    ``diag(a, a) [[1, T], [T, 1]]`` and the off-diagonal part of
    ``log [[1, T], [T, 1]]`` is ``artanh(T)``.
    """
    _require_queer(x)
    if x.parity != EVEN:
        raise ValueError("qet needs an even matrix")
    ctx = x.context
    n = x.rows.even_dim
    a = [list(r[:n]) for r in x.entries[:n]]
    b = [list(r[n:]) for r in x.entries[:n]]
    try:
        a_inv = _block_inverse(a, ctx)
    except SingularPivot as exc:
        raise NotInvertible("a block has singular body") from exc
    t = _matmul(a_inv, b, ctx)
    t2 = _matmul(t, t, ctx)
    total = ctx.zero()
    power = t
    k = 1
    while any(e for r in power for e in r):
        tr = ctx.zero()
        for i in range(n):
            tr = tr + power[i][i]
        total = total + tr.scale(Fraction(1, k))
        power = _matmul(power, t2, ctx)
        k += 2
    return total
