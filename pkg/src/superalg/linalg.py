"""Exact linear algebra helpers.

Two families live here:

* sparse rational vectors (``dict`` key -> Fraction) with an incremental
  reduced echelon form, used for spans, coordinates and null spaces;
* square matrices over a ring of supercommutative scalars (anything with
  ``+ - *``, ``is_invertible()`` and ``inverse()``), used for inverses and
  determinants of supermatrices.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Hashable, Iterable, Sequence

__all__ = [
    "EchelonBasis",
    "nullspace",
    "gauss_jordan_inverse",
    "det_bareiss",
    "det_laplace",
    "SingularPivot",
]

Vector = dict


class SingularPivot(ArithmeticError):
    pass


def _axpy(target: dict, coeff: Fraction, vec: dict):
    for k, v in vec.items():
        s = target.get(k, 0) - coeff * v
        if s:
            target[k] = s
        else:
            target.pop(k, None)


class EchelonBasis:
    """Incremental fully reduced row echelon form for sparse rational vectors.

    Each stored row remembers which combination of the *accepted* input
    vectors produced it, so :meth:`coordinates` expresses a vector in terms of
    the accepted vectors in insertion order.
    """

    def __init__(self, key_order: Callable[[Hashable], object] | None = None):
        self._rows: dict = {}  # pivot -> (row, combo)
        self._key = key_order
        self.accepted: list[Vector] = []

    def __len__(self):
        return len(self.accepted)

    def _reduce(self, vec: Vector):
        residual = {k: Fraction(v) for k, v in vec.items() if v}
        combo: dict = {}
        for pivot in [k for k in residual if k in self._rows]:
            c = residual.get(pivot)
            if not c:
                continue
            row, rcombo = self._rows[pivot]
            _axpy(residual, c, row)
            for idx, v in rcombo.items():
                s = combo.get(idx, 0) + c * v
                if s:
                    combo[idx] = s
                else:
                    combo.pop(idx, None)
        return residual, combo

    def add(self, vec: Vector) -> bool:
        """Insert ``vec``; returns False when it is already in the span."""
        residual, combo = self._reduce(vec)
        if not residual:
            return False
        idx = len(self.accepted)
        self.accepted.append(dict(vec))
        pivot = min(residual, key=self._key) if self._key else min(residual, key=_sort_key)
        scale = 1 / residual[pivot]
        row = {k: v * scale for k, v in residual.items()}
        # residual = vec - sum(combo_i * accepted_i)
        rcombo = {i: -v * scale for i, v in combo.items()}
        rcombo[idx] = scale
        for p, (other, ocombo) in self._rows.items():
            c = other.get(pivot)
            if c:
                _axpy(other, c, row)
                for i, v in rcombo.items():
                    s = ocombo.get(i, 0) - c * v
                    if s:
                        ocombo[i] = s
                    else:
                        ocombo.pop(i, None)
        self._rows[pivot] = (row, rcombo)
        return True

    def contains(self, vec: Vector) -> bool:
        residual, _ = self._reduce(vec)
        return not residual

    def coordinates(self, vec: Vector) -> dict | None:
        """Coefficients ``{i: c}`` with ``vec == sum c * accepted[i]``, or None."""
        residual, combo = self._reduce(vec)
        if residual:
            return None
        return combo

    def rank(self) -> int:
        return len(self.accepted)


def _sort_key(k):
    return (str(type(k)), k) if not isinstance(k, tuple) else (str(type(k)), repr(k))


def nullspace(equations: Iterable[Vector], unknowns: Sequence[Hashable]) -> list[Vector]:
    """Basis of ``{v : eq . v = 0 for all eq}`` over the listed unknowns.

    Basis vectors follow the usual free-variable pattern: one free unknown set
    to 1, the others to 0, pivots solved.  Unknown order decides which
    unknowns are pivots (earliest first).
    """
    position = {u: i for i, u in enumerate(unknowns)}
    rows: dict = {}
    for eq in equations:
        r = {k: Fraction(v) for k, v in eq.items() if v}
        for p in [k for k in r if k in rows]:
            c = r.get(p)
            if c:
                _axpy(r, c, rows[p])
        if not r:
            continue
        pivot = min(r, key=position.__getitem__)
        scale = 1 / r[pivot]
        r = {k: v * scale for k, v in r.items()}
        for other in rows.values():
            c = other.get(pivot)
            if c:
                _axpy(other, c, r)
        rows[pivot] = r
    basis = []
    for u in unknowns:
        if u in rows:
            continue
        vec = {u: Fraction(1)}
        for p, r in rows.items():
            c = r.get(u)
            if c:
                vec[p] = -c
        basis.append(vec)
    return basis


# ---------------------------------------------------------------------------
# matrices over supercommutative rings


def gauss_jordan_inverse(rows: Sequence[Sequence], one, zero) -> list[list]:
    """Inverse by left row operations; pivots must be invertible ring elements.

    Only left multiplications are used, so the routine is valid for
    non-commuting entries as long as each pivot is central (even).
    """
    n = len(rows)
    a = [list(r) for r in rows]
    inv = [[one if i == j else zero for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if a[r][col].is_invertible()), None)
        if pivot_row is None:
            raise SingularPivot(f"no invertible pivot in column {col}")
        if pivot_row != col:
            a[col], a[pivot_row] = a[pivot_row], a[col]
            inv[col], inv[pivot_row] = inv[pivot_row], inv[col]
        p = a[col][col].inverse()
        a[col] = [p * x for x in a[col]]
        inv[col] = [p * x for x in inv[col]]
        for r in range(n):
            if r == col:
                continue
            f = a[r][col]
            if not f:
                continue
            a[r] = [x - f * y for x, y in zip(a[r], a[col])]
            inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    return inv


def det_laplace(rows: Sequence[Sequence], one, zero):
    """Cofactor expansion along the first column; entries must commute."""
    n = len(rows)
    if n == 0:
        return one
    if n == 1:
        return rows[0][0]
    total = zero
    for i in range(n):
        a = rows[i][0]
        if not a:
            continue
        minor = [r[1:] for k, r in enumerate(rows) if k != i]
        term = a * det_laplace(minor, one, zero)
        total = total - term if i % 2 else total + term
    return total


def det_bareiss(rows: Sequence[Sequence], one, zero):
    """Fraction-free (Bareiss) elimination with invertible-body pivoting.

    Pivot choice: lowest row index whose entry is invertible.  The division
    by the previous pivot is exact because that pivot is invertible.  When a
    column has no invertible candidate the body matrix is singular and the
    determinant is computed by cofactor expansion instead.
    """
    n = len(rows)
    if n == 0:
        return one
    a = [list(r) for r in rows]
    sign = 1
    prev_inv = one
    for k in range(n - 1):
        pivot_row = next((r for r in range(k, n) if a[r][k].is_invertible()), None)
        if pivot_row is None:
            return det_laplace(rows, one, zero)
        if pivot_row != k:
            a[k], a[pivot_row] = a[pivot_row], a[k]
            sign = -sign
        p = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (p * a[i][j] - a[i][k] * a[k][j]) * prev_inv
            a[i][k] = zero
        prev_inv = p.inverse()
    d = a[n - 1][n - 1]
    return d if sign > 0 else zero - d
