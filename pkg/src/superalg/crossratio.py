"""Cross ratios of four points and their invariant collections.

Points are even square supermatrices (Grassmann-valued points of a chart of
the Grassmannian).  The cross ratio is ``X = (A-B)(C-B)^-1 (C-D)(A-D)^-1``;
its similarity invariants come from ``det``, ``Ber`` or ``qet`` of
``X - lambda``, expanded as power series in ``lambda``.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .linalg import SingularPivot, det_bareiss, gauss_jordan_inverse
from .scalars import NotInvertible, SuperPolynomial, VariableContext
from .supermatrix import BlockSignature, SuperMatrix, is_queer_shape

__all__ = [
    "DegenerateQuadruple",
    "PointQuadruple",
    "InvariantCollection",
    "TruncatedSeries",
    "cross_ratio",
    "invariants_det",
    "invariants_ber",
    "invariants_qet",
    "invariants",
    "cross_ratio_quadric",
    "quadric_pairing",
    "moebius_apply",
    "Moebius",
    "translation",
    "block_linear",
    "inversion",
    "invariance_harness",
    "quadric_harness",
    "HarnessReport",
]

log = logging.getLogger(__name__)


class DegenerateQuadruple(ValueError):
    pass


@dataclass(frozen=True)
class PointQuadruple:
    a: SuperMatrix
    b: SuperMatrix
    c: SuperMatrix
    d: SuperMatrix

    def __post_init__(self):
        pts = self.points
        sig = pts[0].rows
        for p in pts:
            if p.rows != sig or p.cols != sig:
                raise ValueError("points must share one square signature")
            if p.context != pts[0].context:
                raise ValueError("points must share one context")
            if p.parity != 0:
                raise ValueError("points must be even matrices")

    @property
    def points(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    @property
    def signature(self) -> BlockSignature:
        return self.a.rows

    @property
    def context(self) -> VariableContext:
        return self.a.context

    def map(self, fn: Callable[[SuperMatrix], SuperMatrix]) -> PointQuadruple:
        return PointQuadruple(*(fn(p) for p in self.points))


def cross_ratio(q: PointQuadruple) -> SuperMatrix:
    """``(A-B)(C-B)^-1 (C-D)(A-D)^-1`` in this order."""
    try:
        cb_inv = (q.c - q.b).inverse()
        ad_inv = (q.a - q.d).inverse()
    except NotInvertible as exc:
        raise DegenerateQuadruple("C-B or A-D has singular body") from exc
    return (q.a - q.b) @ cb_inv @ (q.c - q.d) @ ad_inv


# ---------------------------------------------------------------------------
# power series in lambda with Grassmann coefficients


class TruncatedSeries:
    """``sum_{k<=order} c_k lambda^k`` with even SuperPolynomial coefficients, ``lambda`` even and central."""

    __slots__ = ("context", "coeffs", "order")

    def __init__(self, context: VariableContext, coeffs: Sequence, order: int):
        self.context = context
        self.order = order
        cs = [c if isinstance(c, SuperPolynomial) else context.const(c) for c in list(coeffs)[: order + 1]]
        cs += [context.zero()] * (order + 1 - len(cs))
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, x: SuperPolynomial, order: int) -> TruncatedSeries:
        return cls(x.context, [x], order)

    @classmethod
    def lam(cls, context: VariableContext, order: int) -> TruncatedSeries:
        return cls(context, [context.zero(), context.one()], order)

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, TruncatedSeries) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def _wrap(self, other) -> TruncatedSeries:
        if isinstance(other, TruncatedSeries):
            return other
        if isinstance(other, SuperPolynomial):
            return TruncatedSeries.const(other, self.order)
        return TruncatedSeries(self.context, [self.context.const(other)], self.order)

    def __add__(self, other):
        o = self._wrap(other)
        return TruncatedSeries(self.context, [a + b for a, b in zip(self.coeffs, o.coeffs)], self.order)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.context, [-a for a in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        o = self._wrap(other)
        out = [self.context.zero()] * (self.order + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(self.order + 1 - i):
                b = o.coeffs[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return TruncatedSeries(self.context, out, self.order)

    __rmul__ = __mul__

    def scale(self, c) -> TruncatedSeries:
        return TruncatedSeries(self.context, [a.scale(c) for a in self.coeffs], self.order)

    def is_invertible(self) -> bool:
        return self.coeffs[0].is_invertible()

    def inverse(self) -> TruncatedSeries:
        a0 = self.coeffs[0]
        if not a0.is_invertible():
            raise NotInvertible("constant term has zero body")
        inv0 = a0.inverse()
        out = [inv0]
        for k in range(1, self.order + 1):
            acc = self.context.zero()
            for j in range(1, k + 1):
                if self.coeffs[j]:
                    acc = acc + self.coeffs[j] * out[k - j]
            out.append(-(inv0 * acc))
        return TruncatedSeries(self.context, out, self.order)

    def __repr__(self):
        return "TruncatedSeries(" + ", ".join(str(c) for c in self.coeffs) + ")"


def _series_matrix(x: SuperMatrix, order: int, shift: bool = True):
    """Entries of ``X - lambda`` as series."""
    ctx = x.context
    lam = TruncatedSeries.lam(ctx, order)
    out = []
    for i, row in enumerate(x.entries):
        r = []
        for j, e in enumerate(row):
            s = TruncatedSeries.const(e, order)
            if shift and i == j:
                s = s - lam
            r.append(s)
        out.append(r)
    return out


def _gen_matmul(a, b, zero):
    out = []
    for r in a:
        row = []
        for j in range(len(b[0]) if b else 0):
            acc = zero
            for k, x in enumerate(r):
                if x and b[k][j]:
                    acc = acc + x * b[k][j]
            row.append(acc)
        out.append(row)
    return out


@dataclass
class InvariantCollection:
    coefficients: list
    variant: str
    order: int

    def as_strings(self) -> list[str]:
        return [str(c) for c in self.coefficients]


def invariants_det(q_or_x, order: int | None = None) -> InvariantCollection:
    """Coefficients of ``det(X - lambda)`` (purely even signature)."""
    x = cross_ratio(q_or_x) if isinstance(q_or_x, PointQuadruple) else q_or_x
    if x.rows.odd_dim:
        raise ValueError("det invariants need a purely even signature")
    m = x.rows.even_dim
    r = m if order is None else order
    ctx = x.context
    one = TruncatedSeries.const(ctx.one(), r)
    zero = TruncatedSeries.const(ctx.zero(), r)
    d = det_bareiss(_series_matrix(x, r), one, zero)
    return InvariantCollection(list(d.coeffs), "det", r)


def invariants_ber(q_or_x, order: int | None = None) -> InvariantCollection:
    """Coefficients of the expansion of ``Ber(X - lambda)`` about ``lambda = 0`` up to ``order`` (default m+n)."""
    x = cross_ratio(q_or_x) if isinstance(q_or_x, PointQuadruple) else q_or_x
    m, n = x.rows.even_dim, x.rows.odd_dim
    r = m + n if order is None else order
    ctx = x.context
    one = TruncatedSeries.const(ctx.one(), r)
    zero = TruncatedSeries.const(ctx.zero(), r)
    s = _series_matrix(x, r)
    a = [row[:m] for row in s[:m]]
    b = [row[m:] for row in s[:m]]
    c = [row[:m] for row in s[m:]]
    dd = [row[m:] for row in s[m:]]
    if not n:
        return InvariantCollection(list(det_bareiss(a, one, zero).coeffs), "ber", r)
    try:
        d_inv = gauss_jordan_inverse(dd, one, zero)
    except SingularPivot as exc:
        raise DegenerateQuadruple("D block of the cross ratio has singular body") from exc
    det_d_inv = det_bareiss(d_inv, one, zero)
    if not m:
        return InvariantCollection(list(det_d_inv.coeffs), "ber", r)
    bdc = _gen_matmul(_gen_matmul(b, d_inv, zero), c, zero)
    schur = [[a[i][j] - bdc[i][j] for j in range(m)] for i in range(m)]
    ber = det_bareiss(schur, one, zero) * det_d_inv
    return InvariantCollection(list(ber.coeffs), "ber", r)


def invariants_qet(q_or_x, order: int | None = None) -> InvariantCollection:
    """Coefficients of ``qet(X - lambda)`` up to ``order`` (default n) for ``X`` of q(n) shape."""
    x = cross_ratio(q_or_x) if isinstance(q_or_x, PointQuadruple) else q_or_x
    if not is_queer_shape(x) or x.parity != 0:
        raise ValueError("qet invariants need an even matrix of q(n) shape")
    n = x.rows.even_dim
    r = n if order is None else order
    ctx = x.context
    one = TruncatedSeries.const(ctx.one(), r)
    zero = TruncatedSeries.const(ctx.zero(), r)
    body = [[ctx.const(e.body()) for e in row] for row in x.entries]
    body_series = _series_matrix(SuperMatrix(ctx, x.rows, x.cols, body, 0, check=False), r)
    try:
        body_inv = gauss_jordan_inverse(body_series, one, zero)
    except SingularPivot as exc:
        raise DegenerateQuadruple("body of the cross ratio is singular") from exc
    soul = [[TruncatedSeries.const(e - ctx.const(e.body()), r) for e in row] for row in x.entries]
    nmat = _gen_matmul(body_inv, soul, zero)
    # log(1 + N), N nilpotent
    size = 2 * n
    total = [[zero] * size for _ in range(size)]
    power = nmat
    k = 1
    while any(e for row in power for e in row):
        c = Fraction(1 if k % 2 else -1, k)
        total = [[t + p.scale(c) for t, p in zip(tr, pr)] for tr, pr in zip(total, power)]
        power = _gen_matmul(power, nmat, zero)
        k += 1
    qt = zero
    for i in range(n):
        qt = qt + total[i][n + i]
    return InvariantCollection(list(qt.coeffs), "qet", r)


def invariants(variant: str, q_or_x, order: int | None = None) -> InvariantCollection:
    fn = {"det": invariants_det, "ber": invariants_ber, "qet": invariants_qet}.get(variant)
    if fn is None:
        raise ValueError(f"unknown variant {variant!r}")
    return fn(q_or_x, order)


# ---------------------------------------------------------------------------
# quadric cross ratio


def quadric_pairing(gram: Sequence[Sequence], parities: Sequence[int], x: Sequence[SuperPolynomial],
                    y: Sequence[SuperPolynomial]) -> SuperPolynomial:
    """``(x, y) = sum (-1)^(p_i p_j) x_i y_j G_ij`` for even Grassmann-valued points."""
    acc = x[0].context.zero()
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, yj in enumerate(y):
            g = gram[i][j]
            if g and yj:
                term = (xi * yj).scale(g)
                acc = acc - term if parities[i] and parities[j] else acc + term
    return acc


def _sub(x, y):
    return [a - b for a, b in zip(x, y)]


def cross_ratio_quadric(a, b, c, d, gram, parities) -> SuperPolynomial:
    """``(A-B, A-B)/(C-B, C-B) * (C-D, C-D)/(A-D, A-D)``."""
    def sq(u, v):
        w = _sub(u, v)
        return quadric_pairing(gram, parities, w, w)
    den1, den2 = sq(c, b), sq(a, d)
    if not den1.is_invertible() or not den2.is_invertible():
        raise DegenerateQuadruple("isotropic denominator")
    return sq(a, b) * den1.inverse() * sq(c, d) * den2.inverse()


# ---------------------------------------------------------------------------
# fractional-linear action


@dataclass(frozen=True)
class Moebius:
    """``Z -> (aZ + b)(cZ + d)^-1``; blocks are even square matrices."""

    a: SuperMatrix
    b: SuperMatrix
    c: SuperMatrix
    d: SuperMatrix
    kind: str = "general"


def moebius_apply(g: Moebius, z: SuperMatrix) -> SuperMatrix:
    den = g.c @ z + g.d
    try:
        inv = den.inverse()
    except NotInvertible as exc:
        raise DegenerateQuadruple("cZ + d has singular body") from exc
    return (g.a @ z + g.b) @ inv


def translation(shift: SuperMatrix) -> Moebius:
    ctx, sig = shift.context, shift.rows
    one, zero = SuperMatrix.identity(ctx, sig), SuperMatrix.zero(ctx, sig)
    return Moebius(one, shift, zero, one, "translation")


def block_linear(a: SuperMatrix, d: SuperMatrix) -> Moebius:
    zero = SuperMatrix.zero(a.context, a.rows)
    return Moebius(a, zero, zero, d, "block-linear")


def inversion(ctx: VariableContext, sig) -> Moebius:
    sig = sig if isinstance(sig, BlockSignature) else BlockSignature(*sig)
    one, zero = SuperMatrix.identity(ctx, sig), SuperMatrix.zero(ctx, sig)
    return Moebius(zero, one, one, zero, "inversion")


@dataclass
class HarnessReport:
    checked: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def merge(self, other: HarnessReport):
        self.checked += other.checked
        self.skipped += other.skipped
        self.failures.extend(other.failures)


def invariance_harness(q: PointQuadruple, generators: Sequence[Moebius], variants: Sequence[str] = ("ber",),
                       order: int | None = None) -> HarnessReport:
    """Compare invariant collections before and after each generator.

    Samples where some required inverse does not exist are skipped and logged.
    """
    rep = HarnessReport()
    try:
        base = {v: invariants(v, q, order).coefficients for v in variants}
    except (DegenerateQuadruple, NotInvertible) as exc:
        log.info("skipping degenerate sample: %s", exc)
        rep.skipped += 1
        return rep
    for g in generators:
        try:
            moved = q.map(lambda z: moebius_apply(g, z))
            after = {v: invariants(v, moved, order).coefficients for v in variants}
        except (DegenerateQuadruple, NotInvertible) as exc:
            log.info("skipping %s: %s", g.kind, exc)
            rep.skipped += 1
            continue
        rep.checked += 1
        for v in variants:
            if after[v] != base[v]:
                rep.failures.append({"generator": g.kind, "variant": v,
                                     "before": [str(c) for c in base[v]], "after": [str(c) for c in after[v]]})
    return rep


def quadric_harness(points: Sequence[Sequence[SuperPolynomial]], gram, parities,
                    maps: Sequence[tuple[str, Callable]]) -> HarnessReport:
    """CRQ equality before and after each point map (isometries, inversion, translations)."""
    rep = HarnessReport()
    try:
        base = cross_ratio_quadric(*points, gram, parities)
    except DegenerateQuadruple as exc:
        log.info("skipping degenerate sample: %s", exc)
        rep.skipped += 1
        return rep
    for kind, fn in maps:
        try:
            moved = [fn(p) for p in points]
            after = cross_ratio_quadric(*moved, gram, parities)
        except (DegenerateQuadruple, NotInvertible) as exc:
            log.info("skipping %s: %s", kind, exc)
            rep.skipped += 1
            continue
        rep.checked += 1
        if after != base:
            rep.failures.append({"map": kind, "before": str(base), "after": str(after)})
    return rep


# ---------------------------------------------------------------------------
# quadric maps


def apply_linear(mat: Sequence[Sequence[Fraction]], x: Sequence[SuperPolynomial]) -> list[SuperPolynomial]:
    """Numerical parity-preserving matrix acting on a point's coordinates."""
    ctx = x[0].context
    out = []
    for row in mat:
        acc = ctx.zero()
        for c, xi in zip(row, x):
            if c and xi:
                acc = acc + xi.scale(c)
        out.append(acc)
    return out


def quadric_inversion(gram, parities):
    def fn(x):
        n = quadric_pairing(gram, parities, x, x)
        if not n.is_invertible():
            raise NotInvertible("isotropic point")
        inv = n.inverse()
        return [inv * xi for xi in x]
    return fn


def cayley_orthogonal(skew: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Rational orthogonal matrix ``(1 - S)(1 + S)^-1`` for skew-symmetric ``S``."""
    n = len(skew)
    ctx = VariableContext.create(0, 0)
    plus = [[ctx.const((1 if i == j else 0) + skew[i][j]) for j in range(n)] for i in range(n)]
    inv = gauss_jordan_inverse(plus, ctx.one(), ctx.zero())
    minus = [[(1 if i == j else 0) - Fraction(skew[i][j]) for j in range(n)] for i in range(n)]
    return [[sum(minus[i][k] * inv[k][j].body() for k in range(n)) for j in range(n)] for i in range(n)]


def symplectic_transvection(omega: Sequence[Sequence[Fraction]], v: Sequence[Fraction], c) -> list[list[Fraction]]:
    """``x -> x + c * omega(v, x) v``."""
    n = len(v)
    wv = [sum(Fraction(v[i]) * omega[i][j] for i in range(n)) for j in range(n)]
    return [[(1 if i == j else 0) + Fraction(c) * Fraction(v[i]) * wv[j] for j in range(n)] for i in range(n)]


def random_quadric_isometry(rng: random.Random, m: int, n: int, coeff_range: int = 2) -> list[list[Fraction]]:
    """Block-diagonal isometry of ``diag(1_m) + J_2n``: Cayley orthogonal times symplectic transvections."""
    skew = [[Fraction(0)] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            s = Fraction(rng.randint(-coeff_range, coeff_range))
            skew[i][j], skew[j][i] = s, -s
    ortho = cayley_orthogonal(skew) if m else []
    size = m + 2 * n
    out = [[Fraction(0)] * size for _ in range(size)]
    for i in range(m):
        for j in range(m):
            out[i][j] = ortho[i][j]
    if n:
        omega = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
        for i in range(n):
            omega[i][n + i] = Fraction(1)
            omega[n + i][i] = Fraction(-1)
        sp = [[Fraction(1 if i == j else 0) for j in range(2 * n)] for i in range(2 * n)]
        for _ in range(2):
            v = [rng.randint(-coeff_range, coeff_range) for _ in range(2 * n)]
            t = symplectic_transvection(omega, v, rng.randint(-coeff_range, coeff_range))
            sp = [[sum(t[i][k] * sp[k][j] for k in range(2 * n)) for j in range(2 * n)] for i in range(2 * n)]
        for i in range(2 * n):
            for j in range(2 * n):
                out[m + i][m + j] = sp[i][j]
    return out
