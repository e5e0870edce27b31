"""Jordan superalgebras: constructions and an exact Jordan-identity checker."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from .linalg import EchelonBasis
from .liealg import (
    LieSuperAlgebra,
    NotClosed,
    UnsupportedParameters,
    _add_into,
    _mat_mul,
    _mat_parity,
    _matrix_name,
    _q_basis,
    _vec,
    form_condition_basis,
    form_matrix,
)
from .scalars import SuperPolynomial, VariableContext

__all__ = [
    "JordanSuperAlgebra",
    "JordanIdentityReport",
    "DepthReport",
    "GradingMismatch",
    "jordan_from_graded",
    "jordan_generalized_depth_d",
    "jordan_matrix",
    "jordan_bilinear",
    "jordan_hamiltonian_odd",
    "check_jordan_identity",
    "check_supercommutative",
]


class GradingMismatch(ValueError):
    pass


@dataclass
class JordanSuperAlgebra:
    """Basis with parities and products ``x_i o x_j = sum q_ij^k x_k``."""

    names: tuple[str, ...]
    parities: tuple[int, ...]
    table: dict
    unit: dict | None = None
    label: str = ""

    def __post_init__(self):
        self.names = tuple(self.names)
        self.parities = tuple(int(p) & 1 for p in self.parities)
        if len(self.names) != len(self.parities):
            raise ValueError("one parity per basis element required")
        clean = {}
        for (i, j), vec in self.table.items():
            v = {k: Fraction(c) for k, c in vec.items() if c}
            if v:
                clean[(i, j)] = v
        self.table = clean

    @property
    def dim(self) -> int:
        return len(self.names)

    @property
    def sdim(self) -> tuple[int, int]:
        odd = sum(self.parities)
        return (self.dim - odd, odd)

    def q(self, i: int, j: int) -> dict:
        return self.table.get((i, j), {})

    def product(self, x, y) -> dict:
        xv, yv = _vec(x, self.dim), _vec(y, self.dim)
        out: dict = {}
        for i, a in xv.items():
            for j, b in yv.items():
                qij = self.table.get((i, j))
                if qij:
                    _add_into(out, qij, a * b)
        return out

    def product_points(self, u: Sequence[SuperPolynomial], v: Sequence[SuperPolynomial]) -> list[SuperPolynomial]:
        """Product on the Grassmann envelope: ``(a x_i) o (b x_j) = (-1)^(p(x_i) p(b)) ab x_i o x_j``."""
        ctx = u[0].context
        out = [ctx.zero() for _ in range(self.dim)]
        parities_v = [b.parity() if b else 0 for b in v]
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                qij = self.table.get((i, j))
                if not qij:
                    continue
                ab = a * b
                if self.parities[i] and parities_v[j]:
                    ab = -ab
                for k, c in qij.items():
                    out[k] = out[k] + ab.scale(c)
        return out

    def perturbed(self, i: int, j: int, k: int, delta=1) -> JordanSuperAlgebra:
        """Copy with ``q_ij^k`` shifted by ``delta`` (mirrored onto ``q_ji^k``)."""
        table = {key: dict(v) for key, v in self.table.items()}
        sign = -1 if self.parities[i] and self.parities[j] else 1
        pairs = [((i, j), Fraction(delta))]
        if i != j:
            pairs.append(((j, i), sign * Fraction(delta)))
        for key, d in pairs:
            entry = table.setdefault(key, {})
            entry[k] = entry.get(k, 0) + d
        return replace(self, table=table, unit=None, label=f"{self.label} perturbed at ({i},{j};{k})")


def check_supercommutative(J: JordanSuperAlgebra) -> list:
    """Basis pairs violating ``x o y = (-1)^(p(x)p(y)) y o x`` or parity additivity."""
    bad = []
    for i in range(J.dim):
        for j in range(i, J.dim):
            diff = dict(J.q(i, j))
            sign = -1 if J.parities[i] and J.parities[j] else 1
            _add_into(diff, J.q(j, i), -sign)
            if diff:
                bad.append({"i": i, "j": j, "kind": "supercommutativity"})
            for k in J.q(i, j):
                if J.parities[k] != (J.parities[i] + J.parities[j]) % 2:
                    bad.append({"i": i, "j": j, "k": k, "kind": "parity"})
    return bad


# ---------------------------------------------------------------------------
# the Jordan identity on the Grassmann envelope


@dataclass
class JordanIdentityReport:
    ok: bool
    supercommutativity_violations: list = field(default_factory=list)
    witness: dict | None = None


def check_jordan_identity(J: JordanSuperAlgebra) -> JordanIdentityReport:
    """Exact check of ``(x^2 o y) o x = x^2 o (y o x)`` on the Grassmann envelope.

    ``x`` carries one fresh formal coefficient per basis element (even
    variables on even elements, odd generators on odd ones); ``y`` runs over
    basis elements times a single fresh variable of matching parity.  By the
    universal property of the free supercommutative algebra this is complete.
    """
    sc = check_supercommutative(J)
    n = J.dim
    n_even = n - sum(J.parities)
    n_odd = sum(J.parities)
    ctx = VariableContext.create(n_even + 1, n_odd + 1)
    x = []
    ie = io = 0
    for p in J.parities:
        if p:
            x.append(ctx.odd(io))
            io += 1
        else:
            x.append(ctx.even(ie))
            ie += 1
    eta_even, eta_odd = ctx.even(n_even), ctx.odd(n_odd)
    x2 = J.product_points(x, x)
    for k in range(n):
        y = [ctx.zero() for _ in range(n)]
        y[k] = eta_odd if J.parities[k] else eta_even
        lhs = J.product_points(J.product_points(x2, y), x)
        rhs = J.product_points(x2, J.product_points(y, x))
        for c in range(n):
            diff = lhs[c] - rhs[c]
            if diff:
                mono, coeff = next(diff.items())
                return JordanIdentityReport(False, sc, {
                    "y": J.names[k], "component": J.names[c],
                    "monomial": _describe_monomial(mono, J), "coefficient": str(coeff),
                })
    return JordanIdentityReport(not sc, sc, None)


def _describe_monomial(mono, J: JordanSuperAlgebra) -> str:
    even_exp, mask = mono
    even_names = [J.names[i] for i, p in enumerate(J.parities) if not p] + ["y"]
    odd_names = [J.names[i] for i, p in enumerate(J.parities) if p] + ["y"]
    parts = []
    for i, e in enumerate(even_exp):
        if e:
            parts.append(f"a[{even_names[i]}]" + (f"^{e}" if e > 1 else ""))
    i = 0
    while mask:
        if mask & 1:
            parts.append(f"alpha[{odd_names[i]}]")
        mask >>= 1
        i += 1
    return "*".join(parts) or "1"


# ---------------------------------------------------------------------------
# from graded Lie superalgebras


def _degree_of_vector(g: LieSuperAlgebra, v: dict):
    ds = {g.degrees[i] for i in v}
    return ds.pop() if len(ds) == 1 else None


def jordan_from_graded(g: LieSuperAlgebra, p) -> JordanSuperAlgebra:
    """Product ``x o y = [[p, x], y]`` on ``g_{-1}`` of a depth-one graded ``g``."""
    if g.degrees is None:
        raise GradingMismatch("algebra carries no grading")
    if min(g.degrees, default=0) != -1:
        raise GradingMismatch("depth must be 1")
    pv = _vec(p, g.dim)
    if pv:
        if g.vector_parity(pv) != 0:
            raise GradingMismatch("p must be even (odd parameters are not supported)")
        if _degree_of_vector(g, pv) != 1:
            raise GradingMismatch("p must be homogeneous of degree 1")
    minus = [i for i in range(g.dim) if g.degrees[i] == -1]
    J, _ = _double_bracket_table(g, pv, minus, f"J({g.label})")
    return J


def _double_bracket_table(g, pv, idx, label):
    pos = {b: a for a, b in enumerate(idx)}
    table = {}
    outside = []
    for a, i in enumerate(idx):
        pi = g.bracket(pv, {i: 1})
        for b, j in enumerate(idx):
            v = g.bracket(pi, {j: 1})
            if not v:
                continue
            coords = {}
            for k, c in v.items():
                if k in pos:
                    coords[pos[k]] = c
                else:
                    outside.append((a, b))
            if coords:
                table[(a, b)] = coords
    J = JordanSuperAlgebra(tuple(g.names[i] for i in idx), tuple(g.parities[i] for i in idx), table, label=label)
    return J, sorted(set(outside))


@dataclass
class DepthReport:
    closed: bool
    supercommutative: bool
    jordan_identity: bool
    leaving_pairs: list
    degrees: tuple


def jordan_generalized_depth_d(g: LieSuperAlgebra, p, *, include_zero: bool = True
                               ) -> tuple[JordanSuperAlgebra, DepthReport]:
    """Product ``[[p, x], y]`` on ``g_- = sum_{i <= 0} g_i`` (or ``i < 0``).

    The table keeps only components inside ``g_-``; ``closed`` says whether
    anything was dropped.  Identity flags are computed, not assumed.
    """
    if g.degrees is None:
        raise GradingMismatch("algebra carries no grading")
    pv = _vec(p, g.dim)
    if pv and _degree_of_vector(g, pv) != 1:
        raise GradingMismatch("p must be homogeneous of degree 1")
    top = 0 if include_zero else -1
    idx = [i for i in range(g.dim) if g.degrees[i] <= top]
    J, outside = _double_bracket_table(g, pv, idx, f"J_-({g.label})")
    sc = not check_supercommutative(J)
    ji = check_jordan_identity(J).ok if sc else False
    return J, DepthReport(not outside, sc, ji, outside, tuple(g.degrees[i] for i in idx))


# ---------------------------------------------------------------------------
# matrix Jordan superalgebras


def _anticommutator_algebra(mats, names, m, label, check_closure=True):
    parities = [_mat_parity(x, m) for x in mats]
    span = EchelonBasis()
    for x in mats:
        span.add(x)
    table = {}
    for i, x in enumerate(mats):
        for j, y in enumerate(mats):
            prod = _mat_mul(x, y)
            _add_into(prod, _mat_mul(y, x), -1 if parities[i] and parities[j] else 1)
            if not prod:
                continue
            coords = span.coordinates(prod)
            if coords is None:
                raise NotClosed(f"{names[i]} o {names[j]} leaves the subspace")
            table[(i, j)] = coords
    size = max((max(r, c) for x in mats for (r, c) in x), default=-1) + 1
    ident = {(i, i): Fraction(1, 2) for i in range(size)}
    unit = span.coordinates(ident) if ident else None
    return JordanSuperAlgebra(tuple(names), tuple(parities), table, unit=unit, label=label)


def jordan_matrix(kind: str, m: int, n: int = 0) -> JordanSuperAlgebra:
    """``Mat(m|n)``, ``Q(n)``, ``OSp(m|2n)`` or ``Pe(n)`` with ``X o Y = XY + (-1)^(p(X)p(Y)) YX``.

    For ``OSp`` and ``Pe`` the product is restricted to the defining subspace
    and closure is checked (``NotClosed`` otherwise).  The unit, when present,
    is half the identity matrix.
    """
    kind = kind.lower()
    if max(m, n) > 3 or min(m, n) < 0:
        raise UnsupportedParameters("parameters must lie in 0..3")
    if kind == "mat":
        if m + n == 0:
            raise UnsupportedParameters("empty superspace")
        size = m + n
        mats = [{(i, j): Fraction(1)} for i in range(size) for j in range(size)]
        names = [f"E{i + 1},{j + 1}" for i in range(size) for j in range(size)]
        return _anticommutator_algebra(mats, names, m, f"Mat({m}|{n})")
    if kind == "q":
        if m < 1:
            raise UnsupportedParameters("Q(n) needs n >= 1")
        mats, names = _q_basis(m)
        return _anticommutator_algebra(mats, names, m, f"Q({m})")
    if kind == "osp":
        if m + 2 * n == 0:
            raise UnsupportedParameters("empty superspace")
        gram = form_matrix("osp", m, n)
        mats, _ = form_condition_basis(gram, m, 1, 1)
        return _anticommutator_algebra(mats, [_matrix_name(x) for x in mats], m, f"OSp({m}|{2 * n})")
    if kind == "pe":
        if m < 1:
            raise UnsupportedParameters("Pe(n) needs n >= 1")
        gram = form_matrix("pe", 0, m)
        mats, _ = form_condition_basis(gram, m, 1, -1)
        return _anticommutator_algebra(mats, [_matrix_name(x) for x in mats], m, f"Pe({m})")
    raise UnsupportedParameters(f"unknown matrix kind {kind!r}")


# ---------------------------------------------------------------------------
# bilinear forms and odd Poisson brackets


def jordan_bilinear(m: int, n: int) -> JordanSuperAlgebra:
    """``x o y = (e, x) y + x (e, y) - (x, y) e`` on ``C^{m|2n}``.

    The form is ``diag(1_m)`` on the even part and the standard symplectic
    form on the odd part; ``e`` is the first even basis vector.
    """
    if m < 1:
        raise UnsupportedParameters("m >= 1 needed for the unit e")
    if m > 4 or n < 0 or n > 4:
        raise UnsupportedParameters("parameters must lie in 1..4 and 0..4")
    gram = form_matrix("osp", m, n)
    size = m + 2 * n
    names = [f"e{i + 1}" for i in range(m)] + [f"f{i + 1}" for i in range(2 * n)]
    parities = [0] * m + [1] * (2 * n)
    table = {}
    for i in range(size):
        for j in range(size):
            v: dict = {}
            # e = basis vector 0
            if gram[0][i]:
                _add_into(v, {j: gram[0][i]})
            if gram[0][j]:
                _add_into(v, {i: gram[0][j]})
            if gram[i][j]:
                _add_into(v, {0: -gram[i][j]})
            if v:
                table[(i, j)] = v
    return JordanSuperAlgebra(tuple(names), tuple(parities), table, unit={0: Fraction(1)},
                              label=f"bilinear({m}|{2 * n})")


def jordan_hamiltonian_odd(m: int, ctx=None, *, variant: str = "double") -> JordanSuperAlgebra:
    """Jordan superalgebra of the odd Poisson bracket on ``Lambda(theta_1..theta_m)``.

    ``variant="double"`` (default) is ``Lambda + Pi(Lambda)`` with

    * ``a o b = ab``, ``Pi(a) o b = Pi(ab)``, ``a o Pi(b) = (-1)^p(a) Pi(ab)``,
    * ``Pi(f) o Pi(g) = (-1)^(p(f)+1) {f, g}``,

    ``p`` being function parity.  The last line is the (H,K) product; its
    values land in ``Lambda``, which keeps the product even.

    ``variant="odd"`` is the ``2^m``-dimensional table on ``Pi(Lambda)`` alone
    with the same formula read back into ``Pi(Lambda)``.  That product is odd,
    so it is not a Jordan superalgebra; it is kept for inspection.
    """
    from .vectorfields import OddPoissonContext, poisson_odd

    if m < 2:
        raise UnsupportedParameters("m >= 2 odd generators needed")
    if m > 6:
        raise UnsupportedParameters("m <= 6 supported")
    if variant not in ("double", "odd"):
        raise UnsupportedParameters(f"unknown variant {variant!r}")
    pctx = ctx or OddPoissonContext.standard(m)
    vc = pctx.context
    masks = sorted(range(1 << m), key=lambda s: (bin(s).count("1"), s))
    pos = {s: i for i, s in enumerate(masks)}
    zero = (0,) * vc.even_count
    funcs = [SuperPolynomial(vc, {(zero, s): 1}) for s in masks]
    fpar = [bin(s).count("1") % 2 for s in masks]
    labels = ["".join(vc.name(vc.even_count + i) for i in range(m) if s >> i & 1) or "1" for s in masks]
    n = len(masks)

    def coords(poly, shift=0, sign=1):
        return {pos[mono[1]] + shift: sign * c for mono, c in poly.items()}

    table = {}
    if variant == "odd":
        for i, f in enumerate(funcs):
            for j, g in enumerate(funcs):
                br = poisson_odd(pctx, f, g)
                if br:
                    table[(i, j)] = coords(br, 0, -1 if fpar[i] == 0 else 1)
        return JordanSuperAlgebra(tuple(f"Pi({x})" for x in labels), tuple(1 - p for p in fpar), table,
                                  label=f"HK-odd({m})")
    for i, f in enumerate(funcs):
        for j, g in enumerate(funcs):
            prod = f * g
            if prod:
                table[(i, j)] = coords(prod)
                table[(i, n + j)] = coords(prod, n, -1 if fpar[i] else 1)
                table[(n + i, j)] = coords(prod, n)
            br = poisson_odd(pctx, f, g)
            if br:
                table[(n + i, n + j)] = coords(br, 0, 1 if fpar[i] else -1)
    names = tuple(labels) + tuple(f"Pi({x})" for x in labels)
    return JordanSuperAlgebra(names, tuple(fpar) + tuple(1 - p for p in fpar), table, unit={0: Fraction(1)},
                              label=f"HK({m})")
