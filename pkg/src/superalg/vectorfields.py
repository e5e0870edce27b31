"""Polynomial vector fields on superspaces.

Covers the kan (Tits-Kantor-Koecher) construction, Chevalley-Eilenberg
homological fields, derived brackets, odd Poisson brackets with their
Hamiltonian fields, and the divergence on purely odd superspaces.

A field ``X = sum_c X_c d/dz_c`` acts by left derivatives with coefficients
on the left.  Field parity ``p(X)`` means every component ``X_c`` has parity
``p(X) + p(z_c)``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction

from .jordan import JordanSuperAlgebra, jordan_from_graded
from .linalg import EchelonBasis, nullspace
from .liealg import LieSuperAlgebra, UnsupportedParameters, _vec
from .scalars import DegreeCapExceeded, SuperPolynomial, VariableContext, odd_indices

__all__ = [
    "PolyVectorField",
    "OddPoissonContext",
    "KanResult",
    "KanClosureError",
    "RoundtripReport",
    "NotHomological",
    "vf_bracket",
    "kan_build",
    "kan_roundtrip",
    "ce_field",
    "ce_context",
    "field_coordinates",
    "kan_fields",
    "is_homological",
    "derived_bracket",
    "vect_odd",
    "poisson_odd",
    "hamiltonian_field",
    "generating_function",
    "sl2_weight_zero_candidate",
    "divergence",
    "is_invariant_form",
]


def _default_degree_cap() -> int:
    return int(os.environ.get("SUPERALG_FIELD_DEGREE_CAP", "4"))


class KanClosureError(ValueError):
    pass


class NotHomological(ValueError):
    pass


@dataclass(frozen=True)
class PolyVectorField:
    context: VariableContext
    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        if len(comps) != self.context.size:
            raise ValueError("one component per coordinate required")
        for c in comps:
            if c.context != self.context:
                raise ValueError("component context mismatch")
        object.__setattr__(self, "components", comps)

    @classmethod
    def zero(cls, ctx: VariableContext) -> PolyVectorField:
        return cls(ctx, tuple(ctx.zero() for _ in range(ctx.size)))

    @classmethod
    def partial(cls, ctx: VariableContext, var: int) -> PolyVectorField:
        comps = [ctx.zero() for _ in range(ctx.size)]
        comps[var] = ctx.one()
        return cls(ctx, tuple(comps))

    @classmethod
    def from_terms(cls, ctx: VariableContext, terms: dict) -> PolyVectorField:
        comps = [ctx.zero() for _ in range(ctx.size)]
        for var, f in terms.items():
            comps[var] = comps[var] + f
        return cls(ctx, tuple(comps))

    def __bool__(self):
        return any(self.components)

    def __eq__(self, other):
        return isinstance(other, PolyVectorField) and self.context == other.context \
            and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __add__(self, other: PolyVectorField) -> PolyVectorField:
        return PolyVectorField(self.context, tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: PolyVectorField) -> PolyVectorField:
        return PolyVectorField(self.context, tuple(a - b for a, b in zip(self.components, other.components)))

    def __neg__(self):
        return PolyVectorField(self.context, tuple(-a for a in self.components))

    def scale(self, c) -> PolyVectorField:
        return PolyVectorField(self.context, tuple(a.scale(c) for a in self.components))

    def parity(self):
        """Field parity, or None when components disagree."""
        ps = set()
        for var, comp in enumerate(self.components):
            if not comp:
                continue
            pc = comp.parity()
            if pc is None:
                return None
            ps.add((pc + self.context.parity_of(var)) % 2)
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def homogeneous_parts(self) -> list[tuple[int, PolyVectorField]]:
        parts = []
        for p in (0, 1):
            comps = []
            for var, comp in enumerate(self.components):
                want = (p + self.context.parity_of(var)) % 2
                comps.append(comp.even_part() if want == 0 else comp.odd_part())
            fld = PolyVectorField(self.context, tuple(comps))
            if fld:
                parts.append((p, fld))
        return parts

    def apply(self, f: SuperPolynomial) -> SuperPolynomial:
        out = self.context.zero()
        for var, comp in enumerate(self.components):
            if comp:
                out = out + comp * f.diff(var)
        return out

    def degree(self) -> int | None:
        """Polynomial degree minus one, if all nonzero components share a total degree."""
        ds = set()
        for comp in self.components:
            for (ev, mask), _ in comp.items():
                ds.add(sum(ev) + bin(mask).count("1"))
        if len(ds) != 1:
            return None if ds else -1
        return ds.pop() - 1

    def as_vector(self) -> dict:
        out = {}
        for var, comp in enumerate(self.components):
            for mono, c in comp.items():
                out[(var, mono)] = c
        return out

    def max_total_degree(self) -> int:
        return max((c.total_degree() for c in self.components if c), default=0)

    def __str__(self):
        parts = []
        for var, comp in enumerate(self.components):
            if comp:
                parts.append(f"({comp})*d/d{self.context.name(var)}")
        return " + ".join(parts) or "0"


def vf_bracket(x: PolyVectorField, y: PolyVectorField, *, degree_cap: int | None = None) -> PolyVectorField:
    """``[X, Y] = X Y - (-1)^(p(X)p(Y)) Y X``, extended bilinearly over homogeneous parts."""
    if x.context != y.context:
        raise ValueError("vector fields live on different superspaces")
    cap = _default_degree_cap() if degree_cap is None else degree_cap
    ctx = x.context
    total = PolyVectorField.zero(ctx)
    for px, xp in x.homogeneous_parts():
        for py, yp in y.homogeneous_parts():
            sign = -1 if px and py else 1
            comps = []
            for var in range(ctx.size):
                c = xp.apply(yp.components[var])
                d = yp.apply(xp.components[var])
                comps.append(c - d if sign > 0 else c + d)
            total = total + PolyVectorField(ctx, tuple(comps))
    if total.max_total_degree() > cap:
        raise DegreeCapExceeded(f"bracket has coefficients of degree > {cap}")
    return total


# ---------------------------------------------------------------------------
# kan


@dataclass
class KanResult:
    algebra: LieSuperAlgebra
    fields: list
    context: VariableContext
    p_coordinates: dict  # coordinates of the quadratic field P in the kan basis
    variable_of: tuple  # Jordan basis index -> coordinate index


def _jordan_context(J: JordanSuperAlgebra):
    even = [i for i in range(J.dim) if not J.parities[i]]
    odd = [i for i in range(J.dim) if J.parities[i]]
    names = [J.names[i] for i in even] + [J.names[i] for i in odd]
    ctx = VariableContext.create(len(even), len(odd), names=tuple(f"z[{n}]" for n in names))
    var = [0] * J.dim
    for k, i in enumerate(even):
        var[i] = k
    for k, i in enumerate(odd):
        var[i] = len(even) + k
    return ctx, tuple(var)


def kan_fields(J: JordanSuperAlgebra):
    """Constant fields ``d_a``, linear fields ``L_a`` and the quadratic field ``P``.

    ``L_a = sum (-1)^(p(a)p(j)) q_aj^c z_j d_c`` and
    ``P = 1/2 sum (-1)^(p(i)p(j)) q_ij^c z_i z_j d_c``, normalised so that
    ``[[P, d_a], d_b] = d_{a o b}``.
    """
    ctx, var = _jordan_context(J)
    n = J.dim
    z = [ctx.var(var[i]) for i in range(n)]
    partials = [PolyVectorField.partial(ctx, var[a]) for a in range(n)]
    ls = []
    for a in range(n):
        terms: dict = {}
        for j in range(n):
            sign = -1 if J.parities[a] and J.parities[j] else 1
            for c, q in J.q(a, j).items():
                terms[var[c]] = terms.get(var[c], ctx.zero()) + z[j].scale(sign * q)
        ls.append(PolyVectorField.from_terms(ctx, terms))
    terms = {}
    half = Fraction(1, 2)
    for i in range(n):
        for j in range(n):
            sign = -1 if J.parities[i] and J.parities[j] else 1
            for c, q in J.q(i, j).items():
                terms[var[c]] = terms.get(var[c], ctx.zero()) + (z[i] * z[j]).scale(sign * q * half)
    big_p = PolyVectorField.from_terms(ctx, terms)
    return ctx, var, partials, ls, big_p


def kan_build(J: JordanSuperAlgebra, *, max_dim: int = 12) -> KanResult:
    """Graded Lie superalgebra ``kan(J)`` in degrees -1, 0, 1, realised by polynomial fields."""
    if J.dim > max_dim:
        raise UnsupportedParameters(f"dim J = {J.dim} exceeds the bound {max_dim}")
    ctx, var, partials, ls, big_p = kan_fields(J)
    if big_p and big_p.parity() != 0:
        raise KanClosureError("quadratic field P is not even")
    spans = {d: EchelonBasis() for d in (-1, 0, 1)}
    basis: dict = {-1: [], 0: [], 1: []}

    def add(d, fld):
        if fld and spans[d].add(fld.as_vector()):
            basis[d].append(fld)
            return True
        return False

    for f in partials:
        add(-1, f)
    for f in ls:
        add(0, f)
    add(1, big_p)
    # close under brackets
    changed = True
    while changed:
        changed = False
        items = [(d, f) for d in (-1, 0, 1) for f in basis[d]]
        for a in range(len(items)):
            da, fa = items[a]
            for b in range(a, len(items)):
                db, fb = items[b]
                d = da + db
                if d < -1:
                    # constant fields commute
                    continue
                br = vf_bracket(fa, fb)
                if not br:
                    continue
                if d > 1:
                    raise KanClosureError(f"bracket of degree {d} is nonzero")
                if add(d, br):
                    changed = True
    fields = basis[-1] + basis[0] + basis[1]
    degrees = [-1] * len(basis[-1]) + [0] * len(basis[0]) + [1] * len(basis[1])
    parities = [f.parity() for f in fields]
    if any(p is None for p in parities):
        raise KanClosureError("inhomogeneous field in kan basis")
    names = [f"d[{nm}]" for nm in J.names]
    names += [f"g0_{i + 1}" for i in range(len(basis[0]))]
    names += [f"g1_{i + 1}" for i in range(len(basis[1]))]
    span = EchelonBasis()
    for f in fields:
        span.add(f.as_vector())
    table = {}
    for i, fi in enumerate(fields):
        for j, fj in enumerate(fields):
            if degrees[i] + degrees[j] > 1 or degrees[i] + degrees[j] < -1:
                continue
            br = vf_bracket(fi, fj)
            if br:
                coords = span.coordinates(br.as_vector())
                if coords is None:
                    raise KanClosureError("bracket leaves the span")
                table[(i, j)] = coords
    g = LieSuperAlgebra(tuple(names), tuple(parities), table, degrees=tuple(degrees), label=f"kan({J.label})")
    p_coords = span.coordinates(big_p.as_vector()) if big_p else {}
    return KanResult(g, fields, ctx, p_coords, var)


@dataclass
class RoundtripReport:
    ok: bool
    mismatches: list = field(default_factory=list)


def kan_roundtrip(J: JordanSuperAlgebra, kan: KanResult | None = None) -> RoundtripReport:
    """Rebuild ``J`` from ``kan(J)`` via ``x o y = [[P, x], y]`` and compare tables."""
    kan = kan or kan_build(J)
    J2 = jordan_from_graded(kan.algebra, kan.p_coordinates) if kan.p_coordinates else \
        JordanSuperAlgebra(J.names, J.parities, {})
    bad = []
    for i in range(J.dim):
        for j in range(J.dim):
            a, b = J.q(i, j), J2.q(i, j)
            if a != b:
                keys = sorted(set(a) | set(b))
                bad.append({"i": J.names[i], "j": J.names[j],
                            "expected": {J.names[k]: str(a.get(k, 0)) for k in keys},
                            "got": {J.names[k]: str(b.get(k, 0)) for k in keys}})
    return RoundtripReport(not bad and J2.parities == J.parities, bad)


# ---------------------------------------------------------------------------
# Chevalley-Eilenberg fields


def ce_context(g: LieSuperAlgebra) -> tuple[VariableContext, tuple]:
    """Coordinates ``X_i^*`` of parity ``p(X_i) + 1``; returns context and basis->variable map."""
    even_vars = [i for i in range(g.dim) if g.parities[i] == 1]
    odd_vars = [i for i in range(g.dim) if g.parities[i] == 0]
    names = tuple(f"{g.names[i]}*" for i in even_vars + odd_vars)
    ctx = VariableContext.create(len(even_vars), len(odd_vars), names=names)
    var = [0] * g.dim
    for k, i in enumerate(even_vars + odd_vars):
        var[i] = k
    return ctx, tuple(var)


def ce_field(g: LieSuperAlgebra, ctx_var=None) -> PolyVectorField:
    """Odd field ``1/2 sum (-1)^(p(X_i)) c_ij^k X_i^* X_j^* d/dX_k^*``.

    The sign makes ``[p, p] = 0`` equivalent to the super Jacobi identity.
    """
    ctx, var = ctx_var or ce_context(g)
    half = Fraction(1, 2)
    terms: dict = {}
    xs = [ctx.var(var[i]) for i in range(g.dim)]
    for (i, j), vec in g.table.items():
        mono = xs[i] * xs[j]
        if not mono:
            continue
        s = -half if g.parities[i] else half
        for k, c in vec.items():
            terms[var[k]] = terms.get(var[k], ctx.zero()) + mono.scale(s * c)
    return PolyVectorField.from_terms(ctx, terms)


def is_homological(x: PolyVectorField) -> tuple[bool, dict | None]:
    """``[X, X] == 0`` for an odd field; returns a witness component otherwise.

    The zero field counts as odd, so it is homological.
    """
    if not x:
        return True, None
    if x.parity() != 1:
        raise ValueError("homological fields must be odd")
    sq = vf_bracket(x, x)
    for var, comp in enumerate(sq.components):
        if comp:
            return False, {"coordinate": x.context.name(var), "coefficient": str(comp)}
    return True, None


def vect_odd(n: int) -> tuple[LieSuperAlgebra, VariableContext, list]:
    """``vect(0|n)`` with basis ``theta_S d_k`` graded by ``|S| - 1``."""
    if n < 1 or n > 4:
        raise UnsupportedParameters("vect(0|n) supported for 1 <= n <= 4")
    ctx = VariableContext.create(0, n, names=tuple(f"t{i + 1}" for i in range(n)))
    masks = sorted(range(1 << n), key=lambda s: (bin(s).count("1"), s))
    fields, names, degrees = [], [], []
    for s in masks:
        mono = ctx.monomial(1, odd=odd_indices(s))
        for k in range(n):
            fields.append(PolyVectorField.from_terms(ctx, {k: mono}))
            label = "".join(f"t{i + 1}" for i in odd_indices(s))
            names.append(f"{label}d{k + 1}" if label else f"d{k + 1}")
            degrees.append(bin(s).count("1") - 1)
    parities = [f.parity() for f in fields]
    index = {(k, s): i for i, (s, k) in enumerate((s, k) for s in masks for k in range(n))}
    table = {}
    for i, fi in enumerate(fields):
        for j, fj in enumerate(fields):
            br = vf_bracket(fi, fj, degree_cap=n)
            if br:
                table[(i, j)] = {index[(k, mono[1])]: c for k, comp in enumerate(br.components)
                                 for mono, c in comp.items()}
    g = LieSuperAlgebra(tuple(names), tuple(parities), table, degrees=tuple(degrees), label=f"vect(0|{n})")
    return g, ctx, fields


def field_coordinates(x: PolyVectorField, n: int) -> dict:
    """Coordinates of a field on ``0|n`` in the :func:`vect_odd` basis."""
    masks = sorted(range(1 << n), key=lambda s: (bin(s).count("1"), s))
    index = {(k, s): i for i, (s, k) in enumerate((s, k) for s in masks for k in range(n))}
    return {index[(k, mono[1])]: c for k, comp in enumerate(x.components) for mono, c in comp.items()}


def derived_bracket(g: LieSuperAlgebra, p) -> LieSuperAlgebra:
    """Bracket ``[x, y]' = [[p, x], y]`` on ``Pi(g_{-1})`` for odd ``p`` of degree 1 with ``[p, p] = 0``."""
    if g.degrees is None:
        raise ValueError("algebra carries no grading")
    pv = _vec(p, g.dim)
    if pv:
        if g.vector_parity(pv) != 1:
            raise ValueError("p must be odd")
        if {g.degrees[i] for i in pv} != {1}:
            raise ValueError("p must have degree 1")
        if g.bracket(pv, pv):
            raise NotHomological("[p, p] is nonzero")
    idx = [i for i in range(g.dim) if g.degrees[i] == -1]
    pos = {b: a for a, b in enumerate(idx)}
    table = {}
    for a, i in enumerate(idx):
        pi = g.bracket(pv, {i: 1})
        for b, j in enumerate(idx):
            v = g.bracket(pi, {j: 1})
            if v:
                table[(a, b)] = {pos[k]: c for k, c in v.items()}
    return LieSuperAlgebra(tuple(f"Pi({g.names[i]})" for i in idx), tuple(1 - g.parities[i] for i in idx),
                           table, label=f"derived({g.label})")


# ---------------------------------------------------------------------------
# odd Poisson brackets


@dataclass(frozen=True)
class OddPoissonContext:
    """Poisson bracket on ``Lambda(theta_1..theta_m)`` from a symmetric pairing ``omega``.

    ``{f, g} = -(-1)^p(f) sum omega_ij d_i f d_j g``; with the standard pairing
    ``{theta_1, theta_2} = 1`` for ``m = 2``.
    """

    pairing: tuple
    context: VariableContext
    convention: str = "left"

    @classmethod
    def from_pairing(cls, pairing, names=None) -> OddPoissonContext:
        m = len(pairing)
        w = tuple(tuple(Fraction(x) for x in row) for row in pairing)
        if any(len(r) != m for r in w):
            raise ValueError("pairing must be square")
        if any(w[i][j] != w[j][i] for i in range(m) for j in range(m)):
            raise ValueError("pairing on odd generators must be symmetric")
        from .linalg import det_laplace
        if det_laplace([list(r) for r in w], Fraction(1), Fraction(0)) == 0:
            raise ValueError("degenerate pairing")
        names = names or tuple(f"t{i + 1}" for i in range(m))
        return cls(w, VariableContext.create(0, m, names=tuple(names)))

    @classmethod
    def standard(cls, m: int) -> OddPoissonContext:
        """Pairs ``theta_i`` with ``theta_{r+i}`` (``m = 2r`` or ``2r + 1``); a leftover generator pairs with itself."""
        r = m // 2
        w = [[0] * m for _ in range(m)]
        for i in range(r):
            w[i][r + i] = w[r + i][i] = 1
        if m % 2:
            w[m - 1][m - 1] = 1
        return cls.from_pairing(w)

    @property
    def m(self) -> int:
        return len(self.pairing)


def poisson_odd(ctx: OddPoissonContext, f: SuperPolynomial, g: SuperPolynomial) -> SuperPolynomial:
    out = ctx.context.zero()
    for pf, fp in _parts(f):
        sign = 1 if pf else -1
        dfs = [fp.diff(i) for i in range(ctx.m)]
        dgs = [g.diff(j) for j in range(ctx.m)]
        for i in range(ctx.m):
            if not dfs[i]:
                continue
            for j in range(ctx.m):
                w = ctx.pairing[i][j]
                if w and dgs[j]:
                    out = out + (dfs[i] * dgs[j]).scale(sign * w)
    return out


def _parts(f: SuperPolynomial):
    out = []
    e, o = f.even_part(), f.odd_part()
    if e:
        out.append((0, e))
    if o:
        out.append((1, o))
    return out


def hamiltonian_field(ctx: OddPoissonContext, f: SuperPolynomial) -> PolyVectorField:
    """``H_f`` with ``H_f(g) = {f, g}``."""
    comps = [ctx.context.zero() for _ in range(ctx.m)]
    for pf, fp in _parts(f):
        sign = 1 if pf else -1
        for i in range(ctx.m):
            di = fp.diff(i)
            if not di:
                continue
            for j in range(ctx.m):
                w = ctx.pairing[i][j]
                if w:
                    comps[j] = comps[j] + di.scale(sign * w)
    return PolyVectorField(ctx.context, tuple(comps))


def _invert(mat):
    from .linalg import gauss_jordan_inverse
    from .scalars import VariableContext as _VC
    c = _VC.create(0, 0)
    rows = [[c.const(x) for x in r] for r in mat]
    inv = gauss_jordan_inverse(rows, c.one(), c.zero())
    return [[x.body() for x in r] for r in inv]


def is_invariant_form(g: LieSuperAlgebra, form) -> bool:
    """``<[x, y], z> = <x, [y, z]>`` on basis triples."""
    for i in range(g.dim):
        for j in range(g.dim):
            xy = g.c(i, j)
            for k in range(g.dim):
                yz = g.c(j, k)
                lhs = sum(c * form[a][k] for a, c in xy.items())
                rhs = sum(c * form[i][a] for a, c in yz.items())
                if lhs != rhs:
                    return False
    return True


@dataclass
class GeneratingFunction:
    hamiltonian: SuperPolynomial
    poisson: OddPoissonContext
    ce: PolyVectorField
    self_bracket_zero: bool


def generating_function(g: LieSuperAlgebra, form) -> GeneratingFunction:
    """Cubic ``H`` with ``H_H = ce_field(g)`` for an ordinary Lie algebra and invariant form.

    The Poisson pairing on the coordinates ``X_i^*`` is the inverse Gram
    matrix of ``form``.  ``H`` is found by solving the linear system for its
    cubic coefficients.
    """
    if any(g.parities):
        raise UnsupportedParameters("generating functions are implemented for ordinary Lie algebras")
    form = [[Fraction(x) for x in row] for row in form]
    if not is_invariant_form(g, form):
        raise ValueError("form is not invariant")
    omega = _invert(form)
    names = tuple(f"{nm}*" for nm in g.names)
    pctx = OddPoissonContext.from_pairing(omega, names)
    vc = pctx.context
    n = g.dim
    ce = ce_field(g, (vc, tuple(range(n))))
    cubics = [s for s in range(1 << n) if bin(s).count("1") == 3]
    eqs: dict = {}
    for s in cubics:
        h = hamiltonian_field(pctx, vc.monomial(1, odd=odd_indices(s)))
        for key, c in h.as_vector().items():
            eqs.setdefault(key, {})[s] = c
    target = ce.as_vector()
    # unknown "rhs" column carries -target
    rows = []
    for key in sorted(set(eqs) | set(target)):
        row = dict(eqs.get(key, {}))
        if key in target:
            row["rhs"] = -target[key]
        rows.append(row)
    sol = nullspace(rows, cubics + ["rhs"])
    cand = next((v for v in sol if v.get("rhs")), None)
    if cand is None:
        raise ValueError("no generating function for this form")
    particular = {k: c / cand["rhs"] for k, c in cand.items()}
    terms = {((), s): c for s, c in particular.items() if s != "rhs" and c}
    H = SuperPolynomial(vc, terms)
    if hamiltonian_field(pctx, H) != ce:
        raise ValueError("generating function check failed")
    return GeneratingFunction(H, pctx, ce, not poisson_odd(pctx, H, H))


def sl2_weight_zero_candidate(g: LieSuperAlgebra) -> SuperPolynomial:
    """``X_e^* X_h^* X_f^*`` (basis order): the only cubic of weight 0 for ``sl(2)``."""
    if g.dim != 3 or any(g.parities):
        raise UnsupportedParameters("expected a 3-dimensional Lie algebra")
    vc = VariableContext.create(0, 3, names=tuple(f"{nm}*" for nm in g.names))
    return vc.odd(0) * vc.odd(1) * vc.odd(2)


# ---------------------------------------------------------------------------
# divergence


def divergence(x: PolyVectorField) -> SuperPolynomial:
    """``div X = (-1)^p(X) sum d_k X_k`` on a purely odd superspace, per homogeneous part."""
    ctx = x.context
    if ctx.even_count:
        raise UnsupportedParameters("divergence is implemented on purely odd superspaces")
    out = ctx.zero()
    for p, part in x.homogeneous_parts():
        s = ctx.zero()
        for k, comp in enumerate(part.components):
            if comp:
                s = s + comp.diff(k)
        out = out + (-s if p else s)
    return out
