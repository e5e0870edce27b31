"""Exact arithmetic in free supercommutative algebras.

A :class:`SuperPolynomial` is a finite sum of monomials ``c * x^e * theta_S``
where ``x`` are even (commuting) variables, ``theta`` are odd (anticommuting)
generators and ``c`` is a rational.  Odd monomials are stored as bitmasks, the
canonical order of a monomial being increasing generator index.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

__all__ = [
    "ContextMismatch",
    "DegreeCapExceeded",
    "NotInvertible",
    "SuperPolynomial",
    "VariableContext",
    "as_fraction",
    "koszul_sign",
    "EVEN",
    "ODD",
    "INHOMOGENEOUS",
]

EVEN = 0
ODD = 1
INHOMOGENEOUS = None

Number = Union[int, Fraction]
Monomial = tuple  # (even exponent tuple, odd bitmask)


class ContextMismatch(ValueError):
    pass


class NotInvertible(ArithmeticError):
    pass


class DegreeCapExceeded(ArithmeticError):
    pass


def _default_cap() -> int:
    return int(os.environ.get("SUPERALG_EVEN_DEGREE_CAP", "16"))


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def koszul_sign(a: int, b: int) -> int:
    """Sign of reordering the odd monomial ``a`` followed by ``b``.

    Returns 0 if the product vanishes (shared generator), else +1 or -1.
    """
    if a & b:
        return 0
    inversions = 0
    while b:
        low = b & -b
        # generators of ``a`` with larger index must move past this one
        inversions += bin(a & ~((low << 1) - 1)).count("1")
        b ^= low
    return -1 if inversions & 1 else 1


@dataclass(frozen=True)
class VariableContext:
    """Generator set of a free supercommutative algebra.

    Variables are indexed globally: ``0 .. even_count-1`` are even,
    ``even_count .. even_count+odd_count-1`` are odd.
    """

    even_count: int = 0
    odd_count: int = 0
    names: tuple[str, ...] | None = None
    even_degree_cap: int = 16

    def __post_init__(self):
        if self.even_count < 0 or self.odd_count < 0:
            raise ValueError("variable counts must be non-negative")
        if self.odd_count > 64:
            raise ValueError("at most 64 odd generators are supported")
        if self.names is not None:
            object.__setattr__(self, "names", tuple(self.names))
            if len(self.names) != self.size:
                raise ValueError("one name per variable is required")

    @classmethod
    def create(cls, even_count: int = 0, odd_count: int = 0, names=None, even_degree_cap=None):
        cap = _default_cap() if even_degree_cap is None else even_degree_cap
        return cls(even_count, odd_count, None if names is None else tuple(names), cap)

    @property
    def size(self) -> int:
        return self.even_count + self.odd_count

    def is_odd(self, var: int) -> bool:
        self._check_var(var)
        return var >= self.even_count

    def parity_of(self, var: int) -> int:
        return ODD if self.is_odd(var) else EVEN

    def name(self, var: int) -> str:
        if self.names is not None:
            return self.names[var]
        if var < self.even_count:
            return f"x{var + 1}"
        return f"t{var - self.even_count + 1}"

    def _check_var(self, var: int):
        if not 0 <= var < self.size:
            raise IndexError(f"variable index {var} out of range for {self.size} variables")

    # constructors -------------------------------------------------------

    def zero(self) -> SuperPolynomial:
        return SuperPolynomial(self, {})

    def one(self) -> SuperPolynomial:
        return self.const(1)

    def const(self, c: Number) -> SuperPolynomial:
        return SuperPolynomial(self, {((0,) * self.even_count, 0): as_fraction(c)})

    def var(self, var: int) -> SuperPolynomial:
        self._check_var(var)
        if var < self.even_count:
            exps = tuple(1 if i == var else 0 for i in range(self.even_count))
            return SuperPolynomial(self, {(exps, 0): Fraction(1)})
        return SuperPolynomial(self, {((0,) * self.even_count, 1 << (var - self.even_count)): Fraction(1)})

    def even(self, i: int) -> SuperPolynomial:
        if not 0 <= i < self.even_count:
            raise IndexError(i)
        return self.var(i)

    def odd(self, i: int) -> SuperPolynomial:
        if not 0 <= i < self.odd_count:
            raise IndexError(i)
        return self.var(self.even_count + i)

    def monomial(self, coeff: Number, even: Iterable[int] = (), odd: Iterable[int] = ()) -> SuperPolynomial:
        """``coeff * x^even * theta_odd`` with odd indices taken in the given order."""
        exps = tuple(even) or (0,) * self.even_count
        if len(exps) != self.even_count:
            raise ValueError("even exponent vector has wrong length")
        result = SuperPolynomial(self, {(exps, 0): as_fraction(coeff)})
        for i in odd:
            result = result * self.odd(i)
        return result


class SuperPolynomial:
    """Immutable element of ``Q[x_1..x_m] (x) Lambda(theta_1..theta_n)``."""

    __slots__ = ("context", "_terms", "_hash")

    def __init__(self, context: VariableContext, terms: Mapping[Monomial, Number]):
        self.context = context
        clean = {}
        for key, c in terms.items():
            if c:
                clean[key] = c if isinstance(c, Fraction) else Fraction(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, context, terms):
        obj = cls.__new__(cls)
        obj.context = context
        obj._terms = terms
        obj._hash = None
        return obj

    # inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(sorted(self._terms.items(), key=lambda kv: _order_key(kv[0])))

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def parity(self):
        """EVEN, ODD or INHOMOGENEOUS; the zero element is even."""
        seen = {bin(mask).count("1") & 1 for (_, mask) in self._terms}
        if not seen:
            return EVEN
        if len(seen) == 1:
            return seen.pop()
        return INHOMOGENEOUS

    def body(self) -> Fraction:
        return self._terms.get(((0,) * self.context.even_count, 0), Fraction(0))

    def soul(self) -> SuperPolynomial:
        zero = ((0,) * self.context.even_count, 0)
        return SuperPolynomial._raw(self.context, {k: c for k, c in self._terms.items() if k != zero})

    def is_constant(self) -> bool:
        zero = ((0,) * self.context.even_count, 0)
        return all(k == zero for k in self._terms)

    def is_nilpotent(self) -> bool:
        """True when every term carries at least one odd generator."""
        return all(mask for (_, mask) in self._terms)

    def has_even_dependence(self) -> bool:
        return any(any(e) for (e, _) in self._terms)

    def total_degree(self) -> int:
        return max((sum(e) + bin(m).count("1") for (e, m) in self._terms), default=0)

    def even_part(self) -> SuperPolynomial:
        return SuperPolynomial._raw(self.context, {k: c for k, c in self._terms.items() if not bin(k[1]).count("1") & 1})

    def odd_part(self) -> SuperPolynomial:
        return SuperPolynomial._raw(self.context, {k: c for k, c in self._terms.items() if bin(k[1]).count("1") & 1})

    # arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> SuperPolynomial:
        if isinstance(other, SuperPolynomial):
            if other.context != self.context:
                raise ContextMismatch("operands live in different variable contexts")
            return other
        if isinstance(other, (int, Fraction)):
            return self.context.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for k, c in other._terms.items():
            s = terms.get(k, 0) + c
            if s:
                terms[k] = s
            else:
                terms.pop(k, None)
        return SuperPolynomial._raw(self.context, terms)

    __radd__ = __add__

    def __neg__(self):
        return SuperPolynomial._raw(self.context, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c: Number) -> SuperPolynomial:
        c = as_fraction(c)
        if not c:
            return self.context.zero()
        return SuperPolynomial._raw(self.context, {k: v * c for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        cap = self.context.even_degree_cap
        has_even = self.context.even_count > 0
        terms: dict = {}
        for (ea, ma), ca in self._terms.items():
            for (eb, mb), cb in other._terms.items():
                if ma & mb:
                    continue
                sign = koszul_sign(ma, mb)
                if has_even:
                    e = tuple(x + y for x, y in zip(ea, eb))
                    if sum(e) > cap:
                        raise DegreeCapExceeded(f"even degree {sum(e)} exceeds cap {cap}")
                else:
                    e = ea
                key = (e, ma | mb)
                s = terms.get(key, 0) + (ca * cb if sign > 0 else -(ca * cb))
                if s:
                    terms[key] = s
                else:
                    terms.pop(key, None)
        return SuperPolynomial._raw(self.context, terms)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / as_fraction(other))
        return self * self._coerce(other).inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        result = self.context.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.context.const(other)
        if not isinstance(other, SuperPolynomial):
            return NotImplemented
        return self.context == other.context and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.context, frozenset(self._terms.items())))
        return self._hash

    # series -------------------------------------------------------------

    def _require_constant_body(self, what: str):
        if any(any(e) and not m for (e, m) in self._terms):
            raise ValueError(f"{what}: dependence on even variables outside the soul is unsupported")

    def is_invertible(self) -> bool:
        return self.body() != 0 and not any(any(e) and not m for (e, m) in self._terms)

    def inverse(self) -> SuperPolynomial:
        """Inverse via ``b^-1 * sum_k (-s/b)^k`` for body ``b`` and nilpotent soul ``s``."""
        b = self.body()
        if b == 0:
            raise NotInvertible("not invertible: element has zero body")
        self._require_constant_body("inverse")
        step = self.soul().scale(-1 / b)
        result = self.context.one()
        power = self.context.one()
        while True:
            power = power * step
            if power.is_zero():
                break
            result = result + power
        return result.scale(1 / b)

    def exp(self) -> SuperPolynomial:
        if self._terms and not self.is_nilpotent():
            raise ValueError("exp requires an element with every term in the soul ideal")
        if self.parity() != EVEN:
            raise ValueError("exp requires an even element")
        result = self.context.one()
        power = self.context.one()
        k = 0
        while True:
            k += 1
            power = (power * self).scale(Fraction(1, k))
            if power.is_zero():
                return result
            result = result + power

    def log(self) -> SuperPolynomial:
        if self.body() != 1:
            raise ValueError("log requires body exactly 1")
        n = self - 1
        if not n.is_nilpotent():
            raise ValueError("log requires 1 + (element of the soul ideal)")
        if self.parity() != EVEN:
            raise ValueError("log requires an even element")
        result = self.context.zero()
        power = self.context.one()
        k = 0
        while True:
            k += 1
            power = power * n
            if power.is_zero():
                return result
            term = power.scale(Fraction(1 if k % 2 else -1, k))
            result = result + term

    # calculus -----------------------------------------------------------

    def diff(self, var: int) -> SuperPolynomial:
        """Left partial derivative with respect to global variable ``var``."""
        ctx = self.context
        ctx._check_var(var)
        terms: dict = {}
        if var < ctx.even_count:
            for (e, m), c in self._terms.items():
                if e[var]:
                    ne = e[:var] + (e[var] - 1,) + e[var + 1:]
                    terms[(ne, m)] = terms.get((ne, m), 0) + c * e[var]
        else:
            bit = 1 << (var - ctx.even_count)
            for (e, m), c in self._terms.items():
                if m & bit:
                    # moving theta_var to the front passes the lower-index generators
                    sign = -1 if bin(m & (bit - 1)).count("1") & 1 else 1
                    key = (e, m ^ bit)
                    terms[key] = terms.get(key, 0) + sign * c
        return SuperPolynomial(ctx, terms)

    def substitute_zero(self) -> Fraction:
        return self.body()

    # display ------------------------------------------------------------

    def __repr__(self):
        return f"SuperPolynomial({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for (e, m), c in self.items():
            factors = []
            for i, k in enumerate(e):
                if k == 1:
                    factors.append(self.context.name(i))
                elif k:
                    factors.append(f"{self.context.name(i)}^{k}")
            i = 0
            mm = m
            while mm:
                if mm & 1:
                    factors.append(self.context.name(self.context.even_count + i))
                mm >>= 1
                i += 1
            mono = "*".join(factors)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def odd_indices(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _order_key(mono: Monomial):
    e, m = mono
    return (sum(e) + bin(m).count("1"), tuple(-x for x in e), odd_indices(m))
