"""Univariate polynomials over a :class:`~creal.field.Field`.

Besides ordinary arithmetic this module provides the involution-twisted
*dual* of a polynomial,

    f*(x) = (f(0)^c)^{-1} x^d f^c(1/x),

which sends every root ``a`` to ``(a^c)^{-1}``, and complete factorization
over finite fields (squarefree, distinct-degree, equal-degree splitting).
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import count

from ._parse import ParseError, Ring, parse_expr
from .field import Field


class FactorizationUnsupported(NotImplementedError):
    """Factorization is only available over finite fields (and low degree in char 0)."""


class DualUndefined(ValueError):
    """``dual`` needs a nonzero constant term."""


class NonMonicWarning(UserWarning):
    pass


class Poly:
    """Immutable polynomial; ``coeffs[i]`` is the coefficient of ``x^i``."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs):
        coeffs = list(coeffs)
        while coeffs and field.is_zero(coeffs[-1]):
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)

    # -- constructors ----------------------------------------------------
    @classmethod
    def x(cls, F: Field) -> "Poly":
        return cls(F, [F.zero, F.one])

    @classmethod
    def const(cls, F: Field, a) -> "Poly":
        return cls(F, [a])

    @classmethod
    def one(cls, F: Field) -> "Poly":
        return cls(F, [F.one])

    @classmethod
    def zero(cls, F: Field) -> "Poly":
        return cls(F, [])

    @classmethod
    def from_roots(cls, F: Field, roots) -> "Poly":
        f = cls.one(F)
        for r in roots:
            f = f * cls(F, [F.neg(r), F.one])
        return f

    @classmethod
    def parse(cls, F: Field, text: str) -> "Poly":
        lift = lambda a: cls.const(F, a)  # noqa: E731
        symbols = {k: lift(v) for k, v in F.symbols.items()}
        symbols["x"] = cls.x(F)

        def div(a, b):
            if b.degree != 0:
                raise ParseError("only division by constants is allowed in polynomial literals")
            return a.scale(F.inv(b.coeffs[0]))

        ring = Ring(
            from_int=lambda n: lift(F.from_int(n)),
            add=lambda a, b: a + b,
            sub=lambda a, b: a - b,
            mul=lambda a, b: a * b,
            div=div,
            neg=lambda a: -a,
            pow=lambda a, e: a**e,
            symbols=symbols,
        )
        return parse_expr(text, ring)

    # -- basic properties ---------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (self.field.one,)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def key(self):
        """Deterministic order: degree first, then coefficients from the top."""
        return (self.degree, tuple(self.field.key(c) for c in reversed(self.coeffs)))

    # -- arithmetic ----------------------------------------------------
    def _lift(self, other):
        # bare values are field elements, never integer literals
        if isinstance(other, Poly):
            return other
        return Poly.const(self.field, other)

    def __add__(self, other):
        other = self._lift(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly(F, [F.add(x, b[i]) if i < len(b) else x for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Poly(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(F, [])
        out = [F.zero] * (len(a) + len(b) - 1)
        add, mul = F.add, F.mul
        for i, x in enumerate(a):
            if F.is_zero(x):
                continue
            for j, y in enumerate(b):
                out[i + j] = add(out[i + j], mul(x, y))
        return Poly(F, out)

    __rmul__ = __mul__

    def scale(self, a) -> "Poly":
        F = self.field
        return Poly(F, [F.mul(a, c) for c in self.coeffs])

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative polynomial power")
        result, base = Poly.one(self.field), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        other = self._lift(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        rem = list(self.coeffs)
        dq = other.degree
        if len(rem) <= dq:
            return Poly(F, []), self
        inv_lc = F.inv(other.lc)
        quo = [F.zero] * (len(rem) - dq)
        oc = other.coeffs
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if F.is_zero(c):
                continue
            c = F.mul(c, inv_lc)
            quo[k - dq] = c
            for j in range(dq + 1):
                rem[k - dq + j] = F.sub(rem[k - dq + j], F.mul(c, oc[j]))
        return Poly(F, quo), Poly(F, rem[:dq])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def divides(self, other) -> bool:
        return (other % self).is_zero()

    def __call__(self, a):
        F = self.field
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, a), c)
        return acc

    def monic(self) -> "Poly":
        if self.is_zero() or self.is_monic():
            return self
        return self.scale(self.field.inv(self.lc))

    def conj(self) -> "Poly":
        F = self.field
        return Poly(F, [F.conj(c) for c in self.coeffs])

    def derivative(self) -> "Poly":
        F = self.field
        return Poly(F, [F.mul(F.from_int(i), c) for i, c in enumerate(self.coeffs)][1:])

    # -- comparison / text -------------------------------------------
    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs and self.field == other.field

    def __hash__(self):
        return hash((self.field.spec, self.coeffs))

    def __str__(self):
        F = self.field
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if F.is_zero(c):
                continue
            s = F.fmt(c)
            if any(ch in s[1:] for ch in "+-*/"):
                s = f"({s})"
            if i == 0:
                terms.append(s)
                continue
            mono = "x" if i == 1 else f"x^{i}"
            if s == "1":
                terms.append(mono)
            elif s == "-1":
                terms.append("-" + mono)
            else:
                terms.append(f"{s}*{mono}")
        out = terms[0]
        for t in terms[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out

    def __repr__(self):
        return f"Poly({self}, {self.field.spec})"


def gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd (zero if both are zero)."""
    while not g.is_zero():
        f, g = g, f % g
    return f.monic()


def lcm(f: Poly, g: Poly) -> Poly:
    if f.is_zero() or g.is_zero():
        return Poly.zero(f.field)
    return (f * g).exact_div(gcd(f, g)).monic()


def conj_poly(f: Poly) -> Poly:
    return f.conj()


def dual(f: Poly) -> Poly:
    """``(f(0)^c)^{-1} x^d f^c(1/x)``, always returned monic."""
    if f.is_zero() or f.degree < 1:
        raise DualUndefined("dual of a constant")
    if not f.is_monic():
        warnings.warn(f"dual(): normalising non-monic {f}", NonMonicWarning, stacklevel=2)
        f = f.monic()
    F = f.field
    a0 = f.coeffs[0]
    if F.is_zero(a0):
        raise DualUndefined(f"{f} has root 0")
    s = F.inv(F.conj(a0))
    return Poly(F, [F.mul(s, F.conj(c)) for c in reversed(f.coeffs)]).monic()


def linear_power(f: Poly):
    """``(a, k)`` when ``f == (x - a)^k``, else ``None``."""
    F = f.field
    k = f.degree
    if k < 1 or not f.is_monic():
        return None
    a = F.div(F.neg(f.coeffs[k - 1]), F.from_int(k)) if F.from_int(k) != F.zero else None
    candidates = [a] if a is not None else [F.one, F.neg(F.one)]
    for a in candidates:
        if f == Poly(F, [F.neg(a), F.one]) ** k:
            return a, k
    return None


def is_unipotent_type(f: Poly) -> bool:
    """True when ``f`` is a power of ``x - 1`` or ``x + 1``."""
    lp = linear_power(f)
    F = f.field
    return lp is not None and lp[0] in (F.one, F.neg(F.one))


def is_self_dual(f: Poly) -> bool:
    """Self-duality with the convention that powers of ``x +- 1`` count."""
    if f.degree < 1:
        return False
    f = f.monic()
    if is_unipotent_type(f):
        return True
    if f.field.is_zero(f.coeffs[0]):
        return False
    return dual(f) == f


# ---------------------------------------------------------------------------
# factorization
# ---------------------------------------------------------------------------


@dataclass
class Factorization:
    unit: object
    factors: list  # [(monic irreducible Poly, exponent)]

    def expand(self, F: Field) -> Poly:
        out = Poly.const(F, self.unit)
        for p, e in self.factors:
            out = out * p**e
        return out


def _pow_mod(base: Poly, e: int, mod: Poly) -> Poly:
    result = Poly.one(base.field)
    base = base % mod
    while e:
        if e & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        e >>= 1
    return result


def _pth_root(f: Poly) -> Poly:
    F = f.field
    p, q = F.char, F.q
    e = q // p
    return Poly(F, [F.pow(f.coeffs[i], e) for i in range(0, len(f.coeffs), p)])


def _squarefree(f: Poly) -> list[tuple[Poly, int]]:
    F = f.field
    p = F.char
    out = []
    fp = f.derivative()
    if fp.is_zero():
        return [(g, e * p) for g, e in _squarefree(_pth_root(f))]
    c = gcd(f, fp)
    w = f.exact_div(c)
    i = 1
    while not w.is_one():
        y = gcd(w, c)
        fac = w.exact_div(y)
        if not fac.is_one():
            out.append((fac.monic(), i))
        w, c = y, c.exact_div(y)
        i += 1
    if not c.is_one():
        out += [(g, e * p) for g, e in _squarefree(_pth_root(c))]
    return out


def _distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    F = f.field
    x = Poly.x(F)
    out = []
    h = x
    i = 1
    while f.degree >= 2 * i:
        h = _pow_mod(h, F.q, f)
        g = gcd(f, h - x)
        if not g.is_one():
            out.append((g, i))
            f = f.exact_div(g)
            h = h % f
        i += 1
    if f.degree > 0:
        out.append((f.monic(), f.degree))
    return out


def _trial_polys(F: Field, deg: int, seed: int = 0):
    """Deterministic candidates (base-q digits of 1, 2, ...), then seeded random."""
    q = F.q
    for k in count(1):
        if k > 512:
            break
        digits, m = [], k
        while m:
            digits.append(m % q)
            m //= q
        if len(digits) > deg:
            break
        if len(digits) >= 2:
            yield Poly(F, digits)
    rng = random.Random(seed)
    while True:
        yield Poly(F, [rng.randrange(q) for _ in range(deg)])


def _split_witness(a: Poly, f: Poly, d: int) -> Poly:
    F = f.field
    if F.char == 2:
        m = (F.q.bit_length() - 1) * d
        t, acc = a % f, a % f
        for _ in range(m - 1):
            t = (t * t) % f
            acc = acc + t
        return gcd(acc, f)
    e = (F.q**d - 1) // 2
    return gcd(_pow_mod(a, e, f) - Poly.one(F), f)


def _equal_degree(f: Poly, d: int) -> list[Poly]:
    if f.degree == d:
        return [f]
    pending, done = [f], []
    trials = _trial_polys(f.field, f.degree)
    while pending:
        g = pending.pop()
        if g.degree == d:
            done.append(g)
            continue
        for a in trials:
            h = gcd(a, g)
            if 0 < h.degree < g.degree:
                break
            h = _split_witness(a, g, d)
            if 0 < h.degree < g.degree:
                break
        pending += [h, g.exact_div(h).monic()]
    return done


def factor(f: Poly) -> Factorization:
    """Complete factorization over a finite field.

    Output order is deterministic: sorted by degree, then coefficients.

    >>> from creal.field import make_field
    >>> F = make_field("F4")
    >>> [str(p) for p, _ in factor(Poly.parse(F, "x^2+x+1")).factors]
    ['x + w', 'x + (1+w)']
    """
    F = f.field
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if not F.is_finite:
        raise FactorizationUnsupported(f"factorization over {F.spec} is not supported")
    unit = f.lc
    f = f.monic()
    acc: dict[Poly, int] = {}
    if f.degree > 0:
        for g, e in _squarefree(f):
            for h, d in _distinct_degree(g):
                for irr in _equal_degree(h, d):
                    acc[irr] = acc.get(irr, 0) + e
    factors = sorted(acc.items(), key=lambda t: (t[0].key(), t[1]))
    return Factorization(unit, factors)


def _sqrt_exact(F: Field, a):
    """Square root in Q or Q(i) when it exists, else ``None``."""

    def qsqrt(r: Fraction):
        if r < 0:
            return None
        n, d = r.numerator, r.denominator
        from math import isqrt

        sn, sd = isqrt(n), isqrt(d)
        return Fraction(sn, sd) if sn * sn == n and sd * sd == d else None

    if F.kind == "Q":
        return qsqrt(a)
    re, im = a
    mod = qsqrt(re * re + im * im)
    if mod is None:
        return None
    x = qsqrt((re + mod) / 2)
    if x is None:
        return None
    if x == 0:
        y = qsqrt(-re)
        return None if y is None else (Fraction(0), y)
    return (x, im / (2 * x))


def factor_low_degree(f: Poly) -> Factorization:
    """Factor ``f`` of degree <= 2 over Q or Q(i) via the quadratic formula."""
    F = f.field
    if F.is_finite:
        return factor(f)
    unit = f.lc
    f = f.monic()
    if f.degree <= 1:
        return Factorization(unit, [(f, 1)] if f.degree == 1 else [])
    if f.degree > 2:
        raise FactorizationUnsupported(f"degree {f.degree} factorization over {F.spec}")
    b, c = f.coeffs[1], f.coeffs[0]
    two = F.from_int(2)
    disc = F.sub(F.mul(b, b), F.mul(F.from_int(4), c))
    s = _sqrt_exact(F, disc)
    if s is None:
        return Factorization(unit, [(f, 1)])
    r1 = F.div(F.add(F.neg(b), s), two)
    r2 = F.div(F.sub(F.neg(b), s), two)
    l1, l2 = Poly.from_roots(F, [r1]), Poly.from_roots(F, [r2])
    if l1 == l2:
        return Factorization(unit, [(l1, 2)])
    return Factorization(unit, sorted([(l1, 1), (l2, 1)], key=lambda t: t[0].key()))
