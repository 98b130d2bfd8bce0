"""Exact fields with an involution.

Supported fields:

* ``F_p`` with the trivial involution;
* ``F_{r^2} = F_r(w)`` for ``r = p`` or a tower ``r = p^(2^k)``, with
  involution ``c: x -> x^r`` (the Frobenius of order two);
* ``Q`` with the trivial involution;
* ``Q(i)`` with complex conjugation.

Finite-field elements are plain ``int`` codes: in ``F_r(w)`` the element
``a + b*w`` (``a, b`` in ``F_r``) has code ``a + b*r``.  The integer order
of codes is the documented total order used wherever a "smallest" element
or a deterministic sweep is needed.  Rationals are ``Fraction`` and Gaussian
rationals are ``(re, im)`` tuples of ``Fraction``.

All field objects are immutable after construction (the numpy tables used
by the brute-force oracles are derived lazily from immutable data).
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import cached_property

import numpy as np

from ._parse import ParseError, Ring, parse_expr


class FieldError(ValueError):
    """Malformed field spec or an impossible field operation."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Field:
    """Common interface of all supported fields.

    Subclasses provide the arithmetic; the helpers here are written once.
    """

    kind: str
    p: int
    char: int
    q: int | None
    involution_trivial: bool
    spec: str
    zero: object
    one: object

    # -- arithmetic (overridden) ---------------------------------------
    def from_int(self, n: int): ...
    def add(self, a, b): ...
    def neg(self, a): ...
    def mul(self, a, b): ...
    def inv(self, a): ...
    def conj(self, a): ...

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == self.zero

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def norm(self, a):
        """``a * a^c``, an element of the fixed field."""
        return self.mul(a, self.conj(a))

    # -- structure -------------------------------------------------------
    @property
    def is_finite(self) -> bool:
        return self.q is not None

    def elements(self):
        if self.q is None:
            raise FieldError(f"{self.spec} is infinite")
        return range(self.q)

    def key(self, a):
        """Sort key realising the documented total order."""
        return a

    def embed_fixed(self, e):
        """Image of an element of the fixed field E inside F."""
        return self.from_fixed_coords((e,) + (self.fixed_field.zero,) * (self.fixed_degree - 1))

    def fixed_elements(self):
        return [a for a in self.elements() if self.conj(a) == a]

    @property
    def fixed_field(self) -> "Field":
        return self

    def fixed_coords(self, a) -> tuple:
        """Coordinates of ``a`` over the fixed field E (basis 1, w)."""
        return (a,)

    def from_fixed_coords(self, coords):
        (a,) = coords
        return a

    @property
    def fixed_degree(self) -> int:
        return 1

    def special_element(self):
        """``w`` with ``1 + w + w^c = 0`` (char 2) or ``w^c = -w, w != 0``."""
        raise FieldError(f"{self.spec}: trivial involution has no special element")

    def random_element(self, rng: random.Random):
        return rng.randrange(self.q)

    # -- text ------------------------------------------------------------
    def fmt(self, a) -> str:
        return str(a)

    @property
    def symbols(self) -> dict:
        return {}

    def parse(self, text) -> object:
        if not isinstance(text, str):
            return self.from_int(int(text)) if isinstance(text, int) else text
        ring = Ring(
            from_int=self.from_int,
            add=self.add,
            sub=self.sub,
            mul=self.mul,
            div=self._checked_div,
            neg=self.neg,
            pow=self.pow,
            symbols=self.symbols,
        )
        return parse_expr(text, ring)

    def _checked_div(self, a, b):
        if self.is_zero(b):
            raise ParseError("division by zero in literal")
        return self.div(a, b)

    def __repr__(self):
        return f"<Field {self.spec}>"

    def __eq__(self, other):
        return isinstance(other, Field) and other.spec == self.spec

    def __hash__(self):
        return hash(self.spec)

    # -- numpy tables for vectorised brute force ------------------------
    @cached_property
    def tables(self) -> dict[str, np.ndarray]:
        if self.q is None or self.q > 1024:
            raise FieldError(f"no lookup tables for {self.spec}")
        els = range(self.q)
        add = np.array([[self.add(a, b) for b in els] for a in els], dtype=np.int32)
        mul = np.array([[self.mul(a, b) for b in els] for a in els], dtype=np.int32)
        conj = np.array([self.conj(a) for a in els], dtype=np.int32)
        neg = np.array([self.neg(a) for a in els], dtype=np.int32)
        return {"add": add, "mul": mul, "conj": conj, "neg": neg}


class PrimeField(Field):
    kind = "Fp"

    def __init__(self, p: int, symbol: str | None = None):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = self.char = self.q = p
        self.involution_trivial = True
        self.spec = f"F{p}"
        self.zero, self.one = 0, 1

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def conj(self, a):
        return a

    def w_def(self):
        return {}


class QuadraticExtension(Field):
    """``base[w] / (w^2 - t*w - n)`` with ``c: x -> x^r`` (or trivial ``c``).

    The minimal polynomial is chosen deterministically: ``w^2 + w + a`` in
    characteristic two and ``w^2 - a`` otherwise, ``a`` the smallest base
    element (by code) making it irreducible.
    """

    kind = "Fp2"

    def __init__(self, base: Field, symbol: str = "w", involution_trivial: bool = False):
        if base.q is None:
            raise FieldError("QuadraticExtension needs a finite base")
        self.base = base
        self.p = self.char = base.char
        r = self.r = base.q
        q = self.q = r * r
        if q > 1 << 16:
            raise FieldError(f"field of order {q} is too large")
        self.involution_trivial = involution_trivial
        self.spec = f"F{q}" + (":c=id" if involution_trivial else "")
        self.zero, self.one = 0, 1

        squares = {base.mul(a, a) for a in base.elements()}
        if self.char == 2:
            # w^2 + w + a irreducible  <=>  no b with b^2 + b = a
            hits = {base.add(base.mul(b, b), b) for b in base.elements()}
            a = next(a for a in base.elements() if a not in hits)
            self.t, self.n = base.one, a
        else:
            a = next(a for a in base.elements() if a not in squares)
            self.t, self.n = base.zero, a
        self.symbol = "i" if base.neg(base.one) == self.n and self.t == 0 else symbol

        # log / exp tables via a primitive element
        mul = self._mul_slow
        for g in range(2, q):
            x, order = g, 1
            while x != 1:
                x = mul(x, g)
                order += 1
                if order > q - 1:
                    break
            if order == q - 1:
                break
        else:  # pragma: no cover - F_4 and up always have one
            raise FieldError("no primitive element found")
        exp = [1] * (2 * (q - 1))
        for k in range(1, 2 * (q - 1)):
            exp[k] = mul(exp[k - 1], g)
        log = [0] * q
        for k in range(q - 1):
            log[exp[k]] = k
        self._exp, self._log = exp, log
        self.generator = g
        self._neg = [self._combine(base.neg(x % r), base.neg(x // r)) for x in range(q)]
        if involution_trivial:
            self._conj = list(range(q))
        else:
            self._conj = [
                self._combine(base.add(x % r, base.mul(x // r, self.t)), base.neg(x // r))
                for x in range(q)
            ]
        self._add_table = (
            [[self._add_slow(a, b) for b in range(q)] for a in range(q)] if q <= 256 else None
        )

    def _combine(self, a0, a1):
        return a0 + a1 * self.r

    def _add_slow(self, a, b):
        r, base = self.r, self.base
        return self._combine(base.add(a % r, b % r), base.add(a // r, b // r))

    def _mul_slow(self, a, b):
        r, B = self.r, self.base
        a0, a1, b0, b1 = a % r, a // r, b % r, b // r
        hh = B.mul(a1, b1)
        c0 = B.add(B.mul(a0, b0), B.mul(hh, self.n))
        c1 = B.add(B.add(B.mul(a0, b1), B.mul(a1, b0)), B.mul(hh, self.t))
        return self._combine(c0, c1)

    def from_int(self, n):
        return self.base.from_int(n)

    def add(self, a, b):
        if self._add_table is not None:
            return self._add_table[a][b]
        return self._add_slow(a, b)

    def neg(self, a):
        return self._neg[a]

    def sub(self, a, b):
        return self.add(a, self._neg[b])

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def pow(self, a, e):
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def conj(self, a):
        return self._conj[a]

    @property
    def w(self):
        return self.r

    def w_def(self):
        return {
            "symbol": self.symbol,
            "t": self.base.fmt(self.t),
            "n": self.base.fmt(self.n),
            "relation": (
                f"{self.symbol}^2 = {self.base.fmt(self.n)}"
                if self.t == self.base.zero
                else f"{self.symbol}^2 = {self.symbol} + {self.base.fmt(self.n)}"
            ),
        }

    @property
    def fixed_field(self):
        return self if self.involution_trivial else self.base

    def fixed_coords(self, a):
        if self.involution_trivial:
            return (a,)
        return (a % self.r, a // self.r)

    def from_fixed_coords(self, coords):
        if self.involution_trivial:
            (a,) = coords
            return a
        return self._combine(*coords)

    @property
    def fixed_degree(self):
        return 1 if self.involution_trivial else 2

    def special_element(self):
        if self.involution_trivial:
            return super().special_element()
        return self.w

    def coords(self, a):
        """``(a0, a1)`` with ``a = a0 + a1*w``, both in the base field."""
        return a % self.r, a // self.r

    @property
    def symbols(self):
        out = dict(self.base.symbols)
        if isinstance(self.base, QuadraticExtension):
            # the base generator is renamed so the top one keeps ``w``
            out = {"u": self.base.w}
        out[self.symbol] = self.w
        out["w"] = self.w
        return out

    def fmt(self, a) -> str:
        a0, a1 = self.coords(a)
        B = self.base
        if isinstance(B, QuadraticExtension):
            bf = lambda x: B.fmt(x).replace(B.symbol, "u")  # noqa: E731
        else:
            bf = B.fmt
        if a1 == 0:
            return bf(a0)
        s1 = bf(a1)
        if "+" in s1 or "-" in s1:
            s1 = f"({s1})"
        gen = self.symbol if s1 == "1" else f"{s1}*{self.symbol}"
        return gen if a0 == 0 else f"{bf(a0)}+{gen}"


class RationalField(Field):
    kind = "Q"

    def __init__(self):
        self.p = self.char = 0
        self.q = None
        self.involution_trivial = True
        self.spec = "Q"
        self.zero, self.one = Fraction(0), Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return a / b

    def conj(self, a):
        return a

    def random_element(self, rng):
        return Fraction(rng.randint(-9, 9), rng.randint(1, 4))

    def w_def(self):
        return {}


class GaussianField(Field):
    """``Q(i)``; elements are ``(re, im)`` pairs of ``Fraction``."""

    kind = "Qi"
    symbol = "i"

    def __init__(self):
        self.p = self.char = 0
        self.q = None
        self.involution_trivial = False
        self.spec = "Qi"
        self.zero, self.one = (Fraction(0), Fraction(0)), (Fraction(1), Fraction(0))
        self._Q = RationalField()

    def from_int(self, n):
        return (Fraction(n), Fraction(0))

    def add(self, a, b):
        return (a[0] + b[0], a[1] + b[1])

    def sub(self, a, b):
        return (a[0] - b[0], a[1] - b[1])

    def neg(self, a):
        return (-a[0], -a[1])

    def mul(self, a, b):
        return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])

    def inv(self, a):
        d = a[0] * a[0] + a[1] * a[1]
        if d == 0:
            raise ZeroDivisionError("inverse of zero")
        return (a[0] / d, -a[1] / d)

    def conj(self, a):
        return (a[0], -a[1])

    @property
    def fixed_field(self):
        return self._Q

    def fixed_coords(self, a):
        return a

    def from_fixed_coords(self, coords):
        return (Fraction(coords[0]), Fraction(coords[1]))

    @property
    def fixed_degree(self):
        return 2

    def special_element(self):
        return (Fraction(0), Fraction(1))

    def random_element(self, rng):
        return (Fraction(rng.randint(-9, 9), rng.randint(1, 4)), Fraction(rng.randint(-9, 9), rng.randint(1, 4)))

    @property
    def symbols(self):
        i = (Fraction(0), Fraction(1))
        return {"i": i, "w": i}

    def fmt(self, a):
        re, im = a
        if im == 0:
            return str(re)
        sim = "i" if im == 1 else "-i" if im == -1 else f"{im}*i"
        if re == 0:
            return sim
        return f"{re}{sim}" if sim.startswith("-") else f"{re}+{sim}"

    def w_def(self):
        return {"symbol": "i", "relation": "i^2 = -1"}


def _prime_power_root(q: int) -> int | None:
    """``r`` with ``r*r == q`` or ``None``."""
    r = int(round(q ** 0.5))
    for cand in (r - 1, r, r + 1):
        if cand > 1 and cand * cand == q:
            return cand
    return None


def _finite_field(q: int, trivial: bool, symbol: str = "w") -> Field:
    if is_prime(q):
        if not trivial:
            raise FieldError(f"F{q} has no non-trivial involution")
        return PrimeField(q)
    r = _prime_power_root(q)
    if r is None:
        raise FieldError(f"F{q}: order must be p or r^2 with r a supported field order")
    base = _finite_field(r, True, "u" if not is_prime(r) else "w")
    return QuadraticExtension(base, symbol=symbol, involution_trivial=trivial)


def make_field(spec: str) -> Field:
    """Build a field with involution from a spec string.

    Grammar: ``F<q>`` (``q`` prime: trivial ``c``; ``q = r^2``: ``c = x^r``),
    ``Fp2:p=<prime>``, ``Q``, ``Qi``.  Appending ``:c=id`` to a finite
    quadratic field selects the trivial involution instead.

    >>> make_field("F9").fmt(make_field("F9").w)
    'i'
    """
    s = "".join(str(spec).split())
    trivial = False
    if s.endswith(":c=id"):
        trivial, s = True, s[: -len(":c=id")]
    if s == "Q":
        return RationalField()
    if s == "Qi":
        if trivial:
            raise FieldError("Qi with trivial involution is not supported; use Q")
        return GaussianField()
    if s.startswith("Fp2:p="):
        try:
            p = int(s[len("Fp2:p="):])
        except ValueError:
            raise FieldError(f"malformed field spec {spec!r}") from None
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        return QuadraticExtension(PrimeField(p), involution_trivial=trivial)
    if s.startswith("F") and s[1:].isdigit():
        q = int(s[1:])
        if is_prime(q):
            return PrimeField(q)
        return _finite_field(q, trivial)
    raise FieldError(f"malformed field spec {spec!r}")


def involute(F: Field, a):
    return F.conj(a)


def special_element(F: Field):
    if F.involution_trivial:
        raise FieldError(f"{F.spec}: involution is trivial")
    return F.special_element()
