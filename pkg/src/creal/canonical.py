"""Canonical forms over F and F[x].

The invariant factors of ``T`` come from the Smith normal form of the
characteristic matrix ``xI - T``.  Factoring them gives the elementary
divisors ``p^k``; :func:`primary_decomposition` then produces an explicit
basis in which ``T`` is block diagonal with one companion block per
elementary divisor.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass

from .linalg import Matrix, SingularMatrixError, column_space_basis, nullspace, rank_of
from .poly import FactorizationUnsupported, Poly, factor, factor_low_degree


def companion(f: Poly) -> Matrix:
    """Companion matrix with ones on the subdiagonal and ``-d_i`` in the last column.

    >>> from creal.field import make_field
    >>> F = make_field("Q")
    >>> companion(Poly.parse(F, "x^2 - 1")).to_literal()
    '[[0,1];[1,0]]'
    """
    F = f.field
    if not f.is_monic() or f.degree < 1:
        raise ValueError(f"companion() needs a monic polynomial of degree >= 1, got {f}")
    k = f.degree
    rows = [[F.zero] * k for _ in range(k)]
    for i in range(1, k):
        rows[i][i - 1] = F.one
    for i in range(k):
        rows[i][k - 1] = F.neg(f.coeffs[i])
    return Matrix(F, rows)


def characteristic_matrix(T: Matrix) -> list[list[Poly]]:
    F = T.field
    x = Poly.x(F)
    return [
        [(x if i == j else Poly.zero(F)) - T[i, j] for j in range(T.n)]
        for i in range(T.n)
    ]


def smith_diagonal(M: list[list[Poly]]) -> list[Poly]:
    """Diagonal of the Smith normal form of a square polynomial matrix.

    Pivot: nonzero entry of least degree, ties broken row-major.
    """
    M = [list(r) for r in M]
    n = len(M)
    diag = []
    for k in range(n):
        while True:
            best = None
            for i in range(k, n):
                for j in range(k, n):
                    e = M[i][j]
                    if not e.is_zero() and (best is None or e.degree < best[0]):
                        best = (e.degree, i, j)
            if best is None:
                diag.extend(Poly.zero(M[0][0].field) for _ in range(k, n))
                return diag
            _, i, j = best
            M[k], M[i] = M[i], M[k]
            for r in M:
                r[k], r[j] = r[j], r[k]
            piv = M[k][k]
            clean = True
            for i in range(k + 1, n):
                if M[i][k].is_zero():
                    continue
                q, rem = divmod(M[i][k], piv)
                M[i] = [a - q * b if c >= k else a for c, (a, b) in enumerate(zip(M[i], M[k]))]
                clean &= rem.is_zero()
            for j in range(k + 1, n):
                if M[k][j].is_zero():
                    continue
                q, rem = divmod(M[k][j], piv)
                for r in M[k:]:
                    r[j] = r[j] - q * r[k]
                clean &= rem.is_zero()
            if not clean:
                continue
            bad = next(
                (i for i in range(k + 1, n) for j in range(k + 1, n) if not (M[i][j] % piv).is_zero()),
                None,
            )
            if bad is None:
                break
            M[k] = [a + b if c >= k else a for c, (a, b) in enumerate(zip(M[k], M[bad]))]
        diag.append(M[k][k].monic())
    return diag


def smith_invariant_factors(T: Matrix) -> list[Poly]:
    """Non-unit invariant factors ``f_1 | f_2 | ... | f_r`` of ``xI - T``."""
    if not T.is_square():
        raise ValueError("square matrix required")
    return [d for d in smith_diagonal(characteristic_matrix(T)) if d.degree >= 1]


@dataclass(frozen=True)
class EDivisor:
    """Elementary divisor ``p^k`` occurring ``mult`` times."""

    p: Poly
    k: int
    mult: int = 1

    @property
    def poly(self) -> Poly:
        return self.p**self.k

    @property
    def size(self) -> int:
        return self.p.degree * self.k

    def key(self):
        return (self.p.key(), self.k)

    def to_json(self) -> dict:
        return {"p": str(self.p), "k": self.k, "mult": self.mult}

    def __str__(self):
        base = f"({self.p})" if self.k > 1 else f"{self.p}"
        return (f"{base}^{self.k}" if self.k > 1 else base) + (f" x{self.mult}" if self.mult > 1 else "")


def _factor_any(f: Poly):
    F = f.field
    if F.is_finite:
        return factor(f)
    if f.degree <= 2:
        return factor_low_degree(f)
    raise FactorizationUnsupported(f"cannot factor degree-{f.degree} invariant factor over {F.spec}")


def elementary_divisors(T: Matrix) -> list[EDivisor]:
    """Elementary divisors in canonical order ``(deg p, coefficients of p, k)``."""
    counts: Counter = Counter()
    for f in smith_invariant_factors(T):
        for p, k in _factor_any(f).factors:
            counts[(p, k)] += 1
    eds = [EDivisor(p, k, m) for (p, k), m in counts.items()]
    return sorted(eds, key=EDivisor.key)


@dataclass(frozen=True)
class Block:
    """One cyclic summand: columns ``start .. start+size-1`` of ``P``."""

    p: Poly
    k: int
    start: int

    @property
    def size(self) -> int:
        return self.p.degree * self.k

    @property
    def poly(self) -> Poly:
        return self.p**self.k

    @property
    def span(self) -> range:
        return range(self.start, self.start + self.size)


@dataclass(frozen=True)
class PrimaryDecomp:
    """``P^{-1} T P`` is block diagonal with companion(p^k) blocks."""

    T: Matrix
    P: Matrix
    blocks: tuple[Block, ...]
    divisors: tuple[EDivisor, ...]

    def block_matrix(self) -> Matrix:
        return Matrix.block_diag(self.T.field, [companion(b.poly) for b in self.blocks])

    def check(self) -> bool:
        return self.P @ self.block_matrix() == self.T @ self.P


def _orbit(T: Matrix, v, length: int) -> list[list]:
    out = [list(v)]
    for _ in range(length - 1):
        out.append(T.apply(out[-1]))
    return out


def primary_decomposition(T: Matrix) -> PrimaryDecomp:
    """Explicit cyclic decomposition of ``T`` into companion blocks.

    For each irreducible ``p`` with kernels ``K_j = ker p(T)^j``, generators of
    exponent ``k`` are picked from the standard basis of ``K_k`` modulo
    ``K_{k-1} + p(T) K_{k+1}`` and the orbits of earlier picks at that level.
    """
    F = T.field
    n = T.n
    eds = elementary_divisors(T)
    by_p: dict[Poly, dict[int, int]] = {}
    for ed in eds:
        by_p.setdefault(ed.p, {})[ed.k] = ed.mult

    picked: list[tuple[Poly, int, list]] = []
    for p, exps in by_p.items():
        d = p.degree
        top = max(exps)
        N = T.poly_eval(p)
        kernels = [[]]
        Nj = Matrix.identity(F, n)
        for _ in range(top + 1):
            Nj = Nj @ N
            kernels.append(nullspace(F, [list(r) for r in Nj.rows]))
        for k in range(top, 0, -1):
            need = exps.get(k, 0)
            if not need:
                continue
            base = list(kernels[k - 1]) + [N.apply(v) for v in kernels[k + 1]]
            span = column_space_basis(F, base)
            got = 0
            for v in kernels[k]:
                if got == need:
                    break
                if rank_of(F, span + [v]) == len(span):
                    continue
                span = column_space_basis(F, span + _orbit(T, v, d))
                picked.append((p, k, v))
                got += 1
            if got != need:  # pragma: no cover - contradicts module theory
                raise AssertionError(f"found {got} generators for ({p})^{k}, expected {need}")

    picked.sort(key=lambda t: (t[0].key(), t[1]))
    cols, blocks = [], []
    for p, k, v in picked:
        blocks.append(Block(p, k, len(cols)))
        cols += _orbit(T, v, p.degree * k)
    P = Matrix.from_columns(F, cols)
    dec = PrimaryDecomp(T, P, tuple(blocks), tuple(eds))
    if not P.is_invertible() or not dec.check():  # pragma: no cover
        raise AssertionError("primary decomposition failed verification")
    return dec


def cyclic_vector(A: Matrix, seed: int = 0):
    """A vector whose ``A``-orbit spans the space (``A`` must be cyclic)."""
    F = A.field
    n = A.n

    def ok(v):
        return rank_of(F, _orbit(A, v, n)) == n

    for i in range(n):
        v = [F.one if j == i else F.zero for j in range(n)]
        if ok(v):
            return v
    for i, j in itertools.combinations(range(n), 2):
        v = [F.one if t in (i, j) else F.zero for t in range(n)]
        if ok(v):
            return v
    rng = random.Random(seed)
    for _ in range(2000):
        v = [F.random_element(rng) for _ in range(n)]
        if ok(v):
            return v
    raise ValueError("matrix is not cyclic")


def krylov_matrix(A: Matrix, v) -> Matrix:
    return Matrix.from_columns(A.field, _orbit(A, v, A.n))


def companion_similarity(C: Matrix, M: Matrix) -> Matrix:
    """``X`` with ``X C X^{-1} = M`` for a companion ``C`` and cyclic ``M``
    sharing its characteristic polynomial."""
    X = krylov_matrix(M, cyclic_vector(M))
    if not X.is_invertible():  # pragma: no cover
        raise SingularMatrixError("Krylov matrix is singular")
    return X


def rational_canonical_form(T: Matrix) -> Matrix:
    """Block diagonal of companions of the invariant factors (Frobenius form)."""
    return Matrix.block_diag(T.field, [companion(f) for f in smith_invariant_factors(T)])


def mat_arith(A: Matrix, B: Matrix | None, op: str):
    """String-dispatched matrix operation, mirroring the CLI vocabulary."""
    ops = {
        "mul": lambda: A @ B,
        "add": lambda: A + B,
        "inv": A.inv,
        "det": A.det,
        "transpose": lambda: A.T,
        "conj": A.conj,
        "minpoly": A.minpoly,
        "charpoly": A.charpoly,
    }
    if op not in ops:
        raise ValueError(f"unknown op {op!r}")
    return ops[op]()

