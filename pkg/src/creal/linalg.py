"""Exact dense matrices over a field with involution."""

from __future__ import annotations

from ._parse import split_matrix_literal
from .field import Field
from .poly import Poly, lcm


class SingularMatrixError(ArithmeticError):
    pass


class Matrix:
    """Immutable dense matrix; ``rows`` is a tuple of row tuples."""

    __slots__ = ("field", "rows")

    def __init__(self, field: Field, rows):
        self.field = field
        self.rows = tuple(tuple(r) for r in rows)

    # -- constructors --------------------------------------------------
    @classmethod
    def identity(cls, F: Field, n: int) -> "Matrix":
        return cls(F, [[F.one if i == j else F.zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, F: Field, n: int, m: int | None = None) -> "Matrix":
        return cls(F, [[F.zero] * (n if m is None else m) for _ in range(n)])

    @classmethod
    def diag(cls, F: Field, entries) -> "Matrix":
        entries = list(entries)
        n = len(entries)
        return cls(F, [[entries[i] if i == j else F.zero for j in range(n)] for i in range(n)])

    @classmethod
    def antidiag(cls, F: Field, n: int) -> "Matrix":
        return cls(F, [[F.one if i + j == n - 1 else F.zero for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, F: Field, cols) -> "Matrix":
        cols = [list(c) for c in cols]
        return cls(F, list(zip(*cols)))

    @classmethod
    def block_diag(cls, F: Field, blocks) -> "Matrix":
        n = sum(b.n for b in blocks)
        rows = [[F.zero] * n for _ in range(n)]
        off = 0
        for b in blocks:
            for i in range(b.n):
                for j in range(b.n):
                    rows[off + i][off + j] = b.rows[i][j]
            off += b.n
        return cls(F, rows)

    @classmethod
    def parse(cls, F: Field, text: str) -> "Matrix":
        return cls(F, [[F.parse(e) for e in row] for row in split_matrix_literal(text)])

    # -- shape -------------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def is_square(self) -> bool:
        r, c = self.shape
        return r == c

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> list:
        return [r[j] for r in self.rows]

    def columns(self) -> list[list]:
        return [list(c) for c in zip(*self.rows)]

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other: "Matrix") -> "Matrix":
        F = self.field
        return Matrix(F, [[F.add(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        F = self.field
        return Matrix(F, [[F.sub(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "Matrix":
        F = self.field
        return Matrix(F, [[F.neg(a) for a in r] for r in self.rows])

    def scale(self, a) -> "Matrix":
        F = self.field
        return Matrix(F, [[F.mul(a, x) for x in r] for r in self.rows])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        F = self.field
        add, mul, zero = F.add, F.mul, F.zero
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = zero
                for a, b in zip(r, c):
                    if a != zero and b != zero:
                        acc = add(acc, mul(a, b))
                row.append(acc)
            out.append(row)
        return Matrix(F, out)

    def apply(self, v) -> list:
        F = self.field
        out = []
        for r in self.rows:
            acc = F.zero
            for a, b in zip(r, v):
                acc = F.add(acc, F.mul(a, b))
            out.append(acc)
        return out

    def __pow__(self, e: int) -> "Matrix":
        if e < 0:
            return self.inv() ** (-e)
        result, base = Matrix.identity(self.field, self.n), self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, list(zip(*self.rows)))

    def conj(self) -> "Matrix":
        """Entrywise involution ``g -> g^c``."""
        F = self.field
        return Matrix(F, [[F.conj(a) for a in r] for r in self.rows])

    def ct(self) -> "Matrix":
        """Conjugate transpose ``(g^c)^t``."""
        return self.conj().T

    def poly_eval(self, f: Poly) -> "Matrix":
        F = self.field
        acc = Matrix.zeros(F, self.n)
        for c in reversed(f.coeffs):
            acc = acc @ self
            acc = Matrix(F, [[F.add(x, c) if i == j else x for j, x in enumerate(r)] for i, r in enumerate(acc.rows)])
        return acc

    # -- elimination-based ----------------------------------------------
    def rref(self):
        """Reduced row echelon form and pivot columns."""
        return rref(self.field, [list(r) for r in self.rows])

    def rank(self) -> int:
        return len(self.rref()[1])

    def det(self):
        F = self.field
        n = self.n
        if n == 1:
            return self.rows[0][0]
        if n == 2:
            (a, b), (c, d) = self.rows
            return F.sub(F.mul(a, d), F.mul(b, c))
        m = [list(r) for r in self.rows]
        det = F.one
        for k in range(n):
            piv = next((i for i in range(k, n) if not F.is_zero(m[i][k])), None)
            if piv is None:
                return F.zero
            if piv != k:
                m[k], m[piv] = m[piv], m[k]
                det = F.neg(det)
            pk = m[k][k]
            det = F.mul(det, pk)
            inv = F.inv(pk)
            for i in range(k + 1, n):
                if F.is_zero(m[i][k]):
                    continue
                f = F.mul(m[i][k], inv)
                m[i] = [F.sub(a, F.mul(f, b)) if j >= k else a for j, (a, b) in enumerate(zip(m[i], m[k]))]
        return det

    def is_invertible(self) -> bool:
        return not self.field.is_zero(self.det())

    def inv(self) -> "Matrix":
        F = self.field
        n = self.n
        if n == 2:
            (a, b), (c, d) = self.rows
            det = F.sub(F.mul(a, d), F.mul(b, c))
            if F.is_zero(det):
                raise SingularMatrixError("matrix is singular")
            s = F.inv(det)
            return Matrix(F, [[F.mul(s, d), F.neg(F.mul(s, b))], [F.neg(F.mul(s, c)), F.mul(s, a)]])
        aug = [list(r) + [F.one if i == j else F.zero for j in range(n)] for i, r in enumerate(self.rows)]
        red, piv = rref(F, aug)
        if piv[:n] != list(range(n)):
            raise SingularMatrixError("matrix is singular")
        return Matrix(F, [r[n:] for r in red[:n]])

    def nullspace(self) -> list[list]:
        return nullspace(self.field, [list(r) for r in self.rows])

    def charpoly(self) -> Poly:
        return charpoly(self)

    def minpoly(self) -> Poly:
        return minpoly(self)

    # -- comparison / text -----------------------------------------------
    def is_identity(self) -> bool:
        F = self.field
        return all(x == (F.one if i == j else F.zero) for i, r in enumerate(self.rows) for j, x in enumerate(r))

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.rows == other.rows and self.field == other.field

    def __hash__(self):
        return hash((self.field.spec, self.rows))

    def to_literal(self) -> str:
        F = self.field
        return "[" + ";".join("[" + ",".join(F.fmt(a) for a in r) + "]" for r in self.rows) + "]"

    def to_lists(self) -> list[list[str]]:
        return [[self.field.fmt(a) for a in r] for r in self.rows]

    def __str__(self):
        cells = self.to_lists()
        width = max((len(c) for r in cells for c in r), default=1)
        return "\n".join("[" + " ".join(c.rjust(width) for c in r) + "]" for r in cells)

    def __repr__(self):
        return f"Matrix({self.to_literal()}, {self.field.spec})"


def rref(F: Field, m: list[list]):
    """Row-reduce ``m`` (a fresh list of lists) in place; returns (m, pivots)."""
    rows = len(m)
    cols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if not F.is_zero(m[i][c])), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = F.inv(m[r][c])
        m[r] = [F.mul(inv, a) for a in m[r]]
        pr = m[r]
        for i in range(rows):
            if i != r and not F.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(m[i], pr)]
        pivots.append(c)
        r += 1
    return m, pivots


def nullspace(F: Field, m: list[list]) -> list[list]:
    """Basis of ``{v : m v = 0}``; vectors come out in free-column order."""
    if not m:
        return []
    cols = len(m[0])
    red, piv = rref(F, [list(r) for r in m])
    free = [c for c in range(cols) if c not in piv]
    basis = []
    for f in free:
        v = [F.zero] * cols
        v[f] = F.one
        for i, pc in enumerate(piv):
            v[pc] = F.neg(red[i][f])
        basis.append(v)
    return basis


def column_space_basis(F: Field, vectors: list[list]) -> list[list]:
    """A basis (row-reduced) of the span of ``vectors``."""
    if not vectors:
        return []
    red, piv = rref(F, [list(v) for v in vectors])
    return red[: len(piv)]


def in_span(F: Field, basis_rref: list[list], v) -> bool:
    return rank_of(F, basis_rref + [list(v)]) == len(basis_rref)


def rank_of(F: Field, vectors: list[list]) -> int:
    if not vectors:
        return 0
    return len(rref(F, [list(v) for v in vectors])[1])


def charpoly(A: Matrix) -> Poly:
    """Characteristic polynomial via Hessenberg reduction (any field)."""
    F = A.field
    n = A.n
    H = [list(r) for r in A.rows]
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if not F.is_zero(H[i][m - 1])), None)
        if piv is None:
            continue
        if piv != m:
            H[m], H[piv] = H[piv], H[m]
            for r in H:
                r[m], r[piv] = r[piv], r[m]
        inv = F.inv(H[m][m - 1])
        for i in range(m + 1, n):
            u = F.mul(H[i][m - 1], inv)
            if F.is_zero(u):
                continue
            H[i] = [F.sub(a, F.mul(u, b)) for a, b in zip(H[i], H[m])]
            for r in H:
                r[m] = F.add(r[m], F.mul(u, r[i]))
    x = Poly.x(F)
    p = [Poly.one(F)]
    for m in range(1, n + 1):
        pm = (x - H[m - 1][m - 1]) * p[m - 1]
        t = F.one
        for i in range(1, m):
            t = F.mul(t, H[m - i][m - i - 1])
            pm = pm - p[m - i - 1].scale(F.mul(t, H[m - i - 1][m - 1]))
        p.append(pm)
    return p[n]


def krylov_annihilator(A: Matrix, v) -> Poly:
    """Monic generator of ``{f : f(A) v = 0}``."""
    F = A.field
    vecs = [list(v)]
    while True:
        nxt = A.apply(vecs[-1])
        # solve nxt = sum c_i vecs[i]
        mat = [list(col) for col in zip(*(vecs + [nxt]))]
        ns = nullspace(F, mat)
        if ns:
            c = ns[0]
            lead = c[-1]
            c = [F.div(a, lead) for a in c]
            return Poly(F, c)
        vecs.append(nxt)


def minpoly(A: Matrix) -> Poly:
    F = A.field
    n = A.n
    out = Poly.one(F)
    for j in range(n):
        e = [F.one if i == j else F.zero for i in range(n)]
        out = lcm(out, krylov_annihilator(A, e))
    return out
