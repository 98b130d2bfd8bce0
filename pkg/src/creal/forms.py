"""Invariant sesquilinear forms.

A form with Gram matrix ``H`` is invariant under ``T`` when
``(T^c)^t H T = H`` (for the ``symmetric-bilinear`` kind the plain transpose
is used).  This module holds the block constructions used to assemble an
invariant nondegenerate hermitian form, plus a direct solver for the space
of all invariant forms, which needs no factorization.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

import numpy as np

from ._batch import batch_det
from .canonical import companion, krylov_matrix
from .field import Field, FieldError
from .linalg import Matrix, nullspace, rank_of
from .poly import Poly, factor, is_self_dual, is_unipotent_type

HERMITIAN = "hermitian"
SKEW = "skew-hermitian"
SYMMETRIC = "symmetric-bilinear"
KINDS = (HERMITIAN, SKEW, SYMMETRIC)

_KIND_ALIASES = {"hermitian": HERMITIAN, "skew": SKEW, "skew-hermitian": SKEW,
                 "symmetric": SYMMETRIC, "symmetric-bilinear": SYMMETRIC}


def normalize_kind(kind: str) -> str:
    try:
        return _KIND_ALIASES[kind]
    except KeyError:
        raise ValueError(f"unknown form kind {kind!r}") from None


class SearchExhausted(RuntimeError):
    pass


def adjoint(M: Matrix, kind: str) -> Matrix:
    return M.T if kind == SYMMETRIC else M.ct()


def has_symmetry(H: Matrix, kind: str) -> bool:
    if kind == SKEW:
        return H == -H.ct()
    return H == adjoint(H, kind)


def is_invariant(T: Matrix, H: Matrix, kind: str = HERMITIAN) -> bool:
    return adjoint(T, kind) @ H @ T == H


@dataclass
class FormCert:
    """A verified invariant form ``H`` for some ``T``."""

    H: Matrix
    kind: str = HERMITIAN
    nondegenerate: bool = True
    methods: list = field(default_factory=list)

    def check(self, T: Matrix) -> bool:
        return (
            has_symmetry(self.H, self.kind)
            and is_invariant(T, self.H, self.kind)
            and self.nondegenerate == self.H.is_invertible()
        )


# ---------------------------------------------------------------------------
# E-linear systems
# ---------------------------------------------------------------------------


def _e_basis(F: Field) -> list:
    """F-images of the E-basis ``1, w`` (just ``1`` for a trivial involution)."""
    E, d = F.fixed_field, F.fixed_degree
    return [F.from_fixed_coords(tuple(E.one if s == t else E.zero for t in range(d))) for s in range(d)]


def e_linear_kernel(F: Field, n_unknowns: int, equations) -> list[list]:
    """Kernel of an E-linear map ``F^n -> F^m`` given as a Python callable.

    Returns F-vectors forming an E-basis of the kernel.
    """
    E = F.fixed_field
    basis = _e_basis(F)
    cols = []
    for u in range(n_unknowns):
        for b in basis:
            vec = [F.zero] * n_unknowns
            vec[u] = b
            col = []
            for val in equations(vec):
                col.extend(F.fixed_coords(val))
            cols.append(col)
    rows = [list(r) for r in zip(*cols)] if cols and cols[0] else [[E.zero] * len(cols)]
    out = []
    for v in nullspace(E, rows):
        vec = []
        for u in range(n_unknowns):
            acc = F.zero
            for s, b in enumerate(basis):
                acc = F.add(acc, F.mul(F.embed_fixed(v[u * len(basis) + s]), b))
            vec.append(acc)
        out.append(vec)
    return out


def generic_form_space(T: Matrix, kind: str = HERMITIAN) -> list[Matrix]:
    """E-basis of ``{H : adj(T) H T = H, H has the symmetry of kind}``."""
    kind = normalize_kind(kind)
    F, n = T.field, T.n
    Ta = adjoint(T, kind)

    def equations(vals):
        H = Matrix(F, [vals[i * n:(i + 1) * n] for i in range(n)])
        inv = Ta @ H @ T - H
        if kind == SKEW:
            sym = H + H.ct()
        else:
            sym = H - adjoint(H, kind)
        return [a for r in inv.rows for a in r] + [a for r in sym.rows for a in r]

    return [Matrix(F, [v[i * n:(i + 1) * n] for i in range(n)]) for v in e_linear_kernel(F, n * n, equations)]


# ---------------------------------------------------------------------------
# searching a linear family for a nondegenerate / invertible member
# ---------------------------------------------------------------------------


def _fixed_values(F: Field) -> list:
    E = F.fixed_field
    return [F.embed_fixed(e) for e in E.elements()]


def _combine(F: Field, coeffs, mats: list[Matrix]) -> Matrix:
    n, m = mats[0].shape
    rows = [[F.zero] * m for _ in range(n)]
    for c, M in zip(coeffs, mats):
        if F.is_zero(c):
            continue
        for i in range(n):
            ri, Mi = rows[i], M.rows[i]
            for j in range(m):
                if not F.is_zero(Mi[j]):
                    ri[j] = F.add(ri[j], F.mul(c, Mi[j]))
    return Matrix(F, rows)


def _coefficient_stream(F: Field, values: list, dim: int, seed: int, cap: int):
    """Coefficient tuples: every unit vector, then exhaustive product order
    (when ``len(values)**dim <= cap``) or seeded random draws."""
    for s in range(dim):
        yield tuple(F.one if t == s else F.zero for t in range(dim))
    if len(values) ** dim <= cap:
        for c in itertools.product(values, repeat=dim):
            yield c
        return
    rng = random.Random(seed)
    for _ in range(cap):
        yield tuple(rng.choice(values) for _ in range(dim))


def _small_integers(F: Field, dim: int, seed: int, cap: int):
    vals = [F.from_int(v) for v in (0, 1, -1, 2, -2, 3)]
    for s in range(dim):
        yield tuple(F.one if t == s else F.zero for t in range(dim))
    budget = cap
    for c in itertools.product(vals, repeat=dim):
        yield c
        budget -= 1
        if budget <= 0:
            break
    rng = random.Random(seed)
    for _ in range(cap):
        yield tuple(F.from_int(rng.randint(-9, 9)) for _ in range(dim))


def _first_nonsingular_vectorised(F: Field, mats: list[Matrix], values: list) -> Matrix | None:
    """Exhaustive scan of all E-combinations with numpy; None means proven absent."""
    tb = F.tables
    add, mul = tb["add"], tb["mul"]
    B = np.array([M.rows for M in mats], dtype=np.int32)
    vals = np.array(values, dtype=np.int32)
    base, dim = len(values), len(mats)
    total = base**dim
    chunk = 1 << 15
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        H = np.zeros((len(idx),) + B.shape[1:], dtype=np.int32)
        for s in range(dim):
            digit = (idx // base ** (dim - 1 - s)) % base
            c = vals[digit]
            H = add[H, mul[c[:, None, None], B[s][None]]]
        dets = batch_det(F, H)
        hit = np.nonzero(dets)[0]
        if len(hit):
            return Matrix(F, H[hit[0]].tolist())
    return None


def find_nonsingular(mats: list[Matrix], *, over_fixed: bool = True, seed: int = 0,
                     cap: int = 1 << 20, accept=None) -> Matrix | None:
    """First nonsingular combination of ``mats`` in the deterministic sweep.

    Coefficients range over the fixed field E (``over_fixed``) or over F.
    For finite fields with at most ``cap`` combinations the sweep is
    exhaustive, so ``None`` is a proof that no such combination exists.
    """
    if not mats:
        return None
    F = mats[0].field
    dim = len(mats)
    plain = accept is None
    accept = accept or (lambda M: True)
    if F.is_finite:
        values = _fixed_values(F) if over_fixed else list(F.elements())
        exhaustive = len(values) ** dim <= cap
        for M in mats:
            if M.is_invertible() and accept(M):
                return M
        if plain and exhaustive and F.q <= 1024 and mats[0].n <= 6 and len(values) ** dim > 64:
            return _first_nonsingular_vectorised(F, mats, values)
        stream = _coefficient_stream(F, values, dim, seed, cap)
    else:
        stream = _small_integers(F, dim, seed, min(cap, 20000))
    for c in stream:
        M = _combine(F, c, mats)
        if M.is_invertible() and accept(M):
            return M
    return None


def in_form_space(H: Matrix, space: list[Matrix]) -> bool:
    """Whether ``H`` lies in the E-span of ``space``."""
    F = H.field
    E = F.fixed_field

    def coords(M):
        return [c for r in M.rows for a in r for c in F.fixed_coords(a)]

    vecs = [coords(M) for M in space]
    return rank_of(E, vecs + [coords(H)]) == rank_of(E, vecs)


def find_nondegenerate(space: list[Matrix], kind: str = HERMITIAN, seed: int = 0,
                       cap: int = 1 << 20) -> FormCert | None:
    """A nondegenerate member of an E-linear family of forms, or ``None``.

    Over finite fields with ``|E|^dim <= cap`` the search is exhaustive, so
    ``None`` proves that every member is degenerate.
    """
    H = find_nonsingular(space, over_fixed=True, seed=seed, cap=cap)
    if H is None:
        return None
    return FormCert(H, normalize_kind(kind), True, ["generic-solver"])


# ---------------------------------------------------------------------------
# cyclic self-dual blocks: Toeplitz-like recurrence
# ---------------------------------------------------------------------------


def _check_cyclic_selfdual(f: Poly) -> Poly | None:
    """Validate ``f``; returns ``p`` when ``f = p^d`` with ``p`` irreducible, else None."""
    F = f.field
    if not f.is_monic() or f.degree < 1:
        raise ValueError(f"{f} must be monic of positive degree")
    if is_unipotent_type(f):
        raise ValueError(f"{f} is a power of x +- 1; use the unipotent constructions")
    if F.is_zero(f.coeffs[0]) or not is_self_dual(f):
        raise ValueError(f"{f} is not self-dual")
    if F.is_finite:
        fac = factor(f).factors
        if len(fac) == 1:
            return fac[0][0]
    return None


def recurrence_form_space(f: Poly) -> list[Matrix]:
    """E-basis of the invariant hermitian forms of ``companion(f)`` via the shift recurrence.

    Invariance under the shift makes ``X`` Toeplitz: ``X[i][j] = x_{j-i+1}``
    on and above the diagonal, ``y_{i-j+1}`` below.  The last column and row
    are then tied to the rest by, for ``1 <= i < k``,

        x_{k-i+1} = -(sum_{j>=i} d_j   x_{j-i+1} + sum_{j<i} d_j   y_{i-j+1})
        y_{k-i+1} = -(sum_{j>=i} d_j^c y_{j-i+1} + sum_{j<i} d_j^c x_{i-j+1})

    plus the corner identity; the hermitian closure is ``y_j = x_j^c`` and
    ``x_1 = x_1^c``.  (Conjugation sits on the first argument of the form.)
    """
    F = f.field
    k = f.degree
    d = list(f.coeffs)
    dc = [F.conj(a) for a in d]
    # unknown layout: x_1..x_k at 0..k-1, y_2..y_k at k..2k-2
    xi = lambda i: i - 1  # noqa: E731
    yi = lambda i: 0 if i == 1 else k + i - 2  # noqa: E731

    def entry(u, i, j):
        return u[xi(j - i + 1)] if j >= i else u[yi(i - j + 1)]

    def equations(u):
        out = []
        for i in range(1, k):
            ex = u[xi(k - i + 1)]
            ey = u[yi(k - i + 1)]
            for j in range(i, k):
                ex = F.add(ex, F.mul(d[j], u[xi(j - i + 1)]))
                ey = F.add(ey, F.mul(dc[j], u[yi(j - i + 1)]))
            for j in range(i):
                ex = F.add(ex, F.mul(d[j], u[yi(i - j + 1)]))
                ey = F.add(ey, F.mul(dc[j], u[xi(i - j + 1)]))
            out += [ex, ey]
        corner = F.neg(u[0])
        for a in range(k):
            for b in range(k):
                corner = F.add(corner, F.mul(F.mul(dc[a], d[b]), entry(u, a + 1, b + 1)))
        out.append(corner)
        out.append(F.sub(u[0], F.conj(u[0])))
        for j in range(2, k + 1):
            out.append(F.sub(u[yi(j)], F.conj(u[xi(j)])))
        return out

    def to_matrix(u):
        return Matrix(F, [[entry(u, i, j) for j in range(1, k + 1)] for i in range(1, k + 1)])

    return [to_matrix(u) for u in e_linear_kernel(F, 2 * k - 1, equations)]


def cyclic_selfdual_form(F: Field, f: Poly, seed: int = 0) -> FormCert:
    """Nondegenerate hermitian form invariant under ``companion(f)``.

    ``f`` must be self-dual and not a power of ``x +- 1``.  When
    ``f = p^d`` with ``p`` irreducible, candidates whose middle row ``w``
    satisfies ``p(T)^{d-1} w != 0`` are tried first.
    """
    if f.field != F:
        raise FieldError("polynomial over a different field")
    p = _check_cyclic_selfdual(f)
    k = f.degree
    C = companion(f)
    space = recurrence_form_space(f)
    probe = None
    if p is not None and p.degree < k:
        probe = C.poly_eval(p ** (k // p.degree - 1))
    t = (k + 1) // 2

    def promising(X: Matrix) -> bool:
        if probe is None:
            return True
        return any(not F.is_zero(a) for a in probe.apply(list(X.rows[t - 1])))

    def good(X: Matrix) -> bool:
        return has_symmetry(X, HERMITIAN) and is_invariant(C, X)

    X = find_nonsingular(space, over_fixed=True, seed=seed, accept=lambda X: promising(X) and good(X))
    if X is None:
        X = find_nonsingular(space, over_fixed=True, seed=seed, accept=good)
    if X is None:
        raise SearchExhausted(f"no nondegenerate invariant form found for companion({f})")
    return FormCert(X, HERMITIAN, True, ["cyclic-recurrence"])


# ---------------------------------------------------------------------------
# unipotent blocks in characteristic two
# ---------------------------------------------------------------------------


def unipotent_block(F: Field, m: int) -> Matrix:
    """Lower bidiagonal unipotent matrix (ones on the diagonal and subdiagonal)."""
    return Matrix(F, [[F.one if i == j or i == j + 1 else F.zero for j in range(m)] for i in range(m)])


def unipotent_char2_form(F: Field, m: int) -> FormCert:
    """Anti-triangular hermitian form invariant under :func:`unipotent_block`.

    Invariance is ``a[i+1][j] + a[i][j+1] + a[i+1][j+1] = 0``; the
    anti-diagonal is constant (set to 1) and each lower anti-diagonal has one
    free entry, fixed so the hermitian condition holds.  That needs
    ``s + s^c = Z`` for a known ``Z`` in E, solved by ``s = Z*w`` with
    ``1 + w + w^c = 0``.
    """
    if F.char != 2:
        raise FieldError("unipotent_char2_form needs characteristic 2")
    if F.involution_trivial:
        raise FieldError("unipotent_char2_form needs a non-trivial involution")
    if m < 1:
        raise ValueError("m must be positive")
    w = F.special_element()
    a = [[F.zero] * m for _ in range(m)]
    for i in range(m):
        a[i][m - 1 - i] = F.one
    # level L collects 0-based (i, j) with i + j = L; anti-diagonal is L = m-1
    for L in range(m - 2, -1, -1):
        # consecutive sums along level L are fixed by level L+1:
        # a[r][L-r] + a[r-1][L-r+1] = a[r][L-r+1]   for r = 1..L
        z = [None] + [a[r][L - r + 1] for r in range(1, L + 1)]
        Z = F.zero
        for r in range(1, L + 1):
            Z = F.add(Z, F.conj(z[r]))
        s = F.mul(Z, w)
        y = [s]
        for r in range(1, L + 1):
            y.append(F.add(y[-1], z[r]))
        for r in range(L + 1):
            a[r][L - r] = y[r]
    H = Matrix(F, a)
    U = unipotent_block(F, m)
    cert = FormCert(H, HERMITIAN, True, ["unipotent-anti-triangular"])
    if not cert.check(U):  # pragma: no cover
        raise AssertionError(f"unipotent form failed verification for m={m}")
    return cert


def unipotent_form_in_companion_basis(F: Field, m: int) -> FormCert:
    """The char-2 unipotent form moved to the basis where the block is companion((x+1)^m)."""
    U = unipotent_block(F, m)
    K = krylov_matrix(U, [F.one] + [F.zero] * (m - 1))
    H = K.ct() @ unipotent_char2_form(F, m).H @ K
    return FormCert(H, HERMITIAN, True, ["unipotent-anti-triangular"])


# ---------------------------------------------------------------------------
# dual pairs: hyperbolic forms
# ---------------------------------------------------------------------------


def intertwiner_space(A: Matrix, B: Matrix, left: Matrix | None = None) -> list[Matrix]:
    """F-basis of ``{X : L X B = X}`` with ``L = left`` (``A`` unused) or of
    ``{X : X A = B X}`` when ``left`` is None."""
    F = A.field
    n, m = (left.n, B.n) if left is not None else (B.n, A.n)
    rows = []
    for i in range(n):
        for j in range(m):
            row = [F.zero] * (n * m)
            if left is None:
                # (X A)_{ij} - (B X)_{ij}
                for t in range(m):
                    row[i * m + t] = F.add(row[i * m + t], A[t, j])
                for t in range(n):
                    row[t * m + j] = F.sub(row[t * m + j], B[i, t])
            else:
                # (L X B)_{ij} - X_{ij}
                for s in range(n):
                    if F.is_zero(left[i, s]):
                        continue
                    for t in range(m):
                        row[s * m + t] = F.add(row[s * m + t], F.mul(left[i, s], B[t, j]))
                row[i * m + j] = F.sub(row[i * m + j], F.one)
            rows.append(row)
    return [Matrix(F, [v[i * m:(i + 1) * m] for i in range(n)]) for v in nullspace(F, rows)]


def hyperbolic_form(t: Matrix, u: Matrix, seed: int = 0) -> FormCert:
    """``[[0, A], [A^{c,t}, 0]]`` invariant under ``diag(t, u)``.

    Invariance reduces to ``t^{c,t} A u = A`` with ``A`` invertible.
    """
    F = t.field
    space = intertwiner_space(t, u, left=t.ct())
    A = find_nonsingular(space, over_fixed=False, seed=seed)
    if A is None:  # pragma: no cover
        raise SearchExhausted("no invertible pairing block")
    k = t.n
    Z = Matrix.zeros(F, k)
    Act = A.ct()
    rows = [list(Z.rows[i]) + list(A.rows[i]) for i in range(k)]
    rows += [list(Act.rows[i]) + list(Z.rows[i]) for i in range(k)]
    return FormCert(Matrix(F, rows), HERMITIAN, True, ["hyperbolic-pair"])


def dual_pair_form(F: Field, g: Poly, seed: int = 0) -> FormCert:
    """Hyperbolic form on ``V_g + V_{g*}`` with ``T = diag(t, (t^c)^{-1})``, ``t = companion(g)``."""
    from .poly import dual

    if dual(g) == g:
        raise ValueError(f"{g} is self-dual; dual pairs need g != g*")
    t = companion(g)
    cert = hyperbolic_form(t, t.conj().inv(), seed=seed)
    T = Matrix.block_diag(F, [t, t.conj().inv()])
    if not cert.check(T):  # pragma: no cover
        raise AssertionError("hyperbolic form failed verification")
    return cert
