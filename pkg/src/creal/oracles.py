"""Brute-force ground truth over small finite fields.

Everything here enumerates: all of GL_n(F) for conjugacy, every matrix with
the right symmetry for invariant forms, every invariant-factor chain for the
class census.  Arithmetic is vectorised over integer element codes, so none
of it shares code paths with the algebraic constructions it checks.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ._batch import all_tuples, batch_det, batch_matmul
from .canonical import companion
from .field import Field
from .forms import HERMITIAN, SKEW, SYMMETRIC, normalize_kind
from .linalg import Matrix
from .poly import Poly

DEFAULT_CAP = 10**6


class CapExceeded(RuntimeError):
    pass


def gl_order(q: int, n: int) -> int:
    """``prod_{i<n} (q^n - q^i)``."""
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out


def _check_finite(F: Field) -> None:
    if not F.is_finite or F.q > 1024:
        raise CapExceeded(f"brute force needs a small finite field, got {F.spec}")


@lru_cache(maxsize=8)
def _gl_array(F: Field, n: int) -> np.ndarray:
    """All invertible n x n matrices as an ``(N, n, n)`` code array, lexicographic order."""
    vals = np.arange(F.q, dtype=np.int32)
    rows = all_tuples(vals, n)
    rows = rows[(rows != 0).any(axis=1)]
    out = rows[:, None, :]
    for _ in range(1, n):
        # extend by one row and keep only prefixes of full row rank
        k = out.shape[0]
        out = np.concatenate(
            [np.repeat(out, len(rows), axis=0), np.tile(rows, (k, 1))[:, None, :]], axis=1
        )
        out = out[_full_row_rank(F, out)]
    out = np.ascontiguousarray(out)
    out.setflags(write=False)
    return out


def _full_row_rank(F: Field, M: np.ndarray) -> np.ndarray:
    """Mask of stacked ``(N, r, n)`` matrices with rank ``r`` (r <= n)."""
    r, n = M.shape[1], M.shape[2]
    if r == n:
        return batch_det(F, M) != 0
    mask = np.zeros(M.shape[0], dtype=bool)
    for cols in itertools.combinations(range(n), r):
        mask |= batch_det(F, M[:, :, cols]) != 0
    return mask


def enumerate_gl(F: Field, n: int, cap: int = DEFAULT_CAP) -> np.ndarray:
    """GL_n(F) as a code array; rows are extended one at a time with rank checks."""
    _check_finite(F)
    order = gl_order(F.q, n)
    if order > cap:
        raise CapExceeded(f"|GL_{n}({F.spec})| = {order} exceeds cap {cap}")
    G = _gl_array(F, n)
    if len(G) != order:  # pragma: no cover
        raise AssertionError(f"enumerated {len(G)} elements, order formula gives {order}")
    return G


def _arr(M: Matrix) -> np.ndarray:
    return np.array(M.rows, dtype=np.int32)


def _target_arr(F: Field, T: Matrix) -> np.ndarray:
    return _arr(T.conj().inv())


def brute_conjugacy_oracle(T: Matrix, cap: int = DEFAULT_CAP) -> Matrix | None:
    """A witness ``X`` in GL_n(F) with ``X T X^{-1} = (T^c)^{-1}``, or ``None``.

    The identity is tried first; otherwise the first hit in enumeration order.
    """
    F = T.field
    G = enumerate_gl(F, T.n, cap)
    U = _target_arr(F, T)
    if (U == _arr(T)).all():
        return Matrix.identity(F, T.n)
    lhs = batch_matmul(F, G, _arr(T)[None])
    rhs = batch_matmul(F, U[None], G)
    hit = np.nonzero((lhs == rhs).all(axis=(1, 2)))[0]
    if not len(hit):
        return None
    X = Matrix(F, G[hit[0]].tolist())
    if not X @ T == T.conj().inv() @ X:  # pragma: no cover
        raise AssertionError("oracle witness failed verification")
    return X


def form_candidate_count(F: Field, n: int, kind: str) -> int:
    kind = normalize_kind(kind)
    off = F.q ** (n * (n - 1) // 2)
    if kind == SYMMETRIC:
        return F.q**n * off
    diag = len(_diagonal_values(F, kind))
    return diag**n * off


def _diagonal_values(F: Field, kind: str) -> list:
    if kind == SYMMETRIC:
        return list(F.elements())
    if kind == SKEW:
        return [a for a in F.elements() if F.conj(a) == F.neg(a)]
    return [a for a in F.elements() if F.conj(a) == a]


@lru_cache(maxsize=16)
def _form_candidates(F: Field, n: int, kind: str) -> np.ndarray:
    tb = F.tables
    conj, neg = tb["conj"], tb["neg"]
    diag = np.array(_diagonal_values(F, kind), dtype=np.int32)
    upper = [(i, j) for i in range(n) for j in range(i + 1, n)]
    d = all_tuples(diag, n)
    u = all_tuples(np.arange(F.q, dtype=np.int32), len(upper))
    N = len(d) * len(u)
    H = np.zeros((N, n, n), dtype=np.int32)
    dd = np.repeat(d, len(u), axis=0)
    uu = np.tile(u, (len(d), 1))
    for i in range(n):
        H[:, i, i] = dd[:, i]
    for s, (i, j) in enumerate(upper):
        H[:, i, j] = uu[:, s]
        if kind == SYMMETRIC:
            H[:, j, i] = uu[:, s]
        elif kind == SKEW:
            H[:, j, i] = neg[conj[uu[:, s]]]
        else:
            H[:, j, i] = conj[uu[:, s]]
    H.setflags(write=False)
    return H


def brute_form_oracle(T: Matrix, kind: str = HERMITIAN, cap: int = DEFAULT_CAP) -> Matrix | None:
    """First nondegenerate ``T``-invariant form of the given symmetry, by enumeration."""
    kind = normalize_kind(kind)
    F = T.field
    _check_finite(F)
    n = T.n
    count = form_candidate_count(F, n, kind)
    if count > cap:
        raise CapExceeded(f"{count} candidate forms exceed cap {cap}")
    H = _form_candidates(F, n, kind)
    Ta = _arr(T.T if kind == SYMMETRIC else T.ct())
    lhs = batch_matmul(F, batch_matmul(F, Ta[None], H), _arr(T)[None])
    ok = (lhs == H).all(axis=(1, 2))
    idx = np.nonzero(ok)[0]
    if len(idx):
        dets = batch_det(F, H[idx])
        idx = idx[dets != 0]
    if not len(idx):
        return None
    return Matrix(F, H[idx[0]].tolist())


def count_invariant_forms(T: Matrix, kind: str = HERMITIAN, cap: int = DEFAULT_CAP) -> tuple[int, int]:
    """``(invariant, invariant and nondegenerate)`` counts over all candidate forms."""
    kind = normalize_kind(kind)
    F = T.field
    if form_candidate_count(F, T.n, kind) > cap:
        raise CapExceeded("too many candidate forms")
    H = _form_candidates(F, T.n, kind)
    Ta = _arr(T.T if kind == SYMMETRIC else T.ct())
    lhs = batch_matmul(F, batch_matmul(F, Ta[None], H), _arr(T)[None])
    ok = (lhs == H).all(axis=(1, 2))
    inv = H[ok]
    return int(ok.sum()), int((batch_det(F, inv) != 0).sum()) if len(inv) else 0


def involutory_conjugators(T: Matrix, cap: int = DEFAULT_CAP) -> int:
    """Number of ``X`` in GL_n(F) with ``X T X^{-1} = (T^c)^{-1}`` and ``X^2 = I``."""
    F = T.field
    G = enumerate_gl(F, T.n, cap)
    U = _target_arr(F, T)
    ok = (batch_matmul(F, G, _arr(T)[None]) == batch_matmul(F, U[None], G)).all(axis=(1, 2))
    X = G[ok]
    eye = np.eye(T.n, dtype=np.int32)  # codes 0 and 1 are the field's zero and one
    return int((batch_matmul(F, X, X) == eye).all(axis=(1, 2)).sum())


# ---------------------------------------------------------------------------
# invariant-factor chains (class representatives)
# ---------------------------------------------------------------------------


def monic_polys(F: Field, degree: int, nonzero_constant: bool = True):
    for cs in itertools.product(range(F.q), repeat=degree):
        if nonzero_constant and cs[0] == F.zero:
            continue
        yield Poly(F, list(cs) + [F.one])


def invariant_factor_chains(F: Field, n: int):
    """Every chain ``f_1 | ... | f_r`` of monic, non-constant polynomials with
    ``sum deg f_i = n`` and ``f_i(0) != 0`` (each one an invertible class)."""
    by_deg = {d: list(monic_polys(F, d)) for d in range(1, n + 1)}

    def extend(prefix, remaining):
        if remaining == 0:
            yield list(prefix)
            return
        last = prefix[-1] if prefix else None
        lo = last.degree if last is not None else 1
        for d in range(lo, remaining + 1):
            for g in by_deg[d]:
                if last is not None and not last.divides(g):
                    continue
                rest = remaining - d
                if rest and rest < d:
                    continue
                prefix.append(g)
                yield from extend(prefix, rest)
                prefix.pop()

    yield from extend([], n)


def class_representative(F: Field, chain: list[Poly]) -> Matrix:
    return Matrix.block_diag(F, [companion(f) for f in chain])


def centralizer_order(T: Matrix) -> int:
    """``|C_GL(T)|`` by enumerating the centralizer algebra."""
    from .forms import intertwiner_space

    F = T.field
    basis = intertwiner_space(T, T)
    m = len(basis)
    if F.q**m > 1 << 24:
        raise CapExceeded("centralizer too large to enumerate")
    tb = F.tables
    add, mul = tb["add"], tb["mul"]
    B = np.array([Z.rows for Z in basis], dtype=np.int32)
    total, count, chunk = F.q**m, 0, 1 << 15
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        Z = np.zeros((len(idx), T.n, T.n), dtype=np.int32)
        for s in range(m):
            c = ((idx // F.q ** (m - 1 - s)) % F.q).astype(np.int32)
            Z = add[Z, mul[c[:, None, None], B[s][None]]]
        count += int((batch_det(F, Z) != 0).sum())
    return count


# ---------------------------------------------------------------------------
# random c-real test matrices
# ---------------------------------------------------------------------------


def _random_monic(F: Field, degree: int, rng) -> Poly:
    while True:
        cs = [F.random_element(rng) for _ in range(degree)]
        if not F.is_zero(cs[0]):
            return Poly(F, cs + [F.one])


def _random_self_dual(F: Field, degree: int, rng, tries: int = 4000) -> Poly | None:
    from .poly import is_self_dual, is_unipotent_type

    for _ in range(tries):
        f = _random_monic(F, degree, rng)
        if is_self_dual(f) and not is_unipotent_type(f):
            return f
    return None


def random_c_real_matrix(F: Field, n: int, rng) -> Matrix:
    """A random conjugate of a block matrix built from pieces that are c-real by construction.

    Pieces: companions of self-dual polynomials, pairs ``diag(t, (t^c)^{-1})``
    and signed unipotent blocks.  ``rng`` is a :class:`random.Random`.
    """
    from .forms import unipotent_block

    blocks, left = [], n
    while left:
        kind = rng.choice(("self-dual", "pair", "unipotent"))
        if kind == "pair" and left >= 2:
            d = rng.randint(1, left // 2)
            t = companion(_random_monic(F, d, rng))
            blocks += [t, t.conj().inv()]
            left -= 2 * d
            continue
        d = rng.randint(1, left)
        f = _random_self_dual(F, d, rng) if kind == "self-dual" else None
        if f is not None:
            blocks.append(companion(f))
        else:
            U = unipotent_block(F, d)
            blocks.append(U if rng.random() < 0.5 or F.char == 2 else -U)
        left -= d
    B = Matrix.block_diag(F, blocks)
    while True:
        X = Matrix(F, [[F.random_element(rng) for _ in range(n)] for _ in range(n)])
        if X.is_invertible():
            return X @ B @ X.inv()


# ---------------------------------------------------------------------------
# census
# ---------------------------------------------------------------------------


@dataclass
class CensusReport:
    field: str
    n: int
    mode: str
    total_elements: int = 0
    total_classes: int = 0
    c_real_elements: int = 0
    c_real_classes: int = 0
    strongly_c_real_confirmed: int = 0
    conjugators_verified: int = 0
    conj_inverse_identity: int = 0
    order_formula: int = 0
    disagreements: list = field(default_factory=list)
    involution_failures: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def certified_units(self) -> int:
        """Denominator for the certificate counts: elements, or c-real class representatives."""
        return self.c_real_elements if self.mode == "elements" else self.c_real_classes

    @property
    def involution_rate(self) -> float:
        return self.strongly_c_real_confirmed / self.certified_units if self.certified_units else 1.0

    def to_json(self) -> dict:
        return {
            "field": self.field,
            "n": self.n,
            "mode": self.mode,
            "total_elements": self.total_elements,
            "total_classes": self.total_classes,
            "c_real_elements": self.c_real_elements,
            "c_real_classes": self.c_real_classes,
            "strongly_c_real_confirmed": self.strongly_c_real_confirmed,
            "conjugators_verified": self.conjugators_verified,
            "conj_inverse_identity": self.conj_inverse_identity,
            "order_formula": self.order_formula,
            "disagreements": list(self.disagreements),
            "involution_failures": list(self.involution_failures),
        }

    def table(self) -> str:
        unit = "elements" if self.mode == "elements" else "representatives"
        rows = [
            ("field", self.field),
            ("n", str(self.n)),
            ("mode", self.mode),
            ("|GL_n| (order formula)", str(self.order_formula)),
            ("total elements", str(self.total_elements)),
            ("total classes", str(self.total_classes)),
            ("c-real elements", str(self.c_real_elements)),
            ("c-real classes", str(self.c_real_classes)),
            (f"conjugators verified ({unit})", str(self.conjugators_verified)),
            (f"S^2 = I achieved ({unit})", str(self.strongly_c_real_confirmed)),
            (f"S^c S = I before adjustment ({unit})", str(self.conj_inverse_identity)),
            ("disagreements", str(len(self.disagreements))),
        ]
        w = max(len(k) for k, _ in rows)
        return "\n".join(f"{k.ljust(w)}  {v}" for k, v in rows)


def _verdicts(T: Matrix, seed: int, cap: int, brute_conj: bool) -> dict:
    """Run every decision path on ``T``; returns verdicts and the conjugator certificate."""
    from .reality import NotCReal, build_conjugator, build_hermitian_form, duality_pairing, involution_adjust, is_c_real

    out = {"is_c_real": is_c_real(T)}
    try:
        duality_pairing(T)
        out["pairing"] = True
    except NotCReal:
        out["pairing"] = False
    try:
        cert = build_hermitian_form(T, seed=seed)
        out["hermitian_form"] = cert.nondegenerate and cert.check(T)
    except NotCReal:
        out["hermitian_form"] = False
    if brute_conj:
        out["brute_conjugacy"] = brute_conjugacy_oracle(T, cap) is not None
    out["brute_form"] = brute_form_oracle(T, HERMITIAN, cap) is not None
    out["conj"] = out["base_conj"] = None
    if out["is_c_real"]:
        base = build_conjugator(T, seed=seed)
        out["base_conj"] = base
        out["conj"] = involution_adjust(T, base.S, seed=seed, cap=cap, methods=base.per_block_method)
    return out


def census(F: Field, n: int, mode: str = "elements", seed: int = 0, cap: int = DEFAULT_CAP,
           progress=None) -> CensusReport:
    """Classify every element (or every class) of GL_n(F) and cross-check all paths."""
    if mode not in ("elements", "classes"):
        raise ValueError("mode must be 'elements' or 'classes'")
    _check_finite(F)
    t0 = time.perf_counter()
    rep = CensusReport(F.spec, n, mode, order_formula=gl_order(F.q, n))

    def tally(T: Matrix, weight: int, v: dict, cert_weight: int = 1):
        keys = [k for k in ("is_c_real", "pairing", "hermitian_form", "brute_conjugacy", "brute_form") if k in v]
        if len({v[k] for k in keys}) != 1:
            rep.disagreements.append({"T": T.to_literal(), **{k: v[k] for k in keys}})
        if v["is_c_real"]:
            rep.c_real_elements += weight
            c = v["conj"]
            if c.check(T):
                rep.conjugators_verified += cert_weight
            if c.is_involution:
                rep.strongly_c_real_confirmed += cert_weight
            elif len(rep.involution_failures) < 20:
                rep.involution_failures.append(T.to_literal())
            if v["base_conj"].conj_inverse_identity:
                rep.conj_inverse_identity += cert_weight

    if mode == "elements":
        from .canonical import smith_invariant_factors

        G = enumerate_gl(F, n, cap)
        classes, real_classes = set(), set()
        for i, arr in enumerate(G):
            T = Matrix(F, arr.tolist())
            v = _verdicts(T, seed, cap, brute_conj=True)
            tally(T, 1, v)
            key = tuple(f.key() for f in smith_invariant_factors(T))
            classes.add(key)
            if v["is_c_real"]:
                real_classes.add(key)
            if progress and i % 500 == 0:
                progress(i, len(G))
        rep.total_elements = len(G)
        rep.total_classes = len(classes)
        rep.c_real_classes = len(real_classes)
    else:
        order = rep.order_formula
        brute_conj = order <= cap
        for chain in invariant_factor_chains(F, n):
            T = class_representative(F, chain)
            size = order // centralizer_order(T)
            v = _verdicts(T, seed, cap, brute_conj=brute_conj)
            rep.total_classes += 1
            rep.total_elements += size
            if v["is_c_real"]:
                rep.c_real_classes += 1
            tally(T, size, v, cert_weight=1)
        if rep.total_elements != order:  # pragma: no cover
            rep.disagreements.append({"class_sizes_sum": rep.total_elements, "order": order})
    rep.seconds = time.perf_counter() - t0
    return rep
