"""Deciding c-reality and building certificates for it.

``T`` in GL_n(F) is *c-real* when it is conjugate to ``(T^c)^{-1}``.  The
decision compares invariant factors, so it never factors anything.  When
the field supports factorization the answer is backed by

* a :class:`Pairing` of elementary divisors (each one self-dual, or matched
  with its dual at equal multiplicity),
* a :class:`ConjCert` holding ``S`` with ``S T S^{-1} = (T^c)^{-1}``,
* a :class:`~creal.forms.FormCert` holding a nondegenerate ``T``-invariant
  hermitian ``H``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

import numpy as np

from ._batch import batch_matmul
from .canonical import (
    EDivisor,
    companion,
    companion_similarity,
    elementary_divisors,
    primary_decomposition,
    smith_invariant_factors,
)
from .field import Field, FieldError
from .forms import (
    HERMITIAN,
    SKEW,
    SYMMETRIC,
    FormCert,
    SearchExhausted,
    find_nondegenerate,
    find_nonsingular,
    generic_form_space,
    has_symmetry,
    hyperbolic_form,
    intertwiner_space,
    is_invariant,
    cyclic_selfdual_form,
    unipotent_form_in_companion_basis,
)
from .linalg import Matrix, SingularMatrixError
from .poly import FactorizationUnsupported, Poly, dual, is_self_dual, is_unipotent_type


class NotCReal(Exception):
    """``T`` is not conjugate to ``(T^c)^{-1}``; ``witness`` is an unpairable divisor when known."""

    def __init__(self, message: str, witness: EDivisor | None = None):
        super().__init__(message)
        self.witness = witness


def target(T: Matrix) -> Matrix:
    """``(T^c)^{-1}``."""
    return T.conj().inv()


def _require_invertible(T: Matrix) -> None:
    if not T.is_square():
        raise ValueError("square matrix required")
    if not T.is_invertible():
        raise SingularMatrixError("T must be invertible")


def is_c_real(T: Matrix) -> bool:
    """True iff ``T`` and ``(T^c)^{-1}`` have the same invariant factors."""
    _require_invertible(T)
    return smith_invariant_factors(T) == smith_invariant_factors(target(T))


# ---------------------------------------------------------------------------
# elementary-divisor pairing
# ---------------------------------------------------------------------------


@dataclass
class Pairing:
    self_dual_entries: list = field(default_factory=list)
    dual_pairs: list = field(default_factory=list)
    unipotent_entries: list = field(default_factory=list)

    def divisors(self) -> list[EDivisor]:
        out = list(self.self_dual_entries) + list(self.unipotent_entries)
        for a, b in self.dual_pairs:
            out += [a, b]
        return sorted(out, key=EDivisor.key)

    def to_json(self) -> dict:
        return {
            "self_dual": [e.to_json() for e in self.self_dual_entries],
            "dual_pairs": [[a.to_json(), b.to_json()] for a, b in self.dual_pairs],
            "unipotent": [e.to_json() for e in self.unipotent_entries],
        }

    def lines(self) -> list[str]:
        out = [f"self-dual  {e}" for e in self.self_dual_entries]
        out += [f"dual pair  {a}  <->  {b}" for a, b in self.dual_pairs]
        out += [f"unipotent  {e}" for e in self.unipotent_entries]
        return out


def pair_divisors(eds: list[EDivisor]) -> Pairing:
    """Partition elementary divisors into self-dual, unipotent and dual-pair entries."""
    by_key = {(ed.p, ed.k): ed for ed in eds}
    out = Pairing()
    used = set()
    for ed in eds:
        if (ed.p, ed.k) in used:
            continue
        if is_unipotent_type(ed.p):
            out.unipotent_entries.append(ed)
        elif is_self_dual(ed.p):
            out.self_dual_entries.append(ed)
        else:
            other = by_key.get((dual(ed.p), ed.k))
            if other is None or other.mult != ed.mult:
                have = 0 if other is None else other.mult
                raise NotCReal(
                    f"elementary divisor {ed} (multiplicity {ed.mult}) has dual "
                    f"({dual(ed.p)})^{ed.k} with multiplicity {have}",
                    witness=ed,
                )
            out.dual_pairs.append((ed, other))
            used.add((other.p, other.k))
        used.add((ed.p, ed.k))
    return out


def duality_pairing(T: Matrix) -> Pairing:
    """Pairing certificate for ``T``; raises :class:`NotCReal` on the first unpairable divisor."""
    _require_invertible(T)
    return pair_divisors(elementary_divisors(T))


# ---------------------------------------------------------------------------
# conjugators
# ---------------------------------------------------------------------------


@dataclass
class ConjCert:
    S: Matrix
    is_involution: bool
    per_block_method: list = field(default_factory=list)
    report: str = ""

    def check(self, T: Matrix) -> bool:
        S = self.S
        ok = S.is_invertible() and S @ T == target(T) @ S
        if self.is_involution:
            ok = ok and (S @ S).is_identity()
        return ok

    @property
    def conj_inverse_identity(self) -> bool:
        """``S^c S = I``, the conjugation-invariant analogue of ``S^2 = I``."""
        return (self.S.conj() @ self.S).is_identity()


def _solver_block(B: Matrix, seed: int) -> Matrix:
    S = find_nonsingular(intertwiner_space(B, target(B)), over_fixed=False, seed=seed)
    if S is None:  # pragma: no cover - impossible for c-real input
        raise AssertionError("no invertible solution of S T = (T^c)^{-1} S")
    return S


def _place(rows, M: Matrix, r0: int, c0: int) -> None:
    for i in range(M.n):
        for j in range(M.shape[1]):
            rows[r0 + i][c0 + j] = M.rows[i][j]


def _unipotent_block_conjugator(C: Matrix, seed: int) -> Matrix:
    """Align cyclic bases of ``C`` and ``(C^c)^{-1}``, then tidy up inside ``F[C]``.

    Among ``S0 q(C)`` a candidate with ``S^c S = I`` (and ideally ``S^2 = I``)
    is preferred; the antidiagonal is the fallback.
    """
    F = C.field
    k = C.n
    S0 = companion_similarity(C, target(C))
    if k == 1 or not F.is_finite or F.q**k > 4096:
        return S0
    powers = [Matrix.identity(F, k)]
    for _ in range(k - 1):
        powers.append(powers[-1] @ C)
    best = None
    for coeffs in itertools.product(list(F.elements()), repeat=k):
        Q = Matrix.zeros(F, k)
        for a, Pw in zip(coeffs, powers):
            if not F.is_zero(a):
                Q = Q + Pw.scale(a)
        S = S0 @ Q
        if not (S.conj() @ S).is_identity():
            continue
        if (S @ S).is_identity():
            return S
        if best is None:
            best = S
    return best if best is not None else Matrix.antidiag(F, k)


def build_conjugator(T: Matrix, seed: int = 0) -> ConjCert:
    """``S`` with ``S T S^{-1} = (T^c)^{-1}``, assembled blockwise.

    Self-dual companion blocks use the antidiagonal permutation, dual pairs
    of blocks a swap ``[[0, X], [X^{-c}, 0]]``, unipotent blocks a Krylov
    alignment.  Any block failing its check is re-solved as a linear system.
    """
    _require_invertible(T)
    F = T.field
    if not is_c_real(T):
        try:
            duality_pairing(T)
        except NotCReal as exc:
            raise exc from None
        except FactorizationUnsupported:
            pass
        raise NotCReal("T is not conjugate to (T^c)^{-1}")
    U = target(T)

    f = T.charpoly()
    if T == companion(f) and is_self_dual(f):
        S = Matrix.antidiag(F, T.n)
        if S @ T == U @ S:
            return ConjCert(S, (S @ S).is_identity(), ["antidiagonal"])

    try:
        dec = primary_decomposition(T)
    except FactorizationUnsupported:
        S = _solver_block(T, seed)
        return ConjCert(S, (S @ S).is_identity(), ["solver-fallback"])

    n = T.n
    rows = [[F.zero] * n for _ in range(n)]
    methods = []
    blocks = list(dec.blocks)
    done = set()
    for idx, b in enumerate(blocks):
        if idx in done:
            continue
        C = companion(b.poly)
        if is_unipotent_type(b.p):
            Sb = _unipotent_block_conjugator(C, seed)
            tag = "unipotent-adjusted"
        elif is_self_dual(b.p):
            Sb = Matrix.antidiag(F, b.size)
            tag = "antidiagonal"
        else:
            pd = dual(b.p)
            jdx = next(j for j in range(len(blocks))
                       if j not in done and j != idx and blocks[j].p == pd and blocks[j].k == b.k)
            done.add(jdx)
            b2 = blocks[jdx]
            Ch = companion(b2.poly)
            X = companion_similarity(Ch, target(C))
            Y = X.conj().inv()
            ok = X @ Ch == target(C) @ X and Y @ C == target(Ch) @ Y
            if not ok:  # pragma: no cover
                D = Matrix.block_diag(F, [C, Ch])
                Sd = _solver_block(D, seed)
                X = Matrix(F, [r[b.size:] for r in Sd.rows[:b.size]])
                Y = Matrix(F, [r[:b.size] for r in Sd.rows[b.size:]])
                tag = "solver-fallback"
            else:
                tag = "blockswap"
            _place(rows, X, b.start, b2.start)
            _place(rows, Y, b2.start, b.start)
            methods.append(tag)
            done.add(idx)
            continue
        if not (Sb @ C == target(C) @ Sb):  # pragma: no cover
            Sb, tag = _solver_block(C, seed), "solver-fallback"
        _place(rows, Sb, b.start, b.start)
        methods.append(tag)
        done.add(idx)

    SB = Matrix(F, rows)
    P = dec.P
    S = P.conj() @ SB @ P.inv()
    if not (S.is_invertible() and S @ T == U @ S):  # pragma: no cover
        S = _solver_block(T, seed)
        methods = ["solver-fallback"]
    return ConjCert(S, (S @ S).is_identity(), methods)


def centralizer_basis(T: Matrix) -> list[Matrix]:
    """F-basis of ``{Z : Z T = T Z}``."""
    return intertwiner_space(T, T)


def involution_adjust(T: Matrix, S0: Matrix, seed: int = 0, cap: int = 1 << 20,
                      methods: list | None = None) -> ConjCert:
    """Look for an involutory conjugator among ``S0 Z``, ``Z`` in the centralizer of ``T``.

    Every conjugator has this form, so when the centralizer has at most
    ``cap`` elements the search is exhaustive and a negative answer is a
    proof.  Otherwise seeded samples are tried.  The returned certificate
    never claims ``S^2 = I`` without having checked it.
    """
    F = T.field
    methods = list(methods or [])
    if not (S0 @ T == target(T) @ S0):
        raise ValueError("S0 does not conjugate T to (T^c)^{-1}")
    if (S0 @ S0).is_identity():
        return ConjCert(S0, True, methods, "already involutory")
    basis = centralizer_basis(T)
    n, m = T.n, len(basis)
    if F.is_finite and F.q <= 1024:
        tb = F.tables
        add, mul = tb["add"], tb["mul"]
        Bz = np.array([Z.rows for Z in basis], dtype=np.int32)
        S0a = np.array(S0.rows, dtype=np.int32)
        eye = np.array(Matrix.identity(F, n).rows, dtype=np.int32)
        exhaustive = F.q**m <= cap
        rng = np.random.default_rng(seed)
        total = F.q**m if exhaustive else min(cap, 1 << 16)
        chunk = 1 << 14
        for start in range(0, total, chunk):
            if exhaustive:
                idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
                coef = np.stack([(idx // F.q ** (m - 1 - s)) % F.q for s in range(m)], axis=1)
            else:
                coef = rng.integers(0, F.q, size=(min(chunk, total - start), m))
            Z = np.zeros((len(coef), n, n), dtype=np.int32)
            for s in range(m):
                Z = add[Z, mul[coef[:, s].astype(np.int32)[:, None, None], Bz[s][None]]]
            S = batch_matmul(F, S0a[None], Z)
            SS = batch_matmul(F, S, S)
            hit = np.nonzero((SS == eye).all(axis=(1, 2)))[0]
            if len(hit):
                Sm = Matrix(F, S[hit[0]].tolist())
                assert Sm @ T == target(T) @ Sm and (Sm @ Sm).is_identity()
                return ConjCert(Sm, True, methods, "adjusted within the centralizer")
        note = ("no involutory conjugator exists (centralizer exhausted)" if exhaustive
                else "no involutory conjugator found among sampled centralizer elements")
        return ConjCert(S0, False, methods, note)
    rng = random.Random(seed)
    for _ in range(min(cap, 2000)):
        coeffs = [F.from_int(rng.randint(-3, 3)) for _ in range(m)]
        Z = Matrix.zeros(F, n)
        for a, B in zip(coeffs, basis):
            Z = Z + B.scale(a)
        S = S0 @ Z
        if (S @ S).is_identity():
            return ConjCert(S, True, methods, "adjusted within the centralizer")
    return ConjCert(S0, False, methods, "no involutory conjugator found among sampled centralizer elements")


def strong_conjugator(T: Matrix, seed: int = 0, cap: int = 1 << 20) -> ConjCert:
    """:func:`build_conjugator` followed by :func:`involution_adjust`."""
    cert = build_conjugator(T, seed)
    return involution_adjust(T, cert.S, seed=seed, cap=cap, methods=cert.per_block_method)


# ---------------------------------------------------------------------------
# invariant forms
# ---------------------------------------------------------------------------


def _generic_hermitian(T: Matrix, seed: int) -> FormCert:
    cert = find_nondegenerate(generic_form_space(T, HERMITIAN), HERMITIAN, seed=seed)
    if cert is None:
        raise SearchExhausted("no nondegenerate invariant hermitian form found")
    return cert


def _unipotent_block_form(F: Field, f: Poly, seed: int) -> FormCert:
    if F.char == 2:
        return unipotent_form_in_companion_basis(F, f.degree)
    C = companion(f)
    cert = find_nondegenerate(generic_form_space(C, HERMITIAN), HERMITIAN, seed=seed)
    if cert is None:  # pragma: no cover
        raise SearchExhausted(f"no nondegenerate invariant form for companion({f})")
    return cert


def build_hermitian_form(T: Matrix, seed: int = 0) -> FormCert:
    """Nondegenerate ``T``-invariant hermitian form, assembled blockwise and pulled back.

    Raises :class:`NotCReal` when no such form exists.
    """
    F = T.field
    if F.involution_trivial:
        raise FieldError("build_hermitian_form needs a non-trivial involution")
    _require_invertible(T)
    try:
        pairing = duality_pairing(T)
    except FactorizationUnsupported:
        if not is_c_real(T):
            raise NotCReal("T is not conjugate to (T^c)^{-1}") from None
        return _generic_hermitian(T, seed)
    del pairing  # the pairing guarantees the dual blocks below exist

    dec = primary_decomposition(T)
    n = T.n
    rows = [[F.zero] * n for _ in range(n)]
    methods = []
    blocks = list(dec.blocks)
    done = set()
    for idx, b in enumerate(blocks):
        if idx in done:
            continue
        if is_unipotent_type(b.p):
            cert = _unipotent_block_form(F, b.poly, seed)
        elif is_self_dual(b.p):
            cert = cyclic_selfdual_form(F, b.poly, seed=seed)
        else:
            pd = dual(b.p)
            jdx = next(j for j in range(len(blocks))
                       if j not in done and j != idx and blocks[j].p == pd and blocks[j].k == b.k)
            b2 = blocks[jdx]
            cert = hyperbolic_form(companion(b.poly), companion(b2.poly), seed=seed)
            k = b.size
            A = Matrix(F, [r[k:] for r in cert.H.rows[:k]])
            _place(rows, A, b.start, b2.start)
            _place(rows, A.ct(), b2.start, b.start)
            methods.append("hyperbolic-pair")
            done.update((idx, jdx))
            continue
        _place(rows, cert.H, b.start, b.start)
        methods += cert.methods
        done.add(idx)

    Pinv = dec.P.inv()
    H = Pinv.ct() @ Matrix(F, rows) @ Pinv
    out = FormCert(H, HERMITIAN, H.is_invertible(), methods)
    if not (out.nondegenerate and out.check(T)):  # pragma: no cover
        out = _generic_hermitian(T, seed)
    return out


def skew_form(T: Matrix, seed: int = 0) -> FormCert:
    """``w H`` with ``w^c = -w``: a nondegenerate invariant skew-hermitian form."""
    F = T.field
    if F.char == 2:
        raise FieldError("skew-hermitian forms coincide with hermitian ones in characteristic 2")
    base = build_hermitian_form(T, seed=seed)
    w = F.special_element()
    out = FormCert(base.H.scale(w), SKEW, True, base.methods + ["scaled-by-w"])
    if not out.check(T):  # pragma: no cover
        raise AssertionError("skew form failed verification")
    return out


def verify_unitary(T: Matrix, H: Matrix) -> bool:
    """True iff ``T`` preserves the nondegenerate hermitian form ``H``."""
    if not has_symmetry(H, HERMITIAN):
        raise ValueError("H is not hermitian")
    if not H.is_invertible():
        raise ValueError("H is degenerate")
    return is_invariant(T, H, HERMITIAN)


# ---------------------------------------------------------------------------
# characteristic 2, trivial involution: checking a stated criterion
# ---------------------------------------------------------------------------


@dataclass
class ClaimReport:
    """Predicted versus actual existence of a nondegenerate invariant symmetric form."""

    field: str
    matrix: str
    divisors: list
    pairing_ok: bool
    odd_unipotent_ok: bool
    ground_truth: bool
    witness: Matrix | None

    @property
    def predicted(self) -> bool:
        return self.pairing_ok and self.odd_unipotent_ok

    @property
    def verdict(self) -> str:
        return "AGREE" if self.predicted == self.ground_truth else "DISAGREE"

    def to_json(self) -> dict:
        return {
            "field": self.field,
            "T": self.matrix,
            "elementary_divisors": [e.to_json() for e in self.divisors],
            "criterion_pairing": self.pairing_ok,
            "criterion_odd_unipotent": self.odd_unipotent_ok,
            "predicted": self.predicted,
            "ground_truth": self.ground_truth,
            "H": None if self.witness is None else self.witness.to_literal(),
            "verdict": self.verdict,
        }

    def line(self) -> str:
        eds = ", ".join(str(e) for e in self.divisors)
        return (f"{self.verdict:8s} T={self.matrix}  divisors: {eds}  "
                f"predicted={self.predicted} actual={self.ground_truth}")


def claim_check(T: Matrix, seed: int = 0) -> ClaimReport:
    """Compare the parity criterion for ``(x-1)^m`` blocks with a direct search.

    Field must have characteristic 2 and trivial involution.  The prediction
    is: divisors pair up, and every ``(x-1)^m`` with ``m`` odd occurs with
    even multiplicity.  The ground truth is an exhaustive search of the
    invariant symmetric forms.
    """
    F = T.field
    if F.char != 2 or not F.involution_trivial:
        raise FieldError("claim check applies to characteristic 2 with trivial involution")
    _require_invertible(T)
    eds = elementary_divisors(T)
    try:
        pair_divisors(eds)
        pairing_ok = True
    except NotCReal:
        pairing_ok = False
    odd_ok = all(not (is_unipotent_type(e.p) and e.k % 2 == 1 and e.mult % 2 == 1) for e in eds)
    found = find_nondegenerate(generic_form_space(T, SYMMETRIC), SYMMETRIC, seed=seed)
    return ClaimReport(F.spec, T.to_literal(), eds, pairing_ok, odd_ok,
                       found is not None, None if found is None else found.H)


claim_check_theorem22 = claim_check  # name used by the external interface


def _partitions(m: int, largest: int | None = None):
    largest = m if largest is None else largest
    if m == 0:
        yield []
        return
    for k in range(min(m, largest), 0, -1):
        for rest in _partitions(m - k, k):
            yield [k] + rest


def unipotent_direct_sums(F: Field, max_size: int):
    """Every direct sum of lower bidiagonal unipotent blocks with total size ``1..max_size``."""
    from .forms import unipotent_block

    for m in range(1, max_size + 1):
        for parts in _partitions(m):
            yield Matrix.block_diag(F, [unipotent_block(F, k) for k in parts])


def in_stated_range(n: int) -> bool:
    """The theory is stated for ``n >= 2``; ``n = 1`` works but is flagged."""
    return n >= 2


__all__ = [
    "NotCReal", "Pairing", "ConjCert", "ClaimReport", "is_c_real", "duality_pairing",
    "pair_divisors", "build_conjugator", "involution_adjust", "strong_conjugator",
    "centralizer_basis", "build_hermitian_form", "skew_form", "verify_unitary",
    "claim_check", "claim_check_theorem22", "unipotent_direct_sums", "target", "in_stated_range",
]
