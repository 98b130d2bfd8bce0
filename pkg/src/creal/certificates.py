"""Self-contained JSON certificates and their independent re-checking.

A certificate carries the field spec, the input matrix and every witness,
so :func:`verify_certificate` needs nothing but exact arithmetic.
"""

from __future__ import annotations

import json

from .canonical import smith_invariant_factors
from .field import make_field
from .forms import KINDS, has_symmetry, is_invariant, normalize_kind
from .linalg import Matrix
from .reality import ConjCert, NotCReal, Pairing, in_stated_range


def dumps(obj) -> str:
    """Deterministic JSON text (sorted keys, fixed indentation, trailing newline)."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def make_certificate(T: Matrix, *, c_real: bool, seed: int, pairing: Pairing | None = None,
                     conj: ConjCert | None = None, form=None, not_real: NotCReal | None = None) -> dict:
    F = T.field
    cert = {
        "field": F.spec,
        "n": T.n,
        "T": T.to_literal(),
        "c_real": c_real,
        "pairing": None if pairing is None else pairing.to_json(),
        "S": None,
        "S_is_involution": None,
        "H": None,
        "H_kind": None,
        "seed": seed,
        "paper_range": in_stated_range(T.n),
    }
    if conj is not None:
        cert["S"] = conj.S.to_literal()
        cert["S_is_involution"] = conj.is_involution
        cert["S_methods"] = list(conj.per_block_method)
        cert["S_report"] = conj.report
    if form is not None:
        cert["H"] = form.H.to_literal()
        cert["H_kind"] = form.kind
        cert["H_methods"] = list(form.methods)
    if not_real is not None:
        cert["reason"] = str(not_real)
        cert["witness"] = None if not_real.witness is None else not_real.witness.to_json()
    return cert


def verify_certificate(cert: dict, T: Matrix | None = None) -> tuple[bool, list[str]]:
    """Re-check every claim in ``cert``; returns ``(ok, messages)``.

    ``T`` overrides the matrix stored in the certificate (it must then agree
    with it).
    """
    msgs: list[str] = []
    F = make_field(cert["field"])
    stored = Matrix.parse(F, cert["T"]) if cert.get("T") else None
    if T is None:
        if stored is None:
            return False, ["certificate has no matrix and none was supplied"]
        T = stored
    elif stored is not None and stored != T:
        return False, ["supplied matrix differs from the certificate's matrix"]
    if T.field != F:
        return False, [f"matrix field {T.field.spec} differs from certificate field {F.spec}"]
    if cert.get("n") not in (None, T.n):
        msgs.append(f"n = {cert['n']} but the matrix is {T.n} x {T.n}")
    ok = not msgs

    U = T.conj().inv()
    real = smith_invariant_factors(T) == smith_invariant_factors(U)
    if bool(cert.get("c_real")) != real:
        ok = False
        msgs.append(f"c_real claim {cert.get('c_real')} contradicts invariant factors ({real})")

    if cert.get("S"):
        S = Matrix.parse(F, cert["S"])
        if S.shape != T.shape or not S.is_invertible():
            ok = False
            msgs.append("S is not an invertible matrix of the right size")
        elif S @ T != U @ S:
            ok = False
            msgs.append("S T S^-1 != (T^c)^-1")
        else:
            msgs.append("S T S^-1 = (T^c)^-1 verified")
            if cert.get("S_is_involution"):
                if (S @ S).is_identity():
                    msgs.append("S^2 = I verified")
                else:
                    ok = False
                    msgs.append("S^2 != I although claimed")

    if cert.get("H"):
        kind = normalize_kind(cert.get("H_kind") or KINDS[0])
        H = Matrix.parse(F, cert["H"])
        if H.shape != T.shape:
            ok = False
            msgs.append("H has the wrong size")
        else:
            for good, text in (
                (has_symmetry(H, kind), f"{kind} symmetry"),
                (is_invariant(T, H, kind), "invariance"),
                (H.is_invertible(), "nondegeneracy"),
            ):
                ok &= good
                msgs.append(f"{text} {'verified' if good else 'FAILED'}")
    return ok, msgs
