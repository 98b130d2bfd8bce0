"""Command-line interface: ``creal <subcommand> [options] [MATRIX]``.

Exit codes: 0 success / property holds, 1 property fails (e.g. not c-real,
certificate rejected), 2 input error, 3 unsupported (factorization or caps).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from ._parse import ParseError
from .certificates import dumps, make_certificate, verify_certificate
from .field import FieldError, make_field
from .forms import HERMITIAN, SKEW, SYMMETRIC, SearchExhausted, find_nondegenerate, generic_form_space
from .linalg import Matrix, SingularMatrixError
from .oracles import DEFAULT_CAP, CapExceeded, census
from .poly import FactorizationUnsupported
from .reality import (
    NotCReal,
    build_hermitian_form,
    claim_check,
    duality_pairing,
    is_c_real,
    skew_form,
    strong_conjugator,
    unipotent_direct_sums,
)

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_UNSUPPORTED = 0, 1, 2, 3


class InputError(Exception):
    pass


def _add_common(p: argparse.ArgumentParser, matrix: bool = True) -> None:
    p.add_argument("--field", help="field spec: F<q>, F<q>:c=id, Fp2:p=<prime>, Q, Qi")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="enumeration cap for brute-force searches")
    p.add_argument("--out", metavar="FILE", help="write output here instead of stdout")
    if matrix:
        p.add_argument("matrix", nargs="?", help='matrix literal such as "[[0,1];[1,1]]"')
        p.add_argument("--in", dest="infile", metavar="FILE", help="read the matrix literal from FILE")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="creal", description="c-real elements of GL_n over a field with involution")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="decide c-reality and show the divisor pairing")
    _add_common(p)
    p = sub.add_parser("witness", help="conjugator S with S T S^-1 = (T^c)^-1")
    _add_common(p)
    p = sub.add_parser("form", help="nondegenerate T-invariant form")
    _add_common(p)
    p.add_argument("--kind", choices=("hermitian", "skew", "symmetric"), default="hermitian")
    p = sub.add_parser("verify", help="re-check a certificate produced by witness/form")
    _add_common(p)
    p.add_argument("--cert", metavar="FILE", required=True, help="certificate JSON")
    p = sub.add_parser("census", help="exhaustive census of GL_n over a small finite field")
    _add_common(p, matrix=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=("elements", "classes"), default="elements")
    p = sub.add_parser("claimcheck", help="parity criterion for (x-1)^m blocks versus direct search")
    _add_common(p)
    p.add_argument("--max-size", type=int, default=4, help="sweep size when no matrix is given")
    return ap


def _field(args):
    if not args.field:
        raise InputError("--field is required")
    return make_field(args.field)


def _matrix(args, F, required: bool = True) -> Matrix | None:
    text = args.matrix
    if args.infile:
        if text:
            raise InputError("give the matrix either positionally or with --in, not both")
        text = Path(args.infile).read_text(encoding="utf-8").strip()
    if not text:
        if required:
            raise InputError("no matrix given")
        return None
    M = Matrix.parse(F, text)
    if not M.rows or not M.is_square():
        raise InputError("matrix must be square")
    return M


def _invertible(T: Matrix) -> Matrix:
    if not T.is_invertible():
        raise SingularMatrixError("matrix is singular")
    return T


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _matrix_block(M: Matrix, indent: str = "  ") -> str:
    return "\n".join(indent + line for line in str(M).splitlines())


# -- subcommands ------------------------------------------------------------


def cmd_classify(args) -> int:
    F = _field(args)
    T = _invertible(_matrix(args, F))
    real = is_c_real(T)
    pairing, note = None, None
    try:
        pairing = duality_pairing(T)
    except NotCReal as exc:
        note = str(exc)
    except FactorizationUnsupported as exc:
        note = f"pairing unavailable: {exc}"
    if args.format == "json":
        out = {"field": F.spec, "n": T.n, "T": T.to_literal(), "c_real": real,
               "pairing": None if pairing is None else pairing.to_json(), "note": note}
        _emit(args, dumps(out))
    else:
        lines = [f"field {F.spec}, n = {T.n}", f"c-real: {'yes' if real else 'no'}"]
        if pairing is not None:
            lines.append("elementary divisors:")
            lines += ["  " + s for s in pairing.lines()]
        if note:
            lines.append(note)
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if real else EXIT_FALSE


def _pairing_or_none(T):
    try:
        return duality_pairing(T)
    except FactorizationUnsupported:
        return None


def cmd_witness(args) -> int:
    F = _field(args)
    T = _invertible(_matrix(args, F))
    try:
        conj = strong_conjugator(T, seed=args.seed, cap=args.cap)
    except NotCReal as exc:
        cert = make_certificate(T, c_real=False, seed=args.seed, not_real=exc)
        _emit(args, dumps(cert) if args.format == "json" else f"not c-real: {exc}\n")
        return EXIT_FALSE
    cert = make_certificate(T, c_real=True, seed=args.seed, pairing=_pairing_or_none(T), conj=conj)
    if args.format == "json":
        _emit(args, dumps(cert))
    else:
        text = [f"field {F.spec}, n = {T.n}: c-real", "S =", _matrix_block(conj.S),
                f"methods: {', '.join(conj.per_block_method)}",
                f"S^2 = I: {'yes' if conj.is_involution else 'no'} ({conj.report})"]
        _emit(args, "\n".join(text) + "\n")
    return EXIT_OK


def cmd_form(args) -> int:
    F = _field(args)
    T = _invertible(_matrix(args, F))
    kind = {"hermitian": HERMITIAN, "skew": SKEW, "symmetric": SYMMETRIC}[args.kind]
    try:
        if kind == SYMMETRIC:
            form = find_nondegenerate(generic_form_space(T, SYMMETRIC), SYMMETRIC, seed=args.seed, cap=args.cap)
            if form is None:
                raise NotCReal("no nondegenerate invariant symmetric bilinear form exists")
        elif kind == SKEW:
            form = skew_form(T, seed=args.seed)
        else:
            form = build_hermitian_form(T, seed=args.seed)
    except NotCReal as exc:
        cert = make_certificate(T, c_real=is_c_real(T), seed=args.seed, not_real=exc)
        cert["H_kind"] = kind
        _emit(args, dumps(cert) if args.format == "json" else f"no nondegenerate {kind} form: {exc}\n")
        return EXIT_FALSE
    real = is_c_real(T)
    cert = make_certificate(T, c_real=real, seed=args.seed,
                            pairing=_pairing_or_none(T) if real else None, form=form)
    if args.format == "json":
        _emit(args, dumps(cert))
    else:
        text = [f"field {F.spec}, n = {T.n}: {kind} form", "H =", _matrix_block(form.H),
                f"methods: {', '.join(form.methods)}"]
        _emit(args, "\n".join(text) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    import json

    try:
        cert = json.loads(Path(args.cert).read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise InputError(f"cannot read certificate: {exc}") from None
    if not isinstance(cert, dict) or "field" not in cert:
        raise InputError("certificate must be a JSON object with a 'field' key")
    if args.field and make_field(args.field) != make_field(cert["field"]):
        raise InputError("--field disagrees with the certificate")
    args.field = cert["field"]
    T = _matrix(args, make_field(cert["field"]), required=False)
    ok, msgs = verify_certificate(cert, T)
    if args.format == "json":
        _emit(args, dumps({"valid": ok, "checks": msgs}))
    else:
        _emit(args, "\n".join(msgs + [f"certificate {'valid' if ok else 'REJECTED'}"]) + "\n")
    return EXIT_OK if ok else EXIT_FALSE


def cmd_census(args) -> int:
    F = _field(args)
    if args.n < 1:
        raise InputError("--n must be positive")
    rep = census(F, args.n, mode=args.mode, seed=args.seed, cap=args.cap)
    _emit(args, dumps(rep.to_json()) if args.format == "json" else rep.table() + "\n")
    return EXIT_OK if not rep.disagreements else EXIT_FALSE


def cmd_claimcheck(args) -> int:
    F = _field(args)
    T = _matrix(args, F, required=False)
    mats = [_invertible(T)] if T is not None else list(unipotent_direct_sums(F, args.max_size))
    reports = [claim_check(M, seed=args.seed) for M in mats]
    if args.format == "json":
        _emit(args, dumps({"field": F.spec, "reports": [r.to_json() for r in reports],
                           "disagreements": sum(r.verdict == "DISAGREE" for r in reports)}))
    else:
        lines = [r.line() for r in reports]
        lines.append(f"{sum(r.verdict == 'DISAGREE' for r in reports)} of {len(reports)} disagree")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


COMMANDS = {
    "classify": cmd_classify,
    "witness": cmd_witness,
    "form": cmd_form,
    "verify": cmd_verify,
    "census": cmd_census,
    "claimcheck": cmd_claimcheck,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except (InputError, ParseError, FieldError, SingularMatrixError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (FactorizationUnsupported, CapExceeded, SearchExhausted) as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
