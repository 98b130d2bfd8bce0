"""Acceptance criteria 1-9, each checked at its stated bound.

Every test records one pass/fail line (printed in the terminal summary).
Run directly with ``python3 tests/test_acceptance.py`` or through pytest.
"""

import random
import sys
import time
from fractions import Fraction

import pytest

from conftest import record
from creal import canonical, poly
from creal.canonical import companion
from creal.field import make_field
from creal.forms import (
    HERMITIAN,
    SKEW,
    cyclic_selfdual_form,
    generic_form_space,
    has_symmetry,
    in_form_space,
    is_invariant,
    unipotent_block,
    unipotent_char2_form,
)
from creal.linalg import Matrix
from creal.oracles import census, monic_polys, random_c_real_matrix
from creal.poly import Poly, conj_poly, dual, is_self_dual, is_unipotent_type
from creal.reality import claim_check, is_c_real, skew_form, unipotent_direct_sums


@pytest.fixture(scope="session")
def census_gl2():
    """Element-mode censuses of GL_2(F_4) and GL_2(F_9), shared by criteria 1 and 3."""
    t0 = time.perf_counter()
    reps = {spec: census(make_field(spec), 2, mode="elements") for spec in ("F4", "F9")}
    return reps, time.perf_counter() - t0


@pytest.fixture(scope="session")
def census_gl3_f4():
    t0 = time.perf_counter()
    rep = census(make_field("F4"), 3, mode="classes")
    return rep, time.perf_counter() - t0


def test_criterion_1_equivalence_triangle(census_gl2):
    reps, seconds = census_gl2
    f4, f9 = reps["F4"], reps["F9"]
    sizes_ok = f4.total_elements == 180 and f9.total_elements == 5760
    clean = not f4.disagreements and not f9.disagreements
    ok = sizes_ok and clean and seconds < 60
    record(1, ok, f"GL2(F4): {f4.c_real_elements}/180 c-real, GL2(F9): {f9.c_real_elements}/5760 c-real, "
                  f"disagreements {len(f4.disagreements) + len(f9.disagreements)}, {seconds:.1f}s")
    assert sizes_ok
    assert f4.disagreements == [] and f9.disagreements == []
    assert seconds < 60


def test_criterion_2_gl3_f4_classes(census_gl3_f4):
    rep, seconds = census_gl3_f4
    ok = rep.disagreements == [] and rep.total_elements == rep.order_formula == 181440 and seconds < 120
    record(2, ok, f"{rep.total_classes} classes, {rep.c_real_classes} c-real, "
                  f"disagreements {len(rep.disagreements)}, {seconds:.1f}s")
    assert rep.disagreements == []
    assert rep.total_elements == 181440
    assert seconds < 120


def test_criterion_3_conjugator_validity(census_gl2, census_gl3_f4):
    reps, _ = census_gl2
    rep3, _ = census_gl3_f4
    parts = [(r.field, r.n, r.conjugators_verified, r.certified_units) for r in (reps["F4"], reps["F9"], rep3)]
    ok = all(v == u for _, _, v, u in parts)
    record(3, ok, "S T S^-1 = (T^c)^-1: " + ", ".join(f"GL{n}({f}) {v}/{u}" for f, n, v, u in parts))
    assert ok


def test_criterion_3_involution_rate(census_gl2):
    reps, _ = census_gl2
    lines, ok = [], True
    for spec in ("F4", "F9"):
        r = reps[spec]
        rate = 100.0 * r.involution_rate
        ok = ok and r.strongly_c_real_confirmed == r.c_real_elements
        lines.append(f"GL2({spec}) S^2=I {r.strongly_c_real_confirmed}/{r.c_real_elements} ({rate:.1f}%), "
                     f"S^c S=I {r.conj_inverse_identity}/{r.c_real_elements}")
        if r.involution_failures:
            print(f"\n{spec} offenders (first {len(r.involution_failures)}): "
                  + " ".join(r.involution_failures[:5]))
    record(3, ok, "; ".join(lines))
    assert ok, "; ".join(lines) + f"; first offender {reps['F4'].involution_failures[:1]}"


def test_criterion_4_unipotent_char2():
    t0 = time.perf_counter()
    failures = []
    for spec in ("F4", "F16"):
        F = make_field(spec)
        for m in range(1, 9):
            H = unipotent_char2_form(F, m).H
            U = unipotent_block(F, m)
            good = has_symmetry(H, HERMITIAN) and is_invariant(U, H) and H.is_invertible()
            if m % 2 == 0:
                anti = {H[i, m - 1 - i] for i in range(m)}
                c = next(iter(anti))
                good = good and len(anti) == 1 and H.det() == F.pow(c, m)
            if not good:
                failures.append(f"{spec} m={m}")
    seconds = time.perf_counter() - t0
    ok = not failures and seconds < 5
    record(4, ok, f"m=1..8 over F4, F16: {16 - len(failures)}/16 verified, {seconds:.2f}s")
    assert not failures
    assert seconds < 5


def test_criterion_5_cyclic_selfdual():
    t0 = time.perf_counter()
    counts, failures = {}, []
    for spec in ("F4", "F9"):
        F = make_field(spec)
        n = 0
        for d in range(1, 5):
            for f in monic_polys(F, d):
                if not is_self_dual(f) or is_unipotent_type(f):
                    continue
                n += 1
                C = companion(f)
                cert = cyclic_selfdual_form(F, f)
                if not (cert.check(C) and cert.H.is_invertible()
                        and in_form_space(cert.H, generic_form_space(C, HERMITIAN))):
                    failures.append(f"{spec}: {f}")
        counts[spec] = n
    seconds = time.perf_counter() - t0
    ok = not failures and seconds < 60
    record(5, ok, f"self-dual non-unipotent f, deg<=4: F4 {counts['F4']}, F9 {counts['F9']}, "
                  f"failures {len(failures)}, {seconds:.1f}s")
    assert not failures
    assert seconds < 60


def test_criterion_6_skew_forms():
    t0 = time.perf_counter()
    done, failures = 0, []
    for spec in ("F9", "F25"):
        F = make_field(spec)
        rng = random.Random(2024)
        for _ in range(200):
            T = random_c_real_matrix(F, rng.randint(1, 4), rng)
            cert = skew_form(T, seed=0)
            if not (cert.kind == SKEW and has_symmetry(cert.H, SKEW) and is_invariant(T, cert.H)
                    and cert.H.is_invertible()):
                failures.append(T.to_literal())
            done += 1
    seconds = time.perf_counter() - t0
    ok = not failures and seconds < 30
    record(6, ok, f"{done - len(failures)}/{done} skew-hermitian certificates, {seconds:.1f}s")
    assert not failures
    assert seconds < 30


def _random_poly(F, rng, deg):
    if F.is_finite:
        coeff = F.random_element
    else:
        def coeff(r):
            return F.parse(f"{r.randint(-5, 5)}/{r.randint(1, 4)} + {r.randint(-5, 5)}/{r.randint(1, 4)}*i")
    cs = [coeff(rng) for _ in range(deg)]
    while F.is_zero(cs[0]):
        cs[0] = coeff(rng)
    return Poly(F, cs + [F.one])


def test_criterion_7_duality_algebra():
    t0 = time.perf_counter()
    F9 = make_field("F9")
    pinned = dual(Poly.parse(F9, "x-(1+i)")) == Poly.parse(F9, "x-(2+2*i)")
    bad = 0
    specs = ("F4", "F9", "F25", "F16", "Qi")
    for spec in specs:
        F = make_field(spec)
        rng = random.Random(99)
        for _ in range(1000):
            f = _random_poly(F, rng, rng.randint(1, 5))
            g = _random_poly(F, rng, rng.randint(1, 3))
            if dual(dual(f)) != f or dual(f * g) != dual(f) * dual(g) or conj_poly(conj_poly(f)) != f:
                bad += 1
    seconds = time.perf_counter() - t0
    ok = pinned and bad == 0 and seconds < 5
    record(7, ok, f"1000 polys x {len(specs)} fields, violations {bad}, "
                  f"dual(x-(1+i)) = x-(2+2i): {pinned}, {seconds:.2f}s")
    assert pinned
    assert bad == 0
    assert seconds < 5


def test_criterion_8_claim_check_report():
    t0 = time.perf_counter()
    reports = []
    for spec in ("F2", "F4:c=id"):
        F = make_field(spec)
        reports += [claim_check(T) for T in unipotent_direct_sums(F, 4)]
    seconds = time.perf_counter() - t0
    identity = [r for r in reports if r.matrix == "[[1]]"]
    flagged = len(identity) == 2 and all(r.verdict == "DISAGREE" for r in identity)
    n_dis = sum(r.verdict == "DISAGREE" for r in reports)
    ok = flagged and len(reports) == 22 and seconds < 10
    record(8, ok, f"{len(reports)} reports, {n_dis} DISAGREE (I_1 flagged: {flagged}), {seconds:.2f}s")
    for r in reports:
        print(r.line())
    assert flagged
    assert seconds < 10


def _qi_matrices(Qi):
    """50 matrices over Q(i): 30 paired diag(a, (a^c)^-1, ...) and 20 unpaired, some conjugated."""
    def el(a, b):
        return (Fraction(a), Fraction(b))

    def partner(a):
        return Qi.inv(Qi.conj(a))

    def lit(rows):
        return Matrix(Qi, [[Qi.from_int(v) for v in r] for r in rows])

    one = Qi.one
    mixers = {
        2: [lit([[1, 1], [0, 1]]), lit([[2, 1], [1, 1]]), lit([[1, 0], [3, 1]])],
        3: [lit([[1, 1, 0], [0, 1, 2], [1, 0, 1]]), lit([[1, 0, 0], [1, 1, 0], [0, 1, 1]]),
            lit([[0, 1, 0], [0, 0, 1], [1, 0, 0]])],
    }
    values = [el(1, 1), el(2, 1), el(1, -3), el(Fraction(1, 2), 2), el(3, 0), el(0, 2),
              el(Fraction(-2, 3), Fraction(5, 7)), el(4, -1), el(Fraction(1, 3), 1), el(-1, 5)]
    cases = []
    for a in values:
        cases.append((Matrix.diag(Qi, [a, partner(a)]), True))
        cases.append((Matrix.diag(Qi, [a, partner(a), one]), True))
        cases.append((Matrix.diag(Qi, [a, partner(a), Qi.neg(one)]), True))
    a = el(1, 1)
    for diag in ([a, a], [a, a, one], [a, a, a], [a, one], [a, el(2, 2)]):
        T = Matrix.diag(Qi, diag)
        cases.append((T, False))
        for X in mixers[T.n]:
            cases.append((X @ T @ X.inv(), False))
    return cases


def test_criterion_9_qi_decision_only(monkeypatch):
    Qi = make_field("Qi")
    cases = _qi_matrices(Qi)

    def forbidden(*args, **kwargs):
        raise AssertionError("factorization must not be used on the decision path")

    for mod in (poly, canonical):
        monkeypatch.setattr(mod, "factor", forbidden)
        monkeypatch.setattr(mod, "factor_low_degree", forbidden)
    t0 = time.perf_counter()
    wrong = [T.to_literal() for T, expected in cases if is_c_real(T) != expected]
    seconds = time.perf_counter() - t0
    n_true = sum(e for _, e in cases)
    ok = len(cases) == 50 and not wrong and seconds < 5
    record(9, ok, f"{len(cases)} Q(i) matrices ({n_true} paired, {len(cases) - n_true} unpaired), "
                  f"wrong {len(wrong)}, no factorization, {seconds:.2f}s")
    assert len(cases) == 50
    assert not wrong, wrong
    assert seconds < 5


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
