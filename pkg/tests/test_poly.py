import itertools
import random

import pytest

from creal.field import make_field
from creal.poly import (
    DualUndefined,
    FactorizationUnsupported,
    NonMonicWarning,
    Poly,
    conj_poly,
    dual,
    factor,
    gcd,
    is_self_dual,
)


def P(F, s):
    return Poly.parse(F, s)


def random_poly(F, rng, deg):
    cs = [F.random_element(rng) for _ in range(deg)]
    while F.is_zero(cs[0]):
        cs[0] = F.random_element(rng)
    return Poly(F, cs + [F.one])


def test_arith_examples(F2, F4):
    assert gcd(P(F2, "x^2+x+1"), P(F2, "x+1")).is_one()
    assert P(F4, "x^2+x+1")(F4.parse("w")) == F4.zero
    Q = make_field("Q")
    q, r = divmod(P(Q, "x^3-1"), P(Q, "x-1"))
    assert q == P(Q, "x^2+x+1") and r.is_zero()
    with pytest.raises(ZeroDivisionError):
        divmod(P(Q, "x"), Poly.zero(Q))


def test_conj_poly_examples(F4, F9):
    assert conj_poly(P(F4, "x+w")) == P(F4, "x+w^2")
    Q = make_field("Q")
    assert conj_poly(P(Q, "x^2-3*x+1")) == P(Q, "x^2-3*x+1")
    assert conj_poly(P(F9, "x^2+i")) == P(F9, "x^2-i")


def test_dual_examples(F4, F9):
    assert dual(P(F9, "x-(1+i)")) == P(F9, "x-(2+2*i)")
    for F in (F4, F9, make_field("Q")):
        assert dual(P(F, "x-1")) == P(F, "x-1")
    assert dual(P(F4, "x^2+x+1")) == P(F4, "x^2+x+1")
    # x + w has root w and (w^c)^{-1} = (w^2)^{-1} = w
    assert dual(P(F4, "x+w")) == P(F4, "x+w")


def test_dual_errors(F9):
    with pytest.raises(DualUndefined):
        dual(P(F9, "x^2+x"))
    with pytest.warns(NonMonicWarning):
        assert dual(P(F9, "2*x-2*(1+i)")) == P(F9, "x-(2+2*i)")


def test_is_self_dual_examples(F4, F9):
    assert is_self_dual(P(F4, "(x-1)^3"))
    assert is_self_dual(P(F4, "x^2+x+1"))
    assert not is_self_dual(P(F9, "x-(1+i)"))
    assert is_self_dual(P(F9, "(x+1)^2"))
    assert not is_self_dual(P(F9, "x^2"))


def test_factor_examples(F2, F4):
    fac = factor(P(F2, "x^2+x+1"))
    assert [(str(p), k) for p, k in fac.factors] == [("x^2 + x + 1", 1)]
    fac = factor(P(F4, "x^2+x+1"))
    assert [(p, k) for p, k in fac.factors] == [(P(F4, "x+w"), 1), (P(F4, "x+w^2"), 1)]
    fac = factor(P(F2, "(x-1)^4"))
    assert [(p, k) for p, k in fac.factors] == [(P(F2, "x+1"), 4)]
    with pytest.raises(FactorizationUnsupported):
        factor(P(make_field("Q"), "x^3-2"))


@pytest.mark.parametrize("spec", ["F4", "F9", "F25", "F16"])
def test_dual_involutive_and_multiplicative(spec):
    F = make_field(spec)
    rng = random.Random(3)
    for _ in range(150):
        f = random_poly(F, rng, rng.randint(1, 6))
        g = random_poly(F, rng, rng.randint(1, 4))
        assert dual(dual(f)) == f
        assert dual(f * g) == dual(f) * dual(g)
        assert conj_poly(conj_poly(f)) == f


@pytest.mark.parametrize("spec", ["F2", "F3", "F4", "F9", "F25", "F16"])
def test_factor_reconstructs_and_is_irreducible(spec):
    F = make_field(spec)
    rng = random.Random(11)
    for _ in range(60):
        f = random_poly(F, rng, rng.randint(1, 7))
        fac = factor(f)
        assert fac.expand(F) == f
        ps = [p for p, _ in fac.factors]
        for a, b in itertools.combinations(ps, 2):
            assert gcd(a, b).is_one()
        for p in ps:
            assert p.is_monic()
            if p.degree >= 2:
                assert all(not F.is_zero(p(a)) for a in F.elements())


def test_irreducible_quadratics_split_in_extension():
    F3, F9 = make_field("F3"), make_field("F9")
    for cs in itertools.product(range(3), repeat=2):
        f = Poly(F3, list(cs) + [1])
        if len(factor(f).factors) == 1 and factor(f).factors[0][1] == 1 and f.degree == 2:
            lifted = Poly(F9, [F9.from_int(c) for c in f.coeffs])
            assert all(p.degree == 1 for p, _ in factor(lifted).factors)


def test_root_level_duality(F9):
    # roots of dual(f) are {(a^c)^{-1}} with multiplicity, checked by evaluation
    rng = random.Random(5)
    for _ in range(40):
        roots = [rng.randrange(1, 9) for _ in range(rng.randint(1, 3))]
        f = Poly.from_roots(F9, roots)
        expected = Poly.from_roots(F9, [F9.inv(F9.conj(a)) for a in roots])
        assert dual(f) == expected


def test_parse_and_print(F4):
    f = P(F4, "x^3 + (1+w)*x + 1")
    assert str(f) == "x^3 + (1+w)*x + 1"
    assert P(F4, str(f)) == f
