import random

import pytest

from creal.canonical import (
    companion,
    elementary_divisors,
    mat_arith,
    primary_decomposition,
    rational_canonical_form,
    smith_invariant_factors,
)
from creal.field import make_field
from creal.linalg import Matrix
from creal.oracles import enumerate_gl
from creal.poly import Poly, gcd, lcm


def M(F, s):
    return Matrix.parse(F, s)


def P(F, s):
    return Poly.parse(F, s)


def random_invertible(F, n, rng):
    while True:
        X = Matrix(F, [[F.random_element(rng) for _ in range(n)] for _ in range(n)])
        if X.is_invertible():
            return X


def test_mat_arith_examples(F2, F4):
    assert mat_arith(M(F4, "[[w,0];[0,1]]"), None, "conj") == M(F4, "[[w^2,0];[0,1]]")
    assert mat_arith(Matrix.antidiag(F2, 2), None, "det") == F2.one
    assert mat_arith(M(F4, "[[0,1];[1,1]]"), None, "charpoly") == P(F4, "x^2+x+1")
    with pytest.raises(ValueError):
        mat_arith(Matrix.identity(F2, 2), None, "frobnicate")


def test_companion_examples(F4):
    assert companion(P(F4, "x^2+x+1")) == M(F4, "[[0,1];[1,1]]")
    Q = make_field("Q")
    assert companion(P(Q, "x-5/2")) == M(Q, "[[5/2]]")
    assert companion(P(Q, "x^2-1")) == M(Q, "[[0,1];[1,0]]")


def test_companion_layout_subdiagonal_ones(F9):
    f = P(F9, "x^3 + i*x^2 + 2*x + (1+i)")
    C = companion(f)
    for i in range(1, 3):
        assert C[i, i - 1] == F9.one
    assert [C[i, 2] for i in range(3)] == [F9.neg(c) for c in f.coeffs[:3]]
    assert C.charpoly() == f == C.minpoly()


def test_smith_examples(F4, F9):
    assert smith_invariant_factors(Matrix.identity(F4, 2)) == [P(F4, "x+1")] * 2
    assert smith_invariant_factors(M(F4, "[[0,1];[1,1]]")) == [P(F4, "x^2+x+1")]
    T = Matrix.diag(F9, [F9.parse("1+i"), F9.parse("2+2*i")])
    assert smith_invariant_factors(T) == [P(F9, "(x-(1+i))*(x-(2+2*i))")]


def test_elementary_divisor_examples(F2, F4):
    eds = elementary_divisors(Matrix.identity(F4, 2))
    assert [(e.p, e.k, e.mult) for e in eds] == [(P(F4, "x+1"), 1, 2)]
    eds = elementary_divisors(M(F4, "[[0,1];[1,1]]"))
    assert [(e.p, e.k, e.mult) for e in eds] == [(P(F4, "x+w"), 1, 1), (P(F4, "x+w^2"), 1, 1)]
    J = companion(P(F2, "(x+1)^2"))
    eds = elementary_divisors(Matrix.block_diag(F2, [J, J]))
    assert [(e.p, e.k, e.mult) for e in eds] == [(P(F2, "x+1"), 2, 2)]
    assert eds[0].to_json() == {"p": "x + 1", "k": 2, "mult": 2}


def test_primary_decomposition_examples(F2, F4, F9):
    C = companion(P(F2, "x^2+x+1"))
    pd = primary_decomposition(C)
    assert len(pd.blocks) == 1 and pd.P.is_identity() and pd.check()
    T = Matrix.diag(F9, [F9.parse("1+i"), F9.parse("2+2*i")])
    pd = primary_decomposition(T)
    assert pd.check() and sum(b.size for b in pd.blocks) == 2
    J3 = M(F4, "[[1,0,0];[1,1,0];[0,1,1]]")
    pd = primary_decomposition(J3)
    assert [(b.p, b.k) for b in pd.blocks] == [(P(F4, "x+1"), 3)] and pd.check()


@pytest.mark.parametrize("spec,n", [("F2", 3), ("F3", 2), ("F4", 2)])
def test_exhaustive_reconstruction_and_chain(spec, n):
    F = make_field(spec)
    for rows in enumerate_gl(F, n):
        T = Matrix(F, [list(map(int, r)) for r in rows])
        fs = smith_invariant_factors(T)
        for a, b in zip(fs, fs[1:]):
            assert divmod(b, a)[1].is_zero()
        prod = Poly.one(F)
        for f in fs:
            prod = prod * f
        assert prod == T.charpoly()
        assert fs[-1] == T.minpoly()
        pd = primary_decomposition(T)
        assert pd.check()
        assert pd.P @ pd.block_matrix() @ pd.P.inv() == T
        eds = elementary_divisors(T)
        assert sum(e.size * e.mult for e in eds) == n
        assert rational_canonical_form(T).charpoly() == T.charpoly()


@pytest.mark.parametrize("spec", ["F4", "F9", "F25", "F16", "F3"])
def test_elementary_divisors_conjugation_invariant(spec):
    F = make_field(spec)
    rng = random.Random(17)
    for _ in range(40):
        n = rng.randint(1, 4)
        T = random_invertible(F, n, rng)
        X = random_invertible(F, n, rng)
        conj = X @ T @ X.inv()
        assert elementary_divisors(conj) == elementary_divisors(T)
        assert smith_invariant_factors(conj) == smith_invariant_factors(T)


def test_lcm_of_invariant_factors_is_minpoly(F9):
    rng = random.Random(2)
    for _ in range(30):
        T = random_invertible(F9, 3, rng)
        fs = smith_invariant_factors(T)
        m = fs[0]
        for f in fs[1:]:
            m = lcm(m, f)
        assert m == T.minpoly()
        assert gcd(m, T.charpoly()) == m


def test_block_order_is_canonical(F4):
    T = Matrix.block_diag(F4, [companion(P(F4, "x+w")), Matrix.identity(F4, 1), companion(P(F4, "(x+1)^2"))])
    keys = [e.key() for e in elementary_divisors(T)]
    assert keys == sorted(keys)
