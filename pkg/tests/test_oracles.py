import json

import pytest

from creal.canonical import companion, smith_invariant_factors
from creal.field import make_field
from creal.forms import HERMITIAN, SYMMETRIC, has_symmetry, is_invariant
from creal.linalg import Matrix
from creal.oracles import (
    CapExceeded,
    brute_conjugacy_oracle,
    brute_form_oracle,
    census,
    centralizer_order,
    class_representative,
    count_invariant_forms,
    enumerate_gl,
    form_candidate_count,
    gl_order,
    invariant_factor_chains,
)
from creal.poly import Poly
from creal.reality import is_c_real, target


def M(F, s):
    return Matrix.parse(F, s)


def test_order_formula():
    assert gl_order(4, 2) == 180
    assert gl_order(9, 2) == 5760
    assert gl_order(4, 3) == 181440


@pytest.mark.parametrize("spec,n", [("F2", 2), ("F2", 3), ("F3", 2), ("F4", 2), ("F9", 2), ("F5", 2)])
def test_enumeration_matches_order_formula(spec, n):
    F = make_field(spec)
    G = enumerate_gl(F, n)
    assert len(G) == gl_order(F.q, n)
    assert len({g.tobytes() for g in G}) == len(G)


def test_enumeration_cap(F9):
    with pytest.raises(CapExceeded):
        enumerate_gl(F9, 3, cap=10**5)


def test_conjugacy_oracle_examples(F4, F9):
    C = companion(Poly.parse(F4, "x^2+x+1"))
    X = brute_conjugacy_oracle(C)
    assert X is not None and X @ C == target(C) @ X
    assert brute_conjugacy_oracle(M(F9, "[[1+i,0];[0,1+i]]")) is None
    I2 = Matrix.identity(F4, 2)
    assert brute_conjugacy_oracle(I2) == I2


def test_form_oracle_examples(F4, F9):
    assert form_candidate_count(F4, 2, HERMITIAN) == 16
    assert form_candidate_count(F9, 2, HERMITIAN) == 81
    assert form_candidate_count(F4, 3, HERMITIAN) == 512
    C = companion(Poly.parse(F4, "x^2+x+1"))
    H = brute_form_oracle(C)
    assert H is not None and has_symmetry(H, HERMITIAN) and is_invariant(C, H) and H.is_invertible()
    assert brute_form_oracle(M(F9, "[[1+i,0];[0,1+i]]")) is None
    assert brute_form_oracle(Matrix.identity(F4, 2)) is not None


def test_form_oracle_symmetric_kind():
    F = make_field("F2")
    H = brute_form_oracle(Matrix.identity(F, 1), SYMMETRIC)
    assert H == Matrix.identity(F, 1)


def test_count_invariant_forms_identity(F4):
    total, nondeg = count_invariant_forms(Matrix.identity(F4, 2))
    assert total == 16
    # nondegenerate hermitian 2x2 over F4: 16 - #singular
    assert 0 < nondeg < 16


def test_invariant_factor_chains_cover_all_classes(F4):
    for n in (1, 2, 3):
        total = sum(gl_order(4, n) // centralizer_order(class_representative(F4, ch))
                    for ch in invariant_factor_chains(F4, n))
        assert total == gl_order(4, n)


def test_class_representative_realises_chain(F9):
    for chain in invariant_factor_chains(F9, 2):
        assert smith_invariant_factors(class_representative(F9, chain)) == chain


def test_census_n1_counts_norm_one_elements(F4):
    rep = census(F4, 1)
    assert rep.total_elements == 3
    assert rep.c_real_elements == sum(1 for a in F4.elements() if a and F4.mul(a, F4.conj(a)) == F4.one)
    assert rep.c_real_elements == 3  # a^(2+1) = 1 holds for every a in F4*
    assert rep.disagreements == []


def test_census_gl2_f4(F4):
    rep = census(F4, 2)
    assert rep.total_elements == 180 and rep.order_formula == 180
    assert rep.total_classes == 15
    assert rep.disagreements == []
    assert rep.conjugators_verified == rep.c_real_elements
    assert rep.conj_inverse_identity == rep.c_real_elements
    direct = sum(1 for g in enumerate_gl(F4, 2) if is_c_real(Matrix(F4, g.tolist())))
    assert rep.c_real_elements == direct
    assert "total elements" in rep.table()
    json.dumps(rep.to_json())


def test_class_and_element_modes_agree(F4):
    el = census(F4, 2, mode="elements")
    cl = census(F4, 2, mode="classes")
    assert cl.total_elements == el.total_elements
    assert cl.total_classes == el.total_classes
    assert cl.c_real_classes == el.c_real_classes
    assert cl.c_real_elements == el.c_real_elements
    assert cl.disagreements == []


def test_census_rejects_bad_mode_and_infinite_field(F4):
    with pytest.raises(ValueError):
        census(F4, 2, mode="orbits")
    with pytest.raises(Exception):
        census(make_field("Qi"), 2)
