"""Genus formulas and Cremona reduction certificates."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latwist.classexpr import parse_class
from latwist.lattice import (
    FormClass,
    HomClass,
    LatticeModel,
    form_pairing,
    mat_vec,
    pairing,
)
from latwist.reduction import (
    KIND_BINARY,
    KIND_EXC_EI,
    KIND_IRREDUCIBLE,
    KIND_MINUS_BASIS,
    KIND_NEGATIVE,
    KIND_TERNARY,
    KIND_ZERO,
    NormalForm,
    ReflectionWord,
    cremona_reduce,
    eta_K,
    eta_lower_bound,
    gt_dimension,
    is_exceptional,
    is_K_null_spherical,
    is_reduced,
)


def R(n):
    return LatticeModel.rational(n)


def cls(text, model):
    return parse_class(text, model)


def check_certificate(xi, nf: NormalForm):
    sign = -1 if nf.sign_flipped else 1
    image = mat_vec(nf.word.matrix, xi.coeffs)
    assert image == tuple(sign * c for c in nf.representative.coeffs)


def test_eta_examples():
    m0 = R(0)
    k0 = m0.k0_form()
    H = m0.unit(0)
    assert eta_K(H, k0) == 0
    assert eta_K(3 * H, k0) == 1
    m2 = R(2)
    assert eta_K(cls("E1-E2", m2), m2.k0_form()) == 0


def test_gt_dimension_examples():
    m0 = R(0)
    k0 = m0.k0_form()
    H = m0.unit(0)
    assert gt_dimension(H, k0) == 2
    assert gt_dimension(3 * H, k0) == 9
    m1 = R(1)
    assert gt_dimension(m1.E(1), m1.k0_form()) == 0


@given(st.integers(1, 6), st.data())
@settings(max_examples=150, deadline=None)
def test_dimension_genus_identity(n, data):
    m = R(n)
    e = HomClass(m, tuple(data.draw(st.integers(-6, 6)) for _ in range(m.rank)))
    num = data.draw(st.integers(-9, 9))
    K = FormClass(m, (Fraction(num, 3),) + e.coeffs[1:])
    k = form_pairing(K, e)
    assert gt_dimension(e, K) == -k + eta_K(e, K) - 1


def test_is_reduced():
    m6 = R(6)
    assert is_reduced(cls("3H-E1-E2-E3-E4-E5-E6", m6))
    assert not is_reduced(cls("H-E1-E2", R(2)))
    assert is_reduced(R(3).zero())
    # sorting is internal, the scrambled version answers the same
    assert is_reduced(cls("3H-E6-E5-E4-E3-E2-E1", m6))
    assert not is_reduced(cls("-H", R(1)))
    with pytest.raises(ValueError, match="rational model only"):
        is_reduced(LatticeModel.ruled(1, 1).zero())


def test_reduce_one_gamma_step_to_ternary():
    m = R(6)
    xi = cls("2H-E1-E2-E3-E4-E5-E6", m)
    nf = cremona_reduce(xi)
    assert nf.kind == KIND_TERNARY
    assert nf.representative == cls("H-E4-E5-E6", m)
    assert not nf.sign_flipped
    assert len(nf.word) == 1
    check_certificate(xi, nf)


def test_reduce_exceptional_to_basis_class():
    m = R(5)
    xi = cls("2H-E1-E2-E3-E4-E5", m)
    nf = cremona_reduce(xi)
    assert nf.kind == KIND_EXC_EI
    assert tuple(sorted(nf.representative.coeffs)) == (0, 0, 0, 0, 0, 1)
    check_certificate(xi, nf)


def test_reduce_terminal_binary_is_empty_word():
    m = R(6)
    nf = cremona_reduce(cls("E2-E5", m))
    assert nf.kind == KIND_BINARY
    assert nf.representative == cls("E2-E5", m)
    assert len(nf.word) == 0
    assert not nf.sign_flipped


def test_reduce_negative_coefficient_certificate():
    m = R(11)
    xi = cls("3H+E1-E2-E3-E4-E5-E6-E7-E8-E9-E10-E11", m)
    assert pairing(xi, xi) == -2
    assert form_pairing(m.k0_form(), xi) == 0
    nf = cremona_reduce(xi)
    assert nf.kind == KIND_NEGATIVE
    check_certificate(xi, nf)
    # the sorted representative shows the offending negative entry last
    assert nf.representative.coeffs[-1] == 1


def test_reduce_zero_and_sign_handling():
    m = R(3)
    assert cremona_reduce(m.zero()).kind == KIND_ZERO
    nf = cremona_reduce(-m.E(2))
    assert nf.kind == KIND_MINUS_BASIS
    assert nf.representative == m.E(2)
    assert nf.sign_flipped
    # a negated exceptional class reduces to a negated basis class
    xi = -cls("2H-E1-E2-E3-E4-E5", R(5))
    nf = cremona_reduce(xi)
    assert nf.kind == KIND_MINUS_BASIS
    assert nf.sign_flipped
    check_certificate(xi, nf)


def test_reduce_h_minus_ei_ej_continues_at_n3():
    # terminal only in the n = 2 model; one more step lands on a basis class
    m2 = R(2)
    nf2 = cremona_reduce(cls("H-E1-E2", m2))
    assert nf2.kind == "ExceptionalHEiEj"
    assert len(nf2.word) == 0
    m3 = R(3)
    nf3 = cremona_reduce(cls("H-E1-E2", m3))
    assert nf3.kind == KIND_EXC_EI
    assert nf3.representative == m3.E(3)
    check_certificate(cls("H-E1-E2", m3), nf3)


def test_reduce_ternary_orbit_at_n3():
    m = R(3)
    for sign in (1, -1):
        xi = sign * cls("H-E1-E2-E3", m)
        nf = cremona_reduce(xi)
        assert nf.kind == KIND_TERNARY
        assert nf.representative == cls("H-E1-E2-E3", m)
        assert nf.sign_flipped == (sign == -1)
        check_certificate(xi, nf)


def test_reduce_stuck_states_are_irreducible():
    assert cremona_reduce(cls("E1+E2", R(3))).kind == KIND_IRREDUCIBLE
    assert cremona_reduce(cls("2H-3E1", R(2))).kind == KIND_IRREDUCIBLE
    nf = cremona_reduce(cls("2E1-E2", R(2)))
    assert nf.kind == KIND_IRREDUCIBLE
    check_certificate(cls("2E1-E2", R(2)), nf)


def test_reduce_reduced_class_sorted_via_word():
    m = R(4)
    xi = cls("5H-E4-2E2-E3-E1", m)
    nf = cremona_reduce(xi)
    assert nf.kind == "Reduced"
    assert nf.representative == cls("5H-2E1-E2-E3-E4", m)
    check_certificate(xi, nf)


@pytest.mark.filterwarnings("ignore:Cremona reduction hit its iteration cap")
@given(st.integers(0, 10), st.data())
@settings(max_examples=300, deadline=None)
def test_certificate_soundness_random(n, data):
    m = R(n)
    xi = HomClass(m, tuple(data.draw(st.integers(-8, 8)) for _ in range(m.rank)))
    nf = cremona_reduce(xi)
    check_certificate(xi, nf)
    # every generator is a K_0-twist, so square and K_0-pairing persist
    k0 = m.k0_form()
    rep = nf.representative
    assert pairing(rep, rep) == pairing(xi, xi)
    assert form_pairing(k0, rep) == (-1 if nf.sign_flipped else 1) * form_pairing(k0, xi)


def test_word_generators_are_k0_twists():
    m = R(6)
    nf = cremona_reduce(cls("4H-2E1-2E2-E3-E4-E5-E6", m))
    k0 = m.k0_form()
    for g in nf.word.generators:
        assert pairing(g, g) == -2
        assert form_pairing(k0, g) == 0
    check_certificate(cls("4H-2E1-2E2-E3-E4-E5-E6", m), nf)


def test_word_composition_convention():
    m = R(3)
    g1 = m.E(1) - m.E(2)
    g2 = m.E(2) - m.E(3)
    w = ReflectionWord(m, (g1, g2))
    # the last generator acts first: E1 -> E1 under g2, then -> E2 under g1
    assert w.apply(m.E(1)) == m.E(2)
    assert ReflectionWord.from_applied(m, (g1, g2)).apply(m.E(1)) == m.E(3)
    assert (w * w.inverse()).apply(m.E(3)) == m.E(3)


def test_is_exceptional():
    m3 = R(3)
    k3 = m3.k0_form()
    assert is_exceptional(m3.E(1), k3)
    m5 = R(5)
    assert is_exceptional(cls("2H-E1-E2-E3-E4-E5", m5), m5.k0_form())
    m1 = R(1)
    assert not is_exceptional(cls("H-E1", m1), m1.k0_form())
    assert not is_exceptional(-m3.E(1), k3)
    m2 = R(2)
    assert is_exceptional(cls("H-E1-E2", m2), m2.k0_form())


def test_is_exceptional_k_delta_variant():
    m = R(2)
    k_delta = FormClass(m, (-3, -1, 1))
    assert is_exceptional(-m.E(1), k_delta)
    assert not is_exceptional(m.E(1), k_delta)
    assert is_exceptional(m.E(2), k_delta)
    bad = FormClass(m, (-3, 2, 1))
    with pytest.raises(ValueError, match="K_0"):
        is_exceptional(m.E(1), bad)


def test_is_exceptional_ruled():
    m = LatticeModel.ruled(2, 2)
    k0 = m.k0_form()
    F = m.unit(1)
    assert is_exceptional(m.E(1), k0)
    assert is_exceptional(F - m.E(2), k0)
    assert not is_exceptional(F - m.E(1) - m.E(2), k0)
    assert not is_exceptional(-m.E(1), k0)
    with pytest.raises(ValueError, match="conjugate to K_0"):
        is_exceptional(m.E(1), FormClass(m, (-2, 3, 1, 1)))


def test_is_k_null_spherical():
    m2 = R(2)
    assert is_K_null_spherical(cls("E1-E2", m2), m2.k0_form())
    m6 = R(6)
    assert is_K_null_spherical(cls("2H-E1-E2-E3-E4-E5-E6", m6), m6.k0_form())
    m11 = R(11)
    xi = cls("3H+E1-E2-E3-E4-E5-E6-E7-E8-E9-E10-E11", m11)
    assert not is_K_null_spherical(xi, m11.k0_form())


def test_is_k_null_spherical_ruled():
    m = LatticeModel.ruled(1, 3)
    k0 = m.k0_form()
    F = m.unit(1)
    assert is_K_null_spherical(m.E(1) - m.E(3), k0)
    assert is_K_null_spherical(-(F - m.E(1) - m.E(2)), k0)
    assert not is_K_null_spherical(F - m.E(1), k0)
    assert not is_K_null_spherical(m.unit(0) - F, k0)


def test_eta_lower_bound():
    m6 = R(6)
    b = eta_lower_bound(cls("3H-E1-E2-E3-E4-E5-E6", m6))
    assert b.value == 1 and b.exact
    b = eta_lower_bound(R(1).unit(0))
    assert b.value == 0 and b.exact
    b = eta_lower_bound(cls("H-E1-E2", R(2)))
    assert b.value == 0 and not b.exact
    with pytest.raises(ValueError, match="K_delta family"):
        eta_lower_bound(-R(1).unit(0))
    with pytest.raises(ValueError, match="K_delta family"):
        eta_lower_bound(R(2).E(1))
