"""Isometry validation and twist-word factorization."""

import random

import pytest

from latwist.classexpr import parse_class, parse_form
from latwist.decompose import (
    DecompositionError,
    IsometryMatrix,
    decompose_K,
    decompose_K_alpha,
    decompose_ruled,
    matrix_from_json,
    matrix_to_json,
    validate,
)
from latwist.lattice import (
    FormClass,
    LatticeModel,
    form_pairing,
    pairing,
    reflection_matrix,
)
from latwist.reduction import ReflectionWord


def R(n):
    return LatticeModel.rational(n)


def word_matrix(model, texts):
    gens = tuple(parse_class(t, model) for t in texts)
    return IsometryMatrix(model, ReflectionWord(model, gens).matrix)


def rational_generators(model):
    n = model.n
    gens = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            gens.append(model.E(i) - model.E(j))
    H = model.unit(0)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                gens.append(H - model.E(i) - model.E(j) - model.E(k))
    return gens


def ruled_generators(model):
    n = model.n
    F = model.unit(1)
    gens = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            gens.append(model.E(i) - model.E(j))
            gens.append(F - model.E(i) - model.E(j))
    return gens


def test_validate_examples():
    m3 = R(3)
    alpha = parse_form("3H-E1-E2-E3", m3)
    M = word_matrix(m3, ["E1-E2"])
    assert validate(M, m3.k0_form(), alpha).ok
    assert validate(IsometryMatrix.identity(m3)).ok
    flip = IsometryMatrix(m3, ((1, 0, 0, 0), (0, -1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)))
    rep = validate(flip)
    assert not rep.ok
    assert rep.failures == ("K not preserved",)


def test_validate_ternary_generator():
    m4 = R(4)
    M = word_matrix(m4, ["H-E1-E2-E3"])
    assert validate(M).ok


def test_validate_alpha_clause():
    m2 = R(2)
    M = word_matrix(m2, ["E1-E2"])
    uneven = parse_form("3H-E1-2E2", m2)
    rep = validate(M, m2.k0_form(), uneven)
    assert not rep.ok and rep.failures == ("alpha not preserved",)


def test_validate_non_isometry():
    m1 = R(1)
    rep = validate(IsometryMatrix(m1, ((2, 0), (0, 1))))
    assert "pairing not preserved" in rep.failures


def test_decompose_identity_and_generator():
    m4 = R(4)
    assert len(decompose_K(IsometryMatrix.identity(m4))) == 0
    g = parse_class("H-E1-E2-E3", m4)
    M = IsometryMatrix(m4, reflection_matrix(g))
    w = decompose_K(M)
    assert w.matrix == M.entries
    assert w.generators == (g,)


def test_decompose_transpositions():
    m3 = R(3)
    M = word_matrix(m3, ["E1-E3"])
    w = decompose_K(M)
    assert w.matrix == M.entries
    # three-cycle on the basis classes
    M = word_matrix(m3, ["E1-E2", "E2-E3"])
    w = decompose_K(M)
    assert w.matrix == M.entries


def test_decompose_rejects_invalid():
    m3 = R(3)
    flip = IsometryMatrix(m3, ((1, 0, 0, 0), (0, -1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)))
    with pytest.raises(ValueError, match="K not preserved"):
        decompose_K(flip)
    with pytest.raises(ValueError, match="rational"):
        decompose_K(IsometryMatrix.identity(LatticeModel.ruled(1, 1)))


def test_decompose_round_trip_random():
    rng = random.Random(7)
    for n in (1, 2, 3, 4, 6, 8):
        m = R(n)
        gens = rational_generators(m)
        for _ in range(30):
            if not gens:
                word = ReflectionWord(m, ())
            else:
                picks = tuple(rng.choice(gens) for _ in range(rng.randint(0, 8)))
                word = ReflectionWord(m, picks)
            M = IsometryMatrix(m, word.matrix)
            out = decompose_K(M)
            assert out.matrix == M.entries
            k0 = m.k0_form()
            for g in out.generators:
                assert pairing(g, g) == -2
                assert form_pairing(k0, g) == 0


def test_decompose_k_alpha_transposition():
    m3 = R(3)
    alpha = -m3.k0_form()
    M = word_matrix(m3, ["E1-E2"])
    w = decompose_K_alpha(M, alpha)
    assert w.matrix == M.entries
    for g in w.generators:
        assert form_pairing(alpha, g) == 0


def test_decompose_k_alpha_rejects_unpreserved_alpha():
    m2 = R(2)
    M = word_matrix(m2, ["E1-E2"])
    uneven = parse_form("3H-E1-2E2", m2)
    with pytest.raises(ValueError, match="alpha not preserved"):
        decompose_K_alpha(M, uneven)


def test_decompose_k_alpha_round_trip():
    rng = random.Random(11)
    for n in (3, 4, 5, 6):
        m = R(n)
        alpha = -m.k0_form()
        gens = rational_generators(m)
        for g in gens:
            assert form_pairing(alpha, g) == 0
        for _ in range(25):
            picks = tuple(rng.choice(gens) for _ in range(rng.randint(0, 8)))
            M = IsometryMatrix(m, ReflectionWord(m, picks).matrix)
            out = decompose_K_alpha(M, alpha)
            assert out.matrix == M.entries
            for g in out.generators:
                assert pairing(g, g) == -2
                assert form_pairing(m.k0_form(), g) == 0
                assert form_pairing(alpha, g) == 0


def test_decompose_k_alpha_uneven_areas():
    # areas (3, 1, 2, 2): only two generator cores are null, and the
    # greedy frame must respect the area order (E2 first, then E4)
    m = R(4)
    alpha = parse_form("7H-3E1-E2-2E3-2E4", m)
    from latwist.cone import CONE_YES, in_cone

    assert in_cone(alpha).verdict == CONE_YES
    texts = ["E3-E4", "H-E1-E3-E4"]
    for t in texts:
        assert form_pairing(alpha, parse_class(t, m)) == 0
    rng = random.Random(3)
    for _ in range(25):
        picks = tuple(parse_class(rng.choice(texts), m) for _ in range(rng.randint(1, 8)))
        M = IsometryMatrix(m, ReflectionWord(m, picks).matrix)
        out = decompose_K_alpha(M, alpha)
        assert out.matrix == M.entries
        for g in out.generators:
            assert form_pairing(alpha, g) == 0


def test_decompose_ruled_trivial_and_generator():
    m = LatticeModel.ruled(2, 1)
    alpha = parse_form("2T+5F-E1", m)
    assert len(decompose_ruled(IsometryMatrix.identity(m), alpha)) == 0
    m2 = LatticeModel.ruled(1, 2)
    alpha2 = parse_form("2T+2F-E1-E2", m2)
    g = parse_class("F-E1-E2", m2)
    assert form_pairing(alpha2, g) == 0
    M = IsometryMatrix(m2, reflection_matrix(g))
    w = decompose_ruled(M, alpha2)
    assert w.matrix == M.entries
    for gg in w.generators:
        assert form_pairing(alpha2, gg) == 0


def test_decompose_ruled_round_trip():
    rng = random.Random(13)
    for h in (1, 2):
        for n in (2, 3, 4):
            m = LatticeModel.ruled(h, n)
            alpha = FormClass(m, (2, 5) + (-1,) * n)
            gens = ruled_generators(m)
            for g in gens:
                assert form_pairing(alpha, g) == 0
            for _ in range(20):
                picks = tuple(rng.choice(gens) for _ in range(rng.randint(0, 8)))
                M = IsometryMatrix(m, ReflectionWord(m, picks).matrix)
                out = decompose_ruled(M, alpha)
                assert out.matrix == M.entries
                k0 = m.k0_form()
                for g in out.generators:
                    assert pairing(g, g) == -2
                    assert form_pairing(k0, g) == 0
                    assert form_pairing(alpha, g) == 0


def test_decompose_ruled_fiber_not_preserved():
    # a genuine K_0-preserving isometry moving the fiber class; no twist
    # word can reach it because every generator fixes F
    m = LatticeModel.ruled(1, 1)
    M = IsometryMatrix(m, ((2, 1, 2), (1, 2, 2), (-2, -2, -3)))
    alpha = -m.k0_form()
    assert validate(M, m.k0_form(), alpha).ok
    with pytest.raises(DecompositionError, match="fiber class not preserved"):
        decompose_ruled(M, alpha)


def test_decompose_ruled_n0():
    m = LatticeModel.ruled(1, 0)
    alpha = FormClass(m, (1, 1))
    assert len(decompose_ruled(IsometryMatrix.identity(m), alpha)) == 0


def test_matrix_json_round_trip():
    m = R(3)
    M = word_matrix(m, ["H-E1-E2-E3", "E1-E2"])
    data = matrix_to_json(M)
    assert matrix_from_json(data) == M
    with pytest.raises(TypeError, match="integers"):
        matrix_from_json({"model": data["model"], "entries": [[1.5] * 4] * 4})
