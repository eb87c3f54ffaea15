import numpy as np
import pytest

from contramod import comodcontra as cc
from contramod import repthy
from contramod.certify import ValidationError
from contramod.exactlin import LinearMap, matmul_mod
from contramod.groups import cyclic, symmetric3
from contramod.hopf import (
    CoalgebraMorphism,
    additive_kernel_scheme,
    additive_quotient_map,
    constant_group_scheme,
    counit_morphism,
    dual_algebra,
    mu_n,
    trivial_scheme,
)


@pytest.fixture(scope="module")
def ga1():
    return additive_kernel_scheme([0, 0, 1], 2)


@pytest.fixture(scope="module")
def amb():
    return additive_kernel_scheme(np.convolve([0, 1, 1], [0, 1, 1]), 2)


@pytest.fixture(scope="module")
def z2p3():
    return constant_group_scheme(cyclic(2), 3)


# -------------------------------------------------------------- validators

def test_trivial_contramodule_validates_everywhere(ga1, z2p3):
    for desc in (ga1, z2p3):
        assert cc.validate_contramodule(cc.trivial_contramodule(desc.hopf)).ok


def test_free_contramodule_validates(ga1):
    for d in (1, 2, 3):
        b = cc.free_contramodule(ga1.coalgebra, d)
        assert b.dim == d * ga1.dim
        assert cc.validate_contramodule(b).ok


def test_free_over_trivial_coalgebra_is_plain_vector_space():
    triv = trivial_scheme(2)
    b = cc.free_contramodule(triv.coalgebra, 3)
    assert b.dim == 3
    assert b.theta.is_identity()


def test_generic_theta_fails_contra_associativity(ga1):
    free = cc.free_contramodule(ga1.coalgebra, 1)
    theta = free.theta.mat.copy()
    theta[0, 1 * free.dim + 1] = (theta[0, 1 * free.dim + 1] + 1) % 2
    bad = cc.Contramodule(ga1.coalgebra, free.dim, LinearMap(2, theta))
    cert = cc.validate_contramodule(bad)
    assert not cert.ok
    assert any(c.label == "contra-associativity" for c in cert.failures())


def test_comodule_validators(ga1):
    assert cc.validate_comodule(cc.regular_comodule(ga1.coalgebra)).ok
    left = cc.regular_comodule(ga1.coalgebra, side="left")
    assert cc.validate_comodule(left).ok
    bad = cc.Comodule(ga1.coalgebra, "right", 1, LinearMap(2, [[1], [1]]))
    assert not cc.validate_comodule(bad).ok


# ------------------------------------------------------- universal property

def test_hom_from_free_has_universal_dimension(ga1, z2p3):
    rng = np.random.default_rng(3)
    for desc in (ga1, z2p3):
        c = desc.coalgebra
        for d in (1, 2):
            free = cc.free_contramodule(c, d)
            for _ in range(5):
                w = cc.random_contramodule(c, rng)
                assert cc.hom_contra(free, w).dim == d * w.dim


def test_hom_free_to_free_is_coalgebra_dimension(ga1):
    free = cc.free_contramodule(ga1.coalgebra, 1)
    assert cc.hom_contra(free, free).dim == ga1.dim


def test_hom_contains_identity():
    desc = mu_n(3, 2)
    b = cc.free_contramodule(desc.coalgebra, 1)
    space = cc.hom_contra(b, b)
    assert space.dim >= 1
    coeffs = None
    cols = np.stack([f.mat.reshape(-1) for f in space.basis], axis=1)
    from contramod.exactlin import solve_matrix

    coeffs = solve_matrix(cols, np.eye(b.dim, dtype=np.int64).reshape(-1, 1), 2)
    assert coeffs is not None  # the identity is in the span


def test_hom_over_cosemisimple_splits_blockwise(z2p3):
    # over a cosemisimple coalgebra the Hom dimension adds over blocks
    c = z2p3.coalgebra
    rng = np.random.default_rng(5)
    from contramod import functors as fn

    b = cc.random_contramodule(c, rng)
    d = cc.random_contramodule(c, rng)
    total = cc.hom_contra(b, d).dim
    pieces_b, cert_b = fn.direct_sum_decompose(b)
    pieces_d, cert_d = fn.direct_sum_decompose(d)
    assert cert_b.ok and cert_d.ok
    blockwise = 0
    for (sub_b, piece_b, _), (sub_d, piece_d, _) in zip(pieces_b, pieces_d):
        hom = repthy.module_hom_space(cc.to_dual_module(piece_b), cc.to_dual_module(piece_d))
        blockwise += len(hom)
    assert total == blockwise


# ------------------------------------------------------------------ duality

def test_free_rank_one_is_the_regular_dual_module(ga1):
    free = cc.free_contramodule(ga1.coalgebra, 1)
    rep = cc.to_dual_module(free)
    a = dual_algebra(ga1.coalgebra)
    assert np.array_equal(rep.action.mat, a.mul.mat)


def test_trivial_contramodule_gives_counit_character_module(ga1):
    rep = cc.to_dual_module(cc.trivial_contramodule(ga1.hopf))
    # action of e_f* on k is evaluation at the unit point
    want = ga1.hopf.unit_vec.reshape(1, -1)
    assert np.array_equal(rep.action.mat, want)


def test_duality_round_trip(ga1, z2p3):
    rng = np.random.default_rng(7)
    for desc in (ga1, z2p3):
        for _ in range(4):
            b = cc.random_contramodule(desc.coalgebra, rng)
            back = cc.from_dual_module(cc.to_dual_module(b), desc.coalgebra)
            assert back.theta == b.theta


def test_morphism_dimensions_match_across_duality(amb):
    rng = np.random.default_rng(9)
    c = amb.coalgebra
    for _ in range(4):
        b = cc.random_contramodule(c, rng)
        d = cc.random_contramodule(c, rng)
        contra_dim = cc.hom_contra(b, d).dim
        mod_dim = len(repthy.module_hom_space(cc.to_dual_module(b), cc.to_dual_module(d)))
        assert contra_dim == mod_dim


# -------------------------------------------------------- dualize comodules

def test_dualize_regular_comodule_is_free(ga1):
    b = cc.dualize_comodule(cc.regular_comodule(ga1.coalgebra), 1)
    free = cc.free_contramodule(ga1.coalgebra, 1)
    assert b.theta == free.theta
    assert cc.is_projective_contramodule(b).verdict


def test_dualize_trivial_over_cosemisimple_is_projective(z2p3):
    m = cc.trivial_comodule(z2p3.coalgebra, unit_vec=z2p3.hopf.unit_vec)
    b = cc.dualize_comodule(m, 1)
    assert b.dim == 1
    assert cc.is_projective_contramodule(b).verdict


def test_dualize_trivial_over_square_zero_is_refused(ga1):
    m = cc.trivial_comodule(ga1.coalgebra, unit_vec=ga1.hopf.unit_vec)
    b = cc.dualize_comodule(m, 1)
    cert = cc.is_projective_contramodule(b)
    assert not cert.verdict
    assert cert.obstruction["residual_rank"] >= 1


def test_dualize_summand_of_cofree_is_projective(ga1):
    cof = cc.cofree_comodule(ga1.coalgebra, 2)
    assert cc.is_projective_contramodule(cc.dualize_comodule(cof, 1)).verdict
    assert cc.is_projective_contramodule(cc.dualize_comodule(cof, 2)).verdict


# -------------------------------------------------------------- restriction

def test_restrict_along_identity_is_identity(amb):
    b = cc.free_contramodule(amb.coalgebra, 1)
    ident = CoalgebraMorphism(amb.coalgebra, amb.coalgebra,
                              LinearMap.identity(2, amb.dim), name="id")
    assert cc.restrict(ident, b).theta == b.theta


def test_restrict_free_to_kernel_level_is_projective(amb, ga1):
    pi = additive_quotient_map(amb, ga1)
    res = cc.restrict(pi, cc.free_contramodule(amb.coalgebra, 1))
    assert cc.is_projective_contramodule(res).verdict


def test_restrict_to_trivial_scheme_gives_plain_vector_space(amb):
    triv = trivial_scheme(2)
    pi = counit_morphism(amb, triv)
    res = cc.restrict(pi, cc.free_contramodule(amb.coalgebra, 1))
    assert res.theta.is_identity()


def test_restriction_is_transitive(amb, ga1):
    triv = trivial_scheme(2)
    pi1 = additive_quotient_map(amb, ga1)
    pi2 = counit_morphism(ga1, triv)
    composite = CoalgebraMorphism(amb.coalgebra, triv.coalgebra,
                                  pi2.map @ pi1.map, name="pi2.pi1")
    b = cc.free_contramodule(amb.coalgebra, 2)
    once = cc.restrict(composite, b)
    twice = cc.restrict(pi2, cc.restrict(pi1, b))
    assert once.theta == twice.theta


# ---------------------------------------------------------- side conversion

def test_left_right_conversion_via_antipode(z2p3):
    m = cc.regular_comodule(z2p3.coalgebra)
    left = cc.left_comodule_from_right(z2p3.hopf, m)
    assert left.side == "left"
    assert cc.validate_comodule(left).ok


def test_dual_comodule_validates(z2p3):
    s3 = constant_group_scheme(symmetric3(), 3)
    for desc in (z2p3, s3):
        m = cc.regular_comodule(desc.coalgebra)
        star = cc.dual_comodule(desc.hopf, m)
        assert cc.validate_comodule(star).ok
        assert star.dim == m.dim


def test_tensor_comodule_validates(z2p3):
    m = cc.regular_comodule(z2p3.coalgebra)
    t = cc.tensor_comodule(z2p3.hopf, m, m)
    assert t.dim == 4
    assert cc.validate_comodule(t).ok


# ------------------------------------------------------------------ random

def test_random_generators_are_validated(amb, z2p3):
    rng = np.random.default_rng(21)
    for desc in (amb, z2p3):
        for _ in range(5):
            b = cc.random_contramodule(desc.coalgebra, rng)
            assert cc.validate_contramodule(b).ok
            m = cc.random_comodule(desc.coalgebra, rng)
            assert cc.validate_comodule(m).ok
