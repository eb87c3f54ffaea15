import numpy as np
import pytest

from contramod import fppoly, repthy
from contramod.certify import ValidationError
from contramod.exactlin import LinearMap, matmul_mod, rank
from contramod.groups import FiniteGroup, cyclic, klein_four, symmetric3
from contramod.hopf import (
    CoalgebraMorphism,
    HopfAlgebraSpec,
    additive_kernel_scheme,
    additive_quotient_map,
    constant_group_scheme,
    constant_restriction_map,
    counit_morphism,
    dual_algebra,
    dual_algebra_map,
    grouplike_elements,
    mu_n,
    subgroup_quotient_map,
    trivial_scheme,
    validate_hopf,
    validate_hopf_morphism,
)
from contramod.suite import bundled_axiom_schemes, builtin_instance


# ----------------------------------------------------------------- validate

def test_function_algebra_z2_at_p3_passes():
    assert constant_group_scheme(cyclic(2), 3).validate().ok


def test_primitive_square_zero_passes_at_p2():
    assert additive_kernel_scheme([0, 0, 1], 2).validate().ok


def test_corrupted_antipode_fails_naming_the_axiom():
    desc = additive_kernel_scheme([0, 0, 1], 2)
    bad = HopfAlgebraSpec(
        desc.hopf.coalgebra,
        desc.hopf.mul,
        desc.hopf.unit,
        LinearMap(2, [[1, 1], [0, 1]]),  # sends x to x + 1
    )
    cert = validate_hopf(bad)
    assert not cert.ok
    assert any("antipode" in c.label for c in cert.failures())


def test_every_bundled_constructor_passes():
    for name in bundled_axiom_schemes():
        cert = builtin_instance(name).validate()
        assert cert.ok, (name, [c.label for c in cert.failures()])


# ------------------------------------------------------------- constructors

def test_constant_scheme_dims_and_trivial_group():
    assert constant_group_scheme(cyclic(2), 2).dim == 2
    triv = trivial_scheme(5)
    assert triv.dim == 1
    assert triv.hopf.mul.is_identity()
    assert triv.hopf.antipode.is_identity()


def test_s3_dual_is_noncommutative():
    desc = constant_group_scheme(symmetric3(), 3)
    a = dual_algebra(desc.coalgebra)
    assert repthy.center_rows(a).shape[0] < a.dim


def test_additive_kernel_dims():
    for p in (2, 3):
        for r in (1, 2):
            assert additive_kernel_scheme(fppoly.x_power(p**r), p).dim == p**r


def test_non_additive_polynomial_rejected():
    with pytest.raises(ValueError):
        additive_kernel_scheme([0, 0, 0, 1], 2)  # x^3 is not additive at p=2


def test_artin_schreier_kernel_is_constant_zp_via_crt():
    # x -> sum_a a*e_a is a Hopf isomorphism onto the function algebra of Z/p
    for p in (2, 3):
        ker = additive_kernel_scheme([0, p - 1] + [0] * (p - 2) + [1], p)
        const = constant_group_scheme(cyclic(p), p)
        mat = np.zeros((p, p), dtype=np.int64)
        for a in range(p):  # e_a evaluates x^i to a^i
            for i in range(p):
                mat[a, i] = pow(a, i, p) if i else 1
        iso = CoalgebraMorphism(ker.coalgebra, const.coalgebra, LinearMap(p, mat))
        assert rank(mat, p) == p
        assert validate_hopf_morphism(iso, ker.hopf, const.hopf).ok


def test_frobenius_power_kills_augmentation_ideal_of_kernels():
    for p, r in [(2, 1), (2, 2), (3, 1)]:
        desc = additive_kernel_scheme(fppoly.x_power(p**r), p)
        fr = desc.frobenius_power(r).mat
        # on the augmentation ideal (basis x, x^2, ...) the r-th power is zero
        assert not fr[:, 1:].any()
        assert fr[0, 0] == 1


def test_ambient_contains_kernel_and_etale_part():
    amb = additive_kernel_scheme(np.convolve([0, 1, 1], [0, 1, 1]), 2)
    ga1 = additive_kernel_scheme([0, 0, 1], 2)
    z2 = additive_kernel_scheme([0, 1, 1], 2)
    assert additive_quotient_map(amb, ga1).map.mat.shape == (2, 4)
    assert additive_quotient_map(amb, z2).map.mat.shape == (2, 4)


def test_quotient_map_requires_divisibility():
    amb = additive_kernel_scheme([0, 0, 1], 2)  # x^2
    other = additive_kernel_scheme([0, 1, 1], 2)  # x^2 + x does not divide x^2
    with pytest.raises(ValueError):
        additive_quotient_map(amb, other)


def test_mu_n_basics():
    assert mu_n(1, 3).dim == 1
    m2 = mu_n(2, 3)
    assert repthy.radical(dual_algebra(m2.coalgebra)).shape[0] == 0  # cosemisimple
    # grouplike bases make mu_n cosemisimple at every characteristic; what
    # degenerates when p | n is the Frobenius, which stops being injective
    m2p2 = mu_n(2, 2)
    assert m2p2.validate().ok
    assert repthy.radical(dual_algebra(m2p2.coalgebra)).shape[0] == 0
    assert rank(m2p2.frobenius.mat, 2) == 1
    assert rank(m2.frobenius.mat, 3) == 2


# ----------------------------------------------------------------- duality

def test_dual_of_constant_scheme_is_group_algebra():
    g = cyclic(3)
    a = dual_algebra(constant_group_scheme(g, 2).coalgebra)
    # convolution of point evaluations is evaluation at the product
    for i in range(3):
        for j in range(3):
            prod = a.multiply(np.eye(3, dtype=np.int64)[i], np.eye(3, dtype=np.int64)[j])
            want = np.eye(3, dtype=np.int64)[g.mul(i, j)]
            assert np.array_equal(prod, want)


def test_dual_of_square_zero_is_local_with_one_dim_radical():
    a = dual_algebra(additive_kernel_scheme([0, 0, 1], 2).coalgebra)
    assert repthy.radical(a).shape[0] == 1


def test_dual_of_mu2_at_p3_splits_into_two_idempotents():
    a = dual_algebra(mu_n(2, 3).coalgebra)
    idems = repthy.central_primitive_idempotents(a)
    assert len(idems) == 2
    for e in idems:
        assert np.array_equal(a.multiply(e, e), e)


def test_dual_algebra_map_is_an_algebra_morphism():
    amb = additive_kernel_scheme(np.convolve([0, 1, 1], [0, 1, 1]), 2)
    small = additive_kernel_scheme([0, 0, 1], 2)
    pi = additive_quotient_map(amb, small)
    phi = dual_algebra_map(pi)
    a_small = dual_algebra(small.coalgebra)
    a_big = dual_algebra(amb.coalgebra)
    for i in range(a_small.dim):
        for j in range(a_small.dim):
            eials = np.eye(a_small.dim, dtype=np.int64)
            lhs = phi.apply(a_small.multiply(eials[i], eials[j]))
            rhs = a_big.multiply(phi.apply(eials[i]), phi.apply(eials[j]))
            assert np.array_equal(lhs, rhs)
    assert np.array_equal(phi.apply(a_small.unit_vec), a_big.unit_vec)


# --------------------------------------------------------------- grouplikes

def test_grouplikes_of_mu_n():
    for n in (1, 2, 3, 4):
        assert len(grouplike_elements(mu_n(n, 3).coalgebra)) == n


def test_grouplikes_of_square_zero_kernel():
    assert len(grouplike_elements(additive_kernel_scheme([0, 0, 1], 2).coalgebra)) == 1


def test_grouplikes_of_constant_z2_at_p3_are_the_characters():
    gl = grouplike_elements(constant_group_scheme(cyclic(2), 3).coalgebra)
    assert len(gl) == 2


def test_grouplike_dual_route_matches_enumeration():
    c = constant_group_scheme(klein_four(), 3).coalgebra
    by_enum = {tuple(int(x) for x in g) for g in grouplike_elements(c)}
    by_dual = {tuple(int(x) for x in g)
               for g in grouplike_elements(c, max_enumeration=1)}
    assert by_enum == by_dual and len(by_enum) == 4


# ----------------------------------------------------- subgroups & morphisms

def test_constant_restriction_s3_to_z3():
    s3 = constant_group_scheme(symmetric3(), 3)
    z3 = constant_group_scheme(cyclic(3), 3)
    # Z/3 sits inside S3 = Z3 x| Z2 as the pairs (n, 0), n-major indexing
    pi = constant_restriction_map(s3, z3, [0, 2, 4])
    assert rank(pi.map.mat, 3) == 3


def test_restriction_rejects_non_homomorphic_embedding():
    s3 = constant_group_scheme(symmetric3(), 3)
    z2 = constant_group_scheme(cyclic(2), 3)
    with pytest.raises(ValueError):
        constant_restriction_map(s3, z2, [0, 2])  # (0,0),(1,0): not a subgroup


def test_subgroup_quotient_map_dispatch():
    amb = additive_kernel_scheme(np.convolve([0, 1, 1], [0, 1, 1]), 2)
    small = additive_kernel_scheme([0, 1, 1], 2)
    assert subgroup_quotient_map(amb, small).map.mat.shape == (2, 4)
    v4 = constant_group_scheme(klein_four(), 3)
    z2 = constant_group_scheme(cyclic(2), 3)
    assert subgroup_quotient_map(v4, z2, [0, 2]).map.mat.shape == (2, 4)
    with pytest.raises(ValueError):
        subgroup_quotient_map(v4, z2)  # needs the embedding


def test_counit_morphism_is_hopf():
    desc = constant_group_scheme(cyclic(2), 3)
    triv = trivial_scheme(3)
    pi = counit_morphism(desc, triv)
    assert validate_hopf_morphism(pi, desc.hopf, triv.hopf).ok


# --------------------------------------------------- coordinate dual freeness

def test_nichols_zoeller_freeness_for_bundled_pairs():
    amb2 = additive_kernel_scheme(np.convolve([0, 1, 1], [0, 1, 1]), 2)
    pairs = [
        additive_quotient_map(amb2, additive_kernel_scheme([0, 1, 1], 2)),
        additive_quotient_map(amb2, additive_kernel_scheme([0, 0, 1], 2)),
    ]
    amb3 = additive_kernel_scheme(
        fppoly.mul(fppoly.mul([0, 2, 0, 1], [0, 2, 0, 1], 3), [0, 2, 0, 1], 3), 3)
    pairs.append(additive_quotient_map(amb3, additive_kernel_scheme([0, 2, 0, 1], 3)))
    v4 = constant_group_scheme(klein_four(), 3)
    z2 = constant_group_scheme(cyclic(2), 3)
    pairs.append(constant_restriction_map(v4, z2, [0, 2]))
    for pi in pairs:
        cert = repthy.coordinate_dual_freeness(pi)
        assert cert.ok, (pi.name, [c.label for c in cert.failures()])


# ------------------------------------------------------------------- groups

def test_group_table_validation():
    with pytest.raises(ValueError):
        FiniteGroup([[0, 1], [1, 1]])  # not a group
    s3 = symmetric3()
    assert s3.order == 6
    assert s3.p_regular_count(3) == 4  # identity and the three involutions
    assert s3.p_regular_count(2) == 3  # identity and the two 3-cycles
