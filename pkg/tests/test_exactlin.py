import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from contramod.exactlin import (
    LinearMap,
    ShapeError,
    charpoly,
    coequalizer,
    factor_perm,
    hom_to_vec,
    image_basis,
    kernel_basis,
    matmul_mod,
    null_space_rows,
    permute_space,
    quotient_presentation,
    rank,
    reorder_codomain,
    reorder_domain,
    rref,
    solve_matrix,
    subspace_contains,
    tensor_map,
    vec_to_hom,
)

PRIMES = (2, 3, 5)


def rand_map(rng, p, cod, dom):
    return LinearMap(p, rng.integers(0, p, size=(cod, dom)))


# ------------------------------------------------------------ kernels, rref

def test_kernel_of_identity_is_empty():
    assert kernel_basis(LinearMap.identity(5, 3)).shape[0] == 0


def test_kernel_of_zero_map_is_everything():
    assert kernel_basis(LinearMap.zero(3, 2, 2)).shape[0] == 2


def test_kernel_f2_all_ones():
    f = LinearMap(2, [[1, 1], [1, 1]])
    basis = kernel_basis(f)
    assert basis.shape == (1, 2)
    assert np.array_equal(basis[0] % 2, np.array([1, 1]))


@settings(deadline=None, max_examples=60)
@given(st.sampled_from(PRIMES), st.integers(1, 5), st.integers(1, 5), st.integers(0, 10**6))
def test_rank_nullity(p, m, n, seed):
    rng = np.random.default_rng(seed)
    f = rand_map(rng, p, m, n)
    assert rank(f.mat, p) + kernel_basis(f).shape[0] == n
    assert image_basis(f).shape[0] == rank(f.mat, p)


@settings(deadline=None, max_examples=40)
@given(st.sampled_from(PRIMES), st.integers(1, 4), st.integers(1, 4), st.integers(0, 10**6))
def test_solve_roundtrip(p, m, n, seed):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, p, size=(m, n))
    x = rng.integers(0, p, size=(n, 2))
    b = matmul_mod(a, x, p)
    sol = solve_matrix(a, b, p)
    assert sol is not None
    assert np.array_equal(matmul_mod(a, sol, p), b)


def test_solve_inconsistent_returns_none():
    a = np.array([[1, 0], [1, 0]])
    b = np.array([[1], [0]])
    assert solve_matrix(a, b, 2) is None


# ------------------------------------------------------------- coequalizers

def test_coequalizer_equal_maps_is_identity_shaped():
    p = 3
    rng = np.random.default_rng(0)
    f = rand_map(rng, p, 4, 4)
    pres = coequalizer(f, f)
    assert pres.dim == 4
    assert pres.projection.is_identity()


def test_coequalizer_identity_vs_zero_collapses():
    f = LinearMap.identity(5, 3)
    g = LinearMap.zero(5, 3, 3)
    assert coequalizer(f, g).dim == 0


def test_coequalizer_rank_two_difference_over_f3():
    # f - g has rank exactly 2 by construction
    f = LinearMap(3, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
    g = LinearMap.zero(3, 4, 4)
    assert rank((f - g).mat, 3) == 2
    pres = coequalizer(f, g)
    assert pres.dim == 2


@settings(deadline=None, max_examples=40)
@given(st.sampled_from(PRIMES), st.integers(1, 4), st.integers(1, 4), st.integers(0, 10**6))
def test_coequalizer_equalizes(p, m, n, seed):
    rng = np.random.default_rng(seed)
    f, g = rand_map(rng, p, m, n), rand_map(rng, p, m, n)
    pres = coequalizer(f, g)
    assert (pres.projection @ f) == (pres.projection @ g)
    assert (pres.projection @ pres.section).is_identity()
    assert pres.dim == m - rank((f - g).mat, p)


def test_quotient_projection_kills_exactly_relations():
    p = 2
    rel = np.array([[1, 1, 0], [0, 1, 1]])
    pres = quotient_presentation(p, 3, rel)
    assert pres.dim == 1
    assert not matmul_mod(pres.projection.mat, rel.T, p).any()
    assert null_space_rows(pres.projection.mat, p).shape[0] == 2


# ------------------------------------------------------------------ tensors

def test_tensor_identity():
    assert tensor_map(LinearMap.identity(5, 2), LinearMap.identity(5, 3)).is_identity()


def test_tensor_with_zero():
    rng = np.random.default_rng(1)
    f = rand_map(rng, 3, 2, 2)
    assert tensor_map(f, LinearMap.zero(3, 2, 2)).is_zero()


def test_tensor_on_basis_pairs():
    rng = np.random.default_rng(2)
    p = 3
    f, g = rand_map(rng, p, 2, 2), rand_map(rng, p, 2, 2)
    fg = tensor_map(f, g)
    for u in np.eye(2, dtype=np.int64):
        for v in np.eye(2, dtype=np.int64):
            left = fg.apply(np.kron(u, v))
            right = np.kron(f.apply(u), g.apply(v)) % p
            assert np.array_equal(left, right)


@settings(deadline=None, max_examples=40)
@given(st.sampled_from(PRIMES), st.integers(0, 10**6))
def test_kronecker_functoriality(p, seed):
    rng = np.random.default_rng(seed)
    f = rand_map(rng, p, 2, 3)
    f2 = rand_map(rng, p, 3, 2)
    g = rand_map(rng, p, 2, 2)
    g2 = rand_map(rng, p, 2, 3)
    assert tensor_map(f, g) @ tensor_map(f2, g2) == tensor_map(f @ f2, g @ g2)


def test_shape_errors():
    with pytest.raises(ShapeError):
        LinearMap.identity(2, 2) @ LinearMap.identity(2, 3)
    with pytest.raises(ShapeError):
        coequalizer(LinearMap.identity(2, 2), LinearMap.zero(2, 3, 3))


# ------------------------------------------------------- factor permutations

def test_factor_perm_on_kron_vectors():
    p = 5
    rng = np.random.default_rng(3)
    u, v, w = (rng.integers(0, p, size=d) for d in (2, 3, 2))
    perm = factor_perm(p, (2, 3, 2), (2, 0, 1))
    got = perm.apply(np.kron(np.kron(u, v), w))
    want = np.kron(np.kron(w, u), v) % p
    assert np.array_equal(got, want)


def test_reorder_domain_and_codomain_agree_with_perm_matrix():
    p = 3
    rng = np.random.default_rng(4)
    mat = rng.integers(0, p, size=(5, 6))
    pm = factor_perm(p, (2, 3), (1, 0))
    assert np.array_equal(reorder_domain(mat, (2, 3), (1, 0)),
                          matmul_mod(mat, pm.mat.T, p))
    pm2 = factor_perm(p, (3, 2, 2), (2, 0, 1))
    mat2 = rng.integers(0, p, size=(12, 5))
    assert np.array_equal(reorder_codomain(mat2, (3, 2, 2), (2, 0, 1)),
                          matmul_mod(pm2.mat, mat2, p))


def test_permute_space_roundtrip():
    rng = np.random.default_rng(5)
    rows = rng.integers(0, 3, size=(4, 12))
    out = permute_space(rows, (2, 3, 2), (2, 0, 1))
    back = permute_space(out, (2, 2, 3), (1, 2, 0))
    assert np.array_equal(rows, back)


def test_hom_vec_roundtrip():
    rng = np.random.default_rng(6)
    f = rand_map(rng, 3, 4, 2)
    assert vec_to_hom(hom_to_vec(f), 3, 2, 4) == f


# ---------------------------------------------------------------- charpoly

def _charpoly_cofactor(mat, p):
    """Oracle: det(tI - M) by cofactor expansion with polynomial entries."""
    n = mat.shape[0]
    entries = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            c = [(-int(mat[i, j])) % p]
            if i == j:
                c = [(-int(mat[i, j])) % p, 1]
            entries[i][j] = np.array(c, dtype=np.int64)

    def det(rows, cols):
        if len(rows) == 1:
            return entries[rows[0]][cols[0]]
        total = np.zeros(1, dtype=np.int64)
        for k, c in enumerate(cols):
            minor = det(rows[1:], cols[:k] + cols[k + 1 :])
            term = np.convolve(entries[rows[0]][c], minor) % p
            if k % 2:
                term = (-term) % p
            width = max(total.size, term.size)
            t2 = np.zeros(width, dtype=np.int64)
            t2[: total.size] += total
            t2[: term.size] += term
            total = t2 % p
        return total

    out = det(list(range(n)), list(range(n)))
    return np.trim_zeros(out, "b") if out.any() else np.zeros(1, dtype=np.int64)


@settings(deadline=None, max_examples=50)
@given(st.sampled_from(PRIMES), st.integers(1, 5), st.integers(0, 10**6))
def test_charpoly_matches_cofactor_oracle(p, n, seed):
    rng = np.random.default_rng(seed)
    mat = rng.integers(0, p, size=(n, n))
    got = charpoly(mat, p)
    want = _charpoly_cofactor(mat, p)
    got = np.trim_zeros(got, "b") if got.any() else np.zeros(1, dtype=np.int64)
    assert np.array_equal(got, want)


def test_charpoly_of_nilpotent_jordan_block():
    mat = np.array([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    assert np.array_equal(charpoly(mat, 5), np.array([0, 0, 0, 1]))


def test_subspace_contains():
    space = np.array([[1, 0, 1], [0, 1, 0]])
    assert subspace_contains(space, np.array([[1, 1, 1]]), 2)
    assert not subspace_contains(space, np.array([[0, 0, 1]]), 2)
