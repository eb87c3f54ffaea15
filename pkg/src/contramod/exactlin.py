"""Exact linear algebra over prime fields F_p.

Conventions used by the whole package (fixed here, once):

* Vectors are columns; a map has matrix shape ``(codomain_dim, domain_dim)``
  and composition is matrix multiplication.
* The basis of a tensor product U (x) V is ordered with the U index major
  (``u * dim(V) + v``), matching ``numpy.kron``.
* A functional space V* carries the basis dual to V's, in the same order, so
  transposing a matrix is the only dualization primitive.
* Hom(V, W) is identified with V* (x) W: the map with matrix ``A`` is the
  vector ``A.T.reshape(-1)`` (functional index major).

Products of reduced matrices are routed through float64 BLAS; entries stay
below p * p * inner_dim << 2**53, so the arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "ShapeError",
    "LinearMap",
    "QuotientPresentation",
    "matmul_mod",
    "rref",
    "rank",
    "row_space",
    "null_space_rows",
    "solve_matrix",
    "subspace_contains",
    "kernel_basis",
    "image_basis",
    "coequalizer",
    "quotient_presentation",
    "tensor_map",
    "reorder_domain",
    "reorder_codomain",
    "permute_space",
    "factor_perm",
    "hom_to_vec",
    "vec_to_hom",
    "charpoly",
]


class ShapeError(ValueError):
    """Dimension mismatch between maps or between a map and its data."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def as_matrix(mat, p: int) -> np.ndarray:
    a = np.asarray(mat, dtype=np.int64)
    if a.ndim != 2:
        raise ShapeError(f"expected a matrix, got ndim={a.ndim}")
    return a % p


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """a @ b mod p, exact, via float64 BLAS for anything non-tiny."""
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot compose {a.shape} with {b.shape}")
    if a.size == 0 or b.size == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    if a.shape[0] * a.shape[1] * b.shape[1] < 4096:
        return (a @ b) % p
    c = a.astype(np.float64) @ b.astype(np.float64)
    return np.rint(c).astype(np.int64) % p


class LinearMap:
    """A matrix over F_p with declared domain/codomain dimensions."""

    __slots__ = ("p", "mat")

    def __init__(self, p: int, mat):
        if not _is_prime(p):
            raise ShapeError(f"modulus {p} is not prime")
        self.p = p
        self.mat = as_matrix(mat, p)

    @classmethod
    def identity(cls, p, n):
        return cls(p, np.eye(n, dtype=np.int64))

    @classmethod
    def zero(cls, p, codomain_dim, domain_dim):
        return cls(p, np.zeros((codomain_dim, domain_dim), dtype=np.int64))

    @property
    def domain_dim(self):
        return self.mat.shape[1]

    @property
    def codomain_dim(self):
        return self.mat.shape[0]

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        if self.p != other.p:
            raise ShapeError("maps over different primes")
        return LinearMap(self.p, matmul_mod(self.mat, other.mat, self.p))

    def __add__(self, other):
        if self.mat.shape != other.mat.shape or self.p != other.p:
            raise ShapeError("sum of maps with different shapes")
        return LinearMap(self.p, self.mat + other.mat)

    def __sub__(self, other):
        if self.mat.shape != other.mat.shape or self.p != other.p:
            raise ShapeError("difference of maps with different shapes")
        return LinearMap(self.p, self.mat - other.mat)

    def __neg__(self):
        return LinearMap(self.p, -self.mat)

    def scale(self, c: int):
        return LinearMap(self.p, self.mat * (c % self.p))

    def tensor(self, other: "LinearMap") -> "LinearMap":
        if self.p != other.p:
            raise ShapeError("tensor of maps over different primes")
        return LinearMap(self.p, np.kron(self.mat, other.mat) % self.p)

    @property
    def T(self):
        return LinearMap(self.p, self.mat.T)

    def apply(self, vec) -> np.ndarray:
        v = np.asarray(vec, dtype=np.int64).reshape(-1) % self.p
        if v.shape[0] != self.domain_dim:
            raise ShapeError("vector length does not match domain")
        return matmul_mod(self.mat, v.reshape(-1, 1), self.p).reshape(-1)

    def is_zero(self):
        return not self.mat.any()

    def is_identity(self):
        return self.domain_dim == self.codomain_dim and np.array_equal(
            self.mat, np.eye(self.domain_dim, dtype=np.int64)
        )

    def __eq__(self, other):
        return (
            isinstance(other, LinearMap)
            and self.p == other.p
            and self.mat.shape == other.mat.shape
            and np.array_equal(self.mat, other.mat)
        )

    def __hash__(self):
        return hash((self.p, self.mat.shape, self.mat.tobytes()))

    def __repr__(self):
        return f"LinearMap(F{self.p}, {self.codomain_dim}x{self.domain_dim})"


def tensor_map(f: LinearMap, g: LinearMap) -> LinearMap:
    """Kronecker product of maps, left factor major."""
    return f.tensor(g)


def rref(mat, p: int):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    a = as_matrix(mat, p)
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = a[r] * pow(int(a[r, c]), p - 2, p) % p
        col = a[:, c].copy()
        col[r] = 0
        a = (a - np.outer(col, a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(mat, p: int) -> int:
    return rref(mat, p)[0].shape[0]


def row_space(mat, p: int) -> np.ndarray:
    """Canonical (rref) basis of the row space; rows are the basis."""
    return rref(mat, p)[0]


def null_space_rows(mat, p: int) -> np.ndarray:
    """Basis of the right kernel of ``mat``, one vector per row."""
    a = as_matrix(mat, p)
    red, pivots = rref(a, p)
    cols = a.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, c in enumerate(free):
        basis[k, c] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-red[i, c]) % p
    return basis


def solve_matrix(a, b, p: int):
    """One solution X of a @ X = b over F_p, or None if inconsistent."""
    a = as_matrix(a, p)
    b = np.asarray(b, dtype=np.int64) % p
    if b.ndim == 1:
        b = b.reshape(-1, 1)
    if a.shape[0] != b.shape[0]:
        raise ShapeError("solve: row counts differ")
    aug = np.hstack([a, b])
    red, pivots = rref(aug, p)
    na = a.shape[1]
    if any(c >= na for c in pivots):
        return None
    x = np.zeros((na, b.shape[1]), dtype=np.int64)
    for i, c in enumerate(pivots):
        x[c] = red[i, na:]
    return x


def subspace_contains(space_rows, vecs, p: int) -> bool:
    """Whether every row of ``vecs`` lies in the row span of ``space_rows``."""
    space_rows = as_matrix(space_rows, p)
    vecs = np.atleast_2d(np.asarray(vecs, dtype=np.int64)) % p
    if vecs.size == 0 or not vecs.any():
        return True
    r0 = rank(space_rows, p)
    return rank(np.vstack([space_rows, vecs]), p) == r0


def kernel_basis(f: LinearMap) -> np.ndarray:
    """Rows spanning ker f; rank-nullity holds by construction."""
    return null_space_rows(f.mat, f.p)


def image_basis(f: LinearMap) -> np.ndarray:
    """Canonical rows spanning the image of f (in the codomain)."""
    return row_space(f.mat.T, f.p)


@dataclass
class QuotientPresentation:
    """A quotient of F_p^n by a row-spanned relation subspace.

    projection @ section is the identity on the quotient and the kernel of
    projection is exactly the row span of relation_basis.
    """

    p: int
    ambient_dim: int
    relation_basis: np.ndarray
    projection: LinearMap
    section: LinearMap

    @property
    def dim(self):
        return self.projection.codomain_dim

    def reduce(self, vecs) -> np.ndarray:
        v = np.atleast_2d(np.asarray(vecs, dtype=np.int64)) % self.p
        return matmul_mod(self.projection.mat, v.T, self.p).T

    def contains_relations(self, vecs) -> bool:
        return subspace_contains(self.relation_basis, vecs, self.p)


def quotient_presentation(p: int, ambient_dim: int, relation_rows) -> QuotientPresentation:
    rel = row_space(relation_rows, p) if np.asarray(relation_rows).size else np.zeros((0, ambient_dim), dtype=np.int64)
    if rel.size and rel.shape[1] != ambient_dim:
        raise ShapeError("relation rows do not match ambient dimension")
    red, pivots = rref(rel, p) if rel.size else (np.zeros((0, ambient_dim), dtype=np.int64), [])
    free = [c for c in range(ambient_dim) if c not in pivots]
    q = len(free)
    proj = np.zeros((q, ambient_dim), dtype=np.int64)
    for j, fc in enumerate(free):
        proj[j, fc] = 1
        for i, pc in enumerate(pivots):
            proj[j, pc] = (-red[i, fc]) % p
    sect = np.zeros((ambient_dim, q), dtype=np.int64)
    for j, fc in enumerate(free):
        sect[fc, j] = 1
    return QuotientPresentation(p, ambient_dim, red, LinearMap(p, proj), LinearMap(p, sect))


def coequalizer(f: LinearMap, g: LinearMap) -> QuotientPresentation:
    """Quotient of the common codomain by Im(f - g)."""
    if f.p != g.p:
        raise ShapeError("coequalizer of maps over different primes")
    if f.mat.shape != g.mat.shape:
        raise ShapeError("coequalizer needs parallel maps with equal shapes")
    diff = (f.mat - g.mat) % f.p
    return quotient_presentation(f.p, f.codomain_dim, diff.T)


def _perm_index(old_dims, new_order):
    old_dims = list(old_dims)
    new_dims = [old_dims[i] for i in new_order]
    n = int(np.prod(old_dims)) if old_dims else 1
    src = np.arange(n)
    multi = np.array(np.unravel_index(src, old_dims))
    dest = np.ravel_multi_index(tuple(multi[list(new_order)]), new_dims)
    return dest  # basis vector src of old space becomes basis vector dest


def reorder_domain(mat: np.ndarray, old_dims, new_order) -> np.ndarray:
    """Reindex the domain (columns) so factor i of the result is old factor new_order[i]."""
    dest = _perm_index(old_dims, new_order)
    out = np.empty_like(mat)
    out[:, dest] = mat
    return out


def reorder_codomain(mat: np.ndarray, old_dims, new_order) -> np.ndarray:
    """Reindex the codomain (rows) so factor i of the result is old factor new_order[i]."""
    dest = _perm_index(old_dims, new_order)
    out = np.empty_like(mat)
    out[dest, :] = mat
    return out


def permute_space(rows: np.ndarray, old_dims, new_order) -> np.ndarray:
    """Re-coordinatize row vectors over a tensor space whose factors get reordered."""
    dest = _perm_index(old_dims, new_order)
    out = np.empty_like(rows)
    out[:, dest] = rows
    return out


def factor_perm(p: int, dims, new_order) -> LinearMap:
    """The permutation map e_{(t_0..t_k)} -> e_{(t_{new_order[0]}..)} as a LinearMap."""
    n = int(np.prod(list(dims))) if len(dims) else 1
    dest = _perm_index(dims, new_order)
    mat = np.zeros((n, n), dtype=np.int64)
    mat[dest, np.arange(n)] = 1
    return LinearMap(p, mat)


def hom_to_vec(f: LinearMap) -> np.ndarray:
    """Coordinates of a map in Hom(V, W) ~ V* (x) W (functional index major)."""
    return f.mat.T.reshape(-1).copy()


def vec_to_hom(vec, p: int, domain_dim: int, codomain_dim: int) -> LinearMap:
    v = np.asarray(vec, dtype=np.int64).reshape(domain_dim, codomain_dim)
    return LinearMap(p, v.T)


def charpoly(mat, p: int) -> np.ndarray:
    """Characteristic polynomial of a square matrix mod p.

    Coefficients ascending in degree, length n + 1, monic. Computed via a
    similarity reduction to Hessenberg form, so only divisions by nonzero
    field elements occur.
    """
    h = as_matrix(mat, p).copy()
    n = h.shape[0]
    if h.shape[0] != h.shape[1]:
        raise ShapeError("characteristic polynomial needs a square matrix")
    for j in range(n - 2):
        piv = None
        for i in range(j + 1, n):
            if h[i, j]:
                piv = i
                break
        if piv is None:
            continue
        if piv != j + 1:
            h[[j + 1, piv]] = h[[piv, j + 1]]
            h[:, [j + 1, piv]] = h[:, [piv, j + 1]]
        inv = pow(int(h[j + 1, j]), p - 2, p)
        for i in range(j + 2, n):
            f = h[i, j] * inv % p
            if f:
                h[i] = (h[i] - f * h[j + 1]) % p
                h[:, j + 1] = (h[:, j + 1] + f * h[:, i]) % p
    # p_k = charpoly of the leading k x k block, by last-column expansion
    polys = [np.array([1], dtype=np.int64)]
    for k in range(1, n + 1):
        lead = np.zeros(k + 1, dtype=np.int64)
        lead[1:] = polys[k - 1]
        lead[:-1] = (lead[:-1] - h[k - 1, k - 1] * polys[k - 1]) % p
        term = lead % p
        prod_sub = 1
        for i in range(1, k):
            prod_sub = prod_sub * h[k - i, k - i - 1] % p
            if prod_sub == 0:
                break
            coeff = h[k - 1 - i, k - 1] * prod_sub % p
            if coeff:
                term[: k - i] = (term[: k - i] - coeff * polys[k - 1 - i]) % p
        polys.append(term % p)
    return polys[n]
