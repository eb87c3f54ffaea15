"""Comodules and contramodules with validators and the basic constructions.

A left contramodule over C is stored as theta: C* (x) B -> B, the
finite-dimensional avatar of a structure map on Hom(C, B).  Under the
package conventions the two defining diagrams become single contractions:

  contra-unity          theta(counit (x) b) = b
  contra-associativity  theta(f (x) theta(g (x) b)) = theta((g * f) (x) b)

with * the convolution product, i.e. B is exactly a right C*-module.  The
dictionary with right C*-modules is the transposition of the two tensor
factors and nothing else.
"""

from __future__ import annotations

import numpy as np

from . import repthy
from .certify import Certificate, ValidationError
from .exactlin import (
    LinearMap,
    ShapeError,
    factor_perm,
    matmul_mod,
    null_space_rows,
    rank,
    reorder_codomain,
    reorder_domain,
    row_space,
)
from .hopf import CoalgebraSpec, CoalgebraMorphism, HopfAlgebraSpec, dual_algebra

__all__ = [
    "Comodule",
    "Contramodule",
    "MorphismSpace",
    "validate_comodule",
    "validate_contramodule",
    "trivial_comodule",
    "trivial_contramodule",
    "regular_comodule",
    "cofree_comodule",
    "free_contramodule",
    "dualize_comodule",
    "dual_comodule",
    "tensor_comodule",
    "corestrict_comodule",
    "left_comodule_from_right",
    "restrict",
    "to_dual_module",
    "from_dual_module",
    "hom_contra",
    "is_projective_contramodule",
    "random_contramodule",
    "random_comodule",
]


def _ein(expr, *ops):
    out = np.einsum(expr, *[op.astype(np.float64) for op in ops], optimize=True)
    return np.rint(out).astype(np.int64)


class Comodule:
    """A comodule, side-tagged: right coaction M -> M (x) C, left M -> C (x) M."""

    def __init__(self, over: CoalgebraSpec, side, dim, coaction: LinearMap, name="M"):
        if side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        self.over = over
        self.side = side
        self.dim = dim
        self.coaction = coaction
        self.name = name
        want = (dim * over.dim, dim)
        if coaction.mat.shape != want:
            raise ShapeError(f"{name}: coaction must be {want}")

    @property
    def p(self):
        return self.over.p

    def coaction_tensor(self):
        """Right: R[m', h, m]; left: R[h, m', m]."""
        n = self.over.dim
        if self.side == "right":
            return self.coaction.mat.reshape(self.dim, n, self.dim)
        return self.coaction.mat.reshape(n, self.dim, self.dim)

    def __repr__(self):
        return f"Comodule({self.name}, {self.side} over {self.over.name}, dim={self.dim})"


class Contramodule:
    """A left contramodule: theta encoded on C* (x) B."""

    def __init__(self, over: CoalgebraSpec, dim, theta: LinearMap, name="B"):
        self.over = over
        self.dim = dim
        self.theta = theta
        self.name = name
        want = (dim, over.dim * dim)
        if theta.mat.shape != want:
            raise ShapeError(f"{name}: contra-action must be {want}")

    @property
    def p(self):
        return self.over.p

    def theta_tensor(self):
        """T[y, f, x] = coefficient of e_y in theta(e_f* (x) e_x)."""
        return self.theta.mat.reshape(self.dim, self.over.dim, self.dim)

    def __repr__(self):
        return f"Contramodule({self.name} over {self.over.name}, dim={self.dim})"


class MorphismSpace:
    """A basis of the space of contramodule homomorphisms."""

    def __init__(self, source: Contramodule, target: Contramodule, basis):
        self.source = source
        self.target = target
        self.basis = list(basis)

    @property
    def dim(self):
        return len(self.basis)

    def __repr__(self):
        return f"MorphismSpace({self.source.name} -> {self.target.name}, dim={self.dim})"


def validate_comodule(m: Comodule) -> Certificate:
    p, n = m.p, m.over.dim
    d = m.over.comul_tensor()
    eps = m.over.counit_vec
    r = m.coaction_tensor()
    cert = Certificate(f"comodule axioms for {m.name}")
    if m.side == "right":
        lhs = _ein("ahx,xgm->ahgm", r, r) % p
        rhs = _ein("axm,hgx->ahgm", r, d) % p
        cert.add("coassociativity", np.array_equal(lhs, rhs))
        counit_side = _ein("ahm,h->am", r, eps) % p
    else:
        lhs = _ein("hax,gxm->hgam", r, r) % p
        rhs = _ein("xam,hgx->hgam", r, d) % p
        cert.add("coassociativity", np.array_equal(lhs, rhs))
        counit_side = _ein("ham,h->am", r, eps) % p
    cert.add("counit", np.array_equal(counit_side, np.eye(m.dim, dtype=np.int64)))
    return cert


def validate_contramodule(b: Contramodule) -> Certificate:
    p = b.p
    d = b.over.comul_tensor()
    eps = b.over.counit_vec
    t = b.theta_tensor()
    cert = Certificate(f"contramodule axioms for {b.name}")
    unity = _ein("f,yfx->yx", eps, t) % p
    cert.add("contra-unity", np.array_equal(unity, np.eye(b.dim, dtype=np.int64)))
    lhs = _ein("yfz,zgx->yfgx", t, t) % p
    rhs = _ein("gfh,yhx->yfgx", d, t) % p
    cert.add("contra-associativity", np.array_equal(lhs, rhs))
    return cert


def trivial_comodule(c: CoalgebraSpec, unit_vec=None, side="right", name=None):
    """k with coaction through the unit grouplike of the coordinate ring."""
    unit_vec = _unit_of(c, unit_vec)
    mat = (unit_vec % c.p).reshape(-1, 1)
    m = Comodule(c, side, 1, LinearMap(c.p, mat), name=name or "k")
    validate_comodule(m).require()
    return m


def _unit_of(c, unit_vec):
    if unit_vec is not None:
        return np.asarray(unit_vec, dtype=np.int64)
    raise ValueError(f"{c.name}: an explicit unit (grouplike) vector is required")


def trivial_contramodule(h, name=None) -> Contramodule:
    """k with theta(f) = f(1) over the coordinate ring of a group scheme."""
    c, unit_vec = _coalgebra_and_unit(h)
    mat = (unit_vec % c.p).reshape(1, -1)
    b = Contramodule(c, 1, LinearMap(c.p, mat), name=name or "k")
    validate_contramodule(b).require()
    return b


def _coalgebra_and_unit(h):
    if isinstance(h, HopfAlgebraSpec):
        return h.coalgebra, h.unit_vec
    if hasattr(h, "hopf"):
        return h.hopf.coalgebra, h.hopf.unit_vec
    raise ValueError("need a Hopf algebra or group scheme descriptor")


def regular_comodule(c: CoalgebraSpec, side="right", name=None) -> Comodule:
    m = Comodule(c, side, c.dim, c.comul, name=name or f"{c.name}-regular")
    validate_comodule(m).require()
    return m


def cofree_comodule(c: CoalgebraSpec, d, name=None) -> Comodule:
    """V (x) C with coaction id (x) comul (a right comodule)."""
    coact = LinearMap.identity(c.p, d).tensor(c.comul)
    # codomain factors are (V, C, C); we need (V, C) (x) C, i.e. (V, C) major,
    # which is exactly the layout produced by the Kronecker product
    m = Comodule(c, "right", d * c.dim, coact, name=name or f"cofree({c.name},{d})")
    validate_comodule(m).require()
    return m


def free_contramodule(c: CoalgebraSpec, d, name=None) -> Contramodule:
    """Hom(C, V) = C* (x) V with theta from the comultiplication."""
    p, n = c.p, c.dim
    swap = factor_perm(p, (n, n), (1, 0))
    conv = LinearMap(p, c.comul.mat.T) @ swap  # (f, g) -> g * f
    theta = conv.tensor(LinearMap.identity(p, d))
    b = Contramodule(c, n * d, theta, name=name or f"free({c.name},{d})")
    validate_contramodule(b).require()
    return b


def dualize_comodule(m: Comodule, d=1, name=None) -> Contramodule:
    """Hom(M, V) as a contramodule, for a right comodule M.

    theta is induced by the coaction; when M is injective the result is
    projective (certified downstream on the dual module).
    """
    if m.side != "right":
        raise ShapeError("dualize expects a right comodule")
    p, n, mm = m.p, m.over.dim, m.dim
    swap = factor_perm(p, (n, mm), (1, 0))  # C* (x) M* -> M* (x) C*
    core = LinearMap(p, m.coaction.mat.T) @ swap
    theta = core.tensor(LinearMap.identity(p, d))
    b = Contramodule(m.over, mm * d, theta, name=name or f"dual({m.name},{d})")
    validate_contramodule(b).require()
    return b


def dual_comodule(h: HopfAlgebraSpec, m: Comodule, name=None) -> Comodule:
    """M* as a right comodule via the antipode twist of a right comodule M."""
    if m.side != "right":
        raise ShapeError("dual_comodule expects a right comodule")
    p = m.p
    r = m.coaction_tensor()  # [m', h, m]
    s = h.antipode.mat
    out = _ein("jbi,cb->icj", r, s) % p  # coact*[ (i, c), j ]
    coact = out.reshape(m.dim * h.dim, m.dim)
    star = Comodule(m.over, "right", m.dim, LinearMap(p, coact), name=name or f"{m.name}*")
    validate_comodule(star).require()
    return star


def tensor_comodule(h: HopfAlgebraSpec, m: Comodule, n: Comodule, name=None) -> Comodule:
    """M (x) N as a right comodule over a Hopf algebra."""
    if m.side != "right" or n.side != "right":
        raise ShapeError("tensor_comodule expects right comodules")
    p = m.p
    rm = m.coaction_tensor()
    rn = n.coaction_tensor()
    mul = h.mul.mat.reshape(h.dim, h.dim, h.dim)
    out = _ein("agi,bhj,cgh->abcij", rm, rn, mul) % p
    coact = out.reshape(m.dim * n.dim * h.dim, m.dim * n.dim)
    t = Comodule(m.over, "right", m.dim * n.dim, LinearMap(p, coact),
                 name=name or f"{m.name}(x){n.name}")
    validate_comodule(t).require()
    return t


def corestrict_comodule(pi: CoalgebraMorphism, m: Comodule, name=None) -> Comodule:
    """Push a comodule over the source down along pi: C -> D."""
    p = m.p
    if m.over is not pi.source and m.over.name != pi.source.name:
        raise ShapeError("comodule is not over the source of the morphism")
    if m.side == "right":
        coact = LinearMap.identity(p, m.dim).tensor(pi.map) @ m.coaction
    else:
        coact = pi.map.tensor(LinearMap.identity(p, m.dim)) @ m.coaction
    out = Comodule(pi.target, m.side, m.dim, coact, name=name or f"{m.name}|{pi.target.name}")
    validate_comodule(out).require()
    return out


def left_comodule_from_right(h: HopfAlgebraSpec, m: Comodule, name=None) -> Comodule:
    """Side conversion through the antipode: lambda(m) = S(m_(1)) (x) m_(0)."""
    if m.side != "right":
        raise ShapeError("expected a right comodule")
    p = m.p
    r = m.coaction_tensor()
    out = _ein("abm,cb->cam", r, h.antipode.mat) % p
    coact = out.reshape(h.dim * m.dim, m.dim)
    left = Comodule(m.over, "left", m.dim, LinearMap(p, coact), name=name or f"{m.name}-left")
    validate_comodule(left).require()
    return left


def restrict(pi: CoalgebraMorphism, b: Contramodule, name=None) -> Contramodule:
    """Restriction along pi: C -> D of a contramodule over C."""
    if b.over is not pi.source and b.over.name != pi.source.name:
        raise ShapeError("contramodule is not over the source of the morphism")
    p = b.p
    theta = b.theta @ pi.map.T.tensor(LinearMap.identity(p, b.dim))
    out = Contramodule(pi.target, b.dim, theta, name=name or f"{b.name}|{pi.target.name}")
    validate_contramodule(out).require()
    return out


def to_dual_module(b: Contramodule) -> repthy.AlgebraRep:
    """The right C*-module attached to a contramodule: a transposition."""
    a = dual_algebra(b.over)
    act = reorder_domain(b.theta.mat, (b.over.dim, b.dim), (1, 0))
    rep = repthy.AlgebraRep(a, b.dim, LinearMap(b.p, act), name=b.name)
    return rep


def from_dual_module(rep: repthy.AlgebraRep, c: CoalgebraSpec, name=None) -> Contramodule:
    """Inverse dictionary; the module must be over the dual of c."""
    if rep.algebra.dim != c.dim or rep.algebra.p != c.p:
        raise ShapeError("module is not over the dual of the given coalgebra")
    theta = reorder_domain(rep.action.mat, (rep.dim, c.dim), (1, 0))
    b = Contramodule(c, rep.dim, LinearMap(c.p, theta), name=name or rep.name)
    validate_contramodule(b).require()
    return b


def hom_contra(b: Contramodule, d: Contramodule) -> MorphismSpace:
    """Basis of the solution space of f . theta_B = theta_D . (id (x) f).

    Solved on the dual modules against a generating set of the dual algebra;
    every basis element is then re-verified against the full defining square,
    which is exactly equivalent and keeps the linear systems small.
    """
    if b.over is not d.over and b.over.name != d.over.name:
        raise ShapeError("contramodules over different coalgebras")
    p, n = b.p, b.over.dim
    mats = repthy.module_hom_space(to_dual_module(b), to_dual_module(d))
    maps = [LinearMap(p, mat) for mat in mats]
    space = MorphismSpace(b, d, maps)
    for f in maps:
        left = f @ b.theta
        right = d.theta @ LinearMap.identity(p, n).tensor(f)
        if left != right:
            raise ValidationError("solved morphism fails the defining square")
    return space


def is_projective_contramodule(b: Contramodule) -> repthy.ProjectivityCertificate:
    """Projectivity via the dual-module splitting solver."""
    rep = to_dual_module(b)
    return repthy.is_projective(rep.algebra, rep)


def random_contramodule(c: CoalgebraSpec, rng, max_rank=2, name=None) -> Contramodule:
    """A validated contramodule: a random quotient of a free one."""
    d = int(rng.integers(1, max_rank + 1))
    free = free_contramodule(c, d)
    rep = to_dual_module(free)
    k = int(rng.integers(0, 3))
    if k == 0:
        return Contramodule(c, free.dim, free.theta, name=name or f"rand({c.name})")
    seeds = rng.integers(0, c.p, size=(k, free.dim))
    sub = repthy.submodule_generated(rep, seeds)
    if sub.shape[0] in (0, free.dim):
        out = Contramodule(c, free.dim, free.theta, name=name or f"rand({c.name})")
        validate_contramodule(out).require()
        return out
    quo, _ = repthy.quotient_rep(rep, sub)
    out = from_dual_module(quo, c, name=name or f"rand({c.name})")
    return out


def random_comodule(c: CoalgebraSpec, rng, max_rank=2, name=None) -> Comodule:
    """A validated right comodule: a random subcomodule of a cofree one."""
    d = int(rng.integers(1, max_rank + 1))
    big = cofree_comodule(c, d)
    k = int(rng.integers(1, 3))
    seeds = rng.integers(0, c.p, size=(k, big.dim)) % c.p
    rows = _subcomodule_closure(big, seeds)
    if rows.shape[0] in (0, big.dim):
        return big
    return _sub_comodule(big, rows, name=name or f"rand({c.name})")


def _subcomodule_closure(m: Comodule, seed_rows):
    p, n = m.p, m.over.dim
    r = m.coaction_tensor()  # right: [m', h, m]
    ops = [r[:, h, :] for h in range(n)]  # components (id (x) e_h*) . coaction
    span = row_space(np.atleast_2d(seed_rows), p)
    grew = True
    while grew and 0 < span.shape[0] < m.dim:
        moved = [matmul_mod(span, op.T, p) for op in ops]
        bigger = row_space(np.vstack([span] + moved), p)
        grew = bigger.shape[0] > span.shape[0]
        span = bigger
    return span


def _sub_comodule(m: Comodule, rows, name=None) -> Comodule:
    p, n = m.p, m.over.dim
    rows = row_space(rows, p)
    k = rows.shape[0]
    from .exactlin import rref

    _, pivots = rref(rows, p)
    express = np.zeros((k, m.dim), dtype=np.int64)
    for i, c in enumerate(pivots):
        express[i, c] = 1
    big = matmul_mod(m.coaction.mat, rows.T, p)  # (m*n, k)
    coact = matmul_mod(np.kron(express, np.eye(n, dtype=np.int64)) % p, big, p)
    out = Comodule(m.over, "right", k, LinearMap(p, coact), name=name or f"{m.name}-sub")
    validate_comodule(out).require()
    return out
