"""Coalgebras, algebras and Hopf algebras as structure constants over F_p.

Structure maps are LinearMaps between tensor powers under the package-wide
basis conventions; validators contract the defining diagrams exactly and
report one residual per axiom.
"""

from __future__ import annotations

import numpy as np

from . import fppoly
from .certify import Certificate, ValidationError
from .exactlin import (
    LinearMap,
    ShapeError,
    matmul_mod,
    rank,
)
from .groups import FiniteGroup, cyclic

__all__ = [
    "CoalgebraSpec",
    "AlgebraSpec",
    "HopfAlgebraSpec",
    "CoalgebraMorphism",
    "GroupSchemeDescriptor",
    "SemidirectDescriptor",
    "validate_coalgebra",
    "validate_algebra",
    "validate_hopf",
    "validate_coalgebra_morphism",
    "validate_hopf_morphism",
    "dual_algebra",
    "dual_algebra_map",
    "grouplike_elements",
    "constant_group_scheme",
    "additive_kernel_scheme",
    "mu_n",
    "trivial_scheme",
    "counit_morphism",
    "additive_quotient_map",
    "constant_restriction_map",
    "subgroup_quotient_map",
    "build_semidirect_scheme",
]


def _ein(expr, *ops):
    """Exact integer einsum through float64 (entries stay far below 2**53)."""
    out = np.einsum(expr, *[op.astype(np.float64) for op in ops], optimize=True)
    return np.rint(out).astype(np.int64)


class CoalgebraSpec:
    """A coalgebra: comultiplication C -> C (x) C and counit C -> k."""

    def __init__(self, p, dim, comul: LinearMap, counit: LinearMap, name="C"):
        self.p = p
        self.dim = dim
        self.comul = comul
        self.counit = counit
        self.name = name
        if comul.mat.shape != (dim * dim, dim):
            raise ShapeError(f"{name}: comultiplication must be ({dim*dim},{dim})")
        if counit.mat.shape != (1, dim):
            raise ShapeError(f"{name}: counit must be (1,{dim})")

    def comul_tensor(self):
        """D[a, b, c] = coefficient of e_a (x) e_b in comul(e_c)."""
        n = self.dim
        return self.comul.mat.reshape(n, n, n)

    @property
    def counit_vec(self):
        return self.counit.mat.reshape(-1)

    def __repr__(self):
        return f"CoalgebraSpec({self.name}, dim={self.dim}, p={self.p})"


class AlgebraSpec:
    """A unital associative algebra: mul A (x) A -> A plus the unit element."""

    def __init__(self, p, dim, mul: LinearMap, unit_vec, name="A"):
        self.p = p
        self.dim = dim
        self.mul = mul
        self.unit_vec = np.asarray(unit_vec, dtype=np.int64).reshape(-1) % p
        self.name = name
        if mul.mat.shape != (dim, dim * dim):
            raise ShapeError(f"{name}: multiplication must be ({dim},{dim*dim})")
        if self.unit_vec.shape != (dim,):
            raise ShapeError(f"{name}: unit vector must have length {dim}")

    def mul_tensor(self):
        """M[c, a, b] = coefficient of e_c in e_a * e_b."""
        n = self.dim
        return self.mul.mat.reshape(n, n, n)

    def multiply(self, a, b):
        a = np.asarray(a, dtype=np.int64) % self.p
        b = np.asarray(b, dtype=np.int64) % self.p
        return _ein("cab,a,b->c", self.mul_tensor(), a, b) % self.p

    def left_mult(self, a):
        """Matrix of x -> a * x."""
        return _ein("cab,a->cb", self.mul_tensor(), np.asarray(a) % self.p) % self.p

    def right_mult(self, a):
        """Matrix of x -> x * a."""
        return _ein("cab,b->ca", self.mul_tensor(), np.asarray(a) % self.p) % self.p

    def generating_set(self):
        """Indices of a small set of basis elements generating A as an algebra."""
        cached = getattr(self, "_gens_cache", None)
        if cached is not None:
            return cached
        n, p = self.dim, self.p
        from .exactlin import row_space

        chosen = []
        span = row_space(self.unit_vec.reshape(1, -1), p)
        for idx in range(n):
            if rank(np.vstack([span, np.eye(n, dtype=np.int64)[idx]]), p) == span.shape[0]:
                continue
            chosen.append(idx)
            vecs = [span, np.eye(n, dtype=np.int64)[idx : idx + 1]]
            span = row_space(np.vstack(vecs), p)
            # close under products with the chosen generators
            grew = True
            while grew:
                prods = []
                for g in chosen:
                    prods.append(matmul_mod(span, self.left_mult(np.eye(n, dtype=np.int64)[g]).T, p))
                    prods.append(matmul_mod(span, self.right_mult(np.eye(n, dtype=np.int64)[g]).T, p))
                bigger = row_space(np.vstack([span] + prods), p)
                grew = bigger.shape[0] > span.shape[0]
                span = bigger
            if span.shape[0] == n:
                break
        self._gens_cache = chosen
        return chosen

    def __repr__(self):
        return f"AlgebraSpec({self.name}, dim={self.dim}, p={self.p})"


class HopfAlgebraSpec:
    """A Hopf algebra: compatible algebra and coalgebra plus antipode."""

    def __init__(self, coalgebra: CoalgebraSpec, mul: LinearMap, unit: LinearMap,
                 antipode: LinearMap, name=None):
        self.coalgebra = coalgebra
        self.mul = mul
        self.unit = unit
        self.antipode = antipode
        self.name = name or coalgebra.name
        n = coalgebra.dim
        if mul.mat.shape != (n, n * n):
            raise ShapeError(f"{self.name}: multiplication must be ({n},{n*n})")
        if unit.mat.shape != (n, 1):
            raise ShapeError(f"{self.name}: unit must be ({n},1)")
        if antipode.mat.shape != (n, n):
            raise ShapeError(f"{self.name}: antipode must be ({n},{n})")

    @property
    def p(self):
        return self.coalgebra.p

    @property
    def dim(self):
        return self.coalgebra.dim

    @property
    def comul(self):
        return self.coalgebra.comul

    @property
    def counit(self):
        return self.coalgebra.counit

    @property
    def unit_vec(self):
        return self.unit.mat.reshape(-1)

    def as_algebra(self) -> AlgebraSpec:
        return AlgebraSpec(self.p, self.dim, self.mul, self.unit_vec, name=self.name)

    def __repr__(self):
        return f"HopfAlgebraSpec({self.name}, dim={self.dim}, p={self.p})"


def validate_coalgebra(c: CoalgebraSpec) -> Certificate:
    p, n = c.p, c.dim
    d = c.comul_tensor()
    eps = c.counit_vec
    cert = Certificate(f"coalgebra axioms for {c.name}")
    lhs = _ein("abx,xyc->abyc", d, d) % p
    rhs = _ein("ayc,bgy->abgc", d, d) % p
    cert.add("coassociativity", np.array_equal(lhs, rhs))
    left = _ein("a,abc->bc", eps, d) % p
    right = _ein("b,abc->ac", eps, d) % p
    eye = np.eye(n, dtype=np.int64)
    cert.add("counit-left", np.array_equal(left, eye))
    cert.add("counit-right", np.array_equal(right, eye))
    return cert


def validate_algebra(a: AlgebraSpec) -> Certificate:
    p, n = a.p, a.dim
    m = a.mul_tensor()
    cert = Certificate(f"algebra axioms for {a.name}")
    lhs = _ein("xab,yxc->yabc", m, m) % p
    rhs = _ein("xbc,yax->yabc", m, m) % p
    cert.add("associativity", np.array_equal(lhs, rhs))
    eye = np.eye(n, dtype=np.int64)
    cert.add("unit-left", np.array_equal(_ein("cab,a->cb", m, a.unit_vec) % p, eye))
    cert.add("unit-right", np.array_equal(_ein("cab,b->ca", m, a.unit_vec) % p, eye))
    return cert


def validate_hopf(h: HopfAlgebraSpec) -> Certificate:
    """Check all Hopf axioms by exact tensor contraction, one residual each."""
    p, n = h.p, h.dim
    d = h.coalgebra.comul_tensor()
    eps = h.coalgebra.counit_vec
    m = h.mul.mat.reshape(n, n, n)
    u = h.unit_vec
    s = h.antipode.mat
    cert = Certificate(f"hopf axioms for {h.name}")
    for chk in validate_coalgebra(h.coalgebra).checks:
        cert.checks.append(chk)
    for chk in validate_algebra(h.as_algebra()).checks:
        cert.checks.append(chk)
    # bialgebra compatibility
    lhs = _ein("abc,cxy->abxy", d, m) % p
    rhs = _ein("aik,bjl,ijx,kly->abxy", m, m, d, d) % p
    cert.add("comultiplication-multiplicative", np.array_equal(lhs, rhs))
    cert.add(
        "counit-multiplicative",
        np.array_equal(_ein("c,cxy->xy", eps, m) % p, np.outer(eps, eps) % p),
    )
    cert.add(
        "comultiplication-of-unit",
        np.array_equal((h.comul.mat @ u) % p, np.kron(u, u) % p),
    )
    cert.add("counit-of-unit", int(eps @ u % p) == 1)
    # antipode axioms
    target = np.outer(u, eps) % p
    left = _ein("ysb,sa,abc->yc", m, s, d) % p
    right = _ein("yas,sb,abc->yc", m, s, d) % p
    cert.add("antipode-left", np.array_equal(left, target))
    cert.add("antipode-right", np.array_equal(right, target))
    return cert


class CoalgebraMorphism:
    """A linear map between coalgebras, validated against both structures."""

    def __init__(self, source: CoalgebraSpec, target: CoalgebraSpec, map: LinearMap, name="pi"):
        self.source = source
        self.target = target
        self.map = map
        self.name = name
        if map.mat.shape != (target.dim, source.dim):
            raise ShapeError(f"{name}: map must be ({target.dim},{source.dim})")

    def __repr__(self):
        return f"CoalgebraMorphism({self.name}: {self.source.name} -> {self.target.name})"


def validate_coalgebra_morphism(f: CoalgebraMorphism) -> Certificate:
    p = f.source.p
    cert = Certificate(f"coalgebra morphism {f.name}")
    m = f.map.mat
    lhs = _ein("ax,by,xyc->abc", m, m, f.source.comul_tensor()) % p
    rhs = _ein("abx,xc->abc", f.target.comul_tensor(), m) % p
    cert.add("compatible-with-comultiplication", np.array_equal(lhs, rhs))
    cert.add(
        "compatible-with-counit",
        np.array_equal(matmul_mod(f.target.counit.mat, m, p), f.source.counit.mat),
    )
    return cert


def validate_hopf_morphism(f: CoalgebraMorphism, source: HopfAlgebraSpec,
                           target: HopfAlgebraSpec) -> Certificate:
    p = source.p
    cert = validate_coalgebra_morphism(f)
    cert.name = f"hopf morphism {f.name}"
    m = f.map.mat
    lhs = matmul_mod(m, source.mul.mat, p)
    rhs = matmul_mod(target.mul.mat, np.kron(m, m) % p, p)
    cert.add("compatible-with-multiplication", np.array_equal(lhs, rhs))
    cert.add(
        "compatible-with-unit",
        np.array_equal((m @ source.unit_vec) % p, target.unit_vec),
    )
    cert.add(
        "compatible-with-antipode",
        np.array_equal(matmul_mod(m, source.antipode.mat, p),
                       matmul_mod(target.antipode.mat, m, p)),
    )
    return cert


def dual_algebra(c: CoalgebraSpec) -> AlgebraSpec:
    """C* with the convolution product (transpose of comultiplication).

    Cached on the coalgebra so repeated duality crossings share one algebra
    object (and with it the memoized structure data downstream).
    """
    cached = getattr(c, "_dual_cache", None)
    if cached is not None:
        return cached
    a = AlgebraSpec(c.p, c.dim, LinearMap(c.p, c.comul.mat.T), c.counit_vec,
                    name=f"{c.name}*")
    validate_algebra(a).require()
    c._dual_cache = a
    return a


def dual_algebra_map(f: CoalgebraMorphism) -> LinearMap:
    """The algebra map target* -> source* dual to a coalgebra morphism."""
    return f.map.T


class GroupSchemeDescriptor:
    """A finite group scheme carried as its coordinate Hopf algebra.

    The Frobenius comorphism raises coordinates to p-th powers; for constant
    schemes split over F_p it is the identity.
    """

    def __init__(self, name, hopf: HopfAlgebraSpec, frobenius: LinearMap, kind, meta=None):
        self.name = name
        self.hopf = hopf
        self.frobenius = frobenius
        self.kind = kind
        self.meta = dict(meta or {})
        if frobenius.mat.shape != (hopf.dim, hopf.dim):
            raise ShapeError(f"{name}: frobenius must be square of size {hopf.dim}")

    @property
    def p(self):
        return self.hopf.p

    @property
    def dim(self):
        return self.hopf.dim

    @property
    def order(self):
        return self.hopf.dim

    @property
    def coalgebra(self):
        return self.hopf.coalgebra

    def frobenius_power(self, r) -> LinearMap:
        out = LinearMap.identity(self.p, self.dim)
        for _ in range(r):
            out = self.frobenius @ out
        return out

    def validate(self) -> Certificate:
        cert = validate_hopf(self.hopf)
        fro = CoalgebraMorphism(self.coalgebra, self.coalgebra, self.frobenius, name="F#")
        for chk in validate_hopf_morphism(fro, self.hopf, self.hopf).checks:
            chk.label = "frobenius-" + chk.label
            cert.checks.append(chk)
        return cert

    def __repr__(self):
        return f"GroupSchemeDescriptor({self.name}, dim={self.dim}, p={self.p})"


def constant_group_scheme(group: FiniteGroup, p, name=None) -> GroupSchemeDescriptor:
    """Functions on a finite group: basis {e_g}, comul from the group law."""
    n = group.order
    name = name or f"k^{group.name}@F{p}"
    comul = np.zeros((n * n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            comul[a * n + b, group.mul(a, b)] = 1
    counit = np.zeros((1, n), dtype=np.int64)
    counit[0, group.identity] = 1
    mul = np.zeros((n, n * n), dtype=np.int64)
    for g in range(n):
        mul[g, g * n + g] = 1
    unit = np.ones((n, 1), dtype=np.int64)
    antipode = np.zeros((n, n), dtype=np.int64)
    for g in range(n):
        antipode[int(group.inverse[g]), g] = 1
    coalg = CoalgebraSpec(p, n, LinearMap(p, comul), LinearMap(p, counit), name=name)
    hopf = HopfAlgebraSpec(coalg, LinearMap(p, mul), LinearMap(p, unit), LinearMap(p, antipode))
    desc = GroupSchemeDescriptor(name, hopf, LinearMap.identity(p, n),
                                 kind="constant", meta={"group": group})
    return desc


def _binom_mod(i, k, p):
    from math import comb

    return comb(i, k) % p


def additive_kernel_scheme(phi, p, name=None) -> GroupSchemeDescriptor:
    """k[x]/(phi(x)) for an additive polynomial phi, with x primitive.

    phi may only have monomials x^(p^i); its kernel is a finite subgroup
    scheme of the additive group.
    """
    phi = fppoly.monic(np.asarray(phi, dtype=np.int64), p)
    n = fppoly.degree(phi)
    if n < 1:
        raise ValueError("phi must be a nonconstant polynomial")
    powers_of_p = {p**i for i in range(0, 64) if p**i <= n}
    for idx in np.nonzero(phi[:-1])[0]:
        if int(idx) not in powers_of_p:
            raise ValueError(f"phi is not additive: monomial x^{int(idx)} present")
    if n not in powers_of_p:
        raise ValueError("phi is not additive: leading degree is not a p-power")
    name = name or f"ker[{_poly_str(phi)}]@F{p}"
    # reduction table for x^k mod phi, k up to p*(n-1)
    top = max(2 * (n - 1), p * (n - 1)) + 1
    red = np.zeros((top, n), dtype=np.int64)
    cur = np.array([1], dtype=np.int64)
    for k in range(top):
        red[k, : cur.size] = cur
        cur = fppoly.mod_poly(np.concatenate([[0], cur]), phi, p)
    mul = np.zeros((n, n * n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            mul[:, i * n + j] = red[i + j]
    comul = np.zeros((n * n, n), dtype=np.int64)
    for c in range(n):
        for k in range(c + 1):
            comul[k * n + (c - k), c] = _binom_mod(c, k, p)
    counit = np.zeros((1, n), dtype=np.int64)
    counit[0, 0] = 1
    unit = np.zeros((n, 1), dtype=np.int64)
    unit[0, 0] = 1
    antipode = np.zeros((n, n), dtype=np.int64)
    for c in range(n):
        antipode[c, c] = pow(-1, c, p)
    fro = np.zeros((n, n), dtype=np.int64)
    for c in range(n):
        fro[:, c] = red[p * c]
    coalg = CoalgebraSpec(p, n, LinearMap(p, comul), LinearMap(p, counit), name=name)
    hopf = HopfAlgebraSpec(coalg, LinearMap(p, mul), LinearMap(p, unit), LinearMap(p, antipode))
    return GroupSchemeDescriptor(name, hopf, LinearMap(p, fro),
                                 kind="additive_kernel", meta={"phi": phi})


def _poly_str(phi):
    terms = [f"x^{i}" if c == 1 else f"{int(c)}x^{i}" for i, c in enumerate(phi) if c]
    return "+".join(reversed(terms)) or "0"


def mu_n(n, p, name=None) -> GroupSchemeDescriptor:
    """k[x]/(x^n - 1) with x grouplike: the n-th roots of unity."""
    name = name or f"mu{n}@F{p}"
    comul = np.zeros((n * n, n), dtype=np.int64)
    for i in range(n):
        comul[i * n + i, i] = 1
    counit = np.ones((1, n), dtype=np.int64)
    mul = np.zeros((n, n * n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            mul[(i + j) % n, i * n + j] = 1
    unit = np.zeros((n, 1), dtype=np.int64)
    unit[0, 0] = 1
    antipode = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        antipode[(-i) % n, i] = 1
    fro = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        fro[(p * i) % n, i] = 1
    coalg = CoalgebraSpec(p, n, LinearMap(p, comul), LinearMap(p, counit), name=name)
    hopf = HopfAlgebraSpec(coalg, LinearMap(p, mul), LinearMap(p, unit), LinearMap(p, antipode))
    return GroupSchemeDescriptor(name, hopf, LinearMap(p, fro), kind="mu", meta={"n": n})


def trivial_scheme(p) -> GroupSchemeDescriptor:
    return constant_group_scheme(cyclic(1, name="1"), p, name=f"k@F{p}")


def counit_morphism(g: GroupSchemeDescriptor, trivial: GroupSchemeDescriptor = None) -> CoalgebraMorphism:
    """The quotient map onto the trivial subgroup scheme (the counit)."""
    trivial = trivial or trivial_scheme(g.p)
    return CoalgebraMorphism(g.coalgebra, trivial.coalgebra, LinearMap(g.p, g.hopf.counit.mat),
                             name=f"{g.name}->k")


def additive_quotient_map(big: GroupSchemeDescriptor, small: GroupSchemeDescriptor) -> CoalgebraMorphism:
    """x -> x between additive kernels; defined exactly when phi_small | phi_big."""
    if big.kind != "additive_kernel" or small.kind != "additive_kernel":
        raise ValueError("both schemes must be additive kernels")
    p = big.p
    phi_b, phi_s = big.meta["phi"], small.meta["phi"]
    _, rem = fppoly.divmod_poly(phi_b, phi_s, p)
    if fppoly.degree(rem) >= 0:
        raise ValueError("no quotient map: defining polynomial does not divide")
    ns, nb = small.dim, big.dim
    mat = np.zeros((ns, nb), dtype=np.int64)
    cur = np.array([1], dtype=np.int64)
    for i in range(nb):
        mat[: cur.size, i] = cur
        cur = fppoly.mod_poly(np.concatenate([[0], cur]), phi_s, p)
    mor = CoalgebraMorphism(big.coalgebra, small.coalgebra, LinearMap(p, mat),
                            name=f"{big.name}->{small.name}")
    validate_hopf_morphism(mor, big.hopf, small.hopf).require()
    if rank(mat, p) != ns:
        raise ValidationError("quotient map is not surjective")
    return mor


def constant_restriction_map(big: GroupSchemeDescriptor, small: GroupSchemeDescriptor,
                             embedding) -> CoalgebraMorphism:
    """Restriction of functions along an injective group hom small -> big."""
    if big.kind != "constant" or small.kind != "constant":
        raise ValueError("both schemes must be constant group schemes")
    gb: FiniteGroup = big.meta["group"]
    gs: FiniteGroup = small.meta["group"]
    emb = [int(i) for i in embedding]
    if len(emb) != gs.order or len(set(emb)) != gs.order:
        raise ValueError("embedding must be injective on the subgroup")
    for a in range(gs.order):
        for b in range(gs.order):
            if gb.mul(emb[a], emb[b]) != emb[gs.mul(a, b)]:
                raise ValueError("embedding is not a group homomorphism")
    p = big.p
    mat = np.zeros((gs.order, gb.order), dtype=np.int64)
    for h, g in enumerate(emb):
        mat[h, g] = 1
    mor = CoalgebraMorphism(big.coalgebra, small.coalgebra, LinearMap(p, mat),
                            name=f"{big.name}->{small.name}")
    validate_hopf_morphism(mor, big.hopf, small.hopf).require()
    return mor


def subgroup_quotient_map(big: GroupSchemeDescriptor, small: GroupSchemeDescriptor,
                          embedding=None) -> CoalgebraMorphism:
    """Validated surjection of coordinate rings for a bundled subgroup pair."""
    if big.kind == "additive_kernel" and small.kind == "additive_kernel":
        return additive_quotient_map(big, small)
    if big.kind == "constant" and small.kind == "constant":
        if embedding is None:
            raise ValueError("constant pairs need an explicit embedding")
        return constant_restriction_map(big, small, embedding)
    if small.dim == 1:
        return counit_morphism(big, small)
    raise ValueError(f"no quotient map rule for kinds {big.kind!r}, {small.kind!r}")


class SemidirectDescriptor:
    """A constant scheme of N x| K with the comodule data used by induction.

    delta_right / delta_left are the coactions of k[K] on k[G] coming from
    left and right translation, delta_conj the conjugation coaction; the
    conjugation coaction restricted to k[N] is exposed as a comodule by the
    functor layer.
    """

    def __init__(self, scheme, n_scheme, k_scheme, iota_star, pi_k,
                 delta_right, delta_left, delta_conj, conj_on_n, group, n_group, k_group):
        self.scheme = scheme
        self.n_scheme = n_scheme
        self.k_scheme = k_scheme
        self.iota_star = iota_star
        self.pi_k = pi_k
        self.delta_right = delta_right
        self.delta_left = delta_left
        self.delta_conj = delta_conj
        self.conj_on_n = conj_on_n
        self.group = group
        self.n_group = n_group
        self.k_group = k_group

    @property
    def p(self):
        return self.scheme.p


def build_semidirect_scheme(n_grp: FiniteGroup, k_grp: FiniteGroup, action, p,
                            name=None) -> SemidirectDescriptor:
    """Constant scheme of N x| K together with translation/conjugation coactions."""
    from .groups import semidirect

    g_grp = semidirect(n_grp, k_grp, action, name=name)
    nn, nk = n_grp.order, k_grp.order
    ng = g_grp.order
    scheme = constant_group_scheme(g_grp, p)
    n_scheme = constant_group_scheme(n_grp, p)
    k_scheme = constant_group_scheme(k_grp, p)
    embed_n = [n * nk + k_grp.identity for n in range(nn)]
    embed_k = [n_grp.identity * nk + k for k in range(nk)]
    iota_star = constant_restriction_map(scheme, n_scheme, embed_n)
    pi_k = constant_restriction_map(scheme, k_scheme, embed_k)
    inv_k = [g_grp.inverse[embed_k[k]] for k in range(nk)]
    delta_right = np.zeros((ng * nk, ng), dtype=np.int64)  # e_g -> sum e_{k^-1 g} (x) e_k
    delta_left = np.zeros((nk * ng, ng), dtype=np.int64)   # e_g -> sum e_k (x) e_{g k^-1}
    delta_conj = np.zeros((ng * nk, ng), dtype=np.int64)   # e_g -> sum e_{k^-1 g k} (x) e_k
    for g in range(ng):
        for k in range(nk):
            delta_right[g_grp.mul(int(inv_k[k]), g) * nk + k, g] = 1
            delta_left[k * ng + g_grp.mul(g, int(inv_k[k])), g] = 1
            delta_conj[g_grp.mul(g_grp.mul(int(inv_k[k]), g), embed_k[k]) * nk + k, g] = 1
    conj_on_n = np.zeros((nn * nk, nn), dtype=np.int64)
    for n in range(nn):
        for k in range(nk):
            gn = g_grp.mul(g_grp.mul(int(inv_k[k]), embed_n[n]), embed_k[k])
            if gn % nk != k_grp.identity:
                raise ValidationError("conjugation does not preserve the normal part")
            conj_on_n[(gn // nk) * nk + k, n] = 1
    return SemidirectDescriptor(
        scheme, n_scheme, k_scheme, iota_star, pi_k,
        LinearMap(p, delta_right), LinearMap(p, delta_left), LinearMap(p, delta_conj),
        LinearMap(p, conj_on_n), g_grp, n_grp, k_grp,
    )


def grouplike_elements(c: CoalgebraSpec, max_enumeration=2_000_000):
    """All c with comul(c) = c (x) c and counit(c) = 1.

    Small spaces are swept directly in vectorized chunks; larger ones go
    through one-dimensional representations of the dual algebra.
    """
    p, n = c.p, c.dim
    total = p**n
    if total <= max_enumeration:
        out = []
        d = c.comul.mat
        eps = c.counit_vec
        chunk = 1 << 14
        for start in range(0, total, chunk):
            idx = np.arange(start, min(start + chunk, total))
            digits = (idx[:, None] // p ** np.arange(n)[None, :]) % p  # (k, n)
            evals = digits @ eps % p
            cand = digits[evals == 1]
            if cand.size == 0:
                continue
            left = matmul_mod(d, cand.T, p).T  # (k, n*n)
            rightk = (cand[:, :, None] * cand[:, None, :]).reshape(cand.shape[0], -1) % p
            hits = np.all(left == rightk, axis=1)
            out.extend(cand[hits])
        return [np.array(v, dtype=np.int64) for v in out]
    # dual route: grouplikes correspond to algebra characters of C*
    from . import repthy

    a = dual_algebra(c)
    chars = repthy.one_dimensional_characters(a)
    return [np.array([chi[i] for i in range(n)], dtype=np.int64) % p for chi in chars]
