"""The certification suite: named checks over the bundled instances.

Each check certifies one mathematical statement on concrete instances and
returns per-instance records with exact verdicts.  Reports are canonical
(sorted keys, no wall-clock data unless asked for) so equal seeds give
byte-identical output.
"""

from __future__ import annotations

import hashlib
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import comodcontra as cc
from . import functors as fn
from . import interchange
from . import mockproj as mp
from . import repthy
from .certify import digest_of
from .exactlin import LinearMap
from .fppoly import x_power
from .groups import cyclic, klein_four, symmetric3
from .hopf import (
    CoalgebraMorphism,
    additive_kernel_scheme,
    constant_group_scheme,
    dual_algebra,
    grouplike_elements,
    mu_n,
)

__all__ = [
    "CHECKS",
    "check_ids",
    "statement_of",
    "default_manifest",
    "run_suite",
    "builtin_instances",
    "builtin_instance",
    "bundled_axiom_schemes",
    "bundled_towers",
]


# ---------------------------------------------------------------- instances

def _stable_key(s):
    return int.from_bytes(hashlib.sha256(str(s).encode()).digest()[:4], "big")


def _artin_schreier(p, q):
    phi = np.zeros(q + 1, dtype=np.int64)
    phi[1] = p - 1
    phi[q] = 1
    return phi


def _tower_key(p, r):
    return f"amb_p{p}r{r}"


def builtin_instances():
    """Name -> constructor for every bundled instance (built on demand)."""
    reg = {}
    groups = {"z2": cyclic(2), "z3": cyclic(3), "v4": klein_four(), "s3": symmetric3()}
    for p in (2, 3):
        for gname, g in groups.items():
            reg[f"{gname}_p{p}"] = (lambda g=g, p=p, gname=gname:
                                    constant_group_scheme(g, p))
        for r in (1, 2):
            reg[f"ga{r}_p{p}"] = (lambda p=p, r=r:
                                  additive_kernel_scheme(x_power(p**r), p))
        reg[f"etale_p{p}"] = (lambda p=p: additive_kernel_scheme(_artin_schreier(p, p), p))
        for r in (1, 2):
            reg[_tower_key(p, r)] = (lambda p=p, r=r: mp.build_tower(p, r).ambient)
        for n in (1, 2, 3, 4):
            reg[f"mu{n}_p{p}"] = (lambda n=n, p=p: mu_n(n, p))
    return reg


_INSTANCE_CACHE = {}


def builtin_instance(name):
    if name not in _INSTANCE_CACHE:
        reg = builtin_instances()
        if name not in reg:
            raise KeyError(f"unknown builtin instance {name!r}; known: {sorted(reg)}")
        _INSTANCE_CACHE[name] = reg[name]()
    return _INSTANCE_CACHE[name]


def bundled_axiom_schemes():
    return sorted(builtin_instances())


def bundled_small_schemes(max_dim=9):
    out = []
    for name in bundled_axiom_schemes():
        desc = builtin_instance(name)
        if desc.dim <= max_dim:
            out.append(name)
    return out


_TOWER_CACHE = {}


def bundled_towers():
    for key in [(2, 1), (2, 2), (3, 1)]:
        if key not in _TOWER_CACHE:
            _TOWER_CACHE[key] = mp.build_tower(*key)
    return [_TOWER_CACHE[k] for k in [(2, 1), (2, 2), (3, 1)]]


def _etale_control():
    if "etale" not in _TOWER_CACHE:
        _TOWER_CACHE["etale"] = mp.build_etale_control(3)
    return _TOWER_CACHE["etale"]


def _record(instance, ok, **details):
    rec = {"instance": str(instance), "ok": bool(ok)}
    rec["digest"] = digest_of({"instance": rec["instance"], "ok": rec["ok"], **details})
    return rec


def _cert_record(instance, cert):
    rec = {"instance": str(instance), "ok": bool(cert.ok), "digest": cert.digest()}
    if not cert.ok:
        rec["failed"] = [c.label for c in cert.failures()]
    return rec


# ------------------------------------------------------------------- checks

def check_axioms(seed):
    out = []
    for name in bundled_axiom_schemes():
        desc = builtin_instance(name)
        out.append(_cert_record(name, desc.validate()))
    return out


def check_free_universal(seed):
    out = []
    for name in bundled_small_schemes():
        c = builtin_instance(name).coalgebra
        rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(1, _stable_key(name))))
        ok = True
        tried = 0
        for _ in range(20):
            d = int(rng.integers(1, 3))
            free = cc.free_contramodule(c, d)
            w = cc.random_contramodule(c, rng)
            hom = cc.hom_contra(free, w)
            tried += 1
            if hom.dim != d * w.dim:
                ok = False
                break
        out.append(_record(name, ok, samples=tried))
    return out


def check_dual_projectivity(seed):
    out = []
    cosemi = ["z2_p3", "z3_p2", "mu2_p3", "v4_p3"]
    for name in cosemi + ["ga1_p2", "amb_p2r1", "s3_p3"]:
        desc = builtin_instance(name)
        reg = cc.regular_comodule(desc.coalgebra)
        b = cc.dualize_comodule(reg, 1)
        cert = cc.is_projective_contramodule(b)
        out.append(_record(f"dual-of-regular:{name}", cert.verdict and cert.recheck()))
    for name in cosemi:
        desc = builtin_instance(name)
        triv = cc.trivial_comodule(desc.coalgebra, unit_vec=desc.hopf.unit_vec)
        b = cc.dualize_comodule(triv, 1)
        cert = cc.is_projective_contramodule(b)
        out.append(_record(f"dual-of-trivial-injective:{name}", cert.verdict))
    desc = builtin_instance("ga1_p2")
    cof = cc.cofree_comodule(desc.coalgebra, 2)
    cert = cc.is_projective_contramodule(cc.dualize_comodule(cof, 1))
    out.append(_record("dual-of-cofree-rank2:ga1_p2", cert.verdict))
    # the non-injective counterexample must be refused with an obstruction
    triv = cc.trivial_comodule(desc.coalgebra, unit_vec=desc.hopf.unit_vec)
    bad = cc.dualize_comodule(triv, 1)
    cert = cc.is_projective_contramodule(bad)
    refused = (not cert.verdict) and cert.obstruction.get("residual_rank", 0) > 0
    out.append(_record("non-injective-counterexample:ga1_p2", refused,
                       obstruction=cert.obstruction))
    return out


def check_adjunction(seed):
    out = []
    count = 0
    for t in bundled_towers():
        maps = [("subgroup", t.subgroup_map)] + [
            (f"level{s}", pi) for s, (_, pi) in enumerate(t.kernels, start=1)
        ]
        for tag, pi in maps:
            rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(4, t.p, t.r, _stable_key(tag))))
            for i in range(9):
                b = cc.random_contramodule(pi.target, rng)
                v = cc.random_contramodule(pi.source, rng)
                cert = fn.adjunction_check(pi, b, v)
                out.append(_cert_record(f"{t.name}:{tag}:pair{i}", cert))
                count += 1
    # identity morphism sanity instance
    amb = bundled_towers()[0].ambient
    ident = CoalgebraMorphism(amb.coalgebra, amb.coalgebra,
                              LinearMap.identity(amb.p, amb.dim), name="id")
    rng = np.random.default_rng(seed)
    b = cc.random_contramodule(amb.coalgebra, rng)
    out.append(_cert_record("identity-morphism", fn.adjunction_check(ident, b, b)))
    return out


def check_hom_identity(seed):
    out = []
    for t in bundled_towers():
        amb, sub, pi = t.ambient, t.finite_subgroup, t.subgroup_map
        m_choices = [
            ("trivial", cc.trivial_comodule(amb.coalgebra, unit_vec=amb.hopf.unit_vec)),
            ("regular", cc.regular_comodule(amb.coalgebra)),
        ]
        b_choices = [
            ("trivial", cc.trivial_contramodule(sub.hopf)),
            ("free1", cc.free_contramodule(sub.coalgebra, 1)),
        ]
        for mtag, m in m_choices:
            for btag, b in b_choices:
                res = fn.hom_identity_maps(amb, sub, pi, m, b)
                out.append(_cert_record(f"{t.name}:M={mtag}:B={btag}", res.certificate))
    return out


def check_semidirect(seed):
    sd = mp.build_semidirect_scheme_cached()
    out = []
    for tag, m in [
        ("k", cc.trivial_contramodule(sd.k_scheme.hopf)),
        ("free1", cc.free_contramodule(sd.k_scheme.coalgebra, 1)),
    ]:
        cert = fn.semidirect_induction(sd, m)
        out.append(_cert_record(f"S3=Z3x|Z2@p3:M={tag}", cert))
    return out


def check_weight_lemma(seed):
    torus = builtin_instance("mu2_p3")
    ident = CoalgebraMorphism(torus.coalgebra, torus.coalgebra,
                              LinearMap.identity(torus.p, torus.dim), name="id")
    alg = torus.hopf.as_algebra()
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(7,)))
    out = []
    for i in range(10):
        m = cc.random_comodule(torus.coalgebra, rng)
        b = cc.random_contramodule(torus.coalgebra, rng)
        h = fn.diagonal_hom(torus, m, b)
        wd_h = fn.weight_decompose(h, ident)
        wm = fn.comodule_weight_spaces(m, ident)
        wd_b = fn.weight_decompose(b, ident)

        def key(v):
            return tuple(int(x) for x in v)

        dims_m = {key(lam): rows.shape[0] for lam, rows in wm}
        ok = wd_h.defect == 0
        for nu, rows in wd_h.spaces:
            conv = 0
            for lam, rows_m in wm:
                for mu, rows_b in wd_b.spaces:
                    if key(alg.multiply(lam, mu)) == key(nu):
                        conv += rows_m.shape[0] * rows_b.shape[0]
            if conv != rows.shape[0]:
                ok = False
        out.append(_record(f"mu2@p3:pair{i}", ok,
                           hom_dims=wd_h.dims(), m_dims=list(dims_m.values())))
    return out


def check_mock_gate(seed):
    out = []
    for t in bundled_towers():
        out.append(_cert_record(t.name, mp.gate_check(t, seed=seed)))
        w = mp.build_witness(t)
        v = mp.is_mock_projective(w.result, t)
        out.append(_record(f"{t.name}:witness-proper", v.proper,
                           per_level=[c.verdict for c in v.per_level],
                           ambient=v.ambient.verdict))
    control = _etale_control()
    out.append(_cert_record(control.name, mp.gate_check(control, samples=20, seed=seed)))
    return out


def check_induced_biconditional(seed):
    out = []
    for t in [bundled_towers()[0], bundled_towers()[2]]:
        w = mp.build_witness(t)
        k_sub = cc.trivial_contramodule(t.finite_subgroup.hopf)
        left = cc.is_projective_contramodule(w.result).verdict
        right = cc.is_projective_contramodule(k_sub).verdict
        out.append(_record(f"{t.name}", left == right and not left,
                           induced_projective=left, trivial_over_subgroup=right))
    big, small, pi = mp.build_constant_pair(3)
    w = fn.induce(pi, cc.trivial_contramodule(small.hopf))
    left = cc.is_projective_contramodule(w.result).verdict
    right = cc.is_projective_contramodule(cc.trivial_contramodule(small.hopf)).verdict
    out.append(_record("z2-in-v4@p3-negative-control", left == right and left,
                       induced_projective=left, trivial_over_subgroup=right))
    return out


def check_twist_family(seed):
    out = []
    for t in [bundled_towers()[0], bundled_towers()[2]]:
        out.append(_cert_record(f"{t.name}:r=1", mp.twist_family_check(t, 1)))
        out.append(_cert_record(f"{t.name}:r=0", mp.twist_family_check(t, 0)))
    out.append(_cert_record("etale:r=1", mp.twist_family_check(_etale_control(), 1)))
    return out


def check_unipotent(seed):
    out = []
    for t in bundled_towers():
        out.append(_cert_record(t.name, mp.unipotent_checks(t)))
    return out


def check_multiplicity_identity(seed):
    out = []
    for name in ("s3_p3", "z2_p2"):
        desc = builtin_instance(name)
        hopf_spec = desc.hopf
        a = dual_algebra(desc.coalgebra)
        data = repthy.structure(a)
        nblocks = len(data.blocks)
        reg = cc.regular_comodule(desc.coalgebra)
        m_choices = [
            ("k", cc.trivial_comodule(desc.coalgebra, unit_vec=hopf_spec.unit_vec)),
            ("regular", reg),
            ("regular(x)regular", cc.tensor_comodule(hopf_spec, reg, reg)),
        ]
        for mtag, m in m_choices:
            for lam in range(nblocks):
                for mu in range(nblocks):
                    cert = repthy.multiplicity_identity_check(hopf_spec, m, lam, mu)
                    out.append(_cert_record(f"{name}:M={mtag}:lam={lam},mu={mu}", cert))
    return out


def _oracle_pairs(seed):
    """(name, algebra, module) triples of every suite module of dim <= 32."""
    pairs = []
    small = ["z2_p2", "z2_p3", "z3_p3", "v4_p2", "v4_p3", "s3_p3",
             "ga1_p2", "ga2_p2", "ga1_p3", "etale_p2", "etale_p3",
             "mu2_p3", "mu3_p3", "mu2_p2"]
    for name in small:
        desc = builtin_instance(name)
        a = dual_algebra(desc.coalgebra)
        pairs.append((f"{name}:regular", a, repthy.regular_rep(a)))
        pairs.append((f"{name}:trivial", a,
                      cc.to_dual_module(cc.trivial_contramodule(desc.hopf))))
        rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(13, _stable_key(name))))
        for i in range(3):
            b = cc.random_contramodule(desc.coalgebra, rng)
            if 0 < b.dim <= 32:
                pairs.append((f"{name}:random{i}", a, cc.to_dual_module(b)))
    for t in bundled_towers():
        w = mp.build_witness(t)
        a = dual_algebra(t.ambient.coalgebra)
        pairs.append((f"{t.name}:witness", a, cc.to_dual_module(w.result)))
        for s, (lvl, pi) in enumerate(t.kernels, start=1):
            res = cc.restrict(pi, w.result)
            pairs.append((f"{t.name}:witness|level{s}", dual_algebra(lvl.coalgebra),
                          cc.to_dual_module(res)))
    return [(n, a, m) for (n, a, m) in pairs if m.dim <= 32]


def check_oracle_agreement(seed):
    out = []
    for name, a, m in _oracle_pairs(seed):
        try:
            solver = repthy.is_projective(a, m).verdict
            oracle = repthy.is_projective_bruteforce(a, m)
            out.append(_record(name, solver == oracle, solver=solver, oracle=oracle))
        except repthy.UnsplitAlgebraError as exc:
            out.append(_record(name + ":excluded-unsplit", True, report=str(exc)))
    return out


# ---------------------------------------------------------------- registry

@dataclass(frozen=True)
class CheckDef:
    id: str
    statement: str
    runner: object


CHECKS = [
    CheckDef("axioms",
             "every bundled coordinate ring satisfies the Hopf algebra axioms exactly",
             check_axioms),
    CheckDef("free_universal",
             "morphism spaces out of free contramodules have dimension rank times target dimension",
             check_free_universal),
    CheckDef("dual_projectivity",
             "duals of injective comodules are projective; the non-injective counterexample is refused with an obstruction",
             check_dual_projectivity),
    CheckDef("adjunction",
             "induction is left adjoint to restriction with an invertible canonical bijection",
             check_adjunction),
    CheckDef("hom_identity",
             "maps into an induced contramodule form the induction of the diagonal Hom, via mutually inverse descended reindexings",
             check_hom_identity),
    CheckDef("semidirect_induction",
             "induction from the complement of a semidirect product is the diagonal Hom on functions of the normal part",
             check_semidirect),
    CheckDef("weight_lemma",
             "weight spaces of the diagonal Hom are convolutions of the factor weight spaces",
             check_weight_lemma),
    CheckDef("mock_gate",
             "induced witnesses are properly mock projective exactly when p divides the subgroup order; cosemisimple controls have none",
             check_mock_gate),
    CheckDef("induced_biconditional",
             "the induced trivial contramodule is ambient-projective iff the trivial contramodule is projective over the subgroup",
             check_induced_biconditional),
    CheckDef("twist_family",
             "twisted free contramodules are projective over the etale subgroup, trivial on kernel levels, and not ambient-projective",
             check_twist_family),
    CheckDef("unipotent",
             "unipotent ambient rings have a unique simple; witness head and morphism counts agree across independent routes",
             check_unipotent),
    CheckDef("multiplicity_identity",
             "morphism counts into simples equal composition multiplicities through the dual comodule, for all simple pairs",
             check_multiplicity_identity),
    CheckDef("oracle_agreement",
             "the projectivity solver agrees with the idempotent-decomposition oracle on every bundled module",
             check_oracle_agreement),
]

_CHECKS_BY_ID = {c.id: c for c in CHECKS}


def check_ids():
    return [c.id for c in CHECKS]


def statement_of(check_id):
    return _CHECKS_BY_ID[check_id].statement


def default_manifest(seed=0):
    return {"instances": "builtin", "checks": check_ids(), "seed": seed}


def run_suite(manifest=None, jobs=1, with_timings=False, budget_seconds=None):
    """Execute a manifest and assemble the canonical report."""
    manifest = dict(manifest or default_manifest())
    seed = int(manifest.get("seed", 0))
    wanted = manifest.get("checks") or check_ids()
    unknown = [cid for cid in wanted if cid not in _CHECKS_BY_ID]
    if unknown:
        raise interchange.InputError(f"unknown check ids: {unknown}")
    budget = budget_seconds or manifest.get("budget_seconds")
    start = time.monotonic()
    results = {}
    timings = {}

    def run_one(cid):
        t0 = time.monotonic()
        records = _CHECKS_BY_ID[cid].runner(seed)
        return cid, records, time.monotonic() - t0

    todo = list(wanted)
    skipped = []
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            for cid, records, dt in pool.map(run_one, todo):
                results[cid] = records
                timings[cid] = dt
    else:
        for cid in todo:
            if budget is not None and time.monotonic() - start > budget:
                skipped.append(cid)
                continue
            cid, records, dt = run_one(cid)
            results[cid] = records
            timings[cid] = dt
    checks_out = []
    npass = nfail = 0
    for cid in wanted:
        if cid in skipped:
            checks_out.append({"check": cid, "statement": statement_of(cid),
                               "skipped": True, "ok": False, "records": []})
            nfail += 1
            continue
        records = results[cid]
        ok = all(r["ok"] for r in records)
        entry = {"check": cid, "statement": statement_of(cid),
                 "ok": ok, "records": records}
        if with_timings:
            entry["seconds"] = round(timings[cid], 3)
        checks_out.append(entry)
        if ok:
            npass += 1
        else:
            nfail += 1
    report = {
        "format": "contramod-report/1",
        "seed": seed,
        "manifest_digest": digest_of(manifest),
        "checks": checks_out,
        "summary": {"pass": npass, "fail": nfail, "total": npass + nfail},
    }
    return report
