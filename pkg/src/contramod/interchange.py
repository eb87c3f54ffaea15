"""JSON interchange for Hopf algebra documents and attached (co/contra)modules.

A document carries one root algebra (char, dim, basis labels, sparse
structure tensors, optional frobenius), optional auxiliary algebras,
morphisms as dense matrices with source/target names, and arrays of
comodules and contramodules referencing their algebra by name.  Encoding is
canonical (sorted keys, sorted sparse triples) so documents are hash-stable
under round trips.
"""

from __future__ import annotations

import hashlib
import json

import numpy as np

from .certify import ValidationError
from .comodcontra import Comodule, Contramodule
from .exactlin import LinearMap
from .hopf import (
    CoalgebraMorphism,
    CoalgebraSpec,
    GroupSchemeDescriptor,
    HopfAlgebraSpec,
)

__all__ = [
    "InputError",
    "Bundle",
    "encode_document",
    "decode_document",
    "canonical_dumps",
    "document_digest",
    "load_path",
    "dump_path",
]

FORMAT = "contramod/1"


class InputError(Exception):
    """Malformed document: wrong shapes, unknown references, bad JSON."""


def _sparse(mat: np.ndarray):
    rows, cols = np.nonzero(mat)
    triples = [[int(r), int(c), int(mat[r, c])] for r, c in zip(rows, cols)]
    triples.sort()
    return triples


def _dense_from_sparse(triples, shape, what):
    mat = np.zeros(shape, dtype=np.int64)
    try:
        for r, c, v in triples:
            if not (0 <= r < shape[0] and 0 <= c < shape[1]):
                raise InputError(f"{what}: entry ({r},{c}) outside shape {shape}")
            mat[r, c] = int(v)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{what}: malformed sparse triples: {exc}") from None
    return mat


def _encode_algebra(desc) -> dict:
    if isinstance(desc, GroupSchemeDescriptor):
        hopf, fro, kind = desc.hopf, desc.frobenius, desc.kind
        name = desc.name
    elif isinstance(desc, HopfAlgebraSpec):
        hopf, fro, kind = desc, None, None
        name = desc.name
    else:
        raise InputError("can only encode Hopf algebras or group scheme descriptors")
    n = hopf.dim
    doc = {
        "name": name,
        "char": hopf.p,
        "dim": n,
        "basis_labels": [f"b{i}" for i in range(n)],
        "comul": _sparse(hopf.comul.mat),
        "mul": _sparse(hopf.mul.mat),
        "counit": _sparse(hopf.counit.mat),
        "unit": _sparse(hopf.unit.mat),
        "antipode": _sparse(hopf.antipode.mat),
    }
    if fro is not None:
        doc["frobenius"] = _sparse(fro.mat)
    if kind is not None:
        doc["kind"] = kind
    return doc


def encode_document(root, auxiliary=(), morphisms=(), comodules=(), contramodules=()) -> dict:
    doc = {"format": FORMAT}
    doc.update(_encode_algebra(root))
    if auxiliary:
        doc["auxiliary"] = [_encode_algebra(a) for a in auxiliary]
    if morphisms:
        doc["morphisms"] = [
            {
                "name": m.name,
                "source": m.source.name,
                "target": m.target.name,
                "matrix": m.map.mat.tolist(),
            }
            for m in morphisms
        ]
    if comodules:
        doc["comodules"] = [
            {
                "name": m.name,
                "over": m.over.name,
                "side": m.side,
                "dim": m.dim,
                "coaction": _sparse(m.coaction.mat),
            }
            for m in comodules
        ]
    if contramodules:
        doc["contramodules"] = [
            {
                "name": b.name,
                "over": b.over.name,
                "dim": b.dim,
                "contra_action": _sparse(b.theta.mat),
            }
            for b in contramodules
        ]
    return doc


class Bundle:
    """Decoded document: named schemes, morphisms and modules."""

    def __init__(self, schemes, morphisms, comodules, contramodules, document):
        self.schemes = schemes
        self.morphisms = morphisms
        self.comodules = comodules
        self.contramodules = contramodules
        self.document = document

    @property
    def root(self):
        return self.schemes[self.document["name"]]


def _decode_algebra(entry, p) -> GroupSchemeDescriptor:
    try:
        name = entry["name"]
        dim = int(entry["dim"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"algebra entry missing name/dim: {exc}") from None
    if dim < 1:
        raise InputError(f"{name}: dimension must be positive")
    comul = _dense_from_sparse(entry.get("comul", []), (dim * dim, dim), f"{name}.comul")
    counit = _dense_from_sparse(entry.get("counit", []), (1, dim), f"{name}.counit")
    mul = _dense_from_sparse(entry.get("mul", []), (dim, dim * dim), f"{name}.mul")
    unit = _dense_from_sparse(entry.get("unit", []), (dim, 1), f"{name}.unit")
    antipode = _dense_from_sparse(entry.get("antipode", []), (dim, dim), f"{name}.antipode")
    coalg = CoalgebraSpec(p, dim, LinearMap(p, comul), LinearMap(p, counit), name=name)
    hopf = HopfAlgebraSpec(coalg, LinearMap(p, mul), LinearMap(p, unit),
                           LinearMap(p, antipode), name=name)
    if "frobenius" in entry and entry["frobenius"] is not None:
        fro = LinearMap(p, _dense_from_sparse(entry["frobenius"], (dim, dim),
                                              f"{name}.frobenius"))
    else:
        fro = LinearMap.identity(p, dim)
    return GroupSchemeDescriptor(name, hopf, fro, kind=entry.get("kind", "document"))


def decode_document(doc) -> Bundle:
    if not isinstance(doc, dict):
        raise InputError("document must be a JSON object")
    if doc.get("format") != FORMAT:
        raise InputError(f"unsupported format {doc.get('format')!r}")
    try:
        p = int(doc["char"])
    except (KeyError, TypeError, ValueError):
        raise InputError("document missing integer 'char'") from None
    if p < 2:
        raise InputError("characteristic must be a prime")
    schemes = {}
    root = _decode_algebra(doc, p)
    schemes[root.name] = root
    for entry in doc.get("auxiliary", []):
        aux = _decode_algebra(entry, p)
        if aux.name in schemes:
            raise InputError(f"duplicate algebra name {aux.name!r}")
        schemes[aux.name] = aux
    morphisms = {}
    for entry in doc.get("morphisms", []):
        try:
            src = schemes[entry["source"]]
            tgt = schemes[entry["target"]]
            mat = np.asarray(entry["matrix"], dtype=np.int64)
        except KeyError as exc:
            raise InputError(f"morphism references unknown algebra {exc}") from None
        except (TypeError, ValueError) as exc:
            raise InputError(f"morphism matrix malformed: {exc}") from None
        if mat.shape != (tgt.dim, src.dim):
            raise InputError(
                f"morphism {entry.get('name')!r}: matrix shape {mat.shape} "
                f"does not match ({tgt.dim},{src.dim})")
        morphisms[entry.get("name", f"m{len(morphisms)}")] = CoalgebraMorphism(
            src.coalgebra, tgt.coalgebra, LinearMap(p, mat), name=entry.get("name", "pi"))
    comodules = {}
    for entry in doc.get("comodules", []):
        over = schemes.get(entry.get("over"))
        if over is None:
            raise InputError(f"comodule over unknown algebra {entry.get('over')!r}")
        dim = int(entry["dim"])
        side = entry.get("side", "right")
        coact = _dense_from_sparse(entry.get("coaction", []), (dim * over.dim, dim),
                                   f"{entry.get('name')}.coaction")
        comodules[entry["name"]] = Comodule(over.coalgebra, side, dim,
                                            LinearMap(p, coact), name=entry["name"])
    contramodules = {}
    for entry in doc.get("contramodules", []):
        over = schemes.get(entry.get("over"))
        if over is None:
            raise InputError(f"contramodule over unknown algebra {entry.get('over')!r}")
        dim = int(entry["dim"])
        theta = _dense_from_sparse(entry.get("contra_action", []), (dim, over.dim * dim),
                                   f"{entry.get('name')}.contra_action")
        contramodules[entry["name"]] = Contramodule(over.coalgebra, dim,
                                                    LinearMap(p, theta), name=entry["name"])
    return Bundle(schemes, morphisms, comodules, contramodules, doc)


def canonical_dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def document_digest(doc) -> str:
    return hashlib.sha256(canonical_dumps(doc).encode()).hexdigest()


def load_path(path) -> Bundle:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from None
    return decode_document(doc)


def dump_path(path, doc):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(canonical_dumps(doc))
