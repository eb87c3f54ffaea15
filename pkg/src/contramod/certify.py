"""Machine-checkable certificates attached to every boolean verdict."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

import numpy as np

__all__ = ["Check", "Certificate", "ValidationError", "canonical_json", "digest_of"]


class ValidationError(Exception):
    """Raised when a required certificate has failing checks."""


def _plain(value):
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def canonical_json(obj) -> str:
    return json.dumps(_plain(obj), sort_keys=True, separators=(",", ":"))


def digest_of(obj) -> str:
    return hashlib.sha256(canonical_json(obj).encode()).hexdigest()


@dataclass
class Check:
    label: str
    ok: bool
    data: dict = field(default_factory=dict)


class Certificate:
    """An ordered list of named exact checks plus optional witness data."""

    def __init__(self, name: str, checks=None, witness=None):
        self.name = name
        self.checks = list(checks or [])
        self.witness = dict(witness or {})

    def add(self, label: str, ok, **data) -> "Certificate":
        self.checks.append(Check(label, bool(ok), data))
        return self

    @property
    def ok(self) -> bool:
        return bool(self.checks) and all(c.ok for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.ok]

    def require(self) -> "Certificate":
        if not self.ok:
            bad = ", ".join(c.label for c in self.failures()) or "no checks recorded"
            raise ValidationError(f"{self.name}: failed {bad}")
        return self

    def summary(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "checks": [
                {"label": c.label, "ok": c.ok, "data": _plain(c.data)} for c in self.checks
            ],
        }

    def digest(self) -> str:
        return digest_of(self.summary())

    def __repr__(self):
        state = "ok" if self.ok else "FAILED"
        return f"Certificate({self.name}: {state}, {len(self.checks)} checks)"
