"""Univariate polynomial arithmetic over F_p, coefficients ascending in degree."""

from __future__ import annotations

import numpy as np

__all__ = [
    "trim",
    "add",
    "mul",
    "divmod_poly",
    "mod_poly",
    "gcd",
    "egcd",
    "powmod",
    "evaluate",
    "monic",
    "degree",
    "x_power",
]


def trim(a) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    nz = np.nonzero(a)[0]
    if nz.size == 0:
        return np.zeros(1, dtype=np.int64)
    return a[: nz[-1] + 1].copy()


def degree(a) -> int:
    a = trim(a)
    return -1 if (a.size == 1 and a[0] == 0) else a.size - 1


def _arr(a):
    return np.asarray(a, dtype=np.int64)


def add(a, b, p):
    a, b = trim(_arr(a) % p), trim(_arr(b) % p)
    n = max(a.size, b.size)
    out = np.zeros(n, dtype=np.int64)
    out[: a.size] += a
    out[: b.size] += b
    return trim(out % p)


def mul(a, b, p):
    a, b = trim(_arr(a) % p), trim(_arr(b) % p)
    if degree(a) < 0 or degree(b) < 0:
        return np.zeros(1, dtype=np.int64)
    return trim(np.convolve(a, b) % p)


def monic(a, p):
    a = trim(_arr(a) % p)
    if degree(a) < 0:
        return a
    inv = pow(int(a[-1]), p - 2, p)
    return a * inv % p


def divmod_poly(a, b, p):
    a, b = trim(_arr(a) % p), trim(_arr(b) % p)
    if degree(b) < 0:
        raise ZeroDivisionError("polynomial division by zero")
    q = np.zeros(max(a.size - b.size + 1, 1), dtype=np.int64)
    r = a.copy()
    inv = pow(int(b[-1]), p - 2, p)
    while degree(r) >= degree(b):
        shift = degree(r) - degree(b)
        c = r[degree(r)] * inv % p
        q[shift] = c
        r[shift : shift + b.size] = (r[shift : shift + b.size] - c * b) % p
        r = trim(r)
    return trim(q), trim(r)


def mod_poly(a, b, p):
    return divmod_poly(a, b, p)[1]


def gcd(a, b, p):
    a, b = trim(_arr(a) % p), trim(_arr(b) % p)
    while degree(b) >= 0:
        a, b = b, mod_poly(a, b, p)
    return monic(a, p)


def egcd(a, b, p):
    """(g, u, v) with u*a + v*b = g = monic gcd."""
    r0, r1 = trim(_arr(a) % p), trim(_arr(b) % p)
    s0, s1 = np.array([1], dtype=np.int64), np.zeros(1, dtype=np.int64)
    t0, t1 = np.zeros(1, dtype=np.int64), np.array([1], dtype=np.int64)
    while degree(r1) >= 0:
        q, r = divmod_poly(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, add(s0, mul(np.array([p - 1]), mul(q, s1, p), p), p)
        t0, t1 = t1, add(t0, mul(np.array([p - 1]), mul(q, t1, p), p), p)
    if degree(r0) >= 0:
        c = pow(int(r0[-1]), p - 2, p)
        r0, s0, t0 = r0 * c % p, s0 * c % p, t0 * c % p
    return trim(r0), trim(s0), trim(t0)


def powmod(base, e, modulus, p):
    result = np.array([1], dtype=np.int64)
    base = mod_poly(base, modulus, p)
    while e > 0:
        if e & 1:
            result = mod_poly(mul(result, base, p), modulus, p)
        base = mod_poly(mul(base, base, p), modulus, p)
        e >>= 1
    return result


def evaluate(a, x, p) -> int:
    acc = 0
    for c in reversed(trim(_arr(a) % p)):
        acc = (acc * x + int(c)) % p
    return acc


def x_power(k) -> np.ndarray:
    out = np.zeros(k + 1, dtype=np.int64)
    out[k] = 1
    return out
