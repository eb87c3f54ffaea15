"""Small finite groups as multiplication tables, for constant group schemes."""

from __future__ import annotations

import numpy as np

__all__ = [
    "FiniteGroup",
    "cyclic",
    "direct_product",
    "semidirect",
    "symmetric3",
    "klein_four",
]


class FiniteGroup:
    """A finite group given by its multiplication table on 0..n-1."""

    def __init__(self, table, names=None, name="G"):
        self.table = np.asarray(table, dtype=np.int64)
        n = self.table.shape[0]
        if self.table.shape != (n, n):
            raise ValueError("multiplication table must be square")
        self.name = name
        self.names = list(names) if names is not None else [str(i) for i in range(n)]
        self.identity = self._find_identity()
        self.inverse = self._find_inverses()
        self._check_group()

    @property
    def order(self):
        return self.table.shape[0]

    def mul(self, a, b):
        return int(self.table[a, b])

    def _find_identity(self):
        n = self.order
        for e in range(n):
            if all(self.mul(e, g) == g and self.mul(g, e) == g for g in range(n)):
                return e
        raise ValueError("table has no identity element")

    def _find_inverses(self):
        n, e = self.order, self.identity
        inv = np.full(n, -1, dtype=np.int64)
        for g in range(n):
            for h in range(n):
                if self.mul(g, h) == e and self.mul(h, g) == e:
                    inv[g] = h
                    break
            if inv[g] < 0:
                raise ValueError(f"element {g} has no inverse")
        return inv

    def _check_group(self):
        n = self.order
        if self.table.min() < 0 or self.table.max() >= n:
            raise ValueError("table entries out of range")
        t = self.table
        left = t[t, :]  # (a*b)*c indexed [a, b, c]
        right = t[:, t]  # a*(b*c) indexed [a, b, c]
        if not np.array_equal(left, right):
            raise ValueError("table is not associative")

    def element_order(self, g):
        e, k, x = self.identity, 1, g
        while x != e:
            x = self.mul(x, g)
            k += 1
        return k

    def p_regular_count(self, p):
        return sum(1 for g in range(self.order) if self.element_order(g) % p != 0)

    def is_subgroup(self, indices):
        s = set(int(i) for i in indices)
        if self.identity not in s:
            return False
        return all(self.mul(a, b) in s for a in s for b in s)

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


def cyclic(n, name=None):
    table = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    return FiniteGroup(table, name=name or f"Z{n}")


def direct_product(a: FiniteGroup, b: FiniteGroup, name=None):
    na, nb = a.order, b.order
    table = np.zeros((na * nb, na * nb), dtype=np.int64)
    for i in range(na):
        for j in range(nb):
            for k in range(na):
                for l in range(nb):
                    table[i * nb + j, k * nb + l] = a.mul(i, k) * nb + b.mul(j, l)
    return FiniteGroup(table, name=name or f"{a.name}x{b.name}")


def semidirect(n_grp: FiniteGroup, k_grp: FiniteGroup, action, name=None):
    """N x| K with K acting on N; elements are pairs (n, k), n-major.

    ``action[k][n]`` is the image of n under the automorphism attached to k.
    Multiplication: (n1, k1)(n2, k2) = (n1 * action[k1](n2), k1 k2).
    """
    act = np.asarray(action, dtype=np.int64)
    nn, nk = n_grp.order, k_grp.order
    if act.shape != (nk, nn):
        raise ValueError("action table must be (|K|, |N|)")
    size = nn * nk
    table = np.zeros((size, size), dtype=np.int64)
    for n1 in range(nn):
        for k1 in range(nk):
            for n2 in range(nn):
                for k2 in range(nk):
                    n3 = n_grp.mul(n1, int(act[k1, n2]))
                    k3 = k_grp.mul(k1, k2)
                    table[n1 * nk + k1, n2 * nk + k2] = n3 * nk + k3
    return FiniteGroup(table, name=name or f"{n_grp.name}x|{k_grp.name}")


def symmetric3():
    """S_3 presented as Z3 x| Z2 with the inversion action."""
    z3, z2 = cyclic(3), cyclic(2)
    action = [[0, 1, 2], [0, 2, 1]]
    return semidirect(z3, z2, action, name="S3")


def klein_four():
    return direct_product(cyclic(2), cyclic(2), name="Z2xZ2")
