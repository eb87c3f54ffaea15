import numpy as np
from hypothesis import given, settings, strategies as st

from contramod import fppoly as fp

PRIMES = (2, 3, 5)


def rand_poly(rng, p, maxdeg):
    return rng.integers(0, p, size=rng.integers(1, maxdeg + 2))


@settings(deadline=None, max_examples=60)
@given(st.sampled_from(PRIMES), st.integers(0, 10**6))
def test_divmod_reconstructs(p, seed):
    rng = np.random.default_rng(seed)
    a = rand_poly(rng, p, 6)
    b = rand_poly(rng, p, 4)
    if fp.degree(b) < 0:
        return
    q, r = fp.divmod_poly(a, b, p)
    back = fp.add(fp.mul(q, b, p), r, p)
    assert np.array_equal(back, fp.trim(a % p))
    assert fp.degree(r) < fp.degree(b)


@settings(deadline=None, max_examples=60)
@given(st.sampled_from(PRIMES), st.integers(0, 10**6))
def test_egcd_bezout(p, seed):
    rng = np.random.default_rng(seed)
    a, b = rand_poly(rng, p, 5), rand_poly(rng, p, 5)
    g, u, v = fp.egcd(a, b, p)
    combo = fp.add(fp.mul(u, a, p), fp.mul(v, b, p), p)
    assert np.array_equal(combo, g)
    if fp.degree(a) >= 0:
        assert fp.degree(fp.mod_poly(a, g, p)) < 0 or fp.degree(g) < 0


def test_gcd_of_coprime_is_one():
    g = fp.gcd([1, 1], [1, 0, 1], 3)  # x+1 and x^2+1 are coprime mod 3
    assert np.array_equal(g, np.array([1]))


def test_powmod():
    # x^4 mod x^2+x over F_2 is x (since x^2 = x)
    out = fp.powmod([0, 1], 4, [0, 1, 1], 2)
    assert np.array_equal(out, np.array([0, 1]))


def test_evaluate():
    assert fp.evaluate([1, 2, 1], 2, 5) == (1 + 4 + 4) % 5
