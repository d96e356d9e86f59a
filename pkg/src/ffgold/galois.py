"""Small finite-field toolkit: F_p[x] arithmetic and explicit F_{p^m} models.

Polynomials over F_p are tuples of ints in [0, p), coefficients ordered
low-to-high, with no trailing zeros (the zero polynomial is the empty tuple).
Extension fields are realised as F_p[x]/(m(x)) where m is the
lexicographically smallest monic irreducible of the requested degree
(coefficients compared low-to-high as integer tuples), which makes every
enumeration in the library reproducible across runs.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .errors import BudgetExceeded


def is_prime(n: int) -> bool:
    """Deterministic primality test by trial division (desk-scale inputs)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# -- F_p[x] on coefficient tuples -------------------------------------------

def trim(c):
    i = len(c)
    while i and c[i - 1] == 0:
        i -= 1
    return tuple(c[:i])


def poly_add(a, b, p):
    n = max(len(a), len(b))
    a = tuple(a) + (0,) * (n - len(a))
    b = tuple(b) + (0,) * (n - len(b))
    return trim([(x + y) % p for x, y in zip(a, b)])


def poly_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return trim(out)


def poly_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    inv_lb = pow(lb, p - 2, p) if p > 2 else lb
    q = [0] * max(len(a) - db, 0)
    while len(trim(a)) - 1 >= db and a:
        a = list(trim(a))
        if len(a) - 1 < db:
            break
        shift = len(a) - 1 - db
        coef = (a[-1] * inv_lb) % p
        q[shift] = coef
        for j, y in enumerate(b):
            a[shift + j] = (a[shift + j] - coef * y) % p
    return trim(q), trim(a)


def poly_mod(a, b, p):
    return poly_divmod(a, b, p)[1]


def poly_gcd(a, b, p):
    while b:
        a, b = b, poly_mod(a, b, p)
    if a:
        # make monic
        inv = pow(a[-1], p - 2, p) if p > 2 else a[-1]
        a = trim([(c * inv) % p for c in a])
    return a


def poly_powmod(base, e: int, mod, p):
    result = (1,)
    base = poly_mod(base, mod, p)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, base, p), mod, p)
        base = poly_mod(poly_mul(base, base, p), mod, p)
        e >>= 1
    return result


def is_irreducible_fp(f, p: int) -> bool:
    """Rabin irreducibility test for a monic polynomial over F_p."""
    n = len(f) - 1
    if n <= 0:
        return False
    x = (0, 1)
    # x^(p^n) == x (mod f)
    if poly_powmod(x, p ** n, f, p) != poly_mod(x, f, p):
        return False
    for ell in {d for d in range(2, n + 1) if n % d == 0 and is_prime(d)}:
        h = poly_add(poly_powmod(x, p ** (n // ell), f, p), tuple(-c % p for c in x), p)
        if poly_gcd(h, f, p) != (1,):
            return False
    return True


@lru_cache(maxsize=None)
def min_irreducible(p: int, n: int):
    """Lexicographically smallest monic irreducible of degree n over F_p."""
    if n == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=n):
        f = tuple(low) + (1,)
        if is_irreducible_fp(f, p):
            return f
    raise RuntimeError(f"no irreducible of degree {n} over F_{p}")  # unreachable


# -- explicit extension fields ----------------------------------------------

class ExtField:
    """F_{p^m} as F_p[x]/(m(x)), elements encoded as coefficient tuples.

    Only used by the brute-force oracles; the analytic path never touches it.
    """

    def __init__(self, p: int, m: int, budget: int = 10 ** 6):
        if p ** m > budget:
            raise BudgetExceeded(f"field F_{{{p}^{m}}} exceeds enumeration budget")
        self.p = p
        self.m = m
        self.size = p ** m
        self.modulus = min_irreducible(p, m)
        self.zero = ()
        self.one = (1,)

    def elements(self):
        for low in itertools.product(range(self.p), repeat=self.m):
            yield trim(low)

    def add(self, a, b):
        return poly_add(a, b, self.p)

    def sub(self, a, b):
        return poly_add(a, tuple(-c % self.p for c in b), self.p)

    def mul(self, a, b):
        return poly_mod(poly_mul(a, b, self.p), self.modulus, self.p)

    def neg(self, a):
        return tuple(-c % self.p for c in a)

    def pow(self, a, e: int):
        if not a:
            return () if e else (1,)
        return poly_powmod(a, e, self.modulus, self.p)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero field element")
        return self.pow(a, self.size - 2)

    def embed(self, c: int):
        """Embed an integer via the prime subfield."""
        return trim((c % self.p,))

    def is_square(self, a) -> bool:
        """Quadratic-residue test; odd characteristic only."""
        if not a:
            return True
        return self.pow(a, (self.size - 1) // 2) == (1,)

    def trace_to_f2(self, a) -> int:
        """Absolute trace down to F_2 (characteristic 2 only)."""
        assert self.p == 2
        t = self.zero
        z = a
        for _ in range(self.m):
            t = self.add(t, z)
            z = self.mul(z, z)
        assert t in ((), (1,))
        return 1 if t else 0
