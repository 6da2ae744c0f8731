"""Prime fields, polynomials over them, and the factorization of f mod p.

The defining polynomial f of the gadget field factors over F_p into
irreducible pieces of degree 1, 2 or 4 (equal degrees for every unramified
prime).  This module provides:

  * PrimeFieldElem / ExtFieldElem -- field arithmetic for F_p and F_p[x]/(g),
  * sqrt_mod_p -- Tonelli-Shanks with a deterministic canonical choice,
  * factor_f_mod_p -- squarefree + distinct-degree + equal-degree splitting,
  * a fast "does f split into 16 distinct linear factors" probe used by the
    split-prime scan.

Polynomials over F_p are coefficient tuples, lowest degree first, with no
trailing zeros (the zero polynomial is the empty tuple).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from .qalpha import F_COEFFS

_EDF_SEED = 0x5EED


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_below(n: int):
    sieve = bytearray([1]) * n if n > 0 else bytearray()
    if n > 0:
        sieve[:2] = b"\x00\x00"
    for i in range(2, int(n ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(sieve[i * i::i]))
    return [i for i in range(n) if i < len(sieve) and sieve[i]]


# ---------------------------------------------------------------------------
# F_p
# ---------------------------------------------------------------------------

class PrimeFieldElem:
    """Residue in [0, p) under a prime modulus."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _lift(self, other):
        if isinstance(other, PrimeFieldElem):
            if other.p != self.p:
                raise ValueError("modulus mismatch")
            return other.value
        if isinstance(other, int):
            return other % self.p
        return None

    def __add__(self, other):
        v = self._lift(other)
        if v is None:
            return NotImplemented
        return PrimeFieldElem(self.value + v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._lift(other)
        if v is None:
            return NotImplemented
        return PrimeFieldElem(self.value - v, self.p)

    def __rsub__(self, other):
        v = self._lift(other)
        if v is None:
            return NotImplemented
        return PrimeFieldElem(v - self.value, self.p)

    def __mul__(self, other):
        v = self._lift(other)
        if v is None:
            return NotImplemented
        return PrimeFieldElem(self.value * v, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return PrimeFieldElem(-self.value, self.p)

    def inverse(self):
        return PrimeFieldElem(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        v = self._lift(other)
        if v is None:
            return NotImplemented
        return PrimeFieldElem(self.value * pow(v, -1, self.p), self.p)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return PrimeFieldElem(pow(self.value, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, PrimeFieldElem):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


def sqrt_mod_p(a, p: int | None = None):
    """Square root mod an odd prime, or None for a non-residue.

    Returns the representative in [0, p/2) so downstream gadget construction
    is deterministic.  Accepts a PrimeFieldElem or an (int, p) pair.
    """
    if isinstance(a, PrimeFieldElem):
        a, p = a.value, a.p
    if p is None or p < 3 or not is_prime(p) or p == 2:
        raise ValueError("p must be an odd prime")
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        # Tonelli-Shanks
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            t2, i = t, 0
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
    return min(r, p - r)


# ---------------------------------------------------------------------------
# Polynomials over F_p as coefficient tuples
# ---------------------------------------------------------------------------

def poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_add(a, b, p):
    n = max(len(a), len(b))
    return poly_trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p
                      for i in range(n)])


def poly_sub(a, b, p):
    n = max(len(a), len(b))
    return poly_trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
                      for i in range(n)])


def poly_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return poly_trim(out)


def poly_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [0] * max(0, len(a) - len(b) + 1)
    inv_lead = pow(b[-1], -1, p)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] % p
        if c:
            c = c * inv_lead % p
            q[i] = c
            for j, bj in enumerate(b):
                a[i + j] = (a[i + j] - c * bj) % p
    return poly_trim(q), poly_trim(a)


def poly_mod(a, b, p):
    return poly_divmod(a, b, p)[1]


def poly_gcd(a, b, p):
    a, b = poly_trim(a), poly_trim(b)
    while b:
        a, b = b, poly_mod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = tuple(c * inv % p for c in a)
    return a


def poly_pow_mod(base, e: int, mod, p):
    result = (1,)
    base = poly_mod(base, mod, p)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, base, p), mod, p)
        base = poly_mod(poly_mul(base, base, p), mod, p)
        e >>= 1
    return result


def poly_deriv(a, p):
    return poly_trim([(i * a[i]) % p for i in range(1, len(a))])


def poly_monic(a, p):
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return tuple(c * inv % p for c in a)


def poly_eval(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


@dataclass(frozen=True)
class PolyOverFp:
    """Canonical polynomial over F_p (no trailing zeros)."""
    coeffs: tuple
    p: int

    def __post_init__(self):
        object.__setattr__(self, "coeffs", poly_trim(tuple(c % self.p for c in self.coeffs)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


# ---------------------------------------------------------------------------
# Factorization of f mod p
# ---------------------------------------------------------------------------

def f_mod_p(p: int):
    return poly_trim(tuple(c % p for c in F_COEFFS))


def _squarefree_decomposition(a, p):
    """Yield (factor, multiplicity) with factors squarefree and pairwise coprime."""
    out = []

    def sff(a, mult):
        a = poly_monic(a, p)
        if len(a) <= 1:
            return
        da = poly_deriv(a, p)
        if not da:
            # a = b(x^p); recurse on b with multiplicity * p
            b = poly_trim([a[i] for i in range(0, len(a), p)])
            sff(b, mult * p)
            return
        c = poly_gcd(a, da, p)
        w = poly_divmod(a, c, p)[0]
        i = 1
        while len(w) > 1:
            y = poly_gcd(w, c, p)
            fac = poly_divmod(w, y, p)[0]
            if len(fac) > 1:
                out.append((poly_monic(fac, p), mult * i))
            w = y
            c = poly_divmod(c, y, p)[0]
            i += 1
        if len(c) > 1:
            sff(c, mult * p)

    sff(a, 1)
    return out


def _equal_degree_split(u, d, p, rng):
    """Cantor-Zassenhaus split of squarefree u into its degree-d irreducible factors."""
    n = len(u) - 1
    if n == d:
        return [u]
    while True:
        h = tuple(rng.randrange(p) for _ in range(n))
        h = poly_trim(h)
        if len(h) < 2:
            continue
        if p == 2:
            # trace map over F_{2^d}
            t = h
            acc = h
            for _ in range(d - 1):
                t = poly_mod(poly_mul(t, t, p), u, p)
                acc = poly_add(acc, t, p)
            g = poly_gcd(acc, u, p)
        else:
            e = (p ** d - 1) // 2
            g = poly_gcd(poly_sub(poly_pow_mod(h, e, u, p), (1,), p), u, p)
        if 0 < len(g) - 1 < n:
            left = _equal_degree_split(g, d, p, rng)
            right = _equal_degree_split(poly_divmod(u, g, p)[0], d, p, rng)
            return left + right


def factor_poly_mod_p(a, p: int):
    """Full factorization over F_p: list of (irreducible tuple, multiplicity)."""
    factors = []
    for sf, mult in _squarefree_decomposition(a, p):
        u = sf
        d = 1
        x = (0, 1)
        frob = poly_mod(x, u, p)
        while len(u) - 1 >= 2 * d:
            frob = poly_pow_mod(frob, p, u, p)
            g = poly_gcd(poly_sub(frob, x, p), u, p)
            if len(g) > 1:
                rng = random.Random((_EDF_SEED, p, d))
                for piece in _equal_degree_split(g, d, p, rng):
                    factors.append((poly_monic(piece, p), mult))
                u = poly_divmod(u, g, p)[0]
                frob = poly_mod(frob, u, p)
            d += 1
        if len(u) > 1:
            factors.append((poly_monic(u, p), mult))
    factors.sort(key=lambda fm: (len(fm[0]), fm[0]))
    return factors


def factor_f_mod_p(p: int):
    """Factor the defining polynomial f over F_p.

    Returns [(PolyOverFp, multiplicity), ...] sorted by degree then
    lexicographically.  p = 2 and p = 3 are legal inputs; downstream
    split-prime logic imposes its own restrictions.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return [(PolyOverFp(c, p), m) for c, m in factor_poly_mod_p(f_mod_p(p), p)]


# Fast path for the split-prime scan: f splits into 16 distinct linear
# factors over F_p iff x^p == x (mod f) and f is squarefree mod p.  The
# second condition can only fail when p divides disc(f), whose prime support
# is {2, 3, 23} (checked once in disc_f_prime_support_is_2_3_23 below).

@lru_cache(maxsize=1)
def _reduction_rows_int():
    # x^(16+i) mod f over Z, i = 0..14
    base = [-c for c in F_COEFFS[:16]]
    rows = [list(base)]
    cur = list(base)
    for _ in range(14):
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(16):
                cur[j] += top * base[j]
        rows.append(list(cur))
    return rows


def splits_completely(p: int) -> bool:
    if p in (2, 3, 23):
        return False
    red = [[v % p for v in row] for row in _reduction_rows_int()]
    f16 = [c % p for c in F_COEFFS]

    def mulmod(a, b):
        out = [0] * 31
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] += ai * bj
        for i in range(30, 15, -1):
            c = out[i] % p
            if c:
                row = red[i - 16]
                for j in range(16):
                    out[j] += c * row[j]
            out[i] = 0
        return [v % p for v in out[:16]]

    # x^p mod f by square-and-multiply
    result = [0] * 16
    result[0] = 1
    base = [0] * 16
    base[1] = 1
    e = p
    while e:
        if e & 1:
            result = mulmod(result, base)
        e >>= 1
        if e:
            base = mulmod(base, base)
    x_poly = [0] * 16
    x_poly[1] = 1
    del f16
    return result == x_poly


def disc_f_prime_support_is_2_3_23() -> bool:
    """One-time certificate that disc(f) has no prime divisors beyond {2, 3, 23}."""
    from fractions import Fraction

    # resultant(f, f') via subresultant-free exact computation: product of
    # f'(root) is awkward without roots, so use the Euclidean resultant over Q.
    def resultant(a, b):
        a = [Fraction(c) for c in a]
        b = [Fraction(c) for c in b]
        res = Fraction(1)

        def deg(q):
            return len(q) - 1

        def trim(q):
            while q and q[-1] == 0:
                q.pop()
            return q

        a, b = trim(a), trim(b)
        while True:
            if not b:
                return Fraction(0)
            if deg(b) == 0:
                return res * b[0] ** deg(a)
            # a = qb + r
            r = list(a)
            while len(r) >= len(b) and trim(r):
                c = r[-1] / b[-1]
                shift = len(r) - len(b)
                for j in range(len(b)):
                    r[j + shift] -= c * b[j]
                r = trim(r)
            if not r:
                return Fraction(0)
            res *= (-1) ** (deg(a) * deg(b)) * b[-1] ** (deg(a) - deg(r))
            a, b = b, r

    f = list(F_COEFFS)
    fp = [i * F_COEFFS[i] for i in range(1, 17)]
    disc = resultant(f, fp)
    d = abs(int(disc))
    for q in (2, 3, 23):
        while d % q == 0:
            d //= q
    return d == 1


# ---------------------------------------------------------------------------
# F_p[x]/(g)
# ---------------------------------------------------------------------------

class ExtFieldElem:
    """Element of F_p[x]/(g) for an irreducible monic g over F_p."""

    __slots__ = ("coeffs", "g", "p")

    def __init__(self, coeffs, g, p):
        g = poly_trim(tuple(c % p for c in g))
        coeffs = poly_mod(poly_trim(tuple(c % p for c in coeffs)), g, p)
        self.coeffs = coeffs
        self.g = g
        self.p = p

    @property
    def field_degree(self) -> int:
        return len(self.g) - 1

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError("element lies outside the prime subfield")
        return self.coeffs[0] if self.coeffs else 0

    def _lift(self, other):
        if isinstance(other, ExtFieldElem):
            if other.p != self.p or other.g != self.g:
                raise ValueError("field mismatch")
            return other.coeffs
        if isinstance(other, int):
            return poly_trim((other % self.p,))
        if isinstance(other, PrimeFieldElem):
            if other.p != self.p:
                raise ValueError("modulus mismatch")
            return poly_trim((other.value,))
        return None

    def __add__(self, other):
        c = self._lift(other)
        if c is None:
            return NotImplemented
        return ExtFieldElem(poly_add(self.coeffs, c, self.p), self.g, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        c = self._lift(other)
        if c is None:
            return NotImplemented
        return ExtFieldElem(poly_sub(self.coeffs, c, self.p), self.g, self.p)

    def __rsub__(self, other):
        c = self._lift(other)
        if c is None:
            return NotImplemented
        return ExtFieldElem(poly_sub(c, self.coeffs, self.p), self.g, self.p)

    def __mul__(self, other):
        c = self._lift(other)
        if c is None:
            return NotImplemented
        return ExtFieldElem(poly_mul(self.coeffs, c, self.p), self.g, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ExtFieldElem(tuple(-c % self.p for c in self.coeffs), self.g, self.p)

    def inverse(self):
        if not self.coeffs:
            raise ZeroDivisionError("inverse of zero")
        # extended Euclid in F_p[x]
        r0, r1 = self.g, self.coeffs
        s0, s1 = (), (1,)
        while r1:
            q, r = poly_divmod(r0, r1, self.p)
            r0, r1 = r1, r
            s0, s1 = s1, poly_sub(s0, poly_mul(q, s1, self.p), self.p)
        inv_c = pow(r0[0], -1, self.p)
        return ExtFieldElem(tuple(c * inv_c % self.p for c in s0), self.g, self.p)

    def __truediv__(self, other):
        c = self._lift(other)
        if c is None:
            return NotImplemented
        return self * ExtFieldElem(c, self.g, self.p).inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return ExtFieldElem(poly_pow_mod(self.coeffs, k, self.g, self.p), self.g, self.p)

    def __eq__(self, other):
        c = self._lift(other)
        if c is None:
            return NotImplemented
        return self.coeffs == c

    def __hash__(self):
        return hash((self.coeffs, self.g, self.p))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"ExtFieldElem({list(self.coeffs)}, g={list(self.g)}, p={self.p})"


def ext_sqrt_via_quadratic(a: int, p: int) -> ExtFieldElem:
    """A square root of a in F_{p^2}, built through x^2 - r for a non-residue r.

    Falls back to the prime field when a is already a residue (returned as a
    constant element of a quadratic extension for interface uniformity).
    """
    if p in (2,):
        raise ValueError("p must be odd")
    a %= p
    r = sqrt_mod_p(a, p)
    # pick a quadratic non-residue to define F_{p^2}
    nr = next(z for z in range(2, p) if pow(z, (p - 1) // 2, p) == p - 1)
    g = (-nr % p, 0, 1)  # x^2 - nr
    if r is not None:
        return ExtFieldElem((r,), g, p)
    # a = nr * (a/nr) with a/nr a residue; sqrt(a) = sqrt(a/nr) * x
    s = sqrt_mod_p(a * pow(nr, -1, p) % p, p)
    return ExtFieldElem((0, s), g, p)
