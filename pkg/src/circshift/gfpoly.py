"""Polynomials over GF(2) and the field GF(2^m_L) holding a primitive L-th root of unity.

Polynomials over GF(2) are plain nonnegative integers: bit i is the
coefficient of x^i, so the zero polynomial is 0.  Field elements are integers
below 2^m_L holding coordinates in the basis 1, alpha, ..., alpha^(m_L - 1),
where alpha is the residue class of x modulo the context modulus.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import gcd


def degree(a: int) -> int:
    """Degree of a; -1 for the zero polynomial."""
    return a.bit_length() - 1


def poly_mul(a: int, b: int) -> int:
    if a < b:
        a, b = b, a
    c = 0
    while b:
        if b & 1:
            c ^= a
        a <<= 1
        b >>= 1
    return c


def poly_divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("division by zero polynomial")
    db = degree(b)
    q = 0
    while degree(a) >= db:
        s = degree(a) - db
        q ^= 1 << s
        a ^= b << s
    return q, a


def poly_mod(a: int, b: int) -> int:
    return poly_divmod(a, b)[1]


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def poly_mulmod(a: int, b: int, m: int) -> int:
    return poly_mod(poly_mul(a, b), m)


def poly_powmod(a: int, n: int, m: int) -> int:
    result = 1
    a = poly_mod(a, m)
    while n:
        if n & 1:
            result = poly_mulmod(result, a, m)
        a = poly_mulmod(a, a, m)
        n >>= 1
    return poly_mod(result, m)


def is_irreducible(f: int) -> bool:
    """Distinct-degree test: gcd(f, x^(2^i) - x) = 1 for 1 <= i <= deg(f)/2."""
    n = degree(f)
    if n < 1:
        return False
    if n == 1:
        return True
    x_pow = 2  # x
    for _ in range(n // 2):
        x_pow = poly_mulmod(x_pow, x_pow, f)
        if poly_gcd(f, x_pow ^ 2) != 1:
            return False
    return True


def cyclic_reduce(a: int, L: int) -> int:
    """Reduce a modulo x^L + 1 by folding exponents mod L."""
    mask = (1 << L) - 1
    r = 0
    while a:
        r ^= a & mask
        a >>= L
    return r


def cyclic_mul(a: int, b: int, L: int) -> int:
    """Product of a and b in GF(2)[x]/(x^L + 1)."""
    return cyclic_reduce(poly_mul(a, b), L)


def poly_from_bits(bits: str) -> int:
    """Parse a low-degree-first '0'/'1' string."""
    if any(c not in "01" for c in bits):
        raise ValueError(f"not a bit string: {bits!r}")
    return sum(1 << i for i, c in enumerate(bits) if c == "1")


def poly_to_bits(a: int, width: int | None = None) -> str:
    n = a.bit_length() if width is None else width
    if a.bit_length() > n:
        raise ValueError(f"polynomial does not fit in {n} bits")
    return "".join("1" if (a >> i) & 1 else "0" for i in range(n))


def poly_str(a: int) -> str:
    if a == 0:
        return "0"
    terms = []
    for i in range(degree(a) + 1):
        if (a >> i) & 1:
            terms.append("1" if i == 0 else "x" if i == 1 else f"x^{i}")
    return "+".join(terms)


def _check_block_length(L: int) -> None:
    if isinstance(L, bool) or not isinstance(L, int):
        raise TypeError(f"L must be an int, got {type(L).__name__}")
    if L < 3 or L % 2 == 0:
        raise ValueError(f"L must be an odd integer >= 3, got {L}")


def multiplicative_order_of_two(L: int) -> int:
    _check_block_length(L)
    m, r = 1, 2 % L
    while r != 1:
        r = (2 * r) % L
        m += 1
    return m


def prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError(f"euler_phi needs n >= 1, got {n}")
    result = n
    for p in prime_factors(n):
        result -= result // p
    return result


def cyclotomic_cosets(L: int) -> list[tuple[int, ...]]:
    """Doubling orbits mod L, each starting at its smallest member, sorted by it."""
    _check_block_length(L)
    seen = [False] * L
    cosets = []
    for j in range(L):
        if seen[j]:
            continue
        orbit = []
        k = j
        while not seen[k]:
            seen[k] = True
            orbit.append(k)
            k = (2 * k) % L
        cosets.append(tuple(orbit))
    return cosets


def cyclotomic_polynomial(n: int) -> int:
    """Q_n(x) over GF(2), by dividing x^n + 1 by Q_d for every proper divisor d."""
    q = (1 << n) | 1
    for d in range(1, n):
        if n % d == 0:
            q, r = poly_divmod(q, cyclotomic_polynomial(d))
            assert r == 0
    return q


class _Field:
    """Bare GF(2)[x]/(modulus) arithmetic used while searching for the modulus."""

    def __init__(self, modulus: int):
        self.modulus = modulus
        self.m = degree(modulus)

    def mul(self, a: int, b: int) -> int:
        m, mod = self.m, self.modulus
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if (a >> m) & 1:
                a ^= mod
        return r

    def pow(self, a: int, n: int) -> int:
        r = 1
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r


def _has_order(F: _Field, beta: int, L: int, primes: list[int]) -> bool:
    return F.pow(beta, L) == 1 and all(F.pow(beta, L // p) != 1 for p in primes)


def _minimal_poly(F: _Field, beta: int, exponents) -> int:
    """Product of (X + beta^k) over the exponent orbit; must land in GF(2)[X]."""
    coeffs = [1]  # low-to-high, entries in F
    for k in exponents:
        root = F.pow(beta, k)
        nxt = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] ^= c
            nxt[i] ^= F.mul(c, root)
        coeffs = nxt
    if any(c not in (0, 1) for c in coeffs):
        raise ArithmeticError("minimal polynomial has coefficients outside GF(2)")
    return sum(c << i for i, c in enumerate(coeffs))


@dataclass(frozen=True)
class FieldContext:
    """Everything derived from an odd block length L.

    Elements are ints below ``2**m``; ``alpha`` is always ``2`` (the class of x),
    which has multiplicative order exactly L modulo ``modulus``.
    """

    L: int
    m: int
    phi: int
    modulus: int
    cosets: tuple[tuple[int, ...], ...]
    R: tuple[int, ...]
    alpha_pows: tuple[int, ...] = field(repr=False)

    alpha = 2

    @property
    def reps(self) -> tuple[int, ...]:
        return tuple(c[0] for c in self.cosets)

    @cached_property
    def R_cosets(self) -> tuple[tuple[int, ...], ...]:
        """Cosets contained in R, i.e. those whose members are coprime to L."""
        return tuple(c for c in self.cosets if gcd(c[0], self.L) == 1)

    @property
    def R_reps(self) -> tuple[int, ...]:
        return tuple(c[0] for c in self.R_cosets)

    @cached_property
    def coset_of(self) -> tuple[int, ...]:
        """Index into ``cosets`` for every j in 0..L-1."""
        idx = [0] * self.L
        for n, c in enumerate(self.cosets):
            for j in c:
                idx[j] = n
        return tuple(idx)

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        m, mod = self.m, self.modulus
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if (a >> m) & 1:
                a ^= mod
        return r

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(a), -n)
        r = 1
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(2^m)")
        # extended Euclid in GF(2)[x]
        r0, r1 = self.modulus, a
        s0, s1 = 0, 1
        while r1 != 1:
            q, r = poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 ^ poly_mul(q, s1)
        return poly_mod(s1, self.modulus)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def frobenius(self, a: int, j: int = 1) -> int:
        """a^(2^j); the identity once j is a multiple of m."""
        for _ in range(j % self.m):
            a = self.mul(a, a)
        return a

    def alpha_pow(self, k: int) -> int:
        return self.alpha_pows[k % self.L]

    def eval_at_alpha_power(self, k: int, j: int) -> int:
        """k(alpha^j) for a GF(2) polynomial k, reduced mod x^L + 1 first."""
        k = cyclic_reduce(k, self.L)
        L, pows = self.L, self.alpha_pows
        r = 0
        i = 0
        while k:
            if k & 1:
                r ^= pows[(i * j) % L]
            k >>= 1
            i += 1
        return r

    def minimal_polynomial(self, coset) -> int:
        """Minimal polynomial over GF(2) of alpha^c for c in a cyclotomic coset."""
        return _minimal_poly(_Field(self.modulus), self.alpha, coset)

    def element_str(self, a: int) -> str:
        if a == 0:
            return "0"
        for k, p in enumerate(self.alpha_pows):
            if p == a:
                return "1" if k == 0 else f"a^{k}"
        return poly_str(a).replace("x", "a")


def build_field(L: int) -> FieldContext:
    """Pin GF(2^m_L) by the smallest qualifying modulus.

    Candidates are the irreducible factors of Q_L(x), i.e. minimal polynomials
    of primitive L-th roots; they are found in an auxiliary representation of
    GF(2^m_L) and the smallest (as an integer with bit i = coefficient of x^i)
    is kept, so x itself has order exactly L modulo the result.
    """
    m = multiplicative_order_of_two(L)
    phi = euler_phi(L)
    cosets = cyclotomic_cosets(L)
    primes = prime_factors(L)

    aux = next(f for f in range((1 << m) | 1, 1 << (m + 1), 2) if is_irreducible(f))
    F = _Field(aux)
    cofactor = ((1 << m) - 1) // L
    beta = next(
        b for g in range(2, 1 << m) if _has_order(F, b := F.pow(g, cofactor), L, primes)
    )
    R_cosets = [c for c in cosets if gcd(c[0], L) == 1]
    modulus = min(_minimal_poly(F, beta, c) for c in R_cosets)

    ctx_field = _Field(modulus)
    pows = [1]
    for _ in range(L - 1):
        pows.append(ctx_field.mul(pows[-1], 2))
    R = tuple(r for r in range(1, L) if gcd(r, L) == 1)
    return FieldContext(L=L, m=m, phi=phi, modulus=modulus, cosets=tuple(cosets),
                        R=R, alpha_pows=tuple(pows))
