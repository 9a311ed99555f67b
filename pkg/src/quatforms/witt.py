"""Truncated Witt vectors W_k(F_{p^2}) as (Z/p^k)[t]/(m~).

The modulus m~ lifts the canonical defining polynomial of F_{p^2}
coefficientwise; the Frobenius lift sigma sends t to the Hensel lift of
t^p, computed once per (p, k) and cached.  Reduction mod p is a ring
surjection onto F_{p^2} commuting with sigma / Frobenius.
"""

from __future__ import annotations

import functools

from .fields import GF, FFElem, defining_polynomial, is_prime


class WittElem:
    """Element c0 + c1*t of W_k(F_{p^2}); c_i reduced mod p^k."""

    __slots__ = ("ring", "c")

    def __init__(self, ring: "WittRing", c: tuple[int, int]):
        self.ring = ring
        self.c = c

    def __add__(self, other):
        r = self.ring
        self._check(other)
        return WittElem(r, ((self.c[0] + other.c[0]) % r.modulus,
                            (self.c[1] + other.c[1]) % r.modulus))

    def __sub__(self, other):
        r = self.ring
        self._check(other)
        return WittElem(r, ((self.c[0] - other.c[0]) % r.modulus,
                            (self.c[1] - other.c[1]) % r.modulus))

    def __neg__(self):
        r = self.ring
        return WittElem(r, (-self.c[0] % r.modulus, -self.c[1] % r.modulus))

    def __mul__(self, other):
        r = self.ring
        if isinstance(other, int):
            return WittElem(r, (self.c[0] * other % r.modulus, self.c[1] * other % r.modulus))
        self._check(other)
        return WittElem(r, r._mul(self.c, other.c))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = self.ring.one()
        base = self
        if e < 0:
            base = self.inv()
            e = -e
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inv(self) -> "WittElem":
        """Newton lift of the residue inverse; requires a unit (nonzero mod p)."""
        r = self.ring
        res = self.reduce()
        if res.is_zero():
            raise ZeroDivisionError("inversion of a non-unit Witt vector")
        vres = res.inv()
        v = WittElem(r, (vres.c[0], vres.c[1]))
        two = r.one() + r.one()
        for _ in range(max(1, r.k.bit_length() + 1)):
            v = v * (two - self * v)
        return v

    def sigma(self) -> "WittElem":
        """The involutive Frobenius lift."""
        r = self.ring
        s = r.sigma_t
        # c0 + c1 * sigma(t)
        return WittElem(r, ((self.c[0] + self.c[1] * s.c[0]) % r.modulus,
                            self.c[1] * s.c[1] % r.modulus))

    def reduce(self) -> FFElem:
        """Reduction modulo p onto F_{p^2}."""
        r = self.ring
        return r.residue.elem([self.c[0], self.c[1]])

    def is_zero(self) -> bool:
        return self.c == (0, 0)

    def _check(self, other):
        if self.ring is not other.ring:
            raise ValueError("Witt ring mismatch")

    def __eq__(self, other):
        return isinstance(other, WittElem) and self.ring is other.ring and self.c == other.c

    def __hash__(self):
        return hash((id(self.ring), self.c))

    def __repr__(self):
        return f"W({self.ring.p},{self.ring.k}){list(self.c)}"


class WittRing:
    """W_k(F_{p^2}) with precision k >= 1."""

    def __init__(self, p: int, k: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("precision must be >= 1")
        self.p = p
        self.k = k
        self.modulus = p ** k
        self.residue = GF(p, 2)
        m = defining_polynomial(p, 2)
        # t^2 = r0 + r1 t with integer lifts, fixed for all precisions
        self._red = (-m[0] % self.modulus, -m[1] % self.modulus)
        self.sigma_t = self._hensel_sigma()
        st = self.sigma_t.sigma()
        if st != self.gen():
            raise RuntimeError("sigma is not an involution")

    def zero(self) -> WittElem:
        return WittElem(self, (0, 0))

    def one(self) -> WittElem:
        return WittElem(self, (1, 0))

    def gen(self) -> WittElem:
        return WittElem(self, (0, 1))

    def elem(self, c0: int, c1: int = 0) -> WittElem:
        return WittElem(self, (c0 % self.modulus, c1 % self.modulus))

    def from_int(self, n: int) -> WittElem:
        return self.elem(n)

    def _mul(self, a, b):
        m = self.modulus
        r0, r1 = self._red
        t = a[1] * b[1]
        return ((a[0] * b[0] + r0 * t) % m, (a[0] * b[1] + a[1] * b[0] + r1 * t) % m)

    def _hensel_sigma(self) -> WittElem:
        """Root of the modulus lifting t^p, by Newton iteration."""
        p, m = self.p, self.modulus
        # seed: t^p in the residue field
        seed = self.residue.gen() ** p
        r = WittElem(self, (seed.c[0], seed.c[1]))
        # f(X) = X^2 - r1 X - r0, f'(X) = 2X - r1
        r0, r1 = self._red
        for _ in range(max(1, self.k.bit_length() + 1)):
            fx = r * r - r * r1 - self.elem(r0)
            dfx = r * 2 - self.elem(r1)
            r = r - fx * dfx.inv()
        if not (r * r - r * r1 - self.elem(r0)).is_zero():
            raise RuntimeError("Hensel lift of Frobenius failed")
        return r

    def teichmuller_section(self, a: FFElem) -> WittElem:
        """Coefficientwise lift (a set-theoretic section, not multiplicative)."""
        return WittElem(self, (a.c[0], a.c[1]))

    def teichmuller(self, a: FFElem) -> WittElem:
        """The multiplicative (Teichmuller) lift of a."""
        if a.field is not self.residue:
            raise ValueError("element not in the residue field")
        x = self.teichmuller_section(a)
        q = self.p ** 2
        for _ in range(self.k + 1):
            x = x ** q
        return x

    def random(self, rng) -> WittElem:
        return WittElem(self, (rng.randrange(self.modulus), rng.randrange(self.modulus)))

    def __repr__(self):
        return f"W_{self.k}(GF({self.p}^2))"


@functools.lru_cache(maxsize=None)
def witt_ring(p: int, k: int) -> WittRing:
    return WittRing(p, k)
