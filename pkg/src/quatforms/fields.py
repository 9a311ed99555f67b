"""Exact arithmetic in finite fields F_{p^d} and polynomial factorization.

Fields are constructed as F_p[x]/(m) where m is the lexicographically
smallest monic irreducible of degree d (coefficient vectors compared as
tuples (c_0, ..., c_{d-1})).  The choice is deterministic, so serialized
elements are reproducible across runs and machines.
"""

from __future__ import annotations

import functools
import hashlib
import random
from math import isqrt


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


# ---------------------------------------------------------------------------
# bootstrap polynomial arithmetic over F_p (coefficient tuples of ints)

def _pmod_trim(c: tuple[int, ...]) -> tuple[int, ...]:
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return c[:i]


def _pmod_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pmod_trim(tuple(out))


def _pmod_rem(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv = pow(m[-1], -1, p)
    while len(a) - 1 >= dm and a:
        a = _pmod_trim(tuple(a))
        a = list(a)
        if len(a) - 1 < dm:
            break
        q = a[-1] * inv % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - q * mi) % p
        a = list(_pmod_trim(tuple(a)))
    return _pmod_trim(tuple(a))


def _pmod_powmod(a, e, m, p):
    result = (1,)
    a = _pmod_rem(a, m, p)
    while e:
        if e & 1:
            result = _pmod_rem(_pmod_mul(result, a, p), m, p)
        a = _pmod_rem(_pmod_mul(a, a, p), m, p)
        e >>= 1
    return result


def _pmod_gcd(a, b, p):
    a, b = _pmod_trim(a), _pmod_trim(b)
    while b:
        a, b = b, _pmod_rem(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = tuple(c * inv % p for c in a)
    return a


def _pmod_sub(a, b, p):
    n = max(len(a), len(b))
    a = a + (0,) * (n - len(a))
    b = b + (0,) * (n - len(b))
    return _pmod_trim(tuple((x - y) % p for x, y in zip(a, b)))


def _is_irreducible_mod_p(m: tuple[int, ...], p: int) -> bool:
    """Rabin test: x^(p^d) = x mod m and gcd(x^(p^(d/r)) - x, m) = 1."""
    d = len(m) - 1
    x = (0, 1)
    if _pmod_sub(_pmod_powmod(x, p ** d, m, p), x, p):
        return False
    for r in {q for q in range(2, d + 1) if d % q == 0 and is_prime(q)}:
        g = _pmod_gcd(m, _pmod_sub(_pmod_powmod(x, p ** (d // r), m, p), x, p), p)
        if len(g) > 1:
            return False
    return True


@functools.lru_cache(maxsize=None)
def defining_polynomial(p: int, degree: int) -> tuple[int, ...]:
    """Monic coefficients (c_0, ..., c_{d-1}, 1) of the canonical modulus."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if degree < 1:
        raise ValueError("degree must be positive")
    if degree == 1:
        return (0, 1)
    # lexicographic scan over coefficient vectors (c_0, ..., c_{d-1})
    for k in range(p ** degree):
        c = []
        t = k
        for i in range(degree - 1, -1, -1):
            c.append(t // p ** i)
            t %= p ** i
        m = tuple(c) + (1,)
        if _is_irreducible_mod_p(m, p):
            return m
    raise RuntimeError("no irreducible polynomial found")  # unreachable


class FFElem:
    """Element of F_{p^d}, stored as a reduced coefficient tuple."""

    __slots__ = ("field", "c")

    def __init__(self, field: "FiniteField", c: tuple[int, ...]):
        self.field = field
        self.c = c

    def __add__(self, other):
        f = self.field
        if other.field is not f:
            raise ValueError("field mismatch")
        p = f.p
        return FFElem(f, tuple((a + b) % p for a, b in zip(self.c, other.c)))

    def __sub__(self, other):
        f = self.field
        if other.field is not f:
            raise ValueError("field mismatch")
        p = f.p
        return FFElem(f, tuple((a - b) % p for a, b in zip(self.c, other.c)))

    def __neg__(self):
        f = self.field
        return FFElem(f, tuple(-a % f.p for a in self.c))

    def __mul__(self, other):
        f = self.field
        if other.field is not f:
            raise ValueError("field mismatch")
        return FFElem(f, f._mul(self.c, other.c))

    def __pow__(self, e: int):
        f = self.field
        if e < 0:
            return self.inv() ** (-e)
        result = f.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inv(self):
        if self.is_zero():
            raise ZeroDivisionError("inversion of zero field element")
        return self ** (self.field.q - 2)

    def __truediv__(self, other):
        return self * other.inv()

    def frob(self) -> "FFElem":
        """Frobenius x -> x^p."""
        return self ** self.field.p

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.c)

    def in_prime_field(self) -> bool:
        return all(a == 0 for a in self.c[1:])

    def __eq__(self, other):
        return isinstance(other, FFElem) and self.field is other.field and self.c == other.c

    def __hash__(self):
        return hash((id(self.field), self.c))

    def __repr__(self):
        return f"FF({self.field.p}^{self.field.degree}){list(self.c)}"

    def serialize(self) -> str:
        return "[" + ",".join(str(a) for a in self.c) + "]"


class FiniteField:
    """The field F_{p^degree} with its canonical defining polynomial."""

    def __init__(self, p: int, degree: int = 1):
        self.p = p
        self.degree = degree
        self.q = p ** degree
        self.modulus = defining_polynomial(p, degree)
        # x^d = -(c_0 + c_1 x + ...), used for reduction
        self._red = tuple(-c % p for c in self.modulus[:-1])

    def __repr__(self):
        return f"GF({self.p}^{self.degree})"

    def zero(self) -> FFElem:
        return FFElem(self, (0,) * self.degree)

    def one(self) -> FFElem:
        return FFElem(self, (1,) + (0,) * (self.degree - 1))

    def gen(self) -> FFElem:
        """Image of x; a generator of the field over F_p (not of the unit group)."""
        if self.degree == 1:
            return self.one()
        return FFElem(self, (0, 1) + (0,) * (self.degree - 2))

    def elem(self, coeffs) -> FFElem:
        if isinstance(coeffs, int):
            coeffs = [coeffs]
        c = [x % self.p for x in coeffs]
        if len(c) > self.degree:
            raise ValueError("too many coefficients")
        c += [0] * (self.degree - len(c))
        return FFElem(self, tuple(c))

    def _mul(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        p, d = self.p, self.degree
        if d == 1:
            return (a[0] * b[0] % p,)
        if d == 2:
            # x^2 = r0 + r1 x
            r0, r1 = self._red
            t = a[1] * b[1]
            return ((a[0] * b[0] + r0 * t) % p, (a[0] * b[1] + a[1] * b[0] + r1 * t) % p)
        out = [0] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        # reduce degree >= d terms using x^d = red
        red = self._red
        for k in range(2 * d - 2, d - 1, -1):
            c = out[k] % p
            if c:
                out[k] = 0
                for i, ri in enumerate(red):
                    out[k - d + i] += c * ri
        return tuple(v % p for v in out[:d])

    def elements(self):
        """Iterate over all field elements (small fields only)."""
        p, d = self.p, self.degree
        for k in range(self.q):
            c = []
            t = k
            for _ in range(d):
                t, r = divmod(t, p)
                c.append(r)
            yield FFElem(self, tuple(c))

    def random(self, rng: random.Random) -> FFElem:
        return FFElem(self, tuple(rng.randrange(self.p) for _ in range(self.degree)))

    def deserialize(self, text: str) -> FFElem:
        body = text.strip()[1:-1]
        return self.elem([int(t) for t in body.split(",")] if body else [0])


@functools.lru_cache(maxsize=None)
def GF(p: int, degree: int = 1) -> FiniteField:
    return FiniteField(p, degree)


# ---------------------------------------------------------------------------
# polynomials over a FiniteField


class Poly:
    """Univariate polynomial over a FiniteField; trailing zeros stripped."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_ints(cls, field: FiniteField, ints) -> "Poly":
        return cls(field, [field.elem(i) for i in ints])

    @classmethod
    def zero(cls, field):
        return cls(field, [])

    @classmethod
    def x(cls, field):
        return cls(field, [field.zero(), field.one()])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # zero polynomial has degree -1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        f = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, bi in enumerate(b):
            out[i] = out[i] + bi
        return Poly(f, out)

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        f = self.field
        if isinstance(other, FFElem):
            return Poly(f, [c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(f)
        out = [f.zero()] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai.is_zero():
                for j, bj in enumerate(b):
                    out[i + j] = out[i + j] + ai * bj
        return Poly(f, out)

    def __divmod__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        rem = list(self.coeffs)
        db = other.degree
        inv = other.coeffs[-1].inv()
        quo = [f.zero()] * max(0, len(rem) - db)
        while len(rem) - 1 >= db and rem:
            while rem and rem[-1].is_zero():
                rem.pop()
            if len(rem) - 1 < db:
                break
            c = rem[-1] * inv
            shift = len(rem) - 1 - db
            quo[shift] = c
            for i, bi in enumerate(other.coeffs):
                rem[shift + i] = rem[shift + i] - c * bi
        return Poly(f, quo), Poly(f, rem)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self * self.coeffs[-1].inv()

    def derivative(self) -> "Poly":
        f = self.field
        out = []
        for i in range(1, len(self.coeffs)):
            k = i % f.p
            out.append(self.coeffs[i] * f.elem(k))
        return Poly(f, out)

    def evaluate(self, x: FFElem) -> FFElem:
        acc = self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def powmod(self, e: int, modulus: "Poly") -> "Poly":
        result = Poly(self.field, [self.field.one()])
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            e >>= 1
        return result

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def serialize(self) -> str:
        return ";".join(c.serialize() for c in self.coeffs)

    def __repr__(self):
        return f"Poly({[list(c.c) for c in self.coeffs]})"


def _pth_root_poly(f: Poly) -> Poly:
    """Inverse of g -> g^p; valid when f = h(x^p)."""
    fld = f.field
    p = fld.p
    # c^(1/p) = c^(q/p)
    e = fld.q // p
    out = []
    for i in range(0, f.degree + 1, p):
        out.append(f.coeffs[i] ** e)
    return Poly(fld, out)


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Monic squarefree factors with multiplicities, product recovering f/lc."""
    result: list[tuple[Poly, int]] = []

    def rec(g: Poly, mult: int):
        g = g.monic()
        if g.degree <= 0:
            return
        d = g.derivative()
        if d.is_zero():
            rec(_pth_root_poly(g), mult * g.field.p)
            return
        c = g.gcd(d)
        w = (g // c).monic()
        i = 1
        while w.degree > 0:
            y = w.gcd(c)
            z = (w // y).monic()
            if z.degree > 0:
                result.append((z, i * mult))
            w = y
            c = c // y
            i += 1
        if c.degree > 0:
            rec(c, mult)

    rec(f, 1)
    return result


def _distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    """Split squarefree monic f into products of same-degree irreducibles."""
    fld = f.field
    out = []
    h = Poly.x(fld)
    x = Poly.x(fld)
    d = 0
    while f.degree > 2 * (d + 1) - 1 and f.degree > 0:
        d += 1
        h = h.powmod(fld.q, f)
        g = f.gcd(h - x)
        if g.degree > 0:
            out.append((g.monic(), d))
            f = (f // g).monic()
            h = h % f
    if f.degree > 0:
        out.append((f, f.degree))
    return out


def _equal_degree_split(f: Poly, d: int, rng: random.Random) -> Poly:
    """A proper monic factor of f, where f is a product of >= 2 irreducibles of degree d."""
    fld = f.field
    n = f.degree
    one = Poly(fld, [fld.one()])
    while True:
        a = Poly(fld, [fld.random(rng) for _ in range(n)])
        if a.degree < 1:
            continue
        g = f.gcd(a)
        if 0 < g.degree < n:
            return g.monic()
        if fld.p == 2:
            # absolute trace of a in the degree-d residue tower
            s = fld.degree * d
            b = a % f
            t = b
            for _ in range(s - 1):
                b = (b * b) % f
                t = t + b
            g = f.gcd(t)
        else:
            b = a.powmod((fld.q ** d - 1) // 2, f)
            g = f.gcd(b - one)
        if 0 < g.degree < n:
            return g.monic()


def _equal_degree(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    if f.degree == d:
        return [f.monic()]
    g = _equal_degree_split(f, d, rng)
    return _equal_degree(g, d, rng) + _equal_degree((f // g).monic(), d, rng)


def _poly_seed(f: Poly) -> int:
    material = f"{f.field.p},{f.field.degree}|{f.serialize()}".encode()
    return int.from_bytes(hashlib.sha256(material).digest()[:8], "big")


def factor(f: Poly) -> list[tuple[Poly, int]]:
    """Full factorization into monic irreducibles; deterministic output order."""
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(_poly_seed(f))
    out: list[tuple[Poly, int]] = []
    for g, mult in squarefree_decomposition(f):
        for h, d in _distinct_degree(g):
            for irr in _equal_degree(h, d, rng):
                out.append((irr, mult))
    out.sort(key=lambda t: (t[0].degree, [c.c for c in t[0].coeffs], t[1]))
    return out


def roots(f: Poly) -> list[FFElem]:
    """Roots of f in its coefficient field, sorted, without multiplicity."""
    out = []
    for g, _ in factor(f):
        if g.degree == 1:
            out.append(-g.coeffs[0])
    out.sort(key=lambda e: e.c)
    return out


def is_irreducible(f: Poly) -> bool:
    fs = factor(f)
    return len(fs) == 1 and fs[0][1] == 1 and fs[0][0].degree == f.degree


# ---------------------------------------------------------------------------
# subfield embeddings


@functools.lru_cache(maxsize=None)
def _embedding_image(p: int, dsmall: int, dbig: int) -> FFElem:
    """Image of the generator of F_{p^dsmall} under the canonical embedding."""
    big = GF(p, dbig)
    small_mod = defining_polynomial(p, dsmall)
    f = Poly(big, [big.elem(c) for c in small_mod])
    rs = roots(f)
    if not rs:
        raise ValueError(f"degree {dsmall} does not divide {dbig}")
    return rs[0]  # lexicographically smallest root


def embed(a: FFElem, big: FiniteField) -> FFElem:
    """Canonical embedding F_{p^d} -> F_{p^D} for d | D."""
    small = a.field
    if small is big:
        return a
    if small.p != big.p or big.degree % small.degree != 0:
        raise ValueError("no embedding between these fields")
    img = _embedding_image(small.p, small.degree, big.degree)
    acc = big.zero()
    for c in reversed(a.c):
        acc = acc * img + big.elem(c)
    return acc


def subfield_coords(a: FFElem, dsmall: int) -> FFElem:
    """Express a (lying in the degree-dsmall subfield) as an element of F_{p^dsmall}."""
    big = a.field
    small = GF(big.p, dsmall)
    img = _embedding_image(big.p, dsmall, big.degree)
    # solve sum_i c_i img^i = a over F_p
    cols = []
    acc = big.one()
    for _ in range(dsmall):
        cols.append(acc.c)
        acc = acc * img
    # gaussian elimination on the (degree x dsmall) system
    p = big.p
    n = big.degree
    aug = [[cols[j][i] for j in range(dsmall)] + [a.c[i]] for i in range(n)]
    piv = []
    r = 0
    for c in range(dsmall):
        sel = next((i for i in range(r, n) if aug[i][c] % p), None)
        if sel is None:
            continue
        aug[r], aug[sel] = aug[sel], aug[r]
        inv = pow(aug[r][c], -1, p)
        aug[r] = [v * inv % p for v in aug[r]]
        for i in range(n):
            if i != r and aug[i][c]:
                fct = aug[i][c]
                aug[i] = [(v - fct * w) % p for v, w in zip(aug[i], aug[r])]
        piv.append(c)
        r += 1
    sol = [0] * dsmall
    for i, c in enumerate(piv):
        sol[c] = aug[i][-1]
    # consistency: rows beyond rank must be zero
    for i in range(r, n):
        if aug[i][-1] % p:
            raise ValueError("element does not lie in the requested subfield")
    return small.elem(sol)


def min_subfield_degree(a: FFElem) -> int:
    """Smallest d dividing deg(a.field) with a in F_{p^d}."""
    big = a.field
    for d in sorted(k for k in range(1, big.degree + 1) if big.degree % k == 0):
        if a ** (big.p ** d) == a:
            return d
    return big.degree
