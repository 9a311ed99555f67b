"""The definite quaternion algebra ramified at {p, oo}: maximal orders,
right ideals, class-set enumeration, residue maps mod N and at p.

Elements live in B = (a,b / Q) with i^2 = a, j^2 = b, k = ij = -ji.
Lattices are rank-4 Z-modules in B given by HNF bases over the
coordinate basis (1, i, j, k).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .fields import GF, FFElem, is_prime
from .lattices import (coords_in_basis, det_rational, hnf_rational,
                       lattice_intersection, vectors_of_norm)


class QuaternionAlgebra:
    """B = (a, b / Q); here always a, b < 0 and ramified exactly at {p, oo}."""

    def __init__(self, p: int, a: int, b: int):
        self.p = p
        self.a = a
        self.b = b

    def elem(self, x0, x1=0, x2=0, x3=0) -> "QuatElem":
        return QuatElem(self, (Fraction(x0), Fraction(x1), Fraction(x2), Fraction(x3)))

    def one(self) -> "QuatElem":
        return self.elem(1)

    def zero(self) -> "QuatElem":
        return self.elem(0)

    def gens(self):
        return self.elem(0, 1), self.elem(0, 0, 1), self.elem(0, 0, 0, 1)

    def __eq__(self, other):
        return (isinstance(other, QuaternionAlgebra)
                and (self.p, self.a, self.b) == (other.p, other.a, other.b))

    def __repr__(self):
        return f"QuaternionAlgebra(p={self.p}, a={self.a}, b={self.b})"


class QuatElem:
    __slots__ = ("alg", "c")

    def __init__(self, alg: QuaternionAlgebra, c: tuple[Fraction, ...]):
        self.alg = alg
        self.c = c

    def __add__(self, other):
        return QuatElem(self.alg, tuple(x + y for x, y in zip(self.c, other.c)))

    def __sub__(self, other):
        return QuatElem(self.alg, tuple(x - y for x, y in zip(self.c, other.c)))

    def __neg__(self):
        return QuatElem(self.alg, tuple(-x for x in self.c))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuatElem(self.alg, tuple(x * other for x in self.c))
        a, b = self.alg.a, self.alg.b
        x0, x1, x2, x3 = self.c
        y0, y1, y2, y3 = other.c
        return QuatElem(self.alg, (
            x0 * y0 + a * x1 * y1 + b * x2 * y2 - a * b * x3 * y3,
            x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2,
            x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1,
            x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
        ))

    __rmul__ = __mul__

    def conj(self) -> "QuatElem":
        return QuatElem(self.alg, (self.c[0], -self.c[1], -self.c[2], -self.c[3]))

    def trd(self) -> Fraction:
        return 2 * self.c[0]

    def nrd(self) -> Fraction:
        a, b = self.alg.a, self.alg.b
        x0, x1, x2, x3 = self.c
        return x0 * x0 - a * x1 * x1 - b * x2 * x2 + a * b * x3 * x3

    def inv(self) -> "QuatElem":
        n = self.nrd()
        if n == 0:
            raise ZeroDivisionError("inversion of zero quaternion")
        return self.conj() * (1 / n)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.c)

    def denominator(self) -> int:
        d = 1
        for x in self.c:
            d = d * x.denominator // math.gcd(d, x.denominator)
        return d

    def __eq__(self, other):
        return isinstance(other, QuatElem) and self.alg == other.alg and self.c == other.c

    def __hash__(self):
        return hash((self.alg.p, self.alg.a, self.alg.b, self.c))

    def __repr__(self):
        return f"Quat{tuple(str(x) for x in self.c)}"


class QLattice:
    """Full-rank lattice in B with canonical HNF basis rows."""

    def __init__(self, alg: QuaternionAlgebra, rows):
        self.alg = alg
        self.rows = hnf_rational([[Fraction(x) for x in row] for row in rows])
        if len(self.rows) != 4:
            raise ValueError("lattice is not of full rank")

    def basis(self) -> list[QuatElem]:
        return [QuatElem(self.alg, tuple(row)) for row in self.rows]

    def contains(self, x: QuatElem) -> bool:
        c = coords_in_basis(list(x.c), self.rows)
        return c is not None and all(v.denominator == 1 for v in c)

    def coords(self, x: QuatElem) -> list[Fraction]:
        c = coords_in_basis(list(x.c), self.rows)
        if c is None:
            raise ValueError("element not in the lattice span")
        return c

    def gram(self) -> list[list[Fraction]]:
        """Trace-form Gram trd(b_r * conj(b_s)); value at x is 2 nrd(x)."""
        bas = self.basis()
        return [[(u * v.conj()).trd() for v in bas] for u in bas]

    def gram_det(self) -> Fraction:
        return det_rational(self.gram())

    def scale(self, c: Fraction) -> "QLattice":
        return QLattice(self.alg, [[x * c for x in row] for row in self.rows])

    def elements_of_norm(self, target: Fraction) -> list[QuatElem]:
        """Lattice elements with nrd == target, up to overall sign."""
        g = self.gram()
        den = 1
        for row in g:
            for x in row:
                den = den * x.denominator // math.gcd(den, x.denominator)
        gi = [[int(x * den) for x in row] for row in g]
        t = 2 * Fraction(target) * den
        if t.denominator != 1:
            return []
        bas = self.basis()
        out = []
        for coords in vectors_of_norm(gi, int(t)):
            x = QuatElem(self.alg, (Fraction(0),) * 4)
            for c, b in zip(coords, bas):
                if c:
                    x = x + b * c
            out.append(x)
        return out

    def __eq__(self, other):
        return isinstance(other, QLattice) and self.alg == other.alg and self.rows == other.rows

    def __repr__(self):
        return f"QLattice({self.rows})"


def lattice_from_elems(alg, elems) -> QLattice:
    return QLattice(alg, [list(e.c) for e in elems])


def product_lattice(L: QLattice, M: QLattice) -> QLattice:
    rows = []
    for u in L.basis():
        for v in M.basis():
            rows.append(list((u * v).c))
    return QLattice(L.alg, rows)


def conjugate_lattice(L: QLattice) -> QLattice:
    return QLattice(L.alg, [list(QuatElem(L.alg, tuple(row)).conj().c) for row in L.rows])


class Order(QLattice):
    """A maximal order; gram_det == p^2 is asserted at construction."""

    def __init__(self, alg, rows, check=True):
        super().__init__(alg, rows)
        if check:
            if not self.contains(alg.one()):
                raise ValueError("order does not contain 1")
            bas = self.basis()
            for u in bas:
                for v in bas:
                    if not self.contains(u * v):
                        raise ValueError("lattice not closed under multiplication")
            if self.gram_det() != alg.p ** 2:
                raise ValueError(
                    f"order is not maximal: gram determinant {self.gram_det()} != {alg.p ** 2}")

    @property
    def structure_constants(self):
        """Integer coords of e_r e_s in the order basis; cached."""
        if not hasattr(self, "_sc"):
            bas = self.basis()
            table = []
            for u in bas:
                row = []
                for v in bas:
                    cs = self.coords(u * v)
                    assert all(c.denominator == 1 for c in cs)
                    row.append(tuple(int(c) for c in cs))
                table.append(row)
            self._sc = table
        return self._sc


class RightIdeal(QLattice):
    """Integral right O-ideal with its reduced norm."""

    def __init__(self, order: Order, rows, nrd: Fraction | None = None, check=True):
        super().__init__(order.alg, rows)
        self.order = order
        d = self.gram_det() / order.alg.p ** 2
        n4 = Fraction(_iroot(d.numerator, 4), _iroot(d.denominator, 4))
        if n4 ** 4 != d:
            raise ValueError("gram determinant is not a fourth power times p^2")
        self.nrd = n4
        if nrd is not None and nrd != self.nrd:
            raise ValueError("stated reduced norm disagrees with the lattice")
        if check:
            g = self.gram()
            for r, row in enumerate(g):
                for x in row:
                    if (x / self.nrd).denominator != 1:
                        raise ValueError("normalized gram matrix is not integral")
            bas = self.basis()
            for u in bas:
                for v in order.basis():
                    if not self.contains(u * v):
                        raise ValueError("not a right module over the order")


def _iroot(n: int, k: int) -> int:
    if n == 0:
        return 0
    r = round(n ** (1.0 / k))
    while r ** k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


# ---------------------------------------------------------------------------
# Hilbert symbols


def _legendre(u: Fraction | int, v: int) -> int:
    u = Fraction(u)
    n = u.numerator * u.denominator % v
    if n == 0:
        raise ValueError("legendre symbol of a non-unit")
    return 1 if pow(n, (v - 1) // 2, v) == 1 else -1


def _split_val(x: Fraction, v: int) -> tuple[int, Fraction]:
    x = Fraction(x)
    val = 0
    num, den = x.numerator, x.denominator
    while num % v == 0:
        num //= v
        val += 1
    while den % v == 0:
        den //= v
        val -= 1
    return val, Fraction(num, den)


def hilbert_symbol(a, b, v) -> int:
    """(a, b)_v for rational a, b != 0; v a prime or the string 'inf'."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("hilbert symbol requires nonzero arguments")
    if v == "inf":
        return -1 if (a < 0 and b < 0) else 1
    if not is_prime(v):
        raise ValueError(f"{v} is not a place")
    alpha, u = _split_val(a, v)
    beta, w = _split_val(b, v)
    if v != 2:
        sign = 1
        if (alpha * beta) % 2 and _legendre(-1, v) == -1:
            sign = -sign
        if beta % 2 and _legendre(u, v) == -1:
            sign = -sign
        if alpha % 2 and _legendre(w, v) == -1:
            sign = -sign
        return sign
    u8 = u.numerator * pow(u.denominator, -1, 8) % 8
    w8 = w.numerator * pow(w.denominator, -1, 8) % 8
    eps_u, eps_w = (u8 - 1) // 2 % 2, (w8 - 1) // 2 % 2
    om_u, om_w = (u8 * u8 - 1) // 8 % 2, (w8 * w8 - 1) // 8 % 2
    e = eps_u * eps_w + alpha * om_w + beta * om_u
    return -1 if e % 2 else 1


def ramified_places(a, b, bound: int | None = None) -> list:
    """Places v with (a,b)_v = -1 among 'inf' and primes dividing 2ab (or <= bound)."""
    a, b = Fraction(a), Fraction(b)
    candidates = {2}
    for x in (a, b):
        for n in (abs(x.numerator), x.denominator):
            d = 2
            while d * d <= n:
                if n % d == 0:
                    candidates.add(d)
                    while n % d == 0:
                        n //= d
                d += 1
            if n > 1:
                candidates.add(n)
    if bound is not None:
        candidates.update(v for v in range(2, bound + 1) if is_prime(v))
    out = [v for v in sorted(candidates) if hilbert_symbol(a, b, v) == -1]
    if hilbert_symbol(a, b, "inf") == -1:
        out.append("inf")
    return out


# ---------------------------------------------------------------------------
# algebra and maximal order construction


def _hilbert_params(p: int) -> tuple[int, int]:
    """Structure constants (a, b) for B ramified exactly at {p, oo}."""
    if p == 2:
        return -1, -1
    if p % 4 == 3:
        return -1, -p
    if p % 8 == 5:
        return -2, -p
    q = 3
    while True:
        if is_prime(q) and q % 4 == 3 and _legendre(p, q) == -1:
            return -q, -p
        q += 2


def _candidate_order_rows(p: int, a: int, b: int):
    h = Fraction(1, 2)
    if p == 2:
        return [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [h, h, h, h]]
    if p % 4 == 3:
        return [[1, 0, 0, 0], [0, 1, 0, 0], [0, h, h, 0], [h, 0, 0, h]]
    if p % 8 == 5:
        return [[1, 0, 0, 0], [0, 1, 0, 0], [h, h, h, 0],
                [h, Fraction(1, 4), 0, Fraction(1, 4)]]
    q = -a
    c = next(c for c in range(q) if (c * c + p) % q == 0)
    return [[1, 0, 0, 0], [h, h, 0, 0], [0, 0, h, h],
            [0, Fraction(c, q), 0, Fraction(1, q)]]


def _ring_closure(alg, rows, max_iter=8) -> QLattice | None:
    L = QLattice(alg, rows)
    for _ in range(max_iter):
        bas = L.basis()
        prods = [list((u * v).c) for u in bas for v in bas]
        L2 = QLattice(alg, L.rows + prods)
        if L2 == L:
            return L
        L = L2
    return None


def _saturate_to_maximal(alg: QuaternionAlgebra, L: QLattice) -> QLattice:
    """Enlarge an order until its gram determinant reaches p^2."""
    p = alg.p
    target = Fraction(p * p)
    while L.gram_det() > target:
        d = L.gram_det()
        assert d.denominator == 1
        excess = _iroot(int(d) // (p * p), 2)
        primes = sorted({f for f in _prime_factors(excess)})
        improved = False
        for ell in primes:
            for mask in range(1, ell ** 4):
                cs = []
                t = mask
                for _ in range(4):
                    t, r = divmod(t, ell)
                    cs.append(r)
                x = QuatElem(alg, (Fraction(0),) * 4)
                for c, bvec in zip(cs, L.basis()):
                    if c:
                        x = x + bvec * c
                y = x * Fraction(1, ell)
                if y.trd().denominator != 1 or y.nrd().denominator != 1:
                    continue
                closed = _ring_closure(alg, L.rows + [list(y.c)])
                if closed is not None and closed.gram_det() < d:
                    L = closed
                    improved = True
                    break
            if improved:
                break
        if not improved:
            raise RuntimeError("saturation failed to enlarge a non-maximal order")
    if L.gram_det() != target:
        raise RuntimeError("order discriminant overshot p^2")
    return L


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def build_algebra(p: int) -> tuple[QuaternionAlgebra, Order]:
    """Construct B ramified exactly at {p, oo} and a maximal order."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    a, b = _hilbert_params(p)
    ram = ramified_places(a, b)
    if ram != [p, "inf"]:
        raise RuntimeError(f"recipe for p={p} gave ramification {ram}")
    alg = QuaternionAlgebra(p, a, b)
    rows = _candidate_order_rows(p, a, b)
    try:
        order = Order(alg, rows)
    except ValueError:
        L = _ring_closure(alg, rows)
        if L is None:
            L = QLattice(alg, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
        order = Order(alg, _saturate_to_maximal(alg, L).rows)
    return alg, order


class SearchExhausted(RuntimeError):
    """Norm-equation search bound reached; the caller may raise the bound."""


def solve_norm(order: Order, q, max_denominator: int = 40) -> QuatElem:
    """Some x in B with nrd(x) = q > 0; x in the order when possible."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError("the reduced norm is positive on B^x")
    t0 = q.denominator
    for extra in range(1, max_denominator + 1):
        t = t0 * extra
        target = q * t * t
        assert target.denominator == 1
        found = order.elements_of_norm(target)
        if found:
            found.sort(key=lambda e: tuple(e.c))
            return found[0] * Fraction(1, t)
    raise SearchExhausted(f"no element of norm {q} with denominator <= {t0 * max_denominator}")


# ---------------------------------------------------------------------------
# residue maps: split at ell (and mod N), reduce at p


class _QuotientAlgebra:
    """O/mO with integer arithmetic on coordinate vectors mod m."""

    def __init__(self, order: Order, m: int):
        self.order = order
        self.m = m
        self.table = order.structure_constants
        self.one = tuple(int(c) % m for c in order.coords(order.alg.one()))
        self.trd_vec = tuple(int(e.trd()) for e in order.basis())

    def mul(self, x, y):
        m = self.m
        out = [0, 0, 0, 0]
        for r in range(4):
            xr = x[r]
            if xr:
                for s in range(4):
                    ys = y[s]
                    if ys:
                        t = self.table[r][s]
                        f = xr * ys
                        out[0] += f * t[0]
                        out[1] += f * t[1]
                        out[2] += f * t[2]
                        out[3] += f * t[3]
        return tuple(v % m for v in out)

    def add(self, x, y):
        m = self.m
        return tuple((a + b) % m for a, b in zip(x, y))

    def smul(self, c, x):
        m = self.m
        return tuple(c * a % m for a in x)

    def trd(self, x) -> int:
        return sum(c * t for c, t in zip(x, self.trd_vec)) % self.m


def _lift_idempotent(quot: _QuotientAlgebra, e):
    """Hensel lift mod ell of an idempotent to the full modulus."""
    for _ in range(quot.m.bit_length() + 2):
        e2 = quot.mul(e, e)
        e3 = quot.mul(e2, e)
        e = tuple((3 * a - 2 * b) % quot.m for a, b in zip(e2, e3))
    assert quot.mul(e, e) == e
    return e


def _matrix_units(order: Order, ell: int, n: int):
    """Matrix units e_rs of O/ell^n O = M_2(Z/ell^n)."""
    base = _QuotientAlgebra(order, ell)
    # lexicographically smallest nontrivial idempotent mod ell
    seed = None
    for mask in range(ell ** 4):
        cs = []
        t = mask
        for i in range(3, -1, -1):
            cs.append(t // ell ** i)
            t %= ell ** i
        cand = tuple(cs)
        if cand == (0, 0, 0, 0) or cand == base.one:
            continue
        if base.mul(cand, cand) == cand:
            seed = cand
            break
    if seed is None:
        raise RuntimeError(f"O/{ell}O has no nontrivial idempotent (is ell = p?)")
    quot = _QuotientAlgebra(order, ell ** n)
    e11 = _lift_idempotent(quot, seed)
    one = quot.one
    e22 = tuple((a - b) % quot.m for a, b in zip(one, e11))
    basis_vecs = [tuple(int(v == r) for v in range(4)) for r in range(4)]
    e12 = None
    for x in basis_vecs:
        u = quot.mul(e11, quot.mul(x, e22))
        if any(c % ell for c in u):
            e12 = u
            break
    e21 = None
    for y in basis_vecs:
        v = quot.mul(e22, quot.mul(y, e11))
        if any(c % ell for c in v):
            # normalize so that e12 e21 = e11
            prod = quot.mul(e12, v)
            c = None
            for pc, ec in zip(prod, e11):
                if ec % ell:
                    c = pc * pow(ec, -1, quot.m) % quot.m
                    break
            assert c is not None and c % ell
            e21 = quot.smul(pow(c, -1, quot.m), v)
            break
    units = {(1, 1): e11, (1, 2): e12, (2, 1): e21, (2, 2): e22}
    # sanity: multiplication table of matrix units
    for (r, s), ers in units.items():
        for (t, u), etu in units.items():
            prod = quot.mul(ers, etu)
            expect = units[(r, u)] if s == t else (0, 0, 0, 0)
            assert prod == expect, "matrix units are inconsistent"
    return quot, units


class SplitData:
    """Ring isomorphism O/NO = M_2(Z/N), CRT-assembled over ell^n || N."""

    def __init__(self, order: Order, N: int):
        p = order.alg.p
        if N < 2 or math.gcd(N, p) != 1:
            raise ValueError("need N >= 2 with gcd(N, p) = 1")
        self.order = order
        self.N = N
        images = []  # per order-basis vector, a 2x2 integer matrix mod N
        moduli = []
        locals_ = []
        n = N
        d = 2
        factors = []
        while d * d <= n:
            if n % d == 0:
                e = 0
                while n % d == 0:
                    n //= d
                    e += 1
                factors.append((d, e))
            d += 1
        if n > 1:
            factors.append((n, 1))
        for ell, e in factors:
            quot, units = _matrix_units(order, ell, e)
            m = ell ** e
            loc = []
            for r in range(4):
                x = tuple(int(v == r) for v in range(4))
                mat = [[quot.trd(quot.mul(x, units[(s, t)])) % m for s in range(1, 3)]
                       for t in range(1, 3)]
                loc.append(mat)
            locals_.append(loc)
            moduli.append(m)
        for r in range(4):
            mat = [[0, 0], [0, 0]]
            for t in range(2):
                for s in range(2):
                    residues = [loc[r][t][s] for loc in locals_]
                    mat[t][s] = _crt(residues, moduli)
            images.append(mat)
        self.images = images

    def map_coords(self, coords) -> tuple[tuple[int, int], tuple[int, int]]:
        """Image of sum c_r e_r; rational coords with N-unit denominators."""
        N = self.N
        out = [[0, 0], [0, 0]]
        for c, mat in zip(coords, self.images):
            c = Fraction(c)
            if math.gcd(c.denominator, N) != 1:
                raise ValueError("denominator not invertible mod N")
            cm = c.numerator * pow(c.denominator, -1, N) % N
            if cm:
                for t in range(2):
                    for s in range(2):
                        out[t][s] = (out[t][s] + cm * mat[t][s]) % N
        return (out[0][0], out[0][1]), (out[1][0], out[1][1])

    def map(self, x: QuatElem):
        return self.map_coords(self.order.coords(x))


def _crt(residues, moduli) -> int:
    x, m = 0, 1
    for r, mod in zip(residues, moduli):
        t = (r - x) * pow(m % mod, -1, mod) % mod
        x += m * t
        m *= mod
    return x % m


def split_mod_N(order: Order, N: int) -> SplitData:
    return SplitData(order, N)


class ReduceData:
    """The residue ring surjection O -> F_{p^2} at the ramified prime."""

    def __init__(self, order: Order):
        alg = order.alg
        p = alg.p
        self.order = order
        self.p = p
        self.field = GF(p, 2)
        j = alg.elem(0, 0, 1)
        rows = [list((order.basis()[r] * Fraction(p)).c) for r in range(4)]
        for u in order.basis():
            for v in order.basis():
                rows.append(list((u * j * v).c))
        self.P = QLattice(alg, rows)
        index = self.P.gram_det() / order.gram_det()
        if index != p ** 4:
            raise RuntimeError("two-sided ideal above p has wrong index")
        # subspace W = P/pO inside O/pO, in order coordinates
        wrows = []
        for prow in self.P.rows:
            cs = order.coords(QuatElem(alg, tuple(prow)))
            wrows.append([int(c) % p for c in cs])
        self._wred, self._wpivots = _rref_mod_p(wrows, p)
        if len(self._wpivots) != 2:
            raise RuntimeError("radical does not have dimension 2")
        self._free = [c for c in range(4) if c not in self._wpivots]
        # field structure on the 2-dimensional quotient
        table = order.structure_constants
        one_q = self._quot_coords(tuple(int(c) for c in order.coords(alg.one())))
        self._one_q = one_q
        # quotient multiplication via structure constants
        img_table = {}
        for r in self._free:
            for s in self._free:
                img_table[(r, s)] = self._quot_coords(table[r][s])
        self._img_table = img_table
        self._basis_images = self._field_identification()
        # final check: multiplicativity on the order basis
        bas = order.basis()
        for r in range(4):
            for s in range(4):
                lhs = self.map(bas[r] * bas[s])
                rhs = self.map(bas[r]) * self.map(bas[s])
                assert lhs == rhs, "reduction map is not multiplicative"

    def _quot_coords(self, coords) -> tuple[int, int]:
        p = self.p
        c = [x % p for x in coords]
        for row, piv in zip(self._wred, self._wpivots):
            f = c[piv]
            if f:
                c = [(a - f * b) % p for a, b in zip(c, row)]
        return tuple(c[i] for i in self._free)

    def _quot_mul(self, x, y) -> tuple[int, int]:
        p = self.p
        out = (0, 0)
        for ir, r in enumerate(self._free):
            if not x[ir]:
                continue
            for is_, s in enumerate(self._free):
                if not y[is_]:
                    continue
                t = self._img_table[(r, s)]
                f = x[ir] * y[is_]
                out = ((out[0] + f * t[0]) % p, (out[1] + f * t[1]) % p)
        return out

    def _field_identification(self):
        """Images of the order basis in GF(p, 2), fixed by the tie-break rule."""
        p, F = self.p, self.field
        one = self._one_q
        # generator of the quotient over F_p: first basis vector independent of 1
        cand = None
        for idx in range(2):
            g = tuple(int(i == idx) for i in range(2))
            if _rank2(one, g, p) == 2:
                cand = g
                break
        g2 = self._quot_mul(cand, cand)
        # g^2 = alpha g + beta: solve the 2x2 system
        alpha, beta = _solve2(cand, one, g2, p)
        # roots r = u g + v with m(r) = 0 in the quotient
        m = F.modulus
        roots = []
        for u in range(p):
            for v in range(p):
                r = tuple((u * gc + v * oc) % p for gc, oc in zip(cand, one))
                r2 = self._quot_mul(r, r)
                val = tuple((r2[i] + m[1] * r[i] + m[0] * one[i]) % p for i in range(2))
                if val == (0, 0) and _rank2(one, r, p) == 2:
                    roots.append((u, v))
        if len(roots) != 2:
            raise RuntimeError("defining polynomial does not split in the quotient")
        # express quotient elements in basis (1, r) and map to F_{p^2}
        results = []
        for (u, v) in roots:
            r = tuple((u * gc + v * oc) % p for gc, oc in zip(cand, one))
            imgs = []
            for idx in range(4):
                coords = tuple(int(i == idx) for i in range(4))
                x = self._quot_coords(coords)
                s, w = _solve2(r, one, x, p)
                imgs.append(F.elem([w, s]))
            results.append(imgs)
        # tie-break: designated element = first order-basis vector with nonscalar image
        def key(imgs):
            for e in imgs:
                if not e.in_prime_field():
                    return e.c
            return imgs[0].c
        results.sort(key=key)
        return results[0]

    def map_coords(self, coords) -> FFElem:
        p = self.p
        out = self.field.zero()
        for c, img in zip(coords, self._basis_images):
            c = Fraction(c)
            if c.denominator % p == 0:
                raise ValueError("denominator not invertible at p")
            cm = c.numerator * pow(c.denominator, -1, p) % p
            if cm:
                out = out + img * self.field.elem(cm)
        return out

    def map(self, x: QuatElem) -> FFElem:
        return self.map_coords(self.order.coords(x))


def _rref_mod_p(rows, p):
    m = [row[:] for row in rows]
    pivots = []
    r = 0
    ncols = len(m[0])
    for c in range(ncols):
        sel = next((i for i in range(r, len(m)) if m[i][c] % p), None)
        if sel is None:
            continue
        m[r], m[sel] = m[sel], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [v * inv % p for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] % p:
                f = m[i][c]
                m[i] = [(v - f * w) % p for v, w in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def _rank2(x, y, p) -> int:
    det = (x[0] * y[1] - x[1] * y[0]) % p
    if det:
        return 2
    return 1 if any(x) or any(y) else 0


def _solve2(u, v, target, p):
    """(s, w) with s*u + w*v = target mod p, for independent u, v in F_p^2."""
    det = (u[0] * v[1] - u[1] * v[0]) % p
    inv = pow(det, -1, p)
    s = (target[0] * v[1] - target[1] * v[0]) * inv % p
    w = (u[0] * target[1] - u[1] * target[0]) * inv % p
    return s, w


def reduce_mod_P(order: Order) -> ReduceData:
    return ReduceData(order)


# ---------------------------------------------------------------------------
# right ideals: subideals, equivalence, class set


def right_ideals_of_norm(order: Order, ideal: RightIdeal, ell: int) -> list[RightIdeal]:
    """The ell+1 right subideals J of I with nrd(J) = ell * nrd(I)."""
    p = order.alg.p
    if ell == p:
        raise ValueError("ell must differ from the ramified prime")
    if not is_prime(ell):
        raise ValueError("ell must be prime")
    # local generator at ell: w in I with nrd(w)/nrd(I) an ell-unit
    w = None
    mult = 1
    while w is None:
        if mult % ell:
            cands = ideal.elements_of_norm(ideal.nrd * mult)
            if cands:
                w = cands[0]
        mult += 1
        if mult > 64:
            raise SearchExhausted("no local generator found at ell")
    split = _split_cached(order, ell)
    # rank-2 right submodules of M_2(F_ell): columns confined to a line
    lines = [(1, 0)] + [(s, 1) for s in range(ell)]
    # invert the coordinate map of split on the 4 basis images:
    # flat(sum c_r e_r) = c^T M, so solve M^T c = flat
    mat = []
    for r in range(4):
        m = split.images[r]
        mat.append([m[0][0], m[0][1], m[1][0], m[1][1]])
    mat_t = [[mat[r][s] for r in range(4)] for s in range(4)]
    inv = _mat4_inv_mod(mat_t, ell)
    out = []
    for line in lines:
        gens = []
        for row_index in range(2):
            flat = [0, 0, 0, 0]
            flat[2 * row_index] = line[0]
            flat[2 * row_index + 1] = line[1]
            coords = [sum(inv[r][s] * flat[s] for s in range(4)) % ell for r in range(4)]
            x = QuatElem(order.alg, (Fraction(0),) * 4)
            for c, b in zip(coords, order.basis()):
                if c:
                    x = x + b * c
            gens.append(w * x)
        rows = [[v * ell for v in row] for row in ideal.rows] + [list(g.c) for g in gens]
        J = RightIdeal(order, rows, check=False)
        if J.nrd != ideal.nrd * ell:
            raise RuntimeError("subideal has unexpected norm")
        out.append(J)
    assert len({tuple(tuple(r) for r in J.rows) for J in out}) == ell + 1
    return out


_split_store: dict = {}


def _split_cached(order: Order, N: int) -> SplitData:
    key = (order.alg.p, N, tuple(tuple(str(x) for x in row) for row in order.rows))
    if key not in _split_store:
        _split_store[key] = SplitData(order, N)
    return _split_store[key]


def _mat4_inv_mod(mat, m: int):
    n = 4
    aug = [[mat[i][j] % m for j in range(n)] + [int(i == j) for j in range(n)]
           for i in range(n)]
    for c in range(n):
        sel = next((i for i in range(c, n) if math.gcd(aug[i][c], m) == 1), None)
        if sel is None:
            raise ValueError("matrix not invertible mod m")
        aug[c], aug[sel] = aug[sel], aug[c]
        inv = pow(aug[c][c], -1, m)
        aug[c] = [v * inv % m for v in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(v - f * w) % m for v, w in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


def is_equivalent(I: RightIdeal, J: RightIdeal) -> QuatElem | None:
    """Witness x with I = x J if the right ideals are isomorphic, else None."""
    C = product_lattice(I, conjugate_lattice(J))
    target = I.nrd * J.nrd
    found = C.elements_of_norm(target)
    if not found:
        return None
    found.sort(key=lambda e: tuple(e.c))
    x = found[0] * Fraction(1, J.nrd)
    # exact verification of the witness equation
    xJ = QLattice(I.alg, [list((x * b).c) for b in J.basis()])
    if xJ.rows != I.rows:
        raise RuntimeError("equivalence witness failed verification")
    return x


def left_order(ideal: RightIdeal) -> Order:
    bas = ideal.basis()
    lat = None
    for b in bas:
        binv = b.inv()
        rows = [list((u * binv).c) for u in bas]
        L = QLattice(ideal.alg, rows)
        lat = L.rows if lat is None else lattice_intersection(lat, L.rows)
    return Order(ideal.alg, lat)


def unit_group(order_like: Order) -> list[QuatElem]:
    """All units (norm-1 elements), including both signs."""
    half = order_like.elements_of_norm(Fraction(1))
    out = []
    for u in half:
        out.append(u)
        out.append(-u)
    out.sort(key=lambda e: tuple(e.c))
    return out


def _primitive(ideal: RightIdeal) -> RightIdeal:
    """Divide out the integer content of the ideal."""
    coords = []
    for row in ideal.rows:
        coords.append(ideal.order.coords(QuatElem(ideal.alg, tuple(row))))
    g = 0
    for cs in coords:
        for c in cs:
            assert c.denominator == 1
            g = math.gcd(g, int(c))
    if g in (0, 1):
        return ideal
    return RightIdeal(ideal.order, [[x / g for x in row] for row in ideal.rows], check=False)


def ideal_classes(order: Order, coprime_to: int = 1):
    """Representatives of the right ideal classes with their left-order units.

    BFS over subideals of norm ell0 (smallest prime != p not dividing
    coprime_to); representative norms are powers of ell0.  The Eichler mass
    identity certifies completeness before returning.
    """
    p = order.alg.p
    ell0 = 2
    while ell0 == p or coprime_to % ell0 == 0:
        ell0 += 1
        while not is_prime(ell0):
            ell0 += 1
    O_ideal = RightIdeal(order, order.rows, check=False)
    reps = [O_ideal]
    units = [unit_group(order)]
    queue = [O_ideal]
    while queue:
        current = queue.pop(0)
        for J in right_ideals_of_norm(order, current, ell0):
            J = _primitive(J)
            if any(is_equivalent(J, R) is not None for R in reps):
                continue
            reps.append(J)
            units.append(unit_group(left_order(J)))
            queue.append(J)
    mass = sum(Fraction(1, len(u)) for u in units)
    if mass != Fraction(p - 1, 24):
        raise RuntimeError(f"mass identity failed at p={p}: {mass} != {Fraction(p-1,24)}")
    return reps, units
