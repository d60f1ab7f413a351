"""Polynomials over F_q, residue rings F_q[T]/(N), and the Euler function Phi.

Coefficients are stored as raw integer encodings (see ``fields``), lowest
degree first, with no trailing zeros; the zero polynomial has an empty
coefficient tuple and degree ``NEG_INF``.

Text format: terms ``c*T^k`` joined by ``+``, where ``c`` is the integer
encoding of the coefficient and a coefficient of 1 is omitted, e.g.
``T^3+T+1`` or ``2*T^2+1``.  Printing and parsing round-trip.
"""

from __future__ import annotations

import functools
import itertools
import re

from .fields import FiniteField, FqElem, field

NEG_INF = float("-inf")

DEFAULT_ENUM_CAP = 2**20


class CapExceededError(ValueError):
    """An exhaustive enumeration would exceed the configured cap."""


class Polynomial:
    """A polynomial in T over a finite field, in canonical reduced form."""

    __slots__ = ("field", "coeffs")

    def __init__(self, fld: FiniteField, coeffs=()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = fld
        self.coeffs = tuple(cs)

    # -- constructors --

    @staticmethod
    def zero(fld: FiniteField) -> "Polynomial":
        return Polynomial(fld)

    @staticmethod
    def one(fld: FiniteField) -> "Polynomial":
        return Polynomial(fld, (1,))

    @staticmethod
    def const(fld: FiniteField, val) -> "Polynomial":
        if isinstance(val, FqElem):
            val = val.val
        return Polynomial(fld, (val % fld.q,))

    @staticmethod
    def T(fld: FiniteField) -> "Polynomial":
        return Polynomial(fld, (0, 1))

    @staticmethod
    def from_int(fld: FiniteField, encoding: int) -> "Polynomial":
        """Inverse of :meth:`to_int`: base-q digits are the coefficients."""
        cs = []
        while encoding:
            encoding, r = divmod(encoding, fld.q)
            cs.append(r)
        return Polynomial(fld, cs)

    # -- basic structure --

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant_coeff(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def to_int(self) -> int:
        """Integer encoding with base-q digits, constant digit first.

        Induces the deterministic (lexicographic from the constant term)
        order used for canonical choices throughout.
        """
        enc = 0
        for c in reversed(self.coeffs):
            enc = enc * self.field.q + c
        return enc

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.field is other.field and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.s, self.coeffs))

    # -- arithmetic --

    def _check(self, other):
        if not isinstance(other, Polynomial):
            raise TypeError(f"expected Polynomial, got {type(other).__name__}")
        if other.field is not self.field:
            raise ValueError("polynomials over different fields")

    def __add__(self, other):
        self._check(other)
        f = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = f.add_val(out[i], c)
        return Polynomial(f, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        f = self.field
        return Polynomial(f, [f.neg_val(c) for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            other = Polynomial.const(self.field, self.field.from_int(other).val)
        self._check(other)
        f = self.field
        if not self.coeffs or not other.coeffs:
            return Polynomial(f)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = f.add_val(out[i + j], f.mul_val(a, b))
        return Polynomial(f, out)

    __rmul__ = __mul__

    def scale(self, c: int) -> "Polynomial":
        f = self.field
        return Polynomial(f, [f.mul_val(c, x) for x in self.coeffs])

    def shift(self, k: int) -> "Polynomial":
        """Multiply by T^k."""
        if not self.coeffs:
            return self
        return Polynomial(self.field, (0,) * k + self.coeffs)

    def __divmod__(self, other):
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        rem = list(self.coeffs)
        dd = len(other.coeffs) - 1
        inv_lead = f.inv_val(other.coeffs[-1])
        quot = [0] * max(len(rem) - dd, 0)
        while len(rem) - 1 >= dd and rem:
            factor = f.mul_val(rem[-1], inv_lead)
            shift = len(rem) - 1 - dd
            quot[shift] = factor
            for j, mj in enumerate(other.coeffs):
                rem[shift + j] = f.sub_val(rem[shift + j], f.mul_val(factor, mj))
            while rem and rem[-1] == 0:
                rem.pop()
        return Polynomial(f, quot), Polynomial(f, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def monic(self) -> "Polynomial":
        if self.is_zero() or self.is_monic():
            return self
        return self.scale(self.field.inv_val(self.coeffs[-1]))

    def gcd(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def modpow(self, e: int, mod: "Polynomial") -> "Polynomial":
        result = Polynomial.one(self.field) % mod
        base = self % mod
        while e:
            if e & 1:
                result = result * base % mod
            base = base * base % mod
            e >>= 1
        return result

    def modinv(self, mod: "Polynomial") -> "Polynomial":
        """Inverse modulo ``mod`` via the extended Euclidean algorithm."""
        f = self.field
        r0, r1 = mod, self % mod
        t0, t1 = Polynomial.zero(f), Polynomial.one(f)
        while not r1.is_zero():
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            t0, t1 = t1, t0 - q * t1
        if r0.degree != 0:
            raise ZeroDivisionError("element is not invertible modulo the given polynomial")
        return t0.scale(f.inv_val(r0.coeffs[0])) % mod

    def eval(self, x):
        """Horner evaluation at an FqElem (or raw encoding)."""
        f = self.field
        xv = x.val if isinstance(x, FqElem) else x % f.q
        acc = 0
        for c in reversed(self.coeffs):
            acc = f.add_val(f.mul_val(acc, xv), c)
        return FqElem(f, acc)

    def qpower(self, k: int) -> "Polynomial":
        """self**(q^k), using that the q-power map is additive."""
        if k == 0 or self.is_zero():
            return self
        f = self.field
        qk = f.q**k
        out = [0] * ((len(self.coeffs) - 1) * qk + 1)
        for i, c in enumerate(self.coeffs):
            if c:
                out[i * qk] = f.pow_val(c, qk)
        return Polynomial(f, out)

    def frobenius(self) -> "Polynomial":
        """self**p (coefficientwise p-power, exponents spread by p)."""
        if self.is_zero():
            return self
        f = self.field
        out = [0] * ((len(self.coeffs) - 1) * f.p + 1)
        for i, c in enumerate(self.coeffs):
            if c:
                out[i * f.p] = f.frobenius_val(c)
        return Polynomial(f, out)

    def derivative(self) -> "Polynomial":
        f = self.field
        out = []
        for i in range(1, len(self.coeffs)):
            out.append(f.mul_val(self.coeffs[i], i % f.p))
        return Polynomial(f, out)

    # -- text format --

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                head = "" if c == 1 else f"{c}*"
                var = "T" if i == 1 else f"T^{i}"
                parts.append(head + var)
        return "+".join(parts)

    def __repr__(self):
        return f"Poly[GF({self.field.q})]({self})"


_TERM_RE = re.compile(r"^(?:(\d+)\*)?T(?:\^(\d+))?$|^(\d+)$")


def parse_poly(fld: FiniteField, text: str) -> Polynomial:
    text = text.replace(" ", "")
    if not text:
        raise ValueError("empty polynomial text")
    acc = Polynomial.zero(fld)
    for term in text.split("+"):
        m = _TERM_RE.match(term)
        if not m:
            raise ValueError(f"bad polynomial term {term!r}")
        coeff_s, exp_s, const_s = m.groups()
        if const_s is not None:
            c, k = int(const_s), 0
        else:
            c = int(coeff_s) if coeff_s else 1
            k = int(exp_s) if exp_s else 1
        if c >= fld.q:
            raise ValueError(f"coefficient {c} out of range for GF({fld.q})")
        acc = acc + Polynomial(fld, (0,) * k + (c,))
    return acc


# -- irreducibility and factorization --

def is_irreducible(f: Polynomial, cap: int = DEFAULT_ENUM_CAP) -> bool:
    """Exact test by trial division by all monic polynomials of degree <= deg/2."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    deg = f.degree
    if deg < 1:
        return False
    q = f.field.q
    for d in range(1, deg // 2 + 1):
        if q**d > cap:
            raise CapExceededError(f"irreducibility scan needs {q**d} divisors of degree {d}")
        for enc in range(q**d):
            g = Polynomial(f.field, _enc_digits(enc, q, d) + (1,))
            if (f % g).is_zero():
                return False
    return True


def _enc_digits(enc, q, length):
    out = []
    for _ in range(length):
        enc, r = divmod(enc, q)
        out.append(r)
    return tuple(out)


def monic_irreducibles(fld: FiniteField, d: int, cap: int = DEFAULT_ENUM_CAP):
    """All monic irreducibles of degree d, in increasing encoding order."""
    if d < 1:
        raise ValueError("degree must be positive")
    if fld.q**d > cap:
        raise CapExceededError(f"enumeration of degree {d} over GF({fld.q}) exceeds cap {cap}")
    out = []
    for enc in range(fld.q**d):
        g = Polynomial(fld, _enc_digits(enc, fld.q, d) + (1,))
        if is_irreducible(g, cap=cap):
            out.append(g)
    return out


@functools.lru_cache(maxsize=None)
def canonical_prime(fld: FiniteField, d: int) -> Polynomial:
    """Smallest-encoded monic irreducible of degree d (the default oracle prime)."""
    q = fld.q
    for enc in itertools.count():
        if enc >= q**d:
            break
        g = Polynomial(fld, _enc_digits(enc, q, d) + (1,))
        if is_irreducible(g):
            return g
    raise AssertionError(f"no monic irreducible of degree {d} over GF({q})")


def factor(f: Polynomial, cap: int = DEFAULT_ENUM_CAP):
    """Factor into monic irreducibles, returned as a sorted list of (P, e).

    Distinct-degree sieving with T^(q^d) - T picks out, degree by degree,
    the product of the irreducible factors of each exact degree; products
    of several same-degree factors are split by exhaustive trial division
    over that single degree (guarded by ``cap``).
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    fld = f.field
    rem = f.monic()
    out = []
    d = 0
    t = Polynomial.T(fld)
    while rem.degree >= 1:
        d += 1
        if d > rem.degree:
            raise AssertionError("factor loop overran the remaining degree")
        frob = t.modpow(fld.q**d, rem) - t
        g = rem.gcd(frob)
        if g.degree < 1:
            continue
        if g.degree == d:
            primes = [g]
        else:
            primes = _split_equal_degree(g, d, cap)
        for p_ in primes:
            e = 0
            while (rem % p_).is_zero():
                rem = rem // p_
                e += 1
            out.append((p_, e))
    out.sort(key=lambda pe: (pe[0].degree, pe[0].to_int()))
    return out


def _split_equal_degree(g: Polynomial, d: int, cap: int):
    """Split a squarefree product of degree-d irreducibles by trial division."""
    fld = g.field
    if fld.q**d > cap:
        raise CapExceededError(f"equal-degree split at degree {d} exceeds cap {cap}")
    primes = []
    for enc in range(fld.q**d):
        if g.degree == d:
            primes.append(g)
            break
        cand = Polynomial(fld, _enc_digits(enc, fld.q, d) + (1,))
        if (g % cand).is_zero():
            primes.append(cand)
            g = g // cand
    return primes


def phi(n: Polynomial) -> int:
    """Order of the unit group of F_q[T]/(N), multiplicative over factors."""
    if n.is_zero():
        raise ValueError("phi of the zero modulus")
    q = n.field.q
    total = 1
    for p_, e in factor(n):
        d = p_.degree
        total *= q ** (d * (e - 1)) * (q**d - 1)
    return total


# -- residue rings --

class ResidueRing:
    """F_q[T]/(N) with elements represented by polynomials of degree < deg N."""

    def __init__(self, modulus: Polynomial):
        if modulus.is_zero():
            raise ValueError("zero modulus")
        self.modulus = modulus.monic()
        self.field = modulus.field

    @property
    def size(self) -> int:
        return self.field.q ** max(self.modulus.degree, 0)

    def reduce(self, f: Polynomial) -> Polynomial:
        return f % self.modulus

    def is_unit(self, f: Polynomial) -> bool:
        return self.reduce(f).gcd(self.modulus).degree == 0

    def elements(self, cap: int = DEFAULT_ENUM_CAP):
        if self.size > cap:
            raise CapExceededError(f"residue enumeration of size {self.size} exceeds cap {cap}")
        deg = self.modulus.degree
        q = self.field.q
        for enc in range(self.size):
            yield Polynomial(self.field, _enc_digits(enc, q, deg))

    def units(self, cap: int = DEFAULT_ENUM_CAP):
        """All units in increasing encoding order; yields exactly phi(N) of them."""
        for f in self.elements(cap=cap):
            if f.gcd(self.modulus).degree == 0:
                yield f

    def elem_order(self, a: Polynomial) -> int:
        """Multiplicative order, found by stripping prime factors of phi(N)."""
        a = self.reduce(a)
        if not self.is_unit(a):
            raise ValueError(f"{a} is not a unit modulo {self.modulus}")
        one = Polynomial.one(self.field)
        e = phi(self.modulus)
        for prime in _int_prime_factors(e):
            while e % prime == 0 and a.modpow(e // prime, self.modulus) == one:
                e //= prime
        return e


def _int_prime_factors(n: int):
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
