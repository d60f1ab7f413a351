"""Exact arithmetic in finite fields F_q, q = p^s.

A field is constructed once per (p, s) and cached, with the canonical
modulus chosen as the lexicographically smallest monic irreducible of
degree s over F_p (coefficients compared from the constant term up), so
equal parameters always give the identical field object.

Elements are encoded as integers in [0, q): the base-p digits of the
encoding are the coordinates in the power basis, constant digit first.
"""

from __future__ import annotations

import functools
import itertools

MAX_EXTENSION_DEGREE = 16
_TABLE_LIMIT = 256  # build full add/mul tables below this q
_WP_CROSSCHECK_LIMIT = 64  # exhaustively validate the trace criterion below this q


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# -- arithmetic on F_p coefficient tuples, used only to bootstrap a field --

def _fp_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _fp_mod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        factor = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for j, mj in enumerate(m):
            a[shift + j] = (a[shift + j] - factor * mj) % p
        while a and a[-1] == 0:
            a.pop()
    return tuple(a)


def _fp_is_irreducible(f, p):
    """Trial division by every monic polynomial of degree <= deg(f)/2."""
    deg = len(f) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for lower in itertools.product(range(p), repeat=d):
            g = lower + (1,)
            if not _fp_mod(f, g, p):
                return False
    return True


def _canonical_modulus(p, s):
    for lower in itertools.product(range(p), repeat=s):
        # itertools.product varies the LAST coordinate fastest; we need the
        # constant term fastest, so index the reversed tuple.
        coeffs = tuple(reversed(lower)) + (1,)
        if _fp_is_irreducible(coeffs, p):
            return coeffs
    raise AssertionError(f"no monic irreducible of degree {s} over F_{p}")


class FiniteField:
    """The finite field with q = p^s elements.

    Instances are obtained through :func:`field`; the constructor is not
    meant to be called twice for the same parameters.
    """

    def __init__(self, p: int, s: int):
        if not _is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if not 1 <= s <= MAX_EXTENSION_DEGREE:
            raise ValueError(f"extension degree {s} out of range [1, {MAX_EXTENSION_DEGREE}]")
        self.p = p
        self.s = s
        self.q = p**s
        self.modulus = _canonical_modulus(p, s)
        self._mul_table = None
        self._add_table = None
        if self.q <= _TABLE_LIMIT:
            self._build_tables()
        if self.q <= _WP_CROSSCHECK_LIMIT:
            self._crosscheck_wp_image()

    # -- raw value arithmetic (integers in [0, q)) --

    def _digits(self, val):
        p = self.p
        out = []
        for _ in range(self.s):
            val, r = divmod(val, p)
            out.append(r)
        return out

    def _undigits(self, digits):
        val = 0
        for d in reversed(digits):
            val = val * self.p + d
        return val

    def add_val(self, a: int, b: int) -> int:
        if self._add_table is not None:
            return self._add_table[a][b]
        da, db = self._digits(a), self._digits(b)
        return self._undigits([(x + y) % self.p for x, y in zip(da, db)])

    def neg_val(self, a: int) -> int:
        if self.p == 2:
            return a
        return self._undigits([(-x) % self.p for x in self._digits(a)])

    def sub_val(self, a: int, b: int) -> int:
        return self.add_val(a, self.neg_val(b))

    def mul_val(self, a: int, b: int) -> int:
        if self._mul_table is not None:
            return self._mul_table[a][b]
        prod = _fp_mul(tuple(self._digits(a)), tuple(self._digits(b)), self.p)
        return self._undigits(list(_fp_mod(prod, self.modulus, self.p)) + [0] * self.s)

    def pow_val(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow_val(self.inv_val(a), -e)
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul_val(result, base)
            base = self.mul_val(base, base)
            e >>= 1
        return result

    def inv_val(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self.pow_val(a, self.q - 2)

    def div_val(self, a: int, b: int) -> int:
        return self.mul_val(a, self.inv_val(b))

    def _build_tables(self):
        q = self.q
        mul, add = [], []
        self._mul_table = None
        self._add_table = None
        for a in range(q):
            mul.append([self.mul_val(a, b) for b in range(q)])
            add.append([self.add_val(a, b) for b in range(q)])
        self._mul_table = mul
        self._add_table = add

    # -- Frobenius and the Artin-Schreier operator --

    def frobenius_val(self, a: int) -> int:
        return self.pow_val(a, self.p)

    def pth_root_val(self, a: int) -> int:
        # Frobenius is bijective, so the root is a^(p^(s-1)).
        return self.pow_val(a, self.p ** (self.s - 1))

    def trace_val(self, a: int) -> int:
        """Absolute trace to F_p, returned as an integer in [0, p)."""
        acc, x = 0, a
        for _ in range(self.s):
            acc = self.add_val(acc, x)
            x = self.frobenius_val(x)
        # acc lies in the prime subfield, whose encoding is its constant digit
        assert acc < self.p
        return acc

    def wp_val(self, a: int) -> int:
        return self.sub_val(self.frobenius_val(a), a)

    def in_wp_image_val(self, a: int) -> bool:
        return self.trace_val(a) == 0

    def _crosscheck_wp_image(self):
        image = {self.wp_val(x) for x in range(self.q)}
        by_trace = {x for x in range(self.q) if self.trace_val(x) == 0}
        if image != by_trace:
            raise AssertionError(f"trace criterion disagrees with a^p - a image in {self!r}")

    def wp_solve_val(self, v: int):
        """Some a with a^p - a = v, or None when v is not in the image."""
        for a in range(self.q):
            if self.wp_val(a) == v:
                return a
        return None

    @functools.lru_cache(maxsize=None)
    def wp_coset_rep_val(self, v: int) -> int:
        """Smallest-encoded element of v + (a^p - a image)."""
        return min(self.add_val(v, self.wp_val(a)) for a in range(self.q))

    # -- element construction --

    def elem(self, val: int) -> "FqElem":
        return FqElem(self, val % self.q)

    def from_int(self, n: int) -> "FqElem":
        """Image of an ordinary integer (i.e. n mod p embedded in F_q)."""
        return FqElem(self, n % self.p)

    def from_coeffs(self, coeffs) -> "FqElem":
        coeffs = list(coeffs)
        if len(coeffs) != self.s:
            raise ValueError(f"expected {self.s} coefficients, got {len(coeffs)}")
        return FqElem(self, self._undigits([c % self.p for c in coeffs]))

    def zero(self) -> "FqElem":
        return FqElem(self, 0)

    def one(self) -> "FqElem":
        return FqElem(self, 1)

    def elements(self):
        return (FqElem(self, v) for v in range(self.q))

    def __repr__(self):
        return f"GF({self.q})"

    def __hash__(self):
        return hash((FiniteField, self.p, self.s))

    def __eq__(self, other):
        return self is other


class FqElem:
    """An element of a :class:`FiniteField`, wrapping its integer encoding."""

    __slots__ = ("field", "val")

    def __init__(self, field: FiniteField, val: int):
        self.field = field
        self.val = val

    def _rhs(self, other):
        if isinstance(other, FqElem):
            if other.field is not self.field:
                raise ValueError("elements of different fields")
            return other.val
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        v = self._rhs(other)
        if v is NotImplemented:
            return NotImplemented
        return FqElem(self.field, self.field.add_val(self.val, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._rhs(other)
        if v is NotImplemented:
            return NotImplemented
        return FqElem(self.field, self.field.sub_val(self.val, v))

    def __rsub__(self, other):
        v = self._rhs(other)
        if v is NotImplemented:
            return NotImplemented
        return FqElem(self.field, self.field.sub_val(v, self.val))

    def __mul__(self, other):
        v = self._rhs(other)
        if v is NotImplemented:
            return NotImplemented
        return FqElem(self.field, self.field.mul_val(self.val, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._rhs(other)
        if v is NotImplemented:
            return NotImplemented
        return FqElem(self.field, self.field.div_val(self.val, v))

    def __rtruediv__(self, other):
        v = self._rhs(other)
        if v is NotImplemented:
            return NotImplemented
        return FqElem(self.field, self.field.div_val(v, self.val))

    def __pow__(self, e):
        return FqElem(self.field, self.field.pow_val(self.val, e))

    def __neg__(self):
        return FqElem(self.field, self.field.neg_val(self.val))

    def __eq__(self, other):
        if isinstance(other, FqElem):
            return self.field is other.field and self.val == other.val
        if isinstance(other, int):
            return self.val == other % self.field.p and self.val < self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.s, self.val))

    def __bool__(self):
        return self.val != 0

    @property
    def coeffs(self):
        return tuple(self.field._digits(self.val))

    def frobenius(self) -> "FqElem":
        return FqElem(self.field, self.field.frobenius_val(self.val))

    def pth_root(self) -> "FqElem":
        return FqElem(self.field, self.field.pth_root_val(self.val))

    def trace(self) -> int:
        return self.field.trace_val(self.val)

    def wp(self) -> "FqElem":
        return FqElem(self.field, self.field.wp_val(self.val))

    def in_wp_image(self) -> bool:
        return self.field.in_wp_image_val(self.val)

    def __str__(self):
        return str(self.val)

    def __repr__(self):
        return f"FqElem(GF({self.field.q}), {self.val})"


@functools.lru_cache(maxsize=None)
def field(p: int, s: int = 1) -> FiniteField:
    """The canonical F_{p^s}; repeated calls return the same object."""
    return FiniteField(p, s)
