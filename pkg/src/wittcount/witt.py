"""Truncated p-typical Witt vectors of length n.

The ring operations are defined by universal integer polynomials obtained
from the ghost-component recursion: writing g_m(W) = sum_{j<=m} p^(j-1) *
W_j^(p^(m-j)), the sum/product/negation polynomials are solved so that the
ghost map turns them into ordinary +, *, - over any torsion-free ring.
All divisions by p in the solve are exact over the integers, which is
asserted, and the resulting tables are re-verified symbolically.

The same tables are then evaluated in any coefficient domain of
characteristic p (field elements or rational functions) or over the plain
integers, where the ghost map serves as a test oracle.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .fields import FqElem
from .polys import Polynomial
from .rationals import RationalFunction

MAX_WITT_LENGTH = 4


class _IPoly:
    """Sparse multivariate polynomial over the integers.

    Monomials are dicts mapping exponent tuples to nonzero coefficients.
    Only what the ghost recursion needs is implemented.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = terms or {}

    @staticmethod
    def variable(nvars, idx):
        exps = [0] * nvars
        exps[idx] = 1
        return _IPoly(nvars, {tuple(exps): 1})

    @staticmethod
    def const(nvars, c):
        return _IPoly(nvars, {(0,) * nvars: c} if c else {})

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            nc = out.get(e, 0) + c
            if nc:
                out[e] = nc
            else:
                out.pop(e, None)
        return _IPoly(self.nvars, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, k):
        if k == 0:
            return _IPoly(self.nvars)
        return _IPoly(self.nvars, {e: c * k for e, c in self.terms.items()})

    def __mul__(self, other):
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                nc = out.get(e, 0) + c1 * c2
                if nc:
                    out[e] = nc
                else:
                    out.pop(e, None)
        return _IPoly(self.nvars, out)

    def __pow__(self, k):
        result = _IPoly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def div_exact(self, k):
        out = {}
        for e, c in self.terms.items():
            q, r = divmod(c, k)
            if r:
                raise AssertionError(f"non-exact division by {k} in Witt table construction")
            out[e] = q
        return _IPoly(self.nvars, out)

    def __eq__(self, other):
        return self.nvars == other.nvars and self.terms == other.terms

    def evaluate(self, values, dom):
        """Evaluate with the given domain adapter; powers are cached per call."""
        power_cache = [{} for _ in range(self.nvars)]

        def power(idx, e):
            cache = power_cache[idx]
            if e not in cache:
                cache[e] = dom.pow(values[idx], e)
            return cache[e]

        acc = dom.zero
        for exps, coeff in self.terms.items():
            term = dom.from_int(coeff)
            for idx, e in enumerate(exps):
                if e:
                    term = dom.mul(term, power(idx, e))
            acc = dom.add(acc, term)
        return acc


def _ghost(polys, m, p):
    """g_m of a list of length-m polynomial components (1-indexed math, 0-indexed list)."""
    acc = _IPoly(polys[0].nvars)
    for j in range(1, m + 1):
        acc = acc + (polys[j - 1] ** (p ** (m - j))).scale(p ** (j - 1))
    return acc


def _solve_components(targets, p):
    """Components C with ghost_m(C) = targets[m-1] for every m, solved recursively."""
    comps = []
    for m in range(1, len(targets) + 1):
        acc = targets[m - 1]
        for i in range(1, m):
            acc = acc - (comps[i - 1] ** (p ** (m - i))).scale(p ** (i - 1))
        comps.append(acc.div_exact(p ** (m - 1)))
    return comps


@dataclass(frozen=True)
class WittUniversalTables:
    p: int
    n: int
    sum_polys: tuple
    neg_polys: tuple
    prod_polys: tuple

    def verify_ghost_compatibility(self):
        """Re-derive the ghost identities symbolically; raises on mismatch."""
        p, n = self.p, self.n
        nv = 2 * n
        xs = [_IPoly.variable(nv, i) for i in range(n)]
        ys = [_IPoly.variable(nv, n + i) for i in range(n)]
        for m in range(1, n + 1):
            gx, gy = _ghost(xs, m, p), _ghost(ys, m, p)
            if _ghost(list(self.sum_polys), m, p) != gx + gy:
                raise AssertionError(f"ghost sum identity fails at level {m}")
            if _ghost(list(self.prod_polys), m, p) != gx * gy:
                raise AssertionError(f"ghost product identity fails at level {m}")
            if _ghost(list(self.neg_polys), m, p) != gx.scale(-1):
                raise AssertionError(f"ghost negation identity fails at level {m}")
        return True


@functools.lru_cache(maxsize=None)
def witt_tables(p: int, n: int, bound: int = MAX_WITT_LENGTH) -> WittUniversalTables:
    """Universal sum/negation/product polynomials for length n, cached per (p, n)."""
    if n < 1:
        raise ValueError("Witt length must be positive")
    if n > bound:
        raise ValueError(f"Witt length {n} exceeds bound {bound} (tables grow super-exponentially)")
    nv = 2 * n
    xs = [_IPoly.variable(nv, i) for i in range(n)]
    ys = [_IPoly.variable(nv, n + i) for i in range(n)]
    sum_targets = [_ghost(xs, m, p) + _ghost(ys, m, p) for m in range(1, n + 1)]
    prod_targets = [_ghost(xs, m, p) * _ghost(ys, m, p) for m in range(1, n + 1)]
    neg_targets = [_ghost(xs, m, p).scale(-1) for m in range(1, n + 1)]
    tables = WittUniversalTables(
        p=p,
        n=n,
        sum_polys=tuple(_solve_components(sum_targets, p)),
        neg_polys=tuple(_solve_components(neg_targets, p)),
        prod_polys=tuple(_solve_components(prod_targets, p)),
    )
    tables.verify_ghost_compatibility()
    return tables


# -- coefficient domain adapters --

class _IntDomain:
    characteristic = 0
    zero = 0

    @staticmethod
    def from_int(c):
        return c

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def pow(a, e):
        return a**e


class _FqDomain:
    def __init__(self, fld):
        self.field = fld
        self.characteristic = fld.p
        self.zero = fld.zero()

    def from_int(self, c):
        return self.field.from_int(c)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def pow(a, e):
        return a**e


class _RationalDomain:
    def __init__(self, fld):
        self.field = fld
        self.characteristic = fld.p
        self.zero = RationalFunction.zero(fld)

    def from_int(self, c):
        return RationalFunction.const(self.field, c % self.field.p)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def pow(a, e):
        return a**e


def _domain_of(comp):
    if isinstance(comp, int):
        return _IntDomain()
    if isinstance(comp, FqElem):
        return _FqDomain(comp.field)
    if isinstance(comp, RationalFunction):
        return _RationalDomain(comp.field)
    raise TypeError(f"unsupported Witt coefficient type {type(comp).__name__}")


class WittVector:
    """A length-n Witt vector over integers, F_q, or F_q(T)."""

    __slots__ = ("p", "comps")

    def __init__(self, p: int, comps):
        comps = tuple(comps)
        if not comps:
            raise ValueError("empty Witt vector")
        first = comps[0]
        for c in comps[1:]:
            if type(c) is not type(first):
                raise ValueError("mixed component types in Witt vector")
            if isinstance(c, (FqElem, RationalFunction)) and c.field is not first.field:
                raise ValueError("components over different fields")
        if isinstance(first, (FqElem, RationalFunction)) and first.field.p != p:
            raise ValueError(f"component field has characteristic {first.field.p}, not {p}")
        self.p = p
        self.comps = comps

    @property
    def n(self) -> int:
        return len(self.comps)

    def _domain(self):
        return _domain_of(self.comps[0])

    def _check(self, other: "WittVector"):
        if not isinstance(other, WittVector):
            raise TypeError("expected a WittVector")
        if self.p != other.p or self.n != other.n:
            raise ValueError("Witt vectors of different shape")
        if type(self.comps[0]) is not type(other.comps[0]):
            raise ValueError("Witt vectors over different coefficient domains")
        if isinstance(self.comps[0], (FqElem, RationalFunction)) and \
                self.comps[0].field is not other.comps[0].field:
            raise ValueError("Witt vectors over different fields")

    @staticmethod
    def zero(p: int, n: int, like=None) -> "WittVector":
        if like is None:
            return WittVector(p, (0,) * n)
        dom = _domain_of(like)
        return WittVector(p, (dom.zero,) * n)

    def zero_like(self) -> "WittVector":
        return WittVector(self.p, (self._domain().zero,) * self.n)

    def is_zero(self) -> bool:
        dom = self._domain()
        return all(c == dom.zero for c in self.comps)

    def __eq__(self, other):
        if not isinstance(other, WittVector):
            return NotImplemented
        return self.p == other.p and self.comps == other.comps

    def __hash__(self):
        return hash((self.p, self.comps))

    def _binary(self, other, polys):
        values = list(self.comps) + list(other.comps)
        dom = self._domain()
        return WittVector(self.p, (polys[m].evaluate(values, dom) for m in range(self.n)))

    def add(self, other: "WittVector") -> "WittVector":
        self._check(other)
        tables = witt_tables(self.p, self.n)
        return self._binary(other, tables.sum_polys)

    def neg(self) -> "WittVector":
        tables = witt_tables(self.p, self.n)
        values = list(self.comps) + [self._domain().zero] * self.n
        dom = self._domain()
        return WittVector(self.p, (tables.neg_polys[m].evaluate(values, dom) for m in range(self.n)))

    def sub(self, other: "WittVector") -> "WittVector":
        return self.add(other.neg())

    def mul(self, other: "WittVector") -> "WittVector":
        self._check(other)
        tables = witt_tables(self.p, self.n)
        return self._binary(other, tables.prod_polys)

    __add__ = add
    __neg__ = neg
    __sub__ = sub
    __mul__ = mul

    def int_mul(self, m: int) -> "WittVector":
        """m-fold Witt sum by double-and-add; negatives go through neg()."""
        if m < 0:
            return self.neg().int_mul(-m)
        acc = self.zero_like()
        base = self
        while m:
            if m & 1:
                acc = acc.add(base)
            base = base.add(base)
            m >>= 1
        return acc

    def frobenius(self) -> "WittVector":
        dom = self._domain()
        if dom.characteristic == 0:
            raise ValueError("Frobenius needs a characteristic-p coefficient domain")
        return WittVector(self.p, (dom.pow(c, self.p) for c in self.comps))

    def wp(self) -> "WittVector":
        """The operator x -> Frobenius(x) - x (componentwise p-power, Witt minus)."""
        return self.frobenius().sub(self)

    def ghost(self):
        """Ghost coordinates; only defined over the exact integers."""
        if self._domain().characteristic != 0:
            raise ValueError("ghost map requires integer components (it is not injective in characteristic p)")
        p = self.p
        out = []
        for m in range(1, self.n + 1):
            out.append(sum(p ** (j - 1) * self.comps[j - 1] ** (p ** (m - j)) for j in range(1, m + 1)))
        return tuple(out)

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.comps) + ")"

    def __repr__(self):
        return f"WittVector(p={self.p}, {self})"


def witt_add(x: WittVector, y: WittVector) -> WittVector:
    return x.add(y)


def witt_neg(x: WittVector) -> WittVector:
    return x.neg()


def witt_sub(x: WittVector, y: WittVector) -> WittVector:
    return x.sub(y)


def witt_mul(x: WittVector, y: WittVector) -> WittVector:
    return x.mul(y)


def witt_int_mul(m: int, x: WittVector) -> WittVector:
    return x.int_mul(m)


def witt_frobenius(x: WittVector) -> WittVector:
    return x.frobenius()


def witt_wp(x: WittVector) -> WittVector:
    return x.wp()


def ghost_map(x: WittVector) -> tuple:
    return x.ghost()


def parse_witt(fld, p: int, text: str) -> WittVector:
    """Parse "(c_1, ..., c_n)" with rational-function components."""
    from .rationals import parse_rational

    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise ValueError("Witt vector text must be parenthesised")
    inner = text[1:-1]
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(inner):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(inner[start:i])
            start = i + 1
    parts.append(inner[start:])
    comps = [parse_rational(fld, part.strip()) for part in parts]
    return WittVector(p, comps)
