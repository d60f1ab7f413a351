"""The rational function field F_q(T): reduced fractions and partial fractions.

A value is stored as ``num/den`` with ``den`` monic and gcd(num, den) = 1;
zero is ``0/1``.  The text format is ``num`` for polynomials and ``num/den``
otherwise, each side parenthesised when it contains a ``+``, for instance
``1/T^2`` or ``(T^2+1)/(T^3+T)``.
"""

from __future__ import annotations

from .fields import FiniteField, FqElem
from .polys import Polynomial, factor, parse_poly


class RationalFunction:
    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial = None):
        if den is None:
            den = Polynomial.one(num.field)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.field is not den.field:
            raise ValueError("numerator and denominator over different fields")
        if num.is_zero():
            num, den = num, Polynomial.one(num.field)
        elif den.degree == 0:
            if den.coeffs[0] != 1:
                num = num.scale(den.field.inv_val(den.coeffs[0]))
            den = Polynomial.one(num.field)
        else:
            g = num.gcd(den)
            if g.degree > 0:
                num, den = num // g, den // g
            lead = den.leading()
            if lead != 1:
                inv = den.field.inv_val(lead)
                num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den

    # -- constructors --

    @staticmethod
    def _raw(num: Polynomial, den: Polynomial) -> "RationalFunction":
        """Skip normalization; caller must guarantee reduced form, monic den."""
        rf = object.__new__(RationalFunction)
        rf.num = num
        rf.den = den
        return rf

    @staticmethod
    def zero(fld: FiniteField) -> "RationalFunction":
        return RationalFunction(Polynomial.zero(fld))

    @staticmethod
    def one(fld: FiniteField) -> "RationalFunction":
        return RationalFunction(Polynomial.one(fld))

    @staticmethod
    def const(fld: FiniteField, val) -> "RationalFunction":
        return RationalFunction(Polynomial.const(fld, val))

    @staticmethod
    def from_poly(p: Polynomial) -> "RationalFunction":
        return RationalFunction(p)

    @staticmethod
    def T(fld: FiniteField) -> "RationalFunction":
        return RationalFunction(Polynomial.T(fld))

    @property
    def field(self) -> FiniteField:
        return self.num.field

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def is_constant(self) -> bool:
        return self.is_poly() and self.num.is_constant()

    def as_poly(self) -> Polynomial:
        if not self.is_poly():
            raise ValueError(f"{self} is not a polynomial")
        return self.num

    # -- arithmetic --

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.field is not self.field:
                raise ValueError("rational functions over different fields")
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        if isinstance(other, FqElem):
            return RationalFunction(Polynomial.const(self.field, other))
        if isinstance(other, int):
            # ordinary integers act through the ring map n -> n mod p
            return RationalFunction(Polynomial.const(self.field, other % self.field.p))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.den - o.num * self.den, self.den * o.den)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, e: int):
        if e < 0:
            if self.is_zero():
                raise ZeroDivisionError("negative power of zero")
            return RationalFunction(self.den, self.num) ** (-e)
        return RationalFunction(self.num**e, self.den**e)

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.field is other.field and self.num == other.num and self.den == other.den
        if isinstance(other, Polynomial):
            return self.is_poly() and self.num == other
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.is_zero()

    def frobenius(self) -> "RationalFunction":
        """self**p; numerator and denominator stay coprime and the
        denominator stays monic, so no re-reduction is needed."""
        return RationalFunction._raw(self.num.frobenius(), self.den.frobenius())

    def wp(self) -> "RationalFunction":
        return self.frobenius() - self

    def poly_and_proper_parts(self):
        """Split into polynomial part and proper fraction part (exact sum)."""
        q, r = divmod(self.num, self.den)
        return q, RationalFunction(r, self.den)

    # -- text format --

    @staticmethod
    def _wrap(s: str) -> str:
        return f"({s})" if "+" in s else s

    def __str__(self):
        if self.is_poly():
            return str(self.num)
        return f"{self._wrap(str(self.num))}/{self._wrap(str(self.den))}"

    def __repr__(self):
        return f"RF[GF({self.field.q})]({self})"


def parse_rational(fld: FiniteField, text: str) -> RationalFunction:
    text = text.replace(" ", "")
    slash = _top_level_slash(text)
    if slash is None:
        return RationalFunction(parse_poly(fld, _strip_parens(text)))
    num = parse_poly(fld, _strip_parens(text[:slash]))
    den = parse_poly(fld, _strip_parens(text[slash + 1:]))
    return RationalFunction(num, den)


def _top_level_slash(text: str):
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0:
            return i
    return None


def _strip_parens(text: str) -> str:
    if text.startswith("(") and text.endswith(")"):
        depth = 0
        for i, ch in enumerate(text):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth == 0 and i != len(text) - 1:
                    return text  # parens do not wrap the whole expression
        return text[1:-1]
    return text


def partial_fractions(f: RationalFunction):
    """Decompose f as (polynomial part, [(P, e, Q)]) with exact reconstruction.

    Each P is monic irreducible, e is the exact pole order (gcd(Q, P) = 1)
    and deg Q < deg P^e.  Terms are sorted by (deg P, encoding of P).
    """
    fld = f.field
    poly_part, frac = f.poly_and_proper_parts()
    if frac.is_zero():
        return poly_part, []
    rem_num, den = frac.num, frac.den
    terms = []
    for p_, e in factor(den):
        pe = p_**e
        cofactor = den // pe
        q_i = rem_num * cofactor.modinv(pe) % pe
        if not q_i.is_zero():
            terms.append((p_, e, q_i))
    terms.sort(key=lambda t: (t[0].degree, t[0].to_int()))
    return poly_part, terms


def recombine(fld: FiniteField, poly_part: Polynomial, terms) -> RationalFunction:
    """Inverse of :func:`partial_fractions` (used as its round-trip oracle)."""
    acc = RationalFunction(poly_part)
    for p_, e, q_i in terms:
        acc = acc + RationalFunction(q_i, p_**e)
    return acc


def pole_part(term) -> RationalFunction:
    p_, e, q_i = term
    return RationalFunction(q_i, p_**e)
