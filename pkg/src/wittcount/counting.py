"""Closed-form extension counts and the enumeration oracles that recount them.

The closed forms (v_n, w, t_1, s_n and the integer lemmas behind them) are
pure arbitrary-precision arithmetic.  Each one is paired with an exhaustive
oracle: cyclic-subgroup counting enumerates the full unit group of
F_q[T]/(P^alpha), and the generator-class oracles enumerate normal-form
generators and partition them under the scaling-plus-wp equivalence, with
the correction pole bound saturated until the class count stabilizes.
"""

from __future__ import annotations

import functools
import time
from dataclasses import dataclass
from fractions import Fraction

from .fields import field
from .polys import CapExceededError, DEFAULT_ENUM_CAP, Polynomial, canonical_prime, phi
from .rationals import RationalFunction
from .witt import WittVector

DEFAULT_SATURATION_ROUNDS = 8


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


@dataclass(frozen=True)
class CountParams:
    """Parameters (q = p^s, deg P = d, conductor bound alpha, length n)."""

    p: int
    s: int
    d: int
    alpha: int
    n: int

    def __post_init__(self):
        if self.alpha < 1 or self.n < 1 or self.d < 1 or self.s < 1:
            raise ValueError("alpha, n, d, s must all be positive")

    @property
    def q(self) -> int:
        return self.p**self.s

    def as_dict(self) -> dict:
        return {"p": self.p, "s": self.s, "q": self.q, "d": self.d,
                "alpha": self.alpha, "n": self.n}


# -- closed forms --

def v_n(params: CountParams) -> int:
    """Count of cyclic subgroups of order p^n in the units mod P^alpha."""
    p, q, d, a, n = params.p, params.q, params.d, params.alpha, params.n
    hi = q ** (d * (a - _ceil_div(a, p**n)))
    lo = q ** (d * (a - _ceil_div(a, p ** (n - 1))))
    num = hi - lo
    den = p ** (n - 1) * (p - 1)
    if num % den:
        raise AssertionError(f"v_n numerator {num} not divisible by {den}")
    return num // den


def w(alpha: int, params: CountParams) -> int:
    """Both forms of the conductor-bounded generator count; asserts they agree.

    Sum form: sum of Phi(P^(lam - floor(lam/p))) over lam < alpha coprime
    to p.  Closed form: q^(d(alpha - 1 - floor((alpha-1)/p))) - 1.
    """
    if alpha < 1:
        raise ValueError("alpha must be positive")
    return _w_cached(params.p, params.s, params.d, alpha)


@functools.lru_cache(maxsize=None)
def _w_cached(p: int, s: int, d: int, alpha: int) -> int:
    q = p**s
    total = 0
    for lam in range(1, alpha):
        if lam % p == 0:
            continue
        m = lam - lam // p
        total += q ** (d * (m - 1)) * (q**d - 1)
    closed = q ** (d * (alpha - 1 - (alpha - 1) // p)) - 1
    if total != closed:
        raise AssertionError(f"w({alpha}) sum form {total} != closed form {closed}")
    return closed


def t1(alpha: int, params: CountParams) -> int:
    """w(alpha)/(p-1); asserted equal to v_1(alpha)."""
    p = params.p
    wa = w(alpha, params)
    if wa % (p - 1):
        raise AssertionError(f"w({alpha}) = {wa} not divisible by p-1 = {p - 1}")
    value = wa // (p - 1)
    v1 = v_n(CountParams(params.p, params.s, params.d, alpha, 1))
    if value != v1:
        raise AssertionError(f"t1({alpha}) = {value} != v_1({alpha}) = {v1}")
    return value


def s_n(params: CountParams) -> int:
    """Product form w(delta_1) * prod(w(delta_i) + 1); asserts the identity
    s_n(alpha) = p^(n-1) (p-1) v_n(alpha)."""
    p, a, n = params.p, params.alpha, params.n
    deltas = [(a - 1) // p ** (n - i) + 1 for i in range(1, n + 1)]
    value = w(deltas[0], params)
    for delta in deltas[1:]:
        value *= w(delta, params) + 1
    expected = p ** (n - 1) * (p - 1) * v_n(params)
    if value != expected:
        raise AssertionError(f"s_n{params} = {value} != p^(n-1)(p-1) v_n = {expected}")
    return value


def lemma42_floor(alpha: int, s: int, p: int) -> int:
    """Nested floor identities; returns the common value floor(alpha/p^(s+1))."""
    a1 = (alpha // p**s) // p
    a2 = (alpha // p) // p**s
    a3 = alpha // p ** (s + 1)
    if not a1 == a2 == a3:
        raise AssertionError(f"floor identity fails at alpha={alpha}, s={s}, p={p}")
    return a3


def lemma42_ceil(alpha: int, s: int, p: int) -> int:
    """ceil(alpha/p^s) = floor((alpha-1)/p^s) + 1; returns the common value."""
    c = _ceil_div(alpha, p**s)
    f = (alpha - 1) // p**s + 1
    if c != f:
        raise AssertionError(f"ceil identity fails at alpha={alpha}, s={s}, p={p}")
    return c


def ratio_check(params: CountParams):
    """Both sides of v_n(alpha)/v_(n-1)(delta) = q^(d(alpha - ceil(alpha/p)))/p,
    delta = floor((alpha-1)/p) + 1, as exact rationals; asserts equality."""
    if params.n < 2:
        raise ValueError("ratio_check requires n >= 2")
    p, q, d, a = params.p, params.q, params.d, params.alpha
    delta = (a - 1) // p + 1
    lower = v_n(CountParams(params.p, params.s, params.d, delta, params.n - 1))
    if lower == 0:
        raise ZeroDivisionError(f"v_(n-1)({delta}) = 0: ratio is vacuous here")
    lhs = Fraction(v_n(params), lower)
    rhs = Fraction(q ** (d * (a - _ceil_div(a, p))), p)
    if lhs != rhs:
        raise AssertionError(f"ratio identity fails at {params}: {lhs} != {rhs}")
    return lhs, rhs


def ln1_bound(params: CountParams) -> int:
    """(1 + w(alpha))/p = q^(d(alpha - ceil(alpha/p)))/p as an exact integer."""
    p, q, d, a = params.p, params.q, params.d, params.alpha
    wa = w(a, params)
    power = q ** (d * (a - _ceil_div(a, p)))
    if (1 + wa) != power:
        raise AssertionError(f"1 + w({a}) = {1 + wa} != {power}")
    if power % p:
        raise ValueError(f"p does not divide 1 + w({a}) = {power} (needs alpha >= 2)")
    return power // p


def telescoped_phi_sum(params: CountParams, r: int, s: int) -> int:
    """sum_(i=r..s) Phi(P^i), evaluated term by term on the canonical prime;
    asserted equal to q^(ds) - q^(d(r-1))."""
    fld = field(params.p, params.s)
    prime = canonical_prime(fld, params.d)
    total = sum(phi(prime**i) for i in range(r, s + 1))
    closed = params.q ** (params.d * s) - params.q ** (params.d * (r - 1))
    if total != closed:
        raise AssertionError(f"Phi telescoping fails for r={r}, s={s}: {total} != {closed}")
    return total


# -- oracle: cyclic subgroup count by full unit enumeration --

class _PackedRing:
    """F_q[T]/(M) with residues packed one F_p digit per byte of an int.

    Addition of packed values is plain integer addition (digits stay below
    256) followed by a bytewise mod-p table translation, so the p-power
    map x -> x^p = sum a_i^p T^(ip) reduces to table lookups: one
    precomputed packed row per (coefficient index, coefficient value).
    """

    def __init__(self, fld, modulus: Polynomial):
        self.field = fld
        self.modulus = modulus
        self.deg = modulus.degree
        self.width = fld.s * self.deg  # bytes per packed residue
        self.mod_table = bytes(b % fld.p for b in range(256))
        q = fld.q
        # plain placement rows: a * T^i, no reduction needed (deg < deg M)
        self.place = [[self._pack_coeff(i, a) for a in range(q)] for i in range(self.deg)]
        # p-power rows: a^p * T^(ip) mod M
        t = Polynomial.T(fld)
        self.frob_rows = []
        for i in range(self.deg):
            reduced = (t ** (i * fld.p)) % modulus
            row = [self._pack_poly(reduced.scale(fld.frobenius_val(a))) for a in range(q)]
            self.frob_rows.append(row)
        self.one = self._pack_poly(Polynomial.one(fld))

    def _pack_coeff(self, i: int, a: int) -> int:
        packed = 0
        for t_, digit in enumerate(self.field._digits(a)):
            packed |= digit << (8 * (i * self.field.s + t_))
        return packed

    def _pack_poly(self, f: Polynomial) -> int:
        packed = 0
        for i, c in enumerate(f.coeffs):
            packed |= self._pack_coeff(i, c)
        return packed

    def renorm(self, acc: int) -> int:
        return int.from_bytes(acc.to_bytes(self.width, "little").translate(self.mod_table),
                              "little")

    def coeff_of(self, packed: int, i: int) -> int:
        s = self.field.s
        val = 0
        for t_ in range(s - 1, -1, -1):
            val = val * self.field.p + ((packed >> (8 * (i * s + t_))) & 0xFF)
        return val

    def frobenius(self, packed: int) -> int:
        acc = 0
        for i in range(self.deg):
            a = self.coeff_of(packed, i)
            if a:
                acc += self.frob_rows[i][a]
        return self.renorm(acc)


@functools.lru_cache(maxsize=32)
def _p_power_order_counts(p, s, prime_coeffs, alpha, n_max, cap):
    """counts[m] = number of units of F_q[T]/(P^alpha) of order exactly p^m,
    for 0 <= m <= n_max, by exhaustive enumeration of all residues.

    Also cross-checks that the number of units found equals Phi(P^alpha).
    """
    fld = field(p, s)
    prime = Polynomial(fld, prime_coeffs)
    q = fld.q
    d = prime.degree
    size = q ** (d * alpha)
    if size > cap:
        raise CapExceededError(f"unit enumeration of size {size} exceeds cap {cap}")
    modulus = prime**alpha
    ring = _PackedRing(fld, modulus)
    ring_mod_p = _PackedRing(fld, prime)

    # x is a unit iff x mod P != 0; reduction rows for the degree-d quotient
    t = Polynomial.T(fld)
    red_rows = []
    for i in range(d * alpha):
        reduced = (t**i) % prime
        red_rows.append([ring_mod_p._pack_poly(reduced.scale(a)) for a in range(q)])

    deg_full = d * alpha
    place = ring.place
    counts = [0] * (n_max + 1)
    units_found = 0
    one = ring.one
    digits = [0] * deg_full
    for _ in range(size):
        packed = 0
        modp_acc = 0
        for i in range(deg_full):
            a = digits[i]
            if a:
                packed += place[i][a]
                modp_acc += red_rows[i][a]
        if ring_mod_p.renorm(modp_acc):
            units_found += 1
            if packed == one:
                counts[0] += 1
            else:
                y = packed
                for m in range(1, n_max + 1):
                    y = ring.frobenius(y)
                    if y == one:
                        counts[m] += 1
                        break
        # odometer step over base-q coefficient digits
        for i in range(deg_full):
            digits[i] += 1
            if digits[i] < q:
                break
            digits[i] = 0
    expected_units = phi(modulus)
    if units_found != expected_units:
        raise AssertionError(f"unit enumeration found {units_found}, Phi says {expected_units}")
    return tuple(counts)


def _resolve_prime(params: CountParams, prime: Polynomial = None) -> Polynomial:
    fld = field(params.p, params.s)
    if prime is None:
        return canonical_prime(fld, params.d)
    if prime.field is not fld:
        raise ValueError("override prime lies in the wrong field")
    if prime.degree != params.d:
        raise ValueError(f"override prime has degree {prime.degree}, expected {params.d}")
    return prime.monic()


def oracle_cyclic_subgroups(params: CountParams, prime: Polynomial = None,
                            cap: int = DEFAULT_ENUM_CAP) -> int:
    """Count order-p^n cyclic subgroups of the units mod P^alpha by brute force."""
    p = params.p
    prime = _resolve_prime(params, prime)
    n_max = max(params.n, 3)  # share one enumeration across the usual n range
    counts = _p_power_order_counts(params.p, params.s, prime.coeffs, params.alpha,
                                   n_max, cap)
    generators = counts[params.n]
    per_group = p ** (params.n - 1) * (p - 1)
    if generators % per_group:
        raise AssertionError(f"{generators} elements of order p^{params.n} "
                             f"but phi(p^n) = {per_group}")
    return generators // per_group


# -- oracle: generator classes --

class _DSU:
    def __init__(self, size):
        self.parent = list(range(size))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def class_count(self):
        return sum(1 for i in range(len(self.parent)) if self.find(i) == i)


def _coprime_numerators(fld, prime, lam, cap):
    """All Q with deg Q < lam*deg P and gcd(Q, P) = 1, in encoding order."""
    from .polys import _enc_digits

    q = fld.q
    deg = lam * prime.degree
    if q**deg > cap:
        raise CapExceededError(f"numerator enumeration of size {q**deg} exceeds cap {cap}")
    out = []
    for enc in range(1, q**deg):
        cand = Polynomial(fld, _enc_digits(enc, q, deg))
        if cand.gcd(prime).degree == 0:
            out.append(cand)
    return out


def _valid_lambdas(p, alpha, weight, allow_zero):
    """Pole orders lam with p^weight * lam <= alpha - 1, lam coprime to p."""
    out = [0] if allow_zero else []
    lam = 1
    while p**weight * lam <= alpha - 1:
        if lam % p:
            out.append(lam)
        lam += 1
    return out


def oracle_as_classes(params: CountParams, prime: Polynomial = None,
                      cap: int = DEFAULT_ENUM_CAP):
    """Degree-p generator classes: enumerate normal forms Q/P^lam and identify
    beta ~ j*beta + wp(h/P^floor(lam/p)); returns the number of classes.

    The transformed generator provably stays in normal form with the same
    pole order, which is asserted.  Use :func:`oracle_as_classes_by_conductor`
    for the per-pole-order breakdown.
    """
    return _as_classes(params, prime, cap)[0]


def oracle_as_classes_by_conductor(params: CountParams, prime: Polynomial = None,
                                   cap: int = DEFAULT_ENUM_CAP) -> dict:
    """Classes with conductor exactly P^(lam+1), keyed by lam."""
    return _as_classes(params, prime, cap)[1]


def _as_classes(params, prime, cap):
    fld = field(params.p, params.s)
    p = params.p
    prime = _resolve_prime(params, prime)
    cands = []
    for lam in _valid_lambdas(p, params.alpha, 0, allow_zero=False):
        for q_num in _coprime_numerators(fld, prime, lam, cap):
            cands.append((lam, RationalFunction(q_num, prime**lam)))
        if len(cands) > cap:
            raise CapExceededError(f"more than {cap} candidate generators")
    index = {rf: i for i, (lam, rf) in enumerate(cands)}
    dsu = _DSU(len(cands))
    for i, (lam, beta) in enumerate(cands):
        gamma0 = lam // p
        g_set = [RationalFunction(h, prime**gamma0) for h in
                 _all_numerators(fld, gamma0 * prime.degree)] if gamma0 else \
                [RationalFunction.zero(fld)]
        for j in range(1, p):
            scaled = beta * j
            for c in g_set:
                image = scaled + c.wp()
                other = index.get(image)
                if other is None:
                    raise AssertionError(f"transform left the normal-form set: {image}")
                dsu.union(i, other)
    by_lambda = {}
    roots = {i for i in range(len(cands)) if dsu.find(i) == i}
    for i in roots:
        lam = cands[i][0]
        by_lambda[lam] = by_lambda.get(lam, 0) + 1
    return len(roots), by_lambda


def _all_numerators(fld, deg):
    from .polys import _enc_digits

    q = fld.q
    return [Polynomial(fld, _enc_digits(enc, q, deg)) for enc in range(q**deg)]


class NotStabilizedError(RuntimeError):
    """Saturation did not stabilize within the configured number of rounds."""


@dataclass(frozen=True)
class AswClassesResult:
    count: int
    candidates: int
    bounds_tried: tuple
    counts_per_bound: tuple

    @property
    def rounds(self) -> int:
        return len(self.bounds_tried)


def oracle_asw_classes(params: CountParams, prime: Polynomial = None,
                       cap: int = DEFAULT_ENUM_CAP,
                       max_rounds: int = DEFAULT_SATURATION_ROUNDS) -> int:
    """Length-n generator classes under beta ~ m (.) beta (+) wp(c), counted
    by saturating the pole bound of the correction vectors c."""
    return oracle_asw_classes_detail(params, prime, cap, max_rounds).count


def oracle_asw_classes_detail(params: CountParams, prime: Polynomial = None,
                              cap: int = DEFAULT_ENUM_CAP,
                              max_rounds: int = DEFAULT_SATURATION_ROUNDS) -> AswClassesResult:
    fld = field(params.p, params.s)
    p, n, alpha = params.p, params.n, params.alpha
    if n > 3:
        raise ValueError("class enumeration is limited to n <= 3")
    prime = _resolve_prime(params, prime)
    zero = RationalFunction.zero(fld)

    level_choices = []
    for level in range(n):
        lams = _valid_lambdas(p, alpha, n - 1 - level, allow_zero=level > 0)
        choices = []
        for lam in lams:
            if lam == 0:
                choices.append(zero)
            else:
                pe = prime**lam
                choices.extend(RationalFunction(q_num, pe)
                               for q_num in _coprime_numerators(fld, prime, lam, cap))
        level_choices.append(choices)

    total = 1
    for choices in level_choices:
        total *= len(choices)
    if total > cap:
        raise CapExceededError(f"{total} candidate vectors exceed cap {cap}")
    if total == 0:
        return AswClassesResult(count=0, candidates=0, bounds_tried=(), counts_per_bound=())

    cands = []
    stack = [[]]
    for choices in level_choices:
        stack = [partial + [c] for partial in stack for c in choices]
    for comps in stack:
        cands.append(WittVector(p, comps))
    index = {wv: i for i, wv in enumerate(cands)}

    multipliers = [m for m in range(1, p**n) if m % p]
    scaled = [[wv.int_mul(m) for m in multipliers] for wv in cands]

    dsu = _DSU(len(cands))
    start_bound = _ceil_div(alpha, p)
    bounds, counts = [], []
    for round_idx in range(max_rounds):
        bound = start_bound + round_idx
        for c_vec in _correction_vectors(fld, p, n, prime, bound):
            wpc = c_vec.wp()
            for i in range(len(cands)):
                for base in scaled[i]:
                    other = index.get(base.add(wpc))
                    if other is not None:
                        dsu.union(i, other)
        bounds.append(bound)
        counts.append(dsu.class_count())
        if len(counts) >= 2 and counts[-1] == counts[-2]:
            return AswClassesResult(count=counts[-1], candidates=len(cands),
                                    bounds_tried=tuple(bounds), counts_per_bound=tuple(counts))
    raise NotStabilizedError(
        f"class count {counts} did not stabilize within {max_rounds} rounds "
        f"(bounds {bounds}); rerun with a larger round budget")


def _correction_vectors(fld, p, n, prime, bound):
    pe = prime**bound
    pool = [RationalFunction(h, pe) for h in _all_numerators(fld, bound * prime.degree)]
    stack = [[]]
    for _ in range(n):
        stack = [partial + [c] for partial in stack for c in pool]
    for comps in stack:
        yield WittVector(p, comps)


# -- verification records --

@dataclass
class VerificationReport:
    """One closed-form-versus-oracle (or identity-grid) verification record."""

    check_id: str
    params: dict
    formula_value: object = None
    oracle_value: object = None
    identity_checks: tuple = ()
    status: str = "pass"
    wall_time_ms: int = 0

    @staticmethod
    def compare(check_id, params, formula_value, oracle_value, started=None,
                identity_checks=()) -> "VerificationReport":
        ok = formula_value == oracle_value and all(flag for _, flag in identity_checks)
        return VerificationReport(
            check_id=check_id,
            params=params,
            formula_value=formula_value,
            oracle_value=oracle_value,
            identity_checks=tuple(identity_checks),
            status="pass" if ok else "fail",
            wall_time_ms=_elapsed_ms(started),
        )

    @staticmethod
    def skipped(check_id, params, reason: str) -> "VerificationReport":
        return VerificationReport(check_id=check_id, params=params,
                                  identity_checks=(("skip-reason:" + reason, True),),
                                  status="skipped")

    def passed(self) -> bool:
        return self.status == "pass"


def _elapsed_ms(started) -> int:
    if started is None:
        return 0
    return int((time.perf_counter() - started) * 1000)
