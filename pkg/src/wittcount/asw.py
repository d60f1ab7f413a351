"""Generator normalization for cyclic p-power extensions of F_q(T).

A degree-p extension generator beta is brought to the classical normal
form (pole orders coprime to p, reduced numerators, polynomial part of
degree coprime to p, constants outside the a^p - a image) by adding
explicit corrections wp(c); the length-n vector case runs the same
reduction level by level through full Witt arithmetic, which leaves the
already-normalized lower levels untouched.  Every normalization returns
its correction vector as a checkable certificate.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import FiniteField, FqElem
from .polys import Polynomial
from .rationals import RationalFunction, partial_fractions, pole_part
from .witt import MAX_WITT_LENGTH, WittVector


@dataclass(frozen=True)
class AswGenerator:
    """A Witt vector of rational functions defining a cyclic p^n-extension."""

    beta: WittVector

    @property
    def n(self) -> int:
        return self.beta.n

    @property
    def field(self) -> FiniteField:
        return self.beta.comps[0].field


@dataclass(frozen=True)
class PrimeBlock:
    prime: Polynomial
    levels: tuple  # per level: (Q: Polynomial, lam: int), Q zero iff lam zero

    def lambdas(self) -> tuple:
        return tuple(lam for _, lam in self.levels)


@dataclass(frozen=True)
class InfinityBehavior:
    """Splitting data of the infinite place: e*f*g = p^n always."""

    s: int
    t: int
    e: int
    f: int
    g: int

    def __post_init__(self):
        if not (0 <= self.s <= self.t) or min(self.e, self.f, self.g) < 1:
            raise ValueError("inconsistent infinity behavior")

    @property
    def label(self) -> str:
        if self.e == 1 and self.f == 1:
            return "decomposed"
        if self.e == 1 and self.g == 1:
            return "inert"
        if self.f == 1 and self.g == 1:
            return "ramified"
        return f"mixed(e={self.e},f={self.f},g={self.g})"


class NotNormalFormError(ValueError):
    """Raised when an operation requires an input already in normal form."""


@dataclass(frozen=True)
class AswNormalForm:
    """Normalized generator plus the data read off from its components.

    ``primes`` and ``mu`` come from the partial-fraction decomposition of
    each component of ``normalized_beta``; the certificate satisfies
    normalized_beta = source_beta (+) wp(certificate) in Witt arithmetic.
    """

    n: int
    primes: tuple  # tuple of PrimeBlock
    mu: tuple  # per level polynomial part, as Polynomial
    certificate: WittVector
    normalized_beta: WittVector
    source_beta: WittVector

    @property
    def field(self) -> FiniteField:
        return self.normalized_beta.comps[0].field

    @property
    def p(self) -> int:
        return self.normalized_beta.p

    def block_for(self, prime: Polynomial):
        for block in self.primes:
            if block.prime == prime:
                return block
        return None

    def is_single_prime(self) -> bool:
        return len(self.primes) == 1

    def certificate_holds(self) -> bool:
        """Re-check normalized = source (+) wp(certificate) by Witt arithmetic."""
        return self.source_beta.add(self.certificate.wp()) == self.normalized_beta

    def validate(self):
        """Assert the normal-form conditions on the component data."""
        p = self.p
        fld = self.field
        for block in self.primes:
            for q_i, lam in block.levels:
                if lam == 0:
                    if not q_i.is_zero():
                        raise NotNormalFormError("nonzero numerator at a level with zero pole order")
                else:
                    if lam % p == 0:
                        raise NotNormalFormError(f"pole order {lam} divisible by {p}")
                    if q_i.gcd(block.prime).degree != 0:
                        raise NotNormalFormError("numerator shares a factor with its prime")
                    if q_i.degree >= lam * block.prime.degree:
                        raise NotNormalFormError("numerator degree too large")
        for f_i in self.mu:
            if f_i.is_constant():
                c = f_i.constant_coeff()
                if c and fld.in_wp_image_val(c):
                    raise NotNormalFormError("constant part lies in the a^p - a image")
            elif f_i.degree % p == 0:
                raise NotNormalFormError(f"polynomial part degree {f_i.degree} divisible by {p}")
        return self

    def to_record(self) -> dict:
        return {
            "n": self.n,
            "primes": [
                {
                    "P": str(block.prime),
                    "levels": [[str(q_i), lam] for q_i, lam in block.levels],
                }
                for block in self.primes
            ],
            "mu": [str(f_i) for f_i in self.mu],
            "certificate": str(self.certificate),
            "normalized": str(self.normalized_beta),
        }

    def blocks(self):
        """Exact decomposition normalized = delta_1 (+) ... (+) delta_r (+) mu.

        The per-prime vectors are solved level by level so the Witt-sum
        identity holds exactly; in the presence of several primes or
        constants their higher-level pole orders need not stay coprime
        to p (only the componentwise data in ``primes`` does).
        """
        fld = self.field
        p, n = self.p, self.n
        zero = RationalFunction.zero(fld)
        prime_polys = [b.prime for b in self.primes]
        block_comps = {i: [zero] * n for i in range(len(prime_polys))}
        mu_comps = [zero] * n
        index_of = {pp: i for i, pp in enumerate(prime_polys)}
        for level in range(n):
            cross = self._partial_sum(block_comps, mu_comps).comps[level]
            target = self.normalized_beta.comps[level] - cross
            poly_part, terms = partial_fractions(target)
            for term in terms:
                if term[0] not in index_of:
                    raise AssertionError("block peeling produced an unexpected prime")
                block_comps[index_of[term[0]]][level] = pole_part(term)
            mu_comps[level] = RationalFunction(poly_part)
        deltas = [WittVector(p, block_comps[i]) for i in range(len(prime_polys))]
        mu_vec = WittVector(p, mu_comps)
        if self._partial_sum(block_comps, mu_comps) != self.normalized_beta:
            raise AssertionError("block decomposition failed to reassemble the generator")
        return deltas, mu_vec

    def _partial_sum(self, block_comps, mu_comps):
        p = self.p
        acc = WittVector(p, mu_comps)
        for comps in block_comps.values():
            acc = acc.add(WittVector(p, comps))
        return acc


def _pth_root_mod(v: Polynomial, prime: Polynomial) -> Polynomial:
    """The p-th root of v in the residue field F_q[T]/(P)."""
    fld = v.field
    exp = fld.p ** (fld.s * prime.degree - 1)
    return v.modpow(exp, prime)


def hasse_normalize(beta: RationalFunction):
    """Return (beta', c) with beta' = beta + wp(c) in normal form.

    Pole orders divisible by p are peeled by subtracting wp(u / P^(e/p))
    with u^p = -Q mod P; polynomial degrees divisible by p are peeled with
    wp(b T^(deg/p)), b^p = -leading; a leftover constant is moved to the
    smallest-encoded representative of its coset modulo a^p - a.
    """
    fld = beta.field
    p = fld.p
    correction = RationalFunction.zero(fld)
    poly_part, terms = partial_fractions(beta)

    normal_terms = []
    for prime, e, q_num in terms:
        frac = pole_part((prime, e, q_num))
        while True:
            if frac.is_zero():
                e = 0
                break
            e = frac.den.degree // prime.degree
            if e % p != 0:
                break
            u = _pth_root_mod(-(frac.num % prime), prime)
            step = RationalFunction(u, prime ** (e // p))
            correction = correction + step
            frac = frac + step.wp()
        if e > 0:
            normal_terms.append(frac)

    g = poly_part
    while not g.is_constant() and g.degree % p == 0:
        b = fld.pth_root_val(fld.neg_val(g.leading()))
        step_poly = Polynomial(fld, (0,) * (g.degree // p) + (b,))
        correction = correction + RationalFunction(step_poly)
        g = g + step_poly.frobenius() - step_poly

    if g.is_constant() and g.constant_coeff():
        v = g.constant_coeff()
        rep = fld.wp_coset_rep_val(v)
        if rep != v:
            a = fld.wp_solve_val(fld.sub_val(rep, v))
            assert a is not None
            correction = correction + RationalFunction.const(fld, a)
            g = Polynomial.const(fld, rep)

    normalized = RationalFunction(g)
    for frac in normal_terms:
        normalized = normalized + frac
    return normalized, correction


def _component_is_normal(beta: RationalFunction) -> bool:
    fld = beta.field
    p = fld.p
    poly_part, terms = partial_fractions(beta)
    for _, e, _ in terms:
        if e % p == 0:
            return False
    if poly_part.is_constant():
        c = poly_part.constant_coeff()
        return not (c and fld.in_wp_image_val(c))
    return poly_part.degree % p != 0


def is_normal_form(beta: WittVector) -> bool:
    return all(_component_is_normal(c) for c in beta.comps)


def _single_level_vector(fld, p, n, level, value):
    comps = [RationalFunction.zero(fld)] * n
    comps[level] = value
    return WittVector(p, comps)


def witt_normalize(gen: AswGenerator, bound: int = MAX_WITT_LENGTH) -> AswNormalForm:
    """Level-by-level Schmid normalization with a checkable certificate.

    At each level the component is Hasse-normalized and the correction is
    applied through full Witt arithmetic as wp of a single-level vector;
    lower levels are provably untouched (asserted), higher levels absorb
    the carry terms and are normalized in their own turn.
    """
    beta = gen.beta
    n = beta.n
    if n > bound:
        raise ValueError(f"Witt length {n} exceeds bound {bound}")
    fld = gen.field
    p = beta.p
    running = beta
    corrections = []
    for level in range(n):
        comp_norm, c_i = hasse_normalize(running.comps[level])
        if not c_i.is_zero():
            v = _single_level_vector(fld, p, n, level, c_i)
            corrections.append(v)
            running = running.add(v.wp())
            if running.comps[level] != comp_norm:
                raise AssertionError("level isolation failed during normalization")
    certificate = WittVector.zero(p, n, like=RationalFunction.zero(fld))
    for v in corrections:
        certificate = certificate.add(v)

    prime_levels = {}
    mu = []
    for level in range(n):
        poly_part, terms = partial_fractions(running.comps[level])
        mu.append(poly_part)
        for prime, e, q_num in terms:
            prime_levels.setdefault(prime, {})[level] = (q_num, e)
    zero_poly = Polynomial.zero(fld)
    blocks = []
    for prime in sorted(prime_levels, key=lambda pp: (pp.degree, pp.to_int())):
        levels = tuple(prime_levels[prime].get(level, (zero_poly, 0)) for level in range(n))
        blocks.append(PrimeBlock(prime=prime, levels=levels))
    return AswNormalForm(
        n=n,
        primes=tuple(blocks),
        mu=tuple(mu),
        certificate=certificate,
        normalized_beta=running,
        source_beta=beta,
    ).validate()


def split_constants(gen: AswGenerator):
    """Split a normal-form generator as eps (+) gamma with constant eps.

    Requires every polynomial part to be constant (the shape with the
    infinite place unramified); raises NotNormalFormError otherwise.
    Returns (eps over F_q, gamma over F_q(T)) with eps (+) gamma = beta.
    """
    beta = gen.beta
    fld = gen.field
    p, n = beta.p, beta.n
    if not is_normal_form(beta):
        raise NotNormalFormError("split_constants requires a normalized generator")
    zero = RationalFunction.zero(fld)
    eps_comps = [zero] * n
    gam_comps = [zero] * n
    for level in range(n):
        cross = WittVector(p, eps_comps).add(WittVector(p, gam_comps)).comps[level]
        target = beta.comps[level] - cross
        poly_part, proper = target.poly_and_proper_parts()
        if not poly_part.is_constant():
            raise NotNormalFormError("split_constants requires constant polynomial parts")
        eps_comps[level] = RationalFunction(poly_part)
        gam_comps[level] = proper
    recombined = WittVector(p, eps_comps).add(WittVector(p, gam_comps))
    if recombined != beta:
        raise AssertionError("constant split failed to reassemble the generator")
    eps = WittVector(p, [FqElem(fld, c.num.constant_coeff()) for c in eps_comps])
    return eps, WittVector(p, gam_comps)


def conductor_exponent(lambdas, p: int) -> int:
    """M_n = max_i p^(n-i) * lambda_i, cross-checked against the recursion
    M_i = max(p*M_(i-1), lambda_i)."""
    lams = list(lambdas)
    if not lams:
        raise ValueError("empty pole-order vector")
    if lams[0] <= 0:
        raise ValueError("the first pole order must be positive (the prime must ramify)")
    for lam in lams:
        if lam < 0 or (lam > 0 and lam % p == 0):
            raise ValueError(f"pole order {lam} must be zero or coprime to {p}")
    n = len(lams)
    closed = max(p ** (n - 1 - i) * lam for i, lam in enumerate(lams))
    rec = lams[0]
    for lam in lams[1:]:
        rec = max(p * rec, lam)
    if closed != rec:
        raise AssertionError("conductor closed form disagrees with its recursion")
    return closed


def conductor_power(lambdas, p: int) -> int:
    """Exponent of the conductor itself: the conductor is P^(M_n + 1)."""
    return conductor_exponent(lambdas, p) + 1


def infinity_behavior(nf: AswNormalForm) -> InfinityBehavior:
    """Splitting type of the infinite place from the polynomial parts."""
    p, n = nf.p, nf.n
    t = n
    for i, f_i in enumerate(nf.mu):
        if not f_i.is_constant():
            t = i
            break
    s = 0
    while s < t and nf.mu[s].is_zero():
        s += 1
    behavior = InfinityBehavior(s=s, t=t, e=p ** (n - t), f=p ** (t - s), g=p**s)
    assert behavior.e * behavior.f * behavior.g == p**n
    return behavior


def is_single_ramified_form(nf: AswNormalForm, prime: Polynomial) -> bool:
    """True when the form is supported at `prime` alone, with no constant or
    polynomial parts, and the prime ramifies from the first level."""
    if any(not f_i.is_zero() for f_i in nf.mu):
        return False
    if len(nf.primes) != 1 or nf.primes[0].prime != prime:
        return False
    return nf.primes[0].levels[0][1] > 0


def is_single_ramified_at_infinity(nf: AswNormalForm) -> bool:
    """The single-ramified-prime conditions transported to the infinite place:
    no finite poles, every polynomial part vanishes at 0, each part is zero
    or has degree coprime to p, and the first part is nonconstant."""
    if nf.primes:
        return False
    p = nf.p
    for f_i in nf.mu:
        if f_i.is_zero():
            continue
        # nonzero with zero constant term forces degree >= 1
        if f_i.constant_coeff() != 0 or f_i.degree % p == 0:
            return False
    return not nf.mu[0].is_constant()


def _subst_inverse_t(rf: RationalFunction) -> RationalFunction:
    fld = rf.field
    x = RationalFunction(Polynomial.one(fld), Polynomial.T(fld))

    def horner(poly):
        acc = RationalFunction.zero(fld)
        for c in reversed(poly.coeffs):
            acc = acc * x + RationalFunction.const(fld, c)
        return acc

    den = horner(rf.den)
    return horner(rf.num) / den


def invert_variable(gen: AswGenerator) -> AswGenerator:
    """Substitute T -> 1/T' in every component; an involution, and it does
    not renormalize (compose with witt_normalize for that)."""
    beta = gen.beta
    return AswGenerator(WittVector(beta.p, (_subst_inverse_t(c) for c in beta.comps)))
