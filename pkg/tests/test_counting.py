import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wittcount.counting import (
    CountParams,
    NotStabilizedError,
    VerificationReport,
    ln1_bound,
    lemma42_ceil,
    lemma42_floor,
    oracle_as_classes,
    oracle_as_classes_by_conductor,
    oracle_asw_classes,
    oracle_asw_classes_detail,
    oracle_cyclic_subgroups,
    ratio_check,
    s_n,
    t1,
    telescoped_phi_sum,
    v_n,
    w,
)
from wittcount.fields import field
from wittcount.polys import CapExceededError, ResidueRing, canonical_prime, monic_irreducibles


def params(p, s, d, alpha, n):
    return CountParams(p=p, s=s, d=d, alpha=alpha, n=n)


def test_v_n_frozen_examples():
    assert v_n(params(2, 1, 1, 2, 1)) == 1
    assert v_n(params(2, 1, 1, 4, 1)) == 3
    assert v_n(params(2, 1, 1, 3, 2)) == 1


def test_v_n_zero_iff_alpha_small():
    for p, s in ((2, 1), (3, 1), (2, 2)):
        for n in (1, 2, 3):
            for alpha in range(1, 30):
                value = v_n(params(p, s, 1, alpha, n))
                assert (value == 0) == (alpha <= p ** (n - 1))


def test_v_n_monotone_in_alpha():
    for p, s, d in ((2, 1, 1), (3, 1, 2), (2, 2, 1)):
        for n in (1, 2, 3):
            values = [v_n(params(p, s, d, a, n)) for a in range(1, 40)]
            assert all(x <= y for x, y in zip(values, values[1:]))


def test_w_frozen_examples():
    assert w(3, params(2, 1, 1, 3, 1)) == 1
    assert w(1, params(2, 1, 1, 1, 1)) == 0
    assert w(5, params(2, 1, 1, 5, 1)) == 3
    with pytest.raises(ValueError):
        w(0, params(2, 1, 1, 1, 1))


def test_t1_frozen_examples():
    assert t1(3, params(2, 1, 1, 3, 1)) == 1
    assert t1(2, params(3, 1, 1, 2, 1)) == 1
    assert t1(1, params(2, 1, 1, 1, 1)) == 0


def test_s_n_frozen_examples():
    assert s_n(params(2, 1, 1, 3, 1)) == 1
    assert s_n(params(2, 1, 1, 3, 2)) == 2
    assert s_n(params(2, 1, 1, 1, 1)) == 0


@settings(max_examples=300, deadline=None)
@given(alpha=st.integers(-1000, 1000), s=st.integers(1, 10), p=st.sampled_from([2, 3, 5]))
def test_lemma42_property(alpha, s, p):
    assert lemma42_floor(alpha, s, p) == alpha // p ** (s + 1)
    assert lemma42_ceil(alpha, s, p) == -((-alpha) // p**s)


def test_lemma42_frozen():
    assert lemma42_ceil(7, 2, 2) == 2
    assert lemma42_floor(9, 1, 3) == 1
    assert lemma42_floor(0, 3, 2) == 0


def test_ratio_check_frozen():
    lhs, rhs = ratio_check(params(2, 1, 1, 3, 2))
    assert lhs == rhs == 1
    lhs, rhs = ratio_check(params(2, 1, 1, 5, 2))
    assert lhs == rhs == 2
    lhs, rhs = ratio_check(params(3, 1, 1, 4, 2))
    assert lhs == rhs
    with pytest.raises(ZeroDivisionError):
        ratio_check(params(2, 1, 1, 2, 3))  # v_2(floor(1/2)+1) = v_2(1) = 0
    with pytest.raises(ValueError):
        ratio_check(params(2, 1, 1, 3, 1))


def test_ln1_frozen():
    assert ln1_bound(params(2, 1, 1, 3, 1)) == 1
    assert ln1_bound(params(2, 1, 1, 5, 1)) == 2
    assert ln1_bound(params(2, 1, 1, 2, 1)) == 1
    with pytest.raises(ValueError):
        ln1_bound(params(2, 1, 1, 1, 1))


def test_telescoping():
    for r, s in ((1, 1), (2, 5), (3, 12), (1, 12)):
        telescoped_phi_sum(params(2, 1, 1, 1, 1), r, s)
        telescoped_phi_sum(params(3, 1, 2, 1, 1), r, s)


# -- cyclic subgroup oracle --

def test_oracle_cyclic_frozen_examples():
    assert oracle_cyclic_subgroups(params(2, 1, 1, 3, 2)) == 1
    assert oracle_cyclic_subgroups(params(2, 1, 1, 2, 1)) == 1
    assert oracle_cyclic_subgroups(params(3, 1, 1, 2, 1)) == 1
    assert oracle_cyclic_subgroups(params(2, 1, 1, 4, 1)) == 3


def test_oracle_cyclic_cap():
    with pytest.raises(CapExceededError):
        oracle_cyclic_subgroups(params(2, 1, 1, 6, 1), cap=50)


def test_oracle_cyclic_independent_of_prime_choice():
    # closed forms depend only on deg P; spot-check with a non-canonical prime
    fld = field(2, 1)
    other = monic_irreducibles(fld, 2)[-1]
    par = params(2, 1, 2, 3, 1)
    assert oracle_cyclic_subgroups(par, prime=other) == oracle_cyclic_subgroups(par) == v_n(par)


def test_oracle_cyclic_matches_residue_ring_orders():
    # cross-check the packed enumeration against the generic residue ring
    for p, s, d, alpha in ((2, 1, 1, 4), (3, 1, 1, 3), (2, 2, 1, 2), (2, 1, 2, 2)):
        fld = field(p, s)
        prime = canonical_prime(fld, d)
        ring = ResidueRing(prime**alpha)
        for n in (1, 2):
            by_order = sum(1 for u in ring.units() if ring.elem_order(u) == p**n)
            expected = by_order // (p ** (n - 1) * (p - 1))
            assert oracle_cyclic_subgroups(params(p, s, d, alpha, n)) == expected


def test_oracle_cyclic_agrees_with_formula_small_grid():
    for p, s in ((2, 1), (3, 1), (2, 2)):
        for d in (1, 2):
            for alpha in range(1, 5):
                if (p**s) ** (d * alpha) > 2**14:
                    continue
                for n in (1, 2):
                    par = params(p, s, d, alpha, n)
                    assert oracle_cyclic_subgroups(par) == v_n(par)


# -- degree-p class oracle --

def test_as_classes_frozen_examples():
    assert oracle_as_classes(params(2, 1, 1, 3, 1)) == 1
    assert oracle_as_classes(params(2, 1, 1, 5, 1)) == 3
    assert oracle_as_classes(params(3, 1, 1, 2, 1)) == 1


def test_as_classes_equal_t1():
    for p, s in ((2, 1), (3, 1)):
        for alpha in range(1, 7):
            assert oracle_as_classes(params(p, s, 1, alpha, 1)) == t1(alpha, params(p, s, 1, alpha, 1))


def test_as_classes_by_conductor():
    by_lam = oracle_as_classes_by_conductor(params(2, 1, 1, 6, 1))
    assert by_lam == {1: 1, 3: 2, 5: 4}
    # each bucket matches Phi(P^(lam - floor(lam/p)))/(p-1)
    from wittcount.polys import phi
    fld = field(2, 1)
    prime = canonical_prime(fld, 1)
    for lam, count in by_lam.items():
        assert count == phi(prime ** (lam - lam // 2))


# -- length-n class oracle --

def test_asw_classes_frozen_examples():
    detail = oracle_asw_classes_detail(params(2, 1, 1, 3, 2))
    assert detail.count == 1
    assert detail.candidates == 2
    assert detail.rounds <= 3
    assert oracle_asw_classes(params(2, 1, 1, 2, 2)) == 0
    assert oracle_asw_classes(params(2, 1, 1, 4, 1)) == 3


def test_asw_classes_match_v_n():
    for alpha in (2, 3, 4):
        par = params(2, 1, 1, alpha, 2)
        assert oracle_asw_classes(par) == v_n(par)


def test_asw_classes_n1_matches_as_classes():
    for alpha in range(1, 6):
        assert oracle_asw_classes(params(2, 1, 1, alpha, 1)) == \
            oracle_as_classes(params(2, 1, 1, alpha, 1))


def test_asw_classes_stabilization_reporting():
    with pytest.raises(NotStabilizedError):
        oracle_asw_classes(params(2, 1, 1, 4, 2), max_rounds=1)


def test_asw_classes_rejects_large_n():
    with pytest.raises(ValueError):
        oracle_asw_classes(params(2, 1, 1, 3, 4))


def test_ln1_bounds_oracle_growth():
    # the number of n-classes over a fixed (n-1)-class is at most
    # (1 + w(alpha))/p; checked on the saturated oracle counts
    for alpha in (3, 4, 5):
        delta = (alpha - 1) // 2 + 1
        upper = oracle_asw_classes(params(2, 1, 1, delta, 1))
        total = oracle_asw_classes(params(2, 1, 1, alpha, 2))
        if upper:
            assert total <= upper * ln1_bound(params(2, 1, 1, alpha, 1))


# -- report records --

def test_report_pass_fail_semantics():
    rec = VerificationReport.compare("x", {}, 3, 3)
    assert rec.passed() and rec.status == "pass"
    rec = VerificationReport.compare("x", {}, 3, 4)
    assert not rec.passed() and rec.status == "fail"
    rec = VerificationReport.skipped("x", {}, "cap")
    assert rec.status == "skipped" and not rec.passed()


def test_params_validation():
    with pytest.raises(ValueError):
        CountParams(2, 1, 1, 0, 1)
    with pytest.raises(ValueError):
        CountParams(2, 1, 0, 1, 1)
    assert CountParams(2, 2, 1, 1, 1).q == 4
