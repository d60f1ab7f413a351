import random

import pytest

from wittcount.fields import field
from wittcount.polys import Polynomial
from wittcount.rationals import RationalFunction, parse_rational
from wittcount.witt import WittVector, ghost_map, parse_witt, witt_tables

F2 = field(2, 1)
F4 = field(2, 2)
F9 = field(3, 2)


def wv2(*texts):
    return WittVector(2, tuple(parse_rational(F2, t) for t in texts))


def test_tables_frozen_second_components():
    t2 = witt_tables(2, 2)
    x1, x2, y1, y2 = range(4)

    def mono(**kw):
        e = [0, 0, 0, 0]
        for k, v in kw.items():
            e[{"x1": x1, "x2": x2, "y1": y1, "y2": y2}[k]] = v
        return tuple(e)

    assert t2.sum_polys[0].terms == {mono(x1=1): 1, mono(y1=1): 1}
    assert t2.sum_polys[1].terms == {mono(x2=1): 1, mono(y2=1): 1, mono(x1=1, y1=1): -1}

    t3 = witt_tables(3, 2)
    assert t3.sum_polys[1].terms == {
        mono(x2=1): 1,
        mono(y2=1): 1,
        mono(x1=2, y1=1): -1,
        mono(x1=1, y1=2): -1,
    }


def test_tables_cached_and_bounded():
    assert witt_tables(2, 3) is witt_tables(2, 3)
    with pytest.raises(ValueError):
        witt_tables(2, 5)
    with pytest.raises(ValueError):
        witt_tables(2, 0)


@pytest.mark.parametrize("p,n", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)])
def test_ghost_compatibility_symbolic(p, n):
    assert witt_tables(p, n).verify_ghost_compatibility()


def test_add_frozen_examples():
    one0 = WittVector(2, (F2.elem(1), F2.elem(0)))
    assert one0.add(one0) == WittVector(2, (F2.elem(0), F2.elem(1)))
    assert one0.neg() == WittVector(2, (F2.elem(1), F2.elem(1)))
    assert one0.int_mul(4).is_zero()
    zero = WittVector.zero(2, 2, like=F2.zero())
    assert one0.add(zero) == one0


def test_int_mul_frozen_example():
    x = wv2("1/T", "0")
    assert x.int_mul(3) == wv2("1/T", "1/T^2")
    assert x.int_mul(0).is_zero()
    assert x.int_mul(-1) == x.neg()


def test_wp_frozen_examples():
    zero = WittVector.zero(2, 2, like=F2.zero())
    assert zero.wp().is_zero()
    one0 = WittVector(2, (F2.elem(1), F2.elem(0)))
    assert one0.wp().is_zero()
    y = WittVector(2, (parse_rational(F2, "1/T"),))
    assert y.wp() == WittVector(2, (parse_rational(F2, "(T+1)/T^2"),))  # 1/T^2 + 1/T


def test_ghost_map():
    assert ghost_map(WittVector(2, (1, 0))) == (1, 1)
    assert ghost_map(WittVector(2, (1, 1))) == (1, 3)
    with pytest.raises(ValueError):
        ghost_map(WittVector(2, (F2.elem(1), F2.elem(0))))
    with pytest.raises(ValueError):
        WittVector(2, (1, 1)).frobenius()


def test_ghost_is_ring_homomorphism():
    rng = random.Random(17)
    for p, n in ((2, 3), (3, 3), (5, 2)):
        for _ in range(150):
            x = WittVector(p, tuple(rng.randrange(-9, 10) for _ in range(n)))
            y = WittVector(p, tuple(rng.randrange(-9, 10) for _ in range(n)))
            gx, gy = ghost_map(x), ghost_map(y)
            assert ghost_map(x.add(y)) == tuple(a + b for a, b in zip(gx, gy))
            assert ghost_map(x.mul(y)) == tuple(a * b for a, b in zip(gx, gy))
            assert ghost_map(x.neg()) == tuple(-a for a in gx)


def _rand_fq_vector(rng, fld, n):
    return WittVector(fld.p, tuple(fld.elem(rng.randrange(fld.q)) for _ in range(n)))


def _rand_rf(rng, fld):
    num = Polynomial(fld, [rng.randrange(fld.q) for _ in range(rng.randrange(4))])
    den = Polynomial.zero(fld)
    while den.is_zero():
        den = Polynomial(fld, [rng.randrange(fld.q) for _ in range(rng.randrange(1, 4))])
    return RationalFunction(num, den)


def _rand_rf_vector(rng, fld, n):
    return WittVector(fld.p, tuple(_rand_rf(rng, fld) for _ in range(n)))


@pytest.mark.parametrize("fld,n", [(F2, 3), (F4, 3), (F9, 2)])
def test_ring_laws_sampled_fq(fld, n):
    rng = random.Random(23)
    zero = WittVector.zero(fld.p, n, like=fld.zero())
    for _ in range(120):
        x, y, z = (_rand_fq_vector(rng, fld, n) for _ in range(3))
        assert x.add(y) == y.add(x)
        assert x.add(y.add(z)) == x.add(y).add(z)
        assert x.add(zero) == x
        assert x.add(x.neg()) == zero
        assert x.mul(y) == y.mul(x)
        assert x.mul(y.mul(z)) == x.mul(y).mul(z)
        assert x.mul(y.add(z)) == x.mul(y).add(x.mul(z))


def test_ring_laws_sampled_rational():
    rng = random.Random(29)
    zero = WittVector.zero(2, 2, like=RationalFunction.zero(F2))
    for _ in range(60):
        x, y, z = (_rand_rf_vector(rng, F2, 2) for _ in range(3))
        assert x.add(y) == y.add(x)
        assert x.add(y.add(z)) == x.add(y).add(z)
        assert x.add(x.neg()) == zero
        assert x.mul(y.add(z)) == x.mul(y).add(x.mul(z))


def test_wp_additive():
    rng = random.Random(31)
    for fld, n in ((F2, 3), (F4, 2), (F9, 2)):
        for _ in range(60):
            x, y = _rand_fq_vector(rng, fld, n), _rand_fq_vector(rng, fld, n)
            assert x.add(y).wp() == x.wp().add(y.wp())


def test_p_power_torsion():
    rng = random.Random(37)
    for fld, n in ((F2, 3), (F9, 2)):
        for _ in range(40):
            x = _rand_fq_vector(rng, fld, n)
            assert x.int_mul(fld.p**n).is_zero()
    for _ in range(20):
        x = _rand_rf_vector(random.Random(41), F2, 3)
        assert x.int_mul(8).is_zero()


def test_zero_prefix_addition_law():
    rng = random.Random(43)
    for _ in range(60):
        n = 3
        beta = _rand_rf_vector(rng, F2, n)
        for i in range(n):
            comps = [RationalFunction.zero(F2)] * n
            for j in range(i, n):
                comps[j] = _rand_rf(rng, F2)
            x = WittVector(2, comps)
            total = beta.add(x)
            for j in range(i):
                assert total.comps[j] == beta.comps[j]
            assert total.comps[i] == beta.comps[i] + x.comps[i]


def test_witt_decomposition_identity():
    # x = (x1,0,..) (+) (0,x2,0,..) (+) ... (+) (0,..,x_(j+1),..,x_n)
    rng = random.Random(47)
    for _ in range(30):
        n = 3
        x = _rand_rf_vector(rng, F2, n)
        zero = RationalFunction.zero(F2)
        for j in range(n):
            parts = []
            for k in range(j):
                comps = [zero] * n
                comps[k] = x.comps[k]
                parts.append(WittVector(2, comps))
            tail = [zero] * j + list(x.comps[j:])
            parts.append(WittVector(2, tail))
            acc = parts[0]
            for part in parts[1:]:
                acc = acc.add(part)
            assert acc == x


def test_mixed_vectors_rejected():
    with pytest.raises(ValueError):
        WittVector(2, (F2.elem(1), F4.elem(1)))
    with pytest.raises(ValueError):
        WittVector(3, (F2.elem(1), F2.elem(0)))
    with pytest.raises(ValueError):
        WittVector(2, (F2.elem(1),)).add(WittVector(2, (F4.elem(1),)))
    with pytest.raises(ValueError):
        WittVector(2, (1, 2)).add(WittVector(2, (1, 2, 3)))


def test_parse_witt_roundtrip():
    v = parse_witt(F2, 2, "(1/T, (T+1)/T^2)")
    assert v.comps[0] == parse_rational(F2, "1/T")
    assert str(v) == "(1/T, (T+1)/T^2)"
