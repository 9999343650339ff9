import random

import pytest

from genus2covers.errors import (NotSeparable, RationalBaseUnsupported,
                                 WrongDegree)
from genus2covers.fields import Field
from genus2covers.poly import (Poly, distinct_degree_profile,
                               lagrange_interpolate, resultant,
                               roots_in_field, splitting_field_and_roots)


def test_arithmetic_and_divmod():
    F = Field.prime(13)
    rng = random.Random(1)
    for _ in range(100):
        a = Poly(F, [F.rand(rng) for _ in range(rng.randrange(1, 8))])
        b = Poly(F, [F.rand(rng) for _ in range(rng.randrange(1, 6))])
        if b.is_zero():
            continue
        q, r = a.divmod(b)
        assert q * b + r == a
        assert r.degree < b.degree or r.is_zero()


def test_xgcd_bezout():
    F = Field.prime(101)
    rng = random.Random(2)
    for _ in range(50):
        a = Poly(F, [F.rand(rng) for _ in range(5)])
        b = Poly(F, [F.rand(rng) for _ in range(4)])
        if a.is_zero() or b.is_zero():
            continue
        g, s, t = a.xgcd(b)
        assert s * a + t * b == g
        assert (a % g).is_zero() and (b % g).is_zero()


def test_resultant_degree_one():
    # Res(g, h) = lc(g)^deg(h) * prod h(alpha) over roots alpha of g, so the
    # degree-1 case is h(a) = a - b
    F = Field.prime(31)
    rng = random.Random(3)
    for _ in range(20):
        a, b = F.rand(rng), F.rand(rng)
        g = Poly(F, [F.neg(a), 1])  # x - a
        h = Poly(F, [F.neg(b), 1])  # x - b
        assert resultant(g, h) == F.sub(a, b)


def test_resultant_frozen_example():
    # Res(x^2-1, x^2-4) = (1-2)(1+2)(-1-2)(-1+2) = 9, frozen from the
    # root-difference product
    F = Field.prime(1009)
    g = Poly(F, [-1, 0, 1])
    h = Poly(F, [-4, 0, 1])
    assert resultant(g, h) == F.from_int(9)


def test_resultant_matches_root_products():
    F = Field.prime(103)
    rng = random.Random(4)
    for _ in range(20):
        aroots = [F.rand(rng) for _ in range(3)]
        broots = [F.rand(rng) for _ in range(2)]
        lg, lh = F.rand(rng), F.rand(rng)
        if F.is_zero(lg) or F.is_zero(lh):
            continue
        g = Poly(F, [lg])
        for r in aroots:
            g = g * Poly(F, [F.neg(r), 1])
        h = Poly(F, [lh])
        for r in broots:
            h = h * Poly(F, [F.neg(r), 1])
        expect = F.mul(F.pw(lg, 2), F.pw(lh, 3))
        for ra in aroots:
            for rb in broots:
                expect = F.mul(expect, F.sub(ra, rb))
        assert resultant(g, h) == expect


def test_splitting_x6_minus_1_over_f7():
    F = Field.prime(7)
    f = Poly(F, [-1, 0, 0, 0, 0, 0, 1])
    K, roots = splitting_field_and_roots(f)
    assert K.order == 7
    assert roots == [1, 2, 3, 4, 5, 6]


def test_splitting_irreducible_sextic():
    F = Field.prime(5)
    # find an irreducible sextic by scanning constants
    for c in range(1, 5):
        f = Poly(F, [c, 1, 0, 0, 0, 0, 1])
        if distinct_degree_profile(f) == [6]:
            break
    else:
        pytest.skip("no irreducible candidate found")
    K, roots = splitting_field_and_roots(f)
    assert K.order == 5 ** 6
    assert len(roots) == 6
    # the six roots form one Frobenius orbit
    orbit = {roots[0]}
    cur = roots[0]
    for _ in range(5):
        cur = K.frobenius(cur)
        orbit.add(cur)
    assert orbit == set(roots)


def test_splitting_random_sextics_lcm_and_evaluation():
    F = Field.prime(101)
    rng = random.Random(5)
    done = 0
    while done < 10:
        f = Poly(F, [F.rand(rng) for _ in range(6)] + [1 + rng.randrange(100)])
        if f.degree != 6 or not f.is_separable():
            continue
        done += 1
        degs = distinct_degree_profile(f)
        K, roots = splitting_field_and_roots(f)
        import math
        expect = 1
        for e in degs:
            expect = expect * e // math.gcd(expect, e)
        assert K.deg == expect
        assert len(roots) == 6 and len(set(roots)) == 6
        fk = f.map_field(K)
        for w in roots:
            assert K.is_zero(fk.evaluate(w))
        # lc(f) * prod (x - w) re-expands to f exactly
        prod = Poly(K, [f.map_field(K).lc()])
        for w in roots:
            prod = prod * Poly(K, [K.neg(w), K.one()])
        assert prod == fk


def test_splitting_rejects_bad_inputs():
    F = Field.prime(11)
    with pytest.raises(WrongDegree):
        splitting_field_and_roots(Poly(F, [1, 1, 1]))
    # (x-1)^2 * quartic is not separable
    sq = Poly(F, [1, 9, 1]) * Poly(F, [1, 0, 0, 0, 1])  # (x-1)^2 would be [1,-2,1]
    f = Poly(F, [1, -2, 1]) * Poly(F, [3, 0, 0, 0, 1])
    with pytest.raises(NotSeparable):
        splitting_field_and_roots(f)
    Q = Field.rationals()
    with pytest.raises(RationalBaseUnsupported):
        splitting_field_and_roots(Poly(Q, [1, 0, 0, 0, 0, 0, 1]))
    del sq


def test_roots_in_given_field_deterministic():
    F = Field.prime(11)
    f = Poly(F, [10, 0, 0, 0, 0, 0, 1])  # x^6 - 1
    K, roots = splitting_field_and_roots(f)
    again = roots_in_field(f, K)
    assert roots == again


def test_lagrange_interpolation():
    F = Field.prime(101)
    rng = random.Random(6)
    pts = [(F.from_int(i), F.rand(rng)) for i in range(5)]
    g = lagrange_interpolate(F, pts)
    assert g.degree <= 4
    for x, y in pts:
        assert g.evaluate(x) == y


def test_compose_shift():
    F = Field.prime(17)
    f = Poly(F, [1, 2, 3, 4])
    g = f.compose_shift(F.from_int(5))
    for x in range(17):
        assert g.evaluate(F.from_int(x)) == f.evaluate(F.from_int(x + 5))
