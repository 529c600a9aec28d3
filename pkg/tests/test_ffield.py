import itertools

import pytest
from hypothesis import given, settings, strategies as st

from cyclicpairs.errors import DomainError
from cyclicpairs.ffield import (
    GF,
    FieldElem,
    generator,
    is_irreducible,
    is_pth_power,
    least_irreducible,
    make_tower,
    poly_roots,
    pth_power_subgroup,
    quartic_roots,
)

from conftest import naive_roots


def naive_irreducible(f, q):
    """No factor of degree <= deg/2, by trial division over all monic polynomials."""
    d = len(f) - 1

    def rem(a, b):
        a = list(a)
        while len(a) >= len(b):
            c = a[-1]
            shift = len(a) - len(b)
            for j, bj in enumerate(b):
                a[shift + j] = (a[shift + j] - c * bj) % q
            a.pop()
        return a

    for k in range(1, d // 2 + 1):
        for lower in itertools.product(range(q), repeat=k):
            if not any(rem(f, lower + (1,))):
                return False
    return True


@pytest.mark.parametrize("q", [3, 5, 7])
@pytest.mark.parametrize("d", [2, 3, 4])
def test_rabin_against_trial_division(q, d):
    for lower in itertools.product(range(q), repeat=d):
        f = lower + (1,)
        assert is_irreducible(f, q) == naive_irreducible(f, q), f


def test_least_irreducible_is_least():
    for q in (3, 5, 11):
        for d in (2, 4):
            f = least_irreducible(q, d)
            for lower in itertools.product(range(q), repeat=d):
                if lower + (1,) == f:
                    break
                assert not (lower[0] and naive_irreducible(lower + (1,), q))


def test_tower_11():
    tower = make_tower(11)
    assert tower.f2 == (1, 0, 1)
    assert tower.f4 == (1, 0, 0, 4, 1)
    theta = FieldElem(4, tower.theta)
    # theta^2 + 1 = 0
    assert tower.eval_poly((1, 0, 1), theta).is_zero()


@pytest.mark.parametrize("q", [3, 11, 53])
def test_embedding_is_a_homomorphism(q):
    tower = make_tower(q)
    F2, F4 = tower.field(2), tower.field(4)
    elems = list(itertools.islice(F2.elements(), 0, None, max(1, q * q // 40)))
    for x, y in itertools.product(elems, repeat=2):
        ex, ey = tower.embed(F2.wrap(x), 4), tower.embed(F2.wrap(y), 4)
        assert tower.embed(F2.wrap(F2.mul(x, y)), 4).coeffs == F4.mul(ex.coeffs, ey.coeffs)
        assert tower.embed(F2.wrap(F2.add(x, y)), 4).coeffs == F4.add(ex.coeffs, ey.coeffs)


@pytest.mark.parametrize("level", [1, 2, 4])
def test_quartic_roots_example_11(level):
    tower = make_tower(11)
    roots = quartic_roots((1, 4, 3, 4, 1), tower, level)
    expected = [tower.embed(FieldElem(1, (r,)), level) for r in (5, 7, 8, 9)]
    assert roots == sorted(expected)


@pytest.mark.parametrize("q,level", [(3, 4), (5, 4), (7, 2), (11, 2), (11, 4)])
def test_quartic_roots_against_exhaustive(q, level):
    tower = make_tower(q)
    F = tower.field(level)
    for coeffs in [(1, 0, 0, 0, 1), (1, 1, 1, 1, 1), (1, 2, 3, 2, 1), (1, q - 1, 0, 1, 1), (1, 0, 2, 0, 1)]:
        got = [r.coeffs for r in quartic_roots(coeffs, tower, level)]
        assert got == naive_roots(coeffs, F)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 12), min_size=5, max_size=5).filter(lambda c: c[0] % 13))
def test_roots_property_13(coeffs):
    tower = make_tower(13)
    F2 = tower.field(2)
    got = [r.coeffs for r in quartic_roots(tuple(coeffs), tower, 2)]
    assert got == naive_roots(coeffs, F2)


def test_poly_roots_degenerate():
    F = GF(7, (0, 1))
    with pytest.raises(DomainError):
        poly_roots((0, 0, 1), 7, F)
    with pytest.raises(DomainError):
        poly_roots((0,), 7, F)


def test_pth_power_subgroups():
    assert pth_power_subgroup(61, 5) == [1, 11, 13, 14, 21, 29, 32, 40, 47, 48, 50, 60]
    assert pth_power_subgroup(53, 13) == [1, 23, 30, 52]
    assert pth_power_subgroup(11, 5) == [1, 10]


@pytest.mark.parametrize("q,p", [(11, 5), (61, 5), (53, 13), (29, 7)])
def test_is_pth_power_against_subgroup(q, p):
    tower = make_tower(q)
    group = set(pth_power_subgroup(q, p))
    for a in range(1, q):
        assert is_pth_power(FieldElem(1, (a,)), p, tower) == (a in group)
    with pytest.raises(DomainError):
        is_pth_power(FieldElem(1, (0,)), p, tower)


def test_is_pth_power_level2_against_enumeration():
    q, p = 11, 5
    tower = make_tower(q)
    F2 = tower.field(2)
    powers = {F2.pow(x, p) for x in F2.elements() if any(x)}
    for x in F2.elements():
        if any(x):
            assert is_pth_power(F2.wrap(x), p, tower) == (x in powers)


def test_generators():
    assert generator(5) == FieldElem(1, (2,))
    assert generator(7) == FieldElem(1, (3,))
    g9 = generator(3, 2)
    F9 = GF(3, least_irreducible(3, 2))
    assert F9.multiplicative_order(g9.coeffs) == 8


def test_field_arithmetic_axioms():
    F = GF(5, least_irreducible(5, 2))
    elems = list(F.elements())
    for x in elems:
        if any(x):
            assert F.mul(x, F.inv(x)) == F.one
        assert F.add(x, F.neg(x)) == F.zero
    assert F.pow(elems[7], F.order) == elems[7]


def test_make_tower_rejects():
    for q in (2, 9, 1):
        with pytest.raises(DomainError):
            make_tower(q)
