import pytest
from sympy import jacobi_symbol

from cyclicpairs.classgroup import (
    class_number,
    class_number_analytic,
    divisibility_probe,
    fundamental_discriminant,
    imag_quad_field,
    is_fundamental,
    kronecker_table,
)
from cyclicpairs.errors import DomainError


def brute_forms(disc):
    """Reduced forms by a plain triple loop."""
    N = -disc
    count = 0
    a = 1
    while 3 * a * a <= N:
        for b in range(-a + 1, a + 1):
            if (b * b + N) % (4 * a):
                continue
            c = (b * b + N) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            count += 1
        a += 1
    return count


KNOWN = {-3: 1, -4: 1, -7: 1, -8: 1, -11: 1, -15: 2, -20: 2, -23: 3, -47: 5, -71: 7, -163: 1, -199: 9}


@pytest.mark.parametrize("disc,h", sorted(KNOWN.items()))
def test_known_class_numbers(disc, h):
    assert class_number(disc) == h == class_number_analytic(disc)


def test_reduced_forms_against_triple_loop():
    for d in range(-3000, 0):
        if is_fundamental(d):
            assert class_number(d) == brute_forms(d)


def test_kronecker_against_sympy():
    for d in (-3, -4, -8, -15, -20, -23, -40, -104, -5923):
        chi = kronecker_table(d)
        for a in range(3, abs(d), 2):
            assert chi[a] == jacobi_symbol(d % a, a)
        # (d/2) depends on d mod 8
        expected = 0 if d % 2 == 0 else (1 if d % 8 in (1, 7) else -1)
        assert chi[2] == expected


def test_fundamental():
    assert [d for d in range(-30, 0) if is_fundamental(d)] == [-24, -23, -20, -19, -15, -11, -8, -7, -4, -3]
    assert fundamental_discriminant(-528) == -132
    assert fundamental_discriminant(-2640) == -660
    assert fundamental_discriminant(-3) == -3
    assert fundamental_discriminant(5 * 9) == 5
    with pytest.raises(DomainError):
        fundamental_discriminant(49)


def test_class_number_errors():
    for d in (-12, -1, 5, 0, -16):
        with pytest.raises(DomainError):
            class_number(d)
    with pytest.raises(DomainError):
        class_number(-(10**9) - 3)


def test_probe_infeasible_examples():
    assert divisibility_probe(13, 3, 1, 15, 55).status == "infeasible"
    assert divisibility_probe(5, 1, 1, 1, 97).status == "infeasible"


def test_probe_small():
    probe = divisibility_probe(5, 1, 1, 3, 9)
    assert probe.D.D_input == -528 and probe.D.fundamental_discriminant == -132
    assert probe.D.class_number == class_number(-132)
    assert probe.pD.class_number == class_number(-660)
    assert probe.status == "not_divisible"
    # over a budget the same field is reported infeasible
    assert imag_quad_field(-528, 5, budget=100).status == "infeasible"
    assert imag_quad_field(7, 5).reason == "not imaginary"


def test_probe_divisible_case():
    # h(-47) = 5
    f = imag_quad_field(-47, 5)
    assert f.status == "divisible"
