import dataclasses
import functools
import itertools

import pytest

from cyclicpairs.errors import DomainError, ResourceError
from cyclicpairs.family import (
    D_value,
    Nq_value,
    alpha_params,
    certify,
    check_condition_A1,
    check_condition_i,
    check_condition_ii,
    classes_mod_Nq,
    field_pair_label,
    residue_tables,
    search,
    verify_certificate,
)
from cyclicpairs.ffield import FieldElem, make_tower
from cyclicpairs.realquad import fundamental_unit

from conftest import naive_lucas, naive_roots

P_GRID = [5, 13, 29, 37, 53]
ODD = [m for m in range(-49, 50, 2)]


def units():
    for p in P_GRID:
        u = fundamental_unit(p)
        yield p, u.t, u.b


# ------------------------------------------------------------ alpha


def test_alpha_small():
    a = alpha_params(5, 1, 1, 1, 1)
    assert (a.T, a.N) == (1, -1)
    assert a.coeffs == (1, -1, 1, -1, 1)


def test_alpha_reduced_examples():
    assert alpha_params(5, 1, 1, 7, 11).reduced(11) == (1, 4, 3, 4, 1)
    assert alpha_params(13, 3, 1, 15, 3).reduced(53) == (1, 30, 26, 30, 1)
    assert alpha_params(13, 3, 1, 15, 55).reduced(53) == (1, 30, 26, 30, 1)


@pytest.mark.parametrize("p,t,b", list(units()))
def test_alpha_identities_on_grid(p, t, b):
    for m, n in itertools.product(ODD, range(1, 50, 2)):
        Fm, Lm = naive_lucas(t, m)
        Fn, Ln = naive_lucas(t, n)
        a = alpha_params(p, t, b, m, n)
        Y = Lm * Fn - 2 * Fm
        assert a.T == Ln * Lm
        assert a.N == Fm * b * b * p * Y + 4
        assert (a.N + 4) ** 2 - 4 * a.T**2 == Lm**2 * b * b * p * Y**2
        if n > 3:
            assert D_value(t, b, m, n) < 0
            assert Lm * Y * b > 0


def test_alpha_rejects_even():
    with pytest.raises(DomainError):
        alpha_params(5, 1, 1, 2, 1)
    with pytest.raises(DomainError):
        alpha_params(5, 1, 1, 1, 4)


def test_alpha_irreducibility_flags():
    assert alpha_params(13, 3, 1, 15, 55).irreducible_over_Q
    # m = n = 1 for t = 1: alpha = (1 - sqrt 5)/2, not rational
    assert alpha_params(5, 1, 1, 1, 1).in_Ok_not_Z


# ------------------------------------------------------- D and N_q


def test_D_examples():
    assert D_value(3, 1, 15, 55) == -35297949870282964311195913270006746882588864
    for n in range(1, 60, 2):
        assert D_value(1, 1, 1, n) == 2 - naive_lucas(1, n)[0]
    for t, b in [(1, 1), (3, 1), (12, 2), (39, 5)]:
        assert D_value(t, b, 1, 1) == t * (2 - t) * b
    with pytest.raises(DomainError):
        D_value(1, 1, 2, 3)


def test_D_known_factors(golden_tables):
    D = D_value(3, 1, 15, 55)
    for prime, e in golden_tables["disc_13_15_55"]["factors"].items():
        assert D % int(prime) ** e == 0


@pytest.mark.parametrize("p,q,expected", [(5, 61, 300), (5, 11, 100), (13, 53, 2028)])
def test_Nq(p, q, expected):
    u = fundamental_unit(p)
    assert Nq_value(p, q, u.t, u.b) == expected


def test_Nq_errors():
    with pytest.raises(DomainError):
        Nq_value(5, 5, 1, 1)
    with pytest.raises(DomainError):
        Nq_value(5, 2, 1, 1)
    with pytest.raises(DomainError):
        Nq_value(5, 15, 1, 1)
    with pytest.raises(DomainError):
        Nq_value(37, 2, 12, 2)


# ------------------------------------------------------- conditions


def test_condition_i_examples():
    assert check_condition_i(5, 1, 1, 7, 31).holds
    assert check_condition_i(13, 3, 1, 15, 55).holds
    res = check_condition_i(5, 1, 1, 7, 33)
    assert not res.holds and res.residue != 0
    with pytest.raises(DomainError):
        check_condition_i(5, 1, 1, 8, 31)


@pytest.mark.parametrize("p,t,b", list(units()))
def test_condition_i_equals_p5_threshold(p, t, b):
    for m, n in itertools.product(range(1, 40, 2), range(1, 80, 2)):
        a = alpha_params(p, t, b, m, n)
        threshold = ((a.N + 4) ** 2 - 4 * a.T**2) % p**5 == 0
        assert check_condition_i(p, t, b, m, n).holds == threshold


def test_condition_A1_examples():
    assert check_condition_A1(5, 1, 1, 1, 97)
    assert not check_condition_A1(5, 1, 1, 1, 1)
    assert check_condition_A1(13, 3, 1, 15, 55)


def test_condition_A1_float_cross_check():
    import math

    for p, t, b in units():
        for m, n in itertools.product(range(1, 12, 2), range(1, 12, 2)):
            Fm, Lm = naive_lucas(t, m)
            Fn, Ln = naive_lucas(t, n)
            alpha = (Ln * Lm + (Lm * Fn - 2 * Fm) * b * math.sqrt(p)) / 2
            if abs(alpha * alpha - 4) > 1e-6 * max(1, alpha * alpha):
                a = alpha_params(p, t, b, m, n)
                V = (a.N + 4) ** 2 - 4 * a.T**2
                assert check_condition_A1(p, t, b, m, n) == (alpha * alpha > 4 and V > 0)


@pytest.mark.parametrize(
    "args,i,a",
    [((5, 1, 1, 7, 31, 11), 1, 5), ((13, 3, 1, 15, 55, 53), 1, 22), ((5, 1, 1, 1, 97, 61), 1, 10)],
)
def test_condition_ii_examples(args, i, a):
    res = check_condition_ii(*args)
    assert res.i == i and res.a == FieldElem(1, (a,))


@functools.lru_cache(maxsize=None)
def _powers(q, i, p):
    F = make_tower(q).field(i)
    return frozenset(F.pow(x, p) for x in F.elements() if any(x))


def condition_ii_oracle(p, t, b, m0, n0, q, levels=(1, 2)):
    """Exhaustive roots and enumerated p-th powers."""
    tower = make_tower(q)
    coeffs = alpha_params(p, t, b, m0, n0).reduced(q)
    for i in levels:
        F = tower.field(i)
        powers = _powers(q, i, p)
        for r in naive_roots(coeffs, F):
            if any(r) and r not in powers:
                return i, r
    return None


@pytest.mark.parametrize("p,q", [(5, 11), (5, 19), (13, 53), (13, 79)])
def test_condition_ii_against_oracle(p, q):
    u = fundamental_unit(p)
    for m0, n0 in itertools.product(range(1, 26, 4), range(1, 30, 6)):
        got = check_condition_ii(p, u.t, u.b, m0, n0, q, degrees=(1, 2))
        want = condition_ii_oracle(p, u.t, u.b, m0, n0, q)
        assert (None if got is None else (got.i, got.a.coeffs)) == want


def test_condition_ii_absent_when_no_pth_roots_of_unity():
    # ord of 3 mod 13 is 3, so 13 divides none of 3 - 1, 3^2 - 1, 3^4 - 1
    u = fundamental_unit(13)
    for m0, n0 in itertools.product(range(1, 40, 2), range(1, 40, 2)):
        assert check_condition_ii(13, u.t, u.b, m0, n0, 3) is None


def test_condition_ii_rejects_q_dividing():
    with pytest.raises(DomainError):
        check_condition_ii(5, 1, 1, 1, 1, 5)


# ---------------------------------------------------- certificates


@pytest.mark.parametrize("args", [(13, 15, 55, 53), (5, 7, 31, 11), (5, 1, 97, 61)])
def test_certify_passes(args):
    cert = certify(*args)
    assert cert.passed and cert.failed_check is None
    assert cert.condition_i and cert.pth_power_check and cert.parity_check
    assert all(verify_certificate(cert).values())


def test_certify_failures():
    cert = certify(5, 7, 33, 11)
    assert not cert.passed and cert.failed_check == "condition_i"
    assert all(verify_certificate(cert).values())
    assert certify(5, 8, 31, 11).failed_check == "parity"
    assert certify(13, 15, 55, 3).failed_check == "condition_ii"


def test_certify_domain_errors():
    for args, check in [((7, 1, 1, 11), "p = 5 mod 8"), ((5, 1, 1, 12), "q prime"),
                        ((13, 15, 55, 13), "q does not divide 2bp"), ((5, 1, 1, 2), "q does not divide 2bp")]:
        with pytest.raises(DomainError) as exc:
            certify(*args)
        assert exc.value.check == check


def test_verify_detects_tampering():
    cert = certify(13, 15, 55, 53)
    for change in [
        {"condition_i_witness": 5},
        {"a": FieldElem(1, (23,))},
        {"t": 4},
        {"Nq": 100},
        {"quartic_mod_q": (1, 30, 26, 30, 2)},
        {"failed_check": "condition_i"},
        {"n0": 57},
    ]:
        bad = dataclasses.replace(cert, **change)
        assert not all(verify_certificate(bad).values()), change


CERTS = [(5, 7, 31, 11), (5, 17, 11, 11), (13, 15, 55, 53), (13, 93, 3, 53), (5, 1, 97, 61), (5, 1, 203, 61)]


@pytest.mark.parametrize("p,m0,n0,q", CERTS)
def test_stability_modulo_Nq(p, m0, n0, q):
    cert = certify(p, m0, n0, q)
    u = fundamental_unit(p)
    samples = 0
    for j, k in itertools.product(range(-2, 3), range(0, 5)):
        m, n = m0 + j * cert.Nq, n0 + k * cert.Nq
        if n <= 3:
            continue
        assert check_condition_i(p, u.t, u.b, m, n).holds
        assert alpha_params(p, u.t, u.b, m, n).reduced(q) == cert.quartic_mod_q
        samples += 1
    assert samples >= 20


# ----------------------------------------------------------- search


def _brute_classes(p, q, Mm, Mn, m0s=None):
    u = fundamental_unit(p)
    tower = make_tower(q)
    out = []
    for m0 in range(1, Mm, 2):
        if m0s is not None and m0 not in m0s:
            continue
        for n0 in range(1, Mn, 2):
            if check_condition_i(p, u.t, u.b, m0, n0).holds and check_condition_ii(
                p, u.t, u.b, m0, n0, q, tower
            ):
                out.append((m0, n0))
    return out


def test_search_p5_q11_complete():
    res = search(5, [11])
    g = res.grid(11)
    assert (g.m_modulus, g.n_modulus, g.Nq) == (50, 100, 100)
    assert res.pairs(11) == _brute_classes(5, 11, 50, 100)
    assert all(h.certificate.passed for h in res.hits)


def test_search_table_slices(golden_tables):
    for key, p, q in [("p5_q11", 5, 11), ("p13_q53", 13, 53)]:
        gold = golden_tables[key]
        res = search(p, [q])
        tabs = {t.slice: t for t in residue_tables(res, q)}
        tab = tabs[tuple(gold["slice"])]
        assert (tab.m_modulus, tab.n_modulus) == (gold["m_modulus"], gold["n_modulus"])
        assert [list(x) for x in tab.pairs] == gold["pairs"]
        assert [list(x) for x in tab.m_witness] == gold["m_witness"]
        assert [list(x) for x in tab.n_witness] == gold["n_witness"]
        anchored = search(p, [q], anchor=tuple(gold["slice"]))
        assert [list(x) for x in anchored.pairs()] == gold["pairs"]


def test_search_m0_filter_example():
    res = search(5, [61], m0_classes=[1])
    assert res.grid(61).Nq == 300
    assert res.pairs() == [(1, 97), (1, 103), (1, 197), (1, 203)]
    assert res.pairs() == _brute_classes(5, 61, 300, 300, m0s={1})


def test_search_periodicity_of_classes():
    res = search(5, [11])
    for h in res.hits[:4]:
        assert certify(5, h.m0 + h.m_modulus, h.n0 - h.n_modulus, 11).passed
        assert certify(5, h.m0 - 3 * h.m_modulus, h.n0 + 7 * h.n_modulus, 11).passed


def test_classes_mod_Nq():
    res = search(5, [11])
    lifted = classes_mod_Nq(res, 11)
    assert len(lifted) == len(set(lifted)) == len(res.hits) * (100 // 50) * (100 // 100)
    assert all(certify(5, m, n, 11).passed for m, n in lifted[:8])


def test_search_deterministic_and_multi_q():
    a = search(5, [61, 11], m0_classes=[1, 7])
    b = search(5, [11, 61], m0_classes=[7, 1])
    assert [h.key for h in a.hits] == [h.key for h in b.hits]
    assert [g.q for g in a.grids] == [11, 61]


def test_search_errors():
    with pytest.raises(DomainError):
        search(5, [])
    with pytest.raises(DomainError):
        search(5, [5])
    with pytest.raises(DomainError):
        search(5, [15])
    with pytest.raises(ResourceError):
        search(13, [53], scan_bound=1000)


# ------------------------------------------------------ field pairs


def test_field_pair_label():
    assert (field_pair_label(97).K, field_pair_label(97).K_prime) == ("D", "pD")
    assert (field_pair_label(55).K, field_pair_label(55).K_prime) == ("pD", "D")
    assert field_pair_label(1).K == "D"
    assert field_pair_label(-1).K == "pD"
    with pytest.raises(DomainError):
        field_pair_label(4)
