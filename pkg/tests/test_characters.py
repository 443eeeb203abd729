import cmath
import math
from fractions import Fraction

import numpy as np
import pytest

from cannonball.averages import APQuery, sum_a_ap
from cannonball.characters import (
    ap_reconstruct, character_residue_sum, characters, euler_phi, factorize, twisted_sum,
    twisted_value, unit_group_structure, unit_root,
)
from cannonball.exact import a


def phi_oracle(q):
    return sum(1 for r in range(q) if math.gcd(r, q) == 1) if q > 1 else 1


@pytest.mark.parametrize("q, expected", [(1, []), (12, [(2, 2), (3, 1)]), (97, [(97, 1)]),
                                         (360, [(2, 3), (3, 2), (5, 1)])])
def test_factorize(q, expected):
    assert factorize(q) == expected


def test_euler_phi():
    for q in range(1, 200):
        assert euler_phi(q) == phi_oracle(q)


@pytest.mark.parametrize("q", list(range(1, 41)) + [64, 81, 100, 120])
def test_group_structure_spans(q):
    g = unit_group_structure(q)
    assert g.order == euler_phi(q)
    assert len(g.discrete_log_table) == euler_phi(q)
    assert all(math.gcd(r, q) == 1 for r in g.discrete_log_table)


def test_generator_conventions():
    assert unit_group_structure(4).generators == ((3, 2),)
    assert unit_group_structure(16).generators == ((15, 2), (5, 4))
    assert unit_group_structure(7).generators == ((3, 6),)
    assert unit_group_structure(9).generators == ((2, 6),)


def test_unit_root_quarter_turns_exact():
    assert unit_root(Fraction(1, 4)) == 1j
    assert unit_root(Fraction(-1, 2)) == -1
    assert unit_root(Fraction(5, 4)) == 1j
    assert abs(unit_root(Fraction(1, 3)) - cmath.exp(2j * math.pi / 3)) < 1e-15


def test_mod3_characters():
    chi0, chi1 = characters(3)
    assert chi0.principal and not chi1.principal
    assert [chi1(n) for n in range(6)] == [0, 1, -1, 0, 1, -1]
    assert chi1.ident == "3:1/2"


def test_principal_first_and_count():
    for q in range(1, 30):
        chars = characters(q)
        assert len(chars) == euler_phi(q)
        assert chars[0].principal
        assert [c.index for c in chars] == list(range(len(chars)))
        assert len({c.ident for c in chars}) == len(chars)


@pytest.mark.parametrize("q", [5, 8, 12, 15, 24])
def test_multiplicative_and_periodic(q):
    for chi in characters(q):
        for m in range(1, 3 * q):
            assert abs(chi(m + q) - chi(m)) < 1e-12
            for n in range(1, q + 1):
                assert abs(chi(m * n) - chi(m) * chi(n)) < 1e-12


@pytest.mark.parametrize("q", range(1, 25))
def test_orthogonality(q):
    tabs = np.array([c.table() for c in characters(q)])
    gram = tabs @ tabs.conj().T
    assert np.allclose(gram, euler_phi(q) * np.eye(len(tabs)), atol=1e-9)
    sums = character_residue_sum(q)
    assert abs(sums[0] - euler_phi(q)) <= 1e-10
    assert all(abs(s) <= 1e-10 for s in sums[1:])


def test_twisted_value_brute():
    x = 500
    for chi in characters(7):
        brute = sum(chi(n) * a(n) for n in range(1, x + 1))
        assert abs(twisted_value(chi, x) - brute) < 1e-8


@pytest.mark.parametrize("b, q", [(1, 3), (2, 5), (5, 12), (7, 10)])
def test_ap_reconstruct(b, q):
    x = 10**4
    direct = sum_a_ap(APQuery(b, q, x))
    assert abs(ap_reconstruct(b, q, x) - direct) / direct < 1e-9


def test_ap_reconstruct_rejects_nonunit():
    with pytest.raises(ValueError):
        ap_reconstruct(2, 4, 100)


def test_twisted_main_term():
    r = twisted_sum(characters(3)[0], 10**4)
    assert r.main_term == pytest.approx(2 * 1e10 / (15 * math.sqrt(3)))
    assert abs(r.value.real / r.main_term - 1) < 0.05
    r1 = twisted_sum(characters(3)[1], 10**4)
    assert r1.main_term == 0.0 and r1.residual_abs == abs(r1.value)
