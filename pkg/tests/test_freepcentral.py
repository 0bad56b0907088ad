import math

import numpy as np
import pytest

from pcentral.cayley import (
    abelian_invariants,
    center,
    exponent,
    is_p_central,
    lambda_series,
    lambda_term,
    omega,
    subgroup_closure,
)
from pcentral.commutators import cumulative_count, witt_count
from pcentral.errors import ResourceLimitError
from pcentral.freepcentral import (
    FpcScheme,
    construct_free_pcentral,
    fpc_enumerate,
    fpc_multiply,
    fpc_order_exponent,
)


@pytest.mark.parametrize(
    "p,r,n,moduli,order",
    [
        (2, 2, 1, (4, 4), 16),
        (2, 2, 2, (16, 16, 4), 1024),
        (3, 2, 2, (9, 9, 3), 243),
        (2, 3, 1, (4, 4, 4), 64),
    ],
)
def test_construction(p, r, n, moduli, order):
    s = construct_free_pcentral(p, r, n)
    assert s.moduli == moduli
    assert s.order == order


@pytest.mark.parametrize("p,r,n", [(2, 2, 3), (3, 3, 2), (5, 2, 4), (2, 4, 3)])
def test_order_matches_witt_formula(p, r, n):
    q = 4 if p == 2 else p
    s = construct_free_pcentral(p, r, n)
    expected = q ** sum(witt_count(r, w) * (n + 1 - w) for w in range(1, n + 1))
    assert s.order == expected


@pytest.mark.parametrize("args", [(4, 2, 1), (2, 1, 1), (2, 2, 0)])
def test_bad_parameters(args):
    with pytest.raises(ValueError):
        construct_free_pcentral(*args)


def test_multiply_examples():
    s = construct_free_pcentral(2, 2, 2)
    a, b = s.generator(1), s.generator(2)
    assert fpc_multiply(b, a).exponents == (1, 1, 1)
    x = b * a * b
    assert x * s.identity() == x
    assert (a**15 * a).exponents[0] == 0
    assert (a**15 * a).is_identity()


def test_encode_decode_roundtrip():
    s = construct_free_pcentral(2, 2, 2)
    for idx in range(0, s.order, 37):
        assert s.encode(s.decode(idx)) == idx
    assert s.encode((1, 0, 0)) == 64
    assert s.decode(0) == (0, 0, 0)


@pytest.mark.parametrize(
    "p,r,n,expected", [(2, 2, 1, (16, 4)), (2, 2, 2, (1024, 16)), (3, 2, 1, (9, 3)), (3, 2, 2, (243, 9))]
)
def test_order_exponent(p, r, n, expected, request):
    s = construct_free_pcentral(p, r, n)
    assert fpc_order_exponent(s) == expected
    # cross-check against the enumerated table
    G = fpc_enumerate(s)
    assert (G.order, exponent(G)) == expected


def test_enumeration_cap():
    with pytest.raises(ResourceLimitError) as err:
        fpc_enumerate(construct_free_pcentral(2, 2, 2), cap=100)
    assert "1024" in str(err.value)
    assert err.value.required == 1024


def test_enumerate_1g2(g1_p2):
    assert g1_p2.order == 16
    assert abelian_invariants(g1_p2) == (4, 4)


def test_enumerate_2g2_p3(g2_p3):
    s = construct_free_pcentral(3, 2, 2)
    assert g2_p3.order == 243 and not g2_p3.is_abelian
    assert g2_p3.element_orders[s.basis(2).index] == 3


def test_table_agrees_with_multiply(g2_p2):
    s = construct_free_pcentral(2, 2, 2)
    rng = np.random.default_rng(3)
    for i, j in rng.integers(0, s.order, size=(300, 2)):
        x, y = s.element(s.decode(int(i))), s.element(s.decode(int(j)))
        assert g2_p2.table[i, j] == (x * y).index


def test_layer_sizes(g2_p2):
    lam = lambda_series(g2_p2, 2)
    assert [H.order for H in lam] == [1024, 64, 1]
    # layer i has order 4^(b_i), b_i counting basic commutators of weight <= i
    assert lam[0].order // lam[1].order == 4 ** cumulative_count(2, 1) == 16
    assert lam[1].order // lam[2].order == 4 ** cumulative_count(2, 2) == 64


@pytest.mark.parametrize("fixture,p", [("g1_p2", 2), ("g2_p2", 2), ("g1_p3", 3), ("g2_p3", 3)])
def test_p_central(fixture, p, request):
    assert is_p_central(request.getfixturevalue(fixture), p)


def test_enumerated_1g3_p_central():
    assert is_p_central(fpc_enumerate(construct_free_pcentral(2, 3, 1)), 2)


@pytest.mark.parametrize("fixture,n", [("g1_p2", 1), ("g2_p2", 2)])
def test_omega_correspondence(fixture, n, request):
    G = request.getfixturevalue(fixture)
    lam = lambda_series(G, 2)
    for i in range(0, n + 1):
        assert omega(G, 2, 2 * i) == lambda_term(lam, n + 1 - i)
    assert omega(G, 2, 2).order == 4 ** cumulative_count(2, n)


def test_fourth_power_kernel_is_lambda2(g2_p2):
    lam = lambda_series(g2_p2, 2)
    fourth = g2_p2.power_map(4)
    kernel = np.flatnonzero(lam[2].mask[fourth])
    assert np.array_equal(kernel, lam[1].elements)


def test_fourth_power_not_multiplicative_mod_lambda3(g2_p2):
    # x -> x^4 is not a homomorphism into lambda_2 / lambda_3 = lambda_2 here:
    # (ab)^4 = a^4 b^4 [b,a]^2 in 2G2 (exponent 6 reduced mod 4)
    s = construct_free_pcentral(2, 2, 2)
    a, b = s.generator(1), s.generator(2)
    assert ((a * b) ** 4).exponents == (4, 4, 2)
    assert (a**4 * b**4).exponents == (4, 4, 0)


def test_element_orders_divide_exponent(g2_p2, g2_p3):
    for G, e in ((g2_p2, 16), (g2_p3, 9)):
        assert np.all(e % G.element_orders == 0)


def test_center_order(g2_p2):
    assert center(g2_p2).order == 64


def test_generators_generate(g2_p2):
    s = construct_free_pcentral(2, 2, 2)
    H = subgroup_closure(g2_p2, [s.generator(1).index, s.generator(2).index])
    assert H.order == 1024


def test_scheme_name():
    assert FpcScheme(2, 2, 2).name == "2G2(p=2)"
    assert math.prod(FpcScheme(2, 2, 2).moduli) == 1024
