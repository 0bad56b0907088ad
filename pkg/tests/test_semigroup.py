import pytest

from pcentral.cayley import builtin_group, exponent
from pcentral.errors import NotPGroupError
from pcentral.semigroup import exponent_semigroup, exprank, is_power_endomorphism


def test_abelian_endomorphism():
    G = builtin_group("abelian", 4, 4)
    assert all(is_power_endomorphism(G, m) for m in range(9))


def test_2g2_examples(g2_p2):
    assert not is_power_endomorphism(g2_p2, 4)
    assert is_power_endomorphism(g2_p2, 8)


def test_negative_power_rejected(q8):
    with pytest.raises(ValueError):
        is_power_endomorphism(q8, -1)


def test_semigroup_abelian():
    E = exponent_semigroup(builtin_group("abelian", 4, 4), 2)
    assert (E.e, E.s, E.exprank) == (0, 0, 0)
    assert str(E) == "Z"
    assert all(n in E for n in range(-5, 20))


def test_semigroup_2g2_p2(g2_p2):
    E = exponent_semigroup(g2_p2, 2)
    assert (E.e, E.s, E.exprank) == (2, 3, 1)
    assert str(E) == "8Z u (8Z+1)"
    assert E.verified_period == 16
    assert [n for n in range(16) if n in E] == [0, 1, 8, 9]


def test_semigroup_2g2_p3(g2_p3):
    E = exponent_semigroup(g2_p3, 3)
    assert (E.e, E.s, E.exprank) == (1, 1, 0)
    assert str(E) == "3Z u (3Z+1)"


@pytest.mark.parametrize("family,params,p,rank", [("quaternion", (8,), 2, 1), ("dihedral", (8,), 2, 1)])
def test_semigroup_controls(family, params, p, rank):
    # E(Q8) = E(D8) = 4Z u (4Z+1) and exp G/Z = 2
    E = exponent_semigroup(builtin_group(family, *params), p)
    assert E.modulus == 4 and E.exprank == rank


def test_exprank_values(g2_p2, g2_p3):
    assert exprank(builtin_group("abelian", 3, 9), 3) == 0
    assert exprank(g2_p2, 2) == 1
    assert exprank(g2_p3, 3) == 0


def test_requires_p_group():
    with pytest.raises(NotPGroupError):
        exponent_semigroup(builtin_group("cyclic", 6), 2)


@pytest.mark.parametrize("name", ["g2_p2", "g2_p3", "q8"])
def test_membership_periodic_in_exponent(name, request):
    G = request.getfixturevalue(name)
    e = exponent(G)
    for n in range(0, e + 1):
        assert is_power_endomorphism(G, n) == is_power_endomorphism(G, n + e)
