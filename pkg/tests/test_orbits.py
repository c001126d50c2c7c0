from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import rationals
from krconverse.errors import PreconditionError
from krconverse.lattices import quotient_M
from krconverse.orbits import (
    conv_membership,
    conv_membership_lp,
    enumerate_Pmu,
    oracle_phi_Pmu,
    pmu_bruteforce,
    projected_hull_membership,
    weyl_orbit,
)
from krconverse.engine import rhs_set
from krconverse.rootdata import build, from_dynkin, reflect

A2 = build("A", 2)
MU = (1, 1)


def xm(v, J=(0,)):
    return quotient_M(A2, J).class_of((v, 0) if J == (0,) else (0, v))


def test_orbit_examples():
    assert len(weyl_orbit(A2, MU)) == 6
    assert weyl_orbit(A2, (0, 0)).elements == {(0, 0)}
    A3 = build("A", 3)
    assert len(weyl_orbit(A3, from_dynkin(A3, (0, 1, 0)))) == 6


def test_orbit_rejects_non_dominant():
    with pytest.raises(PreconditionError):
        weyl_orbit(A2, (-1, 0))


def test_conv_examples():
    assert conv_membership(A2, MU, (0, 0))
    assert not conv_membership(A2, MU, (2, 1))
    assert conv_membership(A2, MU, (1, 1))


def test_pmu_examples():
    P = enumerate_Pmu(A2, MU)
    assert len(P) == 7 and (0, 0) in P.points
    assert len(enumerate_Pmu(A2, from_dynkin(A2, (1, 0)))) == 3
    assert enumerate_Pmu(build("B", 3), (0, 0, 0)).points == {(0, 0, 0)}


def test_projected_hull_examples():
    for method in ("lp", "dominance"):
        assert projected_hull_membership(A2, (0,), MU, xm(0), method)
        assert projected_hull_membership(A2, (0,), MU, xm(3), method)
        assert not projected_hull_membership(A2, (0,), MU, xm(6), method)


def test_oracle_examples():
    assert oracle_phi_Pmu(A2, (0,), MU) == {xm(-3), xm(0), xm(3)}
    assert oracle_phi_Pmu(A2, (1,), MU) == {xm(-3, (1,)), xm(0, (1,)), xm(3, (1,))}
    assert oracle_phi_Pmu(A2, (1,), (0, 0)) == {xm(0, (1,))}


@pytest.mark.parametrize("fam,n", [("A", 2), ("A", 3), ("B", 2), ("G", 2), ("C", 3)])
def test_pmu_matches_bruteforce(fam, n):
    R = build(fam, n)
    for mu in product(range(2), repeat=n):
        m = from_dynkin(R, mu)
        P = enumerate_Pmu(R, m)
        assert P.points == pmu_bruteforce(R, m)
        assert weyl_orbit(R, m).elements <= P.points
        for x in P.points:
            for i in range(n):
                assert reflect(R, i, x) in P.points


@pytest.mark.parametrize("fam,n", [("A", 2), ("A", 3), ("B", 3), ("G", 2)])
def test_easy_inclusion(fam, n):
    R = build(fam, n)
    for mu in product(range(3 if n < 3 else 2), repeat=n):
        m = from_dynkin(R, mu)
        for J in [(0,), (n - 1,)]:
            assert oracle_phi_Pmu(R, J, m) <= rhs_set(R, J, m)


@given(st.sampled_from([("A", 2), ("A", 3), ("B", 2), ("G", 2), ("B", 3)]), st.data())
def test_dominance_criterion_matches_lp(t, data):
    R = build(*t)
    mu = from_dynkin(R, tuple(data.draw(st.integers(0, 2)) for _ in range(R.rank)))
    x = tuple(data.draw(rationals(-3, 3, 4)) for _ in range(R.rank))
    assert conv_membership(R, mu, x) == conv_membership_lp(R, mu, x)


@given(st.integers(-9, 9))
def test_projection_methods_agree(v):
    R = build("A", 3)
    mu = from_dynkin(R, (1, 0, 1))
    q = quotient_M(R, (1,))
    for c in product(range(-2, 3), repeat=1):
        cls = q.class_of((v, 0, c[0]))
        assert projected_hull_membership(R, (1,), mu, cls, "lp") == projected_hull_membership(
            R, (1,), mu, cls, "dominance"
        )
