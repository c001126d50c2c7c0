from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import SMALL_TYPES, rationals
from krconverse.errors import PreconditionError
from krconverse.rootdata import (
    apply_word,
    build,
    dominant_rep,
    from_dynkin,
    is_dominant,
    pairing,
    reflect,
    to_dynkin,
)

POSITIVE_COUNTS = {"A": lambda n: n * (n + 1) // 2, "B": lambda n: n * n, "C": lambda n: n * n, "D": lambda n: n * (n - 1)}


def test_a2_cartan_and_roots():
    R = build("A", 2)
    assert R.cartan == ((2, -1), (-1, 2))
    assert len(R.positive_roots) == 3


def test_g2_cartan_and_roots():
    R = build("G", 2)
    assert R.cartan == ((2, -1), (-3, 2))
    assert len(R.positive_roots) == 6


def test_d4_has_twelve_positive_roots():
    assert len(build("D", 4).positive_roots) == 12


@pytest.mark.parametrize("fam,n", [("A", 3), ("A", 5), ("B", 3), ("C", 4), ("D", 5)])
def test_positive_root_counts(fam, n):
    assert len(build(fam, n).positive_roots) == POSITIVE_COUNTS[fam](n)


@pytest.mark.parametrize("fam,n,count", [("E", 6, 36), ("E", 7, 63), ("E", 8, 120), ("F", 4, 24), ("G", 2, 6)])
def test_exceptional_root_counts(fam, n, count):
    assert len(build(fam, n).positive_roots) == count


def test_bc_keeps_doubled_roots():
    R = build("BC", 2)
    assert len(R.positive_roots) == 6
    assert len(R.reduced_positive_roots) == 4
    assert all(R.cartan[i][i] == 2 for i in range(2))


@pytest.mark.parametrize("fam,n", [("A", 0), ("B", 1), ("C", 2), ("D", 3), ("E", 5), ("E", 9), ("F", 3), ("G", 3), ("Q", 2)])
def test_invalid_types_rejected(fam, n):
    with pytest.raises(PreconditionError):
        build(fam, n)


def test_pairing_examples():
    R = build("A", 2)
    a1 = (1, 0)
    assert pairing(R, a1, R.positive_coroots[R.positive_roots.index(a1)]) == 2
    assert pairing(R, a1, (0, 1)) == -1
    mu = from_dynkin(R, (1, 1))
    assert pairing(R, mu, (1, 1)) == 2


def test_reflect_examples():
    R = build("A", 2)
    assert reflect(R, 0, (1, 0)) == (-1, 0)
    w2 = from_dynkin(R, (0, 1))
    assert reflect(R, 0, w2) == w2
    assert reflect(R, 0, (1, 1)) == (0, 1)


def test_dominant_rep_examples():
    R = build("A", 2)
    # s_1(-alpha_1) = alpha_1 has labels (2, -1), so one more reflection is needed
    d, word = dominant_rep(R, (-1, 0))
    assert d == (1, 1) and tuple(word) == (0, 1)
    w1 = from_dynkin(R, (1, 0))
    assert dominant_rep(R, w1)[0] == w1 and not dominant_rep(R, w1)[1]
    d, word = dominant_rep(R, (-1, -1))
    assert d == (1, 1)
    assert apply_word(R, word, (-1, -1)) == d


def test_fundamental_weights_are_dual():
    for fam, n in SMALL_TYPES:
        R = build(fam, n)
        for j, w in enumerate(R.fundamental_weights):
            assert tuple(to_dynkin(R, w)) == tuple(int(i == j) for i in range(n))


@pytest.mark.parametrize("fam,n", SMALL_TYPES)
def test_rho_identity(fam, n):
    R = build(fam, n)
    total = tuple(sum(r[i] for r in R.reduced_positive_roots) for i in range(n))
    assert all(v == 2 for v in to_dynkin(R, total))


@pytest.mark.parametrize("fam,n", SMALL_TYPES)
def test_cartan_shape(fam, n):
    R = build(fam, n)
    for i in range(n):
        for j in range(n):
            assert (R.cartan[i][j] == 2) if i == j else (R.cartan[i][j] <= 0)
            assert R.symmetrizer[i] * R.cartan[i][j] == R.symmetrizer[j] * R.cartan[j][i]


@st.composite
def typed_vector(draw):
    fam, n = draw(st.sampled_from(SMALL_TYPES))
    x = tuple(draw(st.lists(rationals(), min_size=n, max_size=n)))
    return build(fam, n), x


@given(typed_vector(), st.data())
def test_reflection_is_involution(rx, data):
    R, x = rx
    i = data.draw(st.integers(0, R.rank - 1))
    assert reflect(R, i, reflect(R, i, x)) == tuple(Fraction(v) for v in x)
    assert pairing(R, reflect(R, i, x), R.positive_coroots[R.positive_roots.index(R.simple_roots[i])]) == -pairing(
        R, x, R.positive_coroots[R.positive_roots.index(R.simple_roots[i])]
    )


@given(typed_vector(), st.data())
def test_dominant_rep_is_orbit_invariant(rx, data):
    R, x = rx
    d, word = dominant_rep(R, x)
    assert is_dominant(R, d)
    assert apply_word(R, word, x) == d
    i = data.draw(st.integers(0, R.rank - 1))
    assert dominant_rep(R, reflect(R, i, x))[0] == d


@given(typed_vector())
def test_dynkin_round_trip(rx):
    R, x = rx
    assert from_dynkin(R, to_dynkin(R, x)) == tuple(Fraction(v) for v in x)
