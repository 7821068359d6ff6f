import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from milnorkit.census import L, V, DiskCensus, base_census, census
from milnorkit.errors import InvalidInputError
from milnorkit.laurent import ONE, T, ZERO, LaurentZ2, nullspace_gf2, rank_gf2
from milnorkit.pearl import (
    HFRanks,
    PearlComplex,
    build_pearl_complex,
    deck_shift,
    hf_ranks,
    lifted_complex,
    quotient_hf,
    symplectic_cohomology_nonzero,
    transfer_check,
)
from milnorkit.quotient import admissible

laurent = st.builds(LaurentZ2, st.lists(st.integers(-6, 6), max_size=6))


@settings(max_examples=60)
@given(a=laurent, b=laurent, c=laurent)
def test_laurent_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + a == ZERO
    assert a * ONE == a


@settings(max_examples=40)
@given(a=laurent, k=st.integers(-5, 5))
def test_laurent_shift_is_multiplication(a, k):
    assert a.shift(k) == a * LaurentZ2.monomial(k)
    assert (a * T).at_one() == a.at_one()


def test_laurent_repr_and_coeffs():
    x = LaurentZ2([0, 2, 2, 3])
    assert x == LaurentZ2([0, 3])
    assert repr(x) == "1 + t^3"
    assert LaurentZ2.from_coeffs({1: 3, 2: 2}) == T


def test_gf2_linear_algebra():
    m = np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    assert rank_gf2(m) == 2
    k = nullspace_gf2(m)
    assert k.shape == (1, 3)
    assert not np.any((m @ k[0]) % 2)
    assert rank_gf2(np.zeros((0, 0))) == 0


@pytest.mark.parametrize("n", sorted(oracles.HF_RANKS))
def test_hf_ranks(n):
    assert hf_ranks(n) == HFRanks(*oracles.HF_RANKS[n])


def test_clifford_differential():
    pc = build_pearl_complex(census(0))
    assert pc.d("m") == {"s_L": T}
    assert pc.d("s_V") == {"w": T}
    assert pc.d("s_L") == {}
    assert pc.metadata["dichotomy_completed"] is True


@pytest.mark.parametrize("n", range(0, 11))
def test_complex_is_graded_differential(n):
    pc = build_pearl_complex(census(n))
    assert pc.is_differential()
    assert pc.grading_defects() == []


@pytest.mark.parametrize("n", [1, 4])
def test_vanishing_c_gives_morse_homology_in_every_degree(n):
    pc = build_pearl_complex(census(n))
    assert [pc.degree_rank(d) for d in range(4)] == [2, 2, 2, 2]
    assert pc.degree_rank(5) == pc.degree_rank(3)


def test_clifford_homology_vanishes_in_every_degree():
    pc = build_pearl_complex(census(0))
    assert all(pc.degree_rank(d) == 0 for d in range(-3, 5))


@pytest.mark.parametrize(
    "entries,c",
    [({L: 1}, {"V": 0, "L": 1}), ({V + L: 1}, {"V": 1, "L": 1}), ({L: 1, V + L: 1}, {"V": 1, "L": 0})],
)
def test_any_nonzero_c_kills_homology(entries, c):
    pc = build_pearl_complex(DiskCensus(0, entries))
    assert pc.metadata["c_class"] == c
    assert pc.is_differential()
    assert pc.ranks() == HFRanks(0, 0)


def test_non_maslov_two_entries_are_rejected():
    with pytest.raises(InvalidInputError):
        build_pearl_complex(DiskCensus(0, {V: 1}))


def test_pearl_complex_shape_check():
    with pytest.raises(InvalidInputError):
        PearlComplex([("m", 2)], [[ZERO, ZERO]])


@pytest.mark.parametrize("p,q", [(p.p, p.q) for p in admissible(20)])
def test_transfer(p, q):
    assert transfer_check(p, q)
    assert quotient_hf(p, q) == HFRanks(2, 2)
    assert symplectic_cohomology_nonzero(p, q)


def test_lifted_complex_structure():
    lc = lifted_complex(5, 2)
    assert deck_shift(5, 2) == 3
    assert lc.is_differential() and lc.is_equivariant()
    assert lc.c_upstairs == (0, 0)
    assert np.array_equal(np.linalg.matrix_power(lc.rotation.astype(int), 5), np.eye(20, dtype=int))


def test_lift_of_clifford_torus_loses_the_top_class():
    # with c != 0 upstairs the disk part kills every top chain
    lc = lifted_complex(3, 1, upstairs=census(0))
    assert lc.is_differential()
    assert nullspace_gf2(lc.top_block()).shape[0] == 0


@pytest.mark.parametrize("p,q", [(4, 2), (3, 3), (1, 0), (5, 7)])
def test_quotient_params_validated(p, q):
    with pytest.raises(InvalidInputError):
        quotient_hf(p, q)
