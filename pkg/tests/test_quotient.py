from fractions import Fraction
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from milnorkit.errors import InvalidInputError
from milnorkit.quotient import (
    AbelianGroup,
    HandleDiagram,
    PlumbingGraph,
    QuotientParams,
    act,
    admissible,
    bpq_diagram,
    continued_fraction_value,
    cover_diagram,
    determinant,
    fixed_points_on_fibre,
    handle_homology,
    hj_coefficients,
    hj_expansion,
    invariant_function,
    is_fixed,
    lens_boundary,
    plumbing_matrix,
    random_fibre_points,
)


@pytest.mark.parametrize("pq", sorted(oracles.HJ))
def test_hj_hand_values(pq):
    assert hj_expansion(QuotientParams(*pq)).b == oracles.HJ[pq]


def test_plumbing_5_3():
    g = hj_expansion(QuotientParams(5, 3))
    m = plumbing_matrix(g)
    assert m == [[-2, 1, 0], [1, -5, 1], [0, 1, -3]]
    assert determinant(m) == -25


@settings(max_examples=80)
@given(p=st.integers(2, 60), q=st.integers(1, 59))
def test_hj_round_trip(p, q):
    if not (q < p and gcd(p, q) == 1):
        return
    params = QuotientParams(p, q)
    b = hj_expansion(params).b
    assert all(x >= 2 for x in b)
    assert continued_fraction_value(b) == Fraction(p * p, p * q - 1)
    assert abs(determinant(plumbing_matrix(hj_expansion(params)))) == p * p


def test_hj_coefficients_of_integer():
    assert hj_coefficients(7, 1) == [7]
    with pytest.raises(InvalidInputError):
        hj_coefficients(1, 2)


def test_determinant_general_matches_numpy():
    rng = np.random.default_rng(1)
    for _ in range(10):
        m = rng.integers(-4, 5, size=(5, 5)).tolist()
        assert determinant(m) == round(np.linalg.det(np.array(m, dtype=float)))


@pytest.mark.parametrize("p", range(2, 31))
def test_handle_homology(p):
    for q in range(1, p):
        if gcd(p, q) != 1:
            continue
        params = QuotientParams(p, q)
        assert handle_homology(bpq_diagram(params)).to_json() == dict(
            zip(("H1", "H2", "chi"), oracles.bpq_homology(p))
        )
        assert handle_homology(cover_diagram(params)).to_json() == dict(
            zip(("H1", "H2", "chi"), oracles.cover_homology(p))
        )


def test_handle_homology_mixed():
    d = HandleDiagram(2, (((2, 0), -1), ((0, 4), 3)))
    h = handle_homology(d)
    assert h.H1 == AbelianGroup(0, (2, 4))
    assert str(h.H1) == "Z/2 + Z/4"
    assert handle_homology(HandleDiagram(2)).H1 == AbelianGroup(2)
    assert str(AbelianGroup(1, (3,))) == "Z + Z/3"


@pytest.mark.parametrize(
    "args",
    [(-1, ()), (1, (((1, 2), 0),)), (1, ((1,),)), (1, ((1.5, 0),))],
)
def test_handle_diagram_validation(args):
    with pytest.raises(InvalidInputError):
        HandleDiagram(*args)


def test_lens_boundary():
    assert lens_boundary(QuotientParams(3, 1)) == (9, (9, 2))
    assert lens_boundary(QuotientParams(7, 4)) == (49, (49, 27))


@pytest.mark.parametrize("p,q", [(4, 2), (3, 3), (2, 0), (1, 1), (5, -1), (True, 1), (3.0, 1)])
def test_params_validation(p, q):
    with pytest.raises(InvalidInputError):
        QuotientParams(p, q)


def test_plumbing_validation():
    with pytest.raises(InvalidInputError):
        PlumbingGraph(())
    with pytest.raises(InvalidInputError):
        PlumbingGraph((-2, -1))


def test_admissible_enumeration():
    got = [(x.p, x.q) for x in admissible(5)]
    assert got == [(2, 1), (3, 1), (3, 2), (4, 1), (4, 3), (5, 1), (5, 2), (5, 3), (5, 4)]


@pytest.mark.parametrize("p,q", [(2, 1), (5, 2), (8, 3)])
def test_action_preserves_fibre_and_is_free(p, q):
    params = QuotientParams(p, q)
    rng = np.random.default_rng(p * 10 + q)
    pts = random_fibre_points(params, 50, rng)
    for pt in pts:
        assert abs(invariant_function(params, pt) - 1) < 1e-9
        assert np.allclose(act(params, p, pt), pt)
        for k in range(1, p):
            img = act(params, k, pt)
            assert abs(invariant_function(params, img) - 1) < 1e-9
            assert not is_fixed(params, k, pt)
    assert all(fixed_points_on_fibre(params, k) == [] for k in range(1, p))
    with pytest.raises(InvalidInputError):
        fixed_points_on_fibre(params, p)
