import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from milnorkit.census import (
    L,
    V,
    DiskCensus,
    ModelSection,
    TorusH1Class,
    base_census,
    binomial_census,
    boundary_class,
    c_class,
    census,
    glue,
    maslov,
    model_projection,
    model_section_eval,
    section_area,
    sections_through,
    symplectic_area,
    total_boundary,
)
from milnorkit.errors import InvalidInputError


def as_pairs(c):
    return {(cl.kV, cl.lL): k for cl, k in c.entries.items()}


@pytest.mark.parametrize("n", range(13))
def test_census_matches_binomial_oracle(n):
    c = census(n)
    assert as_pairs(c) == oracles.census(n)
    assert c == binomial_census(n)
    tb = total_boundary(c)
    assert (tb.kV, tb.lL) == oracles.total_boundary(n)


def test_base_census_is_clifford():
    assert as_pairs(base_census()) == {(0, 1): 1, (1, 1): 1}
    assert c_class(base_census()) == V


@pytest.mark.parametrize("n", range(1, 13))
def test_c_vanishes_for_n_positive(n):
    assert c_class(census(n)).is_zero()


@settings(max_examples=30, deadline=None)
@given(a=st.integers(0, 5), b=st.integers(0, 5), c=st.integers(0, 5))
def test_glue_is_associative(a, b, c):
    A, B, C = census(a), census(b), census(c)
    assert glue(glue(A, B), C) == glue(A, glue(B, C))
    assert glue(A, B) == census(a + b + 1)


def test_glue_with_empty_is_empty():
    assert not glue(DiskCensus(-1, {}), base_census())


def test_census_validation():
    with pytest.raises(InvalidInputError):
        census(-1)
    with pytest.raises(InvalidInputError):
        DiskCensus(0, {(0, 1): 1})
    with pytest.raises(InvalidInputError):
        DiskCensus(0, {L: -1})
    with pytest.raises(OverflowError):
        DiskCensus(0, {L: 2**63})


def test_maslov_and_area():
    assert maslov(V) == 0
    assert maslov(V + L) == 2
    assert symplectic_area(2 * V + L, 6.0) == 6.0
    with pytest.raises(InvalidInputError):
        symplectic_area(L, 0.0)


def test_class_arithmetic():
    assert str(2 * V + L) == "2V + L"
    assert str(TorusH1Class(0, 0)) == "0"
    assert (3 * V + L).mod2() == V + L


def test_model_sections_are_sections():
    rng = np.random.default_rng(11)
    for _ in range(100):
        r = rng.uniform(0.5, 2.0)
        s = ModelSection(rng.uniform(0, 2 * np.pi), int(rng.choice([-1, 1])), r)
        w = r * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
        x1, x2 = model_section_eval(s, w)
        assert abs(model_projection(x1, x2) - w) < 1e-12


def test_two_sections_through_each_torus_point():
    rng = np.random.default_rng(12)
    for _ in range(100):
        r = rng.uniform(0.5, 2.0)
        X = np.sqrt(r) * np.exp(2j * np.pi * rng.uniform())
        Y = np.sqrt(r) * np.exp(2j * np.pi * rng.uniform())
        pt = ((X + Y) / 2, (X - Y) / 2j)
        found = sections_through(pt, r)
        assert len(found) == 2
        for s, w in found:
            assert abs(abs(w) - r) < 1e-12
            assert np.allclose(model_section_eval(s, w), pt, atol=1e-12)
        (s0, _), (s1, _) = found
        assert boundary_class(s0) - boundary_class(s1) in (V, TorusH1Class(-1, 0))


def test_section_boundary_classes():
    plus = boundary_class(ModelSection(0.3, 1, 1.0))
    minus = boundary_class(ModelSection(0.3, -1, 1.0))
    assert {plus, minus} == {L, V + L}


@pytest.mark.parametrize("r", [0.5, 1.0, 2.0])
def test_section_area_closed_form(r):
    # |du/dw|^2 = 2 |a|^2 / r = 1 / (2r) over the disk, plus the z-term pi r^2
    for sign in (1, -1):
        assert section_area(ModelSection(0.7, sign, r)) == pytest.approx(np.pi * r * r + np.pi * r / 2, rel=1e-10)


def test_sections_reject_off_torus_points():
    with pytest.raises(InvalidInputError):
        sections_through((1.0, 0.0), 4.0)
