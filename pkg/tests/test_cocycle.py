import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from folner.cocycle import (
    NonpositivePotential,
    PointOutsideOrbit,
    cocycle_identity_defect,
    harmonic_defect_at,
    max_harmonic_defect,
    potential_cocycle,
    tabulated_cocycle,
    trivial_cocycle,
    weighted_mass,
)
from folner.examples.f2 import BoundaryPoint, F2Point, busemann_cocycle, f2_window
from folner.examples.grid import grid_window
from oracles import busemann_by_truncation, free_inverse, free_reduce


def test_trivial_cocycle_counts_points():
    assert weighted_mass(trivial_cocycle(), [(0,), (1,), (2,)], (0,)) == 3
    assert weighted_mass(trivial_cocycle(), [], (0,)) == 0


def test_potential_cocycle_values():
    d = potential_cocycle(lambda p: 2 ** p[0])
    assert d((3,), (1,)) == 4
    assert d((1,), (3,)) == Fraction(1, 4)
    assert weighted_mass(d, [(0,), (1,), (2,)], (0,)) == 7


def test_potential_must_be_positive():
    with pytest.raises(NonpositivePotential):
        potential_cocycle(lambda p: p[0], window=grid_window(1, 2))
    d = potential_cocycle(lambda p: p[0])
    with pytest.raises(NonpositivePotential):
        d((0,), (1,))


def test_tabulated_cocycle_and_missing_point():
    d = tabulated_cocycle({"u": 0.0, "v": math.log(3.0)})
    assert d("v", "u") == pytest.approx(3.0)
    assert not d.exact
    with pytest.raises(PointOutsideOrbit):
        d("w", "u")


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-5, 5), min_size=3, max_size=3))
def test_tabulated_identity_is_relative(logs):
    d = tabulated_cocycle(dict(zip("xyz", logs)))
    assert cocycle_identity_defect(d, "x", "y", "z") <= 1e-12


X = BoundaryPoint("", "ab")

words = st.lists(st.sampled_from("abAB"), max_size=7).map(lambda t: free_reduce("".join(t)))


@settings(max_examples=80, deadline=None)
@given(words, words, words)
def test_busemann_cocycle_identity_exact(u, v, t):
    d = busemann_cocycle(X)
    p, q, r = F2Point(u, X), F2Point(v, X), F2Point(t, X)
    assert cocycle_identity_defect(d, p, q, r) == 0


@settings(max_examples=80, deadline=None)
@given(words)
def test_busemann_cocycle_against_truncated_distances(g):
    # δ(g·x, x) = 3^(−b_x(g⁻¹)), with b_x read off distances to a long prefix of x
    d = busemann_cocycle(X)
    b = busemann_by_truncation(free_inverse(g), X.letters(40))
    assert d(F2Point(g, X), F2Point("", X)) == Fraction(3) ** (-b)


def test_busemann_cocycle_rejects_other_orbits():
    d = busemann_cocycle(X)
    with pytest.raises(PointOutsideOrbit):
        d(F2Point("", BoundaryPoint("", "a")), F2Point("", X))


@pytest.mark.parametrize("base", [("", "ab"), ("", "a"), ("aB", "ab")])
def test_busemann_cocycle_is_harmonic(base):
    x = BoundaryPoint(*base)
    w = f2_window(x, 4)
    y = F2Point("", x)
    assert max_harmonic_defect(busemann_cocycle(x), w, y) == 0


def test_grid_potential_not_harmonic():
    w = grid_window(1, 3)
    d = potential_cocycle(lambda p: 2 ** p[0])
    # average of 2^(z±1) is (5/4)·2^z
    assert harmonic_defect_at(d, w, (0,), (0,)) == Fraction(1, 4)
