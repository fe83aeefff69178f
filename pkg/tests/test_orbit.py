import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from folner.examples.grid import grid_generators, grid_window
from folner.orbit import (
    HorizonExceeded,
    OrbitWindow,
    PointNotInWindow,
    ball,
    difference_set,
    full_neighbors,
    generator_pair,
    graph_distance,
    neighbors,
    vertex_boundary,
)
from oracles import shift_difference_count


def half_line_window(radius):
    """ℕ with the partial shift n ↦ n−1 undefined at 0."""
    up, down = generator_pair("+", "-", lambda n: n + 1, lambda n: n - 1 if n > 0 else None)
    return OrbitWindow([up, down], 0, radius)


@pytest.mark.parametrize("d, radius, size", [(1, 3, 7), (2, 2, 13), (2, 4, 41), (3, 2, 25)])
def test_grid_window_sizes(d, radius, size):
    assert len(grid_window(d, radius)) == size


def test_neighbors_and_degree():
    w = grid_window(2, 2)
    assert sorted(q for _, q in neighbors(w, (0, 0))) == [(-1, 0), (0, -1), (0, 1), (1, 0)]
    assert w.degree((0, 0)) == 4
    h = half_line_window(3)
    assert h.degree(0) == 1
    assert h.degree(2) == 2


def test_full_neighbors_beyond_horizon():
    w = grid_window(2, 2)
    assert len(full_neighbors(w, (1, 0))) == 4
    with pytest.raises(HorizonExceeded):
        full_neighbors(w, (2, 0))


def test_point_outside_window():
    w = grid_window(2, 2)
    with pytest.raises(PointNotInWindow):
        neighbors(w, (5, 5))


def test_generating_set_must_be_symmetric():
    up, _ = generator_pair("+", "-", lambda n: n + 1, lambda n: n - 1)
    with pytest.raises(ValueError):
        OrbitWindow([up], 0, 2)


def test_interior_excludes_rim():
    w = grid_window(2, 3)
    assert len(w.interior()) == 13  # the radius-2 ball
    assert all(abs(x) + abs(y) <= 2 for x, y in w.interior())


def test_ball_and_horizon():
    w = grid_window(2, 4)
    assert len(ball(w, (0, 0), 3)) == 25
    assert len(ball(w, (1, 0), 3)) == 25
    with pytest.raises(HorizonExceeded):
        ball(w, (1, 0), 4)


def test_graph_distance():
    w = grid_window(2, 4)
    assert graph_distance(w, (0, 0), (2, -1), cap=5) == 3
    assert graph_distance(w, (0, 0), (2, -1), cap=2) is None
    assert graph_distance(w, (1, 1), (1, 1), cap=0) == 0


def test_vertex_boundary_of_square():
    w = grid_window(2, 6)
    A = {(x, y) for x in range(-1, 2) for y in range(-1, 2)}
    assert vertex_boundary(w, A) == A - {(0, 0)}


def test_difference_set_counts_undefined_images_as_leaving():
    h = half_line_window(5)
    down = h.generator("-")
    # 0 leaves (image undefined); 3 enters because -(3) = 2 lies in A
    assert difference_set(h, {0, 1, 2}, down) == {0, 3}


def test_difference_set_needs_window_for_preimages():
    w = grid_window(1, 2)
    with pytest.raises(HorizonExceeded):
        difference_set(w, {(2,)}, w.generator("-e1"))


small_sets = st.sets(st.tuples(st.integers(-2, 2), st.integers(-2, 2)).filter(lambda p: abs(p[0]) + abs(p[1]) <= 3), max_size=15)


@settings(max_examples=60, deadline=None)
@given(small_sets)
def test_difference_set_matches_brute_force_and_inverse(A):
    w = grid_window(2, 6)
    for axis, label in enumerate(("+e1", "+e2")):
        g = w.generator(label)
        D = difference_set(w, A, g)
        assert len(D) == shift_difference_count(set(A), axis)
        assert len(D) == len(difference_set(w, A, w.inverse(g)))


@settings(max_examples=40, deadline=None)
@given(small_sets)
def test_boundary_is_subset(A):
    w = grid_window(2, 6)
    B = vertex_boundary(w, A)
    assert B <= set(A)
    assert all(any(q not in A for _, q in neighbors(w, p)) for p in B)


def test_generator_labels():
    assert [g.label for g in grid_generators(2)] == ["+e1", "-e1", "+e2", "-e2"]
