import pytest

from folner.examples.grid import (
    DimensionUnsupported,
    ball_size,
    grid_ball,
    grid_window,
    l1_ball,
    parse_point,
    point_key,
)
from folner.orbit import ball, vertex_boundary
from oracles import l1_ball_brute


@pytest.mark.parametrize("d", [1, 2, 3])
@pytest.mark.parametrize("n", [0, 1, 2, 5, 8])
def test_ball_size_closed_form(d, n):
    assert ball_size(d, n) == len(l1_ball_brute(d, n)) == len(l1_ball(d, n))


@pytest.mark.parametrize("d", [1, 2, 3])
def test_bfs_ball_is_l1_ball(d):
    w = grid_window(d, 5)
    assert ball(w, (0,) * d, 4) == l1_ball(d, 4)


@pytest.mark.parametrize("d", [1, 2, 3])
@pytest.mark.parametrize("n", [1, 4])
def test_boundary_is_outer_sphere(d, n):
    w, A = grid_ball(d, n)
    assert vertex_boundary(w, A) == A - l1_ball(d, n - 1)


def test_unsupported_dimension():
    with pytest.raises(DimensionUnsupported):
        grid_window(4, 2)
    with pytest.raises(DimensionUnsupported):
        ball_size(5, 1)
    with pytest.raises(ValueError):
        grid_ball(2, -1)


def test_point_keys_round_trip():
    assert point_key((1, -2, 0)) == "1,-2,0"
    assert parse_point("1,-2,0") == (1, -2, 0)
