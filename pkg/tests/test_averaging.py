from fractions import Fraction

import pytest

from folner.averaging import (
    DELTA,
    AveragingSequence,
    EmptySet,
    SequenceError,
    classic_ratio,
    delta_ratio,
    folner_boundary_ratio,
    run_sequence,
    running_minimum,
    subexponential_ratio,
)
from folner.cocycle import potential_cocycle, trivial_cocycle
from folner.examples.f2 import BoundaryPoint, F2Point, busemann_cocycle, f2_averaging_set, f2_window
from folner.examples.grid import grid_ball, grid_generators, grid_window
from oracles import l1_ball_brute, shift_difference_count, tree_subexponential_ratio


@pytest.mark.parametrize("n", [1, 2, 5, 10])
def test_grid_2d_classic_ratio_exact(n):
    w, A = grid_ball(2, n)
    for g in w.generators:
        assert classic_ratio(A, g, w) == Fraction(4 * n + 2, 2 * n * n + 2 * n + 1)
    brute = l1_ball_brute(2, n)
    assert classic_ratio(A, w.generator("+e2"), w) * len(brute) == shift_difference_count(brute, 1)


@pytest.mark.parametrize("n", [1, 3, 7])
def test_grid_2d_boundary_ratio(n):
    w, A = grid_ball(2, n)
    assert folner_boundary_ratio(A, (0, 0), trivial_cocycle(), w) == Fraction(4 * n, 2 * n * n + 2 * n + 1)


def test_delta_ratio_with_trivial_cocycle_is_classic():
    w, A = grid_ball(2, 4)
    g = w.generator("-e1")
    assert delta_ratio(A, (0, 0), g, trivial_cocycle(), w) == classic_ratio(A, g, w)


def test_delta_ratio_weighted_interval():
    # A = {0..3} in ℤ with δ = 2^(z−y): leaving 3 (weight 8), entering −1 (weight 1/2)
    w = grid_window(1, 6)
    d = potential_cocycle(lambda p: Fraction(2) ** p[0])
    A = {(i,) for i in range(4)}
    assert delta_ratio(A, (0,), w.generator("+e1"), d, w) == Fraction(17, 2) / 15


def test_empty_set_rejected():
    w = grid_window(1, 2)
    with pytest.raises(EmptySet):
        classic_ratio(set(), w.generator("+e1"), w)
    with pytest.raises(EmptySet):
        folner_boundary_ratio(set(), (0,), trivial_cocycle(), w)


def test_tree_subexponential_ratio_limit():
    x = BoundaryPoint("", "ab")
    w = f2_window(x, 9)
    y = F2Point("", x)
    for n in range(1, 9):
        assert subexponential_ratio(w, y, n) == tree_subexponential_ratio(n)
    assert abs(float(tree_subexponential_ratio(8)) - 8 / 3) < 1e-3


def test_grid_subexponential_ratio_decays():
    w = grid_window(2, 12)
    vals = [subexponential_ratio(w, (0, 0), n) for n in range(1, 12)]
    assert vals == sorted(vals, reverse=True)
    assert vals[-1] < Fraction(1, 2)


def test_running_minimum():
    assert running_minimum([3, 1, 2, 0, 5]) == [3, 1, 1, 0, 0]
    assert running_minimum([]) == []


def test_run_sequence_f2():
    x = BoundaryPoint("", "ab")
    ns = range(1, 5)
    seq = AveragingSequence(
        [f2_averaging_set(x, n) for n in ns],
        [f2_window(x, n + 1) for n in ns],
        [F2Point("", x)] * 4,
        DELTA,
    )
    out = run_sequence(seq, f2_window(x, 1).generators, busemann_cocycle(x))
    assert [r.n for r in out] == list(ns)
    assert [r.mass for r in out] == [n + 1 for n in ns]
    assert [r.boundary_ratio for r in out] == [Fraction(2, n + 1) for n in ns]


def test_run_sequence_tags_failing_index():
    gens = grid_generators(1)
    seq = AveragingSequence([frozenset({(0,)}), frozenset({(0,), (1,)})], [grid_window(1, 2), grid_window(1, 1)])
    with pytest.raises(SequenceError) as info:
        run_sequence(seq, gens)
    assert info.value.index == 2


def test_sequence_validation():
    with pytest.raises(ValueError):
        AveragingSequence([frozenset({(0,)})], [])
    with pytest.raises(ValueError):
        AveragingSequence([frozenset({(0,)})], [grid_window(1, 1)], kind=DELTA)
    with pytest.raises(EmptySet):
        AveragingSequence([frozenset()], [grid_window(1, 1)])
