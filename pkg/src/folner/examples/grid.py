"""ℤ^d acting on itself by unit shifts: the sub-exponential-growth example."""

from __future__ import annotations

import itertools

from ..orbit import Generator, OrbitWindow, generator_pair

SUPPORTED_DIMENSIONS = (1, 2, 3)


class DimensionUnsupported(ValueError):
    pass


def _shift(i: int, step: int):
    def move(p):
        q = list(p)
        q[i] += step
        return tuple(q)

    return move


def grid_generators(d: int) -> tuple[Generator, ...]:
    """Shifts ±e_i, labelled ``+e1``, ``-e1``, ..."""
    gens: list[Generator] = []
    for i in range(d):
        gens.extend(generator_pair(f"+e{i + 1}", f"-e{i + 1}", _shift(i, 1), _shift(i, -1)))
    return tuple(gens)


def grid_window(d: int, radius: int) -> OrbitWindow:
    if d not in SUPPORTED_DIMENSIONS:
        raise DimensionUnsupported(d)
    return OrbitWindow(grid_generators(d), (0,) * d, radius)


def l1_ball(d: int, n: int) -> frozenset:
    """Lattice points with |p|₁ ≤ n, enumerated directly."""
    rng = range(-n, n + 1)
    return frozenset(p for p in itertools.product(rng, repeat=d) if sum(map(abs, p)) <= n)


def ball_size(d: int, n: int) -> int:
    """Closed form for |B_n| in ℤ^d, d ≤ 3."""
    if d == 1:
        return 2 * n + 1
    if d == 2:
        return 2 * n * n + 2 * n + 1
    if d == 3:
        return (2 * n + 1) * (2 * n * n + 2 * n + 3) // 3
    raise DimensionUnsupported(d)


def grid_ball(d: int, n: int) -> tuple[OrbitWindow, frozenset]:
    """The ℓ¹ ball of radius n and a window of radius n + 1 that resolves it."""
    if d not in SUPPORTED_DIMENSIONS:
        raise DimensionUnsupported(d)
    if n < 0:
        raise ValueError("n must be nonnegative")
    return grid_window(d, n + 1), l1_ball(d, n)


def point_key(p: tuple) -> str:
    return ",".join(map(str, p))


def parse_point(key: str) -> tuple:
    return tuple(int(s) for s in key.split(","))
