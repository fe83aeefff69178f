"""Independent reference computations used by the tests.

Nothing here imports the package: free-group words are reduced with a
stack, sets are enumerated by brute force, and reduced-word counts come
from a closed form for powers of the non-backtracking matrix.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

LETTERS = "abAB"


def free_reduce(word: str) -> str:
    out: list[str] = []
    for c in word:
        if out and out[-1] == c.swapcase():
            out.pop()
        else:
            out.append(c)
    return "".join(out)


def free_inverse(word: str) -> str:
    return word[::-1].swapcase()


def all_reduced(length: int) -> list[str]:
    return ["".join(t) for t in itertools.product(LETTERS, repeat=length)
            if free_reduce("".join(t)) == "".join(t)]


def tree_distance(u: str, v: str) -> int:
    return len(free_reduce(free_inverse(u) + v))


def busemann_by_truncation(gamma: str, x_prefix: str) -> int:
    """d(γ, x_m) − d(1, x_m) for a long prefix x_m of the boundary word."""
    return tree_distance(gamma, x_prefix) - len(x_prefix)


def averaging_set_words(x_first: str, n: int) -> list[str]:
    """Reduced g with |g| ≤ n whose last letter is not x₁⁻¹."""
    bad = x_first.swapcase()
    return [g for k in range(n + 1) for g in all_reduced(k) if not g or g[-1] != bad]


def masses(x_first: str, n: int) -> tuple[Fraction, Fraction]:
    """(|A_n|_x, |∂A_n|_x) in the free orbit, with inner vertex boundary."""
    A = set(averaging_set_words(x_first, n))
    mass = sum((Fraction(1, 3 ** len(g)) for g in A), Fraction(0))
    boundary = {g for g in A if any(free_reduce(s + g) not in A for s in LETTERS)}
    return mass, sum((Fraction(1, 3 ** len(g)) for g in boundary), Fraction(0))


# Reduced-word counting --------------------------------------------------------

_J = np.ones((4, 4), dtype=object)
_I = np.eye(4, dtype=int).astype(object)
# P swaps each letter with its inverse: a <-> A, b <-> B
_P = np.zeros((4, 4), dtype=object)
for i, c in enumerate(LETTERS):
    _P[i, LETTERS.index(c.swapcase())] = 1


def nonbacktracking_power(m: int) -> np.ndarray:
    """M^m for M = J − P, from M^m = 3^m J/4 + (−1)^m ((I+P)/2 − J/4) + (I−P)/2."""
    q = Fraction(1, 4)
    h = Fraction(1, 2)
    return (3**m) * q * _J + (-1) ** m * (h * (_I + _P) - q * _J) + h * (_I - _P)


def count_words(prefix: str, length: int, last_not: str) -> int:
    """Reduced words of the given length starting with ``prefix`` and not ending in ``last_not``."""
    m = length - len(prefix)
    row = nonbacktracking_power(m)[LETTERS.index(prefix[-1])]
    return int(sum(v for j, v in enumerate(row) if LETTERS[j] != last_not))


def cylinder_mass(prefix: str, x_letters: str, n: int) -> Fraction:
    """ν_n([w]) for the free-orbit averaging measure; ``x_letters`` starts the base word."""
    bad = x_letters[0].swapcase()
    total = Fraction(0)
    # below level |w| the point g·x reads g followed by the base word
    for k in range(min(len(prefix), n + 1)):
        hits = sum(1 for g in all_reduced(k) if (not g or g[-1] != bad) and (g + x_letters)[:len(prefix)] == prefix)
        total += Fraction(hits, 3**k)
    for k in range(len(prefix), n + 1):
        total += Fraction(count_words(prefix, k, bad), 3**k)
    return total / (n + 1)


# Grids and trees --------------------------------------------------------------


def l1_ball_brute(d: int, n: int) -> set[tuple]:
    rng = range(-n, n + 1)
    return {p for p in itertools.product(rng, repeat=d) if sum(map(abs, p)) <= n}


def shift_difference_count(A: set[tuple], axis: int) -> int:
    """|A \\ (A − e)| + |A \\ (A + e)|: points leaving plus points entering."""
    def shift(p, s):
        q = list(p)
        q[axis] += s
        return tuple(q)

    leaving = sum(1 for p in A if shift(p, 1) not in A)
    entering = sum(1 for p in A if shift(p, -1) not in A)
    return leaving + entering


def tree_sphere(n: int) -> int:
    return 1 if n == 0 else 4 * 3 ** (n - 1)


def tree_subexponential_ratio(n: int) -> Fraction:
    ball = sum(tree_sphere(k) for k in range(n + 1))
    return Fraction(tree_sphere(n) + tree_sphere(n + 1), ball)
