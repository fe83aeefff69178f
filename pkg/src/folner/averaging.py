"""Averaging sequences and the ratios whose decay defines them.

Three diagnostics are computed for a finite set A:

* classic ratio ``|Δ_γA| / |A|`` (Goodman–Plante averaging),
* weighted ratio ``|Δ_γA|_y / |A|_y`` for a cocycle δ (δ-averaging),
* boundary ratio ``|∂A|_y / |A|_y`` (δ-Følner).

Limits are never asserted; sequences are finite and decay is read off the series.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Optional, Sequence, Union

from .cocycle import Cocycle, trivial_cocycle, weighted_mass
from .orbit import Generator, OrbitWindow, ball, difference_set, vertex_boundary

Point = Hashable
Scalar = Union[Fraction, float]

CLASSIC = "classic"
DELTA = "delta-weighted"


class EmptySet(ValueError):
    pass


class SequenceError(RuntimeError):
    """An element-wise failure, tagged with the index where it happened."""

    def __init__(self, index: int, cause: Exception):
        super().__init__(f"n={index}: {type(cause).__name__}: {cause}")
        self.index = index
        self.cause = cause


@dataclass(frozen=True)
class AveragingSequence:
    """Finite family A_n together with basepoints y_n and windows resolving them."""

    sets: Sequence[frozenset]
    windows: Sequence[OrbitWindow]
    basepoints: Optional[Sequence[Point]] = None
    kind: str = CLASSIC
    start: int = 1

    def __post_init__(self):
        if len(self.sets) != len(self.windows):
            raise ValueError("one window per set is required")
        if self.kind not in (CLASSIC, DELTA):
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.kind == DELTA and (self.basepoints is None or len(self.basepoints) != len(self.sets)):
            raise ValueError("delta-weighted sequences need one basepoint per set")
        for A in self.sets:
            if not A:
                raise EmptySet("averaging sets must be nonempty")


@dataclass
class RatioSeries:
    n: int
    per_generator: dict[str, Scalar] = field(default_factory=dict)
    boundary_ratio: Scalar = Fraction(0)
    mass: Scalar = Fraction(0)


def classic_ratio(A, gamma: Generator, w: OrbitWindow) -> Fraction:
    A = frozenset(A)
    if not A:
        raise EmptySet("classic_ratio of the empty set")
    return Fraction(len(difference_set(w, A, gamma)), len(A))


def delta_ratio(A, y: Point, gamma: Generator, delta: Cocycle, w: OrbitWindow) -> Scalar:
    A = frozenset(A)
    if not A:
        raise EmptySet("delta_ratio of the empty set")
    D = difference_set(w, A, gamma)
    return weighted_mass(delta, D, y) / weighted_mass(delta, A, y)


def folner_boundary_ratio(A, y: Point, delta: Cocycle, w: OrbitWindow) -> Scalar:
    A = frozenset(A)
    if not A:
        raise EmptySet("folner_boundary_ratio of the empty set")
    return weighted_mass(delta, vertex_boundary(w, A), y) / weighted_mass(delta, A, y)


def subexponential_ratio(w: OrbitWindow, x: Point, n: int) -> Fraction:
    """|Γ^(n+1)(x) − Γ^(n−1)(x)| / |Γ^(n)(x)|."""
    if n < 1:
        raise ValueError("n must be at least 1")
    outer = ball(w, x, n + 1)
    inner = ball(w, x, n - 1)
    return Fraction(len(outer - inner), len(ball(w, x, n)))


def running_minimum(values: Sequence[Scalar]) -> list[Scalar]:
    """Running minimum of a series, the finite stand-in for a liminf."""
    out, cur = [], None
    for v in values:
        cur = v if cur is None or v < cur else cur
        out.append(cur)
    return out


def run_sequence(seq: AveragingSequence, generators: Sequence[Generator],
                 delta: Optional[Cocycle] = None) -> list[RatioSeries]:
    """Per-index ratios for every generator, plus boundary ratio and mass."""
    if seq.kind == CLASSIC or delta is None:
        delta = trivial_cocycle()
    out = []
    for i, (A, w) in enumerate(zip(seq.sets, seq.windows)):
        n = seq.start + i
        y = seq.basepoints[i] if seq.basepoints is not None else next(iter(A))
        try:
            mass = weighted_mass(delta, A, y)
            per_gen = {g.label: weighted_mass(delta, difference_set(w, A, g), y) / mass for g in generators}
            bratio = weighted_mass(delta, vertex_boundary(w, A), y) / mass
        except Exception as exc:
            raise SequenceError(n, exc) from exc
        out.append(RatioSeries(n, per_gen, bratio, mass))
    return out
