"""Positive multiplicative cocycles on orbit pairs and the weighted masses they induce."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping, Optional, Union

from .orbit import OrbitWindow, full_neighbors

Point = Hashable
Scalar = Union[Fraction, float, int]

EXACT = "exact"
FLOAT = "float"


class PointOutsideOrbit(LookupError):
    pass


class NonpositivePotential(ValueError):
    pass


@dataclass(frozen=True)
class Cocycle:
    """δ(z, y) > 0 with δ(x, y)δ(y, z) = δ(x, z).

    ``evaluate`` raises :class:`PointOutsideOrbit` for pairs it cannot relate.
    """

    evaluate: Callable[[Point, Point], Scalar]
    arithmetic_mode: str = EXACT
    name: str = ""

    def __call__(self, z: Point, y: Point) -> Scalar:
        return self.evaluate(z, y)

    @property
    def exact(self) -> bool:
        return self.arithmetic_mode == EXACT

    def zero(self) -> Scalar:
        return Fraction(0) if self.exact else 0.0


def trivial_cocycle() -> Cocycle:
    return Cocycle(lambda z, y: Fraction(1), EXACT, "trivial")


def potential_cocycle(h: Callable[[Point], Scalar], *, exact: bool = True,
                      window: Optional[OrbitWindow] = None, name: str = "potential") -> Cocycle:
    """δ(z, y) = h(z)/h(y) for a strictly positive function h.

    When ``window`` is given, positivity is checked on all of its vertices up front.
    """
    if window is not None:
        for p in window.vertices:
            if not h(p) > 0:
                raise NonpositivePotential(f"h({p!r}) = {h(p)!r}")

    def value(p):
        try:
            v = h(p)
        except KeyError as exc:
            raise PointOutsideOrbit(p) from exc
        if not v > 0:
            raise NonpositivePotential(f"h({p!r}) = {v!r}")
        return Fraction(v) if exact else float(v)

    return Cocycle(lambda z, y: value(z) / value(y), EXACT if exact else FLOAT, name)


def tabulated_cocycle(log_weights: Mapping[Point, float], name: str = "tabulated") -> Cocycle:
    """Float cocycle δ(z, y) = exp(L(z) − L(y)) from a table of log-weights."""
    table = dict(log_weights)

    def evaluate(z, y):
        try:
            return math.exp(table[z] - table[y])
        except KeyError as exc:
            raise PointOutsideOrbit(exc.args[0]) from exc

    return Cocycle(evaluate, FLOAT, name)


def weighted_mass(delta: Cocycle, A: Iterable[Point], y: Point) -> Scalar:
    """|A|_y = Σ_{z ∈ A} δ(z, y); zero for the empty set."""
    total = delta.zero()
    for z in A:
        total += delta(z, y)
    return total


def cocycle_identity_defect(delta: Cocycle, x: Point, y: Point, z: Point) -> Scalar:
    """|δ(x,y)δ(y,z) − δ(x,z)|, relative to δ(x,z) in float mode."""
    lhs = delta(x, y) * delta(y, z)
    rhs = delta(x, z)
    if delta.exact:
        return abs(lhs - rhs)
    return abs(lhs - rhs) / abs(rhs)


def harmonic_defect_at(delta: Cocycle, w: OrbitWindow, z: Point, y: Point) -> Scalar:
    """|δ(z,y) − (1/deg z) Σ_{w∼z} δ(w,y)|."""
    nbrs = full_neighbors(w, z)
    total = delta.zero()
    for q in nbrs:
        total += delta(q, y)
    return abs(delta(z, y) - total / len(nbrs))


def max_harmonic_defect(delta: Cocycle, w: OrbitWindow, y: Point) -> Scalar:
    """Supremum of :func:`harmonic_defect_at` over the interior of ``w``."""
    return max((harmonic_defect_at(delta, w, z, y) for z in w.interior()), default=delta.zero())
