"""Empirical measures ν_n, the Markov/Laplace operators, and the defect functionals.

A measure here is anything with an ``expect(func, depth)`` method returning
Σ func(z)·ν({z}).  :class:`EmpiricalMeasure` stores its atoms explicitly; the
free-group family in :mod:`folner.examples.f2` provides a level-counted
measure with the same method, so every defect below works on both.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping, Optional, Sequence, Union

from .cocycle import Cocycle, weighted_mass
from .orbit import Generator, OrbitWindow, full_neighbors

Point = Hashable
Scalar = Union[Fraction, float, int]


class UndefinedImage(ValueError):
    pass


class EvaluationFailure(RuntimeError):
    pass


@dataclass(frozen=True)
class TestFunction:
    """A bounded function on transversal points.

    ``depth`` is the number of leading boundary letters the value depends on
    (None when unknown); level-counted measures need it.
    """

    __test__ = False  # not a pytest class

    evaluate: Callable[[Point], Scalar]
    descriptor: str
    depth: Optional[int] = None
    sup_norm: Optional[Scalar] = None

    def __call__(self, p: Point) -> Scalar:
        return self.evaluate(p)


def constant(c: Scalar) -> TestFunction:
    c = Fraction(c) if isinstance(c, (int, Fraction)) else c
    return TestFunction(lambda p: c, f"constant:{c}", 0, abs(c))


def cylinder(word: str) -> TestFunction:
    """Indicator of the infinite words beginning with ``word``."""
    d = len(word)

    def evaluate(p):
        return Fraction(1) if p.letters(d) == word else Fraction(0)

    return TestFunction(evaluate, f"cylinder:{word}", d, Fraction(1))


def indicator(point: Point) -> TestFunction:
    return TestFunction(lambda p: Fraction(int(p == point)), f"indicator:{point!r}", None, Fraction(1))


def tabulated(table: Mapping[Point, Scalar], default: Scalar = Fraction(0), name: str = "tabulated") -> TestFunction:
    table = dict(table)
    norm = max([abs(v) for v in table.values()] + [abs(default)])
    return TestFunction(lambda p: table.get(p, default), name, None, norm)


def linear_combination(a: Scalar, f: TestFunction, b: Scalar, g: TestFunction) -> TestFunction:
    depth = None if f.depth is None or g.depth is None else max(f.depth, g.depth)
    return TestFunction(lambda p: a * f(p) + b * g(p), f"{a}*{f.descriptor}+{b}*{g.descriptor}", depth)


@dataclass(frozen=True)
class EmpiricalMeasure:
    """Finitely supported measure with strictly positive atom weights."""

    atoms: Mapping[Point, Scalar]

    def __post_init__(self):
        for p, wt in self.atoms.items():
            if not wt > 0:
                raise ValueError(f"atom weight at {p!r} is not positive: {wt!r}")

    @property
    def total(self) -> Scalar:
        return sum(self.atoms.values(), Fraction(0))

    def weight(self, p: Point) -> Scalar:
        return self.atoms.get(p, Fraction(0))

    def normalized(self) -> "EmpiricalMeasure":
        t = self.total
        return EmpiricalMeasure({p: wt / t for p, wt in self.atoms.items()})

    def expect(self, func: Callable[[Point], Scalar], depth: Optional[int] = None) -> Scalar:
        total = Fraction(0)
        for p, wt in self.atoms.items():
            try:
                v = func(p)
            except (TypeError, ArithmeticError) as exc:
                raise EvaluationFailure(f"evaluation failed at atom {p!r}: {exc}") from exc
            total += v * wt
        return total


def empirical_measure(A: Iterable[Point], y: Point, delta: Cocycle) -> EmpiricalMeasure:
    """ν(B) = |B ∩ A|_y / |A|_y."""
    A = list(dict.fromkeys(A))
    if not A:
        raise ValueError("empirical measure of the empty set")
    mass = weighted_mass(delta, A, y)
    return EmpiricalMeasure({z: delta(z, y) / mass for z in A})


def point_mass(p: Point) -> EmpiricalMeasure:
    return EmpiricalMeasure({p: Fraction(1)})


def integrate(nu, f: TestFunction) -> Scalar:
    return nu.expect(f.evaluate, f.depth)


def _average(values: list, count: int) -> Scalar:
    total = sum(values, Fraction(0)) if all(isinstance(v, (int, Fraction)) for v in values) else sum(values, 0.0)
    return total / count


def markov_apply(w: OrbitWindow, f: TestFunction, p: Point) -> Scalar:
    """Df(p) = (1/deg p) Σ_{z∼p} f(z)."""
    nbrs = full_neighbors(w, p)
    return _average([f(z) for z in nbrs], len(nbrs))


def laplace_apply(w: OrbitWindow, f: TestFunction, p: Point) -> Scalar:
    """Δf(p) = Df(p) − f(p)."""
    return markov_apply(w, f, p) - f(p)


def _deeper(f: TestFunction) -> Optional[int]:
    return None if f.depth is None else f.depth + 1


def markov_function(w: OrbitWindow, f: TestFunction) -> TestFunction:
    return TestFunction(lambda p: markov_apply(w, f, p), f"D[{f.descriptor}]", _deeper(f))


def laplace_function(w: OrbitWindow, f: TestFunction) -> TestFunction:
    return TestFunction(lambda p: laplace_apply(w, f, p), f"Δ[{f.descriptor}]", _deeper(f))


def harmonicity_defect(nu, f: TestFunction, w: OrbitWindow) -> Scalar:
    """|∫ Δf dν|."""
    return abs(integrate(nu, laplace_function(w, f)))


def stationarity_defect(nu, f: TestFunction, w: OrbitWindow) -> Scalar:
    """|∫ Df dν − ∫ f dν|, computed from the two integrals separately."""
    return abs(integrate(nu, markov_function(w, f)) - integrate(nu, f))


def pushforward_integrand(gamma: Generator, f: TestFunction) -> Callable[[Point], Scalar]:
    """z ↦ f(γz), extended by 0 where γ is undefined."""

    def pushed(z):
        gz = gamma.apply(z)
        return 0 if gz is None else f(gz)

    return pushed


def reweighted_integrand(gamma: Generator, f: TestFunction, delta: Cocycle) -> Callable[[Point], Scalar]:
    """z ↦ f(z)·δ(γ⁻¹z, z); an error where f ≠ 0 outside the range of γ."""

    def reweighted(z):
        fz = f(z)
        if fz == 0:
            return fz
        pre = gamma.unapply(z)
        if pre is None:
            raise UndefinedImage(f"{f.descriptor} is nonzero at {z!r}, outside the range of {gamma.label}")
        return fz * delta(pre, z)

    return reweighted


def quasi_invariance_defect(nu, gamma: Generator, f: TestFunction, delta: Cocycle) -> Scalar:
    """|∫ f d(γ_*ν) − ∫ f(z) δ(γ⁻¹z, z) dν(z)|.

    Vanishes when δ is the Radon–Nikodym cocycle of ν.
    """
    depth = _deeper(f)
    return abs(nu.expect(pushforward_integrand(gamma, f), depth)
               - nu.expect(reweighted_integrand(gamma, f, delta), depth))


def weak_star_distance(nu1, nu2, family: Sequence[TestFunction]) -> Scalar:
    """max_f |∫f dν₁ − ∫f dν₂| over a finite family (a proxy for weak-* distance)."""
    return max((abs(integrate(nu1, f) - integrate(nu2, f)) for f in family), default=Fraction(0))


def degree_discontinuity_mass(nu: EmpiricalMeasure, w: OrbitWindow) -> Scalar:
    """ν-mass of atoms whose degree differs from the most common degree among atoms."""
    degrees = {p: w.degree(p) for p in nu.atoms}
    if not degrees:
        return Fraction(0)
    mode = Counter(degrees.values()).most_common(1)[0][0]
    return sum((nu.atoms[p] for p, d in degrees.items() if d != mode), Fraction(0))
