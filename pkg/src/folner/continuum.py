"""Modified-metric isoperimetry on rectangles in the upper half-plane.

Both continuous examples live on leaves that are copies of the hyperbolic
half-plane, with metric (dx² + dy²)/y².  A :class:`LeafDomain` is a chart
rectangle [x0, x1] × [y0, y1] together with the densities that rescale area
and boundary length:

* ``hyperbolic-half-plane``: both densities are y/y_base (the visual-measure
  density at ∞), so side lengths become Euclidean.
* ``sol-leaf``: area density λ^t / log λ = y / log λ (t = log y / log λ) and
  length density λ^t = y, as in the torus-bundle example.

Closed forms are evaluated symbolically with sympy.  The quadrature is an
independent composite Gauss–Legendre rule on a mesh graded geometrically
towards y = 0, refined dyadically until two successive levels agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional, Union

import numpy as np
import sympy

HYPERBOLIC = "hyperbolic-half-plane"
SOL = "sol-leaf"
METRIC_KINDS = (HYPERBOLIC, SOL)

GAUSS_ORDER = 8
MAX_LEVELS = 20
MAX_EVALUATIONS = 20_000_000

Number = Union[int, float, sympy.Expr]


class InvalidDomain(ValueError):
    pass


class QuadratureNonconvergence(RuntimeError):
    def __init__(self, message: str, achieved_error: float, levels: int):
        super().__init__(message)
        self.achieved_error = achieved_error
        self.levels = levels


def _exact(v: Number) -> sympy.Expr:
    if isinstance(v, str):
        return sympy.sympify(v)
    if isinstance(v, float):
        return sympy.nsimplify(v, rational=True)
    return sympy.sympify(v)


def _refuted(relation) -> bool:
    """True only when sympy can decide the relation is false (symbolic corners stay allowed)."""
    try:
        return not bool(relation)
    except TypeError:
        return False


@dataclass(frozen=True)
class LeafDomain:
    """Chart rectangle [x0, x1] × [y0, y1] (y0 > 0) with its modified-metric densities.

    Coordinates are kept as exact sympy expressions so closed forms stay
    symbolic; ``scale`` multiplies both densities (a change of basepoint).
    """

    x0: Number
    x1: Number
    y0: Number
    y1: Number
    metric_kind: str = HYPERBOLIC
    lam: Optional[Number] = None
    scale: Number = 1
    label: str = field(default="", compare=False)

    def __post_init__(self):
        for name in ("x0", "x1", "y0", "y1", "scale"):
            object.__setattr__(self, name, _exact(getattr(self, name)))
        if self.metric_kind not in METRIC_KINDS:
            raise InvalidDomain(f"unknown metric kind {self.metric_kind!r}")
        if self.metric_kind == SOL:
            if self.lam is None:
                raise InvalidDomain("sol-leaf domains need λ")
            object.__setattr__(self, "lam", _exact(self.lam))
            if _refuted(self.lam > 1):
                raise InvalidDomain(f"λ must exceed 1, got {self.lam}")
        if _refuted(self.x0 < self.x1) or _refuted(self.y0 < self.y1):
            raise InvalidDomain("degenerate rectangle")
        if _refuted(self.y0 > 0):
            raise InvalidDomain("rectangle must lie in the upper half-plane")
        if _refuted(self.scale > 0):
            raise InvalidDomain("density scale must be positive")

    @property
    def area_factor(self) -> sympy.Expr:
        """Constant c with area density c·y."""
        if self.metric_kind == SOL:
            return self.scale / sympy.log(self.lam)
        return self.scale

    @property
    def length_factor(self) -> sympy.Expr:
        """Constant c with length density c·y."""
        return self.scale

    def floats(self) -> tuple[float, float, float, float]:
        return tuple(float(v) for v in (self.x0, self.x1, self.y0, self.y1))

    def rescaled(self, factor: Number) -> "LeafDomain":
        return LeafDomain(self.x0, self.x1, self.y0, self.y1, self.metric_kind, self.lam,
                          self.scale * _exact(factor), self.label)

    def split_x(self, at: Number) -> tuple["LeafDomain", "LeafDomain"]:
        at = _exact(at)
        return (LeafDomain(self.x0, at, self.y0, self.y1, self.metric_kind, self.lam, self.scale),
                LeafDomain(at, self.x1, self.y0, self.y1, self.metric_kind, self.lam, self.scale))

    def split_y(self, at: Number) -> tuple["LeafDomain", "LeafDomain"]:
        at = _exact(at)
        return (LeafDomain(self.x0, self.x1, self.y0, at, self.metric_kind, self.lam, self.scale),
                LeafDomain(self.x0, self.x1, at, self.y1, self.metric_kind, self.lam, self.scale))


@dataclass(frozen=True)
class IsoperimetricRecord:
    n: Optional[int]
    area_eta: float
    length_eta: float
    ratio: float
    method: str
    achieved_error: float = 0.0


@dataclass(frozen=True)
class ValidationReport:
    area_closed: float
    area_quadrature: Optional[float]
    area_error: float
    length_closed: float
    length_quadrature: Optional[float]
    length_error: float
    tol: float
    passed: bool
    message: str = ""


def _simplify(expr: sympy.Expr) -> sympy.Expr:
    return sympy.simplify(sympy.expand_log(expr, force=True))


# Closed forms ---------------------------------------------------------------


def closed_form_area(d: LeafDomain) -> sympy.Expr:
    """∫∫ c·y · dx dy / y² = c (x1 − x0) log(y1/y0)."""
    return _simplify(d.area_factor * (d.x1 - d.x0) * sympy.log(d.y1 / d.y0))


def closed_form_length(d: LeafDomain) -> sympy.Expr:
    """Horizontal sides contribute c (x1 − x0) each, vertical sides c (y1 − y0) each."""
    return _simplify(d.length_factor * 2 * ((d.x1 - d.x0) + (d.y1 - d.y0)))


def closed_form_ratio(d: LeafDomain) -> sympy.Expr:
    return _simplify(closed_form_length(d) / closed_form_area(d))


# Quadrature -----------------------------------------------------------------


@lru_cache(maxsize=None)
def _legendre(order: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(order)


def _graded_breaks(a: float, b: float) -> np.ndarray:
    """Breakpoints with panel ratio ≤ 2 towards a > 0, so 1/y-type integrands stay smooth per panel."""
    pts = [b]
    while pts[-1] / 2 > a * 2:
        pts.append(pts[-1] / 2)
    pts.append(a)
    return np.array(pts[::-1])


def _uniform_breaks(a: float, b: float) -> np.ndarray:
    return np.array([a, b])


def _composite_nodes(breaks: np.ndarray, level: int, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the composite rule with every panel split into 2^level."""
    t, w = _legendre(order)
    parts = 2**level
    lo, hi = breaks[:-1], breaks[1:]
    frac = np.arange(parts + 1) / parts
    sub = lo[:, None] + (hi - lo)[:, None] * frac[None, :]
    a, b = sub[:, :-1].ravel(), sub[:, 1:].ravel()
    half = (b - a) / 2
    nodes = (a + b)[:, None] / 2 + half[:, None] * t[None, :]
    weights = half[:, None] * w[None, :]
    return nodes.ravel(), weights.ravel()


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    achieved_error: float
    levels: int


def _refine(estimate: Callable[[int], tuple[float, int]], tol: float) -> QuadratureResult:
    if not tol > 0:
        raise QuadratureNonconvergence(f"tolerance {tol!r} is not attainable", math.inf, 0)
    prev, work = estimate(0)
    err = math.inf
    for level in range(1, MAX_LEVELS + 1):
        cur, work = estimate(level)
        err = abs(cur - prev) / abs(cur) if cur != 0 else abs(cur - prev)
        if err <= tol:
            return QuadratureResult(cur, err, level)
        prev = cur
        if 4 * work > MAX_EVALUATIONS:
            break
    raise QuadratureNonconvergence(f"tolerance {tol:g} not met after {level} levels", err, level)


def integrate_rectangle(f: Callable[[np.ndarray, np.ndarray], np.ndarray], x0: float, x1: float,
                        y0: float, y1: float, tol: float, order: int = GAUSS_ORDER) -> QuadratureResult:
    """Tensor composite Gauss–Legendre over a rectangle, graded towards y0 when y0 > 0."""
    xb = _uniform_breaks(x0, x1)
    yb = _graded_breaks(y0, y1) if y0 > 0 else _uniform_breaks(y0, y1)

    def estimate(level):
        xn, xw = _composite_nodes(xb, level, order)
        yn, yw = _composite_nodes(yb, level, order)
        vals = f(xn[:, None], yn[None, :])
        return float(xw @ vals @ yw), xn.size * yn.size

    return _refine(estimate, tol)


def integrate_segment(f: Callable[[np.ndarray], np.ndarray], a: float, b: float, tol: float,
                      graded: bool = False, order: int = GAUSS_ORDER) -> QuadratureResult:
    breaks = _graded_breaks(a, b) if graded and a > 0 else _uniform_breaks(a, b)

    def estimate(level):
        n, w = _composite_nodes(breaks, level, order)
        return float(w @ f(n)), n.size

    return _refine(estimate, tol)


def _check_floats(d: LeafDomain) -> tuple[float, float, float, float]:
    x0, x1, y0, y1 = d.floats()
    if not y0 > 0:
        raise QuadratureNonconvergence("y0 underflows double precision", math.inf, 0)
    return x0, x1, y0, y1


def quadrature_area(d: LeafDomain, tol: float = 1e-12) -> QuadratureResult:
    x0, x1, y0, y1 = _check_floats(d)
    c = float(d.area_factor)
    # density c·y against the hyperbolic area element dx dy / y²
    return integrate_rectangle(lambda x, y: np.broadcast_to(c * y / y**2, np.broadcast_shapes(x.shape, y.shape)),
                               x0, x1, y0, y1, tol)


def quadrature_length(d: LeafDomain, tol: float = 1e-12) -> QuadratureResult:
    """Sum over the four sides of ∫ density · ds, ds = |dz| / y."""
    x0, x1, y0, y1 = _check_floats(d)
    c = float(d.length_factor)

    def horizontal(height):
        return lambda x: np.full_like(x, c * height / height)

    def vertical(y):
        return c * y / y

    sides = [
        integrate_segment(horizontal(y0), x0, x1, tol),
        integrate_segment(horizontal(y1), x0, x1, tol),
        integrate_segment(vertical, y0, y1, tol, graded=True),
        integrate_segment(vertical, y0, y1, tol, graded=True),
    ]
    return QuadratureResult(sum(s.value for s in sides), max(s.achieved_error for s in sides),
                            max(s.levels for s in sides))


# Public operations ----------------------------------------------------------

CLOSED_FORM = "closed-form"
QUADRATURE = "quadrature"


def modified_area(d: LeafDomain, method: str = CLOSED_FORM, tol: float = 1e-12) -> float:
    if method == CLOSED_FORM:
        return float(closed_form_area(d))
    return quadrature_area(d, tol).value


def modified_boundary_length(d: LeafDomain, method: str = CLOSED_FORM, tol: float = 1e-12) -> float:
    if method == CLOSED_FORM:
        return float(closed_form_length(d))
    return quadrature_length(d, tol).value


def isoperimetric_ratio(d: LeafDomain, method: str = CLOSED_FORM, tol: float = 1e-12) -> float:
    return modified_boundary_length(d, method, tol) / modified_area(d, method, tol)


def isoperimetric_record(d: LeafDomain, n: Optional[int] = None, method: str = CLOSED_FORM,
                         tol: float = 1e-12) -> IsoperimetricRecord:
    if method == CLOSED_FORM:
        area, length = float(closed_form_area(d)), float(closed_form_length(d))
        return IsoperimetricRecord(n, area, length, length / area, method, 0.0)
    qa, ql = quadrature_area(d, tol), quadrature_length(d, tol)
    return IsoperimetricRecord(n, qa.value, ql.value, ql.value / qa.value, method,
                               max(qa.achieved_error, ql.achieved_error))


def quadrature_validate(d: LeafDomain, tol: float) -> ValidationReport:
    """Compare quadrature against the closed form for both area and length.

    Passes when each relative discrepancy is at most ``tol``.  Nonconvergence
    is reported as a failed validation carrying the achieved error.
    """
    area_cf = float(closed_form_area(d))
    length_cf = float(closed_form_length(d))
    inner = tol / 10
    try:
        qa = quadrature_area(d, inner)
        ql = quadrature_length(d, inner)
    except QuadratureNonconvergence as exc:
        return ValidationReport(area_cf, None, exc.achieved_error, length_cf, None, exc.achieved_error,
                                tol, False, f"quadrature: {exc}")
    area_err = abs(qa.value - area_cf) / abs(area_cf)
    length_err = abs(ql.value - length_cf) / abs(length_cf)
    passed = area_err <= tol and length_err <= tol
    return ValidationReport(area_cf, qa.value, area_err, length_cf, ql.value, length_err, tol, passed,
                            "" if passed else "quadrature: closed form not matched")
