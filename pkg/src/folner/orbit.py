"""Orbit graphs of finitely generated pseudogroup actions, seen through finite windows.

A window is the part of one orbit within a fixed graph distance of a base
point.  Every operation that could be truncated by that horizon raises
:class:`HorizonExceeded` instead of returning a partial answer.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Optional, Sequence

Point = Hashable


class HorizonExceeded(RuntimeError):
    """The window is too small to answer exactly."""


class PointNotInWindow(LookupError):
    pass


@dataclass(frozen=True)
class Generator:
    """One element of a symmetric generating set.

    ``apply`` and ``unapply`` are mutually inverse partial maps; they return
    ``None`` where the map is undefined.
    """

    label: str
    apply: Callable[[Point], Optional[Point]]
    inverse_label: str
    unapply: Callable[[Point], Optional[Point]]

    def __call__(self, p: Point) -> Optional[Point]:
        return self.apply(p)

    def __repr__(self) -> str:
        return f"Generator({self.label!r})"


def generator_pair(label: str, inverse_label: str, forward, backward) -> tuple[Generator, Generator]:
    """Build a generator and its inverse from two mutually inverse partial maps."""
    if label == inverse_label:
        g = Generator(label, forward, label, backward)
        return g, g
    return (
        Generator(label, forward, inverse_label, backward),
        Generator(inverse_label, backward, label, forward),
    )


class OrbitWindow:
    """Finite induced subgraph of an orbit graph, centred at ``base``.

    By default the window is materialized by breadth-first search.  Orbits
    with a closed-form distance to the base (free-group orbits) may pass
    ``depth_fn`` instead, in which case vertices are enumerated only on demand.
    """

    def __init__(
        self,
        generators: Sequence[Generator],
        base: Point,
        radius: int,
        depth_fn: Optional[Callable[[Point], int]] = None,
    ):
        if radius < 0:
            raise ValueError("radius must be nonnegative")
        self.generators = tuple(generators)
        self._by_label = {g.label: g for g in self.generators}
        if len(self._by_label) != len(self.generators):
            raise ValueError("duplicate generator labels")
        for g in self.generators:
            if g.inverse_label not in self._by_label:
                raise ValueError(f"generating set not closed under inversion: {g.label!r}")
        self.base = base
        self.radius = radius
        self._depth_fn = depth_fn
        self._depths: Optional[dict[Point, int]] = None
        if depth_fn is None:
            self._depths = self._bfs()

    def _bfs(self) -> dict[Point, int]:
        depths = {self.base: 0}
        frontier = [self.base]
        for d in range(1, self.radius + 1):
            nxt = []
            for p in frontier:
                for g in self.generators:
                    q = g.apply(p)
                    if q is not None and q not in depths:
                        depths[q] = d
                        nxt.append(q)
            frontier = nxt
        return depths

    def depth(self, p: Point) -> Optional[int]:
        """Graph distance from the base, or None if ``p`` is outside the window."""
        if self._depth_fn is not None:
            d = self._depth_fn(p)
            return d if d is not None and d <= self.radius else None
        return self._depths.get(p)

    def __contains__(self, p: Point) -> bool:
        return self.depth(p) is not None

    @property
    def vertices(self) -> frozenset:
        if self._depths is None:
            self._depths = self._bfs()
        return frozenset(self._depths)

    def __len__(self) -> int:
        return len(self.vertices)

    def generator(self, label: str) -> Generator:
        return self._by_label[label]

    def inverse(self, g: Generator) -> Generator:
        return self._by_label[g.inverse_label]

    def require(self, p: Point) -> int:
        d = self.depth(p)
        if d is None:
            raise PointNotInWindow(p)
        return d

    def interior(self) -> list:
        """Vertices whose whole neighbourhood lies in the window."""
        return [p for p in self.vertices if _neighbours_inside(self, p)]

    def degree(self, p: Point) -> int:
        return len(neighbors(self, p))


def _neighbours_inside(w: OrbitWindow, p: Point) -> bool:
    return all(q in w for _, q in neighbors(w, p))


def neighbors(w: OrbitWindow, p: Point) -> list[tuple[str, Point]]:
    """All ``(label, γ(p))`` with ``γ(p)`` defined; the length is ``deg(p)``."""
    w.require(p)
    out = []
    for g in w.generators:
        q = g.apply(p)
        if q is not None:
            out.append((g.label, q))
    return out


def full_neighbors(w: OrbitWindow, p: Point) -> list[Point]:
    """Neighbour points of ``p``, failing if any of them lies beyond the horizon."""
    out = []
    for _, q in neighbors(w, p):
        if q not in w:
            raise HorizonExceeded(f"neighbour {q!r} of {p!r} is outside the window")
        out.append(q)
    return out


def ball(w: OrbitWindow, p: Point, n: int) -> frozenset:
    """Γ^(n)(p): all points within graph distance n of p."""
    d = w.require(p)
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > w.radius - d:
        raise HorizonExceeded(f"ball of radius {n} around a depth-{d} point needs radius {n + d}")
    seen = {p}
    frontier = [p]
    for _ in range(n):
        nxt = []
        for z in frontier:
            for g in w.generators:
                q = g.apply(z)
                if q is not None and q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return frozenset(seen)


def graph_distance(w: OrbitWindow, p: Point, q: Point, cap: int) -> Optional[int]:
    """Breadth-first distance from p to q; None when it exceeds ``cap``."""
    w.require(p)
    w.require(q)
    if p == q:
        return 0
    seen = {p}
    frontier = deque([(p, 0)])
    while frontier:
        z, d = frontier.popleft()
        if d == cap:
            continue
        for g in w.generators:
            u = g.apply(z)
            if u is None or u in seen:
                continue
            if u == q:
                return d + 1
            seen.add(u)
            frontier.append((u, d + 1))
    return None


def _check_subset(w: OrbitWindow, A: Iterable[Point]) -> frozenset:
    A = frozenset(A)
    for p in A:
        w.require(p)
    return A


def vertex_boundary(w: OrbitWindow, A: Iterable[Point]) -> frozenset:
    """Inner vertex boundary: points of A having a neighbour outside A."""
    A = _check_subset(w, A)
    return frozenset(v for v in A if any(q not in A for q in full_neighbors(w, v)))


def difference_set(w: OrbitWindow, A: Iterable[Point], gamma: Generator) -> frozenset:
    """Δ_γA = {x ∈ A : γ(x) ∉ A} ∪ {x ∉ A : γ(x) ∈ A}.

    An undefined γ(x) counts as lying outside A.
    """
    A = _check_subset(w, A)
    leaving = {x for x in A if (gx := gamma.apply(x)) is None or gx not in A}
    entering = set()
    for a in A:
        x = gamma.unapply(a)
        if x is None or x in A:
            continue
        if x not in w:
            raise HorizonExceeded(f"preimage {x!r} of {a!r} is outside the window")
        entering.add(x)
    return frozenset(leaving | entering)
