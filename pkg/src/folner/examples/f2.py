"""The boundary action of the free group F₂ = ⟨a, b⟩ and its Busemann cocycle.

Words are strings over ``abAB`` (capital = inverse).  A boundary point is an
eventually periodic reduced infinite word ``preperiod·period^∞``.

Orbit points are *formal* translates ``g·x`` labelled by the reduced group
element ``g``.  For a periodic ``x`` the translates ``g·x`` and ``g·s·x``
(``s`` in the stabiliser) spell the same infinite word but stay distinct
points here, so the orbit graph is always the 4-regular tree, as for a
generic boundary point.

Sums over the averaging sets ``A_n^x`` grow like ``3^n`` points.  They are
computed by grouping points of one horosphere level by their first letters and
counting the completions with a last-letter transfer count, so ``n`` in the
hundreds is cheap.  See :func:`level_profile`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator, Optional, Sequence

from ..cocycle import Cocycle, PointOutsideOrbit
from ..measure import (
    TestFunction,
    cylinder,
    laplace_function,
    markov_function,
    pushforward_integrand,
    reweighted_integrand,
)
from ..orbit import Generator, OrbitWindow

ALPHABET = "abAB"


class NonReducedWord(ValueError):
    pass


def inverse_letter(c: str) -> str:
    return c.swapcase()


def invert(word: str) -> str:
    return word[::-1].swapcase()


def is_reduced(word: str) -> bool:
    if any(c not in ALPHABET for c in word):
        return False
    return all(word[i + 1] != word[i].swapcase() for i in range(len(word) - 1))


def reduce_word(word: str) -> str:
    out: list[str] = []
    for c in word:
        if c not in ALPHABET:
            raise NonReducedWord(f"letter {c!r} not in {ALPHABET}")
        if out and out[-1] == c.swapcase():
            out.pop()
        else:
            out.append(c)
    return "".join(out)


def multiply(u: str, v: str) -> str:
    """Reduced product of two reduced words."""
    i = 0
    while i < len(u) and i < len(v) and u[-1 - i] == v[i].swapcase():
        i += 1
    return u[: len(u) - i] + v[i:]


def _require_reduced(word: str) -> None:
    if not is_reduced(word):
        raise NonReducedWord(word)


def reduced_words(length: int, after: Optional[str] = None, last_not: Optional[str] = None) -> Iterator[str]:
    """Reduced words of a given length in lexicographic (ALPHABET) order.

    ``after``: the word must be able to follow that letter (first letter ≠ its inverse).
    ``last_not``: the final letter must differ from this one.
    """
    if length == 0:
        yield ""
        return

    def extend(prefix: str, prev: Optional[str]):
        if len(prefix) == length:
            yield prefix
            return
        last = len(prefix) == length - 1
        for c in ALPHABET:
            if prev is not None and c == prev.swapcase():
                continue
            if last and c == last_not:
                continue
            yield from extend(prefix + c, c)

    yield from extend("", after)


def _primitive_root(word: str) -> str:
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and word[:d] * (n // d) == word:
            return word[:d]
    return word


@dataclass(frozen=True)
class BoundaryPoint:
    """Eventually periodic reduced infinite word, stored in canonical form."""

    preperiod: str
    period: str

    def __post_init__(self):
        pre, per = self.preperiod, self.period
        if not per:
            raise ValueError("period must be nonempty")
        if not is_reduced(pre + per + per):
            raise NonReducedWord(f"{pre}({per})^inf is not reduced")
        per = _primitive_root(per)
        while pre and pre[-1] == per[-1]:
            pre, per = pre[:-1], per[-1] + per[:-1]
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    @classmethod
    def parse(cls, preperiod: str = "", period: str = "ab", prefix: str = "") -> "BoundaryPoint":
        """``prefix·preperiod·period^∞``; the prefix may cancel into the rest."""
        return cls(preperiod, period).act(reduce_word(prefix))

    def letters(self, n: int) -> str:
        s = self.preperiod
        if len(s) < n:
            s += self.period * ((n - len(s)) // len(self.period) + 1)
        return s[:n]

    @property
    def first(self) -> str:
        return self.letters(1)

    def tail(self) -> "BoundaryPoint":
        """Drop the first letter."""
        if self.preperiod:
            return BoundaryPoint(self.preperiod[1:], self.period)
        return BoundaryPoint("", self.period[1:] + self.period[0])

    def act(self, word: str) -> "BoundaryPoint":
        """Left multiplication ``word·x`` followed by reduction."""
        _require_reduced(word)
        x, i = self, len(word)
        while i > 0 and x.first == word[i - 1].swapcase():
            i -= 1
            x = x.tail()
        return BoundaryPoint(word[:i] + x.preperiod, x.period)

    def __str__(self) -> str:
        return f"{self.preperiod}({self.period})^inf"


@dataclass(frozen=True)
class F2Point:
    """The orbit point ``word·base``."""

    word: str
    base: BoundaryPoint

    def letters(self, n: int) -> str:
        """First n letters of the infinite word of this point."""
        w = self.word
        if not w:
            return self.base.letters(n)
        if w[-1] != self.base.first.swapcase():
            return (w + self.base.letters(max(0, n - len(w))))[:n]
        return self.boundary().letters(n)

    def boundary(self) -> BoundaryPoint:
        return _act_cached(self.base, self.word)

    def __str__(self) -> str:
        return f"{self.word or '1'}.x"


@lru_cache(maxsize=65536)
def _act_cached(x: BoundaryPoint, word: str) -> BoundaryPoint:
    return x.act(word)


def _letter_generator(s: str) -> Generator:
    inv = s.swapcase()
    return Generator(
        s,
        lambda p: F2Point(multiply(s, p.word), p.base),
        inv,
        lambda p: F2Point(multiply(inv, p.word), p.base),
    )


GENERATORS: tuple[Generator, ...] = tuple(_letter_generator(s) for s in ALPHABET)


def f2_generators() -> tuple[Generator, ...]:
    return GENERATORS


def f2_window(x: BoundaryPoint, radius: int) -> OrbitWindow:
    """Window of the free orbit of x; graph distance to x is the word length."""
    return OrbitWindow(
        GENERATORS,
        F2Point("", x),
        radius,
        depth_fn=lambda p: len(p.word) if isinstance(p, F2Point) and p.base == x else None,
    )


def busemann(gamma: str, x: BoundaryPoint) -> int:
    """b_x(γ) = |γ| − 2·(length of the common prefix of γ and x)."""
    _require_reduced(gamma)
    xs = x.letters(len(gamma))
    k = 0
    while k < len(gamma) and gamma[k] == xs[k]:
        k += 1
    return len(gamma) - 2 * k


def horosphere_level(z: F2Point, x: BoundaryPoint) -> int:
    """b_x(γ) for the γ with z = γ⁻¹·x."""
    if not isinstance(z, F2Point) or z.base != x:
        raise PointOutsideOrbit(z)
    return busemann(invert(z.word), x)


def _power_of_three(e: int) -> Fraction:
    return Fraction(3**e) if e >= 0 else Fraction(1, 3**-e)


def busemann_cocycle(x: BoundaryPoint) -> Cocycle:
    """Exact cocycle with δ(γ⁻¹·y, y) = 3^(−b_y(γ)) for every orbit point y.

    Each pair is evaluated through the Busemann function of the infinite word
    of y, not through a stored potential.
    """

    def evaluate(z, y):
        for p in (z, y):
            if not isinstance(p, F2Point) or p.base != x:
                raise PointOutsideOrbit(p)
        gamma = multiply(y.word, invert(z.word))
        return _power_of_three(-busemann(gamma, y.boundary()))

    return Cocycle(evaluate, "exact", f"busemann[{x}]")


def busemann_weight(x: BoundaryPoint) -> Callable[[F2Point], Fraction]:
    """z ↦ 3^(−level(z)), the potential of the Busemann cocycle based at x."""
    return lambda z: _power_of_three(-horosphere_level(z, x))


# Averaging sets A_n^x -------------------------------------------------------


def _forbidden_last(x: BoundaryPoint) -> str:
    return x.first.swapcase()


def in_averaging_set(z: F2Point, x: BoundaryPoint, n: int) -> bool:
    w = z.word
    return z.base == x and len(w) <= n and (not w or w[-1] != _forbidden_last(x))


def f2_level(x: BoundaryPoint, k: int) -> list[F2Point]:
    """A_n^x ∩ H_k(x) for any n ≥ k: 3^k points (one for k = 0)."""
    return [F2Point(g, x) for g in reduced_words(k, last_not=_forbidden_last(x) if k else None)]


def f2_averaging_set(x: BoundaryPoint, n: int) -> frozenset:
    """A_n^x = {γ⁻¹·x : b_x(γ) = |γ| ≤ n}, materialized."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return frozenset(p for k in range(n + 1) for p in f2_level(x, k))


def equidistributed_mass(depth: int) -> Fraction:
    """Mass of every depth-D cylinder under the equidistributed boundary measure."""
    return Fraction(1, 4 * 3 ** (depth - 1))


def all_cylinders(depth: int) -> list[str]:
    return list(reduced_words(depth))


# Level counting --------------------------------------------------------------


@lru_cache(maxsize=None)
def _last_letter_counts(last: str, m: int) -> tuple[int, ...]:
    """Reduced continuations of length m after ``last``, counted by final letter."""
    if m == 0:
        return tuple(int(c == last) for c in ALPHABET)
    prev = _last_letter_counts(last, m - 1)
    total = sum(prev)
    # a letter b may follow anything except b⁻¹
    return tuple(total - prev[ALPHABET.index(c.swapcase())] for c in ALPHABET)


def continuation_count(last: str, m: int, forbid: Optional[str]) -> int:
    """Number of reduced words v, |v| = m, with last·v reduced and not ending in ``forbid``."""
    counts = _last_letter_counts(last, m)
    return sum(n for c, n in zip(ALPHABET, counts) if c != forbid)


def _filler(last: str, m: int, forbid: Optional[str]) -> str:
    out, prev = [], last
    for i in range(m):
        for c in ALPHABET:
            if c != prev.swapcase() and (i < m - 1 or c != forbid):
                break
        out.append(c)
        prev = c
    return "".join(out)


def level_profile(
    x: BoundaryPoint,
    phi: Callable[[F2Point], Fraction],
    depth: int,
    k_max: int,
    homogeneous: bool = False,
) -> list:
    """Per-level sums S_k = Σ_{z ∈ A^x ∩ H_k(x)} φ(z) for k = 0..k_max.

    Contract: for |g| > depth + 1, φ(g·x) depends only on the first depth + 1
    letters of g and on |g|.  Levels up to depth + 1 are enumerated; above
    that, each prefix is evaluated on one representative completion and
    multiplied by its number of completions.

    ``homogeneous=True`` additionally asserts φ scales by exactly 1/3 per
    level (true for f(z)·δ(z, x) with f depending on finitely many letters);
    it is checked on two levels and then extrapolated.
    """
    ell = _forbidden_last(x)
    cutoff = depth + 1
    sums: list = []
    for k in range(min(cutoff, k_max) + 1):
        sums.append(sum((phi(p) for p in f2_level(x, k)), Fraction(0)))
    if k_max <= cutoff:
        return sums
    sums.extend(Fraction(0) for _ in range(cutoff + 1, k_max + 1))
    for u in reduced_words(cutoff):
        last = u[-1]

        def rep(m):
            return F2Point(u + _filler(last, m, ell), x)

        if homogeneous:
            # representatives never go deeper than level k_max
            v1 = phi(rep(1))
            if k_max >= cutoff + 2 and phi(rep(2)) * 3 != v1:
                raise ValueError(f"phi is not level-homogeneous on prefix {u!r}")
        for k in range(cutoff + 1, k_max + 1):
            m = k - cutoff
            c = continuation_count(last, m, ell)
            if c == 0:
                continue
            v = v1 / 3 ** (m - 1) if homogeneous else phi(rep(m))
            sums[k] += c * v
    return sums


def cylinder_level_masses(x: BoundaryPoint, depth: int, k_max: int) -> dict[str, list[Fraction]]:
    """Level-k δ-mass of A^x ∩ H_k(x) ∩ [w] for every depth-D cylinder w."""
    ell = _forbidden_last(x)
    out = {w: [Fraction(0)] * (k_max + 1) for w in all_cylinders(depth)}
    for k in range(min(depth, k_max + 1)):
        wt = Fraction(1, 3**k)
        for p in f2_level(x, k):
            out[p.letters(depth)][k] += wt
    for w in out:
        for k in range(depth, k_max + 1):
            out[w][k] = Fraction(continuation_count(w[-1], k - depth, ell), 3**k)
    return out


class AveragingFamily:
    """The δ-averaging sequence ν_n built from A_n^x, n = 0..n_max, level-counted."""

    def __init__(self, x: BoundaryPoint, n_max: int):
        self.x = x
        self.n_max = n_max
        self.delta = busemann_cocycle(x)
        self.base = F2Point("", x)
        self.window = f2_window(x, n_max + 1)
        self._masses = self._cumulative(level_profile(x, self.weight, 0, n_max, homogeneous=True))

    def weight(self, z: F2Point) -> Fraction:
        return self.delta(z, self.base)

    @staticmethod
    def _cumulative(levels: Sequence) -> list:
        out, acc = [], Fraction(0)
        for v in levels:
            acc += v
            out.append(acc)
        return out

    def mass(self, n: int) -> Fraction:
        """|A_n^x|_x."""
        return self._masses[n]

    def integral_series(self, func: Callable, depth: int) -> list[Fraction]:
        """[∫ func dν_n for n = 0..n_max]."""
        levels = level_profile(self.x, lambda z: func(z) * self.weight(z), depth, self.n_max, homogeneous=True)
        return [s / m for s, m in zip(self._cumulative(levels), self._masses)]

    def measure(self, n: int) -> "AveragingMeasure":
        return AveragingMeasure(self, n)

    def boundary_mass(self, n: int) -> Fraction:
        """|∂A_n^x|_x, counted."""
        x = self.x

        def phi(z):
            inside = all(in_averaging_set(g.apply(z), x, n) for g in GENERATORS)
            return Fraction(0) if inside else self.weight(z)

        return sum(level_profile(x, phi, 1, n), Fraction(0))

    def difference_mass(self, n: int, gamma: Generator) -> Fraction:
        """|Δ_γA_n^x|_x, counted; entering points are reached as γ⁻¹ of points of A."""
        x = self.x

        def phi(a):
            v = Fraction(0)
            if not in_averaging_set(gamma.apply(a), x, n):
                v += self.weight(a)
            pre = gamma.unapply(a)
            if not in_averaging_set(pre, x, n):
                v += self.weight(pre)
            return v

        return sum(level_profile(x, phi, 1, n), Fraction(0))

    def harmonicity_defects(self, f: TestFunction) -> list[Fraction]:
        lap = laplace_function(self.window, f)
        return [abs(v) for v in self.integral_series(lap.evaluate, lap.depth)]

    def stationarity_defects(self, f: TestFunction) -> list[Fraction]:
        mk = markov_function(self.window, f)
        d = self.integral_series(mk.evaluate, mk.depth)
        i = self.integral_series(f.evaluate, mk.depth)
        return [abs(a - b) for a, b in zip(d, i)]

    def quasi_invariance_defects(self, gamma: Generator, f: TestFunction) -> list[Fraction]:
        depth = f.depth + 1
        pushed = self.integral_series(pushforward_integrand(gamma, f), depth)
        rewt = self.integral_series(reweighted_integrand(gamma, f, self.delta), depth)
        return [abs(a - b) for a, b in zip(pushed, rewt)]

    def cylinder_masses(self, depth: int) -> dict[str, list[Fraction]]:
        """ν_n([w]) for every depth-D cylinder and n = 0..n_max."""
        levels = cylinder_level_masses(self.x, depth, self.n_max)
        return {w: [s / m for s, m in zip(self._cumulative(v), self._masses)] for w, v in levels.items()}


@dataclass(frozen=True)
class AveragingMeasure:
    """ν_n(B) = |B ∩ A_n^x|_x / |A_n^x|_x, without materializing atoms."""

    family: AveragingFamily
    n: int

    def __post_init__(self):
        if not 0 <= self.n <= self.family.n_max:
            raise ValueError(f"n={self.n} outside 0..{self.family.n_max}")

    @property
    def total(self) -> Fraction:
        return Fraction(1)

    def weight(self, p: F2Point) -> Fraction:
        if not in_averaging_set(p, self.family.x, self.n):
            return Fraction(0)
        return self.family.weight(p) / self.family.mass(self.n)

    def expect(self, func: Callable, depth: Optional[int] = None) -> Fraction:
        if depth is None:
            raise ValueError("level-counted integration needs a depth bound for the integrand")
        x = self.family.x
        levels = level_profile(x, lambda z: func(z) * self.family.weight(z), depth, self.n, homogeneous=True)
        return sum(levels, Fraction(0)) / self.family.mass(self.n)


def cylinder_family(max_depth: int) -> list[TestFunction]:
    """All cylinder indicators of depth 1..max_depth."""
    return [cylinder(w) for d in range(1, max_depth + 1) for w in all_cylinders(d)]
