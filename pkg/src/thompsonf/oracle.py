"""Elements of F as exact piecewise-linear homeomorphisms of [0, 1].

Entirely independent of the rewriting code: a word is evaluated by composing
the generator maps as functions, so the map of ``uv`` is ``u o v`` and the
rightmost letter acts first.  This is the convention under which both defining
relators are trivial for the generator maps below (checked at import).  All
arithmetic is exact on dyadic rationals.
"""

from __future__ import annotations

from bisect import bisect_right
from fractions import Fraction
from functools import total_ordering

from .words import commutator, invert


@total_ordering
class Dyadic:
    """``num / 2**exp`` with ``num`` odd unless the value is 0."""

    __slots__ = ("num", "exp")

    def __init__(self, num: int, exp: int = 0):
        if num == 0:
            exp = 0
        elif exp < 0:
            num, exp = num << -exp, 0
        else:
            tz = (num & -num).bit_length() - 1
            if tz:
                tz = min(tz, exp)
                num >>= tz
                exp -= tz
        self.num = num
        self.exp = exp

    @classmethod
    def parse(cls, text: str) -> "Dyadic":
        f = Fraction(text)
        exp = f.denominator.bit_length() - 1
        if f.denominator != 1 << exp:
            raise ValueError(f"{text} is not dyadic")
        return cls(f.numerator, exp)

    def _align(self, other: "Dyadic"):
        e = max(self.exp, other.exp)
        return self.num << (e - self.exp), other.num << (e - other.exp), e

    def __add__(self, other):
        a, b, e = self._align(other)
        return Dyadic(a + b, e)

    def __sub__(self, other):
        a, b, e = self._align(other)
        return Dyadic(a - b, e)

    def __neg__(self):
        return Dyadic(-self.num, self.exp)

    def __mul__(self, other):
        return Dyadic(self.num * other.num, self.exp + other.exp)

    def scale(self, k: int) -> "Dyadic":
        """Multiply by 2**k."""
        return Dyadic(self.num, self.exp - k)

    def __eq__(self, other):
        return isinstance(other, Dyadic) and self.num == other.num and self.exp == other.exp

    def __lt__(self, other):
        a, b, _ = self._align(other)
        return a < b

    def __hash__(self):
        return hash((self.num, self.exp))

    def __repr__(self):
        return f"Dyadic({self.num}, {self.exp})"

    def __str__(self):
        return str(self.num) if self.exp == 0 else f"{self.num}/{1 << self.exp}"

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, 1 << self.exp)


ZERO, ONE = Dyadic(0), Dyadic(1)


def _slope_exponent(dx: Dyadic, dy: Dyadic) -> int:
    """k with dy == 2**k * dx; raises if the ratio is not a power of two."""
    if dx.num <= 0 or dy.num <= 0 or dx.num != dy.num:
        raise ValueError(f"slope {dy}/{dx} is not a positive power of two")
    return dx.exp - dy.exp


class PLMap:
    """Breakpoint list ``((x0, y0), ..., (xk, yk))`` from (0,0) to (1,1) with
    no collinear interior breakpoints."""

    __slots__ = ("xs", "ys", "slopes")

    def __init__(self, points, check: bool = True):
        xs = [p[0] for p in points]
        ys = [p[1] for p in points]
        if check:
            if xs[0] != ZERO or ys[0] != ZERO or xs[-1] != ONE or ys[-1] != ONE:
                raise ValueError("map must fix 0 and 1")
        slopes = [_slope_exponent(xs[k + 1] - xs[k], ys[k + 1] - ys[k]) for k in range(len(xs) - 1)]
        # drop breakpoints where the slope does not change
        keep = [0] + [k for k in range(1, len(xs) - 1) if slopes[k - 1] != slopes[k]] + [len(xs) - 1]
        self.xs = tuple(xs[k] for k in keep)
        self.ys = tuple(ys[k] for k in keep)
        self.slopes = tuple(slopes[k] for k in keep[:-1])

    @classmethod
    def from_fractions(cls, pairs) -> "PLMap":
        return cls([(Dyadic.parse(str(a)), Dyadic.parse(str(b))) for a, b in pairs])

    @property
    def breakpoints(self):
        return tuple(zip(self.xs, self.ys))

    def __call__(self, t: Dyadic) -> Dyadic:
        k = min(bisect_right(self.xs, t) - 1, len(self.xs) - 2)
        return self.ys[k] + (t - self.xs[k]).scale(self.slopes[k])

    def preimage(self, u: Dyadic) -> Dyadic:
        k = min(bisect_right(self.ys, u) - 1, len(self.ys) - 2)
        return self.xs[k] + (u - self.ys[k]).scale(-self.slopes[k])

    def inverse(self) -> "PLMap":
        return PLMap(list(zip(self.ys, self.xs)), check=False)

    def then(self, g: "PLMap") -> "PLMap":
        """The composite "first self, then g"."""
        pts = set(self.xs)
        for b in g.xs[1:-1]:
            pts.add(self.preimage(b))
        xs = sorted(pts)
        return PLMap([(t, g(self(t))) for t in xs], check=False)

    def __eq__(self, other):
        return isinstance(other, PLMap) and self.xs == other.xs and self.ys == other.ys

    def __hash__(self):
        return hash((self.xs, self.ys))

    def __repr__(self):
        return "PLMap(" + ", ".join(f"({a}, {b})" for a, b in self.breakpoints) + ")"

    def format(self) -> str:
        return " ".join(f"({a},{b})" for a, b in self.breakpoints)


IDENTITY_MAP = PLMap([(ZERO, ZERO), (ONE, ONE)])

_X = PLMap.from_fractions([(0, 0), ("1/2", "1/4"), ("3/4", "1/2"), (1, 1)])
_Y = PLMap.from_fractions([(0, 0), ("1/2", "1/2"), ("3/4", "5/8"), ("7/8", "3/4"), (1, 1)])
_GEN = {"x": _X, "X": _X.inverse(), "y": _Y, "Y": _Y.inverse()}


def generator_map(g) -> PLMap:
    a = getattr(g, "letter", g)
    return _GEN[a]


def compose(f: PLMap, g: PLMap) -> PLMap:
    """``f o g``: the map of the concatenation of a word for f with a word for g."""
    return g.then(f)


_cache: dict[str, PLMap] = {"": IDENTITY_MAP}
_CACHE_LIMIT = 1 << 21


def evaluate(w: str) -> PLMap:
    """The element of F spelled by ``w``.  Results are cached by prefix, so
    evaluating many words that share prefixes is cheap."""
    m = _cache.get(w)
    if m is not None:
        return m
    k = len(w) - 1
    while k > 0 and w[:k] not in _cache:
        k -= 1
    m = _cache[w[:k]]
    if len(_cache) > _CACHE_LIMIT:
        _cache.clear()
        _cache[""] = IDENTITY_MAP
    for j in range(k, len(w)):
        m = _GEN[w[j]].then(m)
        _cache[w[: j + 1]] = m
    return m


def equal(m1: PLMap, m2: PLMap) -> bool:
    return m1 == m2


def same_element(w1: str, w2: str) -> bool:
    """Word problem through the oracle: evaluate ``w1 w2^-1`` once."""
    return evaluate(w1 + invert(w2)) == IDENTITY_MAP


def _check_relators():
    for r in (commutator("y", "xyXX"), commutator("y", "xxyXXX")):
        if evaluate(r) != IDENTITY_MAP:
            raise AssertionError(f"relator {r} is not trivial under the chosen generator maps")
    if evaluate("xy") == evaluate("yx"):
        raise AssertionError("generator maps commute; the oracle would not be faithful")


_check_relators()
