"""Piecewise monomial functions on an interval, in log coordinates.

A piecewise monomial function ``a * r^n`` becomes, after taking logs, a
piecewise linear function with integer slope ``n``.  This module stores
such functions exactly: rational breakpoints, rational values, integer
slopes.  The right end of the domain may be ``+inf`` (tails).

The tropical evaluation of a valued series ``h = sum_i h_i t^i`` is the
upper envelope ``x -> max_i (log|h_i| + i*x)``; it is convex, its slopes
are the exponents that dominate ``|h|`` on the corresponding radius
range, and ties between exponents are visible at the breakpoints.
"""

from __future__ import annotations

from bisect import bisect_right
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Tuple

from .valuation import INF, ExtendedRational, LogAbs, format_length, parse_length


class OutOfDomainError(ValueError):
    pass


class DomainMismatchError(ValueError):
    pass


class EmptySeriesError(ValueError):
    pass


Domain = Tuple[Fraction, ExtendedRational]


def _as_fraction(x) -> Fraction:
    if isinstance(x, LogAbs):
        return x.value
    return Fraction(x)


def _normalize_domain(domain) -> Domain:
    a, b = domain
    a = Fraction(a)
    if b is not INF:
        b = Fraction(b)
        if b < a:
            raise ValueError(f"empty domain [{a}, {b}]")
    return (a, b)


class PMFunction:
    """A continuous piecewise linear function with integer slopes.

    Stored as breakpoints ``a = x_0 < ... < x_k = b`` (``b`` may be
    ``+inf``) together with the value at the left endpoint and the slope
    of every segment.  Adjacent segments with equal slopes are merged,
    so equality of instances is equality of functions on a common
    domain.
    """

    __slots__ = ("_breaks", "_values", "_slopes")

    def __init__(
        self,
        breaks: Sequence[ExtendedRational],
        left_values: Sequence[Fraction],
        slopes: Sequence[int],
    ):
        if len(breaks) < 2 or len(left_values) != len(breaks) - 1 or len(
            slopes
        ) != len(breaks) - 1:
            raise ValueError("inconsistent segment data")
        bks = [Fraction(x) if x is not INF else INF for x in breaks]
        if any(b is INF for b in bks[:-1]):
            raise ValueError("only the final breakpoint may be infinite")
        vals = [_as_fraction(v) for v in left_values]
        slps = [int(s) for s in slopes]
        degenerate = len(bks) == 2 and bks[0] == bks[1]
        if not degenerate:
            for x0, x1 in zip(bks, bks[1:]):
                if not x0 < x1:
                    raise ValueError("breakpoints must be strictly increasing")
        # continuity at interior breakpoints
        for j in range(len(vals) - 1):
            width = bks[j + 1] - bks[j]
            if vals[j] + slps[j] * width != vals[j + 1]:
                raise ValueError(f"discontinuity at breakpoint {bks[j + 1]}")
        # merge adjacent segments of equal slope
        mb, mv, ms = [bks[0]], [], []
        for j in range(len(vals)):
            if ms and ms[-1] == slps[j] and not degenerate:
                mb[-1] = bks[j + 1]
                continue
            mv.append(vals[j])
            ms.append(slps[j])
            mb.append(bks[j + 1])
        self._breaks = tuple(mb)
        self._values = tuple(mv)
        self._slopes = tuple(ms)

    @classmethod
    def constant(cls, domain, value) -> "PMFunction":
        a, b = _normalize_domain(domain)
        return cls((a, b), (_as_fraction(value),), (0,))

    @classmethod
    def line(cls, domain, left_value, slope: int) -> "PMFunction":
        a, b = _normalize_domain(domain)
        return cls((a, b), (_as_fraction(left_value),), (slope,))

    @classmethod
    def identity(cls, domain) -> "PMFunction":
        """The function x -> x (slope-one line through the origin)."""
        a, b = _normalize_domain(domain)
        return cls.line((a, b), a, 1)

    @property
    def domain(self) -> Domain:
        return (self._breaks[0], self._breaks[-1])

    @property
    def breakpoints(self) -> Tuple[ExtendedRational, ...]:
        return self._breaks

    def segments(self) -> Iterable[tuple]:
        """Yield (x_left, x_right, left_value, slope) per segment."""
        for j in range(len(self._slopes)):
            yield (self._breaks[j], self._breaks[j + 1], self._values[j], self._slopes[j])

    @property
    def is_degenerate(self) -> bool:
        return len(self._breaks) == 2 and self._breaks[0] == self._breaks[1]

    def _contains(self, x: Fraction) -> bool:
        a, b = self.domain
        return a <= x and (b is INF or x <= b)

    def _segment_index(self, x: Fraction) -> int:
        # rightmost segment whose left endpoint is <= x; x == b uses the
        # last segment
        finite = [p for p in self._breaks if p is not INF]
        i = bisect_right(finite, x) - 1
        return min(max(i, 0), len(self._slopes) - 1)

    def value_at(self, x) -> Fraction:
        x = Fraction(x)
        if not self._contains(x):
            raise OutOfDomainError(f"{x} outside domain {self.domain}")
        j = self._segment_index(x)
        return self._values[j] + self._slopes[j] * (x - self._breaks[j])

    def eval(self, x) -> LogAbs:
        return LogAbs(self.value_at(x))

    def slope_at(self, x, direction: str) -> int:
        """Slope of the segment adjacent to ``x`` on the given side."""
        x = Fraction(x)
        if not self._contains(x):
            raise OutOfDomainError(f"{x} outside domain {self.domain}")
        a, b = self.domain
        if self.is_degenerate:
            raise OutOfDomainError("degenerate domain has no adjacent segments")
        if direction == "left":
            if x == a:
                raise OutOfDomainError(f"no segment left of {x}")
            finite = [p for p in self._breaks if p is not INF]
            i = bisect_right(finite, x) - 1
            if 0 <= i < len(finite) and i < len(self._breaks) and self._breaks[i] == x:
                return self._slopes[i - 1]
            return self._slopes[self._segment_index(x)]
        if direction == "right":
            if b is not INF and x == b:
                raise OutOfDomainError(f"no segment right of {x}")
            return self._slopes[self._segment_index(x)]
        raise ValueError(f"direction must be 'left' or 'right', got {direction!r}")

    def mul(self, other: "PMFunction") -> "PMFunction":
        """Pointwise product in the multiplicative scale: sum of logs."""
        if self.domain != other.domain:
            raise DomainMismatchError(
                f"domains differ: {self.domain} vs {other.domain}"
            )
        a, b = self.domain
        if self.is_degenerate:
            return PMFunction(
                (a, b),
                (self._values[0] + other._values[0],),
                (self._slopes[0] + other._slopes[0],),
            )
        cut = sorted(
            {p for p in self._breaks + other._breaks if p is not INF}
        )
        breaks: list = list(cut)
        if b is INF:
            breaks.append(INF)
        values, slopes = [], []
        for j in range(len(breaks) - 1):
            x = breaks[j]
            values.append(self.value_at(x) + other.value_at(x))
            slopes.append(
                self._slopes[self._segment_index(x)]
                + other._slopes[other._segment_index(x)]
            )
        return PMFunction(breaks, values, slopes)

    def pow(self, n: int) -> "PMFunction":
        """n-th power in the multiplicative scale: log values scale by n."""
        return PMFunction(
            self._breaks,
            [v * n for v in self._values],
            [s * n for s in self._slopes],
        )

    def sup(self) -> ExtendedRational:
        """Supremum over the domain (``INF`` if unbounded above)."""
        best = max(self._values)
        for j in range(len(self._slopes)):
            right = self._breaks[j + 1]
            if right is INF:
                if self._slopes[j] > 0:
                    return INF
                continue
            v = self._values[j] + self._slopes[j] * (right - self._breaks[j])
            if v > best:
                best = v
        return best

    def __eq__(self, other):
        if not isinstance(other, PMFunction):
            return NotImplemented
        return (
            self._breaks == other._breaks
            and self._values == other._values
            and self._slopes == other._slopes
        )

    def __hash__(self):
        return hash((self._breaks, self._values, self._slopes))

    def __repr__(self):
        parts = ", ".join(
            f"[{l},{r}]: {v}+{s}x" for l, r, v, s in self.segments()
        )
        return f"PMFunction({parts})"

    def to_json_dict(self) -> dict:
        return {
            "domain": [format_length(self._breaks[0]), format_length(self._breaks[-1])],
            "breakpoints": [format_length(x) for x in self._breaks],
            "segments": [
                {"left_value": str(v), "slope": s}
                for v, s in zip(self._values, self._slopes)
            ],
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "PMFunction":
        breaks = [parse_length(x) for x in data["breakpoints"]]
        values = [Fraction(seg["left_value"]) for seg in data["segments"]]
        slopes = [int(seg["slope"]) for seg in data["segments"]]
        return cls(breaks, values, slopes)


class NewtonProfile(PMFunction):
    """Tropical evaluation of a valued series, with achiever bookkeeping.

    Besides the envelope itself, the profile remembers which exponent
    realizes the maximum on each segment and can report the exact tie
    set at any point.  Just left of a point the minimal achieving
    exponent dominates, just right the maximal one; both conventions are
    exposed because the two sides of an annulus use opposite ones.
    """

    __slots__ = ("_coeffs", "_seg_achievers")

    def __init__(self, breaks, left_values, slopes, coeffs, seg_achievers):
        super().__init__(breaks, left_values, slopes)
        self._coeffs = dict(coeffs)
        self._seg_achievers = tuple(frozenset(s) for s in seg_achievers)

    @property
    def segment_achievers(self) -> Tuple[frozenset, ...]:
        return self._seg_achievers

    def achievers_at(self, x) -> frozenset:
        x = Fraction(x)
        if not self._contains(x):
            raise OutOfDomainError(f"{x} outside domain {self.domain}")
        best = max(v + i * x for i, v in self._coeffs.items())
        return frozenset(i for i, v in self._coeffs.items() if v + i * x == best)

    def min_achiever(self, x) -> int:
        """Dominant exponent just left of ``x`` (inward convention)."""
        return min(self.achievers_at(x))

    def max_achiever(self, x) -> int:
        """Dominant exponent just right of ``x`` (outward convention)."""
        return max(self.achievers_at(x))


def _upper_hull(points: Sequence[Tuple[int, Fraction]]) -> list:
    """Strict upper concave hull of points sorted by abscissa."""

    def strictly_above(a, b, c) -> bool:
        # b strictly above the chord a--c
        return (b[1] - a[1]) * (c[0] - a[0]) > (c[1] - a[1]) * (b[0] - a[0])

    hull: list = []
    for p in points:
        while len(hull) >= 2 and not strictly_above(hull[-2], hull[-1], p):
            hull.pop()
        hull.append(p)
    return hull


def tropical_eval(series, domain) -> NewtonProfile:
    """Upper envelope ``x -> max_i (log|h_i| + i*x)`` on ``domain``.

    ``series`` is a mapping ``exponent -> log coefficient`` (or any
    object exposing such a mapping as ``.coefficients``).
    """
    coeffs = getattr(series, "coefficients", series)
    pts = sorted((int(i), _as_fraction(v)) for i, v in coeffs.items())
    if not pts:
        raise EmptySeriesError("series has empty support")
    a, b = _normalize_domain(domain)
    cd = dict(pts)

    hull = _upper_hull(pts)
    crossings = []
    for (i1, v1), (i2, v2) in zip(hull, hull[1:]):
        crossings.append(Fraction(v1 - v2, i2 - i1))

    if b is not INF and a == b:
        best = max(v + i * a for i, v in pts)
        owner = min(i for i, v in pts if v + i * a == best)
        return NewtonProfile((a, b), (best,), (owner,), cd, ({owner},))

    # line j is active on [crossings[j-1], crossings[j]]
    breaks: list = [a]
    values: list = []
    slopes: list = []
    achievers: list = []
    for j, (i, v) in enumerate(hull):
        lo = crossings[j - 1] if j > 0 else None
        hi = crossings[j] if j < len(crossings) else None
        seg_lo = a if lo is None or lo < a else lo
        seg_hi = b if hi is None or (b is not INF and hi > b) else hi
        if seg_hi is not INF and not seg_lo < seg_hi:
            continue
        if breaks[-1] != seg_lo:
            # numeric guard; should not happen
            raise AssertionError("envelope segments are not contiguous")
        values.append(v + i * seg_lo)
        slopes.append(i)
        achievers.append({i})
        breaks.append(seg_hi)
    return NewtonProfile(breaks, values, slopes, cd, achievers)
