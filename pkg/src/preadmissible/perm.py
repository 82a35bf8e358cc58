"""Permutations of {1..n} with left-to-right composition.

``a * b`` applies ``a`` first: ``(a * b)(i) == b(a(i))``.  Every other
module relies on this convention.  Points are 1-based so cycle notation
matches the usual written form.

A permutation of degree m is identified with its extension to any larger
degree by fixed points; equality and hashing ignore trailing fixed points.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import MalformedInputError

__all__ = [
    "Permutation",
    "CycleType",
    "compose",
    "conjugate",
    "cycle_type",
    "parse_cycles",
    "format_cycles",
    "identity",
    "from_cycles",
]


class Permutation:
    __slots__ = ("_images", "_key", "_hash")

    def __init__(self, images: Sequence[int]):
        images = tuple(int(i) for i in images)
        n = len(images)
        if n == 0:
            raise MalformedInputError("a permutation needs degree >= 1")
        if sorted(images) != list(range(1, n + 1)):
            raise MalformedInputError(f"images {images} are not a bijection of 1..{n}")
        self._images = images
        k = n
        while k > 0 and images[k - 1] == k:
            k -= 1
        self._key = images[:k]
        self._hash = hash(self._key)

    @classmethod
    def _trusted(cls, images: tuple) -> "Permutation":
        # skips validation; callers guarantee a bijection
        p = object.__new__(cls)
        p._images = images
        k = len(images)
        while k > 0 and images[k - 1] == k:
            k -= 1
        p._key = images[:k]
        p._hash = hash(p._key)
        return p

    @property
    def degree(self) -> int:
        return len(self._images)

    @property
    def images(self) -> tuple:
        return self._images

    def __call__(self, point: int) -> int:
        if 1 <= point <= len(self._images):
            return self._images[point - 1]
        if point >= 1:
            return point
        raise MalformedInputError(f"point {point} is not a positive integer")

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Permutation({format_cycles(self)!r}, degree={self.degree})"

    def __str__(self):
        return format_cycles(self)

    def embed(self, degree: int) -> "Permutation":
        """The same permutation viewed in S_degree (degree >= moved points)."""
        n = len(self._images)
        if degree == n:
            return self
        if degree < len(self._key):
            raise MalformedInputError(
                f"cannot restrict {format_cycles(self)} to degree {degree}"
            )
        if degree < n:
            return Permutation._trusted(self._images[:degree])
        return Permutation._trusted(self._images + tuple(range(n + 1, degree + 1)))

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self._images)
        for i, j in enumerate(self._images, 1):
            inv[j - 1] = i
        return Permutation._trusted(tuple(inv))

    def __invert__(self):
        return self.inverse()

    def __pow__(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = identity(self.degree)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_identity(self) -> bool:
        return not self._key

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = set()
        out = []
        for start in range(1, len(self._images) + 1):
            if start in seen or self._images[start - 1] == start:
                continue
            cyc = [start]
            seen.add(start)
            j = self._images[start - 1]
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self._images[j - 1]
            out.append(tuple(cyc))
        return out

    def support(self) -> frozenset:
        return frozenset(i for i, j in enumerate(self._images, 1) if i != j)

    def cycle_type(self) -> "CycleType":
        return CycleType(len(c) for c in self.cycles())

    def order(self) -> int:
        return self.cycle_type().order


@dataclass(frozen=True, init=False)
class CycleType:
    """Cycle lengths on moved points, weakly decreasing; fixed points dropped."""

    lengths: tuple

    def __init__(self, lengths: Iterable[int] = ()):
        vals = []
        for a in lengths:
            a = int(a)
            if a < 1:
                raise MalformedInputError(f"cycle length {a} must be positive")
            if a > 1:
                vals.append(a)
        object.__setattr__(self, "lengths", tuple(sorted(vals, reverse=True)))

    @property
    def length(self) -> int:
        """Number of moved points, l(x)."""
        return sum(self.lengths)

    @property
    def order(self) -> int:
        """lcm of the cycle lengths, o(x)."""
        return math.lcm(*self.lengths) if self.lengths else 1

    def __iter__(self):
        return iter(self.lengths)

    def __len__(self):
        return len(self.lengths)

    def __str__(self):
        return "[" + ",".join(map(str, self.lengths)) + "]"


def identity(degree: int) -> Permutation:
    return Permutation._trusted(tuple(range(1, degree + 1)))


def _common(a: Permutation, b: Permutation) -> tuple[Permutation, Permutation]:
    n = max(a.degree, b.degree)
    return a.embed(n), b.embed(n)


def compose(a: Permutation, b: Permutation) -> Permutation:
    """``a`` then ``b``; the smaller operand is padded with fixed points."""
    if a.degree != b.degree:
        a, b = _common(a, b)
    bi = b._images
    return Permutation._trusted(tuple(bi[i - 1] for i in a._images))


def conjugate(s: Permutation, x: Permutation) -> Permutation:
    """``x^-1 * s * x``: relabels every point p of ``s`` as ``x(p)``."""
    if s.degree != x.degree:
        s, x = _common(s, x)
    out = [0] * s.degree
    xi = x._images
    for p, q in enumerate(s._images):
        out[xi[p] - 1] = xi[q - 1]
    return Permutation._trusted(tuple(out))


def cycle_type(s: Permutation) -> CycleType:
    return s.cycle_type()


def from_cycles(cycles: Iterable[Sequence[int]], degree: int | None = None) -> Permutation:
    cycles = [tuple(c) for c in cycles]
    top = max((max(c) for c in cycles if c), default=1)
    degree = top if degree is None else degree
    text = "".join("(" + ",".join(map(str, c)) + ")" for c in cycles)
    return parse_cycles(text, degree)


_TOKEN = re.compile(r"\s*(?:(\()|(\))|(,)|(\d+))")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse a product of disjoint cycles such as ``"(1,2)(3,4)"``.

    Separators inside a cycle may be commas or whitespace.  ``"()"`` and
    the empty string denote the identity.
    """
    if degree < 1:
        raise MalformedInputError(f"degree must be positive, got {degree}")
    images = list(range(1, degree + 1))
    used = set()
    pos = 0
    current = None  # points of the cycle being read, None when outside
    expect_point = True
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if m is None:
            raise MalformedInputError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        opening, closing, comma, number = m.groups()
        if opening:
            if current is not None:
                raise MalformedInputError("nested '('", start)
            current = []
            expect_point = True
        elif closing:
            if current is None:
                raise MalformedInputError("unbalanced ')'", start)
            if current and expect_point:
                raise MalformedInputError("dangling ','", start)
            for a, b in zip(current, current[1:] + current[:1]):
                images[a - 1] = b
            current = None
        elif comma:
            if current is None or not current or expect_point:
                raise MalformedInputError("misplaced ','", start)
            expect_point = True
        else:
            if current is None:
                raise MalformedInputError("point outside parentheses", start)
            p = int(number)
            if p < 1 or p > degree:
                raise MalformedInputError(f"point {p} outside 1..{degree}", start)
            if p in used:
                raise MalformedInputError(f"repeated point {p}", start)
            used.add(p)
            current.append(p)
            expect_point = False
        pos = m.end()
    if current is not None:
        raise MalformedInputError("unbalanced '('", n)
    return Permutation._trusted(tuple(images))


def format_cycles(s: Permutation) -> str:
    cycles = s.cycles()
    if not cycles:
        return "()"
    return "".join("(" + ",".join(map(str, c)) + ")" for c in cycles)
