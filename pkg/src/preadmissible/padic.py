"""Fixed-precision 2-adic arithmetic for the degree-32 Kummer example.

Everything works modulo 2^K for an explicit precision K.  A unit
u = m^(1/32) is found by five successive square roots, and the splitting
of x^32 - m and x^32 - 2^16 m over Q_2 is confirmed by multiplying the
factors back out.  The second half of the module compares completions
through the exponent-e quotient of their unit groups.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import MalformedInputError, PreconditionError

__all__ = [
    "DEFAULT_PRECISION",
    "TwoAdicInt",
    "TwoAdicPoly",
    "LocalFieldDescriptor",
    "AbelianPGroupShape",
    "WitnessComparison",
    "sqrt_2adic",
    "hensel_root32",
    "kummer_factors",
    "shifted_kummer_factors",
    "product_matches",
    "verify_factorizations",
    "local_rank",
    "abelian_exponent_quotient",
    "is_quotient_shape",
    "preadmissibility_witness_compare",
    "KUMMER_COMPLETIONS",
    "SHIFTED_COMPLETIONS",
    "REALIZABILITY_TARGET",
]

DEFAULT_PRECISION = 64


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


class TwoAdicInt:
    """An element of Z_2 known modulo 2^precision."""

    __slots__ = ("value", "precision")

    def __init__(self, value: int, precision: int = DEFAULT_PRECISION):
        if precision < 1:
            raise MalformedInputError(f"precision must be positive, got {precision}")
        self.precision = precision
        self.value = value % (1 << precision)

    def _coerce(self, other) -> "TwoAdicInt":
        if isinstance(other, TwoAdicInt):
            return other
        if isinstance(other, int):
            return TwoAdicInt(other, self.precision)
        return NotImplemented

    def _join(self, other, value: int) -> "TwoAdicInt":
        # mixing precisions keeps only what both operands know
        return TwoAdicInt(value, min(self.precision, other.precision))

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._join(o, self.value + o.value)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._join(o, self.value - o.value)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._join(o, o.value - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._join(o, self.value * o.value)

    __rmul__ = __mul__

    def __neg__(self):
        return TwoAdicInt(-self.value, self.precision)

    def __pow__(self, k: int):
        if k < 0:
            raise PreconditionError("negative powers are not supported")
        return TwoAdicInt(pow(self.value, k, 1 << self.precision), self.precision)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        mask = (1 << min(self.precision, o.precision)) - 1
        return (self.value ^ o.value) & mask == 0

    def __hash__(self):
        return hash((self.value, self.precision))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"TwoAdicInt({self.value}, precision={self.precision})"

    def is_unit(self) -> bool:
        return self.value & 1 == 1

    def valuation(self) -> int:
        """2-adic valuation; equals the precision for zero."""
        if self.value == 0:
            return self.precision
        return (self.value & -self.value).bit_length() - 1


class TwoAdicPoly:
    """Polynomial over Z_2 / 2^K, coefficients in ascending degree."""

    __slots__ = ("coefficients", "precision")

    def __init__(self, coefficients: Iterable, precision: int = DEFAULT_PRECISION):
        coeffs = [c if isinstance(c, TwoAdicInt) else TwoAdicInt(c, precision) for c in coefficients]
        if coeffs:
            precision = min(c.precision for c in coeffs)
        coeffs = [TwoAdicInt(c.value, precision) for c in coeffs]
        while coeffs and coeffs[-1].value == 0:
            coeffs.pop()
        self.coefficients = tuple(coeffs)
        self.precision = precision

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def _other(self, other) -> "TwoAdicPoly":
        if isinstance(other, TwoAdicPoly):
            return other
        if isinstance(other, (int, TwoAdicInt)):
            return TwoAdicPoly([other], self.precision)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        n = max(len(self.coefficients), len(o.coefficients))
        prec = min(self.precision, o.precision)
        a = [c.value for c in self.coefficients] + [0] * (n - len(self.coefficients))
        b = [c.value for c in o.coefficients] + [0] * (n - len(o.coefficients))
        return TwoAdicPoly([x + y for x, y in zip(a, b)], prec)

    __radd__ = __add__

    def __neg__(self):
        return TwoAdicPoly([-c.value for c in self.coefficients], self.precision)

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        prec = min(self.precision, o.precision)
        if not self.coefficients or not o.coefficients:
            return TwoAdicPoly([], prec)
        out = [0] * (len(self.coefficients) + len(o.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a.value == 0:
                continue
            for j, b in enumerate(o.coefficients):
                out[i + j] += a.value * b.value
        return TwoAdicPoly(out, prec)

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        n = max(len(self.coefficients), len(o.coefficients))
        zero = TwoAdicInt(0, min(self.precision, o.precision))
        a = list(self.coefficients) + [zero] * (n - len(self.coefficients))
        b = list(o.coefficients) + [zero] * (n - len(o.coefficients))
        return all(x == y for x, y in zip(a, b))

    def __hash__(self):
        return hash(tuple(c.value for c in self.coefficients))

    def __repr__(self):
        return f"TwoAdicPoly({[c.value for c in self.coefficients]}, precision={self.precision})"

    @classmethod
    def monomial(cls, degree: int, coefficient=1, precision: int = DEFAULT_PRECISION) -> "TwoAdicPoly":
        return cls([0] * degree + [coefficient], precision)


def sqrt_2adic(c, precision: int = DEFAULT_PRECISION) -> TwoAdicInt:
    """The square root of c = 1 mod 8 that is 1 mod 4, good to s^2 = c mod 2^precision.

    Lifted one binary digit at a time: if s^2 = c mod 2^k (k >= 3) then
    either s or s + 2^(k-1) squares to c mod 2^(k+1).
    """
    c = int(c)
    if c % 8 != 1:
        raise PreconditionError(f"{c} is not 1 mod 8; no canonical 2-adic square root")
    s = 1
    for k in range(3, precision):
        if (s * s - c) % (1 << (k + 1)):
            s += 1 << (k - 1)
    return TwoAdicInt(s, precision)


def hensel_root32(m: int, precision: int = DEFAULT_PRECISION) -> TwoAdicInt:
    """u with u^32 = m mod 2^precision, taking square roots five times.

    Each intermediate root is the one congruent to 1 mod 4, so the result
    is too.
    """
    if m % 2 == 0 or m % 128 != 1:
        raise PreconditionError(f"m = {m} is not 1 mod 2^7")
    root = TwoAdicInt(m, precision)
    for _ in range(5):
        root = sqrt_2adic(root.value, precision)
    return root


def _poly(coeffs, precision):
    return TwoAdicPoly(coeffs, precision)


def kummer_factors(u: TwoAdicInt) -> list[TwoAdicPoly]:
    """(x-u)(x+u)(x^2+u^2)(x^4+u^4)(x^8+u^8)(x^16+u^16)."""
    K = u.precision
    u = u.value
    out = [_poly([-u, 1], K), _poly([u, 1], K)]
    for d in (2, 4, 8, 16):
        out.append(TwoAdicPoly.monomial(d, 1, K) + pow(u, d))
    return out


def shifted_kummer_factors(u: TwoAdicInt) -> list[TwoAdicPoly]:
    """Factors of x^32 - 2^16 u^32: four quadratics, then degrees 8 and 16.

    (x^2-2u^2)(x^2+2u^2)(x^2-2ux+2u^2)(x^2+2ux+2u^2)(x^8+16u^8)(x^16+2^8 u^16).
    """
    K = u.precision
    u = u.value
    u2 = 2 * u * u
    return [
        _poly([-u2, 0, 1], K),
        _poly([u2, 0, 1], K),
        _poly([u2, -2 * u, 1], K),
        _poly([u2, 2 * u, 1], K),
        TwoAdicPoly.monomial(8, 1, K) + 16 * pow(u, 8),
        TwoAdicPoly.monomial(16, 1, K) + (1 << 8) * pow(u, 16),
    ]


def product_matches(factors: Sequence[TwoAdicPoly], target: TwoAdicPoly) -> bool:
    prod = TwoAdicPoly([1], target.precision)
    for f in factors:
        prod = prod * f
    return prod == target


@dataclass(frozen=True)
class FactorizationCheck:
    m: int
    precision: int
    root: int
    unshifted: bool
    shifted: bool

    def __iter__(self):
        return iter((self.unshifted, self.shifted))

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "precision": self.precision,
            "root": self.root,
            "x^32-m": self.unshifted,
            "x^32-2^16*m": self.shifted,
        }


def verify_factorizations(m: int, precision: int = 40) -> FactorizationCheck:
    """Multiply out both six-factor splittings and compare with x^32 - m, x^32 - 2^16 m.

    Unpacks as a pair of booleans.
    """
    u = hensel_root32(m, precision)
    x32 = TwoAdicPoly.monomial(32, 1, precision)
    first = product_matches(kummer_factors(u), x32 - m)
    second = product_matches(shifted_kummer_factors(u), x32 - (m << 16))
    return FactorizationCheck(m, precision, u.value, first, second)


# -- completions and their abelian quotients ---------------------------


@dataclass(frozen=True)
class LocalFieldDescriptor:
    """A finite extension of Q_2: its degree and how many 2-power roots of unity it has."""

    n: int
    q: int
    label: str = ""

    def __post_init__(self):
        if self.n < 1:
            raise MalformedInputError(f"degree must be >= 1, got {self.n}")
        if self.q < 2 or not _is_power_of_two(self.q):
            raise MalformedInputError(f"root-of-unity count must be a power of 2 and >= 2, got {self.q}")

    def to_json(self) -> dict:
        return {"label": self.label, "degree": self.n, "roots_of_unity": self.q}

    @classmethod
    def from_json(cls, obj: dict) -> "LocalFieldDescriptor":
        try:
            return cls(int(obj["degree"]), int(obj["roots_of_unity"]), str(obj.get("label", "")))
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInputError(f"bad local field descriptor {obj!r}: {exc}") from None


class AbelianPGroupShape:
    """A finite abelian 2-group as its list of cyclic factor orders, largest first."""

    __slots__ = ("cyclic_factors",)

    def __init__(self, cyclic_factors: Iterable[int]):
        factors = []
        for f in cyclic_factors:
            if not _is_power_of_two(f):
                raise MalformedInputError(f"cyclic factor order {f} is not a power of 2")
            if f > 1:
                factors.append(f)
        self.cyclic_factors = tuple(sorted(factors, reverse=True))

    @classmethod
    def power(cls, e: int, r: int) -> "AbelianPGroupShape":
        return cls([e] * r)

    @property
    def order(self) -> int:
        out = 1
        for f in self.cyclic_factors:
            out *= f
        return out

    @property
    def rank(self) -> int:
        return len(self.cyclic_factors)

    def count_at_least(self, d: int) -> int:
        return sum(1 for f in self.cyclic_factors if f >= d)

    def __eq__(self, other):
        if not isinstance(other, AbelianPGroupShape):
            return NotImplemented
        return self.cyclic_factors == other.cyclic_factors

    def __hash__(self):
        return hash(self.cyclic_factors)

    def __str__(self):
        if not self.cyclic_factors:
            return "1"
        parts = []
        for f in sorted(set(self.cyclic_factors), reverse=True):
            k = self.cyclic_factors.count(f)
            parts.append(f"C_{f}" if k == 1 else f"C_{f}^{k}")
        return " x ".join(parts)

    def __repr__(self):
        return f"AbelianPGroupShape({list(self.cyclic_factors)})"


def local_rank(f: LocalFieldDescriptor) -> int:
    """Rank of the maximal abelian pro-2 quotient of the absolute Galois group.

    [F:Q_2] + 2, since -1 is a root of unity in every 2-adic field.
    """
    return f.n + 2


def abelian_exponent_quotient(f: LocalFieldDescriptor, e: int) -> AbelianPGroupShape:
    """Galois group of the maximal abelian extension of exponent e: C_e^(n+1) x C_min(q,e)."""
    if e < 2 or not _is_power_of_two(e):
        raise MalformedInputError(f"exponent must be a power of 2 and >= 2, got {e}")
    return AbelianPGroupShape([e] * (f.n + 1) + [min(f.q, e)])


def is_quotient_shape(target: AbelianPGroupShape, ambient: AbelianPGroupShape) -> bool:
    """Is target a quotient of ambient?

    For abelian 2-groups this holds exactly when, for every 2-power d,
    ambient has at least as many cyclic factors of order >= d.
    """
    top = max(target.cyclic_factors, default=1)
    d = 2
    while d <= top:
        if ambient.count_at_least(d) < target.count_at_least(d):
            return False
        d *= 2
    return True


@dataclass(frozen=True)
class WitnessComparison:
    target: AbelianPGroupShape
    exponent: int
    first_count: int
    second_count: int
    first_realizing: tuple
    second_realizing: tuple

    @property
    def separates(self) -> bool:
        a, b = self.first_count, self.second_count
        return (a >= 2 and b <= 1) or (a <= 1 and b >= 2)

    @property
    def verdict(self) -> str:
        if self.separates:
            return "not equivalent by preadmissibility"
        return "no separation"

    def to_json(self) -> dict:
        return {
            "target": str(self.target),
            "exponent": self.exponent,
            "counts": [self.first_count, self.second_count],
            "realizing": [list(self.first_realizing), list(self.second_realizing)],
            "verdict": self.verdict,
        }


def preadmissibility_witness_compare(
    first: Sequence[LocalFieldDescriptor],
    second: Sequence[LocalFieldDescriptor],
    A: AbelianPGroupShape,
    e: int,
) -> WitnessComparison:
    """Count the completions of each field over which A is realizable as an abelian quotient."""
    if not first or not second:
        raise PreconditionError("descriptor lists must be nonempty")

    def realizing(fields):
        return tuple(
            f.label or f"({f.n},{f.q})"
            for f in fields
            if is_quotient_shape(A, abelian_exponent_quotient(f, e))
        )

    a = realizing(first)
    b = realizing(second)
    return WitnessComparison(A, e, len(a), len(b), a, b)


# Completions above 2 of Q(m^(1/32)) and Q((2^16 m)^(1/32)) for m = 1 mod 2^7,
# one per irreducible factor, in the factor order used above.
KUMMER_COMPLETIONS = (
    LocalFieldDescriptor(1, 2, "Q2 (x-u)"),
    LocalFieldDescriptor(1, 2, "Q2 (x+u)"),
    LocalFieldDescriptor(2, 4, "Q2(mu4)"),
    LocalFieldDescriptor(4, 8, "Q2(mu8)"),
    LocalFieldDescriptor(8, 16, "Q2(mu16)"),
    LocalFieldDescriptor(16, 32, "Q2(mu32)"),
)
SHIFTED_COMPLETIONS = (
    LocalFieldDescriptor(2, 2, "Q2(sqrt2)"),
    LocalFieldDescriptor(2, 2, "Q2(sqrt-2)"),
    LocalFieldDescriptor(2, 4, "Q2(mu4) (x^2-2ux+2u^2)"),
    LocalFieldDescriptor(2, 4, "Q2(mu4) (x^2+2ux+2u^2)"),
    LocalFieldDescriptor(8, 2, "Q2((-2)^(1/8))"),
    LocalFieldDescriptor(16, 2, "Q2((-2)^(1/16))"),
)
REALIZABILITY_TARGET = AbelianPGroupShape.power(16, 10)
