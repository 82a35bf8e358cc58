"""Sylow l-subgroups of S_{l^n} as iterated wreath products of C_l.

``level_generator(l, r)`` is the product of l^(r-1) disjoint l-cycles
(j, j + l^(r-1), ..., j + (l-1) l^(r-1)), j = 1..l^(r-1); the first n of
them generate a Sylow l-subgroup of S_{l^n} of order l^((l^n - 1)/(l - 1)).
The consecutive blocks (il - l + 1, ..., il) form the conjugacy class of
level_generator(l, 1) in that group.
"""

from __future__ import annotations

from dataclasses import dataclass
from operator import ne
from typing import Optional

from sympy import isprime

from .cosets import verify_equivalence_condition
from .errors import MalformedInputError, PreconditionError, ResourceLimitError
from .groups import (
    GroupLike,
    PermGroup,
    Subgroup,
    _sub,
    centralizer,
    format_group_file,
    generate,
    two_generated_subgroups,
)
from .perm import Permutation, from_cycles
from .structure import is_metacyclic

__all__ = [
    "SylowGenerators",
    "level_generator",
    "sylow_generators",
    "block_cycles",
    "max_element_order",
    "max_metacyclic_order",
    "threshold_inequality",
    "smallest_threshold_level",
    "SeriesBound",
    "series_bound_check",
    "l_cycles_are_block_powers",
    "MAX_DEGREE",
    "MATERIALIZE_DEGREE",
]

MAX_DEGREE = 255
# Beyond this degree groups are not materialized (3^13 elements at 27).
MATERIALIZE_DEGREE = 27


def _check_prime(l: int):
    if not isprime(l):
        raise MalformedInputError(f"l = {l} is not prime")


def level_generator(l: int, r: int, degree: Optional[int] = None) -> Permutation:
    step = l ** (r - 1)
    cycles = [[j + k * step for k in range(l)] for j in range(1, step + 1)]
    return from_cycles(cycles, degree or l**r)


def block_cycles(l: int, n: int) -> list[Permutation]:
    _check_prime(l)
    degree = l**n
    return [from_cycles([range(i * l - l + 1, i * l + 1)], degree) for i in range(1, l ** (n - 1) + 1)]


@dataclass(frozen=True)
class SylowGenerators:
    l: int
    n: int
    generators: tuple

    @property
    def degree(self) -> int:
        return self.l**self.n

    @property
    def expected_order(self) -> int:
        return self.l ** ((self.l**self.n - 1) // (self.l - 1))

    def group(self, cap: Optional[int] = None) -> PermGroup:
        if self.degree > MATERIALIZE_DEGREE:
            raise ResourceLimitError(
                f"degree {self.degree} exceeds the materialization limit {MATERIALIZE_DEGREE}"
            )
        return generate(self.degree, self.generators, cap=cap)

    def group_file(self) -> str:
        return format_group_file(
            self.degree,
            self.generators,
            comment=f"Sylow {self.l}-subgroup of S_{self.degree}, order {self.expected_order}",
        )


def sylow_generators(l: int, n: int) -> SylowGenerators:
    _check_prime(l)
    if n < 1:
        raise MalformedInputError(f"level n must be >= 1, got {n}")
    if l**n > MAX_DEGREE:
        raise ResourceLimitError(f"degree {l}^{n} exceeds the cap {MAX_DEGREE}")
    return SylowGenerators(l, n, tuple(level_generator(l, r, l**n) for r in range(1, n + 1)))


def max_element_order(G: GroupLike) -> int:
    S = _sub(G)
    P = S.parent
    return max(P.element_order(i) for i in S.members)


def max_metacyclic_order(G: GroupLike) -> tuple[int, Subgroup]:
    """Largest metacyclic subgroup order, with the first witness of that order."""
    best = None
    for D in two_generated_subgroups(G):
        if (best is None or D.order > best.order) and is_metacyclic(D):
            best = D
    return best.order, best


def threshold_inequality(l: int, n: int) -> bool:
    """l^((l^n-1)/(l-1)) (1 - 2/l^(n-1)) >= l^(2n+1), in exact integers.

    Multiplied through by l^(n-1) this reads l^E (l^(n-1) - 2) >= l^(3n)
    with E = (l^n - 1)/(l - 1).  Powers of l cancel before any big number
    is formed; l^E alone is astronomically large once l and n grow.
    """
    _check_prime(l)
    if n < 2:
        raise PreconditionError("the inequality is only stated for n >= 2")
    factor = l ** (n - 1) - 2
    if factor <= 0:
        return False
    exponent = (l**n - 1) // (l - 1)
    if exponent >= 3 * n:
        return True
    return factor >= l ** (3 * n - exponent)


def smallest_threshold_level(l: int, n_max: int = 12) -> Optional[int]:
    """Smallest n in 2..n_max from which the inequality holds up to n_max."""
    start = None
    for n in range(n_max, 1, -1):
        if not threshold_inequality(l, n):
            break
        start = n
    return start


@dataclass(frozen=True)
class SeriesBound:
    group_order: int
    subgroup_order: int
    max_metacyclic: int
    stabilizer_order: int  # centralizer of the element: |G| / |its class|
    b: int
    holds: bool
    implication_verified: Optional[bool]

    def to_json(self) -> dict:
        return {
            "group_order": self.group_order,
            "subgroup_order": self.subgroup_order,
            "max_metacyclic_order": self.max_metacyclic,
            "stabilizer_order": self.stabilizer_order,
            "b": self.b,
            "holds": self.holds,
            "implication_verified": self.implication_verified,
        }


def series_bound_check(
    G: GroupLike,
    element,
    H: Optional[Subgroup] = None,
    b: int = 2,
    d: Optional[int] = None,
) -> SeriesBound:
    """Evaluate |G| > |H| d + b |C_G(x)| for the element x and, when it holds,
    confirm S(D,H) > 1.

    ``b`` bounds how many conjugates of x a metacyclic subgroup can hold
    (2 for the consecutive blocks, 4 for transpositions in general).
    """
    S = _sub(G)
    P = S.parent
    a = element if isinstance(element, int) else None
    if a is None:
        try:
            a = P.index_of(element)
        except PreconditionError:
            raise PreconditionError("the element is not in the group") from None
    if a not in S.members:
        raise PreconditionError("the element is not in the group")
    if H is None:
        H = P.closure([a])
    if d is None:
        d, _ = max_metacyclic_order(S)
    stab = centralizer(S, a).order
    holds = S.order > H.order * d + b * stab
    verified = None
    if holds:
        verified = verify_equivalence_condition(S, H).passed
    return SeriesBound(S.order, H.order, d, stab, b, holds, verified)


def l_cycles_are_block_powers(G: PermGroup, l: int, n: int) -> bool:
    """Every l-cycle of G is a power of one of the consecutive blocks.

    Scans the raw element list, so it runs on groups too large for a
    multiplication table.
    """
    blocks = block_cycles(l, n)
    allowed = {(b**j).images for b in blocks for j in range(1, l)}
    ident = bytes(range(G.degree))
    for e in G.raw_elements():
        if sum(map(ne, e, ident)) != l:
            continue
        p = Permutation._trusted(tuple(i + 1 for i in e))
        if p.cycle_type().lengths == (l,) and p.images not in allowed:
            return False
    return True
