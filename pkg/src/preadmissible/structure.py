"""Structural queries on materialized groups and subgroups.

Metacyclicity, quotients by normal subgroups, Frattini subgroups of
2-groups, Sylow subgroups and cycle-type censuses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from sympy import factorint

from .errors import PreconditionError
from .groups import GroupLike, Subgroup, _sub, cyclic_subgroups, is_normal, normalizer
from .perm import CycleType, Permutation

__all__ = [
    "MetacyclicWitness",
    "QuotientGroup",
    "is_metacyclic",
    "quotient_group",
    "frattini_subgroup",
    "frattini_2group",
    "sylow_subgroup",
    "is_sylow_metacyclic",
    "cycle_type_census",
    "is_cyclic",
    "is_abelian",
]


@dataclass(frozen=True)
class MetacyclicWitness:
    """Outcome of a metacyclicity test.

    When ``metacyclic`` is true, ``kernel_generator`` generates a cyclic
    normal subgroup N and ``quotient_generator`` maps to a generator of
    the cyclic quotient by N.
    """

    metacyclic: bool
    kernel_generator: Optional[Permutation] = None
    quotient_generator: Optional[Permutation] = None
    kernel_order: int = 0

    def __bool__(self):
        return self.metacyclic


def _order_mod(S: Subgroup, x: int, N: frozenset) -> int:
    """Smallest k >= 1 with x^k in N."""
    tab = S.parent.table
    k = 1
    y = x
    while y not in N:
        y = tab[y][x]
        k += 1
    return k


def is_cyclic(G: GroupLike) -> bool:
    S = _sub(G)
    P = S.parent
    return any(P.element_order(x) == S.order for x in S.members)


def is_abelian(G: GroupLike) -> bool:
    S = _sub(G)
    tab = S.parent.table
    gens = S.generators
    return all(tab[a][b] == tab[b][a] for a in gens for b in gens)


def is_metacyclic(G: GroupLike) -> MetacyclicWitness:
    """Look for a cyclic normal N with G/N cyclic, largest N first."""
    S = _sub(G)
    P = S.parent
    if S.order == 1:
        return MetacyclicWitness(True, P.element(0), P.element(0), 1)
    for N in reversed(cyclic_subgroups(S)):
        if not is_normal(S, N):
            continue
        index = S.order // N.order
        for x in S.key():
            if _order_mod(S, x, N.members) == index:
                n = N.generators[0] if N.generators else 0
                return MetacyclicWitness(True, P.element(n), P.element(x), N.order)
    return MetacyclicWitness(False)


class QuotientGroup:
    """G/N on cosets, numbered by their smallest element in canonical order."""

    def __init__(self, G: Subgroup, N: Subgroup):
        P = G.parent
        tab = P.table
        coset_of = {}
        reps = []
        for x in G.key():
            if x in coset_of:
                continue
            c = len(reps)
            reps.append(x)
            for n in N.members:
                coset_of[tab[n][x]] = c
        self.group = G
        self.kernel = N
        self.representatives = reps
        self._coset_of = coset_of
        self.table = [[coset_of[tab[a][b]] for b in reps] for a in reps]

    @property
    def order(self) -> int:
        return len(self.representatives)

    def coset_of(self, x: int) -> int:
        return self._coset_of[x]

    def element_order(self, c: int) -> int:
        k, y = 1, c
        while y != 0:
            y = self.table[y][c]
            k += 1
        return k

    def is_cyclic(self) -> bool:
        return any(self.element_order(c) == self.order for c in range(self.order))

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def exponent(self) -> int:
        return math.lcm(*(self.element_order(c) for c in range(self.order)))

    def elementary_abelian_rank(self) -> Optional[int]:
        """r when the quotient is C_p^r, otherwise None."""
        if self.order == 1:
            return 0
        primes = factorint(self.order)
        if len(primes) != 1 or not self.is_abelian():
            return None
        (p, r), = primes.items()
        if self.exponent() != p:
            return None
        return r

    def class_sizes(self) -> list[int]:
        t = self.table
        n = self.order
        inv = [row.index(0) for row in t]
        remaining = set(range(n))
        sizes = []
        for c in range(n):
            if c not in remaining:
                continue
            cls = {t[t[inv[g]][c]][g] for g in range(n)}
            remaining -= cls
            sizes.append(len(cls))
        return sorted(sizes)


def quotient_group(G: GroupLike, N: Subgroup) -> QuotientGroup:
    S = _sub(G)
    if not N.members <= S.members or not is_normal(S, N):
        raise PreconditionError("quotient needs a normal subgroup")
    return QuotientGroup(S, N)


def frattini_subgroup(G: GroupLike, p: int) -> Subgroup:
    """Subgroup generated by p-th powers and commutators of a p-group."""
    S = _sub(G)
    P = S.parent
    primes = factorint(S.order)
    if S.order > 1 and set(primes) != {p}:
        raise PreconditionError(f"order {S.order} is not a power of {p}")
    tab = P.table
    inv = P.inverses
    gens = set()
    for a in S.members:
        gens.add(P.power(a, p))
    members = S.key()
    for a in members:
        for b in members:
            gens.add(tab[tab[inv[a]][inv[b]]][tab[a][b]])
    return P.closure(sorted(gens))


def frattini_2group(G: GroupLike) -> Subgroup:
    return frattini_subgroup(G, 2)


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def sylow_subgroup(G: GroupLike, p: int) -> Subgroup:
    """Grow a p-subgroup inside its normalizer until it reaches full p-part.

    At each step the smallest-index p-element of N_G(P) outside P is added.
    """
    S = _sub(G)
    Par = S.parent
    target = 1
    n = S.order
    while n % p == 0:
        n //= p
        target *= p
    P = Par.trivial()
    while P.order < target:
        N = normalizer(S, P)
        x = next(
            x for x in N.key() if x not in P.members and _is_p_power(Par.element_order(x), p)
        )
        P = Par.closure(P.generators + (x,), start=P.members)
    return P


def is_sylow_metacyclic(G: GroupLike) -> bool:
    S = _sub(G)
    return all(is_metacyclic(sylow_subgroup(S, p)) for p in factorint(S.order))


def cycle_type_census(H: GroupLike, x) -> int:
    """Number of elements of H with cycle type x."""
    S = _sub(H)
    if not isinstance(x, CycleType):
        x = CycleType(x)
    P = S.parent
    return sum(1 for i in S.members if P.cycle_type_of(i) == x)
