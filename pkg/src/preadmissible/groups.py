"""Materialized permutation groups.

A ``PermGroup`` holds every element.  Elements live internally as 0-based
``bytes`` sorted lexicographically, so index 0 is the identity and the
index order is the canonical order used for representatives everywhere.
Composition of two such strings is ``a.translate(table_of(b))``, which is
exactly the left-to-right product ``b(a(i))``.

Subgroups are ``Subgroup`` objects: a parent group plus a frozenset of
element indices.  Functions in this module accept either a ``PermGroup``
(meaning the whole group) or a ``Subgroup`` wherever an ambient group is
expected.
"""

from __future__ import annotations

import os
from array import array
from typing import Iterable, Sequence, Union

from .errors import MalformedInputError, PreconditionError, ResourceLimitError
from .perm import CycleType, Permutation, format_cycles, parse_cycles

DEFAULT_ORDER_CAP = 2_000_000
ORDER_CAP_ENV = "PREADMISSIBLE_ORDER_CAP"
# Multiplication tables are only built up to this order.
TABLE_LIMIT = 5000

__all__ = [
    "PermGroup",
    "Subgroup",
    "generate",
    "default_order_cap",
    "conjugacy_classes",
    "conjugacy_class",
    "centralizer",
    "normalizer",
    "core",
    "is_normal",
    "cyclic_subgroups",
    "two_generated_subgroups",
    "all_subgroups",
    "setwise_stabilizer",
    "parse_generators",
    "read_group_file",
    "format_group_file",
]


def default_order_cap() -> int:
    raw = os.environ.get(ORDER_CAP_ENV)
    if raw is None:
        return DEFAULT_ORDER_CAP
    try:
        return int(raw)
    except ValueError:
        raise MalformedInputError(f"{ORDER_CAP_ENV}={raw!r} is not an integer") from None


def _to_bytes(p: Permutation, degree: int) -> bytes:
    return bytes(i - 1 for i in p.embed(degree).images)


def _to_perm(b: bytes) -> Permutation:
    return Permutation._trusted(tuple(i + 1 for i in b))


def _translation(b: bytes) -> bytes:
    return b + bytes(range(len(b), 256))


def _bytes_cycle_type(b: bytes) -> CycleType:
    seen = bytearray(len(b))
    lengths = []
    for start in range(len(b)):
        if seen[start] or b[start] == start:
            continue
        k = 0
        j = start
        while not seen[j]:
            seen[j] = 1
            j = b[j]
            k += 1
        lengths.append(k)
    return CycleType(lengths)


class PermGroup:
    """A finite permutation group with its full element list."""

    def __init__(self, degree: int, generators: Sequence[Permutation], elements: list):
        self.degree = degree
        self.generators = tuple(generators)
        self._elems = elements
        self._index = None
        self._perms = None
        self._table = None
        self._inv = None
        self._whole = None

    # -- basic access -------------------------------------------------

    @property
    def order(self) -> int:
        return len(self._elems)

    def __len__(self):
        return len(self._elems)

    def __repr__(self):
        gens = ", ".join(format_cycles(g) for g in self.generators)
        return f"PermGroup(degree={self.degree}, order={self.order}, generators=[{gens}])"

    @property
    def elements(self) -> list[Permutation]:
        if self._perms is None:
            self._perms = [_to_perm(b) for b in self._elems]
        return self._perms

    def element(self, i: int) -> Permutation:
        if self._perms is not None:
            return self._perms[i]
        return _to_perm(self._elems[i])

    def raw(self, i: int) -> bytes:
        return self._elems[i]

    def raw_elements(self) -> list:
        return self._elems

    def _lookup(self) -> dict:
        if self._index is None:
            self._index = {b: i for i, b in enumerate(self._elems)}
        return self._index

    def index_of(self, p: Union[Permutation, str]) -> int:
        if isinstance(p, str):
            p = parse_cycles(p, self.degree)
        if p.degree > self.degree and max(p.support(), default=0) > self.degree:
            raise PreconditionError(f"{format_cycles(p)} moves points beyond degree {self.degree}")
        i = self._lookup().get(_to_bytes(p, self.degree))
        if i is None:
            raise PreconditionError(f"{format_cycles(p)} is not an element of the group")
        return i

    def __contains__(self, p) -> bool:
        try:
            self.index_of(p)
        except PreconditionError:
            return False
        return True

    # -- arithmetic on indices ----------------------------------------

    @property
    def table(self) -> list:
        """``table[i][j]`` is the index of element i times element j."""
        if self._table is None:
            if self.order > TABLE_LIMIT:
                raise ResourceLimitError(
                    f"multiplication table needs order <= {TABLE_LIMIT}, group has {self.order}"
                )
            idx = self._lookup()
            trans = [_translation(b) for b in self._elems]
            self._table = [array("I", [idx[a.translate(t)] for t in trans]) for a in self._elems]
        return self._table

    @property
    def inverses(self) -> list:
        if self._inv is None:
            tab = self.table
            inv = [0] * self.order
            for i, row in enumerate(tab):
                # row.index(0) is C speed
                inv[i] = row.index(0)
            self._inv = inv
        return self._inv

    def mul(self, i: int, j: int) -> int:
        if self._table is not None or self.order <= TABLE_LIMIT:
            return self.table[i][j]
        return self._lookup()[self._elems[i].translate(_translation(self._elems[j]))]

    def conj(self, i: int, x: int) -> int:
        """Index of x^-1 * e_i * x."""
        tab = self.table
        return tab[tab[self.inverses[x]][i]][x]

    def power(self, i: int, k: int) -> int:
        tab = self.table
        r = 0
        for _ in range(k):
            r = tab[r][i]
        return r

    def element_order(self, i: int) -> int:
        return _bytes_cycle_type(self._elems[i]).order

    def cycle_type_of(self, i: int) -> CycleType:
        return _bytes_cycle_type(self._elems[i])

    # -- subgroups ----------------------------------------------------

    def whole(self) -> "Subgroup":
        if self._whole is None:
            gens = tuple(self.index_of(g) for g in self.generators if not g.is_identity())
            self._whole = Subgroup(self, frozenset(range(self.order)), gens)
        return self._whole

    def trivial(self) -> "Subgroup":
        return Subgroup(self, frozenset((0,)), ())

    def subgroup(self, generators: Union[str, Iterable]) -> "Subgroup":
        """Subgroup generated by permutations (or a ';'-separated string)."""
        if isinstance(generators, str):
            generators = parse_generators(generators, self.degree)
        idx = []
        for g in generators:
            if isinstance(g, str):
                g = parse_cycles(g, self.degree)
            idx.append(g if isinstance(g, int) else self.index_of(g))
        return self.closure(idx)

    def closure(self, gens: Sequence[int], start: Iterable[int] = (0,)) -> "Subgroup":
        gens = tuple(g for g in gens if g != 0)
        tab = self.table
        members = set(start)
        frontier = list(members)
        for e in frontier:
            row = tab[e]
            for g in gens:
                p = row[g]
                if p not in members:
                    members.add(p)
                    frontier.append(p)
        return Subgroup(self, frozenset(members), gens)


class Subgroup:
    """A subgroup of ``parent``, stored as a set of element indices."""

    __slots__ = ("parent", "members", "_gens", "_sorted")

    def __init__(self, parent: PermGroup, members: frozenset, generators=None):
        self.parent = parent
        self.members = members
        self._gens = tuple(generators) if generators is not None else None
        self._sorted = None

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self):
        return len(self.members)

    @property
    def degree(self) -> int:
        return self.parent.degree

    def key(self) -> tuple:
        if self._sorted is None:
            self._sorted = tuple(sorted(self.members))
        return self._sorted

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __contains__(self, item) -> bool:
        if isinstance(item, int):
            return item in self.members
        if isinstance(item, str):
            item = parse_cycles(item, self.degree)
        try:
            return self.parent.index_of(item) in self.members
        except PreconditionError:
            return False

    def __le__(self, other: "Subgroup") -> bool:
        return self.members <= other.members

    def __lt__(self, other: "Subgroup") -> bool:
        return self.members < other.members

    @property
    def generators(self) -> tuple:
        """Indices of a generating set (small, not necessarily minimal)."""
        if self._gens is None:
            tab = self.parent.table
            gens = []
            current = {0}
            for e in self.key():
                if e in current:
                    continue
                gens.append(e)
                frontier = list(current)
                for a in frontier:
                    for g in gens:
                        p = tab[a][g]
                        if p not in current:
                            current.add(p)
                            frontier.append(p)
                if len(current) == len(self.members):
                    break
            self._gens = tuple(gens)
        return self._gens

    def generator_perms(self) -> list[Permutation]:
        return [self.parent.element(i) for i in self.generators]

    def elements(self) -> list[Permutation]:
        return [self.parent.element(i) for i in self.key()]

    def describe(self) -> str:
        gens = self.generator_perms()
        return "<" + ", ".join(format_cycles(g) for g in gens) + ">"

    def __repr__(self):
        return f"Subgroup({self.describe()}, order={self.order})"

    def conjugate_by(self, x: int) -> "Subgroup":
        G = self.parent
        return Subgroup(G, frozenset(G.conj(i, x) for i in self.members))

    def intersection(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.parent, self.members & other.members)

    def join(self, other: "Subgroup") -> "Subgroup":
        return self.parent.closure(self.generators + other.generators, start=self.members)

    def as_group(self) -> PermGroup:
        """A standalone PermGroup with the same elements."""
        elems = sorted(self.parent.raw(i) for i in self.members)
        return PermGroup(self.degree, self.generator_perms(), elems)


GroupLike = Union[PermGroup, Subgroup]


def _sub(G: GroupLike) -> Subgroup:
    return G.whole() if isinstance(G, PermGroup) else G


def _idx(G: Subgroup, x) -> int:
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        x = parse_cycles(x, G.degree)
    return G.parent.index_of(x)


def generate(degree: int, generators: Iterable, cap: int | None = None) -> PermGroup:
    """Breadth-first closure of the generators; raises past ``cap`` elements."""
    if cap is None:
        cap = default_order_cap()
    if degree < 1 or degree > 255:
        raise MalformedInputError(f"degree must be in 1..255, got {degree}")
    gens = []
    for g in generators:
        if isinstance(g, str):
            g = parse_cycles(g, degree)
        if g.degree > degree and max(g.support(), default=0) > degree:
            raise MalformedInputError(f"generator {format_cycles(g)} exceeds degree {degree}")
        gens.append(g.embed(degree))
    ident = bytes(range(degree))
    tables = [_translation(_to_bytes(g, degree)) for g in gens if not g.is_identity()]
    seen = {ident}
    frontier = [ident]
    add = seen.add
    for e in frontier:
        for t in tables:
            c = e.translate(t)
            if c not in seen:
                add(c)
                frontier.append(c)
        if len(seen) > cap:
            raise ResourceLimitError(f"group order exceeds the cap of {cap} elements")
    del frontier
    return PermGroup(degree, gens, sorted(seen))


# -- conjugation --------------------------------------------------------


def conjugacy_class(G: GroupLike, element) -> list[Permutation]:
    """Orbit of ``element`` under conjugation, via generators only.

    Works without a multiplication table, so it is usable on very large
    groups.  Returned in canonical order.
    """
    S = _sub(G)
    P = S.parent
    if isinstance(element, str):
        element = parse_cycles(element, P.degree)
    if isinstance(element, int):
        element = P.element(element)
    start = _to_bytes(element, P.degree)
    if S is P.whole():
        gen_bytes = [_to_bytes(g, P.degree) for g in P.generators]
    else:
        gen_bytes = [P.raw(i) for i in S.generators]
    actions = []
    for gb in gen_bytes:
        inv = bytearray(len(gb))
        for i, j in enumerate(gb):
            inv[j] = i
        actions.append((bytes(inv), _translation(gb)))
    seen = {start}
    frontier = [start]
    for e in frontier:
        for xinv, t in actions:
            # x^-1 e x relabels each point p as x(p)
            c = xinv.translate(_translation(e.translate(t)))
            if c not in seen:
                seen.add(c)
                frontier.append(c)
    return [_to_perm(b) for b in sorted(seen)]


def _classes_idx(S: Subgroup) -> list[tuple]:
    P = S.parent
    gens = S.generators
    inv = P.inverses
    tab = P.table
    remaining = set(S.members)
    classes = []
    for x in S.key():
        if x not in remaining:
            continue
        cls = {x}
        frontier = [x]
        for e in frontier:
            for g in gens:
                c = tab[tab[inv[g]][e]][g]
                if c not in cls:
                    cls.add(c)
                    frontier.append(c)
        remaining -= cls
        classes.append(tuple(sorted(cls)))
    return classes


def conjugacy_classes(G: GroupLike) -> list[list[Permutation]]:
    """Partition into conjugacy classes, ordered by smallest member."""
    S = _sub(G)
    return [[S.parent.element(i) for i in cls] for cls in _classes_idx(S)]


def centralizer(G: GroupLike, element) -> Subgroup:
    S = _sub(G)
    P = S.parent
    a = _idx(S, element)
    tab = P.table
    return Subgroup(P, frozenset(x for x in S.members if tab[x][a] == tab[a][x]))


def normalizer(G: GroupLike, target) -> Subgroup:
    """{x in G : target^x = target}; an element means the cyclic group it generates."""
    S = _sub(G)
    P = S.parent
    if not isinstance(target, Subgroup):
        target = P.closure([_idx(S, target)])
    gens = target.generators
    mem = target.members
    return Subgroup(
        P, frozenset(x for x in S.members if all(P.conj(g, x) in mem for g in gens))
    )


def is_normal(G: GroupLike, N: Subgroup) -> bool:
    S = _sub(G)
    P = S.parent
    mem = N.members
    return all(P.conj(n, g) in mem for g in S.generators for n in N.generators)


def core(G: GroupLike, H: Subgroup) -> Subgroup:
    """Intersection of all conjugates of H by elements of G."""
    S = _sub(G)
    P = S.parent
    members = set(H.members)
    for x in S.key():
        if len(members) == 1:
            break
        members = {h for h in members if P.conj(h, P.inverses[x]) in H.members}
    return Subgroup(P, frozenset(members))


# -- subgroup enumeration -----------------------------------------------


def cyclic_subgroups(G: GroupLike) -> list[Subgroup]:
    S = _sub(G)
    P = S.parent
    found = {}
    for x in S.key():
        C = P.closure([x])
        found.setdefault(C.members, C)
    return sorted(found.values(), key=lambda C: (C.order, C.key()))


def _dedupe_conjugates(S: Subgroup, subs: list[Subgroup]) -> list[Subgroup]:
    seen = set()
    reps = []
    for H in subs:
        if H.members in seen:
            continue
        reps.append(H)
        for x in S.members:
            seen.add(H.conjugate_by(x).members)
    return reps


def two_generated_subgroups(G: GroupLike, conjugacy_reps: bool = False) -> list[Subgroup]:
    """Every subgroup <a, b> with a, b in G, each listed once.

    Cyclic subgroups are included.  Pairs are taken over distinct cyclic
    subgroups, since <a, b> only depends on <a> and <b>.  Sorted by
    (order, canonical element key).
    """
    S = _sub(G)
    P = S.parent
    cyclic = cyclic_subgroups(S)
    found = {C.members: C for C in cyclic}
    for i, A in enumerate(cyclic):
        a = A.generators[0] if A.generators else 0
        for B in cyclic[i + 1 :]:
            if A.members <= B.members:
                continue
            b = B.generators[0]
            K = P.closure((a, b), start=B.members)
            if K.members not in found:
                found[K.members] = K
    subs = sorted(found.values(), key=lambda H: (H.order, H.key()))
    if conjugacy_reps:
        subs = _dedupe_conjugates(S, subs)
    return subs


def all_subgroups(G: GroupLike) -> list[Subgroup]:
    """Full subgroup lattice, by repeatedly joining with cyclic subgroups."""
    S = _sub(G)
    P = S.parent
    cyclic = cyclic_subgroups(S)
    found = {C.members: C for C in cyclic}
    frontier = list(cyclic)
    while frontier:
        nxt = []
        for H in frontier:
            for C in cyclic:
                if C.members <= H.members:
                    continue
                K = P.closure(H.generators + C.generators, start=H.members)
                if K.members not in found:
                    found[K.members] = K
                    nxt.append(K)
        frontier = nxt
    return sorted(found.values(), key=lambda H: (H.order, H.key()))


def setwise_stabilizer(G: GroupLike, points: Iterable[int]) -> Subgroup:
    S = _sub(G)
    P = S.parent
    pts = {p - 1 for p in points}
    return Subgroup(
        P, frozenset(x for x in S.members if all(P.raw(x)[p] in pts for p in pts))
    )


# -- group files --------------------------------------------------------


def parse_generators(text: str, degree: int) -> list[Permutation]:
    """';'-separated generators, each a product of disjoint cycles."""
    return [parse_cycles(part, degree) for part in text.split(";") if part.strip()]


def read_group_file(text: str) -> tuple[int, list[Permutation]]:
    degree = None
    gens = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if degree is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "degree" or not parts[1].isdigit():
                raise MalformedInputError(f"line {lineno}: expected 'degree N', got {line!r}")
            degree = int(parts[1])
            continue
        try:
            gens.append(parse_cycles(line, degree))
        except MalformedInputError as exc:
            raise MalformedInputError(f"line {lineno}: {exc}") from None
    if degree is None:
        raise MalformedInputError("group file has no 'degree N' line")
    return degree, gens


def format_group_file(degree: int, generators: Iterable[Permutation], comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"degree {degree}")
    gens = sorted({g.embed(degree) for g in generators if not g.is_identity()}, key=lambda g: g.images)
    lines.extend(format_cycles(g) for g in gens)
    return "\n".join(lines) + "\n"
