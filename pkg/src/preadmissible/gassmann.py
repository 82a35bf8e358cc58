"""Gassmann equivalence, subgroup conjugacy and direct products.

Two subgroups H, H' of G are Gassmann equivalent when every conjugacy
class of G meets them in equally many elements; equivalently, when the
double coset types (C, H) and (C, H') agree for every cyclic C <= G.
Both tests are computed and must agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from typing import Optional

from .cosets import double_coset_type, local_degree_type
from .errors import PreconditionError, ResourceLimitError
from .groups import (
    GroupLike,
    PermGroup,
    Subgroup,
    _classes_idx,
    _sub,
    cyclic_subgroups,
    generate,
    read_group_file,
    setwise_stabilizer,
)
from .perm import Permutation, format_cycles

__all__ = [
    "GassmannReport",
    "ConjugacyWitness",
    "gassmann_equivalent",
    "are_conjugate_subgroups",
    "direct_product_embed",
    "shift",
    "unramified_local_degree_match",
    "psl32",
    "psl32_gassmann_pair",
]


@dataclass
class GassmannReport:
    equivalent: bool
    conjugate: bool
    cyclic_check: bool
    class_table: list = field(default_factory=list)  # (rep, size, in_H, in_H2)

    def to_json(self) -> dict:
        return {
            "equivalent": self.equivalent,
            "conjugate": self.conjugate,
            "class_table": [
                {"class_rep": format_cycles(rep), "size": size, "in_H": a, "in_H2": b}
                for rep, size, a, b in self.class_table
            ],
            "cyclic_check": self.cyclic_check,
        }


@dataclass(frozen=True)
class ConjugacyWitness:
    conjugate: bool
    witness: Optional[Permutation] = None

    def __bool__(self):
        return self.conjugate


def are_conjugate_subgroups(G: GroupLike, H: Subgroup, H2: Subgroup) -> ConjugacyWitness:
    """Search g in G (canonical order) with g^-1 H g = H2."""
    S = _sub(G)
    if H.order != H2.order:
        return ConjugacyWitness(False)
    P = S.parent
    target = H2.members
    gens = H.generators
    for g in S.key():
        if all(P.conj(h, g) in target for h in gens):
            return ConjugacyWitness(True, P.element(g))
    return ConjugacyWitness(False)


def _cyclic_types_agree(S: Subgroup, H: Subgroup, H2: Subgroup) -> bool:
    return all(
        double_coset_type(S, C, H).sizes == double_coset_type(S, C, H2).sizes
        for C in cyclic_subgroups(S)
    )


def gassmann_equivalent(G: GroupLike, H: Subgroup, H2: Subgroup) -> GassmannReport:
    S = _sub(G)
    P = S.parent
    rows = []
    for cls in _classes_idx(S):
        members = set(cls)
        rows.append(
            (P.element(cls[0]), len(cls), len(members & H.members), len(members & H2.members))
        )
    by_classes = all(a == b for _, _, a, b in rows)
    by_cosets = _cyclic_types_agree(S, H, H2)
    if by_classes != by_cosets:
        raise RuntimeError(
            "class-intersection and cyclic double-coset tests disagree "
            f"for {H.describe()} and {H2.describe()}"
        )
    if by_classes and H.order != H2.order:
        raise RuntimeError("Gassmann equivalent subgroups of different orders")
    conj = bool(are_conjugate_subgroups(S, H, H2))
    if conj and not by_classes:
        raise RuntimeError("conjugate subgroups reported as not Gassmann equivalent")
    return GassmannReport(by_classes, conj, by_cosets, rows)


def shift(p: Permutation, offset: int, degree: int) -> Permutation:
    """Move p to the points offset+1..offset+deg(p) inside S_degree."""
    images = list(range(1, degree + 1))
    for i, j in enumerate(p.images, 1):
        images[offset + i - 1] = offset + j
    return Permutation(images)


def direct_product_embed(A: PermGroup, B: PermGroup, cap: Optional[int] = None) -> PermGroup:
    """A x B acting on disjoint point sets: A on 1..deg A, B after it."""
    degree = A.degree + B.degree
    if cap is not None and A.order * B.order > cap:
        raise ResourceLimitError(f"|A||B| = {A.order * B.order} exceeds the cap of {cap}")
    gens = [g.embed(degree) for g in A.generators]
    gens += [shift(g, A.degree, degree) for g in B.generators]
    return generate(degree, gens, cap=cap)


def unramified_local_degree_match(G: GroupLike, H: Subgroup, H2: Subgroup) -> bool:
    """Local degree types over H and H2 agree for every cyclic C <= G."""
    S = _sub(G)
    if not gassmann_equivalent(S, H, H2).equivalent:
        raise PreconditionError("subgroups are not Gassmann equivalent")
    return all(
        local_degree_type(S, C, H) == local_degree_type(S, C, H2) for C in cyclic_subgroups(S)
    )


def psl32() -> PermGroup:
    text = resources.files("preadmissible").joinpath("data/psl32.group").read_text()
    degree, gens = read_group_file(text)
    G = generate(degree, gens)
    if G.order != 168:
        raise RuntimeError(f"stored PSL(3,2) generators give order {G.order}, not 168")
    return G


FANO_LINE = (1, 2, 4)


def psl32_gassmann_pair(G: Optional[PermGroup] = None) -> tuple[PermGroup, Subgroup, Subgroup]:
    """PSL(3,2), the stabilizer of point 1 and the stabilizer of the line {1,2,4}."""
    G = G if G is not None else psl32()
    point = setwise_stabilizer(G, (1,))
    line = setwise_stabilizer(G, FANO_LINE)
    return G, point, line
