"""Seeded random small groups and subgroups for property checks."""

from __future__ import annotations

import random

from .errors import ResourceLimitError
from .groups import PermGroup, Subgroup, generate
from .perm import Permutation


def random_permutation(rng: random.Random, degree: int) -> Permutation:
    images = list(range(1, degree + 1))
    rng.shuffle(images)
    return Permutation(images)


def random_group(rng: random.Random, max_order: int = 200, max_degree: int = 7) -> PermGroup:
    """A random permutation group of order at most max_order (retrying until one fits)."""
    while True:
        degree = rng.randint(2, max_degree)
        gens = [random_permutation(rng, degree) for _ in range(rng.randint(1, 3))]
        try:
            return generate(degree, gens, cap=max_order)
        except ResourceLimitError:
            continue


def random_subgroup(rng: random.Random, G: PermGroup, max_generators: int = 2) -> Subgroup:
    gens = [rng.randrange(G.order) for _ in range(rng.randint(0, max_generators))]
    return G.closure(gens)


def random_triple(rng: random.Random, max_order: int = 200) -> tuple[PermGroup, Subgroup, Subgroup]:
    G = random_group(rng, max_order)
    return G, random_subgroup(rng, G), random_subgroup(rng, G)
