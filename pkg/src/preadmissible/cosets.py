"""Double cosets, the split statistic S(A, B) and the equivalence verdict.

For subgroups A, B of G the double coset type is the decreasing vector of
sizes |AxB|.  A double coset is split when |AxB| = |A||B|, i.e. when
x^-1 A x meets B trivially.  For a Galois extension with group G and a
subfield fixed by H, dividing the type (D, H) by |H| gives the local
degrees above a prime whose decomposition group is D.
"""

from __future__ import annotations

import multiprocessing
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .errors import PreconditionError
from .groups import GroupLike, Subgroup, _sub, all_subgroups, core, two_generated_subgroups
from .perm import format_cycles
from .structure import is_metacyclic

__all__ = [
    "DoubleCosetType",
    "LocalDegreeType",
    "EquivalenceVerdict",
    "double_cosets",
    "double_coset_type",
    "split_count",
    "trivial_meet_count",
    "local_degree_type",
    "second_entry_compare",
    "verify_equivalence_condition",
]


@dataclass(frozen=True)
class DoubleCosetType:
    sizes: tuple
    reps: tuple  # element indices of the parent group, one per coset
    split_size: int  # |A||B|

    def entry(self, k: int) -> int:
        """(A,B)_k, 1-based."""
        return self.sizes[k - 1]

    @property
    def split_count(self) -> int:
        return sum(1 for s in self.sizes if s == self.split_size)

    def __len__(self):
        return len(self.sizes)


@dataclass(frozen=True)
class LocalDegreeType:
    degrees: tuple

    def __len__(self):
        return len(self.degrees)

    def entry(self, k: int) -> int:
        return self.degrees[k - 1]


def _check_inside(S: Subgroup, *subs: Subgroup):
    for H in subs:
        if H.parent is not S.parent or not H.members <= S.members:
            raise PreconditionError(f"{H.describe()} is not a subgroup of the ambient group")


def double_cosets(G: GroupLike, A: Subgroup, B: Subgroup) -> list[tuple[int, frozenset]]:
    """Sweep G in canonical order, marking off AxB; returns (rep, members)."""
    S = _sub(G)
    _check_inside(S, A, B)
    tab = S.parent.table
    a_list = A.key()
    b_list = B.key()
    remaining = set(S.members)
    out = []
    for x in S.key():
        if x not in remaining:
            continue
        ax = {tab[a][x] for a in a_list}
        coset = frozenset(tab[y][b] for y in ax for b in b_list)
        remaining -= coset
        out.append((x, coset))
    return out


def double_coset_type(G: GroupLike, A: Subgroup, B: Subgroup) -> DoubleCosetType:
    cosets = double_cosets(G, A, B)
    # sizes descending, ties by representative index
    cosets.sort(key=lambda rc: (-len(rc[1]), rc[0]))
    return DoubleCosetType(
        tuple(len(c) for _, c in cosets),
        tuple(r for r, _ in cosets),
        A.order * B.order,
    )


def split_count(G: GroupLike, A: Subgroup, B: Subgroup) -> int:
    """S(A, B): number of double cosets AxB of size |A||B|."""
    return double_coset_type(G, A, B).split_count


def trivial_meet_count(G: GroupLike, D: Subgroup, H: Subgroup) -> int:
    """Number of x in G with x^-1 H x meeting D only in the identity."""
    S = _sub(G)
    _check_inside(S, D, H)
    P = S.parent
    nontrivial = [h for h in H.members if h != 0]
    dm = D.members
    return sum(1 for x in S.members if not any(P.conj(h, x) in dm for h in nontrivial))


def local_degree_type(G: GroupLike, D: Subgroup, H: Subgroup) -> LocalDegreeType:
    t = double_coset_type(G, D, H)
    return LocalDegreeType(tuple(s // H.order for s in t.sizes))


def second_entry_compare(G: GroupLike, D: Subgroup, H: Subgroup, H2: Subgroup) -> bool:
    """Do (D,H)_2/|H| and (D,H2)_2/|H2| agree?"""
    first = local_degree_type(G, D, H)
    second = local_degree_type(G, D, H2)
    for name, t in (("H", first), ("H'", second)):
        if len(t) < 2:
            raise PreconditionError(f"(D,{name}) has a single double coset; the prime does not decompose")
    return first.entry(2) == second.entry(2)


@dataclass
class EquivalenceVerdict:
    passed: bool
    core_trivial: bool
    checked: int
    scope: str
    failures: list = field(default_factory=list)  # (Subgroup, split count)
    candidates: int = 0

    def to_json(self) -> dict:
        return {
            "pass": self.passed,
            "core_trivial": self.core_trivial,
            "checked": self.checked,
            "scope": self.scope,
            "candidates": self.candidates,
            "failures": [
                {
                    "generators": [format_cycles(g) for g in D.generator_perms()],
                    "order": D.order,
                    "split_count": s,
                }
                for D, s in self.failures
            ],
        }


SCOPES = ("metacyclic-only", "all-subgroups")

# Worker state for the process pool; set before forking.
_POOL_STATE: Optional[tuple] = None


def _sweep(bounds):
    S, H, scope, cands = _POOL_STATE
    lo, hi = bounds
    return _check_range(S, H, scope, list(enumerate(cands[lo:hi])))


def _candidates(S: Subgroup, scope: str) -> list:
    if scope == "all-subgroups":
        return all_subgroups(S)
    return two_generated_subgroups(S)


def _check_range(S: Subgroup, H: Subgroup, scope: str, subs: list) -> tuple[int, list]:
    checked = 0
    failures = []
    for pos, D in subs:
        if scope == "metacyclic-only" and not is_metacyclic(D):
            continue
        checked += 1
        s = split_count(S, D, H)
        if s <= 1:
            failures.append((pos, s))
    return checked, failures


def verify_equivalence_condition(
    G: GroupLike, H: Subgroup, scope: str = "metacyclic-only", jobs: int = 1
) -> EquivalenceVerdict:
    """Check core(H) = 1 and S(D, H) > 1 for every candidate D.

    ``metacyclic-only`` ranges D over metacyclic 2-generated subgroups
    (which is every metacyclic subgroup); ``all-subgroups`` over the whole
    lattice.  Failures are listed in candidate order whatever ``jobs`` is.
    """
    global _POOL_STATE
    if scope not in SCOPES:
        raise PreconditionError(f"unknown scope {scope!r}; expected one of {SCOPES}")
    S = _sub(G)
    _check_inside(S, H)
    core_trivial = core(S, H).order == 1
    cands = _candidates(S, scope)
    subs = list(enumerate(cands))
    if jobs > 1 and len(subs) > 1:
        # workers inherit this through fork
        _POOL_STATE = (S, H, scope, cands)
        step = -(-len(subs) // jobs)
        ranges = [(lo, min(lo + step, len(subs))) for lo in range(0, len(subs), step)]
        try:
            with ProcessPoolExecutor(max_workers=jobs, mp_context=multiprocessing.get_context("fork")) as pool:
                parts = list(pool.map(_sweep, ranges))
        finally:
            _POOL_STATE = None
        # chunk-local positions back to global ones
        checked = sum(c for c, _ in parts)
        failures = []
        for (lo, _), (_, fails) in zip(ranges, parts):
            failures.extend((lo + pos, s) for pos, s in fails)
    else:
        checked, failures = _check_range(S, H, scope, subs)
    failures.sort()
    return EquivalenceVerdict(
        passed=core_trivial and not failures,
        core_trivial=core_trivial,
        checked=checked,
        scope=scope,
        failures=[(cands[pos], s) for pos, s in failures],
        candidates=len(cands),
    )
