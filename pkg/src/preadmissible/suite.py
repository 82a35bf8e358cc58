"""Registry of the reproducible claims, runnable as one batch.

Each claim check takes an optional fault name and returns ``(passed, detail)``;
faults exist only to prove that a broken input makes the suite fail.
Claims carry tags so a run can be narrowed (``s8``, ``padic``, ...).
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable, Optional

from .cosets import (
    double_coset_type,
    double_cosets,
    local_degree_type,
    split_count,
    verify_equivalence_condition,
    trivial_meet_count,
)
from .gassmann import gassmann_equivalent, psl32_gassmann_pair, unramified_local_degree_match
from .groups import (
    PermGroup,
    conjugacy_class,
    generate,
    normalizer,
    two_generated_subgroups,
)
from .padic import (
    KUMMER_COMPLETIONS,
    SHIFTED_COMPLETIONS,
    REALIZABILITY_TARGET,
    LocalFieldDescriptor,
    TwoAdicPoly,
    abelian_exponent_quotient,
    hensel_root32,
    kummer_factors,
    preadmissibility_witness_compare,
    product_matches,
    shifted_kummer_factors,
)
from .perm import CycleType, format_cycles
from .sampling import random_group, random_subgroup, random_triple
from .structure import cycle_type_census, frattini_2group, is_metacyclic, quotient_group
from .wreath import (
    block_cycles,
    l_cycles_are_block_powers,
    max_element_order,
    sylow_generators,
    threshold_inequality,
)

FAULTS = ("padic-factor", "s8-generator", "threshold")


@dataclass(frozen=True)
class Claim:
    name: str
    anchor: str
    tags: tuple
    check: Callable[[Optional[str]], tuple]


@dataclass(frozen=True)
class ClaimResult:
    name: str
    anchor: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name} [{self.anchor}] {self.detail} ({self.seconds:.2f}s)"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "anchor": self.anchor,
            "pass": self.passed,
            "detail": self.detail,
        }


# -- shared fixtures (cached per process) ------------------------------

_cache: dict = {}


def _cached(key, build):
    if key not in _cache:
        _cache[key] = build()
    return _cache[key]


def s8(fault: Optional[str] = None) -> PermGroup:
    if fault == "s8-generator":
        return generate(8, ["(1,2)", "(1,3)(2,4)"])
    return _cached("s8", lambda: sylow_generators(2, 3).group())


def s9() -> PermGroup:
    return _cached("s9", lambda: sylow_generators(3, 2).group())


def s4() -> PermGroup:
    return _cached("s4", lambda: sylow_generators(2, 2).group())


def sym5() -> PermGroup:
    return _cached("sym5", lambda: generate(5, ["(1,2,3,4,5)", "(1,2)"]))


# -- criterion checks ----------------------------------------------------


def check_s8_main_lemma(fault=None):
    G = s8(fault)
    if G.order != 128:
        return False, f"|G| = {G.order}, expected 128"
    H = G.subgroup("(1,2)")
    start = time.perf_counter()
    verdict = verify_equivalence_condition(G, H)
    took = time.perf_counter() - start
    ok = verdict.passed and not verdict.failures and took < 60
    return ok, (
        f"|G|=128, {verdict.checked} metacyclic of {verdict.candidates} two-generated, "
        f"{len(verdict.failures)} failures, {took:.2f}s"
    )


def _find_failure(verdict, D):
    for F, s in verdict.failures:
        if F == D:
            return s
    return None


def check_s9_negative(fault=None):
    G = s9()
    H = G.subgroup("(1,2,3)")
    D = G.subgroup("(1,2,3);(4,5,6)")
    verdict = verify_equivalence_condition(G, H)
    s = _find_failure(verdict, D)
    ok = not verdict.passed and s == 1 and split_count(G, D, H) == 1
    return ok, f"D={D.describe()} listed with S(D,H)={s}; {len(verdict.failures)} failures total"


def check_s4_negative(fault=None):
    G = s4()
    H = G.subgroup([sylow_generators(2, 2).generators[0]])
    verdict = verify_equivalence_condition(G, H)
    s = _find_failure(verdict, G.whole())
    ok = not verdict.passed and s == 0
    return ok, f"D=G listed with S(D,H)={s}; {len(verdict.failures)} failures total"


def check_s5_census(fault=None):
    G = sym5()
    transposition = CycleType([2])
    best = 0
    for D in two_generated_subgroups(G):
        if is_metacyclic(D):
            best = max(best, cycle_type_census(D, transposition))
    W = G.subgroup("(1,2,3)(4,5);(1,2)")
    w = cycle_type_census(W, transposition)
    ok = best == 4 and w == 4 and bool(is_metacyclic(W))
    return ok, f"max [2]-census {best}; witness {W.describe()} of order {W.order} has {w}"


def _block_indices(G):
    return {G.index_of(b) for b in block_cycles(2, 3)}


def check_s8_census(fault=None):
    G = s8(fault)
    blocks = _block_indices(G)
    worst = max(len(D.members & blocks) for D in two_generated_subgroups(G) if is_metacyclic(D))
    return worst <= 2, f"max |D meet blocks| over metacyclic D is {worst}"


def check_s8_class(fault=None):
    G = s8(fault)
    cls = {format_cycles(p) for p in conjugacy_class(G, "(1,2)")}
    expected = {"(1,2)", "(3,4)", "(5,6)", "(7,8)"}
    ok = cls == expected and l_cycles_are_block_powers(G, 2, 3)
    return ok, f"class of (1,2) = {sorted(cls)}; every 2-cycle is a block"


def check_s9_three_cycles(fault=None):
    G = s9()
    cls = {p for p in conjugacy_class(G, "(1,2,3)")}
    ok = cls == set(block_cycles(3, 2)) and l_cycles_are_block_powers(G, 3, 2)
    return ok, "class of (1,2,3) is the block set; every 3-cycle is a block power"


def check_s8_structure(fault=None):
    G = s8(fault)
    Phi = frattini_2group(G)
    Q = quotient_group(G, Phi)
    rank = Q.elementary_abelian_rank()
    n1 = normalizer(G, G.subgroup("(1,2);(5,6)")).order
    n2 = normalizer(G, G.subgroup("(1,2);(7,8)")).order
    orders = {D.order for D in two_generated_subgroups(G) if is_metacyclic(D)}
    e8 = max_element_order(G)
    ok = Q.order == 8 and rank == 3 and n1 == 32 and n2 == 32 and 64 not in orders and e8 == 8
    return ok, (
        f"G/Phi order {Q.order} rank {rank}; normalizers {n1},{n2}; "
        f"metacyclic orders {sorted(orders)}; max element order {e8}"
    )


def check_s9_element_order(fault=None):
    e = max_element_order(s9())
    return e == 9, f"max element order {e}"


THRESHOLD_TRUE = ((5, 2), (7, 2), (3, 3), (2, 4), (3, 4))
THRESHOLD_FALSE = ((2, 2), (3, 2), (2, 3))


def check_threshold(fault=None):
    true_ok = all(threshold_inequality(l, n) for l, n in THRESHOLD_TRUE)
    false_ok = not any(threshold_inequality(l, n) for l, n in THRESHOLD_FALSE)
    if fault == "threshold":
        true_ok = threshold_inequality(2, 3)
    return true_ok and false_ok, f"holds on {list(THRESHOLD_TRUE)}, fails on {list(THRESHOLD_FALSE)}"


def coset_identities_hold(G, A, B, rng: random.Random) -> Optional[str]:
    """Return a description of the first broken identity, or None."""
    S = G.whole()
    P = G
    cosets = double_cosets(G, A, B)
    seen = set()
    for rep, members in cosets:
        if seen & members:
            return "double cosets overlap"
        seen |= members
        meet = A.conjugate_by(rep).intersection(B).order
        if len(members) * meet != A.order * B.order:
            return f"|AxB| != |A||B|/|A^x meet B| at x={format_cycles(P.element(rep))}"
    if seen != S.members:
        return "double cosets do not cover G"
    if trivial_meet_count(G, A, B) != split_count(G, A, B) * A.order * B.order:
        return "X(A,B) != S(A,B)|A||B|"
    if sum(local_degree_type(G, A, B).degrees) != G.order // B.order:
        return "local degrees do not sum to the index"
    x = rng.randrange(G.order)
    y = rng.randrange(G.order)
    t = double_coset_type(G, A, B).sizes
    if double_coset_type(G, A.conjugate_by(x), B.conjugate_by(y)).sizes != t:
        return "type vector changed under conjugation"
    return None


def check_coset_identities(fault=None, trials: int = 500, seed: int = 20240611):
    rng = random.Random(seed)
    for i in range(trials):
        G, A, B = random_triple(rng)
        problem = coset_identities_hold(G, A, B, rng)
        if problem:
            return False, f"trial {i}: {problem}"
    return True, f"{trials} random triples with |G| <= 200"


def check_gassmann_psl(fault=None):
    G, H, H2 = psl32_gassmann_pair()
    r = gassmann_equivalent(G, H, H2)
    match = unramified_local_degree_match(G, H, H2)
    ok = G.order == 168 and r.equivalent and not r.conjugate and r.cyclic_check and match
    return ok, f"|G|={G.order}, |H|=|H'|={H.order}, equivalent={r.equivalent}, conjugate={r.conjugate}"


def check_gassmann_random(fault=None, trials: int = 100, seed: int = 7):
    rng = random.Random(seed)
    equivalent = 0
    for _ in range(trials):
        G = random_group(rng)
        H = random_subgroup(rng, G)
        if rng.random() < 0.5:
            H2 = H.conjugate_by(rng.randrange(G.order))
        else:
            H2 = random_subgroup(rng, G)
        # raises if the two characterizations disagree
        equivalent += gassmann_equivalent(G, H, H2).equivalent
    return True, f"{trials} triples agree ({equivalent} equivalent)"


def check_hierarchy(fault=None):
    G = s8(fault)
    H = G.subgroup("(1,2)")
    passed = verify_equivalence_condition(G, H).passed
    r = gassmann_equivalent(G, H, G.trivial())
    return passed and not r.equivalent, (
        f"split condition {'holds' if passed else 'fails'}; Gassmann equivalent to trivial: {r.equivalent}"
    )


PADIC_MODULI = (129, 641, 1 + 2**7 * 11)
SHAPE_TABLE = (
    ((8, 16), (16,) * 10),
    ((16, 32), (16,) * 18),
    ((16, 2), (16,) * 17 + (2,)),
    ((8, 2), (16,) * 9 + (2,)),
)


def check_padic(fault=None):
    start = time.perf_counter()
    for m in PADIC_MODULI:
        u = hensel_root32(m, 64)
        if pow(u.value, 32, 1 << 64) != m:
            return False, f"u^32 != {m} mod 2^64"
        u40 = hensel_root32(m, 40)
        first = kummer_factors(u40)
        if fault == "padic-factor":
            first[0] = first[0] - 2
        x32 = TwoAdicPoly.monomial(32, 1, 40)
        if not product_matches(first, x32 - m):
            return False, f"x^32 - {m} factorization fails at precision 40"
        if not product_matches(shifted_kummer_factors(u40), x32 - (m << 16)):
            return False, f"x^32 - 2^16*{m} factorization fails at precision 40"
    for (n, q), factors in SHAPE_TABLE:
        got = abelian_exponent_quotient(LocalFieldDescriptor(n, q), 16)
        if got.cyclic_factors != factors:
            return False, f"({n},{q}) gives {got}"
    cmp = preadmissibility_witness_compare(KUMMER_COMPLETIONS, SHIFTED_COMPLETIONS, REALIZABILITY_TARGET, 16)
    took = time.perf_counter() - start
    ok = (cmp.first_count, cmp.second_count) == (2, 1) and cmp.separates and took < 5
    return ok, f"moduli {list(PADIC_MODULI)}; counts ({cmp.first_count},{cmp.second_count}): {cmp.verdict}; {took:.2f}s"


CLAIMS = (
    Claim("s8-main-lemma", "S_8(2) split lemma", ("s8", "cosets"), check_s8_main_lemma),
    Claim("s9-negative-witness", "S_9(3) counterexample", ("s9", "cosets"), check_s9_negative),
    Claim("s4-negative-witness", "S_4(2) counterexample", ("s4", "cosets"), check_s4_negative),
    Claim("s5-transposition-census", "S_5 census example", ("s5", "census"), check_s5_census),
    Claim("s8-block-census", "at most two blocks per metacyclic subgroup", ("s8", "census"), check_s8_census),
    Claim("s8-transposition-class", "transpositions of S_8(2)", ("s8",), check_s8_class),
    Claim("s9-three-cycles", "3-cycles of S_9(3)", ("s9",), check_s9_three_cycles),
    Claim("s8-structure", "S_8(2) Frattini and normalizer facts", ("s8",), check_s8_structure),
    Claim("s9-element-order", "S_9(3) exponent", ("s9",), check_s9_element_order),
    Claim("threshold-inequality", "series threshold inequality", ("inequality",), check_threshold),
    Claim("coset-identities", "double coset identities", ("cosets",), check_coset_identities),
    Claim("gassmann-psl32", "PSL(3,2) Gassmann pair", ("gassmann",), check_gassmann_psl),
    Claim("gassmann-characterizations", "class vs cyclic coset test", ("gassmann",), check_gassmann_random),
    Claim("hierarchy-strict", "split condition without Gassmann", ("s8", "gassmann"), check_hierarchy),
    Claim("padic-kummer", "2-adic degree-32 example", ("padic",), check_padic),
)


def select(filter_tag: Optional[str] = None) -> list[Claim]:
    if not filter_tag:
        return list(CLAIMS)
    return [c for c in CLAIMS if filter_tag in c.tags or c.name == filter_tag]


def run_claims(filter_tag: Optional[str] = None, fault: Optional[str] = None) -> list[ClaimResult]:
    results = []
    for claim in select(filter_tag):
        start = time.perf_counter()
        try:
            passed, detail = claim.check(fault)
        except Exception as exc:  # a crash is a failed claim, not a crashed suite
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(ClaimResult(claim.name, claim.anchor, bool(passed), detail, time.perf_counter() - start))
    return results
