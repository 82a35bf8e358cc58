import random

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from preadmissible.cosets import (
    double_coset_type,
    double_cosets,
    local_degree_type,
    second_entry_compare,
    split_count,
    verify_equivalence_condition,
    trivial_meet_count,
)
from preadmissible.errors import PreconditionError
from preadmissible.gassmann import psl32_gassmann_pair
from preadmissible.groups import cyclic_subgroups, generate, two_generated_subgroups
from preadmissible.sampling import random_triple
from preadmissible.structure import is_metacyclic


@pytest.fixture(scope="module")
def sym3():
    return generate(3, ["(1,2)", "(1,2,3)"])


@pytest.fixture(scope="module")
def s8():
    return generate(8, ["(1,2)", "(1,3)(2,4)", "(1,5)(2,6)(3,7)(4,8)"])


@pytest.fixture(scope="module")
def s9():
    return generate(9, ["(1,2,3)", "(1,4,7)(2,5,8)(3,6,9)"])


def test_s3_examples(sym3):
    A, B = sym3.subgroup("(1,2,3)"), sym3.subgroup("(1,2)")
    assert double_coset_type(sym3, A, B).sizes == (6,)
    assert split_count(sym3, A, B) == 1
    assert local_degree_type(sym3, A, B).degrees == (3,)


def test_degenerate_types(sym3):
    one = sym3.trivial()
    G = sym3.whole()
    B = sym3.subgroup("(1,2)")
    assert double_coset_type(sym3, G, B).sizes == (6,)
    assert double_coset_type(sym3, one, one).sizes == (1,) * 6
    assert local_degree_type(sym3, one, B).degrees == (1, 1, 1)
    assert local_degree_type(sym3, B, G).degrees == (1,)


def test_type_tie_break_is_by_representative(sym3):
    t = double_coset_type(sym3, sym3.subgroup("(1,2)"), sym3.subgroup("(1,2)"))
    assert t.sizes == (4, 2)
    assert t.entry(1) == 4 and len(t) == 2
    assert t.reps[1] == 0  # the identity coset is the small one


def test_wreath_split_counts(s9):
    H = s9.subgroup("(1,2,3)")
    assert split_count(s9, s9.subgroup("(1,2,3);(4,5,6)"), H) == 1
    S4 = generate(4, ["(1,2)", "(1,3)(2,4)"])
    assert split_count(S4, S4.whole(), S4.subgroup("(1,2)")) == 0


def test_x_count_examples(s8):
    H = s8.subgroup("(1,2)")
    D = s8.subgroup("(1,2)")
    assert trivial_meet_count(s8, D, H) == 96
    assert trivial_meet_count(s8, s8.trivial(), H) == 128
    assert trivial_meet_count(s8, D, s8.trivial()) == 128


def test_second_entry(s9):
    D = s9.subgroup("(1,2,3);(4,5,6)")
    H = s9.subgroup("(1,2,3)")
    assert second_entry_compare(s9, D, H, H)
    with pytest.raises(PreconditionError, match="H'"):
        second_entry_compare(s9, D, H, s9.whole())


def test_second_entry_on_gassmann_pair():
    G, H, H2 = psl32_gassmann_pair()
    for C in cyclic_subgroups(G):
        if len(double_coset_type(G, C, H)) >= 2:
            assert second_entry_compare(G, C, H, H2)


def test_foreign_subgroup_rejected(sym3, s8):
    with pytest.raises(PreconditionError):
        double_coset_type(sym3, sym3.trivial(), s8.trivial())


def test_verify_examples(s8, s9):
    assert verify_equivalence_condition(s8, s8.subgroup("(1,2)")).passed
    bad = verify_equivalence_condition(s9, s9.subgroup("(1,2,3)"))
    assert not bad.passed and (s9.subgroup("(1,2,3);(4,5,6)"), 1) in bad.failures
    S4 = generate(4, ["(1,2)", "(1,3)(2,4)"])
    v = verify_equivalence_condition(S4, S4.subgroup("(1,2)"))
    assert (S4.whole(), 0) in v.failures


def test_verify_core_must_be_trivial(s8):
    v = verify_equivalence_condition(s8, s8.whole())
    assert not v.core_trivial and not v.passed


def test_verify_all_subgroups_scope(s8):
    v = verify_equivalence_condition(s8, s8.subgroup("(1,2)"), scope="all-subgroups")
    # D = G has a single double coset, so the full lattice cannot pass
    assert not v.passed
    assert (s8.whole(), 0) in v.failures
    # the metacyclic scope passes, so every failure is non-metacyclic
    assert all(not is_metacyclic(D) for D, _ in v.failures)
    with pytest.raises(PreconditionError):
        verify_equivalence_condition(s8, s8.trivial(), scope="bogus")


def test_verify_parallel_matches_serial(s9):
    H = s9.subgroup("(1,2,3)")
    serial = verify_equivalence_condition(s9, H)
    parallel = verify_equivalence_condition(s9, H, jobs=3)
    assert serial.to_json() == parallel.to_json()


def test_verdict_json(s9):
    out = verify_equivalence_condition(s9, s9.subgroup("(1,2,3)")).to_json()
    assert set(out) == {"pass", "core_trivial", "checked", "scope", "candidates", "failures"}
    assert out["failures"][0]["split_count"] == 1


def test_split_iff_many_trivial_intersections(s8):
    H = s8.subgroup("(1,2)")
    for D in two_generated_subgroups(s8):
        s = split_count(s8, D, H)
        assert (s > 1) == (trivial_meet_count(s8, D, H) > D.order * H.order)


triples = st.integers(0, 10**6).map(lambda seed: (random.Random(seed), random_triple(random.Random(seed))))


@settings(max_examples=80, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(triples)
def test_partition_and_sizes(arg):
    _, (G, A, B) = arg
    cosets = double_cosets(G, A, B)
    covered = set()
    for rep, members in cosets:
        assert covered.isdisjoint(members)
        covered |= members
        assert rep == min(members)
        meet = A.conjugate_by(rep).intersection(B).order
        assert len(members) * meet == A.order * B.order
    assert covered == set(range(G.order))
    assert sum(double_coset_type(G, A, B).sizes) == G.order


@settings(max_examples=80, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(triples)
def test_counting_identities(arg):
    rng, (G, A, B) = arg
    assert trivial_meet_count(G, A, B) == split_count(G, A, B) * A.order * B.order
    assert sum(local_degree_type(G, A, B).degrees) == G.order // B.order
    g = rng.randrange(G.order)
    assert double_coset_type(G, A.conjugate_by(g), B).sizes == double_coset_type(G, A, B).sizes
