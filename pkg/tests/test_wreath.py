from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from preadmissible.errors import MalformedInputError, PreconditionError, ResourceLimitError
from preadmissible.groups import conjugacy_class, generate, read_group_file
from preadmissible.perm import format_cycles
from preadmissible.wreath import (
    level_generator,
    block_cycles,
    l_cycles_are_block_powers,
    max_element_order,
    max_metacyclic_order,
    series_bound_check,
    smallest_threshold_level,
    sylow_generators,
    threshold_inequality,
)

MATERIALIZABLE = [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (5, 1), (5, 2)]


def test_generators_as_displayed():
    ws = sylow_generators(2, 3)
    assert [format_cycles(a) for a in ws.generators] == ["(1,2)", "(1,3)(2,4)", "(1,5)(2,6)(3,7)(4,8)"]
    assert ws.expected_order == 128
    ws = sylow_generators(3, 2)
    assert [format_cycles(a) for a in ws.generators] == ["(1,2,3)", "(1,4,7)(2,5,8)(3,6,9)"]
    assert sylow_generators(2, 1).group().order == 2


def test_level_generator_shape():
    for l, r in [(2, 3), (3, 2), (3, 3), (5, 2)]:
        a = level_generator(l, r)
        assert list(a.cycle_type()) == [l] * l ** (r - 1)


@pytest.mark.parametrize("l,n", MATERIALIZABLE)
def test_orders(l, n):
    ws = sylow_generators(l, n)
    assert ws.group().order == l ** ((l**n - 1) // (l - 1))


@pytest.mark.parametrize("l,n", MATERIALIZABLE)
def test_blocks_are_the_class_of_the_first_generator(l, n):
    ws = sylow_generators(l, n)
    G = ws.group()
    assert set(conjugacy_class(G, ws.generators[0])) == set(block_cycles(l, n))
    assert l_cycles_are_block_powers(G, l, n)


def test_block_cycles():
    assert [format_cycles(b) for b in block_cycles(2, 3)] == ["(1,2)", "(3,4)", "(5,6)", "(7,8)"]
    assert [format_cycles(b) for b in block_cycles(3, 2)] == ["(1,2,3)", "(4,5,6)", "(7,8,9)"]
    assert [format_cycles(b) for b in block_cycles(2, 1)] == ["(1,2)"]


def test_bad_parameters():
    with pytest.raises(MalformedInputError):
        sylow_generators(4, 2)
    with pytest.raises(MalformedInputError):
        sylow_generators(2, 0)
    with pytest.raises(ResourceLimitError):
        sylow_generators(2, 8)
    with pytest.raises(ResourceLimitError):
        sylow_generators(2, 5).group()
    with pytest.raises(PreconditionError):
        threshold_inequality(3, 1)


def test_group_file_of_generators():
    degree, gens = read_group_file(sylow_generators(2, 3).group_file())
    assert degree == 8 and generate(degree, gens).order == 128


def test_max_orders():
    S4 = sylow_generators(2, 2).group()
    d, witness = max_metacyclic_order(S4)
    assert d == 8 and witness == S4.whole()
    S8 = sylow_generators(2, 3).group()
    d8, _ = max_metacyclic_order(S8)
    assert d8 == 16 < 64
    assert max_element_order(S8) == 8
    assert max_element_order(sylow_generators(3, 2).group()) == 9
    assert max_metacyclic_order(generate(8, ["(1,2,3,4,5,6,7,8)"]))[0] == 8
    assert max_element_order(generate(6, ["(1,2)", "(3,4)", "(5,6)"])) == 2


@pytest.mark.parametrize("l,n", [(2, 2), (2, 3), (3, 2)])
def test_metacyclic_order_bounded_by_square_of_exponent(l, n):
    G = sylow_generators(l, n).group()
    assert max_metacyclic_order(G)[0] <= max_element_order(G) ** 2


def _naive(l, n):
    # the inequality as stated, in exact rationals
    return Fraction(l ** ((l**n - 1) // (l - 1))) * (1 - Fraction(2, l ** (n - 1))) >= l ** (2 * n + 1)


@given(st.sampled_from([2, 3, 5, 7]), st.integers(2, 4))
def test_threshold_matches_rational_form(l, n):
    assert threshold_inequality(l, n) == _naive(l, n)


def test_threshold_examples_and_levels():
    assert threshold_inequality(5, 2) and threshold_inequality(3, 3)
    assert not threshold_inequality(2, 3)
    assert {l: smallest_threshold_level(l) for l in (2, 3, 5, 7, 11)} == {2: 4, 3: 3, 5: 2, 7: 2, 11: 2}
    # huge levels stay cheap: no l^((l^n-1)/(l-1)) is ever formed
    assert threshold_inequality(11, 12)


def test_series_bound_s8():
    G = sylow_generators(2, 3).group()
    r = series_bound_check(G, "(1,2)", b=2)
    assert (r.group_order, r.subgroup_order, r.max_metacyclic, r.stabilizer_order) == (128, 2, 16, 32)
    assert r.stabilizer_order == 128 // len(block_cycles(2, 3))
    assert r.holds and r.implication_verified is True
    assert r.to_json()["stabilizer_order"] == 32


def test_series_bound_s9_and_trivial_cases():
    G = sylow_generators(3, 2).group()
    r = series_bound_check(G, "(1,2,3)", b=2)
    assert not r.holds and r.implication_verified is None
    C2 = sylow_generators(2, 1).group()
    assert not series_bound_check(C2, "(1,2)").holds
    with pytest.raises(PreconditionError):
        series_bound_check(G, "(1,2)")


@pytest.mark.slow
def test_s27_exhaustive():
    ws = sylow_generators(3, 3)
    G = ws.group()
    assert G.order == 3**13
    assert set(conjugacy_class(G, ws.generators[0])) == set(block_cycles(3, 3))
    assert l_cycles_are_block_powers(G, 3, 3)
