import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.combinatorics import Permutation as SymPerm

from preadmissible.errors import MalformedInputError
from preadmissible.perm import (
    CycleType,
    Permutation,
    compose,
    conjugate,
    cycle_type,
    format_cycles,
    from_cycles,
    identity,
    parse_cycles,
)
from preadmissible.wreath import level_generator


@st.composite
def perms(draw, min_degree=1, max_degree=12, degree=None):
    n = degree or draw(st.integers(min_degree, max_degree))
    return Permutation(draw(st.permutations(range(1, n + 1))))


def test_involution():
    t = parse_cycles("(1,2)", 3)
    assert compose(t, t) == identity(3)
    assert compose(t, t).is_identity()


def test_left_to_right_composition():
    p = compose(parse_cycles("(1,2)", 3), parse_cycles("(2,3)", 3))
    assert p.images == (3, 1, 2)
    assert format_cycles(p) == "(1,3,2)"


def test_composition_matches_sympy_convention():
    # sympy also applies the left factor first
    a, b = parse_cycles("(1,2,3)(4,5)", 6), parse_cycles("(1,6)(2,4)", 6)
    sa = SymPerm([i - 1 for i in a.images])
    sb = SymPerm([i - 1 for i in b.images])
    assert [i + 1 for i in (sa * sb).array_form] == list((a * b).images)


def test_identity_law_on_degree_eight():
    import random

    rng = random.Random(3)
    for _ in range(20):
        imgs = list(range(1, 9))
        rng.shuffle(imgs)
        s = Permutation(imgs)
        assert s * identity(8) == s
        assert identity(8) * s == s


def test_conjugate_transposition():
    assert conjugate(parse_cycles("(1,2)", 3), parse_cycles("(1,3)", 3)) == parse_cycles("(2,3)", 3)


def test_conjugate_by_identity():
    s = parse_cycles("(1,4,2)(3,5)", 5)
    assert conjugate(s, identity(5)) == s


def test_cycle_types():
    assert cycle_type(parse_cycles("(1,2,3)(4,5)", 5)) == CycleType([3, 2])
    assert cycle_type(identity(4)) == CycleType([])
    assert cycle_type(level_generator(3, 2)) == CycleType([3, 3, 3])
    assert str(CycleType([2, 3, 1])) == "[3,2]"
    ct = CycleType([4, 2, 2])
    assert (ct.length, ct.order) == (8, 4)
    assert CycleType([]).order == 1


def test_parse_top_level_generator():
    p = parse_cycles("(1,5)(2,6)(3,7)(4,8)", 8)
    assert p.images == (5, 6, 7, 8, 1, 2, 3, 4)
    assert p == level_generator(2, 3)


def test_parse_whitespace_and_identity():
    assert parse_cycles(" ( 1 2 ) ( 3, 4 ) ", 4) == from_cycles([(1, 2), (3, 4)], 4)
    assert parse_cycles("()", 3).is_identity()
    assert parse_cycles("", 3).is_identity()
    assert format_cycles(identity(3)) == "()"


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("(1,1,2)", "repeated point"),
        ("(1,2)(2,3)", "repeated point"),
        ("(1,9)", "outside 1..8"),
        ("(1,2", "unbalanced '('"),
        ("1,2)", "outside parentheses"),
        ("(1,2))", "unbalanced ')'"),
        ("((1,2))", "nested"),
        ("(1,,2)", "misplaced"),
        ("(1,2,)", "dangling"),
        ("(1;2)", "unexpected character"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(MalformedInputError) as exc:
        parse_cycles(text, 8)
    assert fragment in str(exc.value)
    assert "position" in str(exc.value)


def test_bad_images():
    with pytest.raises(MalformedInputError):
        Permutation([1, 1, 2])
    with pytest.raises(MalformedInputError):
        Permutation([])


def test_embedding_equality_and_hash():
    small = parse_cycles("(1,2)", 2)
    big = parse_cycles("(1,2)", 10)
    assert small == big and hash(small) == hash(big)
    assert (small * parse_cycles("(3,4)", 4)).degree == 4
    with pytest.raises(MalformedInputError):
        big.embed(1)


def test_power_and_order():
    s = parse_cycles("(1,2,3,4)(5,6)", 6)
    assert s.order() == 4
    assert (s**4).is_identity()
    assert s**-1 == s.inverse() == ~s
    assert s**0 == identity(6)


@settings(max_examples=1000)
@given(st.integers(1, 12).flatmap(lambda n: st.tuples(perms(degree=n), perms(degree=n), perms(degree=n))))
def test_associativity(triple):
    a, b, c = triple
    assert (a * b) * c == a * (b * c)


@given(perms())
def test_inverse(s):
    assert s * s.inverse() == identity(s.degree)
    assert s.inverse() * s == identity(s.degree)


@given(perms())
def test_order_is_lcm_of_cycle_lengths(s):
    k = 1
    p = s
    while not p.is_identity():
        p = p * s
        k += 1
    assert k == s.order() == s.cycle_type().order


@given(perms())
def test_cycle_type_matches_sympy(s):
    sym = SymPerm([i - 1 for i in s.images])
    lengths = []
    for length, count in sym.cycle_structure.items():
        if length > 1:
            lengths += [length] * count
    assert cycle_type(s) == CycleType(lengths)
    assert s.cycle_type().length <= s.degree


@settings(max_examples=100)
@given(st.integers(1, 10).flatmap(lambda n: st.tuples(perms(degree=n), perms(degree=n))))
def test_conjugation_properties(pair):
    s, x = pair
    c = conjugate(s, x)
    assert c == x.inverse() * s * x
    assert cycle_type(c) == cycle_type(s)
    assert conjugate(c, x.inverse()) == s


@given(perms())
def test_format_parse_roundtrip(s):
    assert parse_cycles(format_cycles(s), s.degree) == s


@given(perms())
def test_cycles_are_disjoint_and_start_small(s):
    seen = set()
    for c in s.cycles():
        assert c[0] == min(c)
        assert not seen & set(c)
        seen |= set(c)
    assert seen == set(s.support())
