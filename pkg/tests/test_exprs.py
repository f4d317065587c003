import pytest

from ringlab import constructors, parse_ring_expr
from ringlab.errors import ParseError, RingLabError
from ringlab.exprs import RingExprPlan


@pytest.mark.parametrize("text,canonical,size", [
    ("Z6", "Z6", 6),
    ("z6", "Z6", 6),
    ("M2(Z2)", "M2(Z2)", 16),
    ("  t 3 ( z2 )  ", "T3(Z2)", 64),
    ("S2(M2(Z2))", "S2(M2(Z2))", 256),
    ("ex22(3)", "ex22(3)", 729),
    ("Z2 x Z3", "Z2 x Z3", 6),
    ("Z2 x Z2 x Z2", "Z2 x Z2 x Z2", 8),
    ("ex22(2) x Z4", "ex22(2) x Z4", 256),
])
def test_parse_and_build(text, canonical, size):
    plan = parse_ring_expr(text)
    assert plan.canonical() == canonical
    assert plan.build().size == size


def test_corner_expression():
    plan = parse_ring_expr("corner(M2(Z2), 5)")
    ring = plan.build()
    m2 = constructors.make_matrix(constructors.make_zn(2), 2)
    assert m2.mul(5, 5) == 5  # the handle really is an idempotent
    assert plan.canonical() == "corner(M2(Z2),5)"
    assert ring.size >= 2


def test_canonical_is_a_fixed_point():
    for text in ("z 6", "s2(m2(z2))", "ex22(2) X z4", "corner(M2(Z2), 5)"):
        once = parse_ring_expr(text).canonical()
        assert parse_ring_expr(once).canonical() == once


def test_build_cache_returns_same_object():
    a = parse_ring_expr("S2(Z4)").build()
    b = parse_ring_expr("s2( z4 )").build()
    assert a is b


@pytest.mark.parametrize("text", [
    "", "Z", "Z0", "M(Z2)", "M2(Z2", "Z2 x", "Q8", "T2 Z2",
    "corner(M2(Z2))", "corner(M2(Z2), 99)", "ex22(6)", "Z2)",
])
def test_parse_errors(text):
    # tokenizer problems raise ParseError; well-formed but invalid plans
    # surface the constructor's contract error at build time
    with pytest.raises(RingLabError):
        parse_ring_expr(text).build()


def test_parse_error_position():
    with pytest.raises(ParseError) as exc:
        parse_ring_expr("M2(Z2")
    assert exc.value.position == 5


def test_plan_is_hashable():
    p1 = parse_ring_expr("Z2 x Z3")
    p2 = parse_ring_expr("z2 X z3")
    assert isinstance(p1, RingExprPlan)
    assert p1 == p2 and hash(p1) == hash(p2)
