import pytest
from hypothesis import given, settings, strategies as st

from ringlab import constructors, poly_mul
from ringlab.errors import ContractError, DegreeOverflowError
from ringlab.poly import (Polynomial, constant_annihilator, content,
                          poly_annihilator)


@pytest.fixture(scope="module")
def ex22():
    return constructors.make_ex22(2)


@pytest.fixture(scope="module")
def t2():
    return constructors.make_upper_triangular(constructors.make_zn(2), 2)


def test_make_trims_and_checks(ex22):
    f = Polynomial.make(ex22, [1, 2, 0, 0])
    assert f.coeffs == (1, 2) and f.degree == 1
    assert Polynomial.make(ex22, [0, 0]).is_zero()
    assert Polynomial.zero(ex22).degree == -1
    assert f.coefficient(0) == 1 and f.coefficient(5) == 0
    with pytest.raises(ContractError):
        Polynomial.make(ex22, [64])


def test_str(ex22):
    x = constructors.basis_element(ex22, "x")
    y = constructors.basis_element(ex22, "y")
    f = Polynomial.make(ex22, [x, 0, y])
    assert str(f) == "(x) + (y)*X^2"
    assert str(Polynomial.zero(ex22)) == "0"


def polys(ring, max_deg=2):
    return st.lists(st.integers(0, ring.size - 1), min_size=0,
                    max_size=max_deg + 1).map(lambda cs: Polynomial.make(ring, cs))


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_poly_mul_associative_distributive(t2, data):
    f = data.draw(polys(t2))
    g = data.draw(polys(t2))
    h = data.draw(polys(t2))
    cap = 12
    assert poly_mul(poly_mul(f, g, cap), h, cap) == poly_mul(f, poly_mul(g, h, cap), cap)
    # (f+g)*h = f*h + g*h, adding coefficient-wise
    n = max(f.degree, g.degree) + 1
    s = Polynomial.make(t2, [t2.add(f.coefficient(i), g.coefficient(i))
                             for i in range(max(n, 0))])
    lhs = poly_mul(s, h, cap)
    fh, gh = poly_mul(f, h, cap), poly_mul(g, h, cap)
    m = max(fh.degree, gh.degree) + 1
    rhs = Polynomial.make(t2, [t2.add(fh.coefficient(i), gh.coefficient(i))
                               for i in range(max(m, 0))])
    assert lhs == rhs


def test_degree_cap(t2):
    f = Polynomial.make(t2, [0, 0, 1])
    g = Polynomial.make(t2, [0, 0, 0, 1])
    with pytest.raises(DegreeOverflowError):
        poly_mul(f, g)
    assert poly_mul(f, g, cap=None).degree == 5
    with pytest.raises(ContractError):
        poly_mul(f, Polynomial.make(constructors.make_zn(2), [1]), cap=None)


def test_content(ex22):
    f = Polynomial.make(ex22, [1, 5])
    g = Polynomial.make(ex22, [5, 0, 9])
    assert set(content([f, g]).members()) == {0, 1, 5, 9}
    with pytest.raises(ContractError):
        content([])
    assert content([], ring=ex22).is_zero_only()


def brute_annihilator(ring, f, side, d):
    """Direct search over every polynomial of degree <= d."""
    import itertools
    for cs in itertools.product(range(ring.size), repeat=d + 1):
        g = Polynomial.make(ring, cs)
        if g.is_zero():
            continue
        prod = poly_mul(f, g, cap=None) if side == "right" else poly_mul(g, f, cap=None)
        if prod.is_zero():
            return g
    return None


@pytest.mark.parametrize("side", ["left", "right"])
def test_annihilator_kernel_agrees_with_brute(ex22, side):
    # small coefficient sample; exhaustive d=1 partner search underneath
    for coeffs in ([1], [2], [0, 1], [5, 2], [1, 1], [3, 0, 7]):
        f = Polynomial.make(ex22, coeffs)
        res = poly_annihilator(f, side, 1, cap=None)
        brute = brute_annihilator(ex22, f, side, 1)
        assert res.nonzero_exists == (brute is not None)
        if res.witness is not None:
            prod = (poly_mul(f, res.witness, cap=None) if side == "right"
                    else poly_mul(res.witness, f, cap=None))
            assert prod.is_zero()


@pytest.mark.parametrize("side", ["left", "right"])
def test_annihilator_enumeration_path(t2, side):
    # T2(Z2) is a table ring, so this exercises the DFS path
    for coeffs in ([1], [2], [3, 4], [0, 2], [5, 1, 6]):
        f = Polynomial.make(t2, coeffs)
        res = poly_annihilator(f, side, 1, cap=None)
        assert res.via == "enumeration"
        brute = brute_annihilator(t2, f, side, 1)
        assert res.nonzero_exists == (brute is not None)
        if res.witness is not None:
            prod = (poly_mul(f, res.witness, cap=None) if side == "right"
                    else poly_mul(res.witness, f, cap=None))
            assert prod.is_zero()


def test_annihilator_of_zero_and_guards(ex22):
    res = poly_annihilator(Polynomial.zero(ex22), "right", 2)
    assert res.kind == "all"
    with pytest.raises(ContractError):
        poly_annihilator(Polynomial.make(ex22, [1]), "up", 1)
    with pytest.raises(ContractError):
        poly_annihilator(Polynomial.make(ex22, [1]), "right", -1)
    with pytest.raises(DegreeOverflowError):
        poly_annihilator(Polynomial.make(ex22, [0, 0, 0, 1]), "right", 3)


def test_constant_annihilator(ex22):
    x = constructors.basis_element(ex22, "x")
    y = constructors.basis_element(ex22, "y")
    x2 = constructors.basis_element(ex22, "x2")
    yx = constructors.basis_element(ex22, "yx")
    f = Polynomial.make(ex22, [x, y])
    got = set(constant_annihilator([f], "right").members())
    brute = {c for c in range(64)
             if ex22.mul(x, c) == 0 and ex22.mul(y, c) == 0}
    assert got == brute
    assert {0, x2, yx} <= got
    with pytest.raises(ContractError):
        constant_annihilator([], "right")
