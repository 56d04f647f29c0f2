from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from minfact.poly import (
    Monomial,
    Polynomial,
    cayley_rhs,
    final_chain_rhs,
    hook_rhs,
    product,
    theorem1_rhs,
)

X = Polynomial.var


@st.composite
def polys(draw, nvars=3):
    terms = {}
    for _ in range(draw(st.integers(0, 5))):
        exps = {v: draw(st.integers(0, 2)) for v in range(nvars)}
        terms[Monomial(exps)] = draw(st.integers(-20, 20))
    return Polynomial(terms)


points = st.lists(st.integers(-5, 5), min_size=3, max_size=3)


@given(polys(), polys(), points)
def test_ring_ops_are_evaluation_homomorphisms(p, q, pt):
    assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)
    assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
    assert (p - q).evaluate(pt) == p.evaluate(pt) - q.evaluate(pt)


@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert p * (q + r) == p * q + p * r
    assert (p * q) * r == p * (q * r)
    assert p * q == q * p
    assert (p - p).is_zero()
    assert 1 * p == p


@given(polys())
def test_json_round_trip(p):
    assert Polynomial.from_json(p.to_json()) == p


def test_product_example():
    assert (X(1) + 3) * (X(2, 2) + 2) == Polynomial(
        {Monomial({1: 1, 2: 1}): 2, Monomial({1: 1}): 2, Monomial({2: 1}): 6, Monomial(): 6}
    )
    assert str((X(1) + 3) * (X(2, 2) + 2)) == "2*X1*X2 + 2*X1 + 6*X2 + 6"


def test_rendering():
    assert str(X(1) + 2) == "X1 + 2"
    assert str(Polynomial()) == "0"
    assert str(X(1) * X(1) - 1) == "X1^2 - 1"
    assert str(-X(2) + X(1)) == "X1 - X2"


def test_json_form_is_ascending_with_string_coefficients():
    p = (X(1) + 3) * (X(2, 2) + 2)
    js = p.to_json()
    assert js[0] == {"coeff": "6", "vars": {}}
    assert js[-1] == {"coeff": "2", "vars": {"1": 1, "2": 1}}


def test_big_coefficients_stay_exact():
    p = (X(1) * 10**30 + 1) ** 3
    assert p.coefficient(Monomial({1: 3})) == 10**90


def test_exact_div():
    assert (X(1, 4) + 6).exact_div(2) == X(1, 2) + 3
    with pytest.raises(ArithmeticError):
        (X(1) + 2).exact_div(2)


def test_substitute_and_specialize():
    p = X(0) * X(1) + X(1)
    assert p.substitute({0: 5, 1: 7}) == X(5) * X(7) + X(7)
    assert p.specialize({1: 0}).is_zero()
    assert p.specialize({0: 2}) == X(1, 3)


def test_theorem1_rhs_examples():
    assert theorem1_rhs((5,)) == 1
    assert theorem1_rhs((2, 2)) == X(1) + 2
    assert theorem1_rhs((3, 2)) == X(1, 2) + 2
    assert theorem1_rhs((2, 2, 2)) == (X(1) + 3) * (X(2, 2) + 2)
    for n in range(2, 9):
        assert theorem1_rhs((2,) * (n - 1)) == cayley_rhs(n)
    with pytest.raises(ValueError):
        theorem1_rhs((1, 2))


@pytest.mark.parametrize("parts", [(2,), (2, 2), (3, 2, 4), (2, 2, 2, 2), (4, 3), (2, 5, 2)])
def test_theorem1_rhs_specializations(parts):
    n = sum(a - 1 for a in parts) + 1
    r = len(parts)
    rhs = theorem1_rhs(parts)
    assert rhs.evaluate(1) == n ** (r - 1)
    b = 0
    expect = 1
    for a in parts[:-1]:
        b += a - 1
        expect *= n - b
    assert rhs.evaluate(0) == expect


def test_transposition_type_at_zero_is_factorial():
    for n in range(2, 9):
        assert theorem1_rhs((2,) * (n - 1)).evaluate(0) == factorial(n - 1)


def test_hook_rhs():
    assert hook_rhs(1) == 1
    assert hook_rhs(4) == (X(1) + 4) * (X(2, 2) + 3) * (X(3, 3) + 2)
    for n in range(1, 9):
        assert hook_rhs(n).evaluate(1) == (n + 1) ** (n - 1)


@pytest.mark.parametrize("n", range(2, 10))
def test_final_chain_rhs(n):
    assert final_chain_rhs(n, n) == cayley_rhs(n)
    for k in range(2, n + 1):
        assert final_chain_rhs(n, k).evaluate(1) == n ** (k - 2) * comb(n, k)


def test_final_chain_rhs_small_and_errors():
    assert final_chain_rhs(3, 2) == X(1) + 2
    with pytest.raises(ValueError):
        final_chain_rhs(3, 1)


def test_product_empty_is_one():
    assert product([]) == 1
