"""Tests for hash-consed expressions and their algebraic normal form"""
import itertools
import random

import pytest

from errors import AnfOverflow, UnassignedVariableError
from tools.anf_tools import ANFPoly, anf_normalize
from tools.expr_tools import (
    FALSE,
    TRUE,
    and_,
    evaluate,
    majority,
    not_,
    or_,
    var,
    variables,
    xor,
)


def test_hash_consing_gives_identical_nodes():
    assert xor(var(1), var(2)) is xor(var(2), var(1))
    assert and_(var(1), var(3)) is and_(var(3), var(1))


def test_smart_constructors_simplify():
    b1 = var(1)
    assert xor(b1, FALSE) is b1
    assert xor(b1, b1) is FALSE
    assert and_(b1, TRUE) is b1
    assert and_(b1, FALSE) is FALSE
    assert and_(b1, b1) is b1


def test_var_rejects_zero():
    with pytest.raises(ValueError):
        var(0)


def test_evaluate_and_missing_variable():
    expr = or_(var(1), and_(var(2), var(3)))
    assert evaluate(expr, {1: 0, 2: 1, 3: 1}) == 1
    assert evaluate(expr, {1: 0, 2: 1, 3: 0}) == 0
    with pytest.raises(UnassignedVariableError, match="b3"):
        evaluate(and_(var(2), var(3)), {2: 1})


def test_variables():
    assert variables(majority(var(1), var(4), var(2))) == {1, 2, 4}


@pytest.mark.parametrize("expr,text", [
    (FALSE, "0"),
    (TRUE, "1"),
    (var(2), "b2"),
    (not_(var(1)), "1 ^ b1"),
    (or_(var(1), var(2)), "b1 ^ b2 ^ b1b2"),
])
def test_anf_text(expr, text):
    assert str(anf_normalize(expr)) == text


def test_anf_is_canonical():
    a, b, c = var(1), var(2), var(3)
    left = majority(a, b, c)
    right = xor(xor(and_(a, b), and_(a, c)), and_(b, c))
    assert left is not right
    assert anf_normalize(left) == anf_normalize(right)


def test_anf_agrees_with_truth_table():
    a, b, c = var(1), var(2), var(3)
    expr = xor(or_(a, not_(b)), and_(majority(a, b, c), c))
    poly = anf_normalize(expr)
    for bits in itertools.product([0, 1], repeat=3):
        assignment = dict(zip((1, 2, 3), bits))
        assert poly.evaluate(assignment) == evaluate(expr, assignment)


def test_xor_cancels_to_zero():
    expr = xor(or_(var(1), var(2)), xor(xor(var(1), var(2)), and_(var(1), var(2))))
    assert anf_normalize(expr).is_zero


def test_budget_overflow():
    expr = TRUE
    for i in range(1, 6):
        expr = and_(expr, xor(var(i), TRUE))
    assert len(anf_normalize(expr, budget=64)) == 32
    with pytest.raises(AnfOverflow, match="budget of 8"):
        anf_normalize(expr, budget=8)


def test_poly_helpers():
    poly = ANFPoly.variable(2) ^ ANFPoly.one()
    assert poly.has_constant
    assert poly.variables() == {2}
    assert (poly & ANFPoly.variable(1)).sorted_monomials() == [(1,), (1, 2)]
    assert ANFPoly.zero().is_zero


def _random_expr(rng, n, depth):
    if depth == 0 or rng.random() < 0.2:
        return var(rng.randint(1, n)) if rng.random() < 0.9 else rng.choice([FALSE, TRUE])
    if rng.random() < 0.15:
        return not_(_random_expr(rng, n, depth - 1))
    op = rng.choice([xor, and_, or_])
    return op(_random_expr(rng, n, depth - 1), _random_expr(rng, n, depth - 1))


def _rewrite(rng, expr, n):
    """An equivalent expression built along a different path."""
    mask = _random_expr(rng, n, 2)
    choice = rng.randrange(3)
    if choice == 0:
        return xor(xor(expr, mask), mask)
    if choice == 1:
        return xor(or_(expr, mask), and_(not_(expr), mask))
    return xor(and_(expr, mask), and_(expr, not_(mask)))


def _truth_table(expr, n):
    return tuple(
        evaluate(expr, dict(zip(range(1, n + 1), bits)))
        for bits in itertools.product([0, 1], repeat=n)
    )


@pytest.mark.parametrize("n", [1, 3, 5, 8, 10])
def test_anf_equal_iff_truth_tables_equal(n):
    rng = random.Random(1000 + n)
    for _ in range(40):
        left = _random_expr(rng, n, 4)
        right = _rewrite(rng, left, n) if rng.random() < 0.5 else _random_expr(rng, n, 4)
        same_function = _truth_table(left, n) == _truth_table(right, n)
        assert (anf_normalize(left) == anf_normalize(right)) == same_function
