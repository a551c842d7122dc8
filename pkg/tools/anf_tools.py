"""ANF Tools - algebraic normal form (XOR of AND-monomials) as a decision procedure"""
from dataclasses import dataclass
from typing import FrozenSet, List, Mapping, Optional, Set, Tuple

from config import Config
from errors import AnfOverflow, UnassignedVariableError
from tools.expr_tools import CONST, VAR, XOR, BoolExpr, postorder

Monomial = FrozenSet[int]


@dataclass(frozen=True)
class ANFPoly:
    """
    Set of monomials; the empty monomial is the constant 1 and the empty
    set is the constant 0. Two Boolean functions are equal iff their
    polynomials are equal.
    """
    monomials: FrozenSet[Monomial]

    @classmethod
    def zero(cls) -> "ANFPoly":
        return _ZERO

    @classmethod
    def one(cls) -> "ANFPoly":
        return _ONE

    @classmethod
    def variable(cls, index: int) -> "ANFPoly":
        return cls(frozenset([frozenset([index])]))

    @property
    def is_zero(self) -> bool:
        return not self.monomials

    @property
    def has_constant(self) -> bool:
        return frozenset() in self.monomials

    def __len__(self) -> int:
        return len(self.monomials)

    def __xor__(self, other: "ANFPoly") -> "ANFPoly":
        return ANFPoly(self.monomials ^ other.monomials)

    def multiply(self, other: "ANFPoly", budget: Optional[int] = None) -> "ANFPoly":
        """AND of two polynomials with pairwise XOR cancellation."""
        if self.is_zero or other.is_zero:
            return _ZERO
        if self == _ONE:
            return other
        if other == _ONE:
            return self
        result: Set[Monomial] = set()
        for left in self.monomials:
            for right in other.monomials:
                term = left | right
                if term in result:
                    result.remove(term)
                else:
                    result.add(term)
                    if budget is not None and len(result) > budget:
                        raise AnfOverflow(budget)
        return ANFPoly(frozenset(result))

    def __and__(self, other: "ANFPoly") -> "ANFPoly":
        return self.multiply(other)

    def sorted_monomials(self) -> List[Tuple[int, ...]]:
        """Canonical order: by degree, then lexicographically."""
        return sorted((tuple(sorted(m)) for m in self.monomials),
                      key=lambda t: (len(t), t))

    def variables(self) -> Set[int]:
        found: Set[int] = set()
        for m in self.monomials:
            found |= m
        return found

    def evaluate(self, assignment: Mapping[int, int]) -> int:
        total = 0
        for monomial in self.monomials:
            term = 1
            for v in monomial:
                if v not in assignment:
                    raise UnassignedVariableError(v)
                if not assignment[v]:
                    term = 0
                    break
            total ^= term
        return total

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return " ^ ".join(
            "".join(f"b{v}" for v in m) if m else "1"
            for m in self.sorted_monomials()
        )


_ZERO = ANFPoly(frozenset())
_ONE = ANFPoly(frozenset([frozenset()]))


def anf_normalize(expr: BoolExpr, budget: Optional[int] = None) -> ANFPoly:
    """
    Unique Zhegalkin polynomial of an expression.

    Results are memoized on the DAG nodes, so shared subexpressions are
    normalized once. Concurrent calls are safe: racing writers store
    identical polynomials.

    Args:
        expr: Expression DAG root
        budget: Maximum monomials per intermediate polynomial
            (defaults to Config.ANF_TERM_BUDGET)

    Returns:
        The canonical ANFPoly

    Raises:
        AnfOverflow: a polynomial exceeded the budget
    """
    budget = Config.ANF_TERM_BUDGET if budget is None else budget
    if expr._anf is not None:
        if len(expr._anf) > budget:
            raise AnfOverflow(budget)
        return expr._anf

    for node in postorder(expr):
        if node._anf is not None:
            poly = node._anf
        elif node.op == CONST:
            poly = _ONE if node.value else _ZERO
        elif node.op == VAR:
            poly = ANFPoly.variable(node.value)
        elif node.op == XOR:
            poly = node.args[0]._anf ^ node.args[1]._anf
        else:
            poly = node.args[0]._anf.multiply(node.args[1]._anf, budget)
        if len(poly) > budget:
            raise AnfOverflow(budget)
        node._anf = poly
    return expr._anf
