"""Boolean Expression Tools - hash-consed XOR/AND DAG over b1..bm"""
import itertools
import threading
import weakref
from typing import Dict, Iterable, Mapping, Set

from errors import UnassignedVariableError

CONST, VAR, XOR, AND = "const", "var", "xor", "and"


class BoolExpr:
    """
    Node of a hash-consed expression DAG.

    Nodes are unique per structure, so identity is structural equality.
    Build them only through the constructors below.
    """
    __slots__ = ("op", "args", "value", "uid", "_anf", "__weakref__")

    def __init__(self, op: str, args: tuple, value: int, uid: int):
        self.op = op
        self.args = args
        self.value = value
        self.uid = uid
        self._anf = None

    @property
    def is_const(self) -> bool:
        return self.op == CONST

    @property
    def is_var(self) -> bool:
        return self.op == VAR

    def __repr__(self) -> str:
        if self.op == CONST:
            return str(self.value)
        if self.op == VAR:
            return f"b{self.value}"
        joiner = " ^ " if self.op == XOR else " & "
        return "(" + joiner.join(repr(a) for a in self.args) + ")"


class _UniqueTable:
    """Thread-safe interning table; entries vanish with their last user."""

    def __init__(self):
        self._nodes: "weakref.WeakValueDictionary[tuple, BoolExpr]" = weakref.WeakValueDictionary()
        self._lock = threading.Lock()
        self._uids = itertools.count()

    def intern(self, op: str, args: tuple, value: int = 0) -> BoolExpr:
        key = (op, value) + args
        with self._lock:
            node = self._nodes.get(key)
            if node is None:
                node = BoolExpr(op, args, value, next(self._uids))
                self._nodes[key] = node
            return node

    def __len__(self) -> int:
        return len(self._nodes)


_TABLE = _UniqueTable()

FALSE = _TABLE.intern(CONST, (), 0)
TRUE = _TABLE.intern(CONST, (), 1)


def const(bit: int) -> BoolExpr:
    return TRUE if bit else FALSE


def var(index: int) -> BoolExpr:
    if index < 1:
        raise ValueError(f"variable index must be >= 1, got {index}")
    return _TABLE.intern(VAR, (), index)


def xor(a: BoolExpr, b: BoolExpr) -> BoolExpr:
    if a is FALSE:
        return b
    if b is FALSE:
        return a
    if a is b:
        return FALSE
    if a.uid > b.uid:
        a, b = b, a
    return _TABLE.intern(XOR, (a, b))


def and_(a: BoolExpr, b: BoolExpr) -> BoolExpr:
    if a is FALSE or b is FALSE:
        return FALSE
    if a is TRUE:
        return b
    if b is TRUE or a is b:
        return a
    if a.uid > b.uid:
        a, b = b, a
    return _TABLE.intern(AND, (a, b))


def not_(a: BoolExpr) -> BoolExpr:
    return xor(TRUE, a)


def or_(a: BoolExpr, b: BoolExpr) -> BoolExpr:
    return xor(xor(a, b), and_(a, b))


def majority(a: BoolExpr, b: BoolExpr, c: BoolExpr) -> BoolExpr:
    """Full-adder carry: (a & b) ^ (c & (a ^ b))."""
    return xor(and_(a, b), and_(c, xor(a, b)))


def postorder(root: BoolExpr) -> Iterable[BoolExpr]:
    """Children before parents, each shared node once."""
    seen: Set[int] = set()
    order = []
    stack = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            order.append(node)
            continue
        if node.uid in seen:
            continue
        seen.add(node.uid)
        stack.append((node, True))
        for child in node.args:
            if child.uid not in seen:
                stack.append((child, False))
    return order


def evaluate(expr: BoolExpr, assignment: Mapping[int, int]) -> int:
    """
    Evaluate under an assignment of variable index -> 0/1.

    Raises:
        UnassignedVariableError: a variable of expr is missing
    """
    values: Dict[int, int] = {}
    for node in postorder(expr):
        if node.op == CONST:
            result = node.value
        elif node.op == VAR:
            if node.value not in assignment:
                raise UnassignedVariableError(node.value)
            result = 1 if assignment[node.value] else 0
        elif node.op == XOR:
            result = values[node.args[0].uid] ^ values[node.args[1].uid]
        else:
            result = values[node.args[0].uid] & values[node.args[1].uid]
        values[node.uid] = result
    return values[expr.uid]


def variables(expr: BoolExpr) -> Set[int]:
    return {node.value for node in postorder(expr) if node.op == VAR}
