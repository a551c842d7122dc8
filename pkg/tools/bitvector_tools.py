"""Bit-Vector Tools - symbolic fractional bit-vectors and the abstract gates"""
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Mapping, Sequence, Tuple

from errors import WidthError
from tools.expr_tools import FALSE, TRUE, BoolExpr, and_, const, evaluate, majority, xor

ConcreteBits = Tuple[int, ...]


@dataclass(frozen=True)
class SymbolicBitVector:
    """
    Width-m fractional bit-vector <.x1 x2 ... xm>.

    bits[0] is position 1, the most significant fractional bit (weight 1/2).
    The value is a rotation as a fraction of 2*pi.
    """
    bits: Tuple[BoolExpr, ...]

    def __post_init__(self):
        if not isinstance(self.bits, tuple):
            object.__setattr__(self, "bits", tuple(self.bits))
        if not self.bits:
            raise WidthError("bit-vector width must be >= 1")

    @property
    def width(self) -> int:
        return len(self.bits)

    def bit(self, position: int) -> BoolExpr:
        """Bit at 1-based position (1 = weight 2^-1)."""
        return self.bits[position - 1]

    def __str__(self) -> str:
        return "<." + " ".join(repr(b) for b in self.bits) + ">"


def zeros(m: int) -> SymbolicBitVector:
    return SymbolicBitVector((FALSE,) * m)


def from_bits(values: Sequence[int]) -> SymbolicBitVector:
    """Constant vector from 0/1 values, most significant first."""
    return SymbolicBitVector(tuple(const(v) for v in values))


def onehot(n: int, m: int, condition: BoolExpr = TRUE) -> SymbolicBitVector:
    """<.0..0 c 0..0> with `condition` at position n (weight 2^-n)."""
    if not 1 <= n <= m:
        raise WidthError(f"rotation order {n} not representable in width {m}")
    bits = [FALSE] * m
    bits[n - 1] = condition
    return SymbolicBitVector(tuple(bits))


def abstract_h(qc: BoolExpr, m: int) -> SymbolicBitVector:
    """
    Abstract Hadamard: a Boolean input qc becomes <.qc 0 ... 0>.

    Args:
        qc: Control-typed value (a variable or a constant)
        m: Width

    Returns:
        Width-m data value
    """
    if m < 1:
        raise WidthError("bit-vector width must be >= 1")
    return SymbolicBitVector((qc,) + (FALSE,) * (m - 1))


def add_onehot_inplace(bits: List[BoolExpr], n: int, condition: BoolExpr) -> None:
    """
    bits +_m (condition at position n), in place.

    Ripple-carry restricted to the positions that can change: nothing below
    n moves, and the carry stops as soon as it is the constant 0.
    """
    carry = condition
    position = n - 1
    while position >= 0 and carry is not FALSE:
        current = bits[position]
        bits[position] = xor(current, carry)
        carry = and_(current, carry)
        position -= 1


def abstract_rn(qc: BoolExpr, qd: SymbolicBitVector, n: int, m: int) -> SymbolicBitVector:
    """
    Abstract controlled R_n: qd +_m <.0..0 1 0..0> when qc holds, else qd.

    The control is ANDed into the one-hot addend, which keeps the gate total
    over symbolic controls.

    Raises:
        WidthError: n outside 1..m or qd of another width
    """
    if not 1 <= n <= m:
        raise WidthError(f"rotation order {n} not representable in width {m}")
    if qd.width != m:
        raise WidthError(f"data input has width {qd.width}, expected {m}")
    bits = list(qd.bits)
    add_onehot_inplace(bits, n, qc)
    return SymbolicBitVector(tuple(bits))


def symbolic_add_mod(a: SymbolicBitVector, b: SymbolicBitVector) -> SymbolicBitVector:
    """
    Fixed-point addition modulo 1.

    Ripple-carry from the least significant bit (position m) toward
    position 1; the carry out of position 1 is discarded.
    """
    if a.width != b.width:
        raise WidthError(f"width mismatch: {a.width} vs {b.width}")
    width = a.width
    out = [FALSE] * width
    carry = FALSE
    for index in range(width - 1, -1, -1):
        x, y = a.bits[index], b.bits[index]
        out[index] = xor(xor(x, y), carry)
        carry = majority(x, y, carry)
    return SymbolicBitVector(tuple(out))


def eval_bits(vector: SymbolicBitVector, assignment: Mapping[int, int]) -> ConcreteBits:
    """
    Concrete bits of a vector under an assignment of b1..bm.

    Raises:
        UnassignedVariableError: a variable used by the vector is missing
    """
    return tuple(evaluate(bit, assignment) for bit in vector.bits)


def bits_value(bits: Sequence[int]) -> Fraction:
    """Sum of bit_p * 2^-p, a rotation fraction in [0, 1)."""
    width = len(bits)
    numerator = 0
    for b in bits:
        numerator = (numerator << 1) | (1 if b else 0)
    return Fraction(numerator, 1 << width)


def bits_text(bits: Sequence[int]) -> str:
    return "".join("1" if b else "0" for b in bits)
