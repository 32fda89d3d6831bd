"""Schoolbook multiplier by a constant, as an AND/XOR gate list.

Wires ``0..m-1`` are the input bits ``x_0..x_{m-1}``; every gate adds one
wire. Since the multiplier ``a`` is public, each partial-product row is
just ``x`` shifted by a set bit position of ``a``. Rows are summed with
ripple-carry adders; a missing bit (constant 0) is ``None`` and simplifies
the adder away.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..arith import ParamError

AND = "and"
XOR = "xor"


@dataclass(frozen=True)
class Gate:
    op: str
    lhs: int
    rhs: int
    out: int


@dataclass
class MultiplierCircuit:
    a: int
    m: int
    num_wires: int
    gates: list[Gate]
    outputs: list[int | None]  # y_0..y_{width-1}; None is constant 0

    def evaluate(self, x: int) -> list[int]:
        """Concrete value (0/1) of every wire for input ``x``."""
        values = [(x >> i) & 1 for i in range(self.m)] + [0] * (self.num_wires - self.m)
        for g in self.gates:
            if g.op == AND:
                values[g.out] = values[g.lhs] & values[g.rhs]
            else:
                values[g.out] = values[g.lhs] ^ values[g.rhs]
        return values

    def output_bits(self, values: list[int]) -> list[int]:
        return [0 if w is None else values[w] for w in self.outputs]

    def product(self, x: int) -> int:
        bits = self.output_bits(self.evaluate(x))
        return sum(b << j for j, b in enumerate(bits))

    def evaluate_tables(self, tables: list[int]) -> list[int]:
        """Bit-parallel evaluation: ``tables[i]`` packs the values of ``x_i``
        over many inputs, one input per bit position."""
        values = list(tables) + [0] * (self.num_wires - self.m)
        for g in self.gates:
            if g.op == AND:
                values[g.out] = values[g.lhs] & values[g.rhs]
            else:
                values[g.out] = values[g.lhs] ^ values[g.rhs]
        return values


class _Builder:
    def __init__(self, m):
        self.num_wires = m
        self.gates = []

    def gate(self, op, lhs, rhs):
        out = self.num_wires
        self.num_wires += 1
        self.gates.append(Gate(op, lhs, rhs, out))
        return out

    def add_bits(self, bits, want_carry):
        """Sum of up to three wires: returns (sum, carry)."""
        bits = [b for b in bits if b is not None]
        if not bits:
            return None, None
        if len(bits) == 1:
            return bits[0], None
        if len(bits) == 2:
            a, b = bits
            s = self.gate(XOR, a, b)
            return s, (self.gate(AND, a, b) if want_carry else None)
        a, b, c = bits
        t = self.gate(XOR, a, b)
        s = self.gate(XOR, t, c)
        if not want_carry:
            return s, None
        # The two carry terms are never both 1, so XOR stands in for OR.
        carry = self.gate(XOR, self.gate(AND, a, b), self.gate(AND, t, c))
        return s, carry


def build_circuit(a: int, m: int, width: int | None = None) -> MultiplierCircuit:
    """Circuit computing ``a * x`` for ``m``-bit ``x``, with ``width`` output
    bits (default ``a.bit_length() + m``, which always holds the product)."""
    if a < 1:
        raise ParamError("multiplier a must be >= 1")
    if m < 1:
        raise ParamError("input width m must be >= 1")
    if width is None:
        width = a.bit_length() + m
    if width < a.bit_length() + m:
        raise ParamError("output width too small for the product")

    b = _Builder(m)
    shifts = [j for j in range(a.bit_length()) if (a >> j) & 1]
    rows = []
    for j in shifts:
        row = [None] * width
        for i in range(m):
            row[i + j] = i
        rows.append(row)

    acc = rows[0]
    for row in rows[1:]:
        carry = None
        summed = []
        for col in range(width):
            s, carry = b.add_bits((acc[col], row[col], carry), want_carry=col < width - 1)
            summed.append(s)
        acc = summed
    return MultiplierCircuit(a, m, b.num_wires, b.gates, acc)
