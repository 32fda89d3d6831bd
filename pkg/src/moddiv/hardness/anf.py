"""Inversion instances as polynomial systems over GF(2).

A polynomial is a frozenset of monomials; a monomial is an int bitmask of
variable indices (``0`` is the constant 1). Addition is symmetric
difference.

Export evaluates the multiplier circuit bit-parallel over all ``2**m``
inputs (one truth table per wire) and converts each observed output's
truth table to algebraic normal form with the binary Moebius transform.
ANF is unique, so this is the same system gate-by-gate symbolic expansion
would produce, without the intermediate blow-up.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..arith import FormatError, ParamError
from .circuit import build_circuit
from .instance import InversionInstance

DEFAULT_MAX_M = 16

Poly = frozenset


def poly_add(f: Poly, g: Poly) -> Poly:
    return f ^ g


def poly_mul(f: Poly, g: Poly) -> Poly:
    out = set()
    for s in f:
        for t in g:
            out ^= {s | t}
    return frozenset(out)


def degree(f: Poly) -> int:
    return max((mono.bit_count() for mono in f), default=-1)


def evaluate(f: Poly, x: int) -> int:
    return sum(1 for mono in f if mono & x == mono) & 1


def variable_tables(m: int) -> list[int]:
    """Truth table of each ``x_i`` over inputs ``0..2**m-1`` (bit k = input k)."""
    size = 1 << m
    tables = []
    for i in range(m):
        half = 1 << i
        t = ((1 << half) - 1) << half
        span = 2 * half
        while span < size:
            t |= t << span
            span *= 2
        tables.append(t)
    return tables


def moebius(table: int, m: int) -> int:
    """Truth table to ANF coefficients (bit k set iff monomial k present).
    The transform is its own inverse."""
    full = (1 << (1 << m)) - 1
    for i, t in enumerate(variable_tables(m)):
        table ^= (table & (full ^ t)) << (1 << i)
    return table


def table_to_poly(table: int, m: int) -> Poly:
    coeffs = moebius(table, m)
    monos = []
    while coeffs:
        low = coeffs & -coeffs
        monos.append(low.bit_length() - 1)
        coeffs ^= low
    return frozenset(monos)


def poly_table(f: Poly, m: int) -> int:
    """Truth table of ``f`` by summing monomial products directly."""
    tables = variable_tables(m)
    full = (1 << (1 << m)) - 1
    out = 0
    for mono in f:
        t = full
        i = 0
        while mono >> i:
            if (mono >> i) & 1:
                t &= tables[i]
            i += 1
        out ^= t
    return out


@dataclass(frozen=True)
class AnfSystem:
    """Polynomials in ``x_0..x_{nvars-1}``, each implicitly equal to 0."""

    nvars: int
    polys: tuple[Poly, ...]

    @property
    def max_degree(self) -> int:
        return max((degree(f) for f in self.polys), default=-1)

    def vanishes_at(self, x: int) -> bool:
        return all(evaluate(f, x) == 0 for f in self.polys)

    def common_zeros(self) -> list[int]:
        """All points of GF(2)^nvars (as ints) where every polynomial is 0."""
        nonzero = 0
        for f in self.polys:
            nonzero |= poly_table(f, self.nvars)
        full = (1 << (1 << self.nvars)) - 1
        zeros = full ^ nonzero
        return [k for k in range(1 << self.nvars) if (zeros >> k) & 1]

    def to_text(self) -> str:
        return "\n".join([f"vars {self.nvars}"] + [format_poly(f) for f in self.polys]) + "\n"


def export_anf(inst: InversionInstance, max_m: int = DEFAULT_MAX_M) -> AnfSystem:
    """One polynomial ``y_j(x) + u_j`` per observed bit ``j`` in ``[q, p)``,
    followed by ``x_{m-1} + 1`` for the forced top bit of ``x``."""
    if inst.m > max_m:
        raise ParamError(
            f"ANF expansion limited to m <= {max_m} (got m={inst.m}); export CNF instead"
        )
    m = inst.m
    circuit = build_circuit(inst.a, m, inst.n + m)
    values = circuit.evaluate_tables(variable_tables(m))
    full = (1 << (1 << m)) - 1
    polys = []
    for j, bit in inst.observed_bits().items():
        wire = circuit.outputs[j]
        table = 0 if wire is None else values[wire]
        polys.append(table_to_poly(table ^ (full if bit else 0), m))
    polys.append(frozenset({1 << (m - 1), 0}))
    return AnfSystem(m, tuple(polys))


def _mono_key(mono):
    idx = [i for i in range(mono.bit_length()) if (mono >> i) & 1]
    return (-len(idx), idx)


def format_poly(f: Poly) -> str:
    if not f:
        return "0"
    terms = []
    for mono in sorted(f, key=_mono_key):
        if mono == 0:
            terms.append("1")
        else:
            terms.append("*".join(f"x{i}" for i in range(mono.bit_length()) if (mono >> i) & 1))
    return " + ".join(terms)


_VAR = re.compile(r"x(\d+)")


def parse_poly(text: str, nvars: int) -> Poly:
    text = text.strip()
    if text == "0":
        return frozenset()
    out = set()
    for term in text.split("+"):
        term = term.strip()
        if term == "1":
            mono = 0
        else:
            mono = 0
            for factor in term.split("*"):
                match = _VAR.fullmatch(factor.strip())
                if not match:
                    raise FormatError(f"bad monomial factor {factor!r}")
                i = int(match.group(1))
                if i >= nvars:
                    raise FormatError(f"variable x{i} out of range for {nvars} vars")
                mono |= 1 << i
        out ^= {mono}
    return frozenset(out)


def parse_anf(text: str) -> AnfSystem:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty ANF file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "vars" or not head[1].isdigit():
        raise FormatError(f"expected 'vars <m>' header, got {lines[0]!r}")
    nvars = int(head[1])
    return AnfSystem(nvars, tuple(parse_poly(ln, nvars) for ln in lines[1:]))
