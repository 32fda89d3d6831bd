"""Tseitin encoding of an inversion instance as DIMACS CNF.

Circuit wire ``w`` becomes variable ``w+1``, so ``x_i`` is variable ``i+1``.
An observed output bit that is constant 0 in the circuit is tied to an
extra variable pinned false. Comment lines carry the instance so a parsed
file can be checked against concrete assignments again.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property

from ..arith import FormatError
from .circuit import AND, MultiplierCircuit, build_circuit
from .instance import InversionInstance


@dataclass(frozen=True)
class CnfInstance:
    num_vars: int
    clauses: tuple[tuple[int, ...], ...]
    x_vars: tuple[int, ...]
    instance: InversionInstance | None = None
    zero_var: int | None = None

    @cached_property
    def circuit(self) -> MultiplierCircuit:
        if self.instance is None:
            raise FormatError("CNF carries no instance metadata; cannot rebuild its circuit")
        return build_circuit(self.instance.a, self.instance.m, self.instance.n + self.instance.m)

    def to_dimacs(self) -> str:
        lines = ["c moddiv window-inversion instance"]
        if self.instance is not None:
            i = self.instance
            lines.append(f"c a={i.a}")
            lines.append(f"c n={i.n} m={i.m} p={i.p} q={i.q} u={i.u}")
        lines.append("c x-vars=" + ",".join(map(str, self.x_vars)))
        if self.zero_var is not None:
            lines.append(f"c zero-var={self.zero_var}")
        lines.append(f"p cnf {self.num_vars} {len(self.clauses)}")
        lines.extend(" ".join(map(str, c)) + " 0" for c in self.clauses)
        return "\n".join(lines) + "\n"


def _tseitin(gate, var):
    o, a, b = var(gate.out), var(gate.lhs), var(gate.rhs)
    if gate.op == AND:
        return [(-o, a), (-o, b), (o, -a, -b)]
    return [(-o, -a, -b), (-o, a, b), (o, -a, b), (o, a, -b)]


def export_cnf(inst: InversionInstance) -> CnfInstance:
    circuit = build_circuit(inst.a, inst.m, inst.n + inst.m)

    def var(wire):
        return wire + 1

    clauses = []
    for g in circuit.gates:
        clauses.extend(_tseitin(g, var))

    num_vars = circuit.num_wires
    zero_var = None
    for j, bit in inst.observed_bits().items():
        wire = circuit.outputs[j]
        if wire is not None:
            clauses.append((var(wire) if bit else -var(wire),))
        elif bit:
            if zero_var is None:
                num_vars += 1
                zero_var = num_vars
                clauses.append((-zero_var,))
            clauses.append((zero_var,))
    clauses.append((var(inst.m - 1),))

    return CnfInstance(num_vars, tuple(clauses), tuple(range(1, inst.m + 1)), inst, zero_var)


def check_assignment(cnf: CnfInstance, x: int) -> int | None:
    """Extend ``x`` to every wire by evaluating the circuit, then check each
    clause. Returns ``None`` when satisfied, else the first violated clause index."""
    if not cnf.clauses:
        return None
    values = cnf.circuit.evaluate(x)
    truth = [False] + [bool(v) for v in values]
    truth += [False] * (cnf.num_vars + 1 - len(truth))
    for idx, clause in enumerate(cnf.clauses):
        if not any(truth[lit] if lit > 0 else not truth[-lit] for lit in clause):
            return idx
    return None


_META = re.compile(r"(\w[\w-]*)=([0-9,]*)")


def parse_dimacs(text: str) -> CnfInstance:
    meta = {}
    header = None
    tokens = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c"):
            meta.update(_META.findall(line))
        elif line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf" or header is not None:
                raise FormatError(f"line {lineno}: bad problem line {raw!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise FormatError(f"line {lineno}: bad problem line {raw!r}") from None
        else:
            if header is None:
                raise FormatError(f"line {lineno}: clause before problem line")
            try:
                tokens.extend(int(t) for t in line.split())
            except ValueError:
                raise FormatError(f"line {lineno}: non-integer literal in {raw!r}") from None
    if header is None:
        raise FormatError("missing 'p cnf' problem line")

    clauses, cur = [], []
    for t in tokens:
        if t == 0:
            clauses.append(tuple(cur))
            cur = []
        else:
            if abs(t) > header[0]:
                raise FormatError(f"literal {t} exceeds declared variable count {header[0]}")
            cur.append(t)
    if cur:
        raise FormatError("last clause not terminated by 0")
    if len(clauses) != header[1]:
        raise FormatError(f"declared {header[1]} clauses, found {len(clauses)}")

    inst = None
    if {"a", "n", "m", "p", "q", "u"} <= meta.keys():
        inst = InversionInstance(*(int(meta[k]) for k in ("a", "n", "m", "p", "q", "u")))
    x_vars = tuple(int(v) for v in meta["x-vars"].split(",") if v) if "x-vars" in meta else ()
    zero_var = int(meta["zero-var"]) if "zero-var" in meta else None
    return CnfInstance(header[0], tuple(clauses), x_vars, inst, zero_var)


@dataclass(frozen=True)
class InstanceStats:
    vars: int
    clauses: int
    ratio: float
    xor_chain_count: int


def count_xor_groups(clauses) -> int:
    """Number of 3-variable groups whose four clauses spell out an XOR
    constraint (four sign patterns of equal negation parity)."""
    groups = defaultdict(set)
    for c in clauses:
        if len(c) == 3:
            groups[frozenset(abs(l) for l in c)].add(tuple(sorted(c, key=abs)))
    count = 0
    for vs, cs in groups.items():
        if len(vs) != 3:
            continue
        for parity in (0, 1):
            if sum(1 for c in cs if sum(l < 0 for l in c) % 2 == parity) == 4:
                count += 1
    return count


def instance_stats(cnf: CnfInstance) -> InstanceStats:
    n_clauses = len(cnf.clauses)
    ratio = n_clauses / cnf.num_vars if cnf.num_vars else 0.0
    return InstanceStats(cnf.num_vars, n_clauses, ratio, count_xor_groups(cnf.clauses))
