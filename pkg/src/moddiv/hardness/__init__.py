"""Reductions of window inversion to SAT and to GF(2) polynomial systems."""

from .anf import AnfSystem, export_anf, parse_anf
from .circuit import Gate, MultiplierCircuit, build_circuit
from .cnf import CnfInstance, InstanceStats, check_assignment, export_cnf, instance_stats, parse_dimacs
from .instance import InversionInstance, brute_force_invert

__all__ = [
    "AnfSystem",
    "CnfInstance",
    "Gate",
    "InstanceStats",
    "InversionInstance",
    "MultiplierCircuit",
    "brute_force_invert",
    "build_circuit",
    "check_assignment",
    "export_anf",
    "export_cnf",
    "instance_stats",
    "parse_anf",
    "parse_dimacs",
]
