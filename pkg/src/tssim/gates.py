"""Closed-form CNOT and single-gate tallies for the three circuit routes.

Counting conventions, stated once: a multiplexed network of single-qubit
gates under c controls costs 2^c CNOTs; each added plain control doubles a
network's cost (two added controls quadruple it); counts are formula-level
estimates, no synthesis or optimization pass behind them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .decompose import Decomposition
from .errors import ContractError
from .pauli import PauliSum


@dataclass
class GateCount:
    cnots: int
    singles: int
    ancilla_qubits: int
    notes: list = field(default_factory=list)


def count_multiplexor(control_qubits: int, networks: int = 1) -> int:
    """CNOTs for `networks` multiplexed single-qubit networks, w * 2^c."""
    if control_qubits < 0 or int(control_qubits) != control_qubits:
        raise ContractError("control count must be a non-negative integer")
    if networks < 0 or int(networks) != networks:
        raise ContractError("network count must be a non-negative integer")
    return int(networks) * 2 ** int(control_qubits)


def count_select_path(s: PauliSum, extra_controls: int = 0, copies: int = 1) -> GateCount:
    """Prepare/select cost of a Pauli-sum encoding.

    Base cost is the select multiplexor (one network per system qubit) plus
    the prepare network, (n + 1) * 2^a CNOTs with a index qubits. Each extra
    control doubles the total; `copies` counts repeated controlled
    applications. A single-term sum needs no index register and no CNOTs.
    """
    if extra_controls < 0 or int(extra_controls) != extra_controls:
        raise ContractError("extra control count must be a non-negative integer")
    if copies < 1 or int(copies) != copies:
        raise ContractError("copy count must be a positive integer")
    n = s.n
    terms = len(s.terms)
    notes = []
    if terms == 0:
        raise ContractError("sum has no terms")
    if terms == 1:
        base_cnots = 0
        base_singles = n
        a = 0
        notes.append("single term: select collapses, bare word of singles")
    else:
        a = (terms - 1).bit_length()
        sel = count_multiplexor(a, n)
        prep = count_multiplexor(a, 1)
        base_cnots = sel + prep
        base_singles = base_cnots
        notes.append(f"select: {n} networks x 2^{a} = {sel}")
        notes.append(f"prepare: 2^{a} = {prep}")
    factor = 2**int(extra_controls)
    if extra_controls:
        notes.append(f"{extra_controls} added controls double each: x{factor}")
    if copies > 1:
        notes.append(f"{copies} controlled copies")
    return GateCount(
        cnots=int(copies) * factor * base_cnots,
        singles=int(copies) * factor * base_singles,
        ancilla_qubits=a + int(extra_controls),
        notes=notes,
    )


def count_dense(n_dim: int) -> GateCount:
    """Dense-matrix bound: 3 N^2 / 2 CNOTs and singles, 2 log2 N - 1 controls."""
    if n_dim < 2 or n_dim & (n_dim - 1):
        raise ContractError(f"dimension {n_dim} is not a power of two >= 2")
    k = n_dim.bit_length() - 1
    c = 3 * n_dim * n_dim // 2
    return GateCount(
        cnots=c,
        singles=c,
        ancilla_qubits=2 * k - 1,
        notes=[f"dense bound for dimension {n_dim}"],
    )


def count_dc(d: Decomposition, pea_control: bool = False) -> GateCount:
    """Divide-and-conquer cost from a decomposition's surviving groups.

    Each surviving group is budgeted at two unitary branches; every branch
    multiplexes one 2x2 block per block row. The CNOT tally controls that
    network on the branch index, the block-row address, and one series
    qubit; a phase-estimation control doubles it.
    """
    if not d.terms:
        raise ContractError("decomposition has no branches")
    groups = d.group_count()
    branches = 2 * groups
    block_rows = 2 ** (d.n - 1)
    gates = branches * block_rows
    index_qubits = (branches - 1).bit_length()
    controls = index_qubits + (d.n - 1) + 1
    cnots = 2 * 2**controls
    ancilla = index_qubits + 1
    notes = [
        f"branches: {branches} (2 per surviving group, {groups} groups)",
        f"multiplexed 2x2 blocks: {gates}",
        f"controls: {index_qubits} index + {d.n - 1} address + 1 series",
    ]
    if pea_control:
        cnots *= 2
        ancilla += 1
        notes.append("estimation control doubles the CNOT tally")
    return GateCount(cnots=cnots, singles=gates, ancilla_qubits=ancilla, notes=notes)
