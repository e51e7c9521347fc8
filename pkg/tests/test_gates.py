"""Closed-form gate tallies for the select, dense, and divide-and-conquer routes."""

import numpy as np
import pytest

from tssim.decompose import build_decomposition
from tssim.errors import ContractError
from tssim.gates import count_dc, count_dense, count_multiplexor, count_select_path
from tssim.pauli import PauliSum, h2_hamiltonian, sum_matrix


def test_multiplexor_doubles_per_control():
    assert count_multiplexor(0) == 1
    assert count_multiplexor(4) == 16
    assert count_multiplexor(4, 4) == 64
    assert count_multiplexor(5, 3) == 96


def test_multiplexor_rejects_bad_args():
    with pytest.raises(ContractError):
        count_multiplexor(-1)
    with pytest.raises(ContractError):
        count_multiplexor(2, -3)


def test_select_path_hydrogen_pins():
    gc = count_select_path(h2_hamiltonian())
    assert gc.cnots == 80  # 4 select networks (64) + prepare (16)
    assert gc.singles == 80
    assert gc.ancilla_qubits == 4


def test_select_path_controls_and_copies():
    s = h2_hamiltonian()
    gc = count_select_path(s, extra_controls=2, copies=2)
    assert gc.cnots == 640
    assert gc.ancilla_qubits == 6
    assert count_select_path(s, extra_controls=1).cnots == 160


def test_select_path_single_term_collapses():
    gc = count_select_path(PauliSum([(0.5, "XYZ")]))
    assert gc.cnots == 0
    assert gc.singles == 3
    assert gc.ancilla_qubits == 0


def test_select_path_rejects_empty_and_bad_counts():
    s = h2_hamiltonian()
    with pytest.raises(ContractError):
        count_select_path(PauliSum([]))
    with pytest.raises(ContractError):
        count_select_path(s, extra_controls=-1)
    with pytest.raises(ContractError):
        count_select_path(s, copies=0)


def test_dense_bound_values():
    assert count_dense(2).cnots == 6
    assert count_dense(8).cnots == 96
    assert count_dense(16).cnots == 384
    assert count_dense(8).ancilla_qubits == 5
    # doubling the dimension quadruples the bound
    assert count_dense(16).cnots == 4 * count_dense(8).cnots


def test_dense_bound_rejects_non_power_of_two():
    for bad in (0, 1, 3, 12):
        with pytest.raises(ContractError):
            count_dense(bad)


def test_dc_hydrogen_pins():
    d = build_decomposition(sum_matrix(h2_hamiltonian()))
    gc = count_dc(d)
    assert gc.singles == 32  # 4 branches x 8 block rows
    assert gc.cnots == 128
    assert gc.ancilla_qubits == 3
    gc = count_dc(d, pea_control=True)
    assert gc.cnots == 256
    assert gc.ancilla_qubits == 4
    assert any("estimation control" in n for n in gc.notes)


def test_dc_small_random_matrix():
    rng = np.random.default_rng(3)
    m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    m /= 8.0
    d = build_decomposition(m)
    gc = count_dc(d)
    branches = len(d.terms)
    assert gc.singles == 2 * d.group_count() * 2 ** (d.n - 1)
    assert gc.cnots == 2 * 2 ** ((2 * d.group_count() - 1).bit_length() + d.n)
    assert branches <= 2 * d.group_count()


def test_gate_counts_carry_notes():
    assert count_select_path(h2_hamiltonian()).notes
    assert count_dense(8).notes
