"""Shared test helpers: dense-matrix oracles and random state factories.

The production code applies gates and Pauli strings with bitwise index
arithmetic and never materializes an operator matrix.  The helpers here
build the full 2^n x 2^n matrices the slow, obvious way (Kronecker
products, qubit 0 as the leftmost factor) so tests can check the fast
kernels against an independent construction.
"""

from __future__ import annotations

import numpy as np

from merminsim import Circuit, Gate

_I2 = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_S = np.diag([1, 1j]).astype(complex)
_P0 = np.diag([1, 0]).astype(complex)
_P1 = np.diag([0, 1]).astype(complex)

AXIS_MATRICES = {"X": _X, "Y": _Y}


def embed(op: np.ndarray, qubit: int, n: int) -> np.ndarray:
    """Lift a single-qubit operator to n qubits (qubit 0 = leftmost factor)."""
    out = np.eye(1, dtype=complex)
    for q in range(n):
        out = np.kron(out, op if q == qubit else _I2)
    return out


def dense_gate_matrix(gate: Gate, n: int) -> np.ndarray:
    if gate.kind == "H":
        return embed(_H, gate.targets[0], n)
    if gate.kind == "S":
        return embed(_S, gate.targets[0], n)
    if gate.kind == "SDG":
        return embed(_S.conj().T, gate.targets[0], n)
    if gate.kind == "X":
        return embed(_X, gate.targets[0], n)
    if gate.kind == "PHASE":
        return embed(np.diag([1, np.exp(1j * gate.angle)]), gate.targets[0], n)
    if gate.kind == "CNOT":
        control, target = gate.targets
        return embed(_P0, control, n) + embed(_P1, control, n) @ embed(_X, target, n)
    raise ValueError(f"no dense form for gate kind {gate.kind!r}")


def dense_circuit_matrix(circuit: Circuit) -> np.ndarray:
    mat = np.eye(2**circuit.n, dtype=complex)
    for gate in circuit.gates:
        mat = dense_gate_matrix(gate, circuit.n) @ mat
    return mat


def dense_pauli_matrix(axes: str) -> np.ndarray:
    mat = np.eye(1, dtype=complex)
    for axis in axes:
        mat = np.kron(mat, AXIS_MATRICES[axis])
    return mat


def random_state(n: int, rng: np.random.Generator) -> np.ndarray:
    amp = rng.standard_normal(2**n) + 1j * rng.standard_normal(2**n)
    return amp / np.linalg.norm(amp)


def random_symmetric_state(n: int, rng: np.random.Generator) -> np.ndarray:
    """Random state invariant under qubit permutations.

    Amplitudes depend only on the number of 1 bits in the basis index,
    which is exactly the class of states the symmetry-collapse shortcut
    relies on.
    """
    weights = rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1)
    amp = np.array([weights[bin(i).count("1")] for i in range(2**n)], dtype=complex)
    return amp / np.linalg.norm(amp)
