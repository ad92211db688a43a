"""Stochastic Pauli (quantum-trajectory) noise and noisy shot sampling.

After every gate, each touched qubit independently suffers a uniformly random
X, Y, or Z kick with the gate's depolarizing probability (p1 for one-qubit
gates, p2 for CNOT).  Readout flips each measured bit symmetrically.  One
trajectory is one shot; averaging trajectories realizes the mixed-state
channel without ever forming a density matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuits import Circuit
from .sampling import ShotCounts
from .statevector import Gate, apply_gate_inplace, qubit_bit

# Trajectories are processed in fixed-size batches so RNG consumption, and
# therefore every sampled outcome, is a pure function of (circuit, model, seed).
_BATCH = 1 << 16


@dataclass(frozen=True)
class NoiseModel:
    """Depolarizing probabilities per touched qubit plus readout flip chance."""

    p1: float = 0.0
    p2: float = 0.0
    readout_flip: float = 0.0

    def __post_init__(self) -> None:
        for name in ("p1", "p2", "readout_flip"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")

    @property
    def is_zero(self) -> bool:
        return self.p1 == 0.0 and self.p2 == 0.0 and self.readout_flip == 0.0

    def to_dict(self) -> dict:
        return {"p1": self.p1, "p2": self.p2, "readout_flip": self.readout_flip}

    @classmethod
    def from_dict(cls, d: dict) -> "NoiseModel":
        return cls(d["p1"], d["p2"], d["readout_flip"])


def _gate_noise_prob(gate: Gate, model: NoiseModel) -> float:
    return model.p2 if gate.kind == "CNOT" else model.p1


def _kick_rows(amp: np.ndarray, rows: np.ndarray, n: int, q: int, kind: int) -> None:
    """Apply X (0), Y (1) or Z (2) on qubit q to the selected batch rows."""
    if rows.size == 0:
        return
    bit = qubit_bit(n, q)
    idx = np.arange(amp.shape[-1])
    i0 = idx[(idx & bit) == 0]
    i1 = i0 | bit
    r = rows[:, None]
    if kind == 0:
        low = amp[r, i0]
        amp[r, i0] = amp[r, i1]
        amp[r, i1] = low
    elif kind == 1:
        low = amp[r, i0]
        amp[r, i0] = -1j * amp[r, i1]
        amp[r, i1] = 1j * low
    else:
        amp[r, i1] = -amp[r, i1]


def run_noisy_trajectory(circuit: Circuit, model: NoiseModel, rng: np.random.Generator) -> str:
    """Simulate a single shot; returns the outcome bitstring (qubit 0 first)."""
    n = circuit.n
    amp = np.zeros(1 << n, dtype=np.complex128)
    amp[0] = 1.0
    for gate in circuit.gates:
        apply_gate_inplace(amp, n, gate)
        p = _gate_noise_prob(gate, model)
        for q in gate.targets:
            if rng.random() < p:
                _kick_rows(amp[None, :], np.array([0]), n, q, int(rng.integers(3)))
    probs = np.abs(amp) ** 2
    probs /= probs.sum()
    outcome = int(rng.choice(probs.size, p=probs))
    if model.readout_flip > 0.0:
        for q in range(n):
            if rng.random() < model.readout_flip:
                outcome ^= qubit_bit(n, q)
    return format(outcome, f"0{n}b")


def sample_noisy_shots(circuit: Circuit, model: NoiseModel, shots: int, seed: int) -> ShotCounts:
    """Histogram of ``shots`` independent noisy trajectories.

    Trajectories are evolved in parallel as a (batch, 2**n) amplitude array;
    noise kicks are applied row-wise to whichever trajectories drew one.
    """
    if shots < 1:
        raise ValueError(f"need at least one shot, got {shots}")
    n = circuit.n
    dim = 1 << n
    rng = np.random.default_rng(seed)
    hist = np.zeros(dim, dtype=np.int64)
    remaining = shots
    while remaining > 0:
        b = min(remaining, _BATCH)
        remaining -= b
        amp = np.zeros((b, dim), dtype=np.complex128)
        amp[:, 0] = 1.0
        for gate in circuit.gates:
            apply_gate_inplace(amp, n, gate)
            p = _gate_noise_prob(gate, model)
            if p > 0.0:
                for q in gate.targets:
                    hit = rng.random(b) < p
                    kinds = rng.integers(0, 3, size=b)
                    for kind in (0, 1, 2):
                        _kick_rows(amp, np.nonzero(hit & (kinds == kind))[0], n, q, kind)
        probs = np.abs(amp) ** 2
        probs /= probs.sum(axis=1, keepdims=True)
        draws = rng.random((b, 1))
        outcomes = (np.cumsum(probs, axis=1) < draws).sum(axis=1)
        np.clip(outcomes, 0, dim - 1, out=outcomes)
        if model.readout_flip > 0.0:
            flips = rng.random((b, n)) < model.readout_flip
            weights = np.array([qubit_bit(n, q) for q in range(n)])
            outcomes ^= flips @ weights
        hist += np.bincount(outcomes, minlength=dim)
    return ShotCounts.from_vector(n, hist)
