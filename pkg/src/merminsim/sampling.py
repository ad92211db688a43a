"""Shot counting, parity expectation estimates, and error propagation.

The per-outcome uncertainty is the plug-in binomial width
``dp = sqrt(p_hat (1 - p_hat) / N)``; a parity expectation inherits
``sqrt(sum dp^2)`` over outcomes, and a polynomial built from shared class
estimates inherits ``sqrt(sum (c_k * m_k)^2 d_k^2)`` because every one of the
``m_k`` permutation copies reuses the same measured number.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .polynomials import SymmetryClass


@dataclass(frozen=True)
class Estimate:
    """A measured value with its one-sigma uncertainty."""

    value: float
    error: float

    def __post_init__(self) -> None:
        if self.error < 0:
            raise ValueError(f"error must be >= 0, got {self.error}")


@dataclass(frozen=True)
class ShotCounts:
    """Outcome histogram of one measured circuit: bitstring -> count."""

    n: int
    total: int
    counts: dict[str, int]

    def __post_init__(self) -> None:
        if sum(self.counts.values()) != self.total:
            raise ValueError("counts do not sum to the stated total")
        for key, c in self.counts.items():
            if len(key) != self.n or set(key) - {"0", "1"}:
                raise ValueError(f"bad outcome key {key!r} for n={self.n}")
            if c < 0:
                raise ValueError(f"negative count for {key!r}")

    def as_vector(self) -> np.ndarray:
        vec = np.zeros(1 << self.n, dtype=np.int64)
        for key, c in self.counts.items():
            vec[int(key, 2)] = c
        return vec

    def to_dict(self) -> dict:
        return {"n": self.n, "total": self.total, "counts": dict(sorted(self.counts.items()))}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_csv(self) -> str:
        lines = ["outcome,count"]
        lines += [f"{key},{c}" for key, c in sorted(self.counts.items())]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "ShotCounts":
        return cls(d["n"], d["total"], dict(d["counts"]))

    @classmethod
    def from_vector(cls, n: int, vec: np.ndarray) -> "ShotCounts":
        counts = {format(i, f"0{n}b"): int(c) for i, c in enumerate(vec) if c > 0}
        return cls(n, int(vec.sum()), counts)


def sample_shots(probs: np.ndarray, shots: int, seed: int) -> ShotCounts:
    """Draw a multinomial outcome histogram; identical seeds give identical counts."""
    probs = np.asarray(probs, dtype=float)
    if shots < 1:
        raise ValueError(f"need at least one shot, got {shots}")
    if np.any(probs < -1e-12):
        raise ValueError("negative probability")
    if abs(probs.sum() - 1.0) > 1e-9:
        raise ValueError(f"probabilities sum to {probs.sum()}, not 1")
    n = int(round(math.log2(probs.size)))
    if 1 << n != probs.size:
        raise ValueError(f"probability vector length {probs.size} is not a power of two")
    rng = np.random.default_rng(seed)
    vec = rng.multinomial(shots, np.clip(probs, 0.0, None) / probs.sum())
    return ShotCounts.from_vector(n, vec)


def expectation_from_counts(counts: ShotCounts) -> Estimate:
    """Parity estimator sum_o p_hat(o) * (-1)**ones(o) with plug-in binomial error."""
    total = counts.total
    value = 0.0
    var = 0.0
    for key, c in counts.counts.items():
        p_hat = c / total
        sign = -1.0 if key.count("1") % 2 else 1.0
        value += sign * p_hat
        var += p_hat * (1.0 - p_hat) / total
    return Estimate(value, math.sqrt(var))


def polynomial_estimate(
    classes: Iterable[SymmetryClass], term_estimates: Mapping[int, Estimate]
) -> Estimate:
    """Combine one estimate per symmetry class into the polynomial estimate.

    Each class contributes coefficient * multiplicity * estimate; the same
    measured number serves all multiplicity copies, so its error enters with
    the full weight (coefficient * multiplicity), not its square root.
    """
    value = 0.0
    var = 0.0
    for cl in classes:
        if cl.y_count not in term_estimates:
            raise ValueError(f"missing estimate for Y={cl.y_count} class")
        est = term_estimates[cl.y_count]
        weight = float(cl.coefficient) * cl.multiplicity
        value += weight * est.value
        var += weight * weight * est.error * est.error
    return Estimate(value, math.sqrt(var))


def polynomial_estimate_expanded(
    parts: Sequence[tuple[Fraction | float, Estimate]],
) -> Estimate:
    """Combine independently measured per-term estimates: errors add in quadrature
    with each term's own coefficient."""
    value = 0.0
    var = 0.0
    for coeff, est in parts:
        c = float(coeff)
        value += c * est.value
        var += c * c * est.error * est.error
    return Estimate(value, math.sqrt(var))


def exchange_spread(estimates: Sequence[Estimate]) -> float:
    """Sample standard deviation (n-1 divisor) of the estimate values."""
    if len(estimates) < 2:
        raise ValueError("need at least two estimates")
    return float(np.std([e.value for e in estimates], ddof=1))


def round_error(error: float) -> float:
    """Round an uncertainty to its first significant decimal digit (ties up):
    0.0221 -> 0.02, 0.0076 -> 0.008, 0.098 -> 0.1."""
    if error < 0:
        raise ValueError(f"error must be >= 0, got {error}")
    if error == 0.0:
        return 0.0
    exponent = math.floor(math.log10(error))
    leading = math.floor(error / (10.0**exponent) + 0.5)
    if leading >= 10:
        leading = 1
        exponent += 1
    return leading * (10.0**exponent)


def derive_seed(base_seed: int, *parts: object) -> int:
    """Stable per-task sub-seed: hash the base seed with context labels.

    Independent of PYTHONHASHSEED and platform so reports reproduce exactly.
    """
    payload = "\x1f".join([str(int(base_seed)), *[str(p) for p in parts]]).encode()
    digest = hashlib.sha256(payload).digest()
    return int.from_bytes(digest[:8], "little") >> 1
