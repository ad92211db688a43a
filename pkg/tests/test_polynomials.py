"""Mermin polynomial construction, collapse, and eigenvalue checks."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from conftest import random_symmetric_state
from merminsim import (
    EigencheckError,
    MerminPolynomial,
    PauliString,
    SymmetryClass,
    alsina_recursive,
    collapse,
    eigencheck,
    exact_expectation,
    ghz_state,
    init_zero,
    mermin_direct,
    primed,
)
from merminsim.statevector import Statevector

SQRT2 = float(np.sqrt(2.0))


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_direct_construction_term_count_and_signs(n):
    poly = mermin_direct(n)
    assert len(poly.terms) == 2 ** (n - 1)
    for coeff, pauli in poly.terms:
        assert pauli.y_count % 2 == 1
        assert coeff == Fraction((-1) ** ((pauli.y_count - 1) // 2))
    # Every odd-Y string appears exactly once.
    assert len({p.axes for _, p in poly.terms}) == len(poly.terms)


def test_recursive_equals_direct_for_three_qubits():
    assert alsina_recursive(3).terms == mermin_direct(3).terms
    assert alsina_recursive(3).lr_bound == mermin_direct(3).lr_bound
    assert alsina_recursive(3).qm_value == mermin_direct(3).qm_value


def test_collapse_three_qubit_classes():
    classes = collapse(mermin_direct(3))
    assert classes == [
        SymmetryClass(1, Fraction(1), 3),
        SymmetryClass(3, Fraction(-1), 1),
    ]


def test_collapse_four_qubit_recursive_classes():
    classes = collapse(alsina_recursive(4))
    assert classes == [
        SymmetryClass(0, Fraction(-1), 1),
        SymmetryClass(1, Fraction(1), 4),
        SymmetryClass(2, Fraction(1), 6),
        SymmetryClass(3, Fraction(-1), 4),
        SymmetryClass(4, Fraction(-1), 1),
    ]
    # 16 terms total, one per axis string.
    assert len(alsina_recursive(4).terms) == 16


def test_collapse_five_qubit_classes():
    assert collapse(mermin_direct(5)) == [
        SymmetryClass(1, Fraction(1), 5),
        SymmetryClass(3, Fraction(-1), 10),
        SymmetryClass(5, Fraction(1), 1),
    ]
    assert collapse(alsina_recursive(5)) == [
        SymmetryClass(0, Fraction(-1), 1),
        SymmetryClass(2, Fraction(1), 10),
        SymmetryClass(4, Fraction(-1), 5),
    ]


def test_primed_negates_coefficients_only():
    poly = alsina_recursive(4)
    flipped = primed(poly)
    assert flipped.lr_bound == poly.lr_bound
    assert flipped.qm_value == poly.qm_value
    for (c0, p0), (c1, p1) in zip(poly.terms, flipped.terms):
        assert p0 == p1
        assert c1 == -c0
    assert primed(flipped).terms == poly.terms


@pytest.mark.parametrize(
    "poly,phase,expected",
    [
        (mermin_direct(3), np.pi / 2, 4.0),
        (mermin_direct(4), np.pi / 2, 8.0),
        (alsina_recursive(4), 3 * np.pi / 4, 8 * SQRT2),
        (primed(alsina_recursive(4)), -np.pi / 4, 8 * SQRT2),
        (mermin_direct(5), np.pi / 2, 16.0),
        (alsina_recursive(5), np.pi, 16.0),
        (primed(alsina_recursive(5)), 0.0, 16.0),
    ],
    ids=["m3", "m4", "a4", "a4-primed", "m5", "a5", "a5-primed"],
)
def test_eigencheck_on_matching_ghz_state(poly, phase, expected):
    value = eigencheck(poly, ghz_state(poly.n, phase))
    np.testing.assert_allclose(value, expected, atol=1e-9)
    np.testing.assert_allclose(value, poly.qm_value, atol=1e-9)


def test_eigencheck_rejects_non_eigenstates():
    poly = mermin_direct(3)
    with pytest.raises(EigencheckError):
        eigencheck(poly, init_zero(3))
    with pytest.raises(EigencheckError) as info:
        eigencheck(poly, ghz_state(3, 0.0))
    assert info.value.residual > 1e-9


def test_collapse_rejects_mixed_coefficients_in_a_class():
    terms = (
        (Fraction(1), PauliString.from_str("XXY")),
        (Fraction(-1), PauliString.from_str("XYX")),
    )
    poly = MerminPolynomial(3, terms, lr_bound=2.0, qm_value=4.0)
    with pytest.raises(ValueError):
        collapse(poly)


def test_collapsed_and_expanded_sums_agree_on_symmetric_states():
    # The collapse shortcut is exact on permutation-symmetric states:
    # coefficient * multiplicity * <representative> summed over classes
    # equals the full term-by-term sum.
    rng = np.random.default_rng(400)
    polys = [mermin_direct(3), alsina_recursive(4), primed(alsina_recursive(5))]
    checked = 0
    for poly in polys:
        n = poly.n
        for _ in range(34):
            state = Statevector(n, random_symmetric_state(n, rng))
            full = sum(
                float(c) * exact_expectation(state, p) for c, p in poly.terms
            )
            shortcut = sum(
                float(cls.coefficient)
                * cls.multiplicity
                * exact_expectation(
                    state, PauliString.from_str("X" * (n - cls.y_count) + "Y" * cls.y_count)
                )
                for cls in collapse(poly)
            )
            np.testing.assert_allclose(shortcut, full, atol=1e-10)
            checked += 1
    assert checked >= 100


def test_polynomial_serialization_round_trip():
    for poly in (mermin_direct(3), alsina_recursive(4), primed(alsina_recursive(5))):
        again = MerminPolynomial.from_dict(poly.to_dict())
        assert again == poly
        assert isinstance(again.terms[0][0], Fraction)


def test_qm_values_follow_parity_rule():
    for n in (3, 5):
        assert alsina_recursive(n).qm_value == 2 ** (n - 1)
    for n in (4, 6):
        np.testing.assert_allclose(alsina_recursive(n).qm_value, 2 ** (n - 1) * SQRT2)
