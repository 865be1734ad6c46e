"""Fuzzy oscillator: closed forms, diagonalisation, eigenfunctions."""

import numpy as np
import pytest

from fuzzyqm.errors import ContractError, OverflowGuardError, RefinementError
from fuzzyqm.numerics import MomentumGrid
from fuzzyqm.oscillator import (
    OscillatorSpec,
    PerturbativeCoefficients,
    anharmonic_shift,
    anharmonic_spectrum_formula,
    default_grid,
    eigenfunction,
    harmonic_spectrum_formula,
    numeric_spectrum,
)

W, M = 0.01, 1.0  # omega, mass in MeV


# --- closed forms -------------------------------------------------------------


def test_harmonic_levels_value():
    spec = OscillatorSpec(W, M, "quadratic")
    res = harmonic_spectrum_formula(spec, 0)
    # (1/2) * 0.01 - 0.0001/2 = 0.00495
    assert res.energies[0] == pytest.approx(0.00495, rel=1e-12)


def test_harmonic_point_particle_limit():
    spec = OscillatorSpec(1.0, 1e9, "quadratic")
    res = harmonic_spectrum_formula(spec, 3)
    sho = (np.arange(4) + 0.5) * 1.0
    assert np.allclose(res.energies, sho, rtol=1e-9)


def test_harmonic_spacing_exactly_omega():
    spec = OscillatorSpec(W, M, "quadratic")
    e = np.array(harmonic_spectrum_formula(spec, 5).energies)
    assert np.allclose(np.diff(e), W, rtol=0, atol=1e-15)


def test_harmonic_requires_quadratic_truncation():
    with pytest.raises(ContractError):
        harmonic_spectrum_formula(OscillatorSpec(W, M, "quartic"), 2)


def test_anharmonic_ground_level():
    spec = OscillatorSpec(W, M, "quartic")
    res = anharmonic_spectrum_formula(spec, 0)
    expected = 0.5 * W - W**2 / (2 * M) + 3 * W**2 / (4 * M)
    assert res.energies[0] == pytest.approx(expected, rel=1e-12)


def test_anharmonic_spacing_grows_linearly():
    spec = OscillatorSpec(W, M, "quartic")
    e = np.array(anharmonic_spectrum_formula(spec, 6).energies)
    increments = np.diff(e) - W
    # spacing excess is (3 w^2/m)(n+1), strictly increasing
    n = np.arange(6)
    assert np.allclose(increments, 3 * W**2 / M * (n + 1), rtol=1e-9)
    assert np.all(increments > 0)


def test_anharmonic_point_particle_limit():
    spec = OscillatorSpec(1.0, 1e9, "quartic")
    res = anharmonic_spectrum_formula(spec, 3)
    assert np.allclose(res.energies, (np.arange(4) + 0.5) * 1.0, rtol=1e-8)


def test_anharmonic_breakdown_flag():
    # shift exceeds 10% of the level for large n at omega/mass = 0.05
    spec = OscillatorSpec(0.05, 1.0, "quartic")
    res = anharmonic_spectrum_formula(spec, 6)
    assert res.breakdown is not None
    assert res.breakdown[0] is False
    assert res.breakdown[-1] is True


def test_perturbative_coefficients():
    spec = OscillatorSpec(W, M, "quartic")
    e = 0.005
    c = PerturbativeCoefficients.from_energy(spec, e)
    assert c.alpha == pytest.approx(2 * e / (M * W**2) + 1 / M**2, rel=1e-14)
    assert c.beta == pytest.approx(-4 * e / (M**3 * W**2) + 1 / M**4 + 1 / (M**2 * W**2), rel=1e-14)
    assert c.gamma == pytest.approx(2 / (M**4 * W**2) - 4 * e / (M**5 * W**2), rel=1e-14)


# --- diagonalisation -----------------------------------------------------------


def test_quadratic_diagonalisation_matches_closed_form():
    spec = OscillatorSpec(W, M, "quadratic")
    diag = np.array(numeric_spectrum(spec, 3).energies)
    formula = np.array(harmonic_spectrum_formula(spec, 3).energies)
    budget = 4.0 * (np.arange(4) + 0.5) * (W / M) ** 3 * M
    assert np.all(np.abs(diag - formula) <= budget)


def test_quartic_diagonalisation_matches_closed_form():
    spec = OscillatorSpec(W, M, "quartic")
    diag = np.array(numeric_spectrum(spec, 3).energies)
    formula = np.array(anharmonic_spectrum_formula(spec, 3).energies)
    shift = anharmonic_shift(spec, np.arange(4))
    assert np.all(np.abs(diag - formula) <= 0.1 * shift)


def test_point_particle_proxy_reaches_plain_sho():
    omega = 0.01
    spec = OscillatorSpec(omega, 1e4 * omega, "quadratic")
    diag = np.array(numeric_spectrum(spec, 3).energies)
    sho = (np.arange(4) + 0.5) * omega
    assert np.all(np.abs(diag - sho) <= 1e-4 * sho)


def test_exact_weight_spectrum_below_anharmonic_formula():
    # the full weighted problem carries the energy-side corrections the
    # perturbative bookkeeping drops; they lower level n by about
    # 2 (n+1/2)^2 w^2/m
    spec_e = OscillatorSpec(W, M, "exact")
    spec_q = OscillatorSpec(W, M, "quartic")
    exact = np.array(numeric_spectrum(spec_e, 3).energies)
    formula = np.array(anharmonic_spectrum_formula(spec_q, 3).energies)
    n = np.arange(4)
    assert np.all(exact < formula)
    assert np.all(np.abs(exact - formula) <= 3.0 * (n + 0.5) ** 2 * (W / M) ** 2 * M)


def test_refinement_stability_invariant():
    spec = OscillatorSpec(W, M, "exact")
    grid = default_grid(spec, 2)
    e1 = np.array(numeric_spectrum(spec, 2, grid=grid).energies)
    fine = MomentumGrid.symmetric(2 * grid.n, 1.25 * grid.cutoff)
    e2 = np.array(numeric_spectrum(spec, 2, grid=fine).energies)
    assert np.max(np.abs(e1 - e2) / np.abs(e2)) <= 1e-6


def test_refinement_error_on_coarse_grid():
    spec = OscillatorSpec(W, M, "quadratic")
    coarse = MomentumGrid.symmetric(12, 0.05)
    with pytest.raises(RefinementError):
        numeric_spectrum(spec, 2, grid=coarse, scheme="central", check_refinement=True)


def test_weight_overflow_guard():
    spec = OscillatorSpec(W, M, "exact")
    wide = MomentumGrid.symmetric(64, 10.0 * M)  # exp(200) weight
    with pytest.raises(OverflowGuardError, match="cutoff"):
        numeric_spectrum(spec, 2, grid=wide)


def test_weighted_orthonormality_of_eigenvectors():
    # the generalized problem pairs reduced vectors through its weight; this
    # is the plain overlap of the momentum-space states (the Hamiltonian is
    # Hermitian in the plain measure)
    spec = OscillatorSpec(W, M, "exact")
    res = numeric_spectrum(spec, 3, return_eigenfunctions=True)
    grid = res.eigenfunctions[0].grid
    psis = [st.samples for st in res.eigenfunctions]
    norms = [np.sqrt(np.sum(np.abs(p) ** 2) * grid.spacing) for p in psis]
    for i in range(4):
        for j in range(4):
            val = np.sum(np.conj(psis[i]) * psis[j]) * grid.spacing / (norms[i] * norms[j])
            assert abs(val - (1.0 if i == j else 0.0)) <= 1e-8


def test_quartic_eigenfunctions_steeper_than_quadratic():
    # stronger (quartic) confinement squeezes the reduced state: smaller <p^2>
    grid = default_grid(OscillatorSpec(W, M, "quadratic"), 1)
    moments = {}
    for trunc in ("quadratic", "quartic"):
        res = numeric_spectrum(OscillatorSpec(W, M, trunc), 1, grid=grid, return_eigenfunctions=True)
        moments[trunc] = [
            float(np.real(np.sum(st.measure_weights() * grid.points**2 * np.abs(st.samples) ** 2)))
            for st in res.eigenfunctions
        ]
    for n in (0, 1):
        assert moments["quartic"][n] < moments["quadratic"][n]


# --- closed-form eigenfunctions -------------------------------------------------


def test_eigenfunction_ground_state_nodeless_even():
    spec = OscillatorSpec(W, M, "quadratic")
    grid = default_grid(spec, 1)
    st = eigenfunction(spec, 0, grid)
    vals = np.real(st.samples)
    assert np.all(vals > 0) or np.all(vals < 0)
    assert np.max(np.abs(vals - vals[::-1])) <= 1e-10 * np.max(np.abs(vals))


def test_eigenfunction_first_excited_odd_one_node():
    spec = OscillatorSpec(W, M, "quadratic")
    grid = default_grid(spec, 1)
    st = eigenfunction(spec, 1, grid)
    vals = np.real(st.samples)
    assert np.max(np.abs(vals + vals[::-1])) <= 1e-10 * np.max(np.abs(vals))
    signs = np.sign(vals[np.abs(vals) > 1e-12 * np.max(np.abs(vals))])
    assert np.count_nonzero(np.diff(signs)) == 1


def test_eigenfunction_normalised_in_weighted_measure():
    spec = OscillatorSpec(W, M, "quadratic")
    st = eigenfunction(spec, 2, default_grid(spec, 2))
    assert st.norm() == pytest.approx(1.0, abs=1e-12)


def test_eigenfunction_overlap_with_diagonalisation():
    spec = OscillatorSpec(W, M, "quadratic")
    grid = default_grid(spec, 0)
    exact = eigenfunction(spec, 0, grid)
    res = numeric_spectrum(spec, 0, grid=grid, return_eigenfunctions=True)
    overlap = abs(exact.inner(res.eigenfunctions[0]))
    assert overlap >= 0.999


def test_eigenfunction_rejects_strong_coupling():
    spec = OscillatorSpec(0.6, 1.0, "quadratic")  # omega >= mass/2
    with pytest.raises(ContractError, match="normalisable"):
        eigenfunction(spec, 0, default_grid(spec, 0))
