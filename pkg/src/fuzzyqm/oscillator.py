"""Fuzzy harmonic oscillator: perturbative spectra and momentum-space diagonalisation.

With the smeared position operator, the oscillator eigenproblem in the
momentum basis becomes, for phi = exp(-p^2/m^2) psi,

    (m w^2 / 2) [phi'' - (p^2/m^4 - 1/m^2) phi] = (p^2/2m - E) exp(2p^2/m^2) phi.

Three solution paths are provided.  ``exact`` diagonalises the full weighted
generalized problem.  The ``quadratic`` and ``quartic`` paths implement the
same order-by-order bookkeeping as the closed-form spectra: the weight
expansion is kept against the kinetic term p^2/2m (up to the stated order)
while the energy-side weight corrections, which enter one perturbative order
higher than the retained shifts, are dropped.  This makes the diagonalised
spectra directly comparable to the closed forms at their stated accuracy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractError, OverflowGuardError, RefinementError
from .numerics.grids import MomentumGrid
from .numerics.linalg import derivative_matrix, eig_generalized
from .operators import GridState, SmearingParams

_TRUNCATIONS = ("quadratic", "quartic", "exact")
_WEIGHT_CAP = 1e12  # exp(2 P^2/m^2) beyond this makes the reduction useless


@dataclass(frozen=True)
class OscillatorSpec:
    """Oscillator frequency and particle mass (also the smearing scale), in MeV.

    The perturbative formulas are valid for omega much smaller than mass.
    """

    omega: float
    mass: float
    truncation: str = "quadratic"

    def __post_init__(self) -> None:
        if self.omega <= 0 or self.mass <= 0:
            raise ValueError("omega and mass must be positive")
        if self.truncation not in _TRUNCATIONS:
            raise ValueError(f"truncation must be one of {_TRUNCATIONS}")

    @property
    def omega_over_mass(self) -> float:
        return self.omega / self.mass


@dataclass(frozen=True)
class PerturbativeCoefficients:
    """Coefficients of the quartic-order reduced equation phi'' + (alpha - beta p^2 - gamma p^4) phi = 0."""

    alpha: float
    beta: float
    gamma: float

    @classmethod
    def from_energy(cls, spec: OscillatorSpec, energy: float) -> "PerturbativeCoefficients":
        w, m = spec.omega, spec.mass
        alpha = 2.0 * energy / (m * w**2) + 1.0 / m**2
        beta = -4.0 * energy / (m**3 * w**2) + 1.0 / m**4 + 1.0 / (m**2 * w**2)
        gamma = 2.0 / (m**4 * w**2) - 4.0 * energy / (m**5 * w**2)
        return cls(alpha, beta, gamma)


@dataclass(frozen=True)
class SpectrumResult:
    """Energies in MeV (ascending), how they were obtained, optional eigenfunctions."""

    energies: tuple[float, ...]
    method: str
    eigenfunctions: tuple[GridState, ...] | None = None
    breakdown: tuple[bool, ...] | None = None

    def __post_init__(self) -> None:
        e = np.asarray(self.energies)
        if e.size > 1 and np.any(np.diff(e) <= 0):
            raise ValueError("energies must be strictly increasing")


def harmonic_spectrum_formula(spec: OscillatorSpec, n_max: int) -> SpectrumResult:
    """Displaced harmonic levels E_n = (n+1/2) w - w^2/2m (large-confinement regime)."""
    if spec.truncation != "quadratic":
        raise ContractError("harmonic closed form applies to the quadratic truncation")
    n = np.arange(n_max + 1)
    e = (n + 0.5) * spec.omega - spec.omega**2 / (2.0 * spec.mass)
    return SpectrumResult(tuple(float(v) for v in e), method="formula")


def anharmonic_shift(spec: OscillatorSpec, n: np.ndarray | int) -> np.ndarray | float:
    """n-dependent quartic shift (3 w^2 / 4m)(1 + 2n + 2n^2)."""
    return (3.0 * spec.omega**2 / (4.0 * spec.mass)) * (1.0 + 2.0 * np.asarray(n) + 2.0 * np.asarray(n) ** 2)


def anharmonic_spectrum_formula(spec: OscillatorSpec, n_max: int) -> SpectrumResult:
    """Quartic-regime levels: the displaced harmonic ladder plus the anharmonic shift.

    Levels whose shift exceeds 10% of the harmonic level are flagged: the
    perturbation expansion breaks down for large enough n.
    """
    if spec.truncation != "quartic":
        raise ContractError("anharmonic closed form applies to the quartic truncation")
    n = np.arange(n_max + 1)
    e = (n + 0.5) * spec.omega - spec.omega**2 / (2.0 * spec.mass) + anharmonic_shift(spec, n)
    flags = (3.0 * spec.omega / (4.0 * spec.mass)) * (1.0 + 2.0 * n + 2.0 * n**2) > 0.1 * (n + 0.5)
    return SpectrumResult(tuple(float(v) for v in e), method="formula", breakdown=tuple(bool(f) for f in flags))


def default_grid(spec: OscillatorSpec, n_max: int, n_points: int = 512) -> MomentumGrid:
    """Grid sized to the reduced eigenfunctions (scale sqrt(m w)), capped for the exact weight."""
    coverage = (8.0 + np.sqrt(2.0 * n_max + 2.0)) * np.sqrt(spec.mass * spec.omega)
    cutoff = min(3.7 * spec.mass, coverage)
    return MomentumGrid.symmetric(n_points, cutoff)


def _build_operator(spec: OscillatorSpec, grid: MomentumGrid, scheme: str) -> tuple[np.ndarray, np.ndarray]:
    """Assemble (A, W) of the generalized problem A phi = E W phi for the requested truncation."""
    w, m = spec.omega, spec.mass
    p = grid.points
    d2 = derivative_matrix(grid, 2, scheme).entries
    confinement = (m * w**2 / 2.0) * (p**2 / m**4 - 1.0 / m**2)
    if spec.truncation == "quadratic":
        kinetic_weight = np.ones_like(p)
        weight = np.ones_like(p)
    elif spec.truncation == "quartic":
        kinetic_weight = 1.0 + 2.0 * p**2 / m**2 + 2.0 * p**4 / m**4
        weight = np.ones_like(p)
    else:
        arg = 2.0 * p**2 / m**2
        if np.max(arg) > np.log(_WEIGHT_CAP):
            raise OverflowGuardError(
                f"exp(2 P^2/m^2) = {np.exp(np.max(arg)):.2e} exceeds {_WEIGHT_CAP:.0e}; "
                "reduce the grid cutoff (P <= 3.7 m)"
            )
        kinetic_weight = np.exp(arg)
        weight = kinetic_weight
    a = -(m * w**2 / 2.0) * d2 + np.diag(confinement + (p**2 / (2.0 * m)) * kinetic_weight)
    return a, weight


def numeric_spectrum(
    spec: OscillatorSpec,
    n_max: int,
    grid: MomentumGrid | None = None,
    n_points: int = 512,
    scheme: str = "spectral",
    check_refinement: bool = False,
    return_eigenfunctions: bool = False,
) -> SpectrumResult:
    """Lowest n_max+1 levels by dense diagonalisation of the reduced equation.

    Dirichlet boundary values are implicit (phi decays inside the grid).  With
    ``check_refinement`` the solve is repeated on a grid with doubled points
    and 25% larger cutoff; a relative change above 1e-4 raises RefinementError.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    if grid is None:
        grid = default_grid(spec, n_max, n_points)
    a, wdiag = _build_operator(spec, grid, scheme)
    vals, phis = eig_generalized(a, wdiag, return_eigenvectors=True)
    energies = vals[: n_max + 1]

    if check_refinement:
        fine = MomentumGrid.symmetric(2 * grid.n, 1.25 * grid.cutoff)
        if spec.truncation == "exact" and 2.0 * fine.cutoff**2 / spec.mass**2 > np.log(_WEIGHT_CAP):
            fine = MomentumGrid.symmetric(2 * grid.n, grid.cutoff)
        a2, w2 = _build_operator(spec, fine, scheme)
        ref = eig_generalized(a2, w2)[: n_max + 1]
        rel = np.max(np.abs(ref - energies) / np.maximum(np.abs(ref), 1e-300))
        if rel > 1e-4:
            raise RefinementError(f"spectrum changed by {rel:.2e} under grid refinement")

    eigenfunctions = None
    if return_eigenfunctions:
        s = SmearingParams(spec.mass)
        boost = np.exp(grid.points**2 / spec.mass**2)
        states = []
        for i in range(n_max + 1):
            psi = boost * phis[:, i]
            st = GridState(psi, grid, measure="weighted", smearing=s).normalize()
            # fix the overall sign: make the first substantial component positive
            j = int(np.argmax(np.abs(st.samples)))
            if np.real(st.samples[j]) < 0:
                st = GridState(-st.samples, grid, "weighted", s)
            states.append(st)
        eigenfunctions = tuple(states)
    return SpectrumResult(
        tuple(float(v) for v in energies), method="diagonalization", eigenfunctions=eigenfunctions
    )


def eigenfunction(spec: OscillatorSpec, n: int, grid: MomentumGrid) -> GridState:
    """Closed-form level-n eigenfunction of the large-confinement regime.

    psi(p) ~ exp(p^2/m^2 (1 - m/2w)) H_n(p / sqrt(m w)), normalised in the
    weighted measure exp(-2p^2/m^2) dp.  Needs w < m/2 so the Gaussian
    exponent is negative; parity is (-1)^n with n interior nodes.
    """
    if spec.truncation != "quadratic":
        raise ContractError("the closed-form eigenfunction belongs to the quadratic truncation")
    if not spec.omega < spec.mass / 2.0:
        raise ContractError("omega >= mass/2: the closed-form eigenfunction is not normalisable")
    if n < 0:
        raise ValueError("n must be nonnegative")
    p = grid.points
    herm = np.polynomial.hermite.Hermite.basis(n)(p / np.sqrt(spec.mass * spec.omega))
    envelope = np.exp(p**2 / spec.mass**2 * (1.0 - spec.mass / (2.0 * spec.omega)))
    s = SmearingParams(spec.mass)
    return GridState(envelope * herm, grid, measure="weighted", smearing=s).normalize()
