"""Gaussian-smeared (fuzzy) operator algebra in the momentum basis.

The position operator conjugated with the Gaussian factor exp(-p^2/2m^2)
acquires a noncanonical commutator with momentum, a modified uncertainty
bound, smeared angular-momentum eigenvalues, and noncommuting position
components.  Everything here is built on dense grids and verified by acting
on smooth probe states; entrywise matrix comparisons are meaningless for
difference schemes because the discrete commutator only represents the
continuum one on resolved functions.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ContractError
from .numerics.grids import MomentumGrid, OperatorMatrix
from .numerics.linalg import derivative_matrix

_NORM_TOL = 1e-8


@dataclass(frozen=True)
class SmearingParams:
    """Smearing scale: the Gaussian width in momentum space is set by ``mass``.

    mass -> infinity recovers the point-particle operators.
    """

    mass: float

    def __post_init__(self) -> None:
        if not (np.isfinite(self.mass) and self.mass > 0):
            raise ValueError(f"smearing mass must be finite and positive, got {self.mass!r}")

    def gaussian(self, p: np.ndarray, half: bool = False) -> np.ndarray:
        """exp(-p^2/m^2), or its square root when ``half`` is set."""
        denom = 2.0 * self.mass**2 if half else self.mass**2
        return np.exp(-np.asarray(p) ** 2 / denom)


@dataclass
class GridState:
    """Complex samples over a grid, with a declared integration measure.

    ``measure="plain"`` integrates |psi|^2 dp; ``measure="weighted"``
    integrates exp(-2p^2/m^2) |psi|^2 dp and requires ``smearing``.
    """

    samples: np.ndarray
    grid: MomentumGrid
    measure: str = "plain"
    smearing: SmearingParams | None = None

    def __post_init__(self) -> None:
        s = np.asarray(self.samples, dtype=complex)
        if s.shape != (self.grid.n,):
            raise ValueError(f"samples shape {s.shape} does not match grid size {self.grid.n}")
        self.samples = s
        if self.measure not in ("plain", "weighted"):
            raise ValueError(f"unknown measure {self.measure!r}")
        if self.measure == "weighted" and self.smearing is None:
            raise ContractError("weighted measure requires smearing parameters")

    def measure_weights(self) -> np.ndarray:
        w = np.full(self.grid.n, self.grid.spacing)
        if self.measure == "weighted":
            w = w * self.smearing.gaussian(self.grid.points) ** 2  # exp(-2p^2/m^2)
        return w

    def norm(self) -> float:
        return float(np.sqrt(np.sum(self.measure_weights() * np.abs(self.samples) ** 2)))

    def normalize(self) -> "GridState":
        n = self.norm()
        if n == 0:
            raise ValueError("cannot normalise the zero state")
        return GridState(self.samples / n, self.grid, self.measure, self.smearing)

    def inner(self, other: "GridState") -> complex:
        if other.grid is not self.grid and not np.array_equal(other.grid.points, self.grid.points):
            raise ValueError("states live on different grids")
        return complex(np.sum(self.measure_weights() * np.conj(self.samples) * other.samples))


@dataclass(frozen=True)
class UncertaintyReport:
    """Spreads and the Robertson bound for the fuzzy position / momentum pair.

    ``bound`` is half the magnitude of the expected smearing factor; the
    minimal position uncertainty ``dx0`` is defined only when <X><P> >= 0.
    """

    dxf: float
    dp: float
    bound: float
    mean_x: float
    mean_p: float
    dx0: float | None


@dataclass(frozen=True)
class SpacetimeCommutatorReport:
    """Residuals of the two-component fuzzy-position commutator identity."""

    residual: float
    snyder_relative_deviation: float
    lhs_antihermiticity: float
    rhs_antihermiticity: float
    axis_points: int
    cutoff: float


# ----------------------------------------------------------------------------
# operator builders


def build_momentum_op(grid: MomentumGrid) -> OperatorMatrix:
    """Momentum is multiplicative in the momentum basis: diag(p)."""
    return OperatorMatrix(np.diag(grid.points).astype(complex), grid, hermitian=True)


def build_position_op(grid: MomentumGrid, scheme: str = "spectral") -> OperatorMatrix:
    """Position as i d/dp.  Both schemes give an exactly Hermitian matrix.

    Boundary rows are truncated (zero assumed outside the grid), so the
    operator is only accurate on states that decay inside the grid.
    """
    d1 = derivative_matrix(grid, 1, scheme)
    return OperatorMatrix(1j * d1.entries, grid, hermitian=True)


def build_fuzzy_position_op(grid: MomentumGrid, s: SmearingParams, scheme: str = "spectral") -> OperatorMatrix:
    """Smeared position G X G with G = diag(exp(-p^2/2m^2)); Hermitian by construction."""
    g = s.gaussian(grid.points, half=True)
    x = build_position_op(grid, scheme)
    return OperatorMatrix(g[:, None] * x.entries * g[None, :], grid, hermitian=True)


def smearing_factor_op(grid: MomentumGrid, s: SmearingParams) -> OperatorMatrix:
    """diag(exp(-p^2/m^2)), the full smearing kernel."""
    return OperatorMatrix(np.diag(s.gaussian(grid.points)).astype(complex), grid, hermitian=True)


# ----------------------------------------------------------------------------
# position-space smearing action


def apply_fuzzy_position_convolution(state: GridState, s: SmearingParams) -> GridState:
    """Act with the fuzzy position on a position-space state by Gaussian smearing.

    The action translates the state by every shift lam, weights by the
    Gaussian kernel of width 2/m, and multiplies by the midpoint coordinate:
    (m / 2 sqrt(pi)) * integral dlam (x + lam/2) psi(x + lam) exp(-m^2 lam^2 / 4).
    The kernel integrates to one, so the point-particle limit returns x*psi(x).
    """
    x = state.grid.points
    dx = state.grid.spacing
    psi = state.samples
    prob = np.abs(psi) ** 2
    total = float(np.sum(prob))
    if total > 0:
        k = max(1, int(round(0.1 * state.grid.n)))
        outer = float(np.sum(prob[:k]) + np.sum(prob[-k:]))
        if outer >= 0.01 * total:
            warnings.warn(
                "state has >= 1% of its probability in the outer 10% of the grid; "
                "the smearing action will be contaminated by the boundary",
                RuntimeWarning,
                stacklevel=2,
            )
    lam = x[None, :] - x[:, None]
    kernel = (s.mass / (2.0 * np.sqrt(np.pi))) * np.exp(-s.mass**2 * lam**2 / 4.0)
    midpoint = 0.5 * (x[:, None] + x[None, :])
    out = dx * np.sum(kernel * midpoint * psi[None, :], axis=1)
    return GridState(out, state.grid, state.measure, state.smearing)


def apply_fuzzy_position_fourier(state: GridState, s: SmearingParams) -> GridState:
    """Dual route: conjugate with the half-Gaussian in momentum space via FFT.

    result = G(p) . FT[ x . IFT[ G(p) . FT[psi] ] ] transformed back, which is
    the momentum-basis matrix action expressed with spectral accuracy.
    """
    x = state.grid.points
    dx = state.grid.spacing
    p = 2.0 * np.pi * np.fft.fftfreq(state.grid.n, d=dx)
    g = s.gaussian(p, half=True)
    work = np.fft.ifft(g * np.fft.fft(state.samples))
    work = np.fft.ifft(g * np.fft.fft(x * work))
    return GridState(work, state.grid, state.measure, state.smearing)


# ----------------------------------------------------------------------------
# commutator checks

_DEFAULT_PROBES = ((2.0, 0.0, 0.0), (2.5, 0.8, 0.0), (3.0, 0.0, 1.0), (2.0, -0.5, 0.5))


def gaussian_probe(grid: MomentumGrid, width: float, x0: float = 0.0, p0: float = 0.0) -> GridState:
    """Normalised Gaussian wavepacket centred at momentum p0 and position x0.

    With X = i d/dp, a state of mean position x0 carries the phase exp(-i x0 p).
    """
    p = grid.points
    psi = np.exp(-((p - p0) ** 2) / (4.0 * width**2) - 1j * x0 * p)
    return GridState(psi, grid).normalize()


def random_smooth_state(grid: MomentumGrid, rng: np.random.Generator, n_components: int = 3) -> GridState:
    """Random superposition of resolved Gaussian wavepackets (for property suites)."""
    scale = grid.cutoff / 8.0
    psi = np.zeros(grid.n, dtype=complex)
    for _ in range(n_components):
        width = scale * rng.uniform(0.4, 2.0)
        p0 = rng.uniform(-2.0, 2.0) * scale
        x0 = rng.uniform(-3.0, 3.0) / scale
        amp = rng.normal() + 1j * rng.normal()
        psi += amp * np.exp(-((grid.points - p0) ** 2) / (4.0 * width**2) + 1j * x0 * grid.points)
    return GridState(psi, grid).normalize()


def verify_commutator_xf_p(
    grid: MomentumGrid,
    s: SmearingParams,
    scheme: str = "central",
    probes: tuple[tuple[float, float, float], ...] = _DEFAULT_PROBES,
) -> float:
    """Max interior deviation of [X_f, P] acting on probe states from i exp(-p^2/m^2).

    Probe widths are in units of the smearing mass; the residual is the
    worst-case interior amplitude of the defect vector divided by the probe's
    peak amplitude, and it decreases at the derivative scheme's order under
    grid refinement.
    """
    xf = build_fuzzy_position_op(grid, s, scheme).entries
    p = grid.points
    comm = xf * p[None, :] - p[:, None] * xf  # [X_f, P] with P diagonal
    target = 1j * s.gaussian(p)
    inner = grid.interior_slice()
    worst = 0.0
    for width, x0, p0 in probes:
        psi = np.exp(-((p - p0 * s.mass) ** 2) / (2.0 * (width * s.mass) ** 2) + 1j * (x0 / s.mass) * p)
        defect = comm @ psi - target * psi
        worst = max(worst, float(np.max(np.abs(defect[inner])) / np.max(np.abs(psi))))
    return worst


def _apply_d1_central(f: np.ndarray, h: float, axis: int) -> np.ndarray:
    out = np.zeros_like(f, dtype=complex)
    fwd = [slice(None)] * f.ndim
    bwd = [slice(None)] * f.ndim
    dst_f = [slice(None)] * f.ndim
    dst_b = [slice(None)] * f.ndim
    fwd[axis], dst_f[axis] = slice(1, None), slice(0, -1)
    bwd[axis], dst_b[axis] = slice(0, -1), slice(1, None)
    out[tuple(dst_f)] += f[tuple(fwd)] / (2.0 * h)
    out[tuple(dst_b)] -= f[tuple(bwd)] / (2.0 * h)
    return out


def verify_spacetime_commutator(
    axis_grid: MomentumGrid,
    s: SmearingParams,
    snyder_width: float = 0.07,
    max_axis_points: int = 128,
) -> SpacetimeCommutatorReport:
    """Check the closed form of the two-component fuzzy-position commutator.

    With G = exp(-(p1^2+p2^2)/2m^2) and X_fi = G X_i G, working out the
    derivative terms gives the exact operator identity

        [X_f1, X_f2] = (2i/m^2) exp(-2P^2/m^2) (P2 X1 - P1 X2),

    the rotation generator dressed by the (commuting, isotropic) smearing
    factor: the smeared positions stop commuting, with strength 1/m^2.  The
    discrete right-hand side uses the symmetrised factor placement, half left
    and half right, which keeps it exactly anti-Hermitian on the grid.  The
    check applies both sides to a smooth anisotropic probe, matrix-free, and
    returns the interior max deviation; it also verifies both sides are
    anti-Hermitian and that a low-momentum state (p^2/m^2 of order 0.01,
    ``snyder_width`` in mass units) feels the undressed combination
    (2i/m^2)(P2 X1 - P1 X2).  An isotropic probe would be useless here: the
    rotation generator annihilates it.
    """
    n = axis_grid.n
    if n > max_axis_points:
        raise MemoryError(f"axis size {n} exceeds the configured cap {max_axis_points}")
    p = axis_grid.points
    h = axis_grid.spacing
    cutoff = axis_grid.cutoff
    k = max(1, int(round(0.15 * n)))
    interior = np.zeros((n, n), dtype=bool)
    interior[k : n - k, k : n - k] = True

    def make_ops(points: np.ndarray, spacing: float):
        p1 = points[:, None] * np.ones((1, n))
        p2 = np.ones((n, 1)) * points[None, :]
        g = np.exp(-(p1**2 + p2**2) / (2.0 * s.mass**2))
        g4 = g**4

        def xop(fld: np.ndarray, axis: int) -> np.ndarray:
            return 1j * _apply_d1_central(fld, spacing, axis)

        def xf(fld: np.ndarray, axis: int) -> np.ndarray:
            return g * xop(g * fld, axis)

        def lhs(fld: np.ndarray) -> np.ndarray:
            return xf(xf(fld, 1), 0) - xf(xf(fld, 0), 1)

        def core(fld: np.ndarray) -> np.ndarray:
            return (2j / s.mass**2) * (p2 * xop(fld, 0) - p1 * xop(fld, 1))

        def rhs(fld: np.ndarray) -> np.ndarray:
            return 0.5 * (g4 * core(fld) + core(g4 * fld))

        return p1, p2, g, lhs, core, rhs

    p1, p2, g, lhs, core, rhs = make_ops(p, h)

    w1, w2 = 0.15 * cutoff, 0.22 * cutoff
    c1, c2 = 0.08 * cutoff, -0.06 * cutoff
    psi = np.exp(-((p1 - c1) ** 2) / (2.0 * w1**2) - ((p2 - c2) ** 2) / (2.0 * w2**2)).astype(complex)
    psi /= np.max(np.abs(psi))
    residual = float(np.max(np.abs((lhs(psi) - rhs(psi))[interior])))

    # anti-Hermiticity through quadratic forms: <u|A u> must be purely imaginary
    rng = np.random.default_rng(7)
    lhs_ah = rhs_ah = 0.0
    for _ in range(4):
        u = (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) * np.exp(
            -(p1**2 + p2**2) / (2.0 * (0.3 * cutoff) ** 2)
        )
        u /= np.sqrt(np.sum(np.abs(u) ** 2) * h * h)
        lhs_ah = max(lhs_ah, abs(np.real(np.sum(np.conj(u) * lhs(u)) * h * h)))
        rhs_ah = max(rhs_ah, abs(np.real(np.sum(np.conj(u) * rhs(u)) * h * h)))

    # large-patch limit on its own, finer momentum window: the narrow state
    # must stay grid-resolved while p^2/m^2 stays small
    wn = snyder_width * s.mass
    ps = np.linspace(-8.0 * wn, 8.0 * wn, n)
    p1s, p2s, gs, lhs_s, core_s, _ = make_ops(ps, ps[1] - ps[0])
    chi = np.exp(
        -((p1s - 0.7 * wn) ** 2) / (2.0 * (0.9 * wn) ** 2) - ((p2s + 0.5 * wn) ** 2) / (2.0 * (1.3 * wn) ** 2)
    ).astype(complex)
    chi /= np.max(np.abs(chi))
    num = np.max(np.abs((lhs_s(chi) - core_s(chi))[interior]))
    den = np.max(np.abs(core_s(chi)[interior]))
    snyder = float(num / den) if den > 0 else float("inf")

    return SpacetimeCommutatorReport(residual, snyder, float(lhs_ah), float(rhs_ah), n, cutoff)


# ----------------------------------------------------------------------------
# uncertainties


def _expect(op: np.ndarray, psi: np.ndarray, dp: float) -> float:
    return float(np.real(np.sum(np.conj(psi) * (op @ psi)) * dp))


def uncertainty_report(state: GridState, s: SmearingParams, scheme: str = "spectral") -> UncertaintyReport:
    """Spreads of the fuzzy position and momentum, the Robertson bound, and dx0.

    Requires a normalised plain-measure state.  dx0 = (2/m) sqrt(<X><P>) is
    reported as None when the product <X><P> is negative.
    """
    if state.measure != "plain":
        raise ContractError("uncertainty_report expects a plain-measure momentum state")
    if abs(state.norm() - 1.0) > _NORM_TOL:
        raise ContractError(f"state is not normalised (norm = {state.norm()!r})")
    psi = state.samples
    grid = state.grid
    dp = grid.spacing
    p = grid.points

    xf = build_fuzzy_position_op(grid, s, scheme).entries
    x = build_position_op(grid, scheme).entries

    mean_xf = _expect(xf, psi, dp)
    mean_xf2 = float(np.real(np.sum(np.abs(xf @ psi) ** 2) * dp))  # <Xf^2> via ||Xf psi||^2
    dxf = float(np.sqrt(max(mean_xf2 - mean_xf**2, 0.0)))

    mean_p = float(np.sum(p * np.abs(psi) ** 2) * dp)
    mean_p2 = float(np.sum(p**2 * np.abs(psi) ** 2) * dp)
    dpu = float(np.sqrt(max(mean_p2 - mean_p**2, 0.0)))

    mean_g = float(np.sum(s.gaussian(p) * np.abs(psi) ** 2) * dp)
    bound = 0.5 * abs(mean_g)

    mean_x = _expect(x, psi, dp)
    prod = mean_x * mean_p
    dx0 = (2.0 / s.mass) * float(np.sqrt(prod)) if prod >= 0 else None
    return UncertaintyReport(dxf, dpu, bound, mean_x, mean_p, dx0)


def symmetrized_product_spread(a: OperatorMatrix, b: OperatorMatrix, state: GridState) -> tuple[float, float]:
    """Spread of the symmetrised product (AB+BA)/2 and its small-spread estimate.

    Returns (Delta((AB)), <A> Delta B + <B> Delta A); the two agree in the
    regime where both relative uncertainties are small.
    """
    psi = state.samples
    dp = state.grid.spacing
    am, bm = a.entries, b.entries
    sym = 0.5 * (am @ bm + bm @ am)
    mean_s = _expect(sym, psi, dp)
    var_s = float(np.real(np.sum(np.abs(sym @ psi) ** 2) * dp)) - mean_s**2
    lhs = float(np.sqrt(max(var_s, 0.0)))

    def spread(op: np.ndarray) -> tuple[float, float]:
        m = _expect(op, psi, dp)
        m2 = float(np.real(np.sum(np.abs(op @ psi) ** 2) * dp))
        return m, float(np.sqrt(max(m2 - m**2, 0.0)))

    mean_a, da = spread(am)
    mean_b, db = spread(bm)
    return lhs, mean_a * db + mean_b * da


# ----------------------------------------------------------------------------
# fuzzy angular momentum


def fuzzy_angular_eigenvalue(k: int, p_rho: float, s: SmearingParams) -> float:
    """Eigenvalue of the planar fuzzy rotation generator: exp(-p_rho^2/m^2) * k."""
    if not isinstance(k, (int, np.integer)):
        raise TypeError("quantum number k must be an integer")
    if p_rho < 0:
        raise ValueError("radial momentum must be nonnegative")
    return float(k) * float(np.exp(-(p_rho**2) / s.mass**2))


def angular_eigenfunction_phase_samples(
    l_fz: float, p_rho: float, s: SmearingParams, n_samples: int = 257
) -> np.ndarray:
    """Angular part of a rotation-generator eigenfunction on the closed interval [0, 2pi].

    Samples exp(i * l_fz * exp(+p_rho^2/m^2) * r) including both endpoints,
    so the periodicity (Hermiticity) constraint can be checked directly.  The
    radial amplitude factor is constant at fixed p_rho and is omitted.
    """
    r = np.linspace(0.0, 2.0 * np.pi, n_samples)
    return np.exp(1j * l_fz * np.exp(p_rho**2 / s.mass**2) * r)


def check_lfz_hermiticity_constraint(phi_samples: np.ndarray, rtol: float = 1e-9) -> bool:
    """True iff the angular samples match at 0 and 2pi within ``rtol`` relative."""
    v = np.asarray(phi_samples)
    a, b = complex(v[0]), complex(v[-1])
    scale = max(abs(a), abs(b))
    if scale == 0.0:
        return True
    return abs(a - b) <= rtol * scale
