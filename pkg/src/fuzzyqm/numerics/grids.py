"""Uniform momentum grids and dense operator matrices on them."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import NonHermitianError

_UNIFORMITY_RTOL = 1e-12
_HERMITICITY_RTOL = 1e-10


@dataclass(frozen=True)
class MomentumGrid:
    """Uniformly spaced momentum axis.

    ``kind`` is ``"symmetric"`` for a [-P, P] axis (1-D Cartesian problems)
    or ``"radial"`` for [0, P] (S-state problems).
    """

    points: np.ndarray
    kind: str = "symmetric"

    def __post_init__(self) -> None:
        pts = np.asarray(self.points, dtype=float)
        object.__setattr__(self, "points", pts)
        if pts.ndim != 1 or pts.size < 8:
            raise ValueError(f"grid needs at least 8 points, got shape {pts.shape}")
        steps = np.diff(pts)
        if np.any(steps <= 0):
            raise ValueError("grid points must be strictly increasing")
        h = steps[0]
        # representation error of an N-point axis grows like eps*N, so the
        # per-step tolerance is relative to the spacing and scaled by N
        if np.max(np.abs(steps - h)) > _UNIFORMITY_RTOL * abs(h) * pts.size:
            raise ValueError("grid spacing is not uniform")
        if self.kind not in ("symmetric", "radial"):
            raise ValueError(f"unknown grid kind {self.kind!r}")
        if self.cutoff <= 0:
            raise ValueError("grid cutoff must be positive")

    @classmethod
    def symmetric(cls, n: int, cutoff: float) -> "MomentumGrid":
        """n points on [-cutoff, cutoff], endpoints included."""
        return cls(np.linspace(-cutoff, cutoff, n), kind="symmetric")

    @classmethod
    def radial(cls, n: int, cutoff: float) -> "MomentumGrid":
        """n points on [0, cutoff], endpoints included."""
        return cls(np.linspace(0.0, cutoff, n), kind="radial")

    @property
    def n(self) -> int:
        return int(self.points.size)

    @property
    def spacing(self) -> float:
        return float(self.points[1] - self.points[0])

    @property
    def cutoff(self) -> float:
        return float(np.max(np.abs(self.points)))

    def interior_slice(self, frac: float = 0.1) -> slice:
        """Rows away from the boundary; finite grids cannot represent operators near the cutoff."""
        k = max(1, int(round(frac * self.n)))
        return slice(k, self.n - k)


@dataclass
class OperatorMatrix:
    """Dense operator on a :class:`MomentumGrid` (dimension n, or n**2 for 2-D problems)."""

    entries: np.ndarray
    grid: MomentumGrid
    hermitian: bool = field(default=False)

    def __post_init__(self) -> None:
        a = np.asarray(self.entries)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"operator must be square, got shape {a.shape}")
        n = self.grid.n
        if a.shape[0] not in (n, n * n):
            raise ValueError(f"dimension {a.shape[0]} matches neither grid size {n} nor {n * n}")
        self.entries = a
        if self.hermitian:
            scale = np.max(np.abs(a))
            dev = np.max(np.abs(a - a.conj().T))
            if scale > 0 and dev > _HERMITICITY_RTOL * scale:
                raise NonHermitianError(
                    f"matrix tagged hermitian deviates by {dev:.3e} (allowed {_HERMITICITY_RTOL * scale:.3e})"
                )

    @property
    def n(self) -> int:
        return int(self.entries.shape[0])

    def __matmul__(self, other):
        if isinstance(other, OperatorMatrix):
            return OperatorMatrix(self.entries @ other.entries, self.grid)
        return self.entries @ other
