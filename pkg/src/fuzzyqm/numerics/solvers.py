"""Scalar minimisation and root bracketing.

Both solvers are deterministic: identical inputs produce bit-identical
outputs (pure floating-point arithmetic, no randomness, no tolerance-dependent
early exits that depend on timing).
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from ..errors import BracketingError

_GOLDEN = 0.5 * (np.sqrt(5.0) - 1.0)


def minimize_scalar(
    f: Callable[[float], float],
    bracket: tuple[float, float],
    tol: float = 1e-9,
    scan_points: int = 200,
    log_spaced: bool = False,
) -> tuple[float, float]:
    """Locate a local minimum of f inside ``bracket`` by scan plus golden section.

    The bracket must contain an interior minimum: the scan has to find a
    point with f(mid) below both neighbours, otherwise a BracketingError is
    raised.  Returns (x_min, f(x_min)) with |x_min - true minimiser| <= tol
    for unimodal f.
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    if not hi > lo:
        raise BracketingError(f"empty bracket ({lo}, {hi})")
    if log_spaced:
        if lo <= 0:
            raise BracketingError("log-spaced scan needs a positive bracket")
        xs = np.logspace(np.log10(lo), np.log10(hi), scan_points)
    else:
        xs = np.linspace(lo, hi, scan_points)
    fs = np.array([f(float(x)) for x in xs])
    i = int(np.argmin(fs))
    if i == 0 or i == len(xs) - 1:
        raise BracketingError(
            f"no interior minimum in ({lo}, {hi}): scan minimum sits at the boundary x={xs[i]!r}"
        )
    a, b = float(xs[i - 1]), float(xs[i + 1])
    return golden_section(f, a, b, tol)


def golden_section(
    f: Callable[[float], float], a: float, b: float, tol: float = 1e-9
) -> tuple[float, float]:
    """Golden-section search on [a, b]; assumes a single minimum inside."""
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while (b - a) > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def find_root(
    f: Callable[[float], float],
    bracket: tuple[float, float],
    tol: float = 1e-10,
    max_iter: int = 200,
) -> float:
    """Brent's method with a bisection fallback; guaranteed convergence.

    Requires f(lo) * f(hi) < 0.  Stops when the bracket width falls below
    ``tol`` (plus machine-precision slack) or an exact zero is hit.
    """
    a, b = float(bracket[0]), float(bracket[1])
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if fa * fb > 0:
        raise BracketingError(f"no sign change: f({a})={fa!r}, f({b})={fb!r}")
    c, fc = a, fa
    d = e = b - a
    eps = np.finfo(float).eps
    for _ in range(max_iter):
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        tol1 = 2.0 * eps * abs(b) + 0.5 * tol
        m = 0.5 * (c - b)
        if abs(m) <= tol1 or fb == 0.0:
            return b
        if abs(e) < tol1 or abs(fa) <= abs(fb):
            d = e = m
        else:
            s = fb / fa
            if a == c:
                p = 2.0 * m * s
                q = 1.0 - s
            else:
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0:
                q = -q
            else:
                p = -p
            s, e = e, d
            if 2.0 * p < 3.0 * m * q - abs(tol1 * q) and p < abs(0.5 * s * q):
                d = p / q
            else:
                d = e = m
        a, fa = b, fb
        if abs(d) > tol1:
            b += d
        else:
            b += tol1 if m > 0 else -tol1
        fb = f(b)
        if (fb > 0) == (fc > 0):
            c, fc = a, fa
            d = e = b - a
    return b
