"""Closed-form spontaneous emission rates between plates.

Each ratio is a finite sum over the longitudinal modes that can resonate
with the transition, ``kz(n) <= k0``. In units of ``k0`` (so ``l = k0 L``
and ``s = k0 z``), with ``q_n = kz(n) / k0``:

    CP  perp  (3 pi / l)    sum_{n>=0} (1 - q_n^2) cos^2(q_n s)     q_n = (n + 1/2) pi / l
        par   (3 pi / 2 l)  sum_{n>=0} (1 + q_n^2) sin^2(q_n s)
    PP  perp  (3 pi / l)    sum_{n>=1} (1 - q_n^2) sin^2(q_n s)     q_n = n pi / l
        par   (3 pi / 2 l) {1/2 + sum_{n>=1} (1 + q_n^2) cos^2(q_n s)}
    CC  perp  (3 pi / l)   {1/2 + sum_{n>=1} (1 - q_n^2) cos^2(q_n s)}
        par   (3 pi / 2 l)  sum_{n>=1} (1 + q_n^2) sin^2(q_n s)

The standalone 1/2 terms come from modes that are constant in z and so
carry half the normalisation of the standing waves.

``s`` may be a numpy array; the returned ratio then has the same shape.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import (
    CC,
    CP,
    PC,
    PP,
    DipoleOrientation,
    PlateConfiguration,
    RateRatios,
    Transition,
    check_geometry,
)
from .modes import max_mode_index

# Gaussian (CGS) units
HBAR_CGS = 1.054_571_817e-27  # erg s
C_CGS = 2.997_924_58e10  # cm / s


def _resolve(config, l, s):
    check_geometry(l, s)
    s = np.asarray(s, dtype=float)
    if config == PC:
        # mirror image of CP: reflect the atom position
        return CP, float(l), float(l) - s
    return config, float(l), s


def _mode_q(config, l):
    """Resonant longitudinal wavenumbers ``kz / k0`` as an array."""
    top = max_mode_index(config, l)
    if config == CP:
        n = np.arange(0, top + 1)
        return (n + 0.5) * np.pi / l
    n = np.arange(1, top + 1)
    return n * np.pi / l


def _out(value):
    return float(value) if np.ndim(value) == 0 else value


def perp_ratio(config: PlateConfiguration, l: float, s):
    """A21(perp) / A21^0(perp) for a dipole normal to the plates."""
    config, l, s = _resolve(config, l, s)
    q = _mode_q(config, l)
    # clip guards rounding in the band-edge term, which is zero analytically
    weight = np.clip(1.0 - q**2, 0.0, None)
    phase = np.multiply.outer(s, q)
    if config == PP:
        shape = np.sin(phase) ** 2
        constant = 0.0
    else:
        shape = np.cos(phase) ** 2
        constant = 0.5 if config == CC else 0.0
    total = constant + np.sum(weight * shape, axis=-1)
    return _out(3.0 * np.pi / l * total)


def par_ratio(config: PlateConfiguration, l: float, s):
    """A21(par) / A21^0(par) for a dipole parallel to the plates."""
    config, l, s = _resolve(config, l, s)
    q = _mode_q(config, l)
    weight = 1.0 + q**2
    phase = np.multiply.outer(s, q)
    if config == PP:
        shape = np.cos(phase) ** 2
        constant = 0.5
    else:
        shape = np.sin(phase) ** 2
        constant = 0.0
    total = constant + np.sum(weight * shape, axis=-1)
    return _out(1.5 * np.pi / l * total)


def total_ratio(config: PlateConfiguration, l: float, s: float, orientation=DipoleOrientation.ISOTROPIC) -> RateRatios:
    orientation = DipoleOrientation.parse(orientation)
    perp = perp_ratio(config, l, s) if orientation is not DipoleOrientation.PARALLEL else 0.0
    par = par_ratio(config, l, s) if orientation is not DipoleOrientation.PERPENDICULAR else 0.0
    return RateRatios.combine(float(perp), float(par), orientation)


def ratio(config: PlateConfiguration, l: float, s, orientation=DipoleOrientation.ISOTROPIC):
    """Orientation-weighted ratio A21 / A21^0; vectorised over ``s``."""
    w_perp, w_par = DipoleOrientation.parse(orientation).weights
    out = 0.0
    if w_perp:
        out = out + w_perp * np.asarray(perp_ratio(config, l, s))
    if w_par:
        out = out + w_par * np.asarray(par_ratio(config, l, s))
    return _out(out)


def free_space_components(t: Transition, hbar: float = HBAR_CGS, c: float = C_CGS) -> tuple[float, float]:
    """Free-space (parallel, perpendicular) rates ``4 |d|^2 w0^3 / (3 hbar c^3)`` in 1/s."""
    prefactor = 4.0 * t.omega0**3 / (3.0 * hbar * c**3)
    return prefactor * t.d_par_sq, prefactor * t.d_perp_sq


def free_space_rate(t: Transition, hbar: float = HBAR_CGS, c: float = C_CGS) -> float:
    """Einstein A coefficient of the transition in unbounded space."""
    par, perp = free_space_components(t, hbar, c)
    return par + perp


def slab_average(config: PlateConfiguration, l: float, orientation=DipoleOrientation.ISOTROPIC) -> float:
    """Ratio averaged over atom positions ``0 <= s <= l``.

    Every resonant term is a sin^2 or cos^2 of a whole or half-integer
    number of half-periods across the slab, whose average is exactly 1/2.
    """
    orientation = DipoleOrientation.parse(orientation)
    check_geometry(l, 0.0)
    if config == PC:
        config = CP
    q = _mode_q(config, l)
    perp_const = 0.5 if config == CC else 0.0
    par_const = 0.5 if config == PP else 0.0
    perp = 3.0 * np.pi / l * (perp_const + 0.5 * np.sum(np.clip(1.0 - q**2, 0.0, None)))
    par = 1.5 * np.pi / l * (par_const + 0.5 * np.sum(1.0 + q**2))
    w_perp, w_par = orientation.weights
    return float(w_perp * perp + w_par * par)


@dataclass(frozen=True)
class SuppressionReport:
    """Separation below which a ratio vanishes identically.

    ``threshold_l`` is the analytic value, ``numeric_l`` the value found by
    scanning; both are ``None`` when no suppression window exists.
    """

    config: PlateConfiguration
    orientation: DipoleOrientation
    threshold_l: Optional[float]
    numeric_l: Optional[float]
    resolution: float

    @property
    def has_window(self) -> bool:
        return self.threshold_l is not None

    @property
    def confirmed(self) -> bool:
        if self.threshold_l is None or self.numeric_l is None:
            return self.threshold_l is None and self.numeric_l is None
        return abs(self.threshold_l - self.numeric_l) <= self.resolution


def _analytic_threshold(config, orientation):
    perp = orientation is DipoleOrientation.PERPENDICULAR
    if config == CP:
        # no mode at all propagates below the lowest CP cutoff
        return math.pi / 2.0
    if config == PP:
        return math.pi if perp else None
    return None if perp else math.pi


def _vanishes(config, orientation, l, s_scan):
    s = l * s_scan
    values = perp_ratio(config, l, s) if orientation is DipoleOrientation.PERPENDICULAR else par_ratio(config, l, s)
    return not np.any(np.asarray(values) > 0.0)


def scan_threshold(config: PlateConfiguration, orientation, l_max: float = 4.0 * math.pi,
                   step: float = 1e-2, tol: float = 1e-7) -> Optional[float]:
    """Numerically locate the edge of the suppression window.

    Starting from a tiny separation, steps upward until the ratio is
    non-zero and then bisects the bracket. The ratio is sampled at the
    midpoint, and for CP also across the whole slab since CP is not
    mirror symmetric. Returns ``None`` if the ratio is non-zero already at
    the smallest separation.
    """
    orientation = DipoleOrientation.parse(orientation)
    if config == PC:
        config = CP
    s_scan = np.linspace(0.0, 1.0, 201) if config == CP else np.array([0.5])
    lo = 1e-6
    if not _vanishes(config, orientation, lo, s_scan):
        return None
    hi = lo
    while _vanishes(config, orientation, hi, s_scan):
        lo = hi
        hi += step
        if hi > l_max:
            raise RuntimeError(f"ratio still vanishes at l = {l_max}")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _vanishes(config, orientation, mid, s_scan):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def suppression_threshold(config: PlateConfiguration, orientation, resolution: float = 1e-4) -> SuppressionReport:
    """Analytic suppression threshold, confirmed by :func:`scan_threshold`."""
    orientation = DipoleOrientation.parse(orientation)
    if orientation is DipoleOrientation.ISOTROPIC:
        raise ValueError("suppression thresholds are defined per orientation (perp or par)")
    canonical = CP if config == PC else config
    analytic = _analytic_threshold(canonical, orientation)
    numeric = scan_threshold(canonical, orientation, tol=resolution / 10.0)
    return SuppressionReport(config, orientation, analytic, numeric, resolution)
