"""Vacuum mode functions of the vector potential between two plates.

Profiles are *reduced*: the ``sqrt(2/V)`` normalisation prefactor is
dropped. A mode that is constant in z (PP TE with n = 0, CC TM with n = 0)
is properly normalised by ``sqrt(1/V)`` instead, which is reported by
:func:`normalization_weight` as a relative weight of 1/2 on ``|A|^2``.

With ``khat`` the unit transverse wavevector, ``kz`` the longitudinal
wavenumber and ``k = sqrt(kpar^2 + kz^2)``, the profiles (times the plane
wave ``exp(i kpar . r)``) are

    CP  TE  (khat x zhat) sin(kz z)
        TM  [kpar zhat cos(kz z) - i kz khat sin(kz z)] / k      kz = (n + 1/2) pi / L
    PP  TE  (khat x zhat) cos(kz z)
        TM  [kpar zhat sin(kz z) + i kz khat cos(kz z)] / k      kz = n pi / L
    CC  TE  (khat x zhat) sin(kz z)                              n >= 1
        TM  [kpar zhat cos(kz z) - i kz khat sin(kz z)] / k      kz = n pi / L

All profiles are divergence free. Lengths are in arbitrary but consistent
units; wavevectors are in inverse units of the same length.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import CC, CP, PC, PP, Material, PlateConfiguration


class ModeDomainError(ValueError):
    """Raised when a mode index does not describe a mode of a configuration."""


class Polarization(enum.Enum):
    TE = 1
    TM = 2


@dataclass(frozen=True)
class ModeIndex:
    k_par: tuple[float, float]
    n: int
    pol: Polarization

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise ModeDomainError(f"longitudinal index must be a non-negative integer, got {self.n}")
        kx, ky = self.k_par
        if not (math.isfinite(kx) and math.isfinite(ky)):
            raise ModeDomainError("transverse wavevector must be finite")

    @property
    def k_par_norm(self) -> float:
        return math.hypot(*self.k_par)


def _require_canonical(config: PlateConfiguration) -> None:
    if config == PC:
        raise ModeDomainError("PC is handled as mirrored CP; canonicalize the configuration first")
    if config not in (CC, CP, PP):
        raise ModeDomainError(f"unknown configuration {config!r}")


def longitudinal_wavenumber(config: PlateConfiguration, n, separation: float):
    _require_canonical(config)
    n = np.asarray(n, dtype=float)
    if config == CP:
        kz = (n + 0.5) * np.pi / separation
    else:
        kz = n * np.pi / separation
    return float(kz) if kz.ndim == 0 else kz


def check_mode(config: PlateConfiguration, n: int, pol: Polarization) -> None:
    """Raise :class:`ModeDomainError` if ``(n, pol)`` is a null mode of ``config``."""
    _require_canonical(config)
    if n < 0:
        raise ModeDomainError("n must be non-negative")
    if n == 0 and config == PP and pol is Polarization.TM:
        raise ModeDomainError("PP TM mode with n = 0 vanishes identically")
    if n == 0 and config == CC and pol is Polarization.TE:
        raise ModeDomainError("CC TE mode with n = 0 vanishes identically")


def normalization_weight(config: PlateConfiguration, n: int, pol: Polarization) -> float:
    """Squared normalisation of a mode relative to ``2/V``."""
    check_mode(config, n, pol)
    if n == 0 and config in (PP, CC):
        return 0.5
    return 1.0


def max_mode_index(config: PlateConfiguration, l: float) -> int:
    """Largest n whose longitudinal wavenumber does not exceed k0.

    ``l = k0 L``. Returns -1 when no mode propagates (CP below l = pi/2).
    A mode exactly at the band edge is included.
    """
    if not l > 0:
        raise ValueError("l must be positive")
    _require_canonical(config)
    if config == CP:
        return math.floor(l / math.pi - 0.5)
    return math.floor(l / math.pi)


def mode_onsets(config: PlateConfiguration, l_max: float) -> list[float]:
    """Separations ``l <= l_max`` at which a new mode becomes resonant."""
    _require_canonical(config)
    offset = 0.5 if config == CP else 0.0
    first = 0 if config == CP else 1
    onsets = []
    n = first
    while (n + offset) * math.pi <= l_max:
        onsets.append((n + offset) * math.pi)
        n += 1
    return onsets


def distance_to_onset(config: PlateConfiguration, l: float) -> float:
    onsets = mode_onsets(config, l + math.pi)
    return min(abs(l - x) for x in onsets)


def _z_factors(config, pol, kz, z):
    """Longitudinal shape of the transverse and z parts and their z-derivatives.

    Returns ``(t, dt, a, da)``: the transverse part is proportional to
    ``t(z)``, the z part to ``a(z)``.
    """
    sin = np.sin(kz * z)
    cos = np.cos(kz * z)
    if config == PP:
        if pol is Polarization.TE:
            return cos, -kz * sin, 0.0 * z, 0.0 * z
        return cos, -kz * sin, sin, kz * cos
    # CP and CC share the conductor-at-zero structure
    if pol is Polarization.TE:
        return sin, kz * cos, 0.0 * z, 0.0 * z
    return sin, kz * cos, cos, -kz * sin


def _profile_parts(config, n, pol, kx, ky, z, separation):
    kx = np.asarray(kx, dtype=float)
    ky = np.asarray(ky, dtype=float)
    z = np.asarray(z, dtype=float)
    kz = longitudinal_wavenumber(config, n, separation)
    kpar = np.hypot(kx, ky)
    safe = np.where(kpar > 0.0, kpar, 1.0)
    # khat defaults to xhat at normal incidence
    hx = np.where(kpar > 0.0, kx / safe, 1.0)
    hy = np.where(kpar > 0.0, ky / safe, 0.0)
    k = np.hypot(kpar, kz)
    t, dt, a, da = _z_factors(config, pol, kz, z)
    if pol is Polarization.TE:
        # khat x zhat = (hy, -hx, 0)
        ex, ey, ez = hy + 0j, -hx + 0j, 0j * hx
        coeff_t, coeff_z = 1.0 + 0j, 0j
    else:
        sign = 1.0 if config == PP else -1.0
        ex, ey, ez = hx + 0j, hy + 0j, 1.0 + 0j * hx
        coeff_t = sign * 1j * kz / k
        coeff_z = kpar / k + 0j
    return (ex, ey, ez), coeff_t, coeff_z, (t, dt, a, da)


def _plane_wave(kx, ky, x, y):
    if np.ndim(x) == 0 and np.ndim(y) == 0 and x == 0.0 and y == 0.0:
        return 1.0
    return np.exp(1j * (np.asarray(kx) * np.asarray(x) + np.asarray(ky) * np.asarray(y)))


def profile_array(config: PlateConfiguration, n: int, pol: Polarization, kx, ky, x, y, z, separation: float):
    """Vectorised reduced profile; arguments broadcast, result has a trailing axis of 3."""
    check_mode(config, n, pol)
    (ex, ey, ez), ct, cz, (t, _, a, _) = _profile_parts(config, n, pol, kx, ky, z, separation)
    phase = _plane_wave(kx, ky, x, y)
    trans = ct * t * phase
    axial = cz * a * phase
    return np.stack(np.broadcast_arrays(ex * trans, ey * trans, ez * axial), axis=-1)


def profile_dz_array(config: PlateConfiguration, n: int, pol: Polarization, kx, ky, x, y, z, separation: float):
    """Analytic z-derivative of :func:`profile_array`."""
    check_mode(config, n, pol)
    (ex, ey, ez), ct, cz, (_, dt, _, da) = _profile_parts(config, n, pol, kx, ky, z, separation)
    phase = _plane_wave(kx, ky, x, y)
    trans = ct * dt * phase
    axial = cz * da * phase
    return np.stack(np.broadcast_arrays(ex * trans, ey * trans, ez * axial), axis=-1)


def _check_position(position, separation, strict=False):
    x, y, z = (float(c) for c in position)
    if not separation > 0:
        raise ValueError("separation must be positive")
    inside = 0.0 < z < separation if strict else 0.0 <= z <= separation
    if not inside:
        raise ValueError(f"z = {z} lies outside the slab [0, {separation}]")
    return x, y, z


def _check_frequency(config, mode, separation):
    k = math.hypot(mode.k_par_norm, longitudinal_wavenumber(config, mode.n, separation))
    if k == 0.0:
        raise ModeDomainError("a mode with zero wavevector is not a field mode")
    return k


def mode_profile(config: PlateConfiguration, mode: ModeIndex, position, separation: float) -> np.ndarray:
    """Complex vector ``(Ax, Ay, Az)`` of one mode at ``position = (x, y, z)``."""
    x, y, z = _check_position(position, separation)
    _check_frequency(config, mode, separation)
    kx, ky = mode.k_par
    return profile_array(config, mode.n, mode.pol, kx, ky, x, y, z, separation)


def boundary_residual(config: PlateConfiguration, mode: ModeIndex, separation: float = 1.0) -> float:
    """Largest violation of the plate boundary conditions by one mode.

    A conducting plate requires ``Ax = Ay = dAz/dz = 0``; a permeable plate
    requires ``dAx/dz = dAy/dz = Az = 0``. Derivatives are analytic and are
    divided by ``k`` so the residual is relative to unit amplitude.
    """
    kx, ky = mode.k_par
    scale = 1.0 / _check_frequency(config, mode, separation)
    worst = 0.0
    for z, material in ((0.0, config.lower), (separation, config.upper)):
        value = profile_array(config, mode.n, mode.pol, kx, ky, 0.0, 0.0, z, separation)
        slope = profile_dz_array(config, mode.n, mode.pol, kx, ky, 0.0, 0.0, z, separation) * scale
        if material is Material.CONDUCTOR:
            terms = (value[0], value[1], slope[2])
        else:
            terms = (slope[0], slope[1], value[2])
        worst = max(worst, max(abs(complex(v)) for v in terms))
    return worst


def divergence_residual(config: PlateConfiguration, mode: ModeIndex, position, separation: float = 1.0,
                        h: float = 1e-4) -> float:
    """``|div A|`` from central differences of step ``h`` at an interior point."""
    x, y, z = _check_position(position, separation, strict=True)
    if not (z - h > 0.0 and z + h < separation):
        raise ValueError("finite-difference stencil leaves the slab")
    _check_frequency(config, mode, separation)
    kx, ky = mode.k_par
    point = np.array([x, y, z])
    div = 0j
    for axis in range(3):
        step = np.zeros(3)
        step[axis] = h
        fwd = profile_array(config, mode.n, mode.pol, kx, ky, *(point + step), separation)
        bwd = profile_array(config, mode.n, mode.pol, kx, ky, *(point - step), separation)
        div += (fwd[axis] - bwd[axis]) / (2.0 * h)
    return abs(div)
