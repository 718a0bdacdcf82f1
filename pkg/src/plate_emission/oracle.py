"""Brute-force golden-rule evaluation of the emission rate.

The rate is proportional to

    sum over modes  (1/omega) |A_mode(r) . d|^2  delta(omega - omega0)

and this module evaluates that sum directly: transverse wavevectors on a
polar grid, every longitudinal index up to a cutoff, both polarisations,
with the delta function replaced by a normalised Lorentzian. The mode
profiles come from :mod:`plate_emission.modes`; nothing here depends on
the closed-form sums in :mod:`plate_emission.rates`.

Box quantisation over a transverse area S turns the mode sum into
``S / (2 pi)^2 \\int d^2k`` per longitudinal index, and the squared mode
normalisation is ``2 / (S L)`` (halved for modes constant in z). The same
construction for plane waves in a volume V gives ``1/(2 pi)^3 \\int d^3k``.
Their ratio is independent of S, V, hbar and the coupling prefactor.

Units: ``k0 = omega0 = c = 1``, so lengths are ``l`` and ``s``.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, replace

import numpy as np

from .core import PC, CP, DipoleOrientation, PlateConfiguration, check_geometry
from .modes import ModeDomainError, Polarization, check_mode, longitudinal_wavenumber, normalization_weight, profile_array


class OracleConvergenceError(RuntimeError):
    """Raised when refining the quadrature grid moves the result too much."""

    def __init__(self, message, coarse, fine):
        super().__init__(message)
        self.coarse = coarse
        self.fine = fine


@dataclass(frozen=True)
class QuadratureSpec:
    """Discretisation of the mode sum.

    k_max        transverse wavevector cutoff, in units of k0
    radial       nodes along |k_par| (equivalently along omega)
    angular      nodes in the azimuth of k_par
    delta_width  Lorentzian half-width as a fraction of omega0
    """

    k_max: float = 2.0
    radial: int = 512
    angular: int = 64
    delta_width: float = 1e-6

    def __post_init__(self):
        if self.k_max < 2.0:
            raise ValueError("k_max must be at least 2 k0")
        if self.radial < 512 or self.angular < 64:
            raise ValueError("grid must have at least 512 radial x 64 angular points")
        if not 0.0 < self.delta_width <= 0.05:
            raise ValueError("delta_width must lie in (0, 0.05]")

    def refined(self) -> QuadratureSpec:
        return replace(self, radial=2 * self.radial)


@functools.lru_cache(maxsize=None)
def _gauss_legendre(count):
    return np.polynomial.legendre.leggauss(count)


def lorentzian(x, width):
    return (width / np.pi) / (x * x + width * width)


def _resonance_nodes(lo, hi, count, width):
    """Nodes and weights on [lo, hi] in omega, clustered around omega0 = 1.

    Gauss-Legendre in theta with ``omega = 1 + width * tan(theta)``, which
    keeps a Lorentzian of any width resolved on a fixed node count.
    """
    t_lo = math.atan((lo - 1.0) / width)
    t_hi = math.atan((hi - 1.0) / width)
    x, w = _gauss_legendre(count)
    theta = 0.5 * (t_hi - t_lo) * x + 0.5 * (t_hi + t_lo)
    omega = 1.0 + width * np.tan(theta)
    d_omega = 0.5 * (t_hi - t_lo) * w * width / np.cos(theta) ** 2
    return omega, d_omega


def _azimuth(count):
    phi = 2.0 * np.pi * np.arange(count) / count
    return phi, np.full(count, 2.0 * np.pi / count)


def _canonical(config, l, s):
    check_geometry(l, s)
    if config == PC:
        return CP, float(l), float(l) - float(s)
    return config, float(l), float(s)


def _modes(config, l, k_max):
    n = 0
    while longitudinal_wavenumber(config, n, l) <= k_max:
        for pol in Polarization:
            try:
                check_mode(config, n, pol)
            except ModeDomainError:
                continue
            yield n, pol
        n += 1


def slab_intensity(config: PlateConfiguration, l: float, z, spec: QuadratureSpec) -> tuple[float, float]:
    """Broadened mode sums for a unit dipole along z and along x.

    ``z`` may be a sequence of positions, in which case the sums are
    averaged over them.
    """
    z = np.atleast_1d(np.asarray(z, dtype=float))
    phi, d_phi = _azimuth(spec.angular)
    perp = 0.0
    par = 0.0
    for n, pol in _modes(config, l, spec.k_max):
        kz = longitudinal_wavenumber(config, n, l)
        omega, d_omega = _resonance_nodes(kz, math.hypot(spec.k_max, kz), spec.radial, spec.delta_width)
        kpar = np.sqrt(np.clip(omega**2 - kz**2, 0.0, None))
        kx = (kpar[:, None] * np.cos(phi)[None, :])[..., None]
        ky = (kpar[:, None] * np.sin(phi)[None, :])[..., None]
        field = profile_array(config, n, pol, kx, ky, 0.0, 0.0, z[None, None, :], l)
        # d^2k / omega = (k_par dk_par / omega) dphi = d_omega dphi
        measure = (d_omega * lorentzian(omega - 1.0, spec.delta_width))[:, None] * d_phi[None, :]
        weight = normalization_weight(config, n, pol) / (2.0 * np.pi**2 * l)
        perp += weight * np.sum(measure * np.mean(np.abs(field[..., 2]) ** 2, axis=-1))
        par += weight * np.sum(measure * np.mean(np.abs(field[..., 0]) ** 2, axis=-1))
    return perp, par


def free_space_intensity(spec: QuadratureSpec) -> tuple[float, float]:
    """Broadened plane-wave sums for a unit dipole along z and along x."""
    k, dk = _resonance_nodes(0.0, spec.k_max, spec.radial, spec.delta_width)
    mu, d_mu = _gauss_legendre(spec.angular)
    phi, d_phi = _azimuth(spec.angular)
    sin_t = np.sqrt(1.0 - mu**2)[:, None]
    cos_t = mu[:, None]
    cphi, sphi = np.cos(phi)[None, :], np.sin(phi)[None, :]
    # theta-hat and phi-hat polarisations
    pol_sq_z = sin_t**2 + 0.0 * cphi
    pol_sq_x = (cos_t * cphi) ** 2 + sphi**2
    solid = d_mu[:, None] * d_phi[None, :]
    # d^3k / omega = k dk dOmega
    radial = np.sum(k * dk * lorentzian(k - 1.0, spec.delta_width))
    norm = 1.0 / (8.0 * np.pi**3)
    return norm * radial * np.sum(solid * pol_sq_z), norm * radial * np.sum(solid * pol_sq_x)


def _combine(perp, par, orientation):
    w_perp, w_par = orientation.weights
    return w_perp * perp + w_par * par


def _evaluate(config, l, s, orientation, spec):
    perp, par = slab_intensity(config, l, s, spec)
    free_perp, free_par = free_space_intensity(spec)
    return _combine(perp / free_perp, par / free_par, orientation)


def bruteforce_ratio(config: PlateConfiguration, l: float, s: float, orientation=DipoleOrientation.ISOTROPIC,
                     spec: QuadratureSpec | None = None, check: bool = True) -> float:
    """Emission ratio A21 / A21^0 from direct summation over modes.

    With ``check`` the sum is repeated on a radial grid twice as fine, and
    :class:`OracleConvergenceError` is raised if the two differ by more
    than 0.5 % (relative to ``max(value, 0.05)``).
    """
    orientation = DipoleOrientation.parse(orientation)
    spec = spec or QuadratureSpec()
    config, l, s = _canonical(config, l, s)
    value = _evaluate(config, l, s, orientation, spec)
    if not check:
        return value
    fine = _evaluate(config, l, s, orientation, spec.refined())
    if abs(fine - value) > 5e-3 * max(abs(fine), 0.05):
        raise OracleConvergenceError(
            f"oracle not converged at l={l}, s={s}: {value} vs {fine} on a refined grid", value, fine)
    return fine


@dataclass(frozen=True)
class ConvergenceRow:
    delta_width: float
    radial: int
    angular: int
    ratio: float


def default_ladder() -> list[QuadratureSpec]:
    return [
        QuadratureSpec(delta_width=1e-4, radial=512, angular=64),
        QuadratureSpec(delta_width=1e-5, radial=1024, angular=64),
        QuadratureSpec(delta_width=1e-6, radial=2048, angular=128),
    ]


def convergence_study(config: PlateConfiguration, l: float, s: float, orientation=DipoleOrientation.ISOTROPIC,
                      ladder=None) -> list[ConvergenceRow]:
    ladder = list(ladder) if ladder is not None else default_ladder()
    if len(ladder) < 3:
        raise ValueError("a convergence study needs at least three refinements")
    orientation = DipoleOrientation.parse(orientation)
    config, l, s = _canonical(config, l, s)
    return [
        ConvergenceRow(spec.delta_width, spec.radial, spec.angular, _evaluate(config, l, s, orientation, spec))
        for spec in ladder
    ]


def free_space_selftest(config: PlateConfiguration, l: float = 1e4, spec: QuadratureSpec | None = None,
                        z_points: int = 2) -> tuple[float, float]:
    """Free-space normalisation computed two ways.

    Returns the orientation-averaged plane-wave sum and the same quantity
    from a very wide slab, averaged over ``z_points`` midpoint positions.
    """
    spec = spec or QuadratureSpec()
    z = (np.arange(z_points) + 0.5) * l / z_points
    perp, par = slab_intensity(config, l, z, spec)
    free_perp, free_par = free_space_intensity(spec)
    iso = DipoleOrientation.ISOTROPIC
    return _combine(free_perp, free_par, iso), _combine(perp, par, iso)
