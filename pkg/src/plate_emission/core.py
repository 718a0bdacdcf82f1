"""Domain types shared by the mode, rate, oracle and CLI modules.

Every rate ratio in this package is dimensionless and is parametrised by

    l = k0 * L   (plate separation in units of 1/k0)
    s = k0 * z   (atom position, measured from the lower plate)

so hbar, c and the quantisation volume never enter a ratio code path.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np


class GeometryError(ValueError):
    """Raised for an invalid plate separation or atom position."""


class Material(enum.Enum):
    CONDUCTOR = "conductor"  # epsilon -> infinity
    PERMEABLE = "permeable"  # mu -> infinity


@dataclass(frozen=True)
class PlateConfiguration:
    """Materials of the plate at z = 0 (``lower``) and at z = L (``upper``)."""

    lower: Material
    upper: Material

    @property
    def code(self) -> str:
        return self.lower.value[0] + self.upper.value[0]

    @classmethod
    def from_code(cls, code: str) -> PlateConfiguration:
        """Build a configuration from a two-letter code such as ``"cp"``."""
        lookup = {"c": Material.CONDUCTOR, "p": Material.PERMEABLE}
        code = code.strip().lower()
        if len(code) != 2 or any(ch not in lookup for ch in code):
            raise ValueError(f"unknown plate configuration {code!r}")
        return cls(lookup[code[0]], lookup[code[1]])

    def __str__(self) -> str:
        return self.code.upper()


CC = PlateConfiguration(Material.CONDUCTOR, Material.CONDUCTOR)
CP = PlateConfiguration(Material.CONDUCTOR, Material.PERMEABLE)
PC = PlateConfiguration(Material.PERMEABLE, Material.CONDUCTOR)
PP = PlateConfiguration(Material.PERMEABLE, Material.PERMEABLE)


@dataclass(frozen=True)
class Geometry:
    """Dimensionless separation ``l = k0 L`` and atom position ``s = k0 z``."""

    l: float
    s: float

    def __post_init__(self):
        check_geometry(self.l, self.s)


def check_geometry(l, s) -> None:
    """Raise :class:`GeometryError` unless ``l > 0`` and ``0 <= s <= l``.

    ``s`` may be an array; every entry is checked.
    """
    l = float(l)
    if not math.isfinite(l) or l <= 0.0:
        raise GeometryError(f"separation l must be positive and finite, got {l}")
    s_arr = np.asarray(s, dtype=float)
    if not np.all(np.isfinite(s_arr)):
        raise GeometryError("atom position s must be finite")
    if np.any(s_arr < 0.0):
        raise GeometryError("atom position s must be non-negative")
    if np.any(s_arr > l):
        raise GeometryError(f"s exceeds l (l = {l})")


@dataclass(frozen=True)
class Transition:
    """Atomic transition in Gaussian units.

    ``omega0`` in rad/s, squared dipole components in statC^2 cm^2.
    """

    omega0: float
    d_par_sq: float = 0.0
    d_perp_sq: float = 0.0

    def __post_init__(self):
        if not self.omega0 > 0.0:
            raise ValueError("omega0 must be positive")
        if self.d_par_sq < 0.0 or self.d_perp_sq < 0.0:
            raise ValueError("squared dipole magnitudes must be non-negative")

    @property
    def d_sq(self) -> float:
        return self.d_par_sq + self.d_perp_sq

    @classmethod
    def isotropic(cls, omega0: float, d_sq: float) -> Transition:
        w_perp, w_par = DipoleOrientation.ISOTROPIC.weights
        return cls(omega0, d_par_sq=w_par * d_sq, d_perp_sq=w_perp * d_sq)


class DipoleOrientation(enum.Enum):
    PERPENDICULAR = "perp"
    PARALLEL = "par"
    ISOTROPIC = "iso"

    @property
    def weights(self) -> tuple[float, float]:
        """(perpendicular, parallel) weights of this orientation."""
        return {
            DipoleOrientation.PERPENDICULAR: (1.0, 0.0),
            DipoleOrientation.PARALLEL: (0.0, 1.0),
            DipoleOrientation.ISOTROPIC: (1.0 / 3.0, 2.0 / 3.0),
        }[self]

    @classmethod
    def parse(cls, value) -> DipoleOrientation:
        if isinstance(value, cls):
            return value
        aliases = {
            "perp": cls.PERPENDICULAR,
            "perpendicular": cls.PERPENDICULAR,
            "par": cls.PARALLEL,
            "parallel": cls.PARALLEL,
            "iso": cls.ISOTROPIC,
            "isotropic": cls.ISOTROPIC,
        }
        try:
            return aliases[str(value).strip().lower()]
        except KeyError:
            raise ValueError(f"unknown dipole orientation {value!r}") from None


@dataclass(frozen=True)
class RateRatios:
    """Emission rates relative to free space.

    ``iso_ratio`` is the orientation-weighted total A21/A21^0; for a pure
    perpendicular or parallel dipole it equals the one non-zero component.
    """

    perp_ratio: float
    par_ratio: float
    iso_ratio: float

    def __post_init__(self):
        for name in ("perp_ratio", "par_ratio", "iso_ratio"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0.0:
                raise ValueError(f"{name} must be finite and non-negative, got {value}")

    @classmethod
    def combine(cls, perp: float, par: float, orientation: DipoleOrientation) -> RateRatios:
        w_perp, w_par = orientation.weights
        if orientation is DipoleOrientation.PERPENDICULAR:
            return cls(perp, 0.0, perp)
        if orientation is DipoleOrientation.PARALLEL:
            return cls(0.0, par, par)
        return cls(perp, par, w_perp * perp + w_par * par)


def canonicalize(config: PlateConfiguration, geom: Geometry) -> tuple[PlateConfiguration, Geometry]:
    """Map a configuration onto one of CC, CP, PP.

    A permeable plate at z = 0 facing a conductor at z = L is the mirror
    image of CP, so it is returned as CP with ``s -> l - s``.
    """
    if config == PC:
        return CP, Geometry(geom.l, geom.l - geom.s)
    return config, geom
