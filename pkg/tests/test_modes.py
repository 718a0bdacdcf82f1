import itertools
import math

import numpy as np
import pytest

from plate_emission.core import CC, CP, PC, PP
from plate_emission.modes import (
    ModeDomainError,
    ModeIndex,
    Polarization,
    boundary_residual,
    check_mode,
    divergence_residual,
    longitudinal_wavenumber,
    max_mode_index,
    mode_onsets,
    mode_profile,
    normalization_weight,
)

TE, TM = Polarization.TE, Polarization.TM
K_PARS = [(0.0, 0.0), (1.3, -0.7), (0.0, 4.2), (-12.5, 3.1)]


def valid_modes(config, n_max=8):
    for n, pol in itertools.product(range(n_max + 1), Polarization):
        try:
            check_mode(config, n, pol)
        except ModeDomainError:
            continue
        yield n, pol


def test_cp_te_vanishes_on_conductor():
    value = mode_profile(CP, ModeIndex((0.8, 0.3), 0, TE), (0.4, -1.0, 0.0), 1.0)
    assert np.abs(value[:2]).max() == 0.0


def test_pp_te_ground_mode_is_maximal_at_plate():
    value = mode_profile(PP, ModeIndex((0.8, 0.3), 0, TE), (0.0, 0.0, 0.0), 1.0)
    assert np.linalg.norm(value) == pytest.approx(1.0)


def test_cp_tm_axial_part_vanishes_on_permeable_plate():
    value = mode_profile(CP, ModeIndex((0.8, 0.3), 0, TM), (0.0, 0.0, 1.0), 1.0)
    assert abs(value[2]) < 1e-16


@pytest.mark.parametrize("config", [CC, CP, PP])
@pytest.mark.parametrize("k_par", K_PARS)
def test_boundary_conditions_hold_for_every_mode(config, k_par):
    for n, pol in valid_modes(config):
        if n == 0 and k_par == (0.0, 0.0) and config != CP:
            continue
        for separation in (1.0, 0.37, 25.0):
            assert boundary_residual(config, ModeIndex(k_par, n, pol), separation) <= 1e-12


@pytest.mark.parametrize("config, n, pol", [(CP, 3, TE), (PP, 2, TM), (CC, 1, TE)])
def test_boundary_residual_examples(config, n, pol):
    assert boundary_residual(config, ModeIndex((0.9, 0.4), n, pol)) <= 1e-12


@pytest.mark.parametrize("config", [CC, CP, PP])
def test_te_modes_are_transverse(config):
    z = np.linspace(0.0, 1.0, 17)
    for n, pol in valid_modes(config):
        if pol is not TE:
            continue
        for zi in z:
            assert mode_profile(config, ModeIndex((0.5, 1.5), n, TE), (0.1, 0.2, zi), 1.0)[2] == 0


def test_null_modes_are_rejected():
    with pytest.raises(ModeDomainError):
        mode_profile(PP, ModeIndex((1.0, 0.0), 0, TM), (0.0, 0.0, 0.5), 1.0)
    with pytest.raises(ModeDomainError):
        mode_profile(CC, ModeIndex((1.0, 0.0), 0, TE), (0.0, 0.0, 0.5), 1.0)
    with pytest.raises(ModeDomainError):
        ModeIndex((1.0, 0.0), -1, TE)
    with pytest.raises(ModeDomainError):
        mode_profile(PC, ModeIndex((1.0, 0.0), 1, TE), (0.0, 0.0, 0.5), 1.0)


def test_zero_wavevector_is_not_a_mode():
    with pytest.raises(ModeDomainError):
        mode_profile(CC, ModeIndex((0.0, 0.0), 0, TM), (0.0, 0.0, 0.5), 1.0)


def test_position_outside_slab_is_rejected():
    with pytest.raises(ValueError):
        mode_profile(CP, ModeIndex((1.0, 0.0), 1, TE), (0.0, 0.0, 1.5), 1.0)


def test_constant_modes_carry_half_weight():
    assert normalization_weight(PP, 0, TE) == 0.5
    assert normalization_weight(CC, 0, TM) == 0.5
    assert normalization_weight(CP, 0, TE) == 1.0
    assert normalization_weight(PP, 1, TM) == 1.0


def test_longitudinal_wavenumbers():
    assert longitudinal_wavenumber(CP, 0, 2.0) == pytest.approx(math.pi / 4)
    assert longitudinal_wavenumber(PP, 3, 2.0) == pytest.approx(1.5 * math.pi)
    assert longitudinal_wavenumber(CC, 3, 2.0) == pytest.approx(1.5 * math.pi)
    # CP spectrum is half-integer, PP and CC integer
    n = np.arange(50)
    cp = longitudinal_wavenumber(CP, n, 1.0) / math.pi
    pp = longitudinal_wavenumber(PP, n, 1.0) / math.pi
    np.testing.assert_allclose(cp - np.floor(cp), 0.5, atol=1e-12)
    np.testing.assert_allclose(pp, np.round(pp), atol=1e-12)


@pytest.mark.parametrize(
    "config, l, expected",
    [(CP, math.pi, 0), (CP, 1.0, -1), (PP, 2.5 * math.pi, 2), (CC, 2.5 * math.pi, 2), (PP, 1.0, 0), (CP, 5.0, 1)],
)
def test_max_mode_index(config, l, expected):
    assert max_mode_index(config, l) == expected


def test_mode_onsets():
    assert mode_onsets(CP, 5.0) == pytest.approx([math.pi / 2, 1.5 * math.pi])
    assert mode_onsets(PP, 7.0) == pytest.approx([math.pi, 2 * math.pi])


def test_cp_tm_divergence_small():
    mode = ModeIndex((1.3, -0.7), 1, TM)
    k = math.hypot(1.3, -0.7, longitudinal_wavenumber(CP, 1, 1.0))
    assert divergence_residual(CP, mode, (0.2, 0.1, 0.37), 1.0, h=1e-4) < 1e-6 * k


def test_te_divergence_vanishes():
    # k_par along an axis: the only non-zero component is constant along its own axis
    for n in range(4):
        assert divergence_residual(PP, ModeIndex((2.0, 0.0), n, TE), (0.3, 0.2, 0.6)) < 1e-10
    # generic direction: only the finite-difference truncation remains
    assert divergence_residual(PP, ModeIndex((1.3, -0.7), 2, TE), (0.3, 0.2, 0.6), h=1e-5) < 1e-10


@pytest.mark.parametrize("config", [CC, CP, PP])
def test_divergence_converges_at_second_order(config):
    position = (0.2, 0.1, 0.37)
    for n in (1, 2, 3):
        mode = ModeIndex((1.3, -0.7), n, TM)
        coarse = divergence_residual(config, mode, position, 1.0, h=2e-3)
        fine = divergence_residual(config, mode, position, 1.0, h=1e-3)
        assert 3.5 <= coarse / fine <= 4.5


def _printed_pp_tm(kx, ky, n, x, y, z, L):
    """PP TM profile with -i on the khat term, the opposite sign to the package."""
    kpar = math.hypot(kx, ky)
    kz = n * math.pi / L
    k = math.hypot(kpar, kz)
    phase = np.exp(1j * (kx * x + ky * y))
    trans = -1j * kz * math.cos(kz * z) / k
    return np.array([kx / kpar * trans, ky / kpar * trans, kpar * math.sin(kz * z) / k]) * phase


def test_pp_tm_sign_is_the_divergence_free_one():
    kx, ky, n, L, h = 1.3, -0.7, 2, 1.0, 1e-5
    point = np.array([0.2, 0.1, 0.37])
    div = 0j
    for axis in range(3):
        step = np.zeros(3)
        step[axis] = h
        div += (_printed_pp_tm(kx, ky, n, *(point + step), L)[axis]
                - _printed_pp_tm(kx, ky, n, *(point - step), L)[axis]) / (2 * h)
    assert abs(div) > 1.0
    assert divergence_residual(PP, ModeIndex((kx, ky), n, TM), tuple(point), L, h=h) < 1e-8
    # same magnitudes either way
    ours = mode_profile(PP, ModeIndex((kx, ky), n, TM), tuple(point), L)
    np.testing.assert_allclose(np.abs(ours), np.abs(_printed_pp_tm(kx, ky, n, *point, L)), rtol=1e-14)


def test_pp_profiles_mirror_symmetric_in_magnitude_cp_not():
    L = 1.0
    z = np.linspace(0.0, L, 33)
    for n, pol in valid_modes(PP, 5):
        mode = ModeIndex((0.7, 0.2), n, pol)
        for zi in z:
            a = np.abs(mode_profile(PP, mode, (0.0, 0.0, zi), L))
            b = np.abs(mode_profile(PP, mode, (0.0, 0.0, L - zi), L))
            np.testing.assert_allclose(a, b, atol=1e-12)
    mode = ModeIndex((0.7, 0.2), 1, TE)
    a = np.abs(mode_profile(CP, mode, (0.0, 0.0, 0.1), L))
    b = np.abs(mode_profile(CP, mode, (0.0, 0.0, 0.9), L))
    assert np.max(np.abs(a - b)) > 1e-3
