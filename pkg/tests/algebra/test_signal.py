import math

import numpy as np
import pytest

from algebra.signal import (
    LATTICE_LOG_CONSTANT,
    Grid1D,
    Grid2D,
    GridMask,
    QSignal1D,
    QSignal2D,
    chirp_multiply,
    concentration_epsilon,
    energy,
    inner_product,
    lp_norm,
    moment,
    sample_function,
    scalar_inner,
    shift_samples,
)
from errors import GridError, ParameterError, SignalError
from models import BoxSpec, ChirpedGaussianSpec, GaussianSpec, RandomSpec


def test_centered_grid_coordinates():
    grid = Grid1D.centered(4, 0.5)
    np.testing.assert_array_equal(grid.coordinates(), [-1.0, -0.5, 0.0, 0.5])
    assert grid.is_centered
    assert grid.origin_index() == 2


@pytest.mark.parametrize("n", [0, 3, 7])
def test_odd_or_tiny_sizes_are_rejected(n):
    with pytest.raises(Exception) as info:
        Grid1D(n=n, dx=1.0, x0=0.0)
    assert "even" in str(info.value)


def test_non_positive_spacing_is_rejected():
    with pytest.raises(Exception, match="spacings must be positive"):
        Grid2D(n1=4, n2=4, dx1=0.0, dx2=1.0, x1_0=0.0, x2_0=0.0)


def test_reciprocal_grid_for_positive_b():
    grid = Grid1D.centered(8, 0.5)
    freq = grid.reciprocal(2.0)
    dw = 2 * math.pi / (8 * 0.5)
    assert freq.dx == pytest.approx(dw / 2)
    assert freq.x0 == pytest.approx(-4 * dw / 2)


def test_reciprocal_grid_for_negative_b_is_ascending():
    grid = Grid1D.centered(8, 0.5)
    freq = grid.reciprocal(-1.0)
    omega = grid.reciprocal(1.0).coordinates()
    assert freq.dx > 0
    np.testing.assert_allclose(np.sort(omega / -1.0), freq.coordinates(), atol=1e-14)


def test_frequency_grid_of_square_grid():
    grid = Grid2D.from_extent(16, 20.0)
    freq = grid.frequency_grid(1.0, -2.0)
    assert freq.shape == (16, 16)
    assert freq.dx1 * grid.dx1 * 16 == pytest.approx(2 * math.pi)
    assert freq.dx2 * grid.dx2 * 16 == pytest.approx(math.pi)


def test_grid_mismatch_raises(grid16):
    other = Grid2D.from_extent(16, 10.0)
    f, g = QSignal2D.zeros(grid16), QSignal2D.zeros(other)
    with pytest.raises(GridError):
        inner_product(f, g)


def test_signal_shape_is_checked(grid16):
    with pytest.raises(SignalError):
        QSignal2D(grid16, np.zeros((16, 8, 4)))


def test_signal_samples_are_read_only(random_signal):
    with pytest.raises(ValueError):
        random_signal.samples[0, 0, 0] = 1.0


def test_one_dimensional_signal_embeds_complex_samples():
    grid = Grid1D.centered(4, 1.0)
    f = QSignal1D(grid, np.array([1j, 1, 0, 2 - 1j]))
    np.testing.assert_array_equal(f.samples[0], [0.0, 1.0, 0.0, 0.0])
    np.testing.assert_array_equal(f.samples[3], [2.0, -1.0, 0.0, 0.0])


def test_energy_of_gaussian(unit_gaussian):
    # ∫ e^{-|x|²} dx = π
    assert energy(unit_gaussian) == pytest.approx(math.pi, rel=1e-12)
    assert lp_norm(unit_gaussian, 2) == pytest.approx(math.sqrt(math.pi), rel=1e-12)


def test_lp_norm_limits(random_signal):
    assert lp_norm(random_signal, math.inf) == pytest.approx(random_signal.abs().max())
    with pytest.raises(ParameterError, match="at least 1"):
        lp_norm(random_signal, 0.5)


def test_inner_product_scalar_part(random_signal, other_signal):
    full = inner_product(random_signal, other_signal)
    assert full.scalar == pytest.approx(scalar_inner(random_signal, other_signal), rel=1e-12)
    assert inner_product(random_signal, random_signal).norm() == pytest.approx(energy(random_signal))


def test_axis_spread_of_gaussian(unit_gaussian):
    # ∫ x1² e^{-|x|²} dx = π/2
    assert moment(unit_gaussian, "axis_spread", 1) == pytest.approx(math.pi / 2, rel=1e-10)
    assert moment(unit_gaussian, "radial") == pytest.approx(math.pi, rel=1e-10)


def test_log_radial_moment_with_origin_correction():
    # ∫ ln|x| e^{-|x|²} dx = -γπ/2
    grid = Grid2D.from_extent(256, 32.0)
    g = sample_function(grid, GaussianSpec(k1=0.5, k2=0.5))
    assert moment(g, "log_radial") == pytest.approx(-0.5772156649015329 * math.pi / 2, abs=1e-4)


def test_lattice_log_constant():
    assert LATTICE_LOG_CONSTANT == pytest.approx(1.3105329, abs=1e-7)


def test_unknown_moment_kind(unit_gaussian):
    with pytest.raises(ParameterError):
        moment(unit_gaussian, "cubic")


def test_disk_mask_and_concentration(unit_gaussian):
    mask = GridMask.disk(unit_gaussian.grid, 3.0)
    assert mask.measure() == pytest.approx(math.pi * 9, rel=0.02)
    eps = concentration_epsilon(unit_gaussian, mask)
    # outside energy of e^{-|x|²} beyond r is π e^{-r²}, so ε ≈ e^{-r²/2}
    assert 0.5 * math.exp(-4.5) < eps < 2.0 * math.exp(-4.5)
    radii = [concentration_epsilon(unit_gaussian, GridMask.disk(unit_gaussian.grid, r)) for r in (2.0, 3.0, 4.0)]
    assert radii[0] > radii[1] > radii[2]
    assert concentration_epsilon(unit_gaussian, GridMask.full(unit_gaussian.grid)) == 0.0
    assert concentration_epsilon(unit_gaussian, GridMask.empty(unit_gaussian.grid)) == pytest.approx(1.0)


def test_concentration_of_zero_signal(grid16):
    with pytest.raises(SignalError):
        concentration_epsilon(QSignal2D.zeros(grid16), GridMask.full(grid16))


def test_shift_samples_fills_with_zeros(grid16, random_signal):
    shifted = shift_samples(random_signal, 2, -1)
    np.testing.assert_array_equal(shifted.samples[2:, :-1], random_signal.samples[:-2, 1:])
    assert not np.any(shifted.samples[:2])
    assert not np.any(shifted.samples[:, -1])


def test_sample_function_descriptors(grid16):
    box = sample_function(grid16, BoxSpec(half_width1=2.5, half_width2=1.25))
    assert set(np.unique(box.samples[..., 0])) == {0.0, 1.0}
    chirped = sample_function(grid16, ChirpedGaussianSpec(a1=1.0, a2=0.5))
    gauss = sample_function(grid16, GaussianSpec())
    # chirps are unimodular
    np.testing.assert_allclose(chirped.abs(), gauss.abs(), atol=1e-14)
    assert sample_function(grid16, {"kind": "random", "seed": 3}).max_abs_diff(
        sample_function(grid16, RandomSpec(seed=3))
    ) == 0.0


def test_unknown_descriptor(grid16):
    with pytest.raises(SignalError):
        sample_function(grid16, {"kind": "sawtooth"})


def test_gaussian_rates_must_be_positive():
    with pytest.raises(Exception, match="Gaussian rates k must be positive"):
        GaussianSpec(k1=0.0)


def test_cauchy_schwarz(random_signal, other_signal):
    lhs = abs(scalar_inner(random_signal, other_signal))
    assert lhs <= lp_norm(random_signal) * lp_norm(other_signal)
    assert scalar_inner(random_signal, other_signal) == pytest.approx(scalar_inner(other_signal, random_signal), rel=1e-14)


def test_disjoint_supports_are_orthogonal(random_signal, other_signal):
    inside = GridMask.disk(random_signal.grid, 2.0)
    assert scalar_inner(inside.apply(random_signal), inside.complement().apply(other_signal)) == 0.0


@pytest.mark.parametrize("p", [1.0, 2.0, 3.5, math.inf])
def test_masking_never_increases_norm(random_signal, p):
    for radius in (1.0, 3.0, 6.0):
        assert lp_norm(GridMask.disk(random_signal.grid, radius).apply(random_signal), p) <= lp_norm(random_signal, p)


@pytest.mark.parametrize("radius", [0.5, 2.0, 4.0])
def test_concentration_and_captured_energy_sum_to_one(random_signal, radius):
    mask = GridMask.disk(random_signal.grid, radius)
    eps = concentration_epsilon(random_signal, mask)
    captured = energy(mask.apply(random_signal)) / energy(random_signal)
    assert eps**2 + captured == pytest.approx(1.0, abs=1e-13)


@pytest.mark.parametrize("p", [1.0, 2.0, 3.5, math.inf])
@pytest.mark.parametrize("side,axis", [("left", "i"), ("right", "j"), ("left", "j")])
def test_chirps_preserve_norms(random_signal, side, axis, p):
    chirped = chirp_multiply(random_signal, side, axis, 0.7, -1.3, 0.2)
    assert lp_norm(chirped, p) == pytest.approx(lp_norm(random_signal, p), rel=1e-13)


def test_chirp_then_negated_chirp_is_identity(random_signal):
    there = chirp_multiply(random_signal, "left", "i", 0.7, -1.3)
    back = chirp_multiply(there, "left", "i", -0.7, 1.3)
    np.testing.assert_allclose(back.samples, random_signal.samples, atol=1e-14)


def test_chirp_rejects_unknown_side(random_signal):
    with pytest.raises(ParameterError, match="side"):
        chirp_multiply(random_signal, "middle", "i", 1.0, 0.0)


def test_norm_of_constant_and_gaussian_peak(grid16, unit_gaussian):
    ones = QSignal2D.from_real(grid16, np.ones(grid16.shape))
    # the square has side L = 20
    assert lp_norm(ones, 2) == pytest.approx(20.0, rel=1e-12)
    assert lp_norm(unit_gaussian, math.inf) == pytest.approx(1.0, abs=1e-15)
