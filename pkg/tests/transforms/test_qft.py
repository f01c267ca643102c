import math

import numpy as np
import pytest

from algebra.signal import Grid1D, Grid2D, QSignal2D, sample_function
from errors import GridError
from models import GaussianSpec
from transforms.qft import hausdorff_young_constant, iqft, lattice_dft, qft_direct, qft_fast


def test_lattice_dft_matches_explicit_sum():
    source = Grid1D.centered(8, 0.5)
    target = source.reciprocal(1.0)
    rng = np.random.default_rng(5)
    h = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    u, v = source.coordinates(), target.coordinates()
    for sign in (-1, 1):
        expected = np.exp(sign * 1j * np.outer(v, u)) @ h
        np.testing.assert_allclose(lattice_dft(h, 0, source, target, sign), expected, atol=1e-12)


def test_lattice_dft_requires_reciprocal_lattices():
    source = Grid1D.centered(8, 0.5)
    with pytest.raises(GridError, match="reciprocal"):
        lattice_dft(np.ones(8, dtype=complex), 0, source, source, -1)


def test_fast_matches_direct(random_signal):
    np.testing.assert_allclose(qft_fast(random_signal).samples, qft_direct(random_signal).samples, atol=1e-10)


def test_inverse_is_exact(random_signal):
    F = qft_fast(random_signal)
    np.testing.assert_allclose(iqft(F, random_signal.grid).samples, random_signal.samples, atol=1e-12)


def test_gaussian_transform_is_gaussian():
    # (1/2π) ∫ e^{-|x|²/2} e^{-i x·w} dx = e^{-|w|²/2} for each axis pair
    grid = Grid2D.from_extent(64, 20.0)
    f = sample_function(grid, GaussianSpec(k1=0.5, k2=0.5))
    F = qft_fast(f)
    w1, w2 = F.grid.mesh()
    np.testing.assert_allclose(F.samples[..., 0], np.exp(-(w1**2 + w2**2) / 2), atol=1e-10)
    np.testing.assert_allclose(F.samples[..., 1:], 0.0, atol=1e-10)


def test_plancherel(random_signal):
    F = qft_fast(random_signal)
    assert np.sum(F.samples**2) * F.grid.cell_area == pytest.approx(
        np.sum(random_signal.samples**2) * random_signal.grid.cell_area, rel=1e-12
    )


@pytest.mark.parametrize(
    "p,q,constant",
    [
        (1.0, math.inf, 1 / (2 * math.pi)),
        (2.0, 2.0, 1.0),
        (4 / 3, 4.0, (2 * math.pi) ** (0.25 - 0.75)),
    ],
)
def test_hausdorff_young_constant(p, q, constant):
    got_q, got_constant = hausdorff_young_constant(p)
    assert got_q == pytest.approx(q)
    assert got_constant == pytest.approx(constant)


def test_iqft_rejects_mismatched_grid(random_signal):
    F = qft_fast(random_signal)
    with pytest.raises(GridError):
        iqft(F, Grid2D.from_extent(16, 10.0))
    assert isinstance(iqft(F), QSignal2D)
