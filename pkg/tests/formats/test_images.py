import logging

import numpy as np
import pytest

from algebra.signal import Grid2D, GridMask, QSignal2D
from errors import FormatError, GridError
from formats.images import pixels_to_quaternions, read_pbm, read_ppm, write_pbm, write_ppm


def _ppm(width, height, pixels, maxval=255, magic=b"P6"):
    return magic + f"\n# comment\n{width} {height}\n{maxval}\n".encode() + bytes(pixels)


def test_pixel_mapping():
    rgb = np.array([[[255, 0, 0], [128, 128, 128]]], dtype=np.uint8)
    samples = pixels_to_quaternions(rgb)
    np.testing.assert_array_equal(samples[0, 0], [0.0, 1.0, 0.0, 0.0])
    np.testing.assert_allclose(samples[0, 1], [0.0, 128 / 255, 128 / 255, 128 / 255])


def test_read_ppm(tmp_path):
    path = tmp_path / "img.ppm"
    pixels = list(range(2 * 4 * 3))
    path.write_bytes(_ppm(4, 2, pixels))
    f = read_ppm(path)
    assert f.grid == Grid2D.centered(2, 1.0, 4, 1.0)
    np.testing.assert_allclose(f.samples[1, 3, 1:], np.array(pixels[-3:]) / 255)
    assert not np.any(f.samples[..., 0])


def test_read_write_read_is_idempotent(tmp_path):
    rng = np.random.default_rng(0)
    path = tmp_path / "img.ppm"
    path.write_bytes(_ppm(4, 4, rng.integers(0, 256, size=48).tolist()))
    first = read_ppm(path)
    assert write_ppm(first, tmp_path / "copy.ppm") == []
    second = read_ppm(tmp_path / "copy.ppm")
    np.testing.assert_array_equal(first.samples, second.samples)


def test_write_clamps_and_warns(tmp_path, caplog):
    grid = Grid2D.centered(2, 1.0)
    samples = np.zeros((2, 2, 4))
    samples[0, 0] = [0.5, 1.5, -0.2, 0.5]
    with caplog.at_level(logging.WARNING):
        warnings = write_ppm(QSignal2D(grid, samples), tmp_path / "out.ppm")
    assert len(warnings) == 2
    assert "scalar part dropped" in caplog.text
    back = read_ppm(tmp_path / "out.ppm")
    np.testing.assert_allclose(back.samples[0, 0], [0.0, 1.0, 0.0, 128 / 255])


@pytest.mark.parametrize(
    "data,message",
    [
        (_ppm(2, 2, [0] * 12, magic=b"P3"), "P6"),
        (_ppm(2, 2, [0] * 12, maxval=65535), "maxval"),
        (_ppm(2, 2, [0] * 11), "truncated"),
    ],
)
def test_unsupported_ppm(tmp_path, data, message):
    path = tmp_path / "bad.ppm"
    path.write_bytes(data)
    with pytest.raises(FormatError, match=message):
        read_ppm(path)


def test_pbm_round_trip(tmp_path):
    grid = Grid2D.from_extent(8, 8.0)
    mask = GridMask.disk(grid, 2.0)
    back = read_pbm(write_pbm(mask, tmp_path / "mask.pbm"), grid)
    np.testing.assert_array_equal(back.bits, mask.bits)


def test_pbm_parsing(tmp_path):
    path = tmp_path / "mask.pbm"
    path.write_text("P1\n# two rows\n4 2\n0110\n1 0 0 1\n")
    mask = read_pbm(path, Grid2D.centered(2, 1.0, 4, 1.0))
    np.testing.assert_array_equal(mask.bits, [[False, True, True, False], [True, False, False, True]])


def test_pbm_shape_must_match_grid(tmp_path):
    path = tmp_path / "mask.pbm"
    path.write_text("P1\n4 2\n0110\n1001\n")
    with pytest.raises(GridError):
        read_pbm(path, Grid2D.centered(4, 1.0))


def test_odd_image_sides_are_rejected(tmp_path):
    path = tmp_path / "odd.ppm"
    path.write_bytes(_ppm(3, 2, [0] * 18))
    with pytest.raises(GridError, match="even"):
        read_ppm(path)


def test_odd_image_sides_are_padded(tmp_path):
    path = tmp_path / "odd.ppm"
    path.write_bytes(_ppm(3, 3, [255] * 27))
    f = read_ppm(path, pad=True)
    assert f.grid.shape == (4, 4)
    np.testing.assert_array_equal(f.samples[:3, :3, 1:], 1.0)
    assert not np.any(f.samples[3, :])
    assert not np.any(f.samples[:, 3])
