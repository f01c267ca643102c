"""
Two-sided quaternion Fourier transform

    F(w) = (1/2π) Σ e^{-i x1 w1} · f(x) · e^{-j x2 w2} · dx1 dx2

on the centered angular-frequency grid w_m = (m - n/2)·2π/(n·dx). The direct
path contracts the kernels sample by sample; the fast path splits
f = p + s·j into two i-complex arrays and runs complex FFTs on each.
"""

from __future__ import annotations

import logging
import math
from typing import Literal, Optional, Tuple

import numpy as np
from scipy import fft

from algebra.quaternion import embed, left_matrix, right_matrix, symplectic_join, symplectic_split
from algebra.signal import Grid1D, Grid2D, QSignal2D
from errors import GridError

logger = logging.getLogger(__name__)

Side = Literal["left", "right"]


def apply_axis_kernel(values: np.ndarray, kernel: np.ndarray, axis: int, side: Side) -> np.ndarray:
    """Contract one grid axis against a quaternion kernel.

    kernel[m, n] maps input index n to output index m along `axis` (0 or 1)
    and multiplies the samples from `side`:
    out[m, k] = Σ_n kernel[m, n]·values[n, k] for side="left" on axis 0.
    """
    matrices = left_matrix(kernel) if side == "left" else right_matrix(kernel)
    if axis == 0:
        return np.einsum("mnab,nkb->mka", matrices, values, optimize=True)
    return np.einsum("lkab,nkb->nla", matrices, values, optimize=True)


def phase_kernel(outer: np.ndarray, inner: np.ndarray, sign: float, plane: Literal["i", "j"]) -> np.ndarray:
    """kernel[m, n] = exp_plane(sign · outer_m · inner_n)"""
    return embed(np.exp(1j * sign * np.outer(outer, inner)), plane)


def qft_direct(f: QSignal2D) -> QSignal2D:
    """Kernel-by-kernel quadrature of the two-sided QFT; oracle for small grids"""
    freq = f.grid.frequency_grid()
    x1, x2 = f.grid.coordinates()
    w1, w2 = freq.coordinates()
    logger.debug("qft_direct on %s", f.grid.shape)
    left = phase_kernel(w1, x1, -1.0, "i")
    right = phase_kernel(w2, x2, -1.0, "j")
    out = apply_axis_kernel(f.samples, left, 0, "left")
    out = apply_axis_kernel(out, right, 1, "right")
    return QSignal2D(freq, out * f.grid.cell_area / (2.0 * math.pi))


def lattice_dft(h: np.ndarray, axis: int, source: Grid1D, target: Grid1D, sign: int) -> np.ndarray:
    """Σ_k h_k e^{sign·i·u_k·v_l} along `axis` for reciprocal lattices u, v.

    Requires du·dv = 2π/n; the origins are arbitrary.
    """
    n = source.n
    if target.n != n or not math.isclose(source.dx * target.dx * n, 2.0 * math.pi, rel_tol=1e-9):
        raise GridError("lattices are not reciprocal; du·dv must equal 2π/n")
    k = np.arange(n)
    shape = [1] * h.ndim
    shape[axis] = n
    pre = np.exp(sign * 1j * k * source.dx * target.x0).reshape(shape)
    post = np.exp(sign * 1j * source.x0 * target.coordinates()).reshape(shape)
    if sign < 0:
        spectrum = fft.fft(h * pre, axis=axis)
    else:
        spectrum = fft.ifft(h * pre, axis=axis) * n
    return spectrum * post


def _exchange(h: np.ndarray, source: Grid2D, target: Grid2D, sign: int, second: int) -> np.ndarray:
    """Σ e^{sign·i·u1·v1} e^{second·i·u2·v2} h over both axes"""
    out = lattice_dft(h, 0, source.axis(1), target.axis(1), sign)
    return lattice_dft(out, 1, source.axis(2), target.axis(2), second)


def fourier_sum(samples: np.ndarray, source: Grid2D, target: Grid2D, sign: int) -> np.ndarray:
    """Σ e^{sign·i·u1·v1} · q(u) · e^{sign·j·u2·v2} over the source lattice.

    With q = p + s·j and β = u2·v2:
        q·e^{σjβ} = (p cos β - σ s sin β) + (s cos β + σ p sin β)·j
    and left multiplication by the i-plane factor acts on each part alone.
    """
    p, s = symplectic_split(samples)
    p_plus = _exchange(p, source, target, sign, +1)
    p_minus = _exchange(p, source, target, sign, -1)
    s_plus = _exchange(s, source, target, sign, +1)
    s_minus = _exchange(s, source, target, sign, -1)
    cos_p, sin_p = (p_plus + p_minus) / 2, (p_plus - p_minus) / 2j
    cos_s, sin_s = (s_plus + s_minus) / 2, (s_plus - s_minus) / 2j
    return symplectic_join(cos_p - sign * sin_s, cos_s + sign * sin_p)


def qft_fast(f: QSignal2D) -> QSignal2D:
    """Two-sided QFT through four complex 2D FFTs"""
    freq = f.grid.frequency_grid()
    logger.debug("qft_fast on %s", f.grid.shape)
    out = fourier_sum(f.samples, f.grid, freq, -1)
    return QSignal2D(freq, out * f.grid.cell_area / (2.0 * math.pi))


def space_grid_for(freq: Grid2D) -> Grid2D:
    """Centered space grid whose QFT grid is `freq`"""
    return Grid2D.centered(
        freq.n1, 2.0 * math.pi / (freq.n1 * freq.dx1), freq.n2, 2.0 * math.pi / (freq.n2 * freq.dx2)
    )


def iqft(F: QSignal2D, space_grid: Optional[Grid2D] = None) -> QSignal2D:
    """Exact inverse of qft_fast: (1/2π) Σ e^{i x1 w1} · F · e^{j x2 w2} · dw1 dw2"""
    grid = space_grid or space_grid_for(F.grid)
    F.grid.require_match(grid.frequency_grid(), "spectrum and space grid")
    out = fourier_sum(F.samples, F.grid, grid, +1)
    return QSignal2D(grid, out * F.grid.cell_area / (2.0 * math.pi))


def hausdorff_young_constant(p: float) -> Tuple[float, float]:
    """Conjugate exponent q and the QFT constant (2π)^{1/q - 1/p}"""
    q = math.inf if p == 1 else p / (p - 1)
    inv_q = 0.0 if math.isinf(q) else 1.0 / q
    return q, (2.0 * math.pi) ** (inv_q - 1.0 / p)
