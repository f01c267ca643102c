"""
One-dimensional quadratic-phase Fourier transform and the sided 2D variants

For μ = (a, b, c, d, e) the kernel is

    Λ_μ(x, w) = √(b·i/2π) · e^{-i(a x² + b x w + c w² + d x + e w)}

The 1D transform multiplies it on the right of the samples. The left-sided
2D transform integrates x1 against the i-plane kernel from the left; the
right-sided one integrates x2 against the j-plane kernel from the right.
"""

from __future__ import annotations

import logging
import math
from typing import Literal, Optional

import numpy as np

from algebra.quaternion import embed, principal_root, symplectic_join, symplectic_split
from algebra.signal import Grid1D, QSignal1D, QSignal2D, energy, inner_product, scalar_inner
from errors import GridError, ParameterError
from models import Method, QPFTParams, VerificationReport
from transforms.qft import apply_axis_kernel, lattice_dft

logger = logging.getLogger(__name__)

Plane = Literal["i", "j"]


class QPFTKernel:
    """Quadratic-phase kernel of one axis, bound to the space lattice it acts on.

    sign = -1 gives Λ_μ itself, sign = +1 its complex conjugate; both are
    written C_σ·e^{σ i(a x² + b x w + c w² + d x + e w)}.
    """

    def __init__(self, mu: QPFTParams, space: Grid1D):
        self.mu = mu
        self.space = space
        self.frequency = space.reciprocal(mu.b)
        self.omega = space.reciprocal(1.0)
        self.constant = principal_root(mu.b) / math.sqrt(2.0 * math.pi)

    def _constant(self, sign: int) -> complex:
        return self.constant if sign < 0 else self.constant.conjugate()

    def _input_chirp(self, sign: int) -> np.ndarray:
        x = self.space.coordinates()
        return np.exp(sign * 1j * (self.mu.a * x**2 + self.mu.d * x))

    def _output_chirp(self, sign: int) -> np.ndarray:
        w = self.frequency.coordinates()
        return np.exp(sign * 1j * (self.mu.c * w**2 + self.mu.e * w))

    def _to_frequency_order(self, values: np.ndarray, axis: int) -> np.ndarray:
        # induced grid is stored ascending, which reverses ω when b < 0
        return np.flip(values, axis=axis) if self.mu.b < 0 else values

    @staticmethod
    def _along(vector: np.ndarray, ndim: int, axis: int) -> np.ndarray:
        shape = [1] * ndim
        shape[axis] = vector.size
        return vector.reshape(shape)

    def matrix(self, sign: int = -1, w: Optional[np.ndarray] = None) -> np.ndarray:
        """Complex kernel values K[m, n] at (x_n, w_m)"""
        x = self.space.coordinates()
        w = self.frequency.coordinates() if w is None else np.asarray(w, dtype=np.float64)
        a, b, c, d, e = self.mu.as_tuple()
        phase = a * x[None, :] ** 2 + b * np.outer(w, x) + (c * w**2 + e * w)[:, None] + d * x[None, :]
        return self._constant(sign) * np.exp(sign * 1j * phase)

    def quaternion_matrix(self, plane: Plane, sign: int = -1, w: Optional[np.ndarray] = None) -> np.ndarray:
        return embed(self.matrix(sign, w), plane)

    def forward_sum(self, h: np.ndarray, axis: int, sign: int = -1) -> np.ndarray:
        """Σ_x h(x)·K_σ(x, w)·dx along `axis` for complex h, on the induced grid"""
        h = h * self._along(self._input_chirp(sign), h.ndim, axis)
        out = lattice_dft(h, axis, self.space, self.omega, sign)
        out = self._to_frequency_order(out, axis)
        factor = self._constant(sign) * self._output_chirp(sign) * self.space.dx
        return out * self._along(factor, out.ndim, axis)

    def inverse_sum(self, H: np.ndarray, axis: int, sign: int = +1) -> np.ndarray:
        """Σ_w H(w)·K_σ(x, w)·dw along `axis` for complex H, back on the space grid"""
        H = H * self._along(self._output_chirp(sign), H.ndim, axis)
        H = self._to_frequency_order(H, axis)
        out = lattice_dft(H, axis, self.omega, self.space, sign)
        factor = self._constant(sign) * self._input_chirp(sign) * self.frequency.dx
        return out * self._along(factor, out.ndim, axis)


def _check_method(method: str) -> Method:
    try:
        return Method(method)
    except ValueError as exc:
        raise ParameterError(f"method must be 'direct' or 'fast', got {method!r}") from exc


def qpft1d_forward(f: QSignal1D, mu: QPFTParams, method: str = "fast") -> QSignal1D:
    """Σ f(x)·Λ_μ(x, w)·dx on the induced grid w_m = ω_m / b"""
    kernel = QPFTKernel(mu, f.grid)
    if _check_method(method) is Method.DIRECT:
        matrix = kernel.quaternion_matrix("i")
        out = apply_axis_kernel(f.samples[:, None, :], matrix, 0, "right")[:, 0, :] * f.grid.dx
        return QSignal1D(kernel.frequency, out)
    # (p + s·j)·c = p·c + (s·conj(c))·j for i-plane c
    p, s = symplectic_split(f.samples)
    return QSignal1D(kernel.frequency, symplectic_join(kernel.forward_sum(p, 0, -1), kernel.forward_sum(s, 0, +1)))


def space_grid_for(frequency: Grid1D, b: float) -> Grid1D:
    """Centered space lattice whose induced grid under b is `frequency`"""
    return Grid1D.centered(frequency.n, 2.0 * math.pi / (frequency.n * frequency.dx * abs(b)))


def qpft1d_inverse(
    F: QSignal1D,
    mu: QPFTParams,
    space: Optional[Grid1D] = None,
    method: str = "fast",
) -> QSignal1D:
    """Σ F(w)·conj(Λ_μ(x, w))·dw with dw = 2π/(n·dx·|b|)"""
    space = space or space_grid_for(F.grid, mu.b)
    kernel = QPFTKernel(mu, space)
    if not kernel.frequency.matches(F.grid):
        raise GridError("spectrum does not live on the induced frequency grid of this space grid")
    if _check_method(method) is Method.DIRECT:
        # conj(Λ)[n, m] as a kernel over w
        matrix = embed(kernel.matrix(+1).T, "i")
        out = apply_axis_kernel(F.samples[:, None, :], matrix, 0, "right")[:, 0, :] * F.grid.dx
        return QSignal1D(space, out)
    P, S = symplectic_split(F.samples)
    return QSignal1D(space, symplectic_join(kernel.inverse_sum(P, 0, +1), kernel.inverse_sum(S, 0, -1)))


def qpft_left2d(f: QSignal2D, mu1: QPFTParams, method: str = "fast") -> QSignal2D:
    """Σ_x1 Λⁱ_μ1(x1, w1)·f(x1, x2)·dx1 over the grid (w1, x2)"""
    kernel = QPFTKernel(mu1, f.grid.axis(1))
    grid = f.grid.with_axis(1, kernel.frequency)
    if _check_method(method) is Method.DIRECT:
        out = apply_axis_kernel(f.samples, kernel.quaternion_matrix("i"), 0, "left")
        return QSignal2D(grid, out * f.grid.dx1)
    # c·(p + s·j) = c·p + (c·s)·j for i-plane c
    p, s = f.split()
    return QSignal2D.from_parts(grid, kernel.forward_sum(p, 0, -1), kernel.forward_sum(s, 0, -1))


def qpft_right2d(f: QSignal2D, mu2: QPFTParams, method: str = "fast") -> QSignal2D:
    """Σ_x2 f(x1, x2)·Λʲ_μ2(x2, w2)·dx2 over the grid (x1, w2)"""
    kernel = QPFTKernel(mu2, f.grid.axis(2))
    grid = f.grid.with_axis(2, kernel.frequency)
    if _check_method(method) is Method.DIRECT:
        out = apply_axis_kernel(f.samples, kernel.quaternion_matrix("j"), 1, "right")
        return QSignal2D(grid, out * f.grid.dx2)
    # (p + s·j)(α + β·j) = (pα - sβ) + (sα + pβ)·j with α = Re λ, β = Im λ
    p, s = f.split()
    p_fwd, p_conj = kernel.forward_sum(p, 1, -1), kernel.forward_sum(p, 1, +1)
    s_fwd, s_conj = kernel.forward_sum(s, 1, -1), kernel.forward_sum(s, 1, +1)
    real_p, imag_p = (p_fwd + p_conj) / 2, (p_fwd - p_conj) / 2j
    real_s, imag_s = (s_fwd + s_conj) / 2, (s_fwd - s_conj) / 2j
    return QSignal2D.from_parts(grid, real_p - imag_s, real_s + imag_p)


def _relative(error: float, scale: float) -> float:
    return error / scale if scale > 0 else error


def right_sided_parseval_check(
    f: QSignal2D,
    g: QSignal2D,
    mu2: QPFTParams,
    tolerance: float = 1e-9,
) -> VerificationReport:
    """Plancherel for the right-sided transform, scalar and full quaternion forms"""
    f.grid.require_match(g.grid)
    Ff, Fg = qpft_right2d(f, mu2), qpft_right2d(g, mu2)
    scale = math.sqrt(energy(f) * energy(g))
    inner_error = _relative(abs(scalar_inner(f, g) - scalar_inner(Ff, Fg)), scale)
    norm_error = _relative(abs(energy(f) - energy(Ff)), energy(f))
    full = (inner_product(f, g) - inner_product(Ff, Fg)).norm()
    return VerificationReport.check(
        "right-sided-parseval",
        max(inner_error, norm_error),
        tolerance,
        grid=f.grid.describe(),
        parameters={"mu2": list(mu2.as_tuple())},
        metadata={
            "scalar_inner_error": inner_error,
            "norm_error": norm_error,
            "quaternion_inner_error": _relative(full, scale),
        },
    )

