"""
Two-sided quaternion quadratic-phase Fourier transform

    Q[f](w) = Σ Λⁱ_μ1(x1, w1) · f(x) · Λʲ_μ2(x2, w2) · dx1 dx2

The direct path evaluates the kernels at any frequencies. The fast path
factors the kernels into input chirps, a two-sided QFT evaluated at b·w and
output chirps; a QQPFTPlan holds everything that depends only on the grid and
the parameters so repeated transforms reuse it.
"""

from __future__ import annotations

import logging
import math
from typing import List, Literal, Optional, Sequence, Tuple, Union

import numpy as np

from algebra.quaternion import Quaternion, embed, principal_root, qconj, qinv, qmul
from algebra.signal import Grid2D, QSignal2D, axis_factor, chirp_multiply, shift_samples
from errors import GridError, ParameterError
from models import InverseMethod, Method, QPFTParams, QQPFTParams, Variant, VerificationReport
from transforms.qft import Side, apply_axis_kernel, fourier_sum
from transforms.qpft1d import QPFTKernel, space_grid_for

logger = logging.getLogger(__name__)

FrequencySpec = Union[None, Grid2D, Tuple[Sequence[float], Sequence[float]]]
KernelOrder = Literal["ij", "ji"]


class QQPFTPlan:
    """Grid- and parameter-bound chirps and constants of the fast path"""

    def __init__(self, grid: Grid2D, params: QQPFTParams):
        self.grid = grid
        self.params = params
        self.omega = grid.frequency_grid()
        self.frequency = grid.frequency_grid(params.mu1.b, params.mu2.b)
        mu1, mu2 = params.mu1, params.mu2
        # √(b1·i)·e^{-i(a1 x1² + d1 x1)} on the left, e^{-j(a2 x2² + d2 x2)}·√(b2·j) on the right
        self.input_left = axis_factor(grid, "i", -mu1.a, -mu1.d, scale=principal_root(mu1.b))
        self.input_right = axis_factor(grid, "j", -mu2.a, -mu2.d, scale=principal_root(mu2.b))
        self.output_left = axis_factor(self.frequency, "i", -mu1.c, -mu1.e)
        self.output_right = axis_factor(self.frequency, "j", -mu2.c, -mu2.e)
        self.flips = tuple(axis for axis, mu in ((0, mu1), (1, mu2)) if mu.b < 0)
        logger.debug("built plan for %s with b=(%g, %g)", grid.shape, mu1.b, mu2.b)

    def matches(self, grid: Grid2D) -> bool:
        return self.grid.matches(grid)

    def _reorder(self, values: np.ndarray) -> np.ndarray:
        # induced axes with b < 0 are stored ascending, i.e. reversed against ω
        return np.flip(values, axis=self.flips) if self.flips else values

    def forward(self, f: QSignal2D) -> QSignal2D:
        if not self.matches(f.grid):
            raise GridError("plan was built for a different grid")
        g = qmul(qmul(self.input_left, f.samples), self.input_right)
        spectrum = fourier_sum(g, self.grid, self.omega, -1) * self.grid.cell_area / (2.0 * math.pi)
        spectrum = self._reorder(spectrum)
        return QSignal2D(self.frequency, qmul(qmul(self.output_left, spectrum), self.output_right))

    def inverse(self, F: QSignal2D) -> QSignal2D:
        if not self.frequency.matches(F.grid):
            raise GridError("spectrum does not live on this plan's induced frequency grid")
        spectrum = qmul(qmul(qconj(self.output_left), F.samples), qconj(self.output_right))
        spectrum = self._reorder(spectrum)
        g = fourier_sum(spectrum, self.omega, self.grid, +1) * self.omega.cell_area / (2.0 * math.pi)
        return QSignal2D(self.grid, qmul(qmul(qinv(self.input_left), g), qinv(self.input_right)))


def build_plan(grid: Grid2D, params: QQPFTParams) -> QQPFTPlan:
    return QQPFTPlan(grid, params)


def _kernels(grid: Grid2D, params: QQPFTParams) -> Tuple[QPFTKernel, QPFTKernel]:
    return QPFTKernel(params.mu1, grid.axis(1)), QPFTKernel(params.mu2, grid.axis(2))


def evaluate_direct(f: QSignal2D, params: QQPFTParams, w1: Sequence[float], w2: Sequence[float]) -> np.ndarray:
    """Kernel quadrature at the frequency lattice w1 × w2, as an (m1, m2, 4) array"""
    k1, k2 = _kernels(f.grid, params)
    left = k1.quaternion_matrix("i", -1, np.asarray(w1, dtype=np.float64))
    right = k2.quaternion_matrix("j", -1, np.asarray(w2, dtype=np.float64))
    out = apply_axis_kernel(f.samples, left, 0, "left")
    out = apply_axis_kernel(out, right, 1, "right")
    return out * f.grid.cell_area


def _direct_on_grid(f: QSignal2D, params: QQPFTParams, grid: Optional[Grid2D] = None) -> QSignal2D:
    grid = grid or f.grid.frequency_grid(params.mu1.b, params.mu2.b)
    w1, w2 = grid.coordinates()
    logger.debug("forward_direct on %s -> %s", f.grid.shape, grid.shape)
    return QSignal2D(grid, evaluate_direct(f, params, w1, w2))


def forward_direct(
    f: QSignal2D,
    params: QQPFTParams,
    freqs: FrequencySpec = None,
) -> Union[QSignal2D, np.ndarray]:
    """Definition-faithful Q-QPFT.

    With no `freqs` the output lives on the induced grid; a Grid2D selects
    another output grid; a pair of value arrays returns the raw samples.
    """
    if freqs is None or isinstance(freqs, Grid2D):
        return _direct_on_grid(f, params, freqs)
    w1, w2 = freqs
    return evaluate_direct(f, params, w1, w2)


def forward_fast(f: QSignal2D, params: QQPFTParams, plan: Optional[QQPFTPlan] = None) -> QSignal2D:
    """Chirp, two-sided QFT at b·w, chirp"""
    if plan is None:
        plan = build_plan(f.grid, params)
    elif plan.params != params:
        raise ParameterError("plan was built for different parameters")
    return plan.forward(f)


def forward(f: QSignal2D, params: QQPFTParams, method: str = "fast") -> QSignal2D:
    if Method(method) is Method.DIRECT:
        return _direct_on_grid(f, params)
    return forward_fast(f, params)


def inverse(
    F: QSignal2D,
    params: QQPFTParams,
    method: str = "exact",
    space_grid: Optional[Grid2D] = None,
    plan: Optional[QQPFTPlan] = None,
) -> QSignal2D:
    """Recover f from its induced-grid transform.

    `exact` reverses the fast pipeline step by step; `direct` evaluates
    Σ conj(Λⁱ)·Q·conj(Λʲ)·dw1 dw2 at every space sample.
    """
    if space_grid is None:
        space_grid = plan.grid if plan is not None else Grid2D.from_axes(
            space_grid_for(F.grid.axis(1), params.mu1.b), space_grid_for(F.grid.axis(2), params.mu2.b)
        )
    if InverseMethod(method) is InverseMethod.EXACT:
        plan = plan or build_plan(space_grid, params)
        return plan.inverse(F)
    k1, k2 = _kernels(space_grid, params)
    if not k1.frequency.matches(F.grid.axis(1)) or not k2.frequency.matches(F.grid.axis(2)):
        raise GridError("spectrum does not live on the induced frequency grid of this space grid")
    left = embed(k1.matrix(+1).T, "i")
    right = embed(k2.matrix(+1).T, "j")
    out = apply_axis_kernel(F.samples, left, 0, "left")
    out = apply_axis_kernel(out, right, 1, "right")
    return QSignal2D(space_grid, out * F.grid.cell_area)


def forward_sided(
    f: QSignal2D,
    params: QQPFTParams,
    variant: str = "right",
    kernel_order: KernelOrder = "ij",
    conjugate_i: bool = False,
) -> QSignal2D:
    """Kernel placement variants, by direct quadrature.

    right: f·Λⁱ·Λʲ, left: Λⁱ·Λʲ·f, two: Λⁱ·f·Λʲ. kernel_order="ji" swaps the
    kernels (two becomes Λʲ·f·Λⁱ) and conjugate_i replaces Λⁱ by its conjugate.
    """
    side = Variant(variant)
    if kernel_order not in ("ij", "ji"):
        raise ParameterError(f"kernel_order must be 'ij' or 'ji', got {kernel_order!r}")
    k1, k2 = _kernels(f.grid, params)
    kernel_i = k1.quaternion_matrix("i", +1 if conjugate_i else -1)
    kernel_j = k2.quaternion_matrix("j")
    grid = f.grid.frequency_grid(params.mu1.b, params.mu2.b)
    first, second = ((kernel_i, 0), (kernel_j, 1)) if kernel_order == "ij" else ((kernel_j, 1), (kernel_i, 0))
    steps: List[Tuple[np.ndarray, int, Side]]
    if side is Variant.TWO:
        steps = [(first[0], first[1], "left"), (second[0], second[1], "right")]
    elif side is Variant.LEFT:
        steps = [(second[0], second[1], "left"), (first[0], first[1], "left")]
    else:
        steps = [(first[0], first[1], "right"), (second[0], second[1], "right")]
    out = f.samples
    for kernel, axis, where in steps:
        out = apply_axis_kernel(out, kernel, axis, where)
    return QSignal2D(grid, out * f.grid.cell_area)


def _check_rates(k1: float, k2: float) -> None:
    if k1 <= 0 or k2 <= 0:
        raise ParameterError("Gaussian rates k must be positive")


def _gaussian_factor(mu: QPFTParams, k: float, w: np.ndarray) -> np.ndarray:
    rate = k + 1j * mu.a
    return (
        np.exp(-1j * (mu.c * w**2 + mu.e * w))
        * principal_root(mu.b)
        / np.sqrt(2.0 * rate)
        * np.exp(-((mu.b * w + mu.d) ** 2) / (4.0 * rate))
    )


def gaussian_oracle(params: QQPFTParams, k1: float, k2: float, w: Tuple[float, float]) -> Quaternion:
    """Closed-form transform of e^{-(k1 x1² + k2 x2²)} at a single frequency"""
    _check_rates(k1, k2)
    a1 = embed(_gaussian_factor(params.mu1, k1, np.asarray(w[0], dtype=np.float64)), "i")
    a2 = embed(_gaussian_factor(params.mu2, k2, np.asarray(w[1], dtype=np.float64)), "j")
    return Quaternion.from_array(qmul(a1, a2))


def gaussian_oracle_grid(params: QQPFTParams, k1: float, k2: float, grid: Grid2D) -> QSignal2D:
    """Closed form sampled on a frequency grid"""
    _check_rates(k1, k2)
    w1, w2 = grid.coordinates()
    a1 = embed(_gaussian_factor(params.mu1, k1, w1), "i")[:, None, :]
    a2 = embed(_gaussian_factor(params.mu2, k2, w2), "j")[None, :, :]
    return QSignal2D(grid, qmul(a1, a2))


def _integer_steps(value: float, spacing: float, what: str) -> int:
    steps = value / spacing
    nearest = int(round(steps))
    if abs(steps - nearest) > 1e-9 * max(1.0, abs(steps)):
        raise GridError(f"{what} must be an integer multiple of the grid spacing {spacing:g}, got {value:g}")
    return nearest


def _two_sided_phase(values: np.ndarray, phase1: np.ndarray, phase2: np.ndarray) -> np.ndarray:
    """e^{-i·phase1(w1)} · values · e^{-j·phase2(w2)}"""
    return qmul(qmul(embed(np.exp(-1j * phase1), "i")[:, None, :], values), embed(np.exp(-1j * phase2), "j")[None, :, :])


def _magnitude_error(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.max(np.abs(np.linalg.norm(a, axis=-1) - np.linalg.norm(b, axis=-1)), initial=0.0))


def _max_diff(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.max(np.abs(a - b), initial=0.0))


def _shift_phase(mu: QPFTParams, k: float, w: np.ndarray, printed: bool) -> np.ndarray:
    a, b, c, d, e = mu.as_tuple()
    last = 2.0 * (a / b) * k if printed else 2.0 * (a * e / b) * k
    return a * k**2 + d * k + b * k * w - 4.0 * (a**2 * c / b**2) * k**2 - 4.0 * (a * c / b) * w * k - last


def verify_shift(
    f: QSignal2D,
    params: QQPFTParams,
    k: Tuple[float, float],
    tolerance: float = 1e-8,
) -> VerificationReport:
    """Q[f(· - k)](w) = e^{-iφ1}·Q[f](w + 2(a/b)k)·e^{-jφ2}, magnitude and full phase"""
    steps1 = _integer_steps(k[0], f.grid.dx1, "shift k1")
    steps2 = _integer_steps(k[1], f.grid.dx2, "shift k2")
    shifted = shift_samples(f, steps1, steps2)
    mu1, mu2 = params.mu1, params.mu2
    w1, w2 = f.grid.frequency_grid(mu1.b, mu2.b).coordinates()
    lhs = evaluate_direct(shifted, params, w1, w2)
    moved = evaluate_direct(f, params, w1 + 2.0 * (mu1.a / mu1.b) * k[0], w2 + 2.0 * (mu2.a / mu2.b) * k[1])
    magnitude = _magnitude_error(lhs, moved)
    derived = _two_sided_phase(moved, _shift_phase(mu1, k[0], w1, False), _shift_phase(mu2, k[1], w2, False))
    printed = _two_sided_phase(moved, _shift_phase(mu1, k[0], w1, True), _shift_phase(mu2, k[1], w2, True))
    phase = _max_diff(lhs, derived)
    return VerificationReport.check(
        "shift",
        max(magnitude, phase),
        tolerance,
        grid=f.grid.describe(),
        parameters=params.describe(),
        metadata={
            "k": list(k),
            "magnitude_error": magnitude,
            "phase_error": phase,
            "printed_phase_error": _max_diff(lhs, printed),
        },
    )


def _modulation_phase(mu: QPFTParams, u: float, w: np.ndarray, squared: Optional[float] = None) -> np.ndarray:
    _, b, c, _, e = mu.as_tuple()
    u_sq = u if squared is None else squared
    return 2.0 * c * u * w / b - c * u_sq**2 / b**2 + e * u / b


def modulate(f: QSignal2D, u0: float, v0: float) -> QSignal2D:
    """e^{i x1 u0} · f · e^{j x2 v0}"""
    return chirp_multiply(chirp_multiply(f, "left", "i", 0.0, u0), "right", "j", 0.0, v0)


def verify_modulation(
    f: QSignal2D,
    params: QQPFTParams,
    w0: Tuple[float, float],
    tolerance: float = 1e-8,
) -> VerificationReport:
    """Q[Mf](w) = e^{-iψ1}·Q[f](w - w0/b)·e^{-jψ2}, magnitude and full phase"""
    u0, v0 = w0
    mu1, mu2 = params.mu1, params.mu2
    freq = f.grid.frequency_grid(mu1.b, mu2.b)
    _integer_steps(u0 / mu1.b, freq.dx1, "offset u0/b1")
    _integer_steps(v0 / mu2.b, freq.dx2, "offset v0/b2")
    w1, w2 = freq.coordinates()
    lhs = evaluate_direct(modulate(f, u0, v0), params, w1, w2)
    moved = evaluate_direct(f, params, w1 - u0 / mu1.b, w2 - v0 / mu2.b)
    magnitude = _magnitude_error(lhs, moved)
    derived = _two_sided_phase(moved, _modulation_phase(mu1, u0, w1), _modulation_phase(mu2, v0, w2))
    printed = _two_sided_phase(moved, _modulation_phase(mu1, u0, w1), _modulation_phase(mu2, v0, w2, squared=u0))
    phase = _max_diff(lhs, derived)
    return VerificationReport.check(
        "modulation",
        max(magnitude, phase),
        tolerance,
        grid=f.grid.describe(),
        parameters=params.describe(),
        metadata={
            "w0": [u0, v0],
            "magnitude_error": magnitude,
            "phase_error": phase,
            "printed_phase_error": _max_diff(lhs, printed),
        },
    )


def _snap(value: float) -> float:
    return 0.0 if abs(value) < 1e-12 else value


def special_case_params(name: str, **kwargs: float) -> QQPFTParams:
    """Parameter sets under which the Q-QPFT reduces to a known transform.

    qft: (0, -1, 0, 0, 0); qlct: (a, b, c, 0, 0); frqft: (cot θ, -csc θ, cot θ, 0, 0).
    """
    key = name.lower()
    if key == "qft":
        mu = QPFTParams(a=0.0, b=-1.0, c=0.0, d=0.0, e=0.0)
    elif key == "qlct":
        b = kwargs.get("b", 1.0)
        if b == 0:
            raise ParameterError("b must be nonzero")
        mu = QPFTParams(a=kwargs.get("a", 0.0), b=b, c=kwargs.get("c", 0.0))
    elif key == "frqft":
        theta = kwargs.get("theta")
        if theta is None:
            raise ParameterError("frqft needs an angle theta")
        sin = math.sin(theta)
        if abs(sin) < 1e-12:
            raise ParameterError("theta must not be a multiple of π")
        cot = _snap(math.cos(theta) / sin)
        mu = QPFTParams(a=cot, b=_snap(-1.0 / sin), c=cot)
    else:
        raise ParameterError(f"unknown special case {name!r}; expected qft, qlct or frqft")
    return QQPFTParams.same(mu)

