"""
Sampled quaternion signals for qqpft

Grids, signals and masks, plus the quadrature functionals every theorem
check is measured with. Integrals are plain Riemann sums weighted by the
cell area; numpy's pairwise summation keeps reductions stable.
"""

from __future__ import annotations

import logging
import math
from typing import Any, Dict, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator
from scipy.special import gammaln

from algebra.quaternion import Axis, Quaternion, as_quaternions, embed, qconj, qmul, symplectic_split
from errors import GridError, ParameterError, SignalError
from models import BoxSpec, ChirpedGaussianSpec, GaussianSpec, RandomSpec, parse_signal_spec

logger = logging.getLogger(__name__)

# Regularized sum of ln|k| over the nonzero points of the square lattice
LATTICE_LOG_CONSTANT = 2.0 * float(gammaln(0.25)) - 0.5 * math.log(4.0 * math.pi)

MomentKind = Literal["axis_spread", "radial", "log_radial"]
Side = Literal["left", "right"]


def _check_size(n: int) -> int:
    if n < 2 or n % 2:
        raise GridError(f"grid sizes must be even and at least 2, got {n}")
    return n


def _check_spacing(dx: float) -> float:
    if not math.isfinite(dx) or dx <= 0:
        raise GridError(f"grid spacings must be positive, got {dx}")
    return dx


class Grid1D(BaseModel):
    """Uniform lattice x0 + m·dx, m = 0..n-1"""

    model_config = ConfigDict(frozen=True)

    n: int
    dx: float
    x0: float

    @field_validator("n")
    @classmethod
    def _even_size(cls, value: int) -> int:
        return _check_size(value)

    @field_validator("dx")
    @classmethod
    def _positive_spacing(cls, value: float) -> float:
        return _check_spacing(value)

    @classmethod
    def centered(cls, n: int, dx: float) -> "Grid1D":
        return cls(n=n, dx=dx, x0=-n * dx / 2)

    def coordinates(self) -> np.ndarray:
        return self.x0 + np.arange(self.n) * self.dx

    @property
    def extent(self) -> float:
        return self.n * self.dx

    @property
    def is_centered(self) -> bool:
        return math.isclose(self.x0, -self.n * self.dx / 2, rel_tol=1e-12, abs_tol=1e-12 * self.dx)

    def origin_index(self) -> Optional[int]:
        """Index of the sample at coordinate 0, if the lattice contains it"""
        m = int(round(-self.x0 / self.dx))
        if 0 <= m < self.n and abs(self.x0 + m * self.dx) <= 1e-9 * self.dx:
            return m
        return None

    def reciprocal(self, b: float = 1.0) -> "Grid1D":
        """Induced frequency lattice {ω_m / b} with ω_m = (m - n/2)·2π/(n·dx).

        For b < 0 the points are stored in ascending order, so index m holds
        ω_{n-1-m}/b.
        """
        if b == 0:
            raise ParameterError("b must be nonzero")
        dw = 2.0 * math.pi / (self.n * self.dx)
        if b > 0:
            return Grid1D(n=self.n, dx=dw / b, x0=-(self.n // 2) * dw / b)
        return Grid1D(n=self.n, dx=dw / abs(b), x0=(self.n // 2 - 1) * dw / b)

    def matches(self, other: "Grid1D") -> bool:
        return (
            self.n == other.n
            and math.isclose(self.dx, other.dx, rel_tol=1e-12)
            and math.isclose(self.x0, other.x0, rel_tol=1e-12, abs_tol=1e-12 * self.dx)
        )


class Grid2D(BaseModel):
    """Uniform 2D lattice; index (i1, i2) sits at (x1_0 + i1·dx1, x2_0 + i2·dx2)"""

    model_config = ConfigDict(frozen=True)

    n1: int
    n2: int
    dx1: float
    dx2: float
    x1_0: float
    x2_0: float

    @field_validator("n1", "n2")
    @classmethod
    def _even_size(cls, value: int) -> int:
        return _check_size(value)

    @field_validator("dx1", "dx2")
    @classmethod
    def _positive_spacing(cls, value: float) -> float:
        return _check_spacing(value)

    @classmethod
    def centered(cls, n1: int, dx1: float, n2: Optional[int] = None, dx2: Optional[float] = None) -> "Grid2D":
        n2 = n1 if n2 is None else n2
        dx2 = dx1 if dx2 is None else dx2
        return cls(n1=n1, n2=n2, dx1=dx1, dx2=dx2, x1_0=-n1 * dx1 / 2, x2_0=-n2 * dx2 / 2)

    @classmethod
    def from_extent(cls, n: int, extent: float) -> "Grid2D":
        """Centered n×n grid covering [-extent/2, extent/2)²"""
        if extent <= 0:
            raise GridError(f"extent must be positive, got {extent}")
        return cls.centered(n, extent / n)

    @classmethod
    def from_axes(cls, axis1: Grid1D, axis2: Grid1D) -> "Grid2D":
        return cls(n1=axis1.n, n2=axis2.n, dx1=axis1.dx, dx2=axis2.dx, x1_0=axis1.x0, x2_0=axis2.x0)

    def axis(self, s: int) -> Grid1D:
        if s == 1:
            return Grid1D(n=self.n1, dx=self.dx1, x0=self.x1_0)
        if s == 2:
            return Grid1D(n=self.n2, dx=self.dx2, x0=self.x2_0)
        raise ParameterError(f"axis must be 1 or 2, got {s}")

    def with_axis(self, s: int, axis: Grid1D) -> "Grid2D":
        if s == 1:
            return Grid2D.from_axes(axis, self.axis(2))
        return Grid2D.from_axes(self.axis(1), axis)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.n1, self.n2)

    @property
    def cell_area(self) -> float:
        return self.dx1 * self.dx2

    @property
    def is_centered(self) -> bool:
        return self.axis(1).is_centered and self.axis(2).is_centered

    def coordinates(self) -> Tuple[np.ndarray, np.ndarray]:
        return self.axis(1).coordinates(), self.axis(2).coordinates()

    def mesh(self) -> Tuple[np.ndarray, np.ndarray]:
        x1, x2 = self.coordinates()
        return np.meshgrid(x1, x2, indexing="ij")

    def origin_index(self) -> Optional[Tuple[int, int]]:
        m1 = self.axis(1).origin_index()
        m2 = self.axis(2).origin_index()
        if m1 is None or m2 is None:
            return None
        return (m1, m2)

    def frequency_grid(self, b1: float = 1.0, b2: float = 1.0) -> "Grid2D":
        """Induced frequency grid; b1 = b2 = 1 gives the plain QFT grid"""
        return Grid2D.from_axes(self.axis(1).reciprocal(b1), self.axis(2).reciprocal(b2))

    def matches(self, other: "Grid2D") -> bool:
        return self.axis(1).matches(other.axis(1)) and self.axis(2).matches(other.axis(2))

    def require_match(self, other: "Grid2D", what: str = "signals") -> None:
        if not self.matches(other):
            raise GridError(f"{what} live on different grids: {self.describe()} vs {other.describe()}")

    def describe(self) -> Dict[str, Any]:
        return self.model_dump()


class QSignal1D:
    """Quaternion samples on a 1D lattice"""

    __slots__ = ("grid", "samples")

    def __init__(self, grid: Grid1D, samples: Union[np.ndarray, Any]):
        samples = np.asarray(samples)
        if np.iscomplexobj(samples) or samples.ndim == 1:
            samples = embed(samples, "i")
        samples = np.array(as_quaternions(samples), dtype=np.float64)
        if samples.shape != (grid.n, 4):
            raise SignalError(f"expected {grid.n} quaternion samples, got array of shape {samples.shape}")
        samples.setflags(write=False)
        self.grid = grid
        self.samples = samples

    @classmethod
    def zeros(cls, grid: Grid1D) -> "QSignal1D":
        return cls(grid, np.zeros((grid.n, 4)))

    def abs(self) -> np.ndarray:
        return np.sqrt(np.sum(self.samples**2, axis=-1))

    def with_samples(self, samples: np.ndarray, grid: Optional[Grid1D] = None) -> "QSignal1D":
        return QSignal1D(grid or self.grid, samples)

    def __repr__(self) -> str:
        return f"QSignal1D(n={self.grid.n}, dx={self.grid.dx:g}, x0={self.grid.x0:g})"


class QSignal2D:
    """Quaternion samples on a Grid2D, stored as an (n1, n2, 4) float64 array"""

    __slots__ = ("grid", "samples")

    def __init__(self, grid: Grid2D, samples: np.ndarray):
        samples = np.array(as_quaternions(samples), dtype=np.float64)
        if samples.shape != (grid.n1, grid.n2, 4):
            raise SignalError(
                f"expected samples of shape {(grid.n1, grid.n2, 4)}, got {samples.shape}"
            )
        samples.setflags(write=False)
        self.grid = grid
        self.samples = samples

    @classmethod
    def zeros(cls, grid: Grid2D) -> "QSignal2D":
        return cls(grid, np.zeros(grid.shape + (4,)))

    @classmethod
    def from_real(cls, grid: Grid2D, values: np.ndarray) -> "QSignal2D":
        samples = np.zeros(grid.shape + (4,))
        samples[..., 0] = values
        return cls(grid, samples)

    @classmethod
    def from_parts(cls, grid: Grid2D, p: np.ndarray, s: np.ndarray) -> "QSignal2D":
        """Build p + s·j from two i-complex arrays"""
        return cls(grid, np.stack([p.real, p.imag, s.real, s.imag], axis=-1))

    def split(self) -> Tuple[np.ndarray, np.ndarray]:
        return symplectic_split(self.samples)

    def abs(self) -> np.ndarray:
        return np.sqrt(np.sum(self.samples**2, axis=-1))

    def is_zero(self) -> bool:
        return not np.any(self.samples)

    def with_samples(self, samples: np.ndarray, grid: Optional[Grid2D] = None) -> "QSignal2D":
        return QSignal2D(grid or self.grid, samples)

    def __add__(self, other: "QSignal2D") -> "QSignal2D":
        self.grid.require_match(other.grid)
        return self.with_samples(self.samples + other.samples)

    def __sub__(self, other: "QSignal2D") -> "QSignal2D":
        self.grid.require_match(other.grid)
        return self.with_samples(self.samples - other.samples)

    def __neg__(self) -> "QSignal2D":
        return self.with_samples(-self.samples)

    def __mul__(self, scale: float) -> "QSignal2D":
        if isinstance(scale, (int, float, np.floating)):
            return self.with_samples(self.samples * float(scale))
        return NotImplemented

    __rmul__ = __mul__

    def max_abs_diff(self, other: "QSignal2D") -> float:
        return float(np.max(np.abs(self.samples - other.samples), initial=0.0))

    def __repr__(self) -> str:
        return f"QSignal2D(shape={self.grid.shape}, dx=({self.grid.dx1:g}, {self.grid.dx2:g}))"


class GridMask:
    """Boolean selection of grid cells; its measure is count·dx1·dx2"""

    __slots__ = ("grid", "bits")

    def __init__(self, grid: Grid2D, bits: np.ndarray):
        bits = np.array(bits, dtype=bool)
        if bits.shape != grid.shape:
            raise GridError(f"mask shape {bits.shape} does not match grid {grid.shape}")
        bits.setflags(write=False)
        self.grid = grid
        self.bits = bits

    @classmethod
    def full(cls, grid: Grid2D) -> "GridMask":
        return cls(grid, np.ones(grid.shape, dtype=bool))

    @classmethod
    def empty(cls, grid: Grid2D) -> "GridMask":
        return cls(grid, np.zeros(grid.shape, dtype=bool))

    @classmethod
    def disk(cls, grid: Grid2D, radius: float, center: Tuple[float, float] = (0.0, 0.0)) -> "GridMask":
        x1, x2 = grid.mesh()
        return cls(grid, (x1 - center[0]) ** 2 + (x2 - center[1]) ** 2 <= radius**2)

    @property
    def count(self) -> int:
        return int(np.count_nonzero(self.bits))

    def measure(self) -> float:
        return self.count * self.grid.cell_area

    def complement(self) -> "GridMask":
        return GridMask(self.grid, ~self.bits)

    def apply(self, f: QSignal2D) -> QSignal2D:
        """Zero every sample outside the mask"""
        self.grid.require_match(f.grid, "mask and signal")
        return f.with_samples(f.samples * self.bits[..., None])


def inner_product(f: QSignal2D, g: QSignal2D) -> Quaternion:
    """Σ f·conj(g)·dx1·dx2"""
    f.grid.require_match(g.grid)
    total = np.sum(qmul(f.samples, qconj(g.samples)), axis=(0, 1)) * f.grid.cell_area
    return Quaternion.from_array(total)


def scalar_inner(f: QSignal2D, g: QSignal2D) -> float:
    """Real scalar part of inner_product, computed without the vector terms"""
    f.grid.require_match(g.grid)
    return float(np.sum(f.samples * g.samples) * f.grid.cell_area)


def lp_norm(f: QSignal2D, p: float = 2.0) -> float:
    """(Σ|f|^p dx1 dx2)^{1/p}; p = inf gives max |f|"""
    if math.isnan(p) or p < 1:
        raise ParameterError(f"p must be at least 1, got {p}")
    magnitude = f.abs()
    if math.isinf(p):
        return float(magnitude.max(initial=0.0))
    return float((np.sum(magnitude**p) * f.grid.cell_area) ** (1.0 / p))


def energy(f: QSignal2D) -> float:
    """‖f‖₂²"""
    return float(np.sum(f.samples**2) * f.grid.cell_area)


def _log_radial(f: QSignal2D, density: np.ndarray) -> float:
    grid = f.grid
    x1, x2 = grid.mesh()
    radius = np.hypot(x1, x2)
    origin = grid.origin_index()
    weights = np.zeros_like(radius)
    nonzero = radius > 0
    weights[nonzero] = np.log(radius[nonzero])
    value = float(np.sum(weights * density) * grid.cell_area)
    if origin is None:
        return value
    # Leading error of the punctured Riemann sum around the skipped origin cell
    if not math.isclose(grid.dx1, grid.dx2, rel_tol=1e-12):
        logger.warning(
            "log-radial origin correction assumes square cells; dx1=%g dx2=%g, using their geometric mean",
            grid.dx1,
            grid.dx2,
        )
    h = math.sqrt(grid.cell_area)
    return value - grid.cell_area * float(density[origin]) * (LATTICE_LOG_CONSTANT - math.log(h))


def moment(f: QSignal2D, kind: MomentKind, axis: int = 1) -> float:
    """Riemann-sum moments of |f|²: x_s², |x|² or ln|x| weighted.

    log_radial drops the sample at x = 0 and, when the origin is a grid
    point, subtracts the lattice correction for the skipped cell.
    """
    density = np.sum(f.samples**2, axis=-1)
    x1, x2 = f.grid.mesh()
    if kind == "axis_spread":
        if axis not in (1, 2):
            raise ParameterError(f"axis must be 1 or 2, got {axis}")
        coordinate = x1 if axis == 1 else x2
        return float(np.sum(coordinate**2 * density) * f.grid.cell_area)
    if kind == "radial":
        return float(np.sum((x1**2 + x2**2) * density) * f.grid.cell_area)
    if kind == "log_radial":
        return _log_radial(f, density)
    raise ParameterError(f"unknown moment kind {kind!r}")


def concentration_epsilon(f: QSignal2D, mask: GridMask) -> float:
    """(∫ outside E |f|²)^{1/2} / ‖f‖₂"""
    f.grid.require_match(mask.grid, "mask and signal")
    total = energy(f)
    if total == 0:
        raise SignalError("signal is zero; concentration is undefined")
    density = np.sum(f.samples**2, axis=-1)
    outside = float(np.sum(density[~mask.bits]) * f.grid.cell_area)
    return min(1.0, math.sqrt(outside / total))


def axis_factor(
    grid: Grid2D,
    axis: Axis,
    c2: float,
    c1: float,
    c0: float = 0.0,
    scale: complex = 1.0,
) -> np.ndarray:
    """scale·exp_axis(c2 u² + c1 u + c0) as a broadcastable quaternion array.

    The i-plane factor varies along x1, the j-plane factor along x2.
    """
    if axis == "i":
        u = grid.axis(1).coordinates()
        shape: Tuple[int, ...] = (grid.n1, 1)
    else:
        u = grid.axis(2).coordinates()
        shape = (1, grid.n2)
    phase = complex(scale) * np.exp(1j * (c2 * u**2 + c1 * u + c0))
    return embed(phase.reshape(shape), axis)


def chirp_multiply(
    f: QSignal2D,
    side: Side,
    axis: Axis,
    c2: float,
    c1: float,
    c0: float = 0.0,
    scale: complex = 1.0,
) -> QSignal2D:
    """Multiply every sample by scale·exp_axis(c2 u² + c1 u + c0) on the given side"""
    factor = axis_factor(f.grid, axis, c2, c1, c0, scale)
    if side == "left":
        return f.with_samples(qmul(factor, f.samples))
    if side == "right":
        return f.with_samples(qmul(f.samples, factor))
    raise ParameterError(f"side must be 'left' or 'right', got {side!r}")


def shift_samples(f: QSignal2D, k1: int, k2: int) -> QSignal2D:
    """g[i1, i2] = f[i1 - k1, i2 - k2], zero where the source falls off the grid"""
    n1, n2 = f.grid.shape
    out = np.zeros_like(f.samples)
    src1 = slice(max(0, -k1), min(n1, n1 - k1))
    dst1 = slice(max(0, k1), min(n1, n1 + k1))
    src2 = slice(max(0, -k2), min(n2, n2 - k2))
    dst2 = slice(max(0, k2), min(n2, n2 + k2))
    if abs(k1) < n1 and abs(k2) < n2:
        out[dst1, dst2] = f.samples[src1, src2]
    return f.with_samples(out)


def _gaussian(grid: Grid2D, k1: float, k2: float, center: Tuple[float, float] = (0.0, 0.0)) -> np.ndarray:
    x1, x2 = grid.mesh()
    return np.exp(-(k1 * (x1 - center[0]) ** 2 + k2 * (x2 - center[1]) ** 2))


def _random_bumps(grid: Grid2D, spec: RandomSpec) -> np.ndarray:
    rng = np.random.default_rng(spec.seed)
    x1, x2 = grid.mesh()
    samples = np.zeros(grid.shape + (4,))
    for _ in range(spec.components):
        c1, c2 = rng.uniform(-spec.spread, spec.spread, size=2)
        width = rng.uniform(spec.min_width, spec.max_width)
        amplitude = rng.standard_normal(4)
        bump = np.exp(-((x1 - c1) ** 2 + (x2 - c2) ** 2) / (2 * width**2))
        samples += bump[..., None] * amplitude
    return samples


def sample_function(
    grid: Grid2D,
    spec: Union[GaussianSpec, ChirpedGaussianSpec, BoxSpec, RandomSpec, Dict[str, Any]],
) -> QSignal2D:
    """Sample a closed-form test signal on a grid"""
    if isinstance(spec, dict):
        spec = parse_signal_spec(spec)
    logger.debug("sampling %s on %s", spec.kind, grid.shape)
    if isinstance(spec, GaussianSpec):
        return QSignal2D.from_real(grid, _gaussian(grid, spec.k1, spec.k2, spec.center))
    if isinstance(spec, ChirpedGaussianSpec):
        base = _gaussian(grid, spec.k1, spec.k2)[..., None] * np.asarray(spec.amplitude, dtype=np.float64)
        f = QSignal2D(grid, base)
        f = chirp_multiply(f, "left", "i", spec.a1, spec.d1)
        return chirp_multiply(f, "right", "j", spec.a2, spec.d2)
    if isinstance(spec, BoxSpec):
        x1, x2 = grid.mesh()
        inside = (np.abs(x1) <= spec.half_width1) & (np.abs(x2) <= spec.half_width2)
        return QSignal2D.from_real(grid, inside.astype(np.float64))
    if isinstance(spec, RandomSpec):
        return QSignal2D(grid, _random_bumps(grid, spec))
    raise SignalError(f"unknown signal descriptor {spec!r}")
