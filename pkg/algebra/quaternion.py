"""
Hamilton quaternion algebra for qqpft

Quaternion arrays are float64 arrays whose last axis holds the four
components (r, x, y, z) of r + x i + y j + z k. Every function broadcasts
over the leading axes. i-complex numbers (span{1, i}) are carried as numpy
complex values, with numpy's imaginary unit standing for i.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Literal, Tuple, Union

import numpy as np

from errors import ParameterError

Axis = Literal["i", "j"]
ComplexI = complex

ArrayLike = Union[np.ndarray, "Quaternion", float]


def as_quaternions(values: ArrayLike) -> np.ndarray:
    """Coerce a Quaternion, real scalar or (..., 4) array to a float64 array"""
    if isinstance(values, Quaternion):
        return values.to_array()
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim == 0:
        return np.array([float(arr), 0.0, 0.0, 0.0])
    if arr.shape[-1] != 4:
        raise ValueError(f"quaternion arrays need a trailing axis of 4, got shape {arr.shape}")
    return arr


def qmul(p: ArrayLike, q: ArrayLike) -> np.ndarray:
    """Hamilton product p·q (non-commutative)"""
    p = as_quaternions(p)
    q = as_quaternions(q)
    a1, b1, c1, d1 = np.moveaxis(p, -1, 0)
    a2, b2, c2, d2 = np.moveaxis(q, -1, 0)
    return np.stack(
        [
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ],
        axis=-1,
    )


def qconj(q: ArrayLike) -> np.ndarray:
    """Quaternion conjugate: negate the vector part"""
    q = as_quaternions(q)
    return q * np.array([1.0, -1.0, -1.0, -1.0])


def qnorm(q: ArrayLike) -> np.ndarray:
    """Euclidean norm |q| over the trailing axis"""
    return np.sqrt(np.sum(as_quaternions(q) ** 2, axis=-1))


def qinv(q: ArrayLike) -> np.ndarray:
    """Multiplicative inverse conj(q)/|q|²"""
    q = as_quaternions(q)
    return qconj(q) / np.sum(q**2, axis=-1, keepdims=True)


def scalar_part(q: ArrayLike) -> np.ndarray:
    """Real scalar part [q]₀"""
    return as_quaternions(q)[..., 0]


def embed(z: Union[complex, np.ndarray], axis: Axis = "i") -> np.ndarray:
    """Embed complex values u + v·1j as u + v·axis"""
    z = np.asarray(z, dtype=np.complex128)
    out = np.zeros(z.shape + (4,))
    out[..., 0] = z.real
    out[..., 1 if axis == "i" else 2] = z.imag
    return out


def exp_unit(theta: Union[float, np.ndarray], axis: Axis) -> np.ndarray:
    """cos θ + axis·sin θ"""
    return embed(np.exp(1j * np.asarray(theta, dtype=np.float64)), axis)


def exp_i(theta: Union[float, np.ndarray]) -> np.ndarray:
    """cos θ + i sin θ"""
    return exp_unit(theta, "i")


def exp_j(theta: Union[float, np.ndarray]) -> np.ndarray:
    """cos θ + j sin θ"""
    return exp_unit(theta, "j")


def principal_root(b: float) -> complex:
    """Principal square root of b·1j as a complex number.

    For b > 0 this is √b·e^{iπ/4}, for b < 0 it is √|b|·e^{-iπ/4}; the
    square is exactly b·1j in both cases.
    """
    if b == 0:
        raise ParameterError("b must be nonzero")
    phase = np.pi / 4 if b > 0 else -np.pi / 4
    return complex(np.sqrt(abs(b)) * np.exp(1j * phase))


def sqrt_unit(b: float, axis: Axis) -> np.ndarray:
    """Square root of b·i (axis i) or b·j (axis j) on the principal branch"""
    return embed(principal_root(b), axis)


def symplectic_split(q: ArrayLike) -> Tuple[np.ndarray, np.ndarray]:
    """Split q = p + s·j into i-complex parts p = r + x i and s = y + z i"""
    q = as_quaternions(q)
    p = q[..., 0] + 1j * q[..., 1]
    s = q[..., 2] + 1j * q[..., 3]
    return p, s


def symplectic_join(p: Union[complex, np.ndarray], s: Union[complex, np.ndarray]) -> np.ndarray:
    """Inverse of symplectic_split: (p, s) -> p + s·j"""
    p = np.asarray(p, dtype=np.complex128)
    s = np.asarray(s, dtype=np.complex128)
    p, s = np.broadcast_arrays(p, s)
    return np.stack([p.real, p.imag, s.real, s.imag], axis=-1)


def left_matrix(q: ArrayLike) -> np.ndarray:
    """Real 4×4 matrices L(q) with q·p = L(q) @ p"""
    a, b, c, d = np.moveaxis(as_quaternions(q), -1, 0)
    rows = [
        [a, -b, -c, -d],
        [b, a, -d, c],
        [c, d, a, -b],
        [d, -c, b, a],
    ]
    return np.stack([np.stack(row, axis=-1) for row in rows], axis=-2)


def right_matrix(q: ArrayLike) -> np.ndarray:
    """Real 4×4 matrices R(q) with p·q = R(q) @ p"""
    a, b, c, d = np.moveaxis(as_quaternions(q), -1, 0)
    rows = [
        [a, -b, -c, -d],
        [b, a, d, -c],
        [c, -d, a, b],
        [d, c, -b, a],
    ]
    return np.stack([np.stack(row, axis=-1) for row in rows], axis=-2)


@dataclass(frozen=True)
class Quaternion:
    """A single quaternion r + x i + y j + z k"""

    r: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    @classmethod
    def from_array(cls, values: np.ndarray) -> "Quaternion":
        r, x, y, z = (float(v) for v in np.asarray(values, dtype=np.float64).reshape(4))
        return cls(r, x, y, z)

    @classmethod
    def from_complex(cls, value: complex, axis: Axis = "i") -> "Quaternion":
        return cls.from_array(embed(value, axis))

    def to_array(self) -> np.ndarray:
        return np.array([self.r, self.x, self.y, self.z])

    def __iter__(self) -> Iterator[float]:
        return iter((self.r, self.x, self.y, self.z))

    def __add__(self, other: object) -> "Quaternion":
        if isinstance(other, (Quaternion, int, float)):
            return Quaternion.from_array(self.to_array() + as_quaternions(other))
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other: object) -> "Quaternion":
        if isinstance(other, (Quaternion, int, float)):
            return Quaternion.from_array(self.to_array() - as_quaternions(other))
        return NotImplemented

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.r, -self.x, -self.y, -self.z)

    def __mul__(self, other: object) -> "Quaternion":
        if isinstance(other, Quaternion):
            return Quaternion.from_array(qmul(self, other))
        if isinstance(other, (int, float)):
            return Quaternion.from_array(self.to_array() * other)
        return NotImplemented

    def __rmul__(self, other: object) -> "Quaternion":
        if isinstance(other, (int, float)):
            return Quaternion.from_array(self.to_array() * other)
        return NotImplemented

    def conj(self) -> "Quaternion":
        return Quaternion(self.r, -self.x, -self.y, -self.z)

    def norm(self) -> float:
        return float(qnorm(self))

    def inverse(self) -> "Quaternion":
        return Quaternion.from_array(qinv(self))

    @property
    def scalar(self) -> float:
        return self.r

    def split(self) -> Tuple[complex, complex]:
        p, s = symplectic_split(self)
        return complex(p), complex(s)

    def isclose(self, other: "Quaternion", atol: float = 1e-12) -> bool:
        return bool(np.allclose(self.to_array(), other.to_array(), rtol=0.0, atol=atol))


ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)
