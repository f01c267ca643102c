import math

import numpy as np
import pytest

from algebra.quaternion import (
    ONE,
    I,
    J,
    K,
    Quaternion,
    embed,
    exp_i,
    exp_j,
    exp_unit,
    left_matrix,
    principal_root,
    qconj,
    qinv,
    qmul,
    qnorm,
    right_matrix,
    scalar_part,
    sqrt_unit,
    symplectic_join,
    symplectic_split,
)
from errors import ParameterError


def test_hamilton_relations():
    """i² = j² = k² = ijk = -1"""
    assert I * I == -ONE
    assert J * J == -ONE
    assert K * K == -ONE
    assert (I * J) * K == -ONE
    assert I * J == K
    assert J * I == -K


def test_product_is_not_commutative():
    p = Quaternion(1.0, 2.0, 3.0, 4.0)
    q = Quaternion(-1.0, 0.5, 0.0, 2.0)
    assert not (p * q).isclose(q * p)


def test_norm_is_multiplicative():
    rng = np.random.default_rng(0)
    p, q = rng.standard_normal((2, 50, 4))
    np.testing.assert_allclose(qnorm(qmul(p, q)), qnorm(p) * qnorm(q), rtol=1e-13)


def test_conjugate_reverses_products():
    rng = np.random.default_rng(1)
    p, q = rng.standard_normal((2, 10, 4))
    np.testing.assert_allclose(qconj(qmul(p, q)), qmul(qconj(q), qconj(p)), atol=1e-14)


def test_inverse():
    q = Quaternion(1.0, -2.0, 0.5, 3.0)
    assert (q * q.inverse()).isclose(ONE)
    np.testing.assert_allclose(qmul(qinv(q.to_array()), q.to_array()), ONE.to_array(), atol=1e-15)


def test_multiplication_matrices():
    rng = np.random.default_rng(2)
    p, q = rng.standard_normal((2, 4))
    np.testing.assert_allclose(left_matrix(q) @ p, qmul(q, p), atol=1e-14)
    np.testing.assert_allclose(right_matrix(q) @ p, qmul(p, q), atol=1e-14)


@pytest.mark.parametrize("b", [1.0, 2.0, -1.0, -0.5])
def test_principal_root_squares_to_b_i(b):
    root = principal_root(b)
    assert root**2 == pytest.approx(1j * b, abs=1e-14)
    assert root.real > 0


def test_principal_root_rejects_zero():
    with pytest.raises(ParameterError, match="b must be nonzero"):
        principal_root(0.0)


def test_embedding_into_j_plane():
    assert Quaternion.from_array(embed(2 + 3j, "j")) == Quaternion(2.0, 0.0, 3.0, 0.0)
    assert Quaternion.from_complex(1j) == I


def test_symplectic_split():
    q = Quaternion(1.0, 2.0, 3.0, 4.0)
    p, s = q.split()
    assert p == 1 + 2j
    assert s == 3 + 4j
    # q = p + s·j
    rebuilt = Quaternion.from_complex(p) + Quaternion.from_complex(s) * J
    assert rebuilt.isclose(q)
    np.testing.assert_array_equal(symplectic_join(*symplectic_split(q.to_array())), q.to_array())


def test_j_conjugates_i_complex_numbers():
    """j·z = conj(z)·j for z in span{1, i}"""
    z = Quaternion.from_complex(0.3 - 1.7j)
    assert (J * z).isclose(Quaternion.from_complex(0.3 + 1.7j) * J)


def test_unit_phases():
    np.testing.assert_allclose(exp_i(math.pi / 2), I.to_array(), atol=1e-15)
    np.testing.assert_allclose(qmul(exp_i(math.pi / 4), exp_i(math.pi / 4)), I.to_array(), atol=1e-15)
    theta = np.linspace(-3.0, 3.0, 13)
    np.testing.assert_allclose(qconj(exp_j(theta)), exp_j(-theta), atol=1e-15)
    np.testing.assert_allclose(qnorm(exp_unit(theta, "j")), 1.0, atol=1e-15)


def test_sqrt_unit_examples():
    s = 1 / math.sqrt(2)
    np.testing.assert_allclose(sqrt_unit(1.0, "i"), [s, s, 0.0, 0.0], atol=1e-15)
    np.testing.assert_allclose(sqrt_unit(-1.0, "i"), [s, -s, 0.0, 0.0], atol=1e-15)
    root = sqrt_unit(2.0, "j")
    np.testing.assert_allclose(qmul(root, root), [0.0, 0.0, 2.0, 0.0], atol=1e-15)


def test_sqrt_unit_rejects_zero():
    with pytest.raises(ParameterError, match="b must be nonzero"):
        sqrt_unit(0.0, "j")


def test_associativity():
    rng = np.random.default_rng(3)
    p, q, r = rng.standard_normal((3, 100, 4))
    scale = (qnorm(p) * qnorm(q) * qnorm(r))[:, None]
    np.testing.assert_allclose(qmul(qmul(p, q), r) / scale, qmul(p, qmul(q, r)) / scale, atol=1e-14)


def test_scalar_part_is_cyclic():
    rng = np.random.default_rng(4)
    p, q, r = rng.standard_normal((3, 100, 4))
    pqr = scalar_part(qmul(qmul(p, q), r))
    np.testing.assert_allclose(scalar_part(qmul(qmul(q, r), p)), pqr, atol=1e-13)
    np.testing.assert_allclose(scalar_part(qmul(qmul(r, p), q)), pqr, atol=1e-13)


def test_conjugate_product_is_squared_norm():
    q = Quaternion(1.0, 2.0, 3.0, 4.0)
    assert (q * q.conj()).isclose(Quaternion(30.0))
    assert Quaternion(1.0, 1.0, 1.0, 1.0).norm() == pytest.approx(2.0)
    assert q.conj().conj() == q


@pytest.mark.parametrize("theta", [0.3, 1.0, -2.2])
def test_i_phase_commutation(theta):
    rng = np.random.default_rng(5)
    z = embed(rng.standard_normal(20) + 1j * rng.standard_normal(20), "i")
    phase = exp_i(theta)
    np.testing.assert_allclose(qmul(phase, z), qmul(z, phase), atol=1e-15)
    # j anticommutes with i, so the phase flips when moved past it
    np.testing.assert_allclose(qmul(phase, J), qmul(J, exp_i(-theta)), atol=1e-15)
