import numpy as np
import pytest

from bfdecide.errors import NotPositiveDefinite, Singular
from bfdecide.linalg import invert, sqrt_decompose


def test_sqrt_identity():
    v = sqrt_decompose(np.eye(2))
    assert np.allclose(v, np.eye(2), atol=1e-12)


def test_sqrt_scalar():
    v = sqrt_decompose(np.array([[5.0]]))
    assert abs(v[0, 0] - np.sqrt(5)) < 1e-12


def test_sqrt_rank_one_update():
    a = np.array([1.0, 1.0])
    q = np.eye(2) + np.outer(a, a)
    v = sqrt_decompose(q)
    assert np.max(np.abs(v.T @ v - q)) <= 1e-10
    # upper triangular
    assert v[1, 0] == 0.0


def test_sqrt_random_recompose():
    rng = np.random.default_rng(3)
    for _ in range(20):
        a = rng.standard_normal(5)
        q = np.eye(5) + np.outer(a, a)
        v = sqrt_decompose(q)
        assert np.max(np.abs(v.T @ v - q)) <= 1e-10 * np.max(np.abs(q))
        assert np.allclose(v, np.triu(v))


def test_sqrt_rejects_indefinite():
    with pytest.raises(NotPositiveDefinite):
        sqrt_decompose(np.array([[1.0, 2.0], [2.0, 1.0]]))


def test_sqrt_rejects_nonsymmetric():
    with pytest.raises(ValueError):
        sqrt_decompose(np.array([[1.0, 2.0], [0.0, 1.0]]))


def test_invert_identity():
    assert np.allclose(invert(np.eye(3)), np.eye(3))


def test_invert_diagonal():
    inv = invert(np.diag([2.0, 4.0]))
    assert np.allclose(inv, np.diag([0.5, 0.25]))


def test_invert_random_residual():
    rng = np.random.default_rng(11)
    for _ in range(10):
        a = rng.standard_normal((4, 4)) + 4 * np.eye(4)
        inv = invert(a)
        assert np.max(np.abs(a @ inv - np.eye(4))) <= 1e-8


def test_invert_singular():
    with pytest.raises(Singular):
        invert(np.array([[1.0, 2.0], [2.0, 4.0]]))
