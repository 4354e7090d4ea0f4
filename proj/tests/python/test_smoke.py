import numpy as np
import pytest

cslcs = pytest.importorskip("cslcs")


def test_hard_threshold():
    x = np.array([3.0, -1.0, 0.0, 5.0], dtype=complex)
    h = cslcs.hard_threshold(x, 2)
    assert np.allclose(h, [3.0, 0.0, 0.0, 5.0])


def test_hard_threshold_levels():
    x = np.array([3.0, 1.0, 2.0, 5.0], dtype=complex)
    h = cslcs.hard_threshold_levels(x, [1, 1], [2, 4])
    assert np.allclose(h, [3.0, 0.0, 0.0, 5.0])


def test_model_membership():
    x = np.array([1.0, 0.0, 0.0, 2.0], dtype=complex)
    assert cslcs.is_sparse_in_levels(x, [1, 1], [2, 4])
    assert not cslcs.is_sparse_in_levels(x, [0, 1], [2, 4])


def test_recovery_roundtrip():
    rng_seed = 7
    n, m = 32, 24
    a = cslcs.gaussian_matrix(m, n, rng_seed)
    x = cslcs.random_sparse_in_levels([2, 1], [16, 32], rng_seed + 1)
    y = a @ x
    out = cslcs.cosampl(a, y, [2, 1], [16, 32])
    assert out["converged"]
    assert np.linalg.norm(out["estimate"] - x) < 1e-6 * np.linalg.norm(x)


def test_cosamp_matches_cosampl_single_level():
    n, m = 24, 18
    a = cslcs.gaussian_matrix(m, n, 3)
    x = cslcs.random_sparse_in_levels([3], [n], 4)
    y = a @ x
    r1 = cslcs.cosamp(a, y, 3)
    r2 = cslcs.cosampl(a, y, [3], [n])
    assert np.array_equal(r1["estimate"], r2["estimate"])


def test_haar_roundtrip():
    v = np.arange(8, dtype=complex)
    c = cslcs.haar_forward(v)
    assert np.allclose(cslcs.haar_inverse(c), v)
    assert np.isclose(np.linalg.norm(c), np.linalg.norm(v))


def test_basis_pursuit_identity():
    y = np.array([1.0, -2.0, 0.5], dtype=complex)
    out = cslcs.basis_pursuit(np.eye(3, dtype=complex), y)
    assert out["converged"]
    assert np.allclose(out["estimate"], y, atol=1e-5)


def test_ric_identity():
    assert cslcs.ric_bruteforce(np.eye(5, dtype=complex), 2) == pytest.approx(0.0, abs=1e-13)
