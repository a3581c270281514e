"""Shared generators for the test suite."""

from __future__ import annotations

import numpy as np


def random_irreducible(rng: np.random.Generator, n: int, density: float = 0.5) -> np.ndarray:
    """Nonnegative irreducible matrix: a full cycle plus random extras."""
    M = np.zeros((n, n))
    perm = rng.permutation(n)
    for a, b in zip(perm, np.roll(perm, -1)):
        M[a, b] = rng.uniform(0.1, 1.1)
    extra = rng.uniform(0.1, 1.1, (n, n)) * (rng.uniform(size=(n, n)) < density)
    return M + extra


def dense_perron_oracle(M: np.ndarray) -> tuple[float, np.ndarray]:
    """Spectral radius and dominant nonnegative eigenvector via a full
    eigendecomposition plus a null-space solve (independent of power
    iteration)."""
    eigvals = np.linalg.eigvals(M)
    rho = float(np.abs(eigvals).max())
    # Eigenvector from the null space of (M - rho I): most reliable way to
    # get a real vector when other eigenvalues share the modulus.
    _, _, vt = np.linalg.svd(M - rho * np.eye(M.shape[0]))
    v = vt[-1]
    if v.sum() < 0:
        v = -v
    v = v / np.abs(v).max()
    return rho, v


def interior_cone_instance(
    rng: np.random.Generator, n: int, l: int, budget: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Demand matrix whose row cone contains ``budget`` in its interior,
    plus the positive price certificate: C.T @ p_star == budget exactly."""
    p_star = rng.uniform(0.5, 2.0, n)
    raw = rng.uniform(0.2, 1.2, (n, l))
    u = raw.T @ p_star
    C = raw * (budget / u)[None, :]
    return C, p_star
