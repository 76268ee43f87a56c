"""Shared test helpers: published solution vectors and explicit-matrix oracles.

The catalog vectors are hard-coded from their closed-form components so that
the package code is checked against independently constructed data.
"""

import numpy as np

from flatsic import CVec, cvec

# quadratic residues, computed here by brute squaring (independent of the
# package's residue machinery)
QR7 = sorted({(k * k) % 7 for k in range(1, 7)})
QR19 = sorted({(k * k) % 19 for k in range(1, 19)})
QR67 = sorted({(k * k) % 67 for k in range(1, 67)})


def d7_solution(beta_coeff: int) -> np.ndarray:
    """Rescaled dimension-7 solutions.

    Components are (sqrt2 (b + 1) + 2)/2 at residue indices and
    (sqrt2 (-b + 1) + 2)/2 elsewhere, with b = beta_coeff * sqrt(-2 sqrt2 - 1)
    and first component -2 - 2 sqrt2.  beta_coeff=-1 gives the first printed
    solution, +1 the second.
    """
    beta = beta_coeff * 1j * np.sqrt(2.0 * np.sqrt(2.0) + 1.0)
    hi = (np.sqrt(2.0) * (beta + 1.0) + 2.0) / 2.0
    lo = (np.sqrt(2.0) * (-beta + 1.0) + 2.0) / 2.0
    x = np.empty(7, dtype=complex)
    x[0] = -2.0 - 2.0 * np.sqrt(2.0)
    for j in range(1, 7):
        x[j] = hi if j in QR7 else lo
    return x


def d19_solution(beta_coeff: int = +1) -> np.ndarray:
    """Rescaled dimension-19 solution: beta-1 on residues, -beta-1 elsewhere,
    beta = beta_coeff * sqrt(-2 sqrt5 - 1)."""
    beta = beta_coeff * 1j * np.sqrt(2.0 * np.sqrt(5.0) + 1.0)
    x = np.empty(19, dtype=complex)
    x[0] = -2.0 - 2.0 * np.sqrt(5.0)
    for j in range(1, 19):
        x[j] = beta - 1.0 if j in QR19 else -beta - 1.0
    return x


def d67_solution(beta_coeff: int = +1) -> np.ndarray:
    """Rescaled dimension-67 X-overlap solution (not a SIC): beta-1 on
    squares mod 67, -beta-1 elsewhere, beta = beta_coeff * sqrt(-2 sqrt17 - 1)."""
    beta = beta_coeff * 1j * np.sqrt(2.0 * np.sqrt(17.0) + 1.0)
    x = np.empty(67, dtype=complex)
    x[0] = -2.0 - 2.0 * np.sqrt(17.0)
    for j in range(1, 67):
        x[j] = beta - 1.0 if j in QR67 else -beta - 1.0
    return x


def normalize_rescaled(x: np.ndarray) -> CVec:
    """Independent conversion of a rescaled vector to the normalized form:
    divide by the purely imaginary sqrt(x0), then by the norm."""
    sx0 = 1j * np.sqrt(-x[0].real)
    w = x / sx0
    return cvec(w / np.linalg.norm(w))


def rescaled_cvec(x: np.ndarray) -> CVec:
    return cvec(x, "rescaled")


def xz_matrices(d: int):
    """Explicit clock and shift matrices (oracle path)."""
    om = np.exp(2j * np.pi / d)
    X = np.zeros((d, d), dtype=complex)
    Z = np.zeros((d, d), dtype=complex)
    for r in range(d):
        X[(r + 1) % d, r] = 1.0
        Z[r, r] = om**r
    return X, Z


def displacement_matrix(d: int, j: int, k: int) -> np.ndarray:
    """Explicit D_{j,k} = tau^{jk} X^j Z^k with indices reduced mod d first."""
    X, Z = xz_matrices(d)
    j %= d
    k %= d
    tau = -np.exp(1j * np.pi / d)
    return tau ** (j * k) * (
        np.linalg.matrix_power(X, j) @ np.linalg.matrix_power(Z, k)
    )


def random_complex(rng, d: int) -> np.ndarray:
    return rng.normal(size=d) + 1j * rng.normal(size=d)


def random_unit(rng, d: int) -> CVec:
    v = random_complex(rng, d)
    return cvec(v / np.linalg.norm(v))
