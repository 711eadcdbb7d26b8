# boadd - bounded-strength decoupling schemes from balanced-cycle orthogonal arrays
# Copyright (C) 2024 Paweł Głomski

# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU Affero General Public License as published
# by the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.

# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the
# GNU Affero General Public License for more details.

# You should have received a copy of the GNU Affero General Public License
# along with this program. If not, see <https://www.gnu.org/licenses/>.


import functools
from typing import Sequence

import numpy as np


Complex = np.complex128

ALGEBRAIC_TOLERANCE = 1e-12


def is_unitary(matrix: np.ndarray, tol: float = ALGEBRAIC_TOLERANCE) -> bool:
    identity = np.eye(matrix.shape[0], dtype=Complex)
    return bool(np.linalg.norm(matrix.conj().T @ matrix - identity, 2) <= tol)


def is_hermitian(matrix: np.ndarray, tol: float = ALGEBRAIC_TOLERANCE) -> bool:
    return bool(np.max(np.abs(matrix - matrix.conj().T), initial=0.0) <= tol)


def hermitian_part(matrix: np.ndarray) -> np.ndarray:
    return (matrix + matrix.conj().T) / 2


def spectral_norm(matrix: np.ndarray) -> float:
    """Spectral norm of a Hermitian matrix (largest absolute eigenvalue).

    Args:
        matrix (np.ndarray): Hermitian matrix, the anti-Hermitian part (roundoff) is dropped

    Returns:
        float: The norm
    """
    if matrix.size == 0:
        return 0.0
    return float(np.max(np.abs(np.linalg.eigvalsh(hermitian_part(matrix))), initial=0.0))


def phase_free_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Frobenius distance between `a` and `b` minimized over a global phase of `b`:
    min_theta ||a - exp(i*theta)*b||.
    """
    overlap = np.vdot(b, a)
    phase = overlap / abs(overlap) if abs(overlap) > 0 else 1.0
    return float(np.linalg.norm(a - phase * b))


def kron_all(matrices: Sequence[np.ndarray]) -> np.ndarray:
    return functools.reduce(np.kron, matrices, np.ones((1, 1), dtype=Complex))


def conjugate_by_product(
    matrix: np.ndarray, site_ops: Sequence[np.ndarray | None], d: int
) -> np.ndarray:
    """Computes V^dagger @ matrix @ V for V = site_ops[0] (x) site_ops[1] (x) ... without
    assembling V. Sites with `None` carry the identity.

    Args:
        matrix (np.ndarray): Square matrix of dimension d^len(site_ops)
        site_ops (Sequence[np.ndarray | None]): Per-site d x d operators, site 0 most significant
        d (int): Local dimension

    Returns:
        np.ndarray: The conjugated matrix
    """
    sites = len(site_ops)
    dim = d**sites
    assert matrix.shape == (dim, dim)

    result = np.asarray(matrix, dtype=Complex)
    for site, op in enumerate(site_ops):
        if op is None:
            continue
        outer, inner = d**site, d ** (sites - site - 1)

        result = result.reshape(outer, d, inner, dim)
        result = np.einsum("ab,xbyz->xayz", op.conj().T, result)
        result = result.reshape(dim, outer, d, inner)
        result = np.einsum("zxby,ba->zxay", result, op)
        result = result.reshape(dim, dim)
    return result


def embed_operator(local: np.ndarray, support: Sequence[int], n: int, d: int) -> np.ndarray:
    """Lifts an operator acting on `support` (in the listed order) to n sites of dimension d."""
    sites = len(support)
    assert local.shape == (d**sites, d**sites)
    assert len(set(support)) == sites and all(0 <= site < n for site in support)

    rest = [site for site in range(n) if site not in support]
    full = np.kron(local, np.eye(d ** len(rest), dtype=Complex))

    order = list(support) + rest
    axes = [order.index(site) for site in range(n)]
    tensor = full.reshape((d,) * (2 * n)).transpose(axes + [n + axis for axis in axes])
    return tensor.reshape(d**n, d**n)


def random_hermitian(rng: np.random.Generator, dim: int, traceless: bool = True) -> np.ndarray:
    matrix = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    matrix = hermitian_part(matrix)
    if traceless:
        matrix -= np.trace(matrix) / dim * np.eye(dim, dtype=Complex)
    return matrix


def random_diagonal(rng: np.random.Generator, dim: int, traceless: bool = True) -> np.ndarray:
    diagonal = rng.standard_normal(dim)
    if traceless:
        diagonal -= diagonal.mean()
    return np.diag(diagonal).astype(Complex)
