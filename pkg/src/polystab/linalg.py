"""Dense complex linear-algebra kernels and seeded random matrix generation.

Everything here is a thin, contract-checked wrapper over LAPACK via numpy.
All functions are pure; random generation is deterministic per seed
(PCG64 through ``numpy.random.default_rng``).
"""

import numpy as np

__all__ = [
    "sigma_min",
    "spectral_norm",
    "lambda_H",
    "hermitian_eigenvalues",
    "gen_psd",
    "gen_skew",
    "gen_complex",
    "gen_unit_vector",
]


def _as_matrix(m):
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim={a.ndim}")
    if not np.all(np.isfinite(a.view(np.float64))):
        raise ValueError("matrix has non-finite entries")
    return a


def sigma_min(m):
    """Smallest singular value; requires a square matrix."""
    a = _as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"sigma_min needs a square matrix, got {a.shape}")
    if a.size == 0:
        return 0.0
    return float(np.linalg.svd(a, compute_uv=False)[-1])


def spectral_norm(m):
    """Largest singular value (operator-2 norm)."""
    a = _as_matrix(m)
    if a.size == 0:
        return 0.0
    return float(np.linalg.svd(a, compute_uv=False)[0])


def lambda_H(m):
    """Largest (possibly negative) eigenvalue of the Hermitian part (M+M*)/2."""
    a = _as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"lambda_H needs a square matrix, got {a.shape}")
    h = (a + a.conj().T) / 2
    return float(np.linalg.eigvalsh(h)[-1])


def hermitian_eigenvalues(m, tol=1e-12):
    """All eigenvalues of a Hermitian matrix, ascending.

    Raises if the Hermitian residual exceeds ``tol`` times the spectral norm.
    """
    a = _as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ValueError("hermitian_eigenvalues needs a square matrix")
    scale = spectral_norm(a)
    if scale > 0 and spectral_norm(a - a.conj().T) > tol * scale * 2:
        raise ValueError("matrix is not Hermitian within tolerance")
    return np.linalg.eigvalsh((a + a.conj().T) / 2)


def gen_complex(n, seed, cols=None):
    """Standard complex Gaussian matrix, deterministic per seed."""
    rng = np.random.default_rng(seed)
    cols = n if cols is None else cols
    return (rng.standard_normal((n, cols)) + 1j * rng.standard_normal((n, cols))) / np.sqrt(2)


def gen_psd(n, seed):
    """Hermitian positive semi-definite B*B with B complex Gaussian."""
    b = gen_complex(n, seed)
    return b.conj().T @ b


def gen_skew(n, seed, psd=False):
    """Skew-Hermitian matrix; with ``psd=True`` returns G = i*(PSD) so -iG is PSD."""
    if psd:
        return 1j * gen_psd(n, seed)
    c = gen_complex(n, seed)
    return (c - c.conj().T) / 2


def gen_unit_vector(n, rng):
    """Complex Gaussian unit vector drawn from an existing Generator."""
    while True:
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        nv = np.linalg.norm(v)
        if nv > 1e-12:
            return v / nv
