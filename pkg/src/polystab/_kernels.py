"""Hot numeric kernels: polynomial evaluation and simultaneous root finding.

Two implementations live here: numba-compiled loops (default when numba is
importable) and a vectorized pure-numpy fallback.  Set the environment
variable ``POLYSTAB_NO_NUMBA=1`` to force the numpy path; ``benchmarks/``
contains a script comparing both.
"""

import os

import numpy as np

USE_NUMBA = os.environ.get("POLYSTAB_NO_NUMBA", "0") not in ("1", "true", "yes")
if USE_NUMBA:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover
        USE_NUMBA = False

MAX_SWEEPS = 200
CONVERGENCE_TOL = 1e-14


def _horner_pair_py(coeffs, z):
    # p(z) and p'(z) in one pass; coeffs ascending
    d = coeffs.shape[0] - 1
    p = coeffs[d]
    dp = 0.0 + 0.0j
    for j in range(d - 1, -1, -1):
        dp = dp * z + p
        p = p * z + coeffs[j]
    return p, dp


def _aberth_py(coeffs, max_sweeps, tol):
    """Ehrlich-Aberth sweeps, plain-python reference used under numba."""
    d = coeffs.shape[0] - 1
    # Cauchy bound for the initial circle
    m = 0.0
    for j in range(d):
        a = abs(coeffs[j] / coeffs[d])
        if a > m:
            m = a
    radius = 1.0 + m
    z = np.empty(d, dtype=np.complex128)
    for k in range(d):
        # deterministic angular stagger keeps the start asymmetric
        theta = 2.0 * np.pi * k / d + 0.4 / d + 0.25
        z[k] = radius * (np.cos(theta) + 1j * np.sin(theta))
    for _ in range(max_sweeps):
        maxcorr = 0.0
        for k in range(d):
            p, dp = _horner_pair_py(coeffs, z[k])
            if p == 0:
                continue
            if dp == 0:
                z[k] = z[k] * (1.0 + 1e-8) + 1e-8
                maxcorr = 1.0
                continue
            w = p / dp
            s = 0.0 + 0.0j
            for j in range(d):
                if j != k:
                    diff = z[k] - z[j]
                    if diff == 0:
                        diff = 1e-30 + 0j
                    s += 1.0 / diff
            denom = 1.0 - w * s
            corr = w if denom == 0 else w / denom
            z[k] -= corr
            rel = abs(corr) / (1.0 + abs(z[k]))
            if rel > maxcorr:
                maxcorr = rel
        if maxcorr < tol:
            break
    return z


def _aberth_np(coeffs, max_sweeps, tol):
    """Vectorized Ehrlich-Aberth with simultaneous (Jacobi) updates."""
    d = coeffs.shape[0] - 1
    m = np.abs(coeffs[:d] / coeffs[d]).max() if d else 0.0
    radius = 1.0 + m
    k = np.arange(d)
    theta = 2.0 * np.pi * k / d + 0.4 / d + 0.25
    z = radius * np.exp(1j * theta)
    dcoeffs = coeffs[1:] * np.arange(1, d + 1)
    for _ in range(max_sweeps):
        pv = np.polyval(coeffs[::-1], z)
        dv = np.polyval(dcoeffs[::-1], z)
        done = pv == 0
        dv = np.where(dv == 0, 1e-30, dv)
        w = pv / dv
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        diff[diff == 0] = 1e-30
        s = (1.0 / diff).sum(axis=1)
        denom = 1.0 - w * s
        denom = np.where(denom == 0, 1.0, denom)
        corr = np.where(done, 0.0, w / denom)
        z = z - corr
        if (np.abs(corr) / (1.0 + np.abs(z))).max() < tol:
            break
    return z


if USE_NUMBA:
    _horner_pair_nb = njit(cache=True)(_horner_pair_py)

    @njit(cache=True)
    def _aberth_nb(coeffs, max_sweeps, tol):  # pragma: no cover - jitted
        d = coeffs.shape[0] - 1
        m = 0.0
        for j in range(d):
            a = abs(coeffs[j] / coeffs[d])
            if a > m:
                m = a
        radius = 1.0 + m
        z = np.empty(d, dtype=np.complex128)
        for k in range(d):
            theta = 2.0 * np.pi * k / d + 0.4 / d + 0.25
            z[k] = radius * (np.cos(theta) + 1j * np.sin(theta))
        for _ in range(max_sweeps):
            maxcorr = 0.0
            for k in range(d):
                p, dp = _horner_pair_nb(coeffs, z[k])
                if p == 0:
                    continue
                if dp == 0:
                    z[k] = z[k] * (1.0 + 1e-8) + 1e-8
                    maxcorr = 1.0
                    continue
                w = p / dp
                s = 0.0 + 0.0j
                for j in range(d):
                    if j != k:
                        diff = z[k] - z[j]
                        if diff == 0:
                            diff = 1e-30 + 0j
                        s += 1.0 / diff
                denom = 1.0 - w * s
                corr = w if denom == 0 else w / denom
                z[k] -= corr
                rel = abs(corr) / (1.0 + abs(z[k]))
                if rel > maxcorr:
                    maxcorr = rel
            if maxcorr < tol:
                break
        return z


def aberth_roots(coeffs, max_sweeps=MAX_SWEEPS, tol=CONVERGENCE_TOL):
    """All complex roots of the polynomial with ascending ``coeffs``.

    The leading coefficient must be nonzero.  Exact zero trailing
    coefficients are peeled off first, so roots at the origin come out
    exactly.
    """
    coeffs = np.ascontiguousarray(coeffs, dtype=np.complex128)
    d = coeffs.shape[0] - 1
    if d < 1:
        return np.empty(0, dtype=np.complex128)
    nzero = 0
    while nzero < d and coeffs[nzero] == 0:
        nzero += 1
    reduced = coeffs[nzero:]
    if reduced.shape[0] - 1 >= 1:
        if USE_NUMBA:
            inner = _aberth_nb(reduced, max_sweeps, tol)
        else:
            inner = _aberth_np(reduced, max_sweeps, tol)
    else:
        inner = np.empty(0, dtype=np.complex128)
    if nzero:
        return np.concatenate([np.zeros(nzero, dtype=np.complex128), inner])
    return inner


def horner(coeffs, z):
    """Evaluate the polynomial with ascending ``coeffs`` at scalar or array z."""
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    return np.polyval(coeffs[::-1], z)


def warmup():
    """Trigger JIT compilation so later timing-sensitive paths run warm."""
    aberth_roots(np.array([2.0, 3.0, 1.0], dtype=np.complex128))
