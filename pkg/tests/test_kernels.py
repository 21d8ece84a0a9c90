import json
import os
import subprocess
import sys

import numpy as np

from polystab import _kernels

SNIPPET = """
import json
import numpy as np
from polystab import _kernels
rng = np.random.default_rng(17)
out = {"use_numba": _kernels.USE_NUMBA, "roots": []}
for _ in range(20):
    deg = int(rng.integers(1, 10))
    c = rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1)
    r = sorted(_kernels.aberth_roots(c), key=lambda z: (round(z.real, 8), round(z.imag, 8)))
    out["roots"].append([[z.real, z.imag] for z in r])
print(json.dumps(out))
"""


def _run(no_numba):
    env = dict(os.environ)
    env["POLYSTAB_NO_NUMBA"] = "1" if no_numba else "0"
    proc = subprocess.run([sys.executable, "-c", SNIPPET], env=env,
                          capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)


def test_numpy_fallback_matches_default_path():
    default = _run(no_numba=False)
    fallback = _run(no_numba=True)
    assert fallback["use_numba"] is False
    for a, b in zip(default["roots"], fallback["roots"]):
        ra = np.array([complex(re, im) for re, im in a])
        rb = np.array([complex(re, im) for re, im in b])
        assert np.abs(ra - rb).max() <= 1e-9


def test_aberth_handles_roots_at_origin():
    c = np.array([0.0, 0.0, -1.0, 1.0], dtype=np.complex128)  # z^2 (z - 1)
    r = sorted(_kernels.aberth_roots(c), key=lambda z: z.real)
    assert r[0] == 0 and r[1] == 0
    assert abs(r[2] - 1.0) <= 1e-12


def test_aberth_residuals_small():
    rng = np.random.default_rng(3)
    for _ in range(100):
        deg = int(rng.integers(1, 13))
        c = rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1)
        rts = _kernels.aberth_roots(c)
        vals = np.abs(_kernels.horner(c, rts))
        scale = np.abs(c).max() * np.maximum(1.0, np.abs(rts)) ** deg
        assert (vals / scale).max() <= 1e-10


def test_degree_zero_has_no_roots():
    assert _kernels.aberth_roots(np.array([3.0 + 0j])).size == 0
