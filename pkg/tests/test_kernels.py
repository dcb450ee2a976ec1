import copy
import os
import random
import subprocess
import sys

import pytest

from qzeta import kernels, sampling
from qzeta.quaternion import ONE, ZERO, Quaternion
from qzeta.series import GAUSSIAN, RATIONAL

compiled = kernels.compiled()
needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled kernels not built")
BACKENDS = [kernels.pure] + ([compiled] if compiled is not None else [])


def rational_list(rng, n, nonzero_first=False):
    out = [sampling.rational(rng) for _ in range(n)]
    if nonzero_first:
        out[0] = rng.choice(sampling.NONZERO_RATIONALS)
    return out


@pytest.mark.parametrize("backend", BACKENDS, ids=lambda b: b.BACKEND)
def test_mul_and_inverse(backend):
    rng = random.Random(1)
    for T in range(6):
        a, b = rational_list(rng, T + 1, True), rational_list(rng, T + 1)
        prod = backend.mul_trunc(a, b, T, ZERO)
        want = [sum((a[i] * b[k - i] for i in range(k + 1)), ZERO) for k in range(T + 1)]
        assert list(prod) == want
        inv = backend.inv_trunc(a, T, 1 / a[0], ZERO)
        assert list(backend.mul_trunc(a, inv, T, ZERO)) == [ONE] + [ZERO] * T


@pytest.mark.parametrize("backend", BACKENDS, ids=lambda b: b.BACKEND)
def test_noncommutative_mul(backend):
    rng = random.Random(2)
    a = [sampling.quaternion(rng) for _ in range(4)]
    b = [sampling.quaternion(rng) for _ in range(4)]
    out = backend.mul_trunc(a, b, 3, Quaternion.zero())
    assert out[1] == a[0] * b[1] + a[1] * b[0]


@needs_compiled
def test_backends_agree_on_determinants():
    rng = random.Random(3)
    for trial in range(25):
        n, T = 1 + trial % 4, trial % 5
        M = sampling.matrix(rng, n, n, T, RATIONAL)
        re = [[list(e.coeffs) for e in row] for row in M.entries]
        assert kernels.pure.det_real(copy.deepcopy(re), n, T, ZERO, ONE) == compiled.det_real(
            copy.deepcopy(re), n, T, ZERO, ONE
        )
        G = sampling.matrix(rng, n, n, T, GAUSSIAN)
        gre = [[[c.re for c in e.coeffs] for e in row] for row in G.entries]
        gim = [[[c.im for c in e.coeffs] for e in row] for row in G.entries]
        p = kernels.pure.det_complex(copy.deepcopy(gre), copy.deepcopy(gim), n, T, ZERO, ONE)
        c = compiled.det_complex(copy.deepcopy(gre), copy.deepcopy(gim), n, T, ZERO, ONE)
        assert (p is None and c is None) or [list(x) for x in p] == [list(x) for x in c]


def test_missing_pivot_returns_none():
    # constant term zero in every entry of the only column
    for backend in BACKENDS:
        assert backend.det_real([[[ZERO, ONE]]], 1, 1, ZERO, ONE) is None


def test_environment_forces_pure_backend():
    env = dict(os.environ, QZETA_PURE_PYTHON="1")
    code = "from qzeta import kernels; print(kernels.BACKEND)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_full_route_is_backend_independent():
    env = dict(os.environ, QZETA_PURE_PYTHON="1")
    code = (
        "import random; from qzeta import sampling; from qzeta.graph import complete_graph;"
        "from qzeta.zeta import zeta_hashimoto; from qzeta.series import series_to_json;"
        "G = sampling.arc_weights(complete_graph(4), random.Random(8));"
        "print(series_to_json(zeta_hashimoto(G, 5).z_inv))"
    )
    pure = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    active = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, check=True)
    assert pure.stdout == active.stdout
