import os
import random
import subprocess
import sys

import pytest

from k3isogeny import _pykernels, kernels

try:
    from k3isogeny import _ckernels
except ImportError:
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled extension not built")


def _rand_dense(rng):
    return [rng.randint(-10**6, 10**6) for _ in range(rng.randint(0, 30))]


def _rand_sparse(rng):
    return {(rng.randint(0, 5), rng.randint(0, 5)): rng.randint(-50, 50) or 1
            for _ in range(rng.randint(0, 12))}


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")
    if _ckernels is not None and os.environ.get("K3ISOGENY_PURE") is None:
        assert kernels.BACKEND == "cython"


def test_pure_conv_small():
    assert _pykernels.conv([1, 1], [1, -1]) == [1, 0, -1]
    assert _pykernels.conv([], [1]) == []


def test_pure_sparse_cancellation():
    p = {(1, 0): 1, (0, 1): 1}
    q = {(1, 0): 1, (0, 1): -1}
    assert _pykernels.sparse_mul(p, q) == {(2, 0): 1, (0, 2): -1}


@needs_ext
def test_backends_agree_dense():
    rng = random.Random(5)
    for _ in range(300):
        a, b = _rand_dense(rng), _rand_dense(rng)
        assert _ckernels.conv(a, b) == _pykernels.conv(a, b)


@needs_ext
def test_backends_agree_big_ints():
    a = [3**200, -(2**150), 7]
    b = [5**90, 1]
    assert _ckernels.conv(a, b) == _pykernels.conv(a, b)


@needs_ext
def test_backends_agree_sparse():
    rng = random.Random(6)
    for _ in range(300):
        p, q = _rand_sparse(rng), _rand_sparse(rng)
        assert _ckernels.sparse_mul(p, q) == _pykernels.sparse_mul(p, q)


def test_env_forces_fallback():
    env = dict(os.environ, K3ISOGENY_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", "from k3isogeny import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


def test_fallback_gives_same_answers():
    code = (
        "from k3isogeny.fibration import FibrationModel, fiber_configuration\n"
        "from k3isogeny.exact import UniPoly\n"
        "t = UniPoly.gen('t')\n"
        "print(fiber_configuration(FibrationModel.weierstrass(t**4-1, t**4, t**4-16)).summary())\n"
    )
    env = dict(os.environ, K3ISOGENY_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True)
    assert out.stdout.strip() == "8I2 + 8I1"
