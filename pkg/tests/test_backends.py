import os
import subprocess
import sys

import numpy as np
import pytest

import gtld
from gtld._kernels import FAMILY_IDS, METHOD_IDS, _ref

try:
    from gtld._kernels import _core
except ImportError:
    _core = None

from conftest import random_params


def _args(family, p):
    return (
        FAMILY_IDS[family],
        p.shape.get("alpha", 0.0),
        p.shape.get("gamma", 0.0),
        p.beta,
        p.theta,
        p.lam,
    )


@pytest.fixture(scope="module")
def compiled():
    if _core is None:
        pytest.skip("compiled backend not built")
    return _core


class TestSelection:
    def test_compiled_backend_active_by_default(self, compiled):
        assert gtld.BACKEND == "compiled"

    def test_env_override_selects_python(self):
        env = dict(os.environ, GTLD_PURE_PYTHON="1")
        out = subprocess.run(
            [sys.executable, "-c", "import gtld; print(gtld.BACKEND)"],
            capture_output=True,
            text=True,
            env=env,
            check=True,
        )
        assert out.stdout.strip() == "python"


class TestAgreement:
    def test_pointwise_functions(self, compiled, family, rng):
        for _ in range(10):
            p = random_params(family, rng)
            lo = p.shape["alpha"] if family == "gtp1" else 0.0
            xs = lo + np.geomspace(1e-4, 20.0, 64)
            args = _args(family, p)
            for fn in ("cdf_arr", "sf_arr", "logpdf_arr"):
                a = getattr(compiled, fn)(*args, xs)
                b = getattr(_ref, fn)(*args, xs)
                np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-12)

    def test_scalar_convention(self, compiled):
        args = (0, 0.0, 0.0, 1.0, 1.0, 0.0)
        for mod in (compiled, _ref):
            out = mod.cdf_arr(*args, 1.0)
            assert np.ndim(out) == 0

    def test_objectives(self, compiled, family, rng):
        from gtld.model import model_from_params

        for _ in range(5):
            p = random_params(family, rng)
            m = model_from_params(family, p)
            xs = np.sort(m.sample(80, seed=17))
            q = random_params(family, rng)
            args = _args(family, q)
            for mid in METHOD_IDS.values():
                va, ca = compiled.objective(mid, *args, xs)
                vb, cb = _ref.objective(mid, *args, xs)
                assert ca == cb
                assert va == pytest.approx(vb, rel=1e-10, abs=1e-10)
