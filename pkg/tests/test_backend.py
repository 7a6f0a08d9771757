import subprocess
import sys

import numpy as np
import pytest

from mhtkit import backend


def test_backend_reports_a_known_name():
    assert backend.BACKEND in ("compiled", "pure")
    assert "pure" in backend.available_backends()


def test_get_impl_names():
    assert backend.get_impl("pure") is not None
    with pytest.raises(ValueError):
        backend.get_impl("fortran")


@pytest.mark.skipif("compiled" not in backend.available_backends(),
                    reason="extension not built")
def test_backends_agree_on_pattern_kernels():
    rng = np.random.default_rng(1)
    pure = backend.get_impl("pure")
    comp = backend.get_impl("compiled")
    for _ in range(25):
        k = int(rng.integers(1, 4))
        lengths = [int(rng.integers(1, 9)) for _ in range(k + 1)]
        values = [rng.standard_normal(m) + 1j * rng.standard_normal(m)
                  for m in lengths]
        offsets = rng.integers(-6, 7, size=k + 1)
        mults = np.arange(k + 1)
        nt = int(rng.integers(1, 7)) * 2
        ts = rng.integers(-8, 9, size=nt)
        weights = rng.standard_normal(nt) + 1j * rng.standard_normal(nt)
        for paired in (False, True):
            a = backend.shift_product_sum(values, offsets, mults, ts, weights,
                                          paired, -10, 10, impl=pure)
            b = backend.shift_product_sum(values, offsets, mults, ts, weights,
                                          paired, -10, 10, impl=comp)
            np.testing.assert_allclose(a, b, rtol=1e-13, atol=1e-13)


@pytest.mark.skipif("compiled" not in backend.available_backends(),
                    reason="extension not built")
def test_backends_agree_on_box_norms():
    rng = np.random.default_rng(2)
    pure = backend.get_impl("pure")
    comp = backend.get_impl("compiled")
    for _ in range(10):
        n = int(rng.integers(2, 10))
        vals = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        for d in (1, 2, 3):
            a = backend.gowers_raw_direct(vals, d, impl=pure)
            b = backend.gowers_raw_direct(vals, d, impl=comp)
            assert b == pytest.approx(a, rel=1e-11, abs=1e-13)
            c = backend.gowers_raw_recursive(vals, d, impl=pure)
            e = backend.gowers_raw_recursive(vals, d, impl=comp)
            assert e == pytest.approx(c, rel=1e-11, abs=1e-13)
            assert b == pytest.approx(c, rel=1e-9, abs=1e-12)


def test_shift_product_sum_validation():
    vals = [np.ones(3, dtype=complex)]
    with pytest.raises(ValueError):
        backend.shift_product_sum(vals, [0, 1], [0], [1], [1.0], False, 0, 2)
    with pytest.raises(ValueError):
        backend.shift_product_sum(vals, [0], [0], [1, 2], [1.0], False, 0, 2)
    with pytest.raises(ValueError):
        backend.shift_product_sum(vals, [0], [0], [1], [1.0], True, 0, 2)


def test_env_var_forces_pure_backend():
    code = ("import mhtkit.backend as b; "
            "print(b.BACKEND)")
    out = subprocess.run([sys.executable, "-c", code],
                         capture_output=True, text=True,
                         env={"PATH": "/usr/bin:/bin", "MHTKIT_PURE": "1"})
    assert out.stdout.strip() == "pure"


def test_full_pipeline_matches_under_pure_backend():
    # run a tiny end-to-end computation in a forced-pure subprocess and
    # compare against the in-process (possibly compiled) result
    code = (
        "import numpy as np\n"
        "from mhtkit import Signal, TruncationParams, dual_form\n"
        "rng = np.random.default_rng(8)\n"
        "fs = [Signal(0, rng.standard_normal(6)) for _ in range(3)]\n"
        "v = dual_form(fs, TruncationParams(r=1, R=5, k=2))\n"
        "print(repr(complex(v)))\n")
    runs = {}
    for env_val in ("0", "1"):
        out = subprocess.run([sys.executable, "-c", code],
                             capture_output=True, text=True,
                             env={"PATH": "/usr/bin:/bin",
                                  "MHTKIT_PURE": env_val})
        assert out.returncode == 0, out.stderr
        runs[env_val] = complex(out.stdout.strip())
    assert runs["0"] == pytest.approx(runs["1"], rel=1e-12)
