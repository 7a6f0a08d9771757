"""Kernel backend selection.

The compiled extension (mhtkit._core) is preferred when importable; the
pure-numpy fallback (mhtkit._kernels_py) is used otherwise. Setting the
environment variable MHTKIT_PURE to a non-empty value other than "0" forces
the fallback. All public wrappers normalize arguments so both backends see
identical, contiguous, correctly-typed inputs.
"""

import os

import numpy as np

from . import _kernels_py

_FORCE_PURE = os.environ.get("MHTKIT_PURE", "").strip() not in ("", "0")

if not _FORCE_PURE:
    try:
        from . import _core
    except ImportError:
        _core = None
else:
    _core = None

_impl = _core if _core is not None else _kernels_py

BACKEND = "compiled" if _core is not None else "pure"


def available_backends():
    names = ["pure"]
    try:
        from . import _core as _probe  # noqa: F401
        names.insert(0, "compiled")
    except ImportError:
        pass
    return names


def get_impl(name):
    """Return the raw kernel module for an explicit backend name."""
    if name == "pure":
        return _kernels_py
    if name == "compiled":
        from . import _core as mod
        return mod
    raise ValueError(f"unknown backend {name!r}")


def _norm_values(values):
    return [np.ascontiguousarray(np.asarray(v).reshape(-1), dtype=np.complex128) for v in values]


def shift_product_sum(values, offsets, mults, ts, weights, paired, y_lo, y_hi, impl=None):
    """Weighted pattern sum over shifts; see the kernel docstring.

    values: sequence of 1-d complex coefficient arrays, values[m][i] being the
    function value at offsets[m] + i. Returns a complex128 array over the
    integer window [y_lo, y_hi].
    """
    mod = _impl if impl is None else impl
    vals = _norm_values(values)
    offsets = np.ascontiguousarray(offsets, dtype=np.int64)
    mults = np.ascontiguousarray(mults, dtype=np.int64)
    ts = np.ascontiguousarray(ts, dtype=np.int64)
    weights = np.ascontiguousarray(weights, dtype=np.complex128)
    if len(vals) != offsets.size or len(vals) != mults.size:
        raise ValueError("values, offsets and mults must have equal length")
    if ts.size != weights.size:
        raise ValueError("ts and weights must have equal length")
    if paired and ts.size % 2 != 0:
        raise ValueError("paired mode needs an even number of t entries")
    return mod.shift_product_sum(vals, offsets, mults, ts, weights, bool(paired), int(y_lo), int(y_hi))


def gowers_raw_direct(values, d, impl=None):
    mod = _impl if impl is None else impl
    arr = np.ascontiguousarray(np.asarray(values).reshape(-1), dtype=np.complex128)
    if arr.size == 0:
        raise ValueError("empty cyclic signal")
    if d < 1:
        raise ValueError("degree must be >= 1")
    return mod.gowers_raw_direct(arr, int(d))


def gowers_raw_recursive(values, d, impl=None):
    mod = _impl if impl is None else impl
    arr = np.ascontiguousarray(np.asarray(values).reshape(-1), dtype=np.complex128)
    if arr.size == 0:
        raise ValueError("empty cyclic signal")
    if d < 1:
        raise ValueError("degree must be >= 1")
    return mod.gowers_raw_recursive(arr, int(d))
