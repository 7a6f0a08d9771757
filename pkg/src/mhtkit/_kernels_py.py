"""Pure-numpy kernels; fallback used when the compiled extension is absent.

Same contracts as ``mhtkit._core``. Inputs arrive pre-normalized from
``mhtkit.backend`` (contiguous complex128 values, int64 index arrays).
"""

import numpy as np


def shift_product_sum(values, offsets, mults, ts, weights, paired, y_lo, y_hi):
    """out[y - y_lo] = sum_t weights[t] * prod_m values[m](y + mults[m]*t).

    values[m] is the coefficient array of a finitely supported function whose
    support starts at offsets[m]; indices outside the array read as 0.
    With ``paired`` the (t, -t) entries come in consecutive pairs and each
    pair is combined before accumulation, so exactly opposite contributions
    cancel to exactly 0.0.
    """
    width = y_hi - y_lo + 1
    out = np.zeros(max(width, 0), dtype=np.complex128)
    if width <= 0 or len(ts) == 0:
        return out
    if any(arr.size == 0 for arr in values):
        return out
    if paired:
        for i in range(0, len(ts), 2):
            pa = weights[i] * _shifted_product(values, offsets, mults, ts[i], y_lo, width)
            pb = weights[i + 1] * _shifted_product(values, offsets, mults, ts[i + 1], y_lo, width)
            out += pa + pb
    else:
        for i in range(len(ts)):
            out += weights[i] * _shifted_product(values, offsets, mults, ts[i], y_lo, width)
    return out


def _shifted_product(values, offsets, mults, t, y_lo, width):
    prod = None
    for arr, off, c in zip(values, offsets, mults):
        shift = y_lo + c * t - off
        lo = max(0, -shift)
        hi = min(width, arr.size - shift)
        if lo >= hi:
            return np.zeros(width, dtype=np.complex128)
        seg = np.zeros(width, dtype=np.complex128)
        seg[lo:hi] = arr[shift + lo:shift + hi]
        prod = seg if prod is None else prod * seg
    return prod


def gowers_raw_direct(values, d):
    """Normalized box sum N^-(d+1) * sum_{h_1..h_d, x} (prod of 2^d vertex terms).

    Literal nested enumeration, kept independent of the recursive path; the
    innermost (h_d, x) double sum is evaluated as a full N x N matrix rather
    than being collapsed analytically.
    """
    f = np.ascontiguousarray(values, dtype=np.complex128)
    n = f.size
    idx = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n

    def level(g, depth):
        if depth == d - 1:
            return (g[idx] * np.conj(g)[None, :]).sum()
        acc = 0.0 + 0.0j
        for h in range(n):
            acc += level(np.roll(g, -h) * np.conj(g), depth + 1)
        return acc

    total = level(f, 0)
    return float((total / n ** (d + 1)).real)


def gowers_raw_recursive(values, d):
    """raw_1(f) = |mean f|^2; raw_d(f) = mean_h raw_{d-1}(f(.+h) conj f)."""
    f = np.ascontiguousarray(values, dtype=np.complex128)
    n = f.size

    def rec(g, depth):
        if depth == 1:
            m = g.mean()
            return (m * np.conj(m)).real
        return sum(rec(np.roll(g, -h) * np.conj(g), depth - 1) for h in range(n)) / n

    return float(rec(f, d))
