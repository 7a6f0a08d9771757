# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: shifted-product pattern sums and Gowers box sums.

Contracts match mhtkit._kernels_py; mhtkit.backend normalizes arguments
before calling in here.
"""

import numpy as np

ctypedef double complex cplx


cdef inline cplx _prod_at(const cplx* flat, const long* starts, const long* lens,
                          const long* offsets, const long* mults,
                          Py_ssize_t nm, long yabs, long t) noexcept nogil:
    cdef cplx p = 1.0
    cdef Py_ssize_t m
    cdef long idx
    for m in range(nm):
        idx = yabs + mults[m] * t - offsets[m]
        if idx < 0 or idx >= lens[m]:
            return 0.0
        p = p * flat[starts[m] + idx]
    return p


def shift_product_sum(values, offsets, mults, ts, weights, paired, y_lo, y_hi):
    """out[y - y_lo] = sum_t weights[t] * prod_m values[m](y + mults[m]*t).

    Paired mode combines consecutive (t, -t) entries before accumulating so
    exactly opposite contributions cancel to exactly 0.0.
    """
    cdef long c_y_lo = y_lo
    cdef Py_ssize_t width = y_hi - y_lo + 1
    out_arr = np.zeros(width if width > 0 else 0, dtype=np.complex128)
    cdef Py_ssize_t nts = len(ts)
    if width <= 0 or nts == 0:
        return out_arr
    cdef Py_ssize_t nm = len(values)
    for arr in values:
        if arr.size == 0:
            return out_arr

    lens_arr = np.array([arr.size for arr in values], dtype=np.int64)
    starts_arr = np.zeros(nm, dtype=np.int64)
    if nm > 1:
        starts_arr[1:] = np.cumsum(lens_arr)[:-1]
    flat_arr = np.concatenate(values)

    cdef cplx[::1] flat = flat_arr
    cdef long[::1] starts = starts_arr
    cdef long[::1] lens = lens_arr
    cdef long[::1] offs = offsets
    cdef long[::1] mls = mults
    cdef long[::1] tval = ts
    cdef cplx[::1] wts = weights
    cdef cplx[::1] out = out_arr

    cdef const cplx* pf = &flat[0]
    cdef const long* pst = &starts[0]
    cdef const long* pln = &lens[0]
    cdef const long* pof = &offs[0]
    cdef const long* pml = &mls[0]

    cdef Py_ssize_t ti, y
    cdef long t1, t2
    cdef cplx w1, w2
    cdef bint is_paired = paired

    with nogil:
        if is_paired:
            for ti in range(0, nts, 2):
                t1 = tval[ti]
                w1 = wts[ti]
                t2 = tval[ti + 1]
                w2 = wts[ti + 1]
                for y in range(width):
                    out[y] = out[y] + (
                        w1 * _prod_at(pf, pst, pln, pof, pml, nm, c_y_lo + y, t1)
                        + w2 * _prod_at(pf, pst, pln, pof, pml, nm, c_y_lo + y, t2))
        else:
            for ti in range(nts):
                t1 = tval[ti]
                w1 = wts[ti]
                for y in range(width):
                    out[y] = out[y] + w1 * _prod_at(pf, pst, pln, pof, pml, nm, c_y_lo + y, t1)
    return out_arr


def gowers_raw_direct(values, int d):
    """Normalized box sum N^-(d+1) * sum_{h_1..h_d, x} iterated-difference values.

    Full odometer over h-tuples, difference levels recomputed per tuple,
    Kahan-compensated accumulation of the final sum.
    """
    f_arr = np.ascontiguousarray(values, dtype=np.complex128)
    cdef cplx[::1] f = f_arr
    cdef Py_ssize_t n = f.shape[0]
    scratch_arr = np.zeros((d + 1, n), dtype=np.complex128)
    cdef cplx[:, ::1] scratch = scratch_arr
    h_arr = np.zeros(d, dtype=np.int64)
    cdef long[::1] h = h_arr

    cdef double sr = 0.0, cr = 0.0, si = 0.0, ci = 0.0
    cdef double term_r, term_i, yr, yi, tr, ti2
    cdef Py_ssize_t lev, x, pos, idx
    cdef cplx acc
    cdef bint done = False

    with nogil:
        for x in range(n):
            scratch[0, x] = f[x]
        while not done:
            for lev in range(d):
                for x in range(n):
                    idx = x + h[lev]
                    if idx >= n:
                        idx -= n
                    scratch[lev + 1, x] = scratch[lev, idx] * scratch[lev, x].conjugate()
            acc = 0.0
            for x in range(n):
                acc = acc + scratch[d, x]
            term_r = acc.real
            term_i = acc.imag
            yr = term_r - cr
            tr = sr + yr
            cr = (tr - sr) - yr
            sr = tr
            yi = term_i - ci
            ti2 = si + yi
            ci = (ti2 - si) - yi
            si = ti2
            # advance odometer
            pos = d - 1
            while True:
                h[pos] += 1
                if h[pos] < n:
                    break
                h[pos] = 0
                if pos == 0:
                    done = True
                    break
                pos -= 1
    return float(sr / float(n) ** (d + 1))


cdef double _gowers_rec(const cplx* g, int depth, Py_ssize_t n, cplx* ws) noexcept nogil:
    cdef double acc = 0.0
    cdef Py_ssize_t h, x, idx
    cdef cplx mean
    if depth == 1:
        mean = 0.0
        for x in range(n):
            mean = mean + g[x]
        mean = mean / <double> n
        return mean.real * mean.real + mean.imag * mean.imag
    for h in range(n):
        for x in range(n):
            idx = x + h
            if idx >= n:
                idx -= n
            ws[x] = g[idx] * g[x].conjugate()
        acc += _gowers_rec(ws, depth - 1, n, ws + n)
    return acc / <double> n


def gowers_raw_recursive(values, int d):
    """raw_1(f) = |mean f|^2; raw_d(f) = mean_h raw_{d-1}(f(.+h) conj f)."""
    f_arr = np.ascontiguousarray(values, dtype=np.complex128)
    cdef cplx[::1] f = f_arr
    cdef Py_ssize_t n = f.shape[0]
    cdef double out
    if d == 1:
        with nogil:
            out = _gowers_rec(&f[0], 1, n, NULL)
        return float(out)
    ws_arr = np.zeros((d - 1) * n, dtype=np.complex128)
    cdef cplx[::1] ws = ws_arr
    with nogil:
        out = _gowers_rec(&f[0], d, n, &ws[0])
    return float(out)
