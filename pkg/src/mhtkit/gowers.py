"""Gowers uniformity norms on cyclic groups and on integer intervals.

The degree-d raw power of f: Z/NZ -> C is the normalized box sum

    raw_d(f) = N^-(d+1) sum_{h_1..h_d, x} prod over the 2^d vertices of the
               difference box of f or conj f,

equivalently raw_1(f) = |mean f|^2 and raw_d(f) = mean_h raw_{d-1}(D_h f)
with D_h f(x) = f(x+h) conj f(x). The norm is raw_d^(1/2^d). The interval
norm of f supported in [1, N] embeds f in Z/N'Z for any N' >= 2^d N and
normalizes by the same norm of the interval indicator; the value does not
depend on the choice of N'.

Also here: the constant-1 generalized von-Neumann comparison on prime cyclic
groups, degree-1 Fourier decomposition (arithmetic regularity at level U^2),
and modulation helpers.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import backend
from .signals import CyclicSignal, Signal

_NEG_RAW_TOL = 1e-12


@dataclass(frozen=True)
class GowersNormResult:
    degree: int
    value: float
    raw_power: float


def _result(degree, raw):
    if raw < -_NEG_RAW_TOL:
        raise ArithmeticError(f"raw U^{degree} power {raw} is significantly negative; "
                              "summation is broken")
    raw = max(raw, 0.0)
    return GowersNormResult(degree=degree, value=raw ** (0.5 ** degree), raw_power=raw)


def difference_op(f, h):
    """D_h f(x) = f(x+h) * conj(f(x)) on the same cyclic group."""
    if not isinstance(f, CyclicSignal):
        raise ValueError("difference_op expects a CyclicSignal")
    shifted = np.roll(f.values, -int(h) % f.modulus)
    return CyclicSignal(f.modulus, shifted * np.conj(f.values))


def gowers_norm_cyclic(f, d, method="recursive"):
    """U^d norm of a CyclicSignal; method 'recursive' or 'direct'.

    Both methods evaluate the same normalized box sum; 'direct' enumerates
    every h-tuple independently and exists as a reference oracle.
    """
    if not isinstance(f, CyclicSignal):
        raise ValueError("gowers_norm_cyclic expects a CyclicSignal")
    d = int(d)
    if d < 1:
        raise ValueError("degree must be >= 1")
    if method == "recursive":
        raw = backend.gowers_raw_recursive(f.values, d)
    elif method == "direct":
        raw = backend.gowers_raw_direct(f.values, d)
    else:
        raise ValueError(f"unknown method {method!r}")
    return _result(d, raw)


def gowers_norm_interval(f, d, N, modulus=None):
    """U^d norm of a Signal supported in [1, N], normalized on an interval.

    Embeds f into Z/modulus (default 2^d * N) and divides by the U^d norm of
    the indicator of [1, N]; any modulus >= 2^d * N gives the same value.
    """
    if not isinstance(f, Signal):
        raise ValueError("gowers_norm_interval expects a Signal")
    d = int(d)
    if d < 1:
        raise ValueError("degree must be >= 1")
    N = int(N)
    if N < 1:
        raise ValueError("N must be >= 1")
    sup = f.support
    if sup is not None and (sup[0] < 1 or sup[1] > N):
        raise ValueError("signal must be supported in [1, N]")
    m = (2 ** d) * N if modulus is None else int(modulus)
    if m < (2 ** d) * N:
        raise ValueError("modulus must be at least 2^d * N")
    emb = np.zeros(m, dtype=np.complex128)
    emb[1:N + 1] = f.sample(1, N)
    ind = np.zeros(m, dtype=np.complex128)
    ind[1:N + 1] = 1.0
    raw_f = max(backend.gowers_raw_recursive(emb, d), 0.0)
    raw_ind = backend.gowers_raw_recursive(ind, d)
    return _result(d, raw_f / raw_ind)


def modulation(f, v):
    """Multiply by the linear phase e^(2 pi i v x).

    For a CyclicSignal the representative x in [0, N) is used; the cyclic U^d
    norms (d >= 2) are invariant exactly when v*N is an integer. For a Signal
    the true integer argument is used and any real v leaves interval U^d
    norms (d >= 2) unchanged.
    """
    v = float(v)
    if isinstance(f, CyclicSignal):
        x = np.arange(f.modulus)
        return CyclicSignal(f.modulus, f.values * np.exp(2j * np.pi * v * x))
    if isinstance(f, Signal):
        x = f.offset + np.arange(f.values.size)
        return Signal(f.offset, f.values * np.exp(2j * np.pi * v * x))
    raise ValueError("modulation expects a CyclicSignal or Signal")


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def von_neumann_check(fs):
    """(lhs, rhs) for the constant-1 comparison on a prime cyclic group.

    lhs = |N^-2 sum_{x,t in Z/NZ} f_0(x) f_1(x+t) ... f_k(x+kt)| and
    rhs = min_i ||f_i||_{U^k}. Requires prime modulus N > k and |f_i| <= 1.
    """
    fs = list(fs)
    k = len(fs) - 1
    if k < 1:
        raise ValueError("need k+1 >= 2 functions")
    n = fs[0].modulus
    for f in fs:
        if not isinstance(f, CyclicSignal) or f.modulus != n:
            raise ValueError("all functions must share one cyclic group")
        if f.sup_norm > 1.0 + 1e-12:
            raise ValueError("need |f_i| <= 1")
    if not _is_prime(n) or n <= k:
        raise ValueError("modulus must be a prime larger than k")
    total = 0j
    for t in range(n):
        prod = fs[0].values.copy()
        for i in range(1, k + 1):
            prod *= np.roll(fs[i].values, -(i * t) % n)
        total += prod.sum()
    lhs = abs(total) / n ** 2
    rhs = min(gowers_norm_cyclic(f, k).value for f in fs)
    return lhs, rhs


@dataclass(frozen=True)
class U2Decomposition:
    """f = f_str + f_sml + f_unf with f_sml = 0, f_str a small-spectrum
    projection and ||f_unf||_{U^2} < 1/F(mode_count)."""

    f_str: CyclicSignal
    f_sml: CyclicSignal
    f_unf: CyclicSignal
    mode_count: int
    growth_value: float


def u2_decompose(f, growth):
    """Degree-1 decomposition by greedy Fourier thresholding.

    growth maps a mode count M to F(M) >= max(M, 1); the scan stops at the
    first M whose residual spectrum satisfies sum_{xi not selected} |fhat|^4
    < (1/F(M))^4, which by the U^2-Fourier identity bounds ||f_unf||_{U^2}.
    Requires |f| <= 1 pointwise.
    """
    if not isinstance(f, CyclicSignal):
        raise ValueError("u2_decompose expects a CyclicSignal")
    if f.sup_norm > 1.0 + 1e-12:
        raise ValueError("need |f| <= 1")
    n = f.modulus
    fhat = np.fft.fft(f.values) / n
    mag = np.abs(fhat)
    order = np.lexsort((np.arange(n), -mag))
    mag4_sorted = mag[order] ** 4
    # suffix[m] = sum of the (m+1)-th largest onward
    suffix = np.concatenate([np.cumsum(mag4_sorted[::-1])[::-1], [0.0]])

    chosen = None
    for m in range(n + 1):
        fm = float(growth(m))
        if not (math.isfinite(fm) and fm >= max(m, 1)):
            raise ValueError(f"growth map must satisfy F(M) >= max(M, 1); F({m}) = {fm}")
        if suffix[m] < (1.0 / fm) ** 4:
            chosen = (m, fm)
            break
    if chosen is None:
        raise AssertionError("threshold scan failed to terminate")

    m, fm = chosen
    mask = np.zeros(n, dtype=bool)
    mask[order[:m]] = True
    f_str_vals = np.fft.ifft(np.where(mask, fhat, 0.0) * n)
    f_str = CyclicSignal(n, f_str_vals)
    f_unf = CyclicSignal(n, f.values - f_str_vals)
    f_sml = CyclicSignal(n, np.zeros(n))
    return U2Decomposition(f_str=f_str, f_sml=f_sml, f_unf=f_unf,
                           mode_count=m, growth_value=1.0 / fm)
