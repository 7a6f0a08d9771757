"""Discrete truncated multilinear Hilbert-type transform and its pattern forms.

For truncation radii 1 <= r <= R and arity k >= 1 the transform of signals
f_1..f_k is

    T(x) = sum_{t in Z, r <= |t| <= R} f_1(x+t) f_2(x+2t) ... f_k(x+kt) / t

and the dual (k+1)-linear form pairs an extra signal f_0 at the base point:

    L = sum_{x, t} f_0(x) f_1(x+t) ... f_k(x+kt) / t.

The kernel 1/t is odd, so (t, -t) contributions are combined pairwise before
accumulation and cancel exactly on locally constant inputs. kernel_mass gives
the trivial operator bound sum_{r<=|t|<=R} 1/|t|.

Single-scale pieces replace the sharp truncation by a certified bump pair:
psi weights kernel offsets at scale 2^n, phi localizes the base point near
j*2^n; see mhtkit.bumps.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import backend, gowers
from .bumps import dyadic_scale_range
from .signals import HolderExponents, Signal, lp_norm


@dataclass(frozen=True)
class TruncationParams:
    """Truncation radii and arity; 1 <= r <= R, k >= 1."""

    r: float
    R: float
    k: int

    def __post_init__(self):
        if not (isinstance(self.k, int) and self.k >= 1):
            raise ValueError("k must be an integer >= 1")
        if not (math.isfinite(self.r) and math.isfinite(self.R)):
            raise ValueError("radii must be finite")
        if not (1.0 <= self.r <= self.R):
            raise ValueError("need 1 <= r <= R")

    def positive_ts(self):
        """Integers t with r <= t <= R (may be empty)."""
        lo = math.ceil(self.r)
        hi = math.floor(self.R)
        if hi < lo:
            return np.zeros(0, dtype=np.int64)
        return np.arange(lo, hi + 1, dtype=np.int64)


@dataclass(frozen=True)
class SingleScaleWindow:
    """Dyadic scale 2^n and base-point block index j."""

    n: int
    j: int

    def __post_init__(self):
        if not (isinstance(self.n, int) and self.n >= 0):
            raise ValueError("scale exponent n must be an integer >= 0")
        if not isinstance(self.j, int):
            raise ValueError("block index j must be an integer")


def _paired_kernel(params):
    """(ts, weights) with entries (t, 1/t), (-t, -1/t) in consecutive pairs."""
    pos = params.positive_ts()
    ts = np.empty(2 * pos.size, dtype=np.int64)
    wt = np.empty(2 * pos.size, dtype=np.complex128)
    ts[0::2] = pos
    ts[1::2] = -pos
    if pos.size:
        wt[0::2] = 1.0 / pos
        wt[1::2] = -1.0 / pos
    return ts, wt


def kernel_mass(params):
    """sum_{r <= |t| <= R} 1/|t|, compensated summation."""
    pos = params.positive_ts()
    if pos.size == 0:
        return 0.0
    return 2.0 * math.fsum(1.0 / t for t in pos)


def output_support(params, signals):
    """Window outside which the transform of these signals is identically 0.

    Intersection over slots of the support hulls widened by i * floor(R);
    None when empty or when any input is the zero signal.
    """
    tmax = math.floor(params.R)
    lo, hi = None, None
    for i, f in enumerate(signals, start=1):
        sup = f.support
        if sup is None:
            return None
        a, b = sup[0] - i * tmax, sup[1] + i * tmax
        lo = a if lo is None else max(lo, a)
        hi = b if hi is None else min(hi, b)
    if lo is None or hi < lo:
        return None
    return (lo, hi)


def truncated_transform(fs, params, window=None):
    """Apply the transform to k signals; returns a Signal on the window.

    window defaults to output_support(params, fs); values there determine the
    transform everywhere (it vanishes outside).
    """
    fs = list(fs)
    if len(fs) != params.k:
        raise ValueError("number of signals must equal params.k")
    if window is None:
        window = output_support(params, fs)
        if window is None:
            return Signal(0, [])
    lo, hi = int(window[0]), int(window[1])
    if hi < lo:
        raise ValueError("empty window")
    ts, weights = _paired_kernel(params)
    if ts.size == 0:
        return Signal(lo, np.zeros(hi - lo + 1))
    out = backend.shift_product_sum(
        [f.values for f in fs], [f.offset for f in fs],
        np.arange(1, params.k + 1, dtype=np.int64),
        ts, weights, paired=True, y_lo=lo, y_hi=hi)
    return Signal(lo, out)


def dual_form(fs, params):
    """(k+1)-linear pairing sum_{x,t} f_0(x) * prod_{i>=1} f_i(x+it) / t."""
    fs = list(fs)
    if len(fs) != params.k + 1:
        raise ValueError("dual form takes k+1 signals")
    sup0 = fs[0].support
    if sup0 is None:
        return 0j
    ts, weights = _paired_kernel(params)
    if ts.size == 0:
        return 0j
    per_x = backend.shift_product_sum(
        [f.values for f in fs], [f.offset for f in fs],
        np.arange(0, params.k + 1, dtype=np.int64),
        ts, weights, paired=True, y_lo=sup0[0], y_hi=sup0[1])
    return complex(per_x.sum())


def trivial_bound_check(fs, params, exponents):
    """(lhs, rhs) for ||T f||_p <= kernel_mass * prod ||f_i||_{p_i}."""
    fs = list(fs)
    if exponents.is_dual:
        raise ValueError("trivial bound uses primal exponents")
    if exponents.k != params.k or len(fs) != params.k:
        raise ValueError("exponent count must match arity k")
    out = truncated_transform(fs, params)
    lhs = lp_norm(out, exponents.p)
    rhs = kernel_mass(params)
    for f, p in zip(fs, exponents.p_list):
        rhs *= lp_norm(f, p)
    return lhs, rhs


def single_scale_form(fs, window, bumps):
    """Bump-weighted single-scale pattern form at (n, j).

    S = sum_{x,t} psi(t/2^n) phi(2^-n x - j) f_0(x) f_1(x+t) ... f_k(x+kt),
    with the sums restricted to the bump supports (2^{n-1} <= |t| <= 2^{n+1},
    |2^-n x - j| <= 1). Opposite kernel offsets are combined pairwise.
    """
    fs = list(fs)
    if len(fs) < 2:
        raise ValueError("single-scale form takes k+1 >= 2 signals")
    n, j = window.n, window.j
    scale = 2.0 ** n
    t_lo = math.ceil(2.0 ** (n - 1))
    t_hi = math.floor(2.0 ** (n + 1))
    pos = np.arange(t_lo, t_hi + 1, dtype=np.int64)
    if pos.size == 0:
        return 0j
    psi_pos = np.asarray(bumps.psi(pos / scale), dtype=np.float64)
    ts = np.empty(2 * pos.size, dtype=np.int64)
    weights = np.empty(2 * pos.size, dtype=np.complex128)
    ts[0::2] = pos
    ts[1::2] = -pos
    weights[0::2] = psi_pos
    weights[1::2] = -psi_pos  # psi is odd

    x_lo = (j - 1) * int(scale)
    x_hi = (j + 1) * int(scale)
    sup0 = fs[0].support
    if sup0 is None:
        return 0j
    x_lo = max(x_lo, sup0[0])
    x_hi = min(x_hi, sup0[1])
    if x_hi < x_lo:
        return 0j
    per_x = backend.shift_product_sum(
        [f.values for f in fs], [f.offset for f in fs],
        np.arange(0, len(fs), dtype=np.int64),
        ts, weights, paired=True, y_lo=x_lo, y_hi=x_hi)
    xs = np.arange(x_lo, x_hi + 1)
    phi_w = np.asarray(bumps.phi(xs / scale - j), dtype=np.float64)
    return complex(np.sum(per_x * phi_w))


def dyadic_synthesis_residual(params, bumps, t):
    """|1_{r<=|t|<=R}/t - sum_{n: r<=2^n<=R} 2^-n psi(2^-n t)| at integer t != 0.

    Exactly 0 for 2r <= |t| <= R/2; near the truncation edges bounded by
    2/r + 2/R (for r = 1 the sharper 1/r + 1/R holds since phi_tilde vanishes
    at every nonzero integer).
    """
    t = int(t)
    if t == 0:
        raise ValueError("t must be nonzero")
    target = (1.0 / t) if params.r <= abs(t) <= params.R else 0.0
    n_min, n_max = dyadic_scale_range(params.r, params.R)
    if n_max < n_min:
        return abs(target)
    total = math.fsum((2.0 ** -n) * bumps.psi(t * (2.0 ** -n))
                      for n in range(n_min, n_max + 1))
    return abs(target - total)


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


def _next_prime(n):
    n = max(int(n), 2)
    while not _is_prime(n):
        n += 1
    return n


@dataclass(frozen=True)
class WeightedBoundReport:
    lhs: float
    rhs: float
    constant: float
    degree: int
    modulus: int


def weighted_von_neumann_check(fs, window, bumps, N):
    """Certified bound |single_scale_form| <= C_w * min_i U^d interval norm.

    Inputs f_0..f_k must be supported in [1, N] with sup norm <= 1. The
    constant is assembled from the bump Fourier masses, the prime embedding
    modulus N' (no-wraparound pattern sums, constant-1 cyclic inequality) and
    the indicator normalization b0 = ||1_[N]||_{U^d(Z/N')}; d = max(k, 2), and
    for k = 1 a constant dummy slot widens the pattern so the d = 2 case
    applies (hence the 5N term in the modulus).
    """
    fs = list(fs)
    k = len(fs) - 1
    if k < 1:
        raise ValueError("need k >= 1")
    for f in fs:
        sup = f.support
        if sup is not None and (sup[0] < 1 or sup[1] > N):
            raise ValueError("signals must be supported in [1, N]")
        if f.values.size and np.abs(f.values).max() > 1.0 + 1e-12:
            raise ValueError("signals must satisfy |f| <= 1")
    d = max(k, 2)
    n_prime = _next_prime(max((2 * k + 1) * N + 2, (2 ** d) * N, 5 * N + 2))

    emb = np.zeros(n_prime, dtype=np.complex128)
    emb[1:N + 1] = 1.0
    b0 = backend.gowers_raw_recursive(emb, d) ** (2.0 ** -d)

    c_w = bumps.psi_hat_l1 * bumps.phi_hat_l1 * float(n_prime) ** 2 * b0
    norms = [gowers.gowers_norm_interval(f, d, N).value for f in fs]
    lhs = abs(single_scale_form(fs, window, bumps))
    rhs = c_w * min(norms)
    return WeightedBoundReport(lhs=lhs, rhs=rhs, constant=c_w, degree=d,
                               modulus=n_prime)


def scale_aggregated_l2_check(fs, N, A, bumps):
    """(lhs, rhs, constant) for the multi-scale aggregate of single-scale forms.

    lhs = sum over scales N/A <= 2^n <= N and all blocks j of
    2^-n |single_scale_form(fs, (n, j))|; the certified bound is
    rhs = (30/ln 2) psi_sup phi_sup sqrt(N) ln(A) min_i l2(f_i), valid for
    A >= 2 and inputs supported in [1, N] with sup norm <= 1.
    """
    fs = list(fs)
    if len(fs) < 2:
        raise ValueError("need k+1 >= 2 signals")
    if A < 2:
        raise ValueError("need A >= 2")
    if N < 2:
        raise ValueError("need N >= 2")
    for f in fs:
        sup = f.support
        if sup is not None and (sup[0] < 1 or sup[1] > N):
            raise ValueError("signals must be supported in [1, N]")
        if f.values.size and np.abs(f.values).max() > 1.0 + 1e-12:
            raise ValueError("signals must satisfy |f| <= 1")
    n_lo, n_hi = dyadic_scale_range(N / A, N)
    n_lo = max(n_lo, 0)
    lhs = 0.0
    for n in range(n_lo, n_hi + 1):
        block = 2 ** n
        j_lo = -1
        j_hi = math.ceil(N / block) + 1
        for j in range(j_lo, j_hi + 1):
            s = single_scale_form(fs, SingleScaleWindow(n=n, j=j), bumps)
            lhs += (2.0 ** -n) * abs(s)
    constant = (30.0 / math.log(2.0)) * bumps.psi_sup * bumps.phi_sup
    min_l2 = min(lp_norm(f, 2.0) for f in fs)
    rhs = constant * math.sqrt(N) * math.log(A) * min_l2
    return lhs, rhs, constant
