"""Finitely supported signals on the integers, cyclic signals, exponent tuples.

A Signal is a function Z -> C supported on finitely many points, stored as a
contiguous coefficient block plus an integer offset. An IndicatorSet is a
finite subset of Z. A CyclicSignal lives on Z/NZ. HolderExponents carries a
tuple of Lebesgue exponents together with the scaling identity that makes a
pattern-sum estimate dimensionally consistent.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import backend

_EXPONENT_TOL = 1e-12


class Signal:
    """Finitely supported f: Z -> C; values[i] is f(offset + i)."""

    __slots__ = ("offset", "values")

    def __init__(self, offset=0, values=()):
        arr = np.array(values, dtype=np.complex128).reshape(-1)
        if arr.size and not np.all(np.isfinite(arr)):
            raise ValueError("signal values must be finite")
        self.offset = int(offset)
        self.values = arr

    @classmethod
    def delta(cls, position=0, value=1.0):
        return cls(position, [value])

    @classmethod
    def ones(cls, lo, hi):
        if hi < lo:
            raise ValueError("empty window")
        return cls(lo, np.ones(hi - lo + 1))

    def __call__(self, x):
        i = int(x) - self.offset
        if 0 <= i < self.values.size:
            return complex(self.values[i])
        return 0j

    def sample(self, lo, hi):
        """Values over the inclusive integer window [lo, hi], zero-padded."""
        if hi < lo:
            raise ValueError("empty window")
        out = np.zeros(hi - lo + 1, dtype=np.complex128)
        a = max(lo, self.offset)
        b = min(hi, self.offset + self.values.size - 1)
        if a <= b:
            out[a - lo:b - lo + 1] = self.values[a - self.offset:b - self.offset + 1]
        return out

    @property
    def support(self):
        """(lo, hi) of the smallest window containing all nonzero points, or None."""
        nz = np.nonzero(self.values)[0]
        if nz.size == 0:
            return None
        return (self.offset + int(nz[0]), self.offset + int(nz[-1]))

    def trimmed(self):
        sup = self.support
        if sup is None:
            return Signal(0, [])
        lo, hi = sup
        return Signal(lo, self.values[lo - self.offset:hi - self.offset + 1])

    def shifted(self, s):
        """x -> f(x - s)."""
        return Signal(self.offset + int(s), self.values)

    def conjugate(self):
        return Signal(self.offset, np.conj(self.values))

    def __mul__(self, c):
        return Signal(self.offset, self.values * complex(c))

    __rmul__ = __mul__

    def __add__(self, other):
        if not isinstance(other, Signal):
            return NotImplemented
        sa, sb = self.support, other.support
        if sa is None:
            return Signal(other.offset, other.values)
        if sb is None:
            return Signal(self.offset, self.values)
        lo = min(sa[0], sb[0])
        hi = max(sa[1], sb[1])
        out = self.sample(lo, hi) + other.sample(lo, hi)
        return Signal(lo, out)

    def __sub__(self, other):
        if not isinstance(other, Signal):
            return NotImplemented
        return self + (other * -1.0)

    def __eq__(self, other):
        """Equality as functions: padding zeros and offsets of zeros ignored."""
        if not isinstance(other, Signal):
            return NotImplemented
        a, b = self.trimmed(), other.trimmed()
        return a.offset == b.offset and a.values.shape == b.values.shape \
            and bool(np.all(a.values == b.values))

    __hash__ = None

    def __repr__(self):
        sup = self.support
        if sup is None:
            return "Signal(zero)"
        return f"Signal(offset={self.offset}, support={sup})"


class IndicatorSet:
    """Finite subset of Z, usable as a 0/1 signal."""

    __slots__ = ("elements",)

    def __init__(self, elements=()):
        elems = []
        for e in elements:
            if int(e) != e:
                raise ValueError("set elements must be integers")
            elems.append(int(e))
        self.elements = frozenset(elems)

    @classmethod
    def interval(cls, lo, hi):
        return cls(range(lo, hi + 1))

    @property
    def cardinality(self):
        return len(self.elements)

    @property
    def envelope(self):
        if not self.elements:
            return None
        return (min(self.elements), max(self.elements))

    def to_signal(self):
        env = self.envelope
        if env is None:
            return Signal(0, [])
        lo, hi = env
        vals = np.zeros(hi - lo + 1)
        for e in self.elements:
            vals[e - lo] = 1.0
        return Signal(lo, vals)

    def shifted(self, s):
        return IndicatorSet(e + s for e in self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(sorted(self.elements))

    def __contains__(self, x):
        return x in self.elements

    def __eq__(self, other):
        if not isinstance(other, IndicatorSet):
            return NotImplemented
        return self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        return f"IndicatorSet(size={len(self.elements)}, envelope={self.envelope})"


class CyclicSignal:
    """Function on Z/NZ stored as values[x] for representatives x = 0..N-1."""

    __slots__ = ("modulus", "values")

    def __init__(self, modulus, values):
        n = int(modulus)
        if n < 1:
            raise ValueError("modulus must be positive")
        arr = np.array(values, dtype=np.complex128).reshape(-1)
        if arr.size != n:
            raise ValueError("value array length must equal the modulus")
        if not np.all(np.isfinite(arr)):
            raise ValueError("signal values must be finite")
        self.modulus = n
        self.values = arr

    @classmethod
    def constant(cls, modulus, value=1.0):
        return cls(modulus, np.full(modulus, value, dtype=np.complex128))

    @classmethod
    def delta(cls, modulus, position=0):
        vals = np.zeros(modulus, dtype=np.complex128)
        vals[position % modulus] = 1.0
        return cls(modulus, vals)

    @classmethod
    def character(cls, modulus, frequency):
        x = np.arange(modulus)
        return cls(modulus, np.exp(2j * np.pi * frequency * x / modulus))

    def __call__(self, x):
        return complex(self.values[int(x) % self.modulus])

    @property
    def sup_norm(self):
        if self.values.size == 0:
            return 0.0
        return float(np.abs(self.values).max())

    def __eq__(self, other):
        if not isinstance(other, CyclicSignal):
            return NotImplemented
        return self.modulus == other.modulus and bool(np.all(self.values == other.values))

    __hash__ = None

    def __repr__(self):
        return f"CyclicSignal(modulus={self.modulus})"


def _check_exponent(p, name):
    p = float(p)
    if not math.isfinite(p) or p <= 1.0:
        raise ValueError(f"{name} must satisfy 1 < p < inf, got {p}")
    return p


@dataclass(frozen=True)
class HolderExponents:
    """Exponent tuple for a k-linear pattern-sum estimate.

    Primal form: p_list = (p_1..p_k) with an output exponent p and
    sum(1/p_i) = 1/p. Dual form: p_list = (p_0..p_k), p is None, and
    sum(1/p_i) = 1. All exponents strictly inside (1, inf).
    """

    k: int
    p_list: tuple
    p: float | None

    @classmethod
    def primal(cls, p_list, p):
        ps = tuple(_check_exponent(q, "p_i") for q in p_list)
        pv = _check_exponent(p, "p")
        if len(ps) < 1:
            raise ValueError("need at least one exponent")
        if abs(sum(1.0 / q for q in ps) - 1.0 / pv) > _EXPONENT_TOL:
            raise ValueError("scaling identity sum(1/p_i) = 1/p violated")
        return cls(k=len(ps), p_list=ps, p=pv)

    @classmethod
    def dual(cls, p_list):
        ps = tuple(_check_exponent(q, "p_i") for q in p_list)
        if len(ps) < 2:
            raise ValueError("dual form needs at least two exponents")
        if abs(sum(1.0 / q for q in ps) - 1.0) > _EXPONENT_TOL:
            raise ValueError("scaling identity sum(1/p_i) = 1 violated")
        return cls(k=len(ps) - 1, p_list=ps, p=None)

    @classmethod
    def balanced_dual(cls, k):
        return cls.dual([float(k + 1)] * (k + 1))

    @property
    def is_dual(self):
        return self.p is None

    def to_dual(self):
        """Attach the conjugate of the output exponent as slot 0."""
        if self.is_dual:
            return self
        p0 = self.p / (self.p - 1.0)
        return HolderExponents.dual((p0,) + self.p_list)

    def to_primal(self):
        """Drop slot 0; its conjugate becomes the output exponent."""
        if not self.is_dual:
            return self
        p0 = self.p_list[0]
        return HolderExponents.primal(self.p_list[1:], p0 / (p0 - 1.0))


def lp_norm(f, p):
    """(sum_x |f(x)|^p)^(1/p) for a Signal; 1 <= p < inf."""
    p = float(p)
    if not math.isfinite(p) or p < 1.0:
        raise ValueError(f"p must satisfy 1 <= p < inf, got {p}")
    if isinstance(f, Signal):
        mags = np.abs(f.values)
    elif isinstance(f, CyclicSignal):
        mags = np.abs(f.values)
    else:
        mags = np.abs(np.asarray(f, dtype=np.complex128).reshape(-1))
    if mags.size == 0:
        return 0.0
    top = mags.max()
    if top == 0.0:
        return 0.0
    # scale out the max so large p cannot overflow
    return float(top * (np.sum((mags / top) ** p)) ** (1.0 / p))


def maximal_function(f, window):
    """Discrete averaged maximal function with integer radii r >= 1.

    M f(x) = sup_{r>=1} (2r+1)^-1 * sum_{|y-x|<=r} |f(y)|, evaluated for x in
    the inclusive window (lo, hi). Returns a Signal of real values.
    """
    lo, hi = int(window[0]), int(window[1])
    if hi < lo:
        raise ValueError("empty window")
    width = hi - lo + 1
    sup = f.support if isinstance(f, Signal) else None
    if not isinstance(f, Signal):
        raise ValueError("maximal_function expects a Signal")
    if sup is None:
        return Signal(lo, np.zeros(width))
    slo, shi = sup
    mags = np.abs(f.sample(slo, shi))
    # prefix[i] = sum of mags[0:i]
    prefix = np.concatenate([[0.0], np.cumsum(mags)])
    xs = np.arange(lo, hi + 1)
    rmax = int(max(np.abs(xs - slo).max(), np.abs(xs - shi).max(), 1))
    rs = np.arange(1, rmax + 1)
    hi_idx = np.clip(xs[:, None] + rs[None, :] - slo, -1, mags.size - 1) + 1
    lo_idx = np.clip(xs[:, None] - rs[None, :] - slo, 0, mags.size)
    hi_idx = np.maximum(hi_idx, 0)
    sums = prefix[hi_idx] - prefix[lo_idx]
    avgs = sums / (2.0 * rs + 1.0)[None, :]
    return Signal(lo, avgs.max(axis=1))


def pattern_sum(signals):
    """sum over x, t in Z of prod_{i=0..k} f_i(x + i t), as a complex number.

    The double sum is restricted to the finite rectangle forced by the
    supports: x runs over supp f_0 and t over supp f_1 shifted by the x-range.
    """
    sigs = list(signals)
    if len(sigs) < 2:
        raise ValueError("need k >= 1, i.e. at least two signals")
    sups = [s.support for s in sigs]
    if any(s is None for s in sups):
        return 0j
    x_lo, x_hi = sups[0]
    t_lo = sups[1][0] - x_hi
    t_hi = sups[1][1] - x_lo
    ts = np.arange(t_lo, t_hi + 1, dtype=np.int64)
    if ts.size == 0:
        return 0j
    values = [s.values for s in sigs]
    offsets = [s.offset for s in sigs]
    mults = np.arange(len(sigs), dtype=np.int64)
    weights = np.ones(ts.size, dtype=np.complex128)
    per_x = backend.shift_product_sum(values, offsets, mults, ts, weights,
                                      paired=False, y_lo=x_lo, y_hi=x_hi)
    return complex(per_x.sum())


def min_cardinality_bound_check(sets, t):
    """Exact check that #{x: x + i*t in E_i for all i} <= min_i |E_i|."""
    sets = list(sets)
    if len(sets) < 2:
        raise ValueError("need at least two sets")
    t = int(t)
    inter = set(sets[0].elements)
    for i, e in enumerate(sets[1:], start=1):
        inter &= {v - i * t for v in e.elements}
        if not inter:
            break
    count = len(inter)
    bound = min(s.cardinality for s in sets)
    return count <= bound
