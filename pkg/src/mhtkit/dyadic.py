"""Dyadic intervals, local pattern quantities, trees and greedy covers.

The dyadic interval (n, j) is the point set {x in Z : j*2^n < x <= (j+1)*2^n}.
To each interval and tuple of finite sets E_0..E_k the quantity

    a_I = 2^(-2n) |single_scale_form(1_{E_0}, .., 1_{E_k}; (n, j))|

is attached. Intervals with a_I above a threshold delta are "bad"; bad
intervals are organized into trees (a top interval plus all sub-intervals
within an aspect budget A), chosen greedily so that each tree's mass is
controlled by delta * |top| * ln A.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import mht
from .bumps import BumpPair, CertificationError, build_bumps, dyadic_scale_range  # noqa: F401
from .signals import IndicatorSet, Signal, maximal_function
from .mht import SingleScaleWindow, single_scale_form


@dataclass(frozen=True)
class DyadicInterval:
    """Scale exponent n >= 0 and block index j; points j*2^n < x <= (j+1)*2^n."""

    n: int
    j: int

    def __post_init__(self):
        if not (isinstance(self.n, int) and self.n >= 0):
            raise ValueError("scale exponent n must be an integer >= 0")
        if not isinstance(self.j, int):
            raise ValueError("block index j must be an integer")

    @property
    def length(self):
        return 2 ** self.n

    @property
    def x_lo(self):
        return self.j * 2 ** self.n + 1

    @property
    def x_hi(self):
        return (self.j + 1) * 2 ** self.n

    def contains(self, other):
        """Set containment other subset-of self (dyadic nesting)."""
        if other.n > self.n:
            return False
        return other.j >> (self.n - other.n) == self.j

    def window(self):
        """Inclusive x-window of the phi weight attached to this interval."""
        return ((self.j - 1) * 2 ** self.n, (self.j + 1) * 2 ** self.n)


@dataclass(frozen=True)
class Tree:
    """Top interval, aspect budget A, and every member interval of the tree."""

    top: DyadicInterval
    A: float
    members: tuple


def _as_signals(sets):
    sigs = []
    for e in sets:
        if not isinstance(e, IndicatorSet):
            raise ValueError("expected IndicatorSet inputs")
        sigs.append(e.to_signal())
    return sigs


def a_I(sets, interval, bumps):
    """Normalized local pattern mass 2^(-2n) |single_scale_form| at I."""
    sigs = _as_signals(sets)
    if len(sigs) < 2:
        raise ValueError("need k+1 >= 2 sets")
    s = single_scale_form(sigs, SingleScaleWindow(n=interval.n, j=interval.j), bumps)
    return abs(s) / 4.0 ** interval.n


def a_I_ceiling(bumps):
    """Universal bound on a_I: counting points and kernel offsets at the
    worst scale n = 0 gives a_I <= 15 * psi_sup * phi_sup."""
    return 15.0 * bumps.psi_sup * bumps.phi_sup


def candidate_intervals(sets, r, R):
    """Dyadic intervals with r <= |I| <= R whose phi-window meets E_0's envelope.

    a_I vanishes for every other interval, so enumerations below are complete.
    """
    sets = list(sets)
    env = sets[0].envelope
    if env is None:
        return []
    lo, hi = env
    n_min, n_max = dyadic_scale_range(r, R)
    n_min = max(n_min, 0)
    out = []
    for n in range(n_min, n_max + 1):
        block = 2 ** n
        j_lo = math.ceil(lo / block) - 1
        j_hi = math.floor(hi / block) + 1
        for j in range(j_lo, j_hi + 1):
            out.append(DyadicInterval(n=n, j=j))
    return out


def bad_intervals(sets, r, R, delta, bumps):
    """All intervals with r <= |I| <= R and a_I > delta."""
    if delta < 0:
        raise ValueError("delta must be >= 0")
    return [i for i in candidate_intervals(sets, r, R)
            if a_I(sets, i, bumps) > delta]


def lemma_law_sum(e0, e1, r, R, p, bumps):
    """(lhs, rhs): aggregated a_I^(p/2)-mass against a maximal-function sum.

    lhs = sum over intervals (r <= |I| <= R) of a_I^(p/2) |I| for the pair
    pattern (E_0, E_1); rhs = (45 psi_sup phi_sup)^(p/2) (log2(R/r) + 1) *
    sum_x (M1_{E_0}(x) M1_{E_1}(x))^(p/2), with x over the hull of the
    enumerated intervals. Requires 1 < p < inf.
    """
    if not (1.0 < p < math.inf):
        raise ValueError("need 1 < p < inf")
    sets = [e0, e1]
    cands = candidate_intervals(sets, r, R)
    lhs = 0.0
    hull_lo, hull_hi = None, None
    for i in cands:
        lhs += a_I(sets, i, bumps) ** (p / 2.0) * i.length
        hull_lo = i.x_lo if hull_lo is None else min(hull_lo, i.x_lo)
        hull_hi = i.x_hi if hull_hi is None else max(hull_hi, i.x_hi)
    if hull_lo is None or e0.cardinality == 0 or e1.cardinality == 0:
        return lhs, 0.0
    m0 = maximal_function(e0.to_signal(), (hull_lo, hull_hi))
    m1 = maximal_function(e1.to_signal(), (hull_lo, hull_hi))
    prod = (m0.values.real * m1.values.real) ** (p / 2.0)
    c_chain = 45.0 * bumps.psi_sup * bumps.phi_sup
    rhs = (c_chain ** (p / 2.0)) * (math.log2(R / r) + 1.0) * float(prod.sum())
    return lhs, float(rhs)


def tree_members(top, A):
    """Member intervals of the tree at ``top``: I subset-of top with
    |top|/A <= |I| <= |top|."""
    if A < 1:
        raise ValueError("need A >= 1")
    depth = 0
    while 2 ** (depth + 1) <= A:
        depth += 1
    # scales m with 2^(n-m) <= A, i.e. m >= n - floor(log2 A)
    m_lo = max(top.n - depth, 0)
    members = []
    for m in range(top.n, m_lo - 1, -1):
        shift = top.n - m
        for jj in range(top.j << shift, (top.j + 1) << shift):
            members.append(DyadicInterval(n=m, j=jj))
    return members


def tree_sum(top, A, sets, bumps):
    """sum of a_I * |I| over the members of the tree at ``top``."""
    return math.fsum(a_I(sets, i, bumps) * i.length
                     for i in tree_members(top, A))


def select_tree_A(top, sets, delta, A_max, bumps):
    """Scan A in {2, 4, 8, ...} for tree_sum <= delta * |top| * ln A.

    Returns (A, True) for the first qualifying A, else (cap, False) where cap
    is the largest scanned value max(2, min(A_max, |top|)) rounded down to a
    power of two. The scan always includes A = 2.
    """
    if A_max < 2:
        raise ValueError("need A_max >= 2")
    cap = max(2, min(int(A_max), top.length))
    a = 2
    while True:
        ts = tree_sum(top, float(a), sets, bumps)
        if ts <= delta * top.length * math.log(a):
            return float(a), True
        if a * 2 > cap:
            return float(a), False
        a *= 2


def greedy_tree_cover(bad, sets, delta, eps, A_max, bumps):
    """Cover the bad intervals by trees, largest tops first.

    Bad intervals are processed by decreasing length (ties by increasing j);
    each not-yet-covered one becomes the top of a tree whose aspect A is
    selected against the tighter budget eps * delta. Returns the list of
    trees; their member sets are pairwise disjoint by construction.
    """
    if eps <= 0:
        raise ValueError("need eps > 0")
    order = sorted(bad, key=lambda i: (-i.length, i.j, i.n))
    covered = set()
    trees = []
    for itv in order:
        if itv in covered:
            continue
        a, _ = select_tree_A(itv, sets, eps * delta, A_max, bumps)
        members = tuple(tree_members(itv, a))
        covered.update(members)
        trees.append(Tree(top=itv, A=a, members=members))
    return trees


@dataclass(frozen=True)
class DecompositionReport:
    """Aggregate statistics of the bad-interval decomposition."""

    bad_count: int
    bad_length_sum: float
    mass_sum: float
    trivial_reference: float
    mass_ratio: float
    bad_length_ratio: float


def epsdel_report(sets, r, R, delta, bumps):
    """Summary of the decomposition at threshold delta over scales [r, R].

    mass_sum = sum a_I |I| over all enumerated intervals; ratios normalize by
    ln(R/r) * |E_0| (0 when that reference vanishes).
    """
    sets = list(sets)
    cands = candidate_intervals(sets, r, R)
    mass = 0.0
    bad_len = 0.0
    bad_count = 0
    for i in cands:
        val = a_I(sets, i, bumps)
        mass += val * i.length
        if val > delta:
            bad_count += 1
            bad_len += i.length
    card0 = sets[0].cardinality
    ref = math.log(R / r) * card0 if R > r else 0.0
    trivial = mht.kernel_mass(mht.TruncationParams(r=max(r, 1.0), R=max(R, 1.0), k=max(len(sets) - 1, 1))) * card0
    return DecompositionReport(
        bad_count=bad_count,
        bad_length_sum=bad_len,
        mass_sum=mass,
        trivial_reference=trivial,
        mass_ratio=mass / ref if ref > 0 else 0.0,
        bad_length_ratio=bad_len / ref if ref > 0 else 0.0,
    )
