"""Lower-bound searches for the dual pattern form and exact k = 1 oracles.

alternating_maximize runs block coordinate ascent on

    L(f_0..f_k) = sum_{x,t, r<=|t|<=R} f_0(x) f_1(x+t) ... f_k(x+kt) / t

over unit balls of l^{p_i}([1, N]) with sum 1/p_i = 1: the form is linear in
each slot, so the slot update is the closed-form Holder extremizer against
the partial gradient and the objective never decreases. indicator_search
scores random indicator tuples (restricted weak-type search). For k = 1 the
operator is a Fourier multiplier and multiplier_norm_k1 evaluates its exact
l^2 norm on refining grids, an oracle every lower bound must stay below.
"""

import dataclasses
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import backend, mht
from .signals import HolderExponents, IndicatorSet, Signal, lp_norm


@dataclass(frozen=True)
class NormEstimate:
    """A certified lower bound together with the data that re-verifies it."""

    lower_bound: float
    extremizers: tuple
    exponents: HolderExponents
    params: mht.TruncationParams
    iterations: int
    converged: bool
    seed: int
    method: str
    objective_trace: tuple
    restart_scores: tuple

    def reverify(self):
        """Recompute |dual_form| / prod ||f_i||_{p_i} from the stored tuple."""
        denom = 1.0
        for f, p in zip(self.extremizers, self.exponents.p_list):
            nrm = lp_norm(f, p)
            if nrm == 0.0:
                return 0.0
            denom *= nrm
        return abs(mht.dual_form(self.extremizers, self.params)) / denom


def _check_dual(exponents, params):
    if not exponents.is_dual:
        raise ValueError("extremal searches use dual exponents (k+1 slots)")
    if exponents.k != params.k:
        raise ValueError("exponent arity must match params.k")


def _holder_extremizer(g, p):
    """Unit-l^p vector maximizing Re sum f*g; the attained value is ||g||_{p'}."""
    pc = p / (p - 1.0)
    mag = np.abs(g)
    top = mag.max()
    if top == 0.0:
        return None, 0.0
    u = mag / top
    phase = np.where(mag > 0, np.conj(g) / np.where(mag > 0, mag, 1.0), 0.0)
    f = phase * u ** (pc - 1.0)
    norm = np.sum(u ** pc) ** (1.0 / p)
    f /= norm
    value = top * np.sum(u ** pc) ** (1.0 / pc)
    return f, float(value)


def _gradient(arrays, offsets, slot, ts, weights, n):
    k1 = len(arrays)
    vals = [arrays[m] for m in range(k1) if m != slot]
    offs = [offsets[m] for m in range(k1) if m != slot]
    mults = np.array([m - slot for m in range(k1) if m != slot], dtype=np.int64)
    return backend.shift_product_sum(vals, offs, mults, ts, weights,
                                     paired=True, y_lo=1, y_hi=n)


def alternating_maximize(exponents, params, domain_size, seed=0, max_iter=100,
                         tol=1e-10, restarts=1, init=None):
    """Block coordinate ascent for the dual form on [1, N]; returns the best
    NormEstimate over ``restarts`` random starts (or the single run from
    ``init`` when given). The objective trace is nondecreasing."""
    _check_dual(exponents, params)
    n = int(domain_size)
    if n < 1:
        raise ValueError("domain_size must be >= 1")
    k1 = params.k + 1
    ts, weights = mht._paired_kernel(params)
    root = np.random.SeedSequence(seed)
    if init is not None:
        starts = [None]
    else:
        starts = root.spawn(max(int(restarts), 1))

    best = None
    scores = []
    for child in starts:
        if init is not None:
            arrays = []
            for f, p in zip(init, exponents.p_list):
                vals = f.sample(1, n)
                nrm = lp_norm(vals, p)
                arrays.append(vals / nrm if nrm > 0 else vals)
        else:
            rng = np.random.default_rng(child)
            arrays = []
            for p in exponents.p_list:
                vals = rng.standard_normal(n) + 1j * rng.standard_normal(n)
                arrays.append(vals / lp_norm(vals, p))
        offsets = [1] * k1

        trace = []
        obj = 0.0
        prev_sweep = None
        sweeps = 0
        converged = False
        for _ in range(int(max_iter)):
            sweeps += 1
            for slot in range(k1):
                if ts.size == 0:
                    trace.append(0.0)
                    obj = 0.0
                    continue
                g = _gradient(arrays, offsets, slot, ts, weights, n)
                f_new, value = _holder_extremizer(g, exponents.p_list[slot])
                if f_new is None:
                    obj = abs(np.sum(arrays[slot] * g))
                else:
                    arrays[slot] = f_new
                    obj = value
                trace.append(obj)
            if prev_sweep is not None and obj - prev_sweep <= tol * max(1.0, abs(obj)):
                converged = True
                break
            prev_sweep = obj
        ext = tuple(Signal(1, a) for a in arrays)
        est = NormEstimate(
            lower_bound=0.0, extremizers=ext, exponents=exponents,
            params=params, iterations=sweeps, converged=converged,
            seed=int(seed), method="alternating",
            objective_trace=tuple(trace), restart_scores=())
        est = dataclasses.replace(est, lower_bound=est.reverify())
        scores.append(est.lower_bound)
        if best is None or est.lower_bound > best.lower_bound:
            best = est
    return dataclasses.replace(best, restart_scores=tuple(scores))


def indicator_search(exponents, params, domain_size, trials, seed=0):
    """Random restricted-type search: score indicator tuples E_0..E_k by
    |dual_form| / prod |E_i|^{1/p_i} and keep the best."""
    _check_dual(exponents, params)
    n = int(domain_size)
    if n < 1:
        raise ValueError("domain_size must be >= 1")
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    k1 = params.k + 1
    best_score = -1.0
    best_sets = None
    for _ in range(int(trials)):
        sets = []
        for _ in range(k1):
            size = int(rng.integers(1, max(n // 2, 1) + 1))
            pts = rng.choice(n, size=size, replace=False) + 1
            sets.append(IndicatorSet(pts))
        denom = 1.0
        for e, p in zip(sets, exponents.p_list):
            denom *= e.cardinality ** (1.0 / p)
        sigs = [e.to_signal() for e in sets]
        score = abs(mht.dual_form(sigs, params)) / denom
        if score > best_score:
            best_score = score
            best_sets = sets
    ext = tuple(e.to_signal() for e in best_sets)
    est = NormEstimate(
        lower_bound=0.0, extremizers=ext, exponents=exponents, params=params,
        iterations=int(trials), converged=True, seed=int(seed),
        method="indicator", objective_trace=(), restart_scores=())
    return dataclasses.replace(est, lower_bound=est.reverify())


def multiplier_norm_k1(params, grid_points=4096, tol=1e-6, max_grid=1 << 27):
    """Exact sup of the k = 1 multiplier |m(theta)| on refining dyadic grids.

    m(theta) = -2i sum_{r<=t<=R} sin(2 pi t theta)/t; grid values are exact
    (coefficients are aliased into the grid's resolution before the FFT), and
    the grid is doubled until the max moves by less than ``tol``. The result
    never exceeds the true sup.
    """
    if params.k != 1:
        raise ValueError("multiplier oracle requires k = 1")
    if grid_points < 4096:
        raise ValueError("grid_points must be at least 4096")
    pos = params.positive_ts()
    if pos.size == 0:
        return 0.0
    coeff = 1.0 / pos

    def grid_max(g):
        c = np.zeros(g)
        np.add.at(c, pos % g, coeff)
        np.add.at(c, (-pos) % g, -coeff)
        spec = np.fft.rfft(c)
        return float(np.abs(spec).max())

    # the narrowest feature of |m| has width ~ 1/R, so never start coarser
    # than 16 R points or the refinement test can stall before seeing it
    floor_g = 16 * max(int(pos[-1]), 1)
    g = 1 << int(math.ceil(math.log2(max(grid_points, floor_g))))
    prev = grid_max(g)
    stable = 0
    while g * 2 <= max_grid:
        g *= 2
        cur = grid_max(g)
        stable = stable + 1 if cur - prev < tol else 0
        prev = cur
        if stable >= 2:
            return cur
    raise RuntimeError("multiplier grid did not converge within max_grid")


@dataclass(frozen=True)
class CurvePoint:
    ratio: float
    lower_bound: float
    trivial: float
    normalized: float
    method: str
    seed: int
    iterations: int


def _point_seed(base_seed, index, tag):
    return int(np.random.SeedSequence([int(base_seed), int(index), int(tag)])
               .generate_state(1)[0])


def _curve_point(args):
    (ratio, k, p_list, domain_size, trials, max_iter, restarts, base_seed, index) = args
    exponents = HolderExponents.dual(p_list)
    params = mht.TruncationParams(r=1.0, R=float(ratio), k=k)
    seed_alt = _point_seed(base_seed, index, 0)
    seed_ind = _point_seed(base_seed, index, 1)
    alt = alternating_maximize(exponents, params, domain_size, seed=seed_alt,
                               max_iter=max_iter, restarts=restarts)
    ind = indicator_search(exponents, params, domain_size, trials, seed=seed_ind)
    if alt.lower_bound >= ind.lower_bound:
        chosen, seed_used = alt, seed_alt
    else:
        chosen, seed_used = ind, seed_ind
    trivial = mht.kernel_mass(params)
    normalized = chosen.lower_bound / trivial if trivial > 0 else 0.0
    return CurvePoint(ratio=float(ratio), lower_bound=chosen.lower_bound,
                      trivial=trivial, normalized=normalized,
                      method=chosen.method, seed=seed_used,
                      iterations=chosen.iterations)


def growth_curve(exponents, ratios, domain_size, seed=0, trials=64,
                 max_iter=60, restarts=2, workers=1):
    """Lower-bound curve over truncation ratios R/r (r = 1).

    Deterministic for a fixed seed regardless of worker count: per-point
    seeds derive from (seed, point index) and results are merged in ratio
    order.
    """
    _ratios = [float(a) for a in ratios]
    for a in _ratios:
        if a < 1.0:
            raise ValueError("ratios must be >= 1")
    if exponents.is_dual:
        dual = exponents
    else:
        dual = exponents.to_dual()
    jobs = [(a, dual.k, dual.p_list, int(domain_size), int(trials),
             int(max_iter), int(restarts), int(seed), i)
            for i, a in enumerate(_ratios)]
    if int(workers) > 1:
        with ProcessPoolExecutor(max_workers=int(workers)) as pool:
            points = list(pool.map(_curve_point, jobs))
    else:
        points = [_curve_point(j) for j in jobs]
    points.sort(key=lambda p: (p.ratio, p.seed))
    return points
