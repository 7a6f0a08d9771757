"""Certified smooth bump pair used by the dyadic machinery.

Construction, from a smooth step eta (1 on (-inf, 0], 0 on [1, inf)):

    phi_tilde(u) = eta(2|u| - 1)            even, 1 on [-1/2, 1/2], supp [-1, 1]
    psi(t)       = (phi_tilde(t/2) - phi_tilde(t)) / t, psi(0) = 0
    phi(x)       = eta(x) - eta(x + 1)

psi is odd, supported on 1/2 <= |t| <= 2, and telescopes:
sum_n 2^-n psi(2^-n t) = 1/t for t != 0. phi is a partition of unity:
sum_j phi(u - j) = 1. build_bumps certifies all of this on dense grids and
fails loudly if any residual exceeds tolerance.
"""

import math
from dataclasses import dataclass, field

import numpy as np


class CertificationError(RuntimeError):
    """A bump identity failed its numerical certification."""


def _as_float_array(x):
    arr = np.asarray(x, dtype=np.float64)
    return arr, arr.ndim == 0


def _make_eta(sharpness):
    s = float(sharpness)

    def eta(x):
        arr, scalar = _as_float_array(x)
        arr = np.atleast_1d(arr)
        out = np.zeros_like(arr)
        out[arr <= 0.0] = 1.0
        mid = (arr > 0.0) & (arr < 1.0)
        if mid.any():
            xm = arr[mid]
            ga = np.exp(-s / xm)
            gb = np.exp(-s / (1.0 - xm))
            out[mid] = gb / (ga + gb)
        return float(out[0]) if scalar else out

    return eta


def _make_phi_tilde(eta):
    def phi_tilde(u):
        arr, scalar = _as_float_array(u)
        out = eta(2.0 * np.abs(arr) - 1.0)
        return out if not scalar else float(out)

    return phi_tilde


def _make_psi(phi_tilde):
    def psi(t):
        arr, scalar = _as_float_array(t)
        arr = np.atleast_1d(arr)
        num = np.asarray(phi_tilde(arr / 2.0)) - np.asarray(phi_tilde(arr))
        denom = np.where(arr == 0.0, 1.0, arr)
        out = np.where(arr == 0.0, 0.0, num / denom)
        return float(out[0]) if scalar else out

    return psi


def _make_phi(eta):
    def phi(x):
        arr, scalar = _as_float_array(x)
        out = np.asarray(eta(arr)) - np.asarray(eta(arr + 1.0))
        return out if not scalar else float(out)

    return phi


def _fourier_l1(fn, half_support, length=128.0, samples=1 << 21):
    """Approximate integral of |Fourier transform| via an FFT on a padded grid.

    fn is smooth and supported in [-half_support, half_support]; the transform
    decays super-polynomially, so the frequency cutoff samples/(2*length) and
    spacing 1/length leave only a small quadrature error (~1e-4 relative).
    """
    dt = length / samples
    tgrid = (np.arange(samples) - samples / 2) * dt
    vals = np.asarray(fn(tgrid), dtype=np.float64)
    spec = np.abs(np.fft.fft(vals)) * dt
    return float(spec.sum() / length)


@dataclass
class BumpPair:
    """Certified bump pair; psi weights kernel offsets, phi localizes space."""

    psi: object
    phi: object
    eta: object
    phi_tilde: object
    sharpness: float
    psi_sup: float
    phi_sup: float
    psi_hat_l1: float
    phi_hat_l1: float
    residuals: dict = field(default_factory=dict)


def build_bumps(step_sharpness=1.0, grid_points=100_000, certify=True):
    """Construct and certify the bump pair.

    step_sharpness scales the exponent of the mollifier step (documented sane
    range [1/16, 16]; the identities hold for any positive value, the range
    guard only keeps the profile numerically sensible). Certification checks,
    each on a grid of ``grid_points`` points:

      - psi(-u) = -psi(u) to 1e-14 and psi(0) = 0
      - psi vanishes outside 1/2 <= |u| <= 2, phi outside |u| <= 1
      - sum_n 2^-n psi(2^-n u) = 1/u to 1e-10
      - sum_j phi(u - j) = 1 to 1e-12

    Raises CertificationError if any residual exceeds its tolerance.
    """
    s = float(step_sharpness)
    if not (1.0 / 16.0 <= s <= 16.0):
        raise ValueError("step_sharpness outside the documented range [1/16, 16]")
    if grid_points < 1000:
        raise ValueError("grid_points too small to certify anything")

    eta = _make_eta(s)
    phi_tilde = _make_phi_tilde(eta)
    psi = _make_psi(phi_tilde)
    phi = _make_phi(eta)

    residuals = {}
    if certify:
        m = int(grid_points)
        rng = np.random.default_rng(0)

        u = np.linspace(-4.0, 4.0, m)
        odd_res = float(np.abs(np.asarray(psi(u)) + np.asarray(psi(-u))).max())
        odd_res = max(odd_res, abs(psi(0.0)))
        residuals["psi_odd"] = odd_res

        outside = u[(np.abs(u) < 0.5) | (np.abs(u) > 2.0)]
        residuals["psi_support"] = float(np.abs(np.asarray(psi(outside))).max())

        x = np.linspace(-3.0, 3.0, m)
        part = np.zeros_like(x)
        for j in range(-5, 6):
            part += np.asarray(phi(x - j))
        residuals["phi_partition"] = float(np.abs(part - 1.0).max())
        xo = x[np.abs(x) > 1.0]
        residuals["phi_support"] = float(np.abs(np.asarray(phi(xo))).max())

        mags = np.exp(rng.uniform(np.log(1e-3), np.log(1e4), m))
        signs = rng.choice([-1.0, 1.0], m)
        uu = mags * signs
        tele = np.zeros_like(uu)
        base = np.floor(np.log2(np.abs(uu)))
        for dn in range(-2, 3):
            n = base + dn
            scale = 2.0 ** (-n)
            tele += scale * np.asarray(psi(scale * uu))
        residuals["psi_telescoping"] = float(np.abs(tele - 1.0 / uu).max())

        tol = {
            "psi_odd": 1e-14,
            "psi_support": 0.0,
            "phi_partition": 1e-12,
            "phi_support": 0.0,
            "psi_telescoping": 1e-10,
        }
        bad = {k: v for k, v in residuals.items() if v > tol[k]}
        if bad:
            raise CertificationError(f"bump certification failed: {bad}")

    grid = np.linspace(0.5, 2.0, 200_001)
    psi_sup = float(np.abs(np.asarray(psi(grid))).max())
    pgrid = np.linspace(-1.0, 1.0, 200_001)
    phi_sup = float(np.abs(np.asarray(phi(pgrid))).max())

    psi_hat_l1 = _fourier_l1(psi, 2.0)
    phi_hat_l1 = _fourier_l1(phi, 1.0)

    return BumpPair(psi=psi, phi=phi, eta=eta, phi_tilde=phi_tilde, sharpness=s,
                    psi_sup=psi_sup, phi_sup=phi_sup,
                    psi_hat_l1=psi_hat_l1, phi_hat_l1=phi_hat_l1,
                    residuals=residuals)


def dyadic_scale_range(r, R):
    """Integers n with r <= 2^n <= R, as (n_min, n_max); empty if none."""
    if r <= 0 or R < r:
        raise ValueError("need 0 < r <= R")
    n_min = math.ceil(math.log2(r))
    while 2.0 ** n_min < r:
        n_min += 1
    while 2.0 ** (n_min - 1) >= r:
        n_min -= 1
    n_max = math.floor(math.log2(R))
    while 2.0 ** n_max > R:
        n_max -= 1
    while 2.0 ** (n_max + 1) <= R:
        n_max += 1
    return n_min, n_max
