"""Nonclassical depth: closed-form profiles, transition times, and the
one-parameter family of smoothed phase-space densities.

The depth tau_m(t) is the smallest Gaussian smoothing width (in the
convention where 1 recovers the Husimi density from the diagonal weight)
that renders the evolved weight pointwise nonnegative.  For the catalogue
states it has closed forms in u = e^{-2 Gamma t}:

    coherent            |M_t| - N_t
    thermal             |M_t| - (N_t + nbar u)
    squeezed coherent   max of the two quadrature branches
    photon-added coh.   u/2 + sqrt(u^2/4 + M_t^2) - N_t
    cat                 identical to the photon-added coherent row
    photon-added therm. (nbar+1)u/2 + sqrt(((nbar+1)u/2)^2 + M_t^2)
                        - (N_t + nbar u)

clamped below at zero.  The raw (unclamped) profile is what crosses zero
at the classicality transition.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, ImmediateTransition, SingularSmoothing, UnsupportedDescriptor
from .evolution import evolved_descriptor
from .reservoir import ReservoirParams, mt, nt
from .states import (
    AddedCoherentPoly,
    Cat,
    Coherent,
    FieldLaplacian,
    PhotonAddedCoherent,
    PhotonAddedThermal,
    SqueezedCoherent,
    StateSpec,
    Thermal,
)

# Profiles are bracketed for sign changes on the scaled window (0, T_MAX].
T_MAX_SCALED = 50.0
_BISECT_TOL = 1e-10
# A grid minimum above this threshold counts as "nonnegative" in scans.
NEGATIVITY_THRESHOLD = -1e-12


@dataclass(frozen=True)
class TauProfile:
    """Raw (signed) and clamped nonclassical depth at one instant."""

    raw: float
    clamped: float


def tau_raw(state: StateSpec, res: ReservoirParams, t: float) -> float:
    """Unclamped depth profile; negative values mean a classical state."""
    if t < 0.0:
        raise ConfigError(f"time must be >= 0, got {t}")
    u = math.exp(-2.0 * res.gamma * t)
    n_t, m_t = nt(res, t), mt(res, t)

    if isinstance(state, Coherent):
        return abs(m_t) - n_t

    if isinstance(state, Thermal):
        return abs(m_t) - (n_t + state.nbar * u)

    if isinstance(state, SqueezedCoherent):
        s = state.s
        branch_x = -(n_t + m_t - (s - 1.0) / (2.0 * s) * u)
        branch_y = -(n_t - m_t + (s - 1.0) / 2.0 * u)
        return max(branch_x, branch_y)

    if isinstance(state, (PhotonAddedCoherent, Cat)):
        return u / 2.0 + math.hypot(u / 2.0, m_t) - n_t

    if isinstance(state, PhotonAddedThermal):
        half = (state.nbar + 1.0) * u / 2.0
        return half + math.hypot(half, m_t) - (n_t + state.nbar * u)

    raise ConfigError(f"unknown state kind: {type(state).__name__}")


def tau_m(state: StateSpec, res: ReservoirParams, t: float) -> float:
    """Clamped nonclassical depth, in [0, 1] for the catalogue states."""
    return max(0.0, tau_raw(state, res, t))


def tau_profile(state: StateSpec, res: ReservoirParams, t: float) -> TauProfile:
    raw = tau_raw(state, res, t)
    return TauProfile(raw=raw, clamped=max(0.0, raw))


def steady_tau(res: ReservoirParams) -> float:
    """t -> infinity limit of the clamped depth: max(0, |M| - N)."""
    return max(0.0, abs(res.M) - res.N)


def gaussian_tau_from_covariance(min_variance: float) -> float:
    """Depth of a Gaussian state from its smallest quadrature variance:
    max(0, 1/2 - 2 v_min)."""
    return max(0.0, 0.5 - 2.0 * min_variance)


# ---------------------------------------------------------------------------
# transition times


def transition_time(state: StateSpec, res: ReservoirParams) -> float | None:
    """Smallest t > 0 where the raw profile crosses zero.

    Returns None when no sign change exists on (0, 50/Gamma]. Raises
    ImmediateTransition when the profile leaves zero into the
    nonclassical side at t = 0+ and never crosses back (a coherent state
    under a squeezing-dominated reservoir).  Bisection is carried to
    1e-10 in Gamma t.
    """
    gamma = res.gamma

    def raw_scaled(gt: float) -> float:
        return tau_raw(state, res, gt / gamma)

    gts = np.geomspace(1e-8, T_MAX_SCALED, 700)
    vals = [raw_scaled(g) for g in gts]

    bracket = None
    for i in range(len(gts) - 1):
        if vals[i] == 0.0 and gts[i] > 1e-8:
            return gts[i] / gamma
        if vals[i] * vals[i + 1] < 0.0:
            bracket = (gts[i], gts[i + 1])
            break

    if bracket is None:
        raw0 = raw_scaled(0.0)
        if vals[0] > 0.0 and abs(raw0) <= 1e-14:
            raise ImmediateTransition(
                "profile is nonclassical immediately after t = 0 "
                "with no later crossing"
            )
        return None

    lo, hi = bracket
    flo = raw_scaled(lo)
    while hi - lo > _BISECT_TOL:
        mid = 0.5 * (lo + hi)
        fmid = raw_scaled(mid)
        if fmid == 0.0:
            return mid / gamma
        if flo * fmid < 0.0:
            hi = mid
        else:
            lo, flo = mid, fmid
    return 0.5 * (lo + hi) / gamma


def _root_from_u(u: float, gamma: float) -> float:
    return -0.5 * math.log(u) / gamma


def closed_form_transition_time(
    state: StateSpec, res: ReservoirParams
) -> float | None:
    """Algebraic transition time, where one exists.

    Setting the raw profile to zero gives linear or quadratic equations
    in u = e^{-2 Gamma t}; roots are filtered for u in (0, 1), for the
    sign condition lost when squaring, and against the profile itself.
    Returns None when no valid root exists (including the immediate-
    transition situation, which has no finite crossing).
    """
    n_cap, m_abs = res.N, abs(res.M)

    def check(u: float, rhs_ok: bool = True) -> bool:
        if not (0.0 < u < 1.0) or not rhs_ok:
            return False
        t = _root_from_u(u, res.gamma)
        return abs(tau_raw(state, res, t)) < 1e-9

    if isinstance(state, Coherent):
        return None

    if isinstance(state, Thermal):
        if m_abs <= n_cap or state.nbar == 0.0:
            return None
        u = (m_abs - n_cap) / (m_abs - n_cap + state.nbar)
        return _root_from_u(u, res.gamma) if check(u) else None

    if isinstance(state, SqueezedCoherent):
        s = state.s
        n, m = res.N, res.M
        # branch slopes/intercepts in u: f(u) = slope*u - intercept
        branches = (
            (n + m + (s - 1.0) / (2.0 * s), n + m),
            (n - m - (s - 1.0) / 2.0, n - m),
        )
        candidates = []
        for i, (slope, intercept) in enumerate(branches):
            if slope == 0.0:
                continue
            u = intercept / slope
            if not (0.0 < u < 1.0):
                continue
            other_slope, other_intercept = branches[1 - i]
            if other_slope * u - other_intercept <= 1e-12 and check(u):
                candidates.append(u)
        if not candidates:
            return None
        return _root_from_u(max(candidates), res.gamma)

    if isinstance(state, (PhotonAddedCoherent, Cat)):
        m2, n = res.M * res.M, res.N
        denom = n + n * n - m2
        if denom <= 0.0 or n * n <= m2:
            return None
        u = (n * n - m2) / denom
        rhs_ok = n * (1.0 - u) - u / 2.0 >= 0.0
        return _root_from_u(u, res.gamma) if check(u, rhs_ok) else None

    if isinstance(state, PhotonAddedThermal):
        nb, n, m2 = state.nbar, res.N, res.M * res.M
        # (m2 - n^2)(1-u)^2 - n(nb-1) u (1-u) + nb u^2 = 0
        a = (m2 - n * n) + n * (nb - 1.0) + nb
        b = -2.0 * (m2 - n * n) - n * (nb - 1.0)
        c = m2 - n * n
        roots: list[float] = []
        if abs(a) < 1e-300:
            if b != 0.0:
                roots.append(-c / b)
        else:
            disc = b * b - 4.0 * a * c
            if disc < 0.0:
                return None
            sq = math.sqrt(disc)
            roots.extend(((-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)))
        candidates = []
        for u in roots:
            rhs_ok = n * (1.0 - u) + u * (nb - 1.0) / 2.0 >= 0.0
            if check(u, rhs_ok):
                candidates.append(u)
        if not candidates:
            return None
        return _root_from_u(max(candidates), res.gamma)

    raise ConfigError(f"unknown state kind: {type(state).__name__}")


# ---------------------------------------------------------------------------
# smoothed densities


def r_function_grid(
    state: StateSpec,
    res: ReservoirParams,
    t: float,
    tau: float,
    z: np.ndarray,
) -> np.ndarray:
    """Evaluate the tau-smoothed evolved weight on an array of points.

    tau = 0 gives the evolved diagonal weight itself (legal once the
    reservoir smoothing has made every coefficient strictly positive);
    tau = 1 gives the Husimi density.  Cat states are rejected: their
    interference term is carried as metadata, not as an evaluatable
    kernel.
    """
    if tau < 0.0:
        raise ConfigError(f"tau must be >= 0, got {tau}")
    desc = evolved_descriptor(state, res, t)
    if desc.interference is not None:
        raise UnsupportedDescriptor(
            "cat densities have no pointwise closed form here"
        )
    z = np.asarray(z, dtype=complex)
    out = np.zeros(z.shape, dtype=float)
    for term in desc.terms:
        big_r = term.c_r + tau / 4.0
        big_i = term.c_i + tau / 4.0
        if big_r <= 0.0 or big_i <= 0.0:
            raise SingularSmoothing(
                f"total smoothing coefficients must be positive, got "
                f"({big_r:.3g}, {big_i:.3g}); increase tau or t"
            )
        ar, ai = 4.0 * big_r, 4.0 * big_i
        u = z.real - term.center.real
        v = z.imag - term.center.imag
        gauss = np.exp(-u * u / ar - v * v / ai) / (math.pi * math.sqrt(ar * ai))

        poly = term.poly
        if poly is None:
            val = gauss
        elif isinstance(poly, FieldLaplacian):
            b = poly.coeff
            val = gauss * (
                1.0
                + b * ((4.0 * u * u / ar - 2.0) / ar + (4.0 * v * v / ai - 2.0) / ai)
            )
        elif isinstance(poly, AddedCoherentPoly):
            g0, k = poly.gamma0, poly.decay
            k2 = k * k
            norm4 = 4.0 * (abs(g0) ** 2 + 1.0)
            bracket = (
                (4.0 * k2 * u * u / ar - 2.0 * k2) / ar
                + (4.0 * k2 * v * v / ai - 2.0 * k2) / ai
                + 8.0 * g0.real * k * u / ar
                + 8.0 * g0.imag * k * v / ai
                + norm4
            )
            val = gauss * bracket / norm4
        else:  # pragma: no cover - defensive
            raise UnsupportedDescriptor(f"unknown prefactor {type(poly).__name__}")
        out += term.weight * val
    return out


def r_function(
    state: StateSpec, res: ReservoirParams, t: float, tau: float, z: complex
) -> float:
    """Pointwise value of the tau-smoothed evolved weight at z."""
    return float(r_function_grid(state, res, t, tau, np.asarray(z, dtype=complex)))


# ---------------------------------------------------------------------------
# grid scans (numeric validation of the closed-form profiles)


def _scan_points(desc_center: complex, half_width: float, step: float) -> np.ndarray:
    n = int(round(2.0 * half_width / step))
    xs = desc_center.real + (np.arange(n + 1) - n / 2.0) * step
    ys = desc_center.imag + (np.arange(n + 1) - n / 2.0) * step
    return xs[None, :] + 1j * ys[:, None]


def _mean_center(state: StateSpec, res: ReservoirParams, t: float) -> complex:
    desc = evolved_descriptor(state, res, t)
    w = sum(term.weight for term in desc.terms)
    return sum(term.weight * term.center for term in desc.terms) / w


def min_r_on_grid(
    state: StateSpec,
    res: ReservoirParams,
    t: float,
    tau: float,
    step: float = 0.05,
) -> float:
    """Minimum of the smoothed weight over the standard scan window
    (half-width 5 + |center|, centered on the descriptor's mean center)."""
    center = _mean_center(state, res, t)
    z = _scan_points(center, 5.0 + abs(center), step)
    return float(r_function_grid(state, res, t, tau, z).min())


def tau_m_by_negativity_scan(
    state: StateSpec,
    res: ReservoirParams,
    t: float,
    tol: float = 1e-3,
    step: float = 0.05,
) -> float:
    """Numeric depth: bisect the smallest tau whose grid minimum clears
    the negativity threshold.  Validates the closed-form rows."""
    desc = evolved_descriptor(state, res, t)
    min_c = min(min(term.c_r, term.c_i) for term in desc.terms)
    lo = 0.0 if min_c > 0.0 else -4.0 * min_c + 1e-9

    if min_r_on_grid(state, res, t, lo, step) >= NEGATIVITY_THRESHOLD:
        return lo
    hi = 1.0
    while min_r_on_grid(state, res, t, hi, step) < NEGATIVITY_THRESHOLD:
        hi += 0.5  # depth beyond 1 never happens for catalogue states
        if hi > 4.0:
            raise ConfigError("no nonnegative smoothing found below tau = 4")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if min_r_on_grid(state, res, t, mid, step) < NEGATIVITY_THRESHOLD:
            lo = mid
        else:
            hi = mid
    return hi


def classicality_onset_by_scan(
    state: StateSpec,
    res: ReservoirParams,
    gt_lo: float,
    gt_hi: float,
    tol: float = 1e-3,
    step: float = 0.05,
) -> float:
    """Scaled time at which the evolved weight itself (tau = 0) stops
    being negative on the scan grid, located by bisection.

    The bracket [gt_lo, gt_hi] must straddle the onset.
    """
    gamma = res.gamma

    def negative(gt: float) -> bool:
        return min_r_on_grid(state, res, gt / gamma, 0.0, step) < NEGATIVITY_THRESHOLD

    if not negative(gt_lo):
        raise ConfigError(f"no negativity at the lower bracket Gamma*t = {gt_lo}")
    if negative(gt_hi):
        raise ConfigError(f"still negative at the upper bracket Gamma*t = {gt_hi}")
    lo, hi = gt_lo, gt_hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if negative(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
