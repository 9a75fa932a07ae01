"""Truncated-Fock-space master-equation oracle.

This is the package's independent validation route: dense matrices in a
photon-number basis, exact catalogue-state preparation, a fixed-step RK4
integration of the damped-mode master equation

    drho/dt = Gamma (N+1) (2 a rho adag - adag a rho - rho adag a)
            + Gamma  N    (2 adag rho a - a adag rho - rho a adag)
            - Gamma  M    (2 adag rho adag - adag adag rho - rho adag adag)
            - Gamma  M*   (2 a rho a - a a rho - rho a a),

and a displaced-number series for the smoothed phase-space densities.
Nothing here calls the analytic layer; agreement between the two routes
is what the test suite certifies.
"""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy.linalg import expm

from .errors import (
    ConfigError,
    SeriesDiverges,
    TraceDriftExceeded,
    TruncationTooSmall,
)
from .reservoir import ReservoirParams
from .states import (
    MAX_ORDER,
    Cat,
    Coherent,
    MomentTable,
    PhotonAddedCoherent,
    PhotonAddedThermal,
    SqueezedCoherent,
    StateSpec,
    Thermal,
)

DEFAULT_DIM = 64
TRACE_TOL = 1e-6
LEAKAGE_BOUND = 1e-12
SERIES_TOL = 1e-10


@lru_cache(maxsize=None)
def _ladder(dim: int) -> tuple[np.ndarray, np.ndarray]:
    a = np.zeros((dim, dim), dtype=complex)
    idx = np.arange(dim - 1)
    a[idx, idx + 1] = np.sqrt(np.arange(1, dim, dtype=float))
    ad = a.conj().T.copy()
    a.setflags(write=False)
    ad.setflags(write=False)
    return a, ad


def annihilation(dim: int) -> np.ndarray:
    """Truncated annihilation operator (a copy; safe to mutate)."""
    return _ladder(dim)[0].copy()


def displacement(z: complex, dim: int) -> np.ndarray:
    """D(z) = exp(z adag - z* a) on the truncated space."""
    a, ad = _ladder(dim)
    return expm(z * ad - np.conj(z) * a)


def squeeze(xi: complex, dim: int) -> np.ndarray:
    """S(xi) = exp((xi* a^2 - xi adag^2)/2) on the truncated space."""
    a, ad = _ladder(dim)
    return expm(0.5 * (np.conj(xi) * (a @ a) - xi * (ad @ ad)))


def coherent_vector(gamma: complex, dim: int) -> np.ndarray:
    v = np.zeros(dim, dtype=complex)
    v[0] = math.exp(-0.5 * abs(gamma) ** 2)
    for n in range(1, dim):
        v[n] = v[n - 1] * gamma / math.sqrt(n)
    return v


def _leakage(diag: np.ndarray) -> tuple[float, int]:
    dim = diag.shape[0]
    top = max(1, math.ceil(dim / 10))
    return float(np.real(diag[dim - top :]).sum()), top


def _check_leakage(rho: np.ndarray, what: str) -> None:
    leak, top = _leakage(np.diag(rho))
    if not (leak < LEAKAGE_BOUND):
        dim = rho.shape[0]
        raise TruncationTooSmall(
            f"{what}: population {leak:.3e} in the top {top} of {dim} levels "
            f"exceeds {LEAKAGE_BOUND:g}; retry with dim >= {2 * dim}"
        )


def prepare(state: StateSpec, dim: int = DEFAULT_DIM) -> np.ndarray:
    """Density matrix of a catalogue state on dim levels.

    The exact state is projected onto the truncated space; if the top
    tenth of the ladder holds more than the leakage budget the dimension
    is rejected, otherwise the projection is renormalized to unit trace.
    """
    if dim < 2:
        raise ConfigError(f"dim must be >= 2, got {dim}")

    if isinstance(state, Coherent):
        v = coherent_vector(state.gamma, dim)
        rho = np.outer(v, v.conj())

    elif isinstance(state, Thermal):
        x = state.nbar / (state.nbar + 1.0)
        w = x ** np.arange(dim) / (state.nbar + 1.0)
        rho = np.diag(w.astype(complex))

    elif isinstance(state, SqueezedCoherent):
        # build in a larger space and project so the vector below dim is
        # the exact state's amplitudes, not truncated-exponential ones
        big = 2 * dim
        v = (displacement(state.gamma, big) @ squeeze(state.mu, big)[:, 0])[:dim]
        rho = np.outer(v, v.conj())

    elif isinstance(state, PhotonAddedCoherent):
        _, ad = _ladder(dim)
        v = ad @ coherent_vector(state.gamma, dim)
        v = v / np.linalg.norm(v)
        rho = np.outer(v, v.conj())

    elif isinstance(state, PhotonAddedThermal):
        x = state.nbar / (state.nbar + 1.0)
        w = np.zeros(dim)
        m = np.arange(dim - 1)
        w[1:] = (m + 1.0) * x**m / (state.nbar + 1.0) ** 2
        rho = np.diag(w.astype(complex))

    elif isinstance(state, Cat):
        eip = complex(math.cos(state.phi), math.sin(state.phi))
        v = coherent_vector(state.gamma, dim) + eip * coherent_vector(-state.gamma, dim)
        v = v / np.linalg.norm(v)
        rho = np.outer(v, v.conj())

    else:
        raise ConfigError(f"unknown state kind: {type(state).__name__}")

    _check_leakage(rho, type(state).__name__)
    return rho / np.trace(rho).real


@lru_cache(maxsize=None)
def _rhs_operators(
    dim: int, n_cap: float, m_cap: float
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(H, B, C) with the jump part folded into two products:

        jump = a rho B + adag rho C,
        B = (N+1) adag - M a,   C = N a - M adag,
        H = (N+1) adag a + N a adag - M (adag^2 + a^2).
    """
    a, ad = _ladder(dim)
    h = (n_cap + 1.0) * (ad @ a) + n_cap * (a @ ad) - m_cap * (ad @ ad + a @ a)
    b = (n_cap + 1.0) * ad - m_cap * a
    c = n_cap * a - m_cap * ad
    for op in (h, b, c):
        op.setflags(write=False)
    return h, b, c


def lindblad_rhs(rho: np.ndarray, res: ReservoirParams) -> np.ndarray:
    """Right-hand side of the master equation (dense, truncated)."""
    dim = rho.shape[0]
    a, ad = _ladder(dim)
    h, b, c = _rhs_operators(dim, res.N, res.M)
    ar = a @ rho
    adr = ad @ rho
    return res.gamma * (2.0 * (ar @ b + adr @ c) - (h @ rho + rho @ h))


def _rk4_step(rho: np.ndarray, res: ReservoirParams, h: float) -> np.ndarray:
    k1 = lindblad_rhs(rho, res)
    k2 = lindblad_rhs(rho + (0.5 * h) * k1, res)
    k3 = lindblad_rhs(rho + (0.5 * h) * k2, res)
    k4 = lindblad_rhs(rho + h * k3, res)
    rho = rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    # roundoff accumulates asymmetry; fold it back every step
    return 0.5 * (rho + rho.conj().T)


def _check_trace(rho: np.ndarray) -> None:
    drift = abs(np.trace(rho).real - 1.0)
    if drift > TRACE_TOL:
        raise TraceDriftExceeded(
            f"trace drift {drift:.3e} exceeds {TRACE_TOL:g}; reduce dt "
            "(the stability limit shrinks as dim grows)"
        )


def integrate(
    rho0: np.ndarray, res: ReservoirParams, t: float, dt: float | None = None
) -> np.ndarray:
    """Propagate rho0 to time t with fixed-step RK4 (default dt 1e-3/Gamma).

    The state is re-hermitized every step and the trace is only monitored
    — never renormalized — so drift stays an honest diagnostic.
    """
    return evolve_recording(rho0, res, [t], dt)[0]


def evolve_recording(
    rho0: np.ndarray,
    res: ReservoirParams,
    times: "list[float] | np.ndarray",
    dt: float | None = None,
) -> list[np.ndarray]:
    """Propagate once through a nondecreasing list of times, returning a
    density-matrix snapshot at each."""
    if dt is None:
        dt = 1e-3 / res.gamma
    if not (dt > 0.0):
        raise ConfigError(f"dt must be > 0, got {dt}")
    rho = np.array(rho0, dtype=complex)
    _check_trace(rho)
    out: list[np.ndarray] = []
    t_now = 0.0
    for target in times:
        if target < t_now - 1e-12:
            raise ConfigError("snapshot times must be nondecreasing")
        span = target - t_now
        if span > 0.0:
            n_steps = max(1, round(span / dt))
            h = span / n_steps
            for _ in range(n_steps):
                rho = _rk4_step(rho, res, h)
                _check_trace(rho)
        t_now = target
        out.append(rho.copy())
    return out


@lru_cache(maxsize=None)
def _moment_ops(dim: int) -> dict[tuple[int, int], np.ndarray]:
    a, ad = _ladder(dim)
    a_pow = [np.eye(dim, dtype=complex)]
    ad_pow = [np.eye(dim, dtype=complex)]
    for _ in range(MAX_ORDER):
        a_pow.append(a_pow[-1] @ a)
        ad_pow.append(ad_pow[-1] @ ad)
    ops = {}
    for j in range(MAX_ORDER + 1):
        for k in range(MAX_ORDER + 1 - j):
            ops[(j, k)] = ad_pow[j] @ a_pow[k]
    return ops


def moments_from_rho(rho: np.ndarray) -> MomentTable:
    """Normally ordered moment table tr(rho adag^j a^k), j + k <= 4."""
    ops = _moment_ops(rho.shape[0])
    m = np.zeros((MAX_ORDER + 1, MAX_ORDER + 1), dtype=complex)
    for (j, k), op in ops.items():
        m[j, k] = np.einsum("ij,ji->", rho, op)
    return MomentTable(m)


def _series_weights(tau: float, dim: int) -> np.ndarray:
    ratio = -(1.0 - tau) / tau
    return ratio ** np.arange(dim) / (math.pi * tau)


def quasiprob_from_rho(rho: np.ndarray, z: complex, tau: float) -> float:
    """Smoothed density at z from the displaced-number series

        R(z, tau) = 1/(pi tau) sum_n [-(1-tau)/tau]^n <n| D†(z) rho D(z) |n>,

    convergent for tau in (1/2, 1]; terms are summed until the residual
    bound drops below 1e-10.
    """
    if not (0.5 < tau <= 1.0):
        raise SeriesDiverges(f"series requires tau in (1/2, 1], got {tau}")
    dim = rho.shape[0]
    d = displacement(z, dim)
    diag = np.real(np.einsum("in,ij,jn->n", d.conj(), rho, d))
    ratio = abs((1.0 - tau) / tau)
    # suffix maxima let us stop as soon as the rest of the series is dust
    suffix = np.maximum.accumulate(np.abs(diag)[::-1])[::-1]
    acc = 0.0
    sign = 1.0
    r_pow = 1.0
    for n in range(dim):
        if r_pow * suffix[n] < SERIES_TOL:
            break
        acc += sign * r_pow * diag[n]
        sign = -sign
        r_pow *= ratio
    return acc / (math.pi * tau)


@lru_cache(maxsize=None)
def _disp_real(dim: int, x: float) -> np.ndarray:
    a, ad = _ladder(dim)
    d = expm(x * np.real(ad - a))
    d.setflags(write=False)
    return d


@lru_cache(maxsize=None)
def _disp_imag(dim: int, y: float) -> np.ndarray:
    a, ad = _ladder(dim)
    d = expm(1j * y * (ad + a))
    d.setflags(write=False)
    return d


def quasiprob_grid(
    rho: np.ndarray, xs: np.ndarray, ys: np.ndarray, tau: float
) -> np.ndarray:
    """Same series as quasiprob_from_rho on a separable grid, shape
    (len(ys), len(xs)).

    Uses D(x + iy) = e^{-i x y} D(iy) D(x); the phase cancels under
    conjugation, and the two one-parameter displacement families are
    cached, so each grid point costs one matrix product.
    """
    if not (0.5 < tau <= 1.0):
        raise SeriesDiverges(f"series requires tau in (1/2, 1], got {tau}")
    dim = rho.shape[0]
    w = _series_weights(tau, dim)
    out = np.empty((len(ys), len(xs)), dtype=float)
    dxs = [_disp_real(dim, float(x)) for x in xs]
    for iy, y in enumerate(ys):
        dy = _disp_imag(dim, float(y))
        rho_y = dy.conj().T @ rho @ dy
        for ix, dx in enumerate(dxs):
            b = rho_y @ dx
            diag = np.real(np.einsum("in,in->n", dx.conj(), b))
            out[iy, ix] = diag @ w
    return out


def steady_state(res: ReservoirParams, dim: int = DEFAULT_DIM) -> np.ndarray:
    """Fixed point of the master equation: a squeezed thermal state with
    <adag a> = N and <a^2> = M.

    Inverting N + 1/2 = (nbar0 + 1/2) cosh(2r), |M| = (nbar0 + 1/2) sinh(2r)
    gives the occupation and squeeze modulus; the squeeze phase is chosen
    so that the constructed state actually reproduces the sign of M
    (<a^2> on S(xi) rho_th S(xi)† is -e^{i arg xi} (2 nbar0 + 1) sh ch).
    """
    half = res.N + 0.5
    rad = half * half - res.M * res.M
    if rad <= 0.0:  # pragma: no cover - excluded by the M^2 bound
        raise ConfigError("reservoir violates the squeezing bound")
    c = 2.0 * math.sqrt(rad)
    nbar0 = (c - 1.0) / 2.0
    r = 0.5 * math.atanh(abs(res.M) / half)
    xi = r if res.M <= 0.0 else -r

    big = 2 * dim
    x = nbar0 / (nbar0 + 1.0) if nbar0 > 0.0 else 0.0
    w = x ** np.arange(big) / (nbar0 + 1.0)
    s = squeeze(xi, big)
    rho = (s @ np.diag(w.astype(complex)) @ s.conj().T)[:dim, :dim]
    return rho / np.trace(rho).real
