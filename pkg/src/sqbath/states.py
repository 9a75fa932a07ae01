"""Initial-state catalogue, normally ordered moments, phase-space descriptors.

Six families are supported: coherent, thermal, squeezed coherent,
single-photon-added coherent, single-photon-added thermal, and coherent
superposition (cat) states.

Two exact representations are produced for each:

* a ``MomentTable`` of normally ordered moments <a^dag^j a^k> up to total
  order 4, computed in closed form;
* a ``PDescriptor``: the state's diagonal-coherent-state weight written as
  a sum of (weight, delta center, Gaussian smoothing coefficients,
  optional differential-polynomial prefactor) terms.  Cat states carry
  their oscillatory interference as metadata rather than as an
  evaluatable term.

Gaussian-family moments come from one formal-moment helper that accepts
*signed* axis variances (a squeezed axis has a negative formal variance;
every moment identity is polynomial in the variance, so the analytic
continuation is exact).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb, factorial
from typing import Callable, Union

import numpy as np

from .errors import ConfigError

MAX_ORDER = 4

# ---------------------------------------------------------------------------
# state catalogue


@dataclass(frozen=True)
class Coherent:
    gamma: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "gamma", complex(self.gamma))


@dataclass(frozen=True)
class Thermal:
    nbar: float

    def __post_init__(self) -> None:
        if not (self.nbar >= 0.0):
            raise ConfigError(f"thermal nbar must be >= 0, got {self.nbar}")


@dataclass(frozen=True)
class SqueezedCoherent:
    """Displaced squeezed vacuum with real squeeze parameter mu.

    The convenience scale s = e^{2 mu} is the factor by which the two
    quadrature variances split: var_x = 1/(4s), var_y = s/4 at t = 0.
    """

    gamma: complex
    mu: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "gamma", complex(self.gamma))

    @property
    def s(self) -> float:
        return math.exp(2.0 * self.mu)


@dataclass(frozen=True)
class PhotonAddedCoherent:
    """Normalized a^dag |gamma> / sqrt(|gamma|^2 + 1)."""

    gamma: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "gamma", complex(self.gamma))


@dataclass(frozen=True)
class PhotonAddedThermal:
    """Normalized a^dag rho_thermal a / (nbar + 1); requires nbar > 0
    (the phase-space prefactor is singular at nbar = 0)."""

    nbar: float

    def __post_init__(self) -> None:
        if not (self.nbar > 0.0):
            raise ConfigError(
                f"photon-added thermal requires nbar > 0, got {self.nbar}"
            )


@dataclass(frozen=True)
class Cat:
    """(|gamma> + e^{i phi} |-gamma>) / sqrt(2 (1 + e^{-2|gamma|^2} cos phi))."""

    gamma: complex
    phi: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "gamma", complex(self.gamma))
        if not (0.0 <= self.phi < 2.0 * math.pi):
            raise ConfigError(f"cat phase must lie in [0, 2*pi), got {self.phi}")
        if self.norm_factor <= 1e-12:
            raise ConfigError(
                "degenerate cat: 1 + e^{-2|gamma|^2} cos(phi) vanishes"
            )

    @property
    def norm_factor(self) -> float:
        return 1.0 + math.exp(-2.0 * abs(self.gamma) ** 2) * math.cos(self.phi)


StateSpec = Union[
    Coherent, Thermal, SqueezedCoherent, PhotonAddedCoherent, PhotonAddedThermal, Cat
]


# ---------------------------------------------------------------------------
# moment tables


class MomentTable:
    """Normally ordered moments <a^dag^j a^k> for 0 <= j + k <= 4.

    Entries with j + k > 4 of the backing (5, 5) array are unused and kept
    at zero.  Hermiticity means m[j, k] = conj(m[k, j]); diagonal entries
    are real.
    """

    __slots__ = ("_m",)

    def __init__(self, entries: np.ndarray):
        m = np.array(entries, dtype=complex)
        if m.shape != (MAX_ORDER + 1, MAX_ORDER + 1):
            raise ValueError(f"expected a (5, 5) array, got shape {m.shape}")
        self._m = m
        self._m.setflags(write=False)

    @classmethod
    def build(cls, entry: Callable[[int, int], complex]) -> "MomentTable":
        m = np.zeros((MAX_ORDER + 1, MAX_ORDER + 1), dtype=complex)
        for j in range(MAX_ORDER + 1):
            for k in range(MAX_ORDER + 1 - j):
                m[j, k] = entry(j, k)
        return cls(m)

    def __getitem__(self, jk: tuple[int, int]) -> complex:
        j, k = jk
        if not (0 <= j and 0 <= k and j + k <= MAX_ORDER):
            raise KeyError(f"moment ({j}, {k}) outside the tracked order")
        return complex(self._m[j, k])

    @property
    def array(self) -> np.ndarray:
        return self._m

    # convenience accessors used all over the observable layer
    @property
    def mean_a(self) -> complex:
        return complex(self._m[0, 1])

    @property
    def mean_a2(self) -> complex:
        return complex(self._m[0, 2])

    @property
    def mean_n(self) -> float:
        return float(self._m[1, 1].real)

    @property
    def mean_n2_ordered(self) -> float:
        """<a^dag^2 a^2>."""
        return float(self._m[2, 2].real)

    def var_x(self) -> float:
        """Variance of X = (a + a^dag)/2."""
        mean = self._m[0, 1].real
        second = (self._m[0, 2] + self._m[2, 0] + 2.0 * self._m[1, 1] + 1.0).real / 4.0
        return float(second - mean * mean)

    def var_y(self) -> float:
        """Variance of Y = (a - a^dag)/(2i)."""
        mean = self._m[0, 1].imag
        second = (2.0 * self._m[1, 1] + 1.0 - self._m[0, 2] - self._m[2, 0]).real / 4.0
        return float(second - mean * mean)

    def check(self, tol: float = 1e-10) -> None:
        """Raise if normalization/hermiticity/positivity are violated."""
        if abs(self._m[0, 0] - 1.0) > tol:
            raise ConfigError(f"moment table not normalized: m00 = {self._m[0, 0]}")
        for j in range(MAX_ORDER + 1):
            for k in range(MAX_ORDER + 1 - j):
                if abs(self._m[j, k] - np.conj(self._m[k, j])) > tol:
                    raise ConfigError(f"hermiticity violated at ({j}, {k})")
        for j in (1, 2):
            if self._m[j, j].real < -tol or abs(self._m[j, j].imag) > tol:
                raise ConfigError(f"m{j}{j} must be real nonnegative: {self._m[j, j]}")


def _axis_moments(var: float, kmax: int) -> list[float]:
    """E[x^k] for a centered 1-D Gaussian with (possibly negative)
    formal variance: odd moments vanish, E[x^{2m}] = (2m-1)!! var^m."""
    out = [0.0] * (kmax + 1)
    out[0] = 1.0
    for k in range(2, kmax + 1, 2):
        out[k] = out[k - 2] * (k - 1) * var
    return out


def complex_noise_moments(var_r: float, var_i: float, order: int = MAX_ORDER) -> np.ndarray:
    """E[xi*^p xi^q] for xi = xi_r + i xi_i with independent zero-mean
    axes of formal variance var_r, var_i; p + q <= order."""
    er = _axis_moments(var_r, order)
    ei = _axis_moments(var_i, order)
    x = np.zeros((order + 1, order + 1), dtype=complex)
    for p in range(order + 1):
        for q in range(order + 1 - p):
            acc = 0.0 + 0.0j
            for u in range(p + 1):
                for v in range(q + 1):
                    nr = u + v
                    ni = (p - u) + (q - v)
                    if nr % 2 or ni % 2:
                        continue
                    acc += (
                        comb(p, u)
                        * comb(q, v)
                        * (-1j) ** (p - u)
                        * (1j) ** (q - v)
                        * er[nr]
                        * ei[ni]
                    )
            x[p, q] = acc
    return x


def gaussian_moment_table(center: complex, var_r: float, var_i: float) -> MomentTable:
    """Moment table of beta = center + xi for the formal Gaussian noise
    described by ``complex_noise_moments``."""
    x = complex_noise_moments(var_r, var_i)
    cc = np.conj(center)

    def entry(j: int, k: int) -> complex:
        acc = 0.0 + 0.0j
        for p in range(j + 1):
            for q in range(k + 1):
                acc += (
                    comb(j, p)
                    * comb(k, q)
                    * cc ** (j - p)
                    * center ** (k - q)
                    * x[p, q]
                )
        return acc

    return MomentTable.build(entry)


def _added_photon_entry(base: Callable[[int, int], complex], j: int, k: int) -> complex:
    """<a^dag^j a^k> on the normalized state a^dag rho a / tr(a^dag rho a),
    from normal-ordering a a^dag^j a^k a^dag against the base state:
    a a^dag^j a^k a^dag = a^dag^{j+1} a^{k+1} + (1+j+k) a^dag^j a^k
                          + j k a^dag^{j-1} a^{k-1}.
    """
    num = base(j + 1, k + 1) + (1 + j + k) * base(j, k)
    if j and k:
        num += j * k * base(j - 1, k - 1)
    return num / (base(1, 1) + 1.0)


def initial_moments(state: StateSpec) -> MomentTable:
    """Exact normally ordered moments of the catalogue state at t = 0."""
    if isinstance(state, Coherent):
        return gaussian_moment_table(state.gamma, 0.0, 0.0)

    if isinstance(state, Thermal):
        return gaussian_moment_table(0.0, state.nbar / 2.0, state.nbar / 2.0)

    if isinstance(state, SqueezedCoherent):
        s = state.s
        return gaussian_moment_table(
            state.gamma, (1.0 - s) / (4.0 * s), (s - 1.0) / 4.0
        )

    if isinstance(state, PhotonAddedCoherent):
        g, gc = state.gamma, np.conj(state.gamma)

        def coherent_base(j: int, k: int) -> complex:
            return gc**j * g**k

        return MomentTable.build(
            lambda j, k: _added_photon_entry(coherent_base, j, k)
        )

    if isinstance(state, PhotonAddedThermal):
        nb = state.nbar

        def thermal_base(j: int, k: int) -> complex:
            return factorial(j) * nb**j if j == k else 0.0

        return MomentTable.build(
            lambda j, k: _added_photon_entry(thermal_base, j, k)
        )

    if isinstance(state, Cat):
        g, gc = state.gamma, np.conj(state.gamma)
        olap = math.exp(-2.0 * abs(g) ** 2)
        norm = 2.0 * state.norm_factor
        eip = complex(math.cos(state.phi), math.sin(state.phi))

        def entry(j: int, k: int) -> complex:
            branch = 1.0 + (-1.0) ** (j + k)
            cross = olap * (eip * (-1.0) ** k + np.conj(eip) * (-1.0) ** j)
            return gc**j * g**k * (branch + cross) / norm

        return MomentTable.build(entry)

    raise ConfigError(f"unknown state kind: {type(state).__name__}")


# ---------------------------------------------------------------------------
# phase-space descriptors


@dataclass(frozen=True)
class AddedCoherentPoly:
    """Differential polynomial of a photon-added coherent term, written in
    the coordinates of the *initial* amplitude gamma0:

        [ (d²/dg_r² + d²/dg_i²) + 4 (g_r d/dg_r + g_i d/dg_i)
          + 4 (|gamma0|² + 1) ] / (4 (|gamma0|² + 1))

    ``decay`` is d(center)/d(gamma0) = e^{-Gamma t}, the chain-rule factor
    picked up whenever a gamma0-derivative hits the term's delta/Gaussian.
    """

    gamma0: complex
    decay: float = 1.0


@dataclass(frozen=True)
class FieldLaplacian:
    """Prefactor 1 + coeff (d²/dz_r² + d²/dz_i²) in field coordinates."""

    coeff: float


Prefactor = Union[AddedCoherentPoly, FieldLaplacian]


@dataclass(frozen=True)
class DescriptorTerm:
    """weight x poly x exp(c_r d²/dz_r² + c_i d²/dz_i²) delta²(z - center).

    A strictly positive pair (c_r, c_i) makes the term a genuine
    (polynomial x Gaussian) density; a negative coefficient marks an axis
    squeezed below the delta scale, which only ever appears inside
    further-smoothed evaluations.
    """

    weight: float
    center: complex
    c_r: float
    c_i: float
    poly: Prefactor | None = None


@dataclass(frozen=True)
class CatInterference:
    """Oscillatory interference metadata of a cat descriptor.

    Carried for bookkeeping only — never evaluated pointwise; cat
    observables flow through exact moments and closed-form depth
    expressions instead.  ``weight`` already includes the cat norm.
    """

    weight: float
    phi: float
    gamma0: complex
    decay: float = 1.0


@dataclass(frozen=True)
class PDescriptor:
    terms: tuple[DescriptorTerm, ...]
    interference: CatInterference | None = None


def initial_p_descriptor(state: StateSpec) -> PDescriptor:
    """Exact diagonal-weight descriptor of the catalogue state at t = 0."""
    if isinstance(state, Coherent):
        return PDescriptor((DescriptorTerm(1.0, state.gamma, 0.0, 0.0),))

    if isinstance(state, Thermal):
        c = state.nbar / 4.0
        return PDescriptor((DescriptorTerm(1.0, 0.0, c, c),))

    if isinstance(state, SqueezedCoherent):
        s = state.s
        return PDescriptor(
            (
                DescriptorTerm(
                    1.0,
                    state.gamma,
                    (1.0 - s) / (8.0 * s),
                    -(1.0 - s) / 8.0,
                ),
            )
        )

    if isinstance(state, PhotonAddedCoherent):
        return PDescriptor(
            (
                DescriptorTerm(
                    1.0, state.gamma, 0.0, 0.0, AddedCoherentPoly(state.gamma)
                ),
            )
        )

    if isinstance(state, PhotonAddedThermal):
        c = state.nbar / 4.0
        return PDescriptor(
            (
                DescriptorTerm(
                    1.0, 0.0, c, c, FieldLaplacian((state.nbar + 1.0) / 4.0)
                ),
            )
        )

    if isinstance(state, Cat):
        w = 1.0 / (2.0 * state.norm_factor)
        olap = math.exp(-2.0 * abs(state.gamma) ** 2)
        return PDescriptor(
            (
                DescriptorTerm(w, state.gamma, 0.0, 0.0),
                DescriptorTerm(w, -state.gamma, 0.0, 0.0),
            ),
            interference=CatInterference(2.0 * w * olap, state.phi, state.gamma),
        )

    raise ConfigError(f"unknown state kind: {type(state).__name__}")
