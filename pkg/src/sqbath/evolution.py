"""Exact evolution of descriptors, moments, and derived observables.

Damped evolution under the squeezed reservoir acts on the diagonal
phase-space weight as a contraction of the field amplitude by e^{-Gamma t}
followed by an anisotropic Gaussian smoothing whose axis coefficients are
(N_t + M_t)/4 and (N_t - M_t)/4.  Equivalently, the evolved amplitude is
the random variable

    beta e^{-Gamma t} + xi,

with xi an independent zero-mean noise of formal variances
Var(xi_r) = (N_t + M_t)/2, Var(xi_i) = (N_t - M_t)/2 and zero covariance.
Both pictures are implemented: descriptor transport for pointwise
evaluation, and a binomial moment map for observables.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import DegenerateDenominator, UnsupportedDescriptor
from .reservoir import ReservoirParams, mt, nt
from .states import (
    MAX_ORDER,
    AddedCoherentPoly,
    CatInterference,
    DescriptorTerm,
    FieldLaplacian,
    MomentTable,
    PDescriptor,
    StateSpec,
    complex_noise_moments,
    gaussian_moment_table,
    initial_moments,
    initial_p_descriptor,
)


@dataclass(frozen=True)
class GaussianSmoothing:
    """The reservoir's action on a descriptor after time t.

    scale : amplitude contraction e^{-Gamma t}
    add_r : Gaussian coefficient added on the real axis, (N_t + M_t)/4
    add_i : Gaussian coefficient added on the imaginary axis, (N_t - M_t)/4
    """

    scale: float
    add_r: float
    add_i: float

    @classmethod
    def from_reservoir(cls, res: ReservoirParams, t: float) -> "GaussianSmoothing":
        n_t, m_t = nt(res, t), mt(res, t)
        return cls(
            scale=math.exp(-res.gamma * t),
            add_r=(n_t + m_t) / 4.0,
            add_i=(n_t - m_t) / 4.0,
        )


def evolved_descriptor(state: StateSpec, res: ReservoirParams, t: float) -> PDescriptor:
    """Transport the t = 0 descriptor to time t.

    Centers contract by e^{-Gamma t}; initial Gaussian coefficients damp
    by e^{-2 Gamma t} and the reservoir coefficients add on top;
    differential prefactors keep their shape with the chain-rule/damping
    factor they acquire from the coordinate contraction.
    """
    base = initial_p_descriptor(state)
    sm = GaussianSmoothing.from_reservoir(res, t)
    k, k2 = sm.scale, sm.scale * sm.scale

    terms = []
    for term in base.terms:
        poly = term.poly
        if isinstance(poly, AddedCoherentPoly):
            poly = AddedCoherentPoly(poly.gamma0, poly.decay * k)
        elif isinstance(poly, FieldLaplacian):
            poly = FieldLaplacian(poly.coeff * k2)
        terms.append(
            DescriptorTerm(
                weight=term.weight,
                center=term.center * k,
                c_r=term.c_r * k2 + sm.add_r,
                c_i=term.c_i * k2 + sm.add_i,
                poly=poly,
            )
        )

    interference = base.interference
    if interference is not None:
        interference = CatInterference(
            weight=interference.weight,
            phi=interference.phi,
            gamma0=interference.gamma0,
            decay=interference.decay * k,
        )
    return PDescriptor(tuple(terms), interference)


def evolve_moments(m0: MomentTable, res: ReservoirParams, t: float) -> MomentTable:
    """Moment table at time t from the table at t = 0.

    <a^dag^j a^k>(t) = sum_{p,q} C(j,p) C(k,q) e^{-Gamma t (j-p+k-q)}
                       <a^dag^{j-p} a^{k-q}>(0) E[xi*^p xi^q].
    """
    sm = GaussianSmoothing.from_reservoir(res, t)
    x = complex_noise_moments(2.0 * sm.add_r, 2.0 * sm.add_i)
    k = sm.scale

    def entry(j: int, kk: int) -> complex:
        acc = 0.0 + 0.0j
        for p in range(j + 1):
            for q in range(kk + 1):
                acc += (
                    comb(j, p)
                    * comb(kk, q)
                    * k ** ((j - p) + (kk - q))
                    * m0[j - p, kk - q]
                    * x[p, q]
                )
        return acc

    return MomentTable.build(entry)


def evolved_state_moments(state: StateSpec, res: ReservoirParams, t: float) -> MomentTable:
    """Convenience: exact moment table of a catalogue state at time t."""
    return evolve_moments(initial_moments(state), res, t)


def mandel_q(m0: MomentTable, res: ReservoirParams, t: float) -> float:
    """Mandel Q at time t from the initial moment table.

    Q(t) = { [<adag2 a2>(0) - <n>(0)^2] e^{-4 Gamma t}
             + [2 N_t <n>(0) + M_t (<a^2>(0) + <adag^2>(0))] e^{-2 Gamma t}
             + N_t^2 + M_t^2 } / { <n>(0) e^{-2 Gamma t} + N_t }

    Raises DegenerateDenominator when the mean photon number vanishes.
    """
    n_t, m_t = nt(res, t), mt(res, t)
    u = math.exp(-2.0 * res.gamma * t)
    n0 = m0.mean_n
    denom = n0 * u + n_t
    if denom == 0.0:
        raise DegenerateDenominator(
            "Mandel Q undefined: mean photon number is zero"
        )
    numer = (
        (m0.mean_n2_ordered - n0 * n0) * u * u
        + (2.0 * n_t * n0 + 2.0 * m_t * m0.mean_a2.real) * u
        + n_t * n_t
        + m_t * m_t
    )
    return numer / denom


def quadrature_variances(
    m0: MomentTable, res: ReservoirParams, t: float
) -> tuple[float, float]:
    """(Var X, Var Y)(t) for X = (a + a^dag)/2, Y = (a - a^dag)/(2i).

    V_X(t) = [2 (N_t + M_t) + 1]/4 + [V_X(0) - 1/4] e^{-2 Gamma t},
    and with M_t -> -M_t for V_Y.
    """
    n_t, m_t = nt(res, t), mt(res, t)
    u = math.exp(-2.0 * res.gamma * t)
    vx = (2.0 * (n_t + m_t) + 1.0) / 4.0 + (m0.var_x() - 0.25) * u
    vy = (2.0 * (n_t - m_t) + 1.0) / 4.0 + (m0.var_y() - 0.25) * u
    return vx, vy


def descriptor_moments(desc: PDescriptor) -> MomentTable:
    """Integrate a descriptor against amplitude monomials.

    Supported term shapes: plain Gaussian-smoothed deltas and field
    Laplacian prefactors (by parts: the Laplacian of z*^j z^k is
    4 j k z*^{j-1} z^{k-1}).  Center-coordinate polynomials and cat
    interference have no closed form here and are rejected; their
    observables flow through ``evolve_moments`` instead.
    """
    if desc.interference is not None:
        raise UnsupportedDescriptor(
            "cat interference moments are not integrable here; "
            "use the exact moment route"
        )
    acc = np.zeros((MAX_ORDER + 1, MAX_ORDER + 1), dtype=complex)
    for term in desc.terms:
        base = gaussian_moment_table(term.center, 2.0 * term.c_r, 2.0 * term.c_i)
        if term.poly is None:
            acc += term.weight * base.array
        elif isinstance(term.poly, FieldLaplacian):
            b = term.poly.coeff
            part = base.array.copy()
            for j in range(1, MAX_ORDER + 1):
                for k in range(1, MAX_ORDER + 1 - j):
                    part[j, k] += 4.0 * b * j * k * base.array[j - 1, k - 1]
            acc += term.weight * part
        else:
            raise UnsupportedDescriptor(
                "center-coordinate differential polynomials are not "
                "integrable here; use the exact moment route"
            )
    return MomentTable(acc)
