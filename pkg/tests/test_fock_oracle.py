import math

import numpy as np
import pytest

from sqbath import (
    Cat,
    Coherent,
    ConfigError,
    PhotonAddedCoherent,
    PhotonAddedThermal,
    ReservoirParams,
    SeriesDiverges,
    SqueezedCoherent,
    Thermal,
    TraceDriftExceeded,
    TruncationTooSmall,
)
from sqbath.fock_oracle import (
    coherent_vector,
    evolve_recording,
    integrate,
    lindblad_rhs,
    moments_from_rho,
    prepare,
    quasiprob_from_rho,
    quasiprob_grid,
    steady_state,
)

SQRT2 = math.sqrt(2.0)
R_SAT = ReservoirParams(N=1.0, M=-SQRT2)
R_MIX = ReservoirParams(N=2.0, M=1.0)


# ---------------------------------------------------------------------------
# preparation


def test_prepare_vacuum():
    rho = prepare(Coherent(0.0), 8)
    expected = np.zeros((8, 8), dtype=complex)
    expected[0, 0] = 1.0
    np.testing.assert_allclose(rho, expected, atol=1e-15)


def test_prepare_thermal_geometric_weights():
    rho = prepare(Thermal(1.0), 64)
    m = np.arange(64)
    np.testing.assert_allclose(np.diag(rho).real, 0.5**(m + 1), atol=1e-15)
    assert np.trace(rho).real >= 1.0 - 1e-15
    assert np.abs(rho - np.diag(np.diag(rho))).max() == 0.0


def test_prepare_added_thermal_weights():
    # level m+1 carries weight prop. to (m+1) (1/2)^m; the vacuum is empty
    rho = prepare(PhotonAddedThermal(1.0), 64)
    diag = np.diag(rho).real
    assert diag[0] == 0.0
    m = np.arange(63)
    np.testing.assert_allclose(diag[1:], (m + 1) * 0.5**m / 4.0, atol=1e-15)


def test_prepare_coherent_moments_are_monomials():
    g = 0.7 - 0.4j
    table = moments_from_rho(prepare(Coherent(g), 64))
    for j in range(5):
        for k in range(5 - j):
            assert abs(table[j, k] - np.conj(g) ** j * g**k) < 1e-12


def test_prepare_cat_interference_sign():
    # odd cat (phi = pi) has no even-photon population
    rho = prepare(Cat(1.0, math.pi), 64)
    diag = np.diag(rho).real
    assert diag[0] == pytest.approx(0.0, abs=1e-15)
    assert diag[2] == pytest.approx(0.0, abs=1e-15)
    assert diag[1] > 0.1


def test_truncation_guard_carries_hint():
    with pytest.raises(TruncationTooSmall, match="dim >= 16"):
        prepare(Thermal(4.0), 8)
    # the squeezed tail is long: dim 64 is not enough for mu = 1 + drive
    with pytest.raises(TruncationTooSmall):
        prepare(SqueezedCoherent(1.0, 1.0), 64)
    prepare(SqueezedCoherent(1.0, 1.0), 128)  # passes the budget


def test_prepare_rejects_tiny_dim():
    with pytest.raises(ConfigError):
        prepare(Coherent(0.0), 1)


# ---------------------------------------------------------------------------
# the master-equation right-hand side


def test_rhs_preserves_trace():
    rng = np.random.default_rng(7)
    block = rng.normal(size=(24, 24)) + 1j * rng.normal(size=(24, 24))
    block = block @ block.conj().T
    rho = np.zeros((64, 64), dtype=complex)
    rho[:24, :24] = block / np.trace(block)
    assert abs(np.trace(lindblad_rhs(rho, R_MIX))) < 1e-12


def test_rhs_thermal_fixed_point():
    res = ReservoirParams(N=1.3, M=0.0)
    rho = prepare(Thermal(1.3), 64)
    assert np.linalg.norm(lindblad_rhs(rho, res)) < 1e-12


@pytest.mark.parametrize(
    "res,dim",
    [
        (ReservoirParams(N=1.0, M=0.5), 64),
        (R_MIX, 128),
        # the saturated reservoir's steady state is a pure squeezed vacuum
        # whose far off-diagonal coherences decay slowest, so the residual
        # needs the tallest ladder to clear the bound
        (R_SAT, 160),
    ],
)
def test_rhs_vanishes_on_steady_state(res, dim):
    rho = steady_state(res, dim)
    assert np.linalg.norm(lindblad_rhs(rho, res)) < 1e-8


def test_steady_state_moments():
    for res in (ReservoirParams(N=1.0, M=0.5), R_MIX):
        table = moments_from_rho(steady_state(res, 128))
        assert table.mean_n == pytest.approx(res.N, abs=1e-9)
        assert table.mean_a2 == pytest.approx(res.M, abs=1e-9)
        assert abs(table.mean_a) < 1e-12


# ---------------------------------------------------------------------------
# integration


def test_integrate_time_zero_returns_state():
    rho0 = prepare(Coherent(1.0), 32)
    np.testing.assert_array_equal(integrate(rho0, R_SAT, 0.0), rho0)


def test_integrate_mean_amplitude_decay():
    rho = integrate(prepare(Coherent(1.0), 64), R_SAT, 0.5)
    mean_a = moments_from_rho(rho).mean_a
    assert abs(mean_a - math.exp(-0.5)) < 1e-8


def test_integrate_keeps_state_physical():
    rho = integrate(prepare(Thermal(1.0), 64), R_MIX, 0.5)
    assert np.abs(rho - rho.conj().T).max() < 1e-12
    assert abs(np.trace(rho).real - 1.0) < 1e-6


def test_step_halving_converges():
    rho0 = prepare(Thermal(1.0), 64)
    coarse = moments_from_rho(integrate(rho0, R_MIX, 1.0, dt=1e-3))
    fine = moments_from_rho(integrate(rho0, R_MIX, 1.0, dt=5e-4))
    worst = max(
        abs(coarse[j, k] - fine[j, k]) for j in range(5) for k in range(5 - j)
    )
    assert worst <= 1e-9


def test_oversized_step_trips_trace_monitor():
    rho0 = prepare(Thermal(1.0), 64)
    with pytest.raises(TraceDriftExceeded, match="reduce dt"):
        integrate(rho0, R_MIX, 1.0, dt=5e-3)


def test_evolve_recording_snapshots():
    rho0 = prepare(Coherent(1.0), 48)
    snaps = evolve_recording(rho0, R_SAT, [0.0, 0.2, 0.2, 0.5])
    assert len(snaps) == 4
    np.testing.assert_array_equal(snaps[1], snaps[2])
    np.testing.assert_array_equal(snaps[0], rho0)
    with pytest.raises(ConfigError):
        evolve_recording(rho0, R_SAT, [0.5, 0.2])
    with pytest.raises(ConfigError):
        evolve_recording(rho0, R_SAT, [0.5], dt=0.0)


# ---------------------------------------------------------------------------
# smoothed quasiprobability series


def _q_direct(rho: np.ndarray, z: complex) -> float:
    """Husimi value <z|rho|z>/pi straight from coherent amplitudes —
    independent of the displaced-number series under test."""
    v = coherent_vector(z, rho.shape[0])
    return float(np.real(v.conj() @ rho @ v)) / math.pi


def test_series_at_full_smoothing_is_husimi():
    rho = prepare(PhotonAddedCoherent(1.0), 64)
    for z in (0.0, 0.6 + 0.2j, -1.0j, 1.5):
        assert quasiprob_from_rho(rho, z, 1.0) == pytest.approx(
            _q_direct(rho, z), abs=1e-12
        )


def test_series_convolution_identity():
    # widths add under Gaussian convolution, so smoothing the tau = 3/4
    # series with a width-1/4 kernel must land exactly on the Husimi
    # values; this certifies the series before any test leans on it
    rho = prepare(PhotonAddedCoherent(1.0), 64)
    h = 0.1
    xs = np.arange(-5.0, 7.0 + h / 2, h)
    ys = np.arange(-6.0, 6.0 + h / 2, h)
    r_grid = quasiprob_grid(rho, xs, ys, 0.75)
    gx, gy = np.meshgrid(xs, ys)
    for z0 in (0.3 + 0.2j, 1.0, -0.5j):
        kernel = np.exp(-((gx - z0.real) ** 2 + (gy - z0.imag) ** 2) / 0.25) / (
            math.pi * 0.25
        )
        conv = float((r_grid * kernel).sum()) * h * h
        assert conv == pytest.approx(_q_direct(rho, z0), abs=1e-8)


def test_series_positive_for_classical_state():
    rho = prepare(Thermal(1.0), 64)
    for tau in (0.6, 0.8, 1.0):
        vals = quasiprob_grid(rho, np.linspace(-3, 3, 13), np.linspace(-3, 3, 13), tau)
        assert vals.min() >= 0.0


def test_series_divergence_guard():
    rho = prepare(Thermal(1.0), 64)
    for tau in (0.5, 0.3, 1.2):
        with pytest.raises(SeriesDiverges):
            quasiprob_from_rho(rho, 0.0, tau)
        with pytest.raises(SeriesDiverges):
            quasiprob_grid(rho, np.zeros(1), np.zeros(1), tau)


def test_grid_series_matches_scalar_series():
    rho = prepare(PhotonAddedThermal(1.0), 64)
    xs = np.array([-0.8, 0.0, 1.1])
    ys = np.array([-0.4, 0.7])
    grid = quasiprob_grid(rho, xs, ys, 0.8)
    for iy, y in enumerate(ys):
        for ix, x in enumerate(xs):
            scalar = quasiprob_from_rho(rho, complex(x, y), 0.8)
            assert grid[iy, ix] == pytest.approx(scalar, abs=1e-9)
