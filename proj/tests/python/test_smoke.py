"""Smoke tests for the python module: thin checks that the bindings wire
through to the same numerics the C++ suites verify in depth."""

import math

import numpy as np
import pytest

import muhs


@pytest.fixture(scope="module")
def grid():
    return muhs.PeriodicGrid(128)


def test_grid_points(grid):
    x = grid.points()
    assert grid.n == 128
    assert x.shape == (128,)
    assert x[1] == pytest.approx(1.0 / 128)


def test_derivative_of_sine(grid):
    x = grid.points()
    f = muhs.SpectralField.from_values(grid, np.sin(2 * np.pi * x))
    df = muhs.derivative(f, 1)
    expect = 2 * np.pi * np.cos(2 * np.pi * x)
    assert np.max(np.abs(df.values - expect)) < 1e-12


def test_operator_identity(grid):
    x = grid.points()
    rng = np.random.default_rng(7)
    coeffs = rng.standard_normal(8)
    v = sum(c * np.cos(2 * np.pi * (k + 1) * x) for k, c in enumerate(coeffs))
    f = muhs.SpectralField.from_values(grid, v)
    lhs = muhs.apply_pd(f)
    rhs = muhs.derivative(muhs.helmholtz_inverse(f), 1)
    assert np.max(np.abs(lhs.values - rhs.values)) < 1e-12
    assert abs(muhs.mean(lhs)) < 1e-14


def test_norms(grid):
    x = grid.points()
    f = muhs.SpectralField.from_values(grid, np.sin(2 * np.pi * x))
    assert muhs.lp_norm(f, 2.0) == pytest.approx(1 / math.sqrt(2), abs=1e-13)
    assert muhs.lp_norm(f, "inf") == pytest.approx(1.0, abs=1e-13)
    assert muhs.sobolev_norm(f, 1.0) == pytest.approx(
        math.sqrt((1 + 4 * math.pi**2) / 2), abs=1e-12
    )
    c = muhs.SpectralField.constant(grid, 3.0)
    assert muhs.besov_norm(c, 2.0) == pytest.approx(3.0 / 4.0, abs=1e-13)


def test_simulate_conserves(grid):
    x = grid.points()
    u0 = muhs.SpectralField.from_values(grid, np.sin(2 * np.pi * x))
    rho0 = muhs.SpectralField.from_values(grid, np.cos(2 * np.pi * x))
    out = muhs.simulate(u0, rho0, t_end=0.05, dt=1e-4)
    assert out["status"] == "completed"
    energy = out["energy"]
    assert abs(energy[-1] - energy[0]) / energy[0] < 1e-8
    assert out["u_final"].shape == (128,)


def test_flow_suite(grid):
    x = grid.points()
    u0 = muhs.SpectralField.zero(grid)
    rho0 = muhs.SpectralField.constant(grid, 1.0)
    out = muhs.flow_suite(u0, rho0, t_end=0.2)
    assert out["status"] == "completed"
    assert out["monotone"]
    assert out["max_qx_discrepancy"] < 1e-10
    assert out["certificate_applicable"]
    assert out["certificate_min_identity"] == pytest.approx(1.0, abs=1e-10)


def test_picard_suite(grid):
    x = grid.points()
    u0 = muhs.SpectralField.from_values(grid, 0.1 * np.sin(2 * np.pi * x))
    rho0 = muhs.SpectralField.from_values(grid, 0.1 * np.cos(2 * np.pi * x))
    out = muhs.picard_suite(u0, rho0, t_iter=0.25, n_max=6, mesh_samples=32)
    assert out["converged"]
    h = out["h"]
    assert h[-1] < h[0]


def test_execute_config(tmp_path):
    cfg = (
        '{"n":64,"t_end":0.05,"initial":"zero","mode":"direct",'
        f'"output_dir":"{tmp_path}/run"}}'
    )
    out = muhs.execute_config(cfg)
    assert out["status"] == "completed"
    assert out["exit_code"] == 0
    assert (tmp_path / "run" / "report.json").exists()


def test_config_validation():
    with pytest.raises(muhs.ConfigError):
        muhs.execute_config('{"n":100,"t_end":1,"initial":"sine","mode":"direct"}')
