"""Smoke tests of the Python bindings: the main operations round-trip."""

import math

import pytest

import fdtdlab as fl


def test_cfl_and_solver():
    grid = fl.GridSpec.uniform(3, 6e-3)
    dt22 = fl.cfl_max_dt(fl.Scheme.FDTD22, grid)
    dt24 = fl.cfl_max_dt(fl.Scheme.FDTD24, grid)
    assert dt22 == pytest.approx(6e-3 / (math.sqrt(3.0) * fl.C0), rel=1e-12)
    assert dt24 == pytest.approx(dt22 * 6 / 7, rel=1e-12)

    wave = fl.WaveSpec.from_frequency(5e9, grid)
    pt = fl.solve_knum(fl.Scheme.FDTD22, grid, wave, 0.5,
                       fl.PropagationAngle(math.pi / 3, math.pi / 5))
    assert pt.k_num >= pt.k_exact
    assert 0.9 < pt.vp_ratio <= 1.0


def test_magic_time_step():
    grid = fl.GridSpec.uniform(1, 5e-2)
    wave = fl.WaveSpec.from_cells_per_wavelength(10.0, grid)
    pt = fl.solve_knum(fl.Scheme.FDTD22, grid, wave, 1.0,
                       fl.PropagationAngle.axis())
    assert pt.nde < 1e-12


def test_no_real_root_raises():
    grid = fl.GridSpec.uniform(1, 5e-2)
    wave = fl.WaveSpec.from_cells_per_wavelength(2.05, grid)
    with pytest.raises(fl.NoRealRootError):
        fl.solve_knum(fl.Scheme.FDTD22, grid, wave, 0.01,
                      fl.PropagationAngle.axis())


def test_scan_and_optimum():
    grid = fl.GridSpec.uniform(3, 6e-3)
    wave = fl.WaveSpec.from_frequency(5e9, grid)
    scan = fl.scan_angles(fl.Scheme.FDTD22, grid, wave, 1.0, 7, 13)
    assert scan.failed == 0
    assert len(scan.points) == 7 * 13
    assert all(p.point.vp_ratio <= 1.0 + 1e-10 for p in scan.points)

    res = fl.optimal_courant_24(fl.Scheme.FDTD24, grid, wave, 7, 13, 1e-3)
    assert 0.0 < res.s_opt < 1.0

    with pytest.raises(ValueError):
        fl.optimal_courant_24(fl.Scheme.FDTD22, grid, wave, 7, 13, 1e-3)


def test_q_and_p_factors():
    grid = fl.GridSpec.uniform(3, 6e-3)
    wave = fl.WaveSpec.from_cells_per_wavelength(10.0, grid)
    assert fl.q_factor(wave, 1.0) < 0.0
    p = fl.p_factor(grid, wave, fl.PropagationAngle(math.pi / 2, math.pi / 4), 1.0)
    assert p > 0.0


def test_resonances_and_spectrum():
    f = fl.analytic_resonance([1.0, 2.0, 0.0], 2, fl.ModeFamily.TM,
                              fl.ModeIndices(1, 1))
    assert f == pytest.approx(fl.C0 / 2 * math.sqrt(1.25), rel=1e-12)

    dt = 1e-3
    series = [math.sin(2 * math.pi * 50.0 * i * dt) for i in range(1000)]
    spec = fl.spectrum(series, dt)
    peaks = fl.find_peaks(spec, 1, 10.0)
    assert peaks.freqs_hz[0] == pytest.approx(50.0, abs=0.5)


def test_1d_propagation_experiment():
    rows = fl.exp_1d_propagation(fl.Scheme.FDTD22, [0.5, 1.0])
    assert rows[0].l2 > rows[1].l2
    assert rows[1].linf < 1e-10

    wf = fl.run_1d_waveform(fl.Scheme.FDTD24, 0.2)
    assert len(wf.t) == len(wf.numeric) == len(wf.analytic)
    assert wf.l2 < 0.01


def test_mode_listing():
    tm = fl.lowest_nondegenerate_modes_2d(fl.ModeFamily.TM, 1.0, 2.0, 3)
    assert [(m.mode.m, m.mode.n) for m in tm] == [(1, 1), (1, 2), (1, 3)]
    groups = fl.lowest_mode_groups_3d([1.0, 1.0, 1.0], 3)
    assert groups[0].degeneracy == 3


def test_dispersion_map_rows():
    grid = fl.GridSpec.uniform(3, 6e-3)
    wave = fl.WaveSpec.from_frequency(5e9, grid)
    rows = fl.dispersion_map(fl.Scheme.FDTD24, grid, wave, [0.5],
                             theta_fixed_rad=math.pi / 2, n_phi=21)
    assert len(rows) == 21
    assert all(r.status == fl.SolveStatus.OK for r in rows)
