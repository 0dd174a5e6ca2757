"""Smoke tests for the python bindings."""

import json

import pytest

import crflat


def test_series_ring_identity():
    one = crflat.Series.constant(1.0, 4)
    z1 = crflat.Series.variable(crflat.Var.z1, 4)
    prod = (one + z1) * (one - z1)
    expect = one - z1 * z1
    assert prod.approx_equal(expect)
    assert prod.order == 4


def test_series_json_round_trip():
    s = crflat.Series({(1, 1, 0, 0): 1.0, (0, 0, 1, 1): 2.5 + 0.5j}, 6)
    text = s.to_json()
    parsed = json.loads(text)
    assert parsed["format"] == "crflat-series-v1"
    back = crflat.Series.from_json(text)
    assert back.max_coeff_distance(s) == 0.0
    assert back.to_json() == text


def test_mtilde0_is_cr_flat():
    germ = crflat.mtilde0(8)
    report = crflat.full_report(germ)
    flags = report.flags
    assert flags["cr_flat_candidate"]["value"]
    assert abs(report.S0 - 1.0) < 1e-12
    assert report.J is not None and report.J.max_abs_coeff() <= 1e-9


def test_construct_matches_doubled_model():
    germ = crflat.construct_germ({1: 1.0}, {}, 10)
    doubled = 2.0 * crflat.mtilde0(10).F
    assert germ.F.max_coeff_distance(doubled, 10) <= 1e-10


def test_dbar_solver_residual():
    data = crflat.build_model_data({1: 1.0}, {0: 1.0}, 10)
    residual = crflat.dbar_residual(data.r, data.u)
    assert residual.max_abs_coeff() <= 1e-12


def test_degenerate_germ_flags():
    z1 = crflat.Series.variable(crflat.Var.z1, 10)
    z1b = crflat.Series.variable(crflat.Var.z1b, 10)
    z2 = crflat.Series.variable(crflat.Var.z2, 10)
    z2b = crflat.Series.variable(crflat.Var.z2b, 10)
    quadric = crflat.HypersurfaceGerm((z1 * z1b + z2 * z2b).truncated(8))
    report = crflat.full_report(quadric)
    assert not report.flags["levi_rank_one"]["value"]

    with pytest.raises(crflat.CrflatError):
        crflat.HypersurfaceGerm(z2.truncated(8))  # not real


def test_fd_oracle():
    F = crflat.mtilde0(12).F
    assert crflat.fd_residual(F, (1, 1, 0, 0), 0.3, 16) <= 1e-5
