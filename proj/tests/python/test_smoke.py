import math

import pytest

import gts


def test_demo_spec_roundtrip():
    spec = gts.demo_periodic_spec(0)
    text = spec.to_json()
    back = gts.spec_from_json(text)
    assert back.gamma == spec.gamma
    assert back.T == spec.T


def test_classification_and_levels():
    assert gts.classify(0, 0, 0.2, 0.5) == "0i"
    assert gts.classify(0, 0, 1.808, 0.5) == "0e"
    assert gts.classify(1, 1, 1.27, 0.5) == "2"
    assert gts.hamiltonian_level(1.0, 1.0, 0.5) == 0.0
    with pytest.raises(gts.GtsError):
        gts.classify(0, 1, 0.5, 0.5)


def test_periods_agree():
    wq = gts.period_quadrature(0, 0, 1.805, 0.5)
    wr = gts.period_return_map(0, 0, 1.805, 0.5)
    assert 3.81 < wq < 3.94
    assert abs(wq - wr) <= 1e-6 * wq


def test_parametrize_closes():
    cp = gts.parametrize(1, 1, 1.27, 0.5, 256)
    assert cp["C"][0] == 1.27
    assert cp["S"][0] == 1.0
    assert len(cp["phi"]) == 256


def test_class1_region():
    bd, bu = gts.practical_bounds(0.5)
    reg = gts.class1_region(0.5)
    assert reg["b_p"] <= bd < bu <= reg["b_m"]


def test_eleven_roots():
    spec = gts.demo_periodic_spec(0)
    roots = gts.find_roots(spec, battery=False)
    assert len(roots) == 11
    outer = [r for r in roots if r["cls"] == "0e"]
    assert len(outer) == 1
    assert 1.795 < outer[0]["b"] < 1.815


def test_equilibria_values():
    spec = gts.demo_autonomous_spec()
    points = gts.equilibria(spec, 0.05)
    off_axis = sorted(abs(x) for x, y in points if abs(y) > 0.5)
    assert len(off_axis) == 6
    for expect, got in zip([0.182, 0.182, 0.983, 0.983, 1.025, 1.025], off_axis):
        assert abs(expect - got) <= 2e-3


def test_integrate_conserves_energy():
    spec = gts.demo_autonomous_spec()
    tr = gts.integrate(spec, 0.0, 0.0, 1.5, 0.0, 20.0)
    a0 = gts.hamiltonian_level(1.5, 0.0, 0.5)
    drift = max(abs(gts.hamiltonian_level(x, y, 0.5) - a0) for x, y in zip(tr["x"], tr["y"]))
    assert drift < 1e-7
    assert not tr["domain_left"]


def test_portrait_svg():
    spec = gts.demo_autonomous_spec()
    svg = gts.portrait_svg(spec)
    assert svg.startswith("<svg")
    assert "</svg>" in svg
