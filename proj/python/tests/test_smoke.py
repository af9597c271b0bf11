import math

import pytest

import swarmorbit as so


def test_presets_listed_and_parse():
    names = so.preset_names()
    assert {"fig3_pair", "fig4_mothership", "fig5_counter_rotating"} <= set(names)
    for name in names:
        sc = so.parse_scenario(so.preset_text(name))
        assert sc.name == name
        assert so.parse_scenario(sc.render()) == sc


def test_barrier_values():
    cfg = so.SafetyConfig(r=3.0, d=0.0)
    v = so.pair_view(cfg, (0, 0), (1, 0), (5, 0), (0, 0))
    assert v.h == pytest.approx(-1.0)
    assert so.h_dot(v, 0.0, 0.0) == v.Lf_h
    assert so.virtual_radius(so.SafetyConfig(r=1.0, d=0.5), 4.0) == pytest.approx(2.0)


def test_closed_form_correction_restores_condition():
    cfg = so.SafetyConfig(r=0.5, d=0.5, gamma=1.0, kappa="linear", omega_max=2.0)
    v = so.pair_view(cfg, (0, 0), (1, 0.2), (3, 0.5), (-1, 0))
    u = so.u_safe_pair(v, cfg, 0.0, 0.0)
    assert u >= 0.0 or v.Lg_h_i < 0.0
    assert so.h_dot(v, u, 0.0) + 1.0 * v.h >= -1e-9


def test_invalid_config_raises():
    with pytest.raises(ValueError):
        so.SafetyConfig(r=1.0, d=1.5)
    with pytest.raises(ValueError):
        so.parse_scenario("path: {kind: square}\n")


def test_field_and_angles():
    circle = so.Path.circle((0, 0), 1.0)
    assert so.gvf(circle, 1.0, (2, 0)) == pytest.approx((-12, -4))
    assert so.wrap_angle(3 * math.pi) == pytest.approx(math.pi)


def test_short_pair_run(tmp_path):
    sc = so.load_scenario("preset:fig3_pair", ["run.duration=1"])
    log = so.run(sc, seed=1)
    table = log.robots
    assert table.shape[1] == 7
    assert set(table[:, 1]) == {0.0, 1.0}
    summary = so.summarize(log, sc)
    assert summary["collision_count"] == 0
    assert so.exit_status(log, sc) == 0
    files = log.write_csv(str(tmp_path / "out"))
    assert len(files) == 3
    with open(files[0]) as fh:
        assert fh.readline().strip() == "t,id,x,y,theta,omega,e"
