import math

import numpy as np
import pytest

import wingwrap as ww


def test_model_masses():
    model = ww.build_model(ww.default_vehicle())
    assert model.baseline_mass == pytest.approx(0.2 + 8 * 0.02)
    assert model.total_mass == model.baseline_mass
    heavy = ww.build_model(ww.default_vehicle(0.25))
    assert heavy.total_mass == pytest.approx(0.45)
    assert heavy.tip_mass_per_wing == pytest.approx(0.045)


def test_validation_raises():
    vehicle = ww.default_vehicle()
    vehicle.fuselage_mass = -1.0
    with pytest.raises(ValueError):
        ww.build_model(vehicle)
    issues = ww.validate_spec(vehicle, ww.default_pole(), ww.default_material())
    assert any("fuselage_mass" in path for path, _ in issues)


def test_mass_matrix_spd():
    model = ww.build_model(ww.default_vehicle())
    s = ww.make_launch_state(model, -0.8, 0.0, 0.0, 2.5)
    M = ww.mass_matrix(model, s)
    assert M.shape == (model.ndof, model.ndof)
    assert np.allclose(M, M.T)
    assert np.all(np.linalg.eigvalsh(M) > 0)


def test_free_flight_is_straight():
    model = ww.build_model(ww.default_vehicle())
    pole = ww.default_pole()
    mat = ww.default_material()
    s = ww.make_launch_state(model, -0.8, 0.0, 0.0, 2.5)
    sim = ww.Simulator(model, pole, mat)
    for _ in range(100):
        sim.step_inplace(s, 1e-4)
    assert s.q[0] == pytest.approx(-0.8 + 2.5 * 0.01, abs=1e-12)
    assert s.q[1] == pytest.approx(0.0, abs=1e-12)
    assert ww.fold_angle(model, s, ww.Side.Left, 1) == 0.0


def test_hold_closed_forms():
    assert ww.required_normal_force(0.36, 0.6) == pytest.approx(
        0.36 * ww.STANDARD_GRAVITY / 0.6, rel=1e-12
    )
    assert ww.capstan_tension_ratio(2 * math.pi, 0.5) == pytest.approx(
        math.exp(math.pi), rel=1e-12
    )
    grip = ww.GripState()
    grip.normal_forces = [2.0, 3.0]
    grip.friction_mu = 0.6
    grip.vehicle_mass = 0.36
    report = ww.slide_check(grip)
    assert report.capacity == pytest.approx(3.0)
    assert not report.holds  # 3.0 N of grip vs 3.53 N of weight
    grip.normal_forces = [4.0, 3.0]
    assert ww.slide_check(grip).holds


def test_seed_determinism():
    dist = ww.ConditionDistribution()
    a = ww.sample_conditions(dist, ww.derive_seed(7, 3))
    b = ww.sample_conditions(dist, ww.derive_seed(7, 3))
    assert a.impact_speed == b.impact_speed
    assert a.lateral_offset == b.lateral_offset
    assert a.approach_angle == b.approach_angle
    c = ww.sample_conditions(dist, ww.derive_seed(7, 4))
    assert c.impact_speed != a.impact_speed


def test_min_perch_speed_stub():
    r = ww.min_perch_speed(lambda v: v >= 2.6, 1.0, 5.0, 0.05)
    assert r.found
    assert 2.6 <= r.speed <= 2.65
    none = ww.min_perch_speed(lambda v: False, 1.0, 5.0, 0.05)
    assert not none.found


def test_config_round_trip():
    text = '{"master_seed": 5, "pole": {"radius": 0.07}}'
    cfg = ww.config_from_json(text)
    assert cfg.master_seed == 5
    assert cfg.pole.radius == pytest.approx(0.07)
    assert ww.config_hash_hex(text) == ww.config_hash_hex(ww.config_to_json(text))
    with pytest.raises(ValueError):
        ww.config_from_json('{"master_seed": 5, "polee": {}}')


def test_nominal_trial_wraps():
    model = ww.build_model(ww.default_vehicle(0.25))
    result = ww.run_trial(
        model, ww.default_pole(), ww.default_material(), ww.TrialConditions(), ww.SimParams()
    )
    assert result.contact_ever
    assert result.measured_impact_speed == pytest.approx(2.5, rel=0.05)
    assert ww.is_success(result.outcome)
    assert result.outcome == ww.Outcome.SuccessTipCollide  # symmetric approach
    assert result.wrap_angle_left >= 2.0
    assert result.wrap_angle_right >= 2.0
    assert result.settled
