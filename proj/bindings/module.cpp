#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wingwrap/config.hpp"
#include "wingwrap/dynamics.hpp"
#include "wingwrap/errors.hpp"
#include "wingwrap/hold.hpp"
#include "wingwrap/model.hpp"
#include "wingwrap/monte_carlo.hpp"
#include "wingwrap/rng.hpp"
#include "wingwrap/speed_search.hpp"
#include "wingwrap/state.hpp"
#include "wingwrap/trial.hpp"
#include "wingwrap/vehicle_spec.hpp"

namespace py = pybind11;
using namespace wingwrap;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Planar wing-wrapping perch simulator core";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<SimulationError>(m, "SimulationError", PyExc_RuntimeError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::class_<SegmentSpec>(m, "SegmentSpec")
      .def(py::init<>())
      .def_readwrite("length", &SegmentSpec::length)
      .def_readwrite("mass", &SegmentSpec::mass)
      .def_readwrite("half_thickness", &SegmentSpec::half_thickness);

  py::class_<HingeSpec>(m, "HingeSpec")
      .def(py::init<>())
      .def_readwrite("free_stiffness", &HingeSpec::free_stiffness)
      .def_readwrite("free_damping", &HingeSpec::free_damping)
      .def_readwrite("block_stiffness", &HingeSpec::block_stiffness)
      .def_readwrite("max_fold_angle", &HingeSpec::max_fold_angle);

  py::class_<WingSpec>(m, "WingSpec")
      .def(py::init<>())
      .def_readwrite("segments", &WingSpec::segments)
      .def_readwrite("hinges", &WingSpec::hinges)
      .def_readwrite("root_rigid", &WingSpec::root_rigid);

  py::class_<VehicleSpec>(m, "VehicleSpec")
      .def(py::init<>())
      .def_readwrite("fuselage_mass", &VehicleSpec::fuselage_mass)
      .def_readwrite("fuselage_half_width", &VehicleSpec::fuselage_half_width)
      .def_readwrite("left_wing", &VehicleSpec::left_wing)
      .def_readwrite("right_wing", &VehicleSpec::right_wing)
      .def_readwrite("tip_mass_fraction", &VehicleSpec::tip_mass_fraction);

  py::class_<PoleSpec>(m, "PoleSpec")
      .def(py::init<>())
      .def_readwrite("radius", &PoleSpec::radius)
      .def_readwrite("friction_mu", &PoleSpec::friction_mu)
      .def_readwrite("normal_stiffness", &PoleSpec::normal_stiffness)
      .def_readwrite("normal_damping", &PoleSpec::normal_damping);

  py::class_<MaterialParams>(m, "MaterialParams")
      .def(py::init<>())
      .def_readwrite("normal_stiffness", &MaterialParams::normal_stiffness)
      .def_readwrite("normal_damping", &MaterialParams::normal_damping)
      .def_readwrite("friction_mu", &MaterialParams::friction_mu)
      .def_readwrite("slip_regularization_velocity",
                     &MaterialParams::slip_regularization_velocity);

  m.def("uniform_wing", &uniform_wing, py::arg("segment_count"), py::arg("segment"),
        py::arg("hinge"), py::arg("root_rigid") = false);
  m.def("default_vehicle", &default_vehicle, py::arg("tip_mass_fraction") = 0.0);
  m.def("default_pole", &default_pole);
  m.def("default_material", &default_material);
  m.def("material_from_pole", &material_from_pole, py::arg("pole"),
        py::arg("slip_regularization_velocity") = 1.0e-3);
  m.def("with_tip_mass_fraction", &with_tip_mass_fraction, py::arg("base"),
        py::arg("fraction"));
  m.def(
      "validate_spec",
      [](const VehicleSpec& vehicle, const PoleSpec& pole, const MaterialParams& material) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const ValidationIssue& i : validate_spec(vehicle, pole, material)) {
          out.emplace_back(i.path, i.message);
        }
        return out;
      },
      py::arg("vehicle"), py::arg("pole"), py::arg("material"),
      "List of (path, message) bound violations; empty means buildable");

  py::enum_<Side>(m, "Side").value("Left", Side::Left).value("Right", Side::Right);

  py::class_<ArticulatedModel>(m, "ArticulatedModel")
      .def_readonly("spec", &ArticulatedModel::spec)
      .def_readonly("baseline_mass", &ArticulatedModel::baseline_mass)
      .def_readonly("total_mass", &ArticulatedModel::total_mass)
      .def_readonly("tip_mass_per_wing", &ArticulatedModel::tip_mass_per_wing)
      .def_readonly("ndof", &ArticulatedModel::ndof)
      .def("segment_count", &ArticulatedModel::segment_count, py::arg("side"))
      .def("body_count", &ArticulatedModel::body_count)
      .def("body_id", &ArticulatedModel::body_id, py::arg("side"), py::arg("chain_index"))
      .def("joint_dof_count", &ArticulatedModel::joint_dof_count)
      .def("symmetric_layout", &ArticulatedModel::symmetric_layout)
      .def("half_span", &ArticulatedModel::half_span);

  m.def("build_model", &build_model, py::arg("vehicle"));

  py::class_<State>(m, "State")
      .def(py::init<>())
      .def_readwrite("q", &State::q)
      .def_readwrite("v", &State::v)
      .def_readwrite("t", &State::t)
      .def("heading", &State::heading)
      .def("all_finite", &State::all_finite);

  m.def(
      "make_launch_state",
      [](const ArticulatedModel& model, double x, double y, double heading, double speed) {
        return make_launch_state(model, Vec2(x, y), heading, speed);
      },
      py::arg("model"), py::arg("x"), py::arg("y"), py::arg("heading"), py::arg("speed"));
  m.def("fold_angle", &fold_angle, py::arg("model"), py::arg("state"), py::arg("side"),
        py::arg("joint_index"));
  m.def("fold_rate", &fold_rate, py::arg("model"), py::arg("state"), py::arg("side"),
        py::arg("joint_index"));

  m.def("joint_torque", &joint_torque, py::arg("hinge"), py::arg("fold_angle"),
        py::arg("fold_rate"));
  m.def("mass_matrix", &mass_matrix, py::arg("model"), py::arg("state"));
  m.def(
      "forward_dynamics",
      [](const ArticulatedModel& model, const State& s) {
        return forward_dynamics(model, s, ExternalLoads{});
      },
      py::arg("model"), py::arg("state"), "Accelerations with no external loads");
  m.def("total_energy", &total_energy, py::arg("model"), py::arg("state"), py::arg("pole"),
        py::arg("material"));
  m.def("kinetic_energy", &kinetic_energy, py::arg("model"), py::arg("state"));
  m.def("step", &step, py::arg("model"), py::arg("state"), py::arg("dt"), py::arg("pole"),
        py::arg("material"), py::call_guard<py::gil_scoped_release>());

  py::class_<Simulator>(m, "Simulator")
      .def(py::init<const ArticulatedModel&, const PoleSpec&, const MaterialParams&>(),
           py::arg("model"), py::arg("pole"), py::arg("material"))
      .def("step_inplace", &Simulator::step_inplace, py::arg("state"), py::arg("dt"),
           py::call_guard<py::gil_scoped_release>());

  py::class_<SimParams>(m, "SimParams")
      .def(py::init<>())
      .def_readwrite("dt", &SimParams::dt)
      .def_readwrite("settle_kinetic_energy", &SimParams::settle_kinetic_energy)
      .def_readwrite("settle_hold_time", &SimParams::settle_hold_time)
      .def_readwrite("timeout", &SimParams::timeout)
      .def_readwrite("wrap_success_threshold", &SimParams::wrap_success_threshold)
      .def_readwrite("tip_collision_distance", &SimParams::tip_collision_distance)
      .def_readwrite("tip_closing_speed", &SimParams::tip_closing_speed)
      .def_readwrite("overlap_epsilon", &SimParams::overlap_epsilon)
      .def_readwrite("contact_margin", &SimParams::contact_margin)
      .def_readwrite("early_exit", &SimParams::early_exit)
      .def_readwrite("record_trajectory", &SimParams::record_trajectory)
      .def_readwrite("trajectory_stride", &SimParams::trajectory_stride);

  py::class_<TrialConditions>(m, "TrialConditions")
      .def(py::init<>())
      .def_readwrite("impact_speed", &TrialConditions::impact_speed)
      .def_readwrite("lateral_offset", &TrialConditions::lateral_offset)
      .def_readwrite("approach_angle", &TrialConditions::approach_angle)
      .def_readwrite("start_distance", &TrialConditions::start_distance)
      .def_readwrite("seed", &TrialConditions::seed);

  py::enum_<Outcome>(m, "Outcome")
      .value("Miss", Outcome::Miss)
      .value("Bounce", Outcome::Bounce)
      .value("PartialWrap", Outcome::PartialWrap)
      .value("SuccessTipCollide", Outcome::SuccessTipCollide)
      .value("SuccessTipOverlap", Outcome::SuccessTipOverlap);

  m.def("outcome_name", &outcome_name, py::arg("outcome"));
  m.def("is_success", &is_success, py::arg("outcome"));

  py::class_<TrajectoryFrame>(m, "TrajectoryFrame")
      .def_readonly("t", &TrajectoryFrame::t)
      .def_readonly("q", &TrajectoryFrame::q);

  py::class_<TrialResult>(m, "TrialResult")
      .def_readonly("outcome", &TrialResult::outcome)
      .def_readonly("settled", &TrialResult::settled)
      .def_readonly("contact_ever", &TrialResult::contact_ever)
      .def_readonly("tip_contact_event", &TrialResult::tip_contact_event)
      .def_readonly("measured_impact_speed", &TrialResult::measured_impact_speed)
      .def_readonly("wrap_angle_left", &TrialResult::wrap_angle_left)
      .def_readonly("wrap_angle_right", &TrialResult::wrap_angle_right)
      .def_readonly("azimuth_overlap", &TrialResult::azimuth_overlap)
      .def_readonly("settle_time", &TrialResult::settle_time)
      .def_readonly("impact_energy", &TrialResult::impact_energy)
      .def_readonly("settle_energy", &TrialResult::settle_energy)
      .def_readonly("residual_normal_forces", &TrialResult::residual_normal_forces)
      .def_readonly("conditions", &TrialResult::conditions)
      .def_readonly("trajectory", &TrialResult::trajectory);

  m.def("wrap_angle", &wrap_angle, py::arg("model"), py::arg("state"), py::arg("side"),
        py::arg("pole"), py::arg("contact_margin"));
  m.def("run_trial", &run_trial, py::arg("model"), py::arg("pole"), py::arg("material"),
        py::arg("conditions"), py::arg("params"), py::call_guard<py::gil_scoped_release>());

  py::class_<SpeedSearchResult>(m, "SpeedSearchResult")
      .def_readonly("found", &SpeedSearchResult::found)
      .def_readonly("speed", &SpeedSearchResult::speed)
      .def_readonly("non_monotone", &SpeedSearchResult::non_monotone)
      .def_readonly("evaluations", &SpeedSearchResult::evaluations);

  m.def("min_perch_speed",
        static_cast<SpeedSearchResult (*)(const std::function<bool(double)>&, double, double,
                                          double)>(&min_perch_speed),
        py::arg("success"), py::arg("v_lo"), py::arg("v_hi"), py::arg("tol"));
  m.def("min_perch_speed",
        static_cast<SpeedSearchResult (*)(const ArticulatedModel&, const PoleSpec&,
                                          const MaterialParams&, const TrialConditions&,
                                          const SimParams&, double, double, double)>(
            &min_perch_speed),
        py::arg("model"), py::arg("pole"), py::arg("material"), py::arg("nominal"),
        py::arg("params"), py::arg("v_lo"), py::arg("v_hi"), py::arg("tol"),
        py::call_guard<py::gil_scoped_release>());

  py::class_<ConditionDistribution>(m, "ConditionDistribution")
      .def(py::init<>())
      .def_readwrite("speed_lo", &ConditionDistribution::speed_lo)
      .def_readwrite("speed_hi", &ConditionDistribution::speed_hi)
      .def_readwrite("lateral_offset_max", &ConditionDistribution::lateral_offset_max)
      .def_readwrite("approach_angle_max", &ConditionDistribution::approach_angle_max)
      .def_readwrite("start_distance", &ConditionDistribution::start_distance);

  m.def("sample_conditions", &sample_conditions, py::arg("dist"), py::arg("seed"));

  py::class_<RateEstimate>(m, "RateEstimate")
      .def_readonly("n", &RateEstimate::n)
      .def_readonly("successes", &RateEstimate::successes)
      .def_readonly("rate", &RateEstimate::rate)
      .def_readonly("ci_lo", &RateEstimate::ci_lo)
      .def_readonly("ci_hi", &RateEstimate::ci_hi);

  m.def("wilson_interval", &wilson_interval, py::arg("successes"), py::arg("n"));
  m.def("success_rate",
        static_cast<RateEstimate (*)(const std::function<bool(int, std::uint64_t)>&, int,
                                     std::uint64_t)>(&success_rate),
        py::arg("trial"), py::arg("n"), py::arg("master_seed"));
  m.def("success_rate",
        static_cast<RateEstimate (*)(const ArticulatedModel&, const PoleSpec&,
                                     const MaterialParams&, const ConditionDistribution&, int,
                                     std::uint64_t, const SimParams&)>(&success_rate),
        py::arg("model"), py::arg("pole"), py::arg("material"), py::arg("dist"), py::arg("n"),
        py::arg("master_seed"), py::arg("params"),
        py::call_guard<py::gil_scoped_release>());
  m.def("run_trials", &run_trials, py::arg("model"), py::arg("pole"), py::arg("material"),
        py::arg("dist"), py::arg("n"), py::arg("master_seed"), py::arg("params"),
        py::call_guard<py::gil_scoped_release>());

  py::class_<SweepPlan>(m, "SweepPlan")
      .def(py::init<>())
      .def_readwrite("fractions", &SweepPlan::fractions)
      .def_readwrite("trials_per_cell", &SweepPlan::trials_per_cell)
      .def_readwrite("distribution", &SweepPlan::distribution)
      .def_readwrite("min_speed_lo", &SweepPlan::min_speed_lo)
      .def_readwrite("min_speed_hi", &SweepPlan::min_speed_hi)
      .def_readwrite("min_speed_tol", &SweepPlan::min_speed_tol);

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("tip_mass_fraction", &SweepRow::tip_mass_fraction)
      .def_readonly("n_trials", &SweepRow::n_trials)
      .def_readonly("successes", &SweepRow::successes)
      .def_readonly("success_rate", &SweepRow::success_rate)
      .def_readonly("ci_lo", &SweepRow::ci_lo)
      .def_readonly("ci_hi", &SweepRow::ci_hi)
      .def_readonly("min_speed_found", &SweepRow::min_speed_found)
      .def_readonly("min_speed_nominal", &SweepRow::min_speed_nominal)
      .def_readonly("min_speed_empirical", &SweepRow::min_speed_empirical)
      .def_readonly("overlap_share", &SweepRow::overlap_share)
      .def_readonly("non_monotone", &SweepRow::non_monotone);

  py::class_<SweepReport>(m, "SweepReport")
      .def_readonly("rows", &SweepReport::rows)
      .def_readonly("cell_trials", &SweepReport::cell_trials);

  m.def("mass_sweep", &mass_sweep, py::arg("vehicle"), py::arg("pole"), py::arg("material"),
        py::arg("plan"), py::arg("params"), py::arg("master_seed"),
        py::call_guard<py::gil_scoped_release>());

  m.attr("STANDARD_GRAVITY") = kStandardGravity;

  py::class_<GripState>(m, "GripState")
      .def(py::init<>())
      .def_readwrite("normal_forces", &GripState::normal_forces)
      .def_readwrite("total_wrap_angle", &GripState::total_wrap_angle)
      .def_readwrite("friction_mu", &GripState::friction_mu)
      .def_readwrite("vehicle_mass", &GripState::vehicle_mass);

  py::class_<HoldReport>(m, "HoldReport")
      .def_readonly("capacity", &HoldReport::capacity)
      .def_readonly("required", &HoldReport::required)
      .def_readonly("holds", &HoldReport::holds)
      .def_readonly("margin", &HoldReport::margin);

  m.def("required_normal_force", &required_normal_force, py::arg("vehicle_mass"),
        py::arg("friction_mu"));
  m.def("capstan_tension_ratio", &capstan_tension_ratio, py::arg("theta"),
        py::arg("friction_mu"));
  m.def("slide_check", &slide_check, py::arg("grip"));

  m.def("derive_seed", &derive_seed, py::arg("master_seed"), py::arg("index"));

  m.def("config_from_json", &config_from_json, py::arg("text"),
        "Parse a strict experiment config; unknown keys are errors");
  m.def("config_to_json",
        [](const std::string& text) { return config_to_json(config_from_json(text)); },
        py::arg("text"), "Canonical effective-config serialization of a config document");
  m.def("config_hash_hex",
        [](const std::string& text) { return config_hash_hex(config_from_json(text)); },
        py::arg("text"));

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def_readonly("master_seed", &ExperimentConfig::master_seed)
      .def_readonly("output_dir", &ExperimentConfig::output_dir)
      .def_readonly("tip_mass_fraction", &ExperimentConfig::tip_mass_fraction)
      .def_readonly("pole", &ExperimentConfig::pole)
      .def_readonly("sim", &ExperimentConfig::sim)
      .def_readonly("trial", &ExperimentConfig::trial)
      .def("make_vehicle", &ExperimentConfig::make_vehicle)
      .def("make_material", &ExperimentConfig::make_material);
}
