#include "wingwrap/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "wingwrap/checksum.hpp"
#include "wingwrap/errors.hpp"

namespace wingwrap {

namespace {

using nlohmann::json;

/// Strict object reader: every accessed key is remembered, finish() rejects
/// whatever was not accessed, so typos fail loudly instead of silently
/// falling back to defaults.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_ + " must be a JSON object");
  }

  double number(const char* key, double fallback) {
    const json* v = take(key);
    if (!v) return fallback;
    if (!v->is_number()) throw ConfigError(member(key) + " must be a number");
    return v->get<double>();
  }

  int integer(const char* key, int fallback) {
    const json* v = take(key);
    if (!v) return fallback;
    if (!v->is_number_integer()) throw ConfigError(member(key) + " must be an integer");
    return v->get<int>();
  }

  std::uint64_t seed_required(const char* key) {
    const json* v = take(key);
    if (!v) throw ConfigError(member(key) + " is required (no implicit random seed)");
    if (!v->is_number_integer() || (v->is_number_integer() && !v->is_number_unsigned() &&
                                    v->get<std::int64_t>() < 0)) {
      throw ConfigError(member(key) + " must be a non-negative integer");
    }
    return v->get<std::uint64_t>();
  }

  bool boolean(const char* key, bool fallback) {
    const json* v = take(key);
    if (!v) return fallback;
    if (!v->is_boolean()) throw ConfigError(member(key) + " must be a boolean");
    return v->get<bool>();
  }

  std::string text(const char* key, const std::string& fallback) {
    const json* v = take(key);
    if (!v) return fallback;
    if (!v->is_string()) throw ConfigError(member(key) + " must be a string");
    return v->get<std::string>();
  }

  std::vector<double> number_array(const char* key, const std::vector<double>& fallback) {
    const json* v = take(key);
    if (!v) return fallback;
    if (!v->is_array()) throw ConfigError(member(key) + " must be an array of numbers");
    std::vector<double> out;
    for (const json& e : *v) {
      if (!e.is_number()) throw ConfigError(member(key) + " must be an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  const json* object(const char* key) {
    const json* v = take(key);
    if (v && !v->is_object()) throw ConfigError(member(key) + " must be a JSON object");
    return v;
  }

  void finish() const {
    for (const auto& item : j_.items()) {
      if (!seen_.count(item.key())) {
        throw ConfigError("unknown key '" + member(item.key().c_str()) + "'");
      }
    }
  }

 private:
  const json* take(const char* key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  std::string member(const char* key) const { return path_ + "." + key; }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void check(std::vector<ValidationIssue>* issues, bool ok, const char* path, const char* rule) {
  if (!ok) issues->push_back({path, rule});
}

}  // namespace

VehicleSpec ExperimentConfig::make_vehicle() const {
  VehicleSpec v;
  v.fuselage_mass = fuselage_mass;
  v.fuselage_half_width = fuselage_half_width;
  v.tip_mass_fraction = tip_mass_fraction;
  const WingSpec w = uniform_wing(wing.segment_count, wing.segment, wing.hinge, wing.root_rigid);
  v.left_wing = w;
  v.right_wing = w;
  return v;
}

MaterialParams ExperimentConfig::make_material() const {
  return material_from_pole(pole, slip_regularization_velocity);
}

ExperimentConfig default_config() { return ExperimentConfig{}; }

ExperimentConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }

  ExperimentConfig c;
  Section root(j, "config");
  c.master_seed = root.seed_required("master_seed");
  c.output_dir = root.text("output_dir", c.output_dir);

  if (const json* jv = root.object("vehicle")) {
    Section v(*jv, "vehicle");
    c.fuselage_mass = v.number("fuselage_mass", c.fuselage_mass);
    c.fuselage_half_width = v.number("fuselage_half_width", c.fuselage_half_width);
    c.tip_mass_fraction = v.number("tip_mass_fraction", c.tip_mass_fraction);
    if (const json* jw = v.object("wing")) {
      Section w(*jw, "vehicle.wing");
      c.wing.segment_count = w.integer("segment_count", c.wing.segment_count);
      c.wing.segment.length = w.number("segment_length", c.wing.segment.length);
      c.wing.segment.mass = w.number("segment_mass", c.wing.segment.mass);
      c.wing.segment.half_thickness =
          w.number("segment_half_thickness", c.wing.segment.half_thickness);
      c.wing.root_rigid = w.boolean("root_rigid", c.wing.root_rigid);
      if (const json* jh = w.object("hinge")) {
        Section h(*jh, "vehicle.wing.hinge");
        c.wing.hinge.free_stiffness = h.number("free_stiffness", c.wing.hinge.free_stiffness);
        c.wing.hinge.free_damping = h.number("free_damping", c.wing.hinge.free_damping);
        c.wing.hinge.block_stiffness =
            h.number("block_stiffness", c.wing.hinge.block_stiffness);
        c.wing.hinge.max_fold_angle = h.number("max_fold_angle", c.wing.hinge.max_fold_angle);
        h.finish();
      }
      w.finish();
    }
    v.finish();
  }

  if (const json* jp = root.object("pole")) {
    Section p(*jp, "pole");
    c.pole.radius = p.number("radius", c.pole.radius);
    c.pole.friction_mu = p.number("friction_mu", c.pole.friction_mu);
    c.pole.normal_stiffness = p.number("normal_stiffness", c.pole.normal_stiffness);
    c.pole.normal_damping = p.number("normal_damping", c.pole.normal_damping);
    c.slip_regularization_velocity =
        p.number("slip_regularization_velocity", c.slip_regularization_velocity);
    p.finish();
  }

  if (const json* js = root.object("sim")) {
    Section s(*js, "sim");
    c.sim.dt = s.number("dt", c.sim.dt);
    c.sim.settle_kinetic_energy = s.number("settle_kinetic_energy", c.sim.settle_kinetic_energy);
    c.sim.settle_hold_time = s.number("settle_hold_time", c.sim.settle_hold_time);
    c.sim.timeout = s.number("timeout", c.sim.timeout);
    c.sim.wrap_success_threshold =
        s.number("wrap_success_threshold", c.sim.wrap_success_threshold);
    c.sim.tip_collision_distance =
        s.number("tip_collision_distance", c.sim.tip_collision_distance);
    c.sim.tip_closing_speed = s.number("tip_closing_speed", c.sim.tip_closing_speed);
    c.sim.overlap_epsilon = s.number("overlap_epsilon", c.sim.overlap_epsilon);
    c.sim.contact_margin = s.number("contact_margin", c.sim.contact_margin);
    c.sim.early_exit = s.boolean("early_exit", c.sim.early_exit);
    c.sim.trajectory_stride = s.integer("trajectory_stride", c.sim.trajectory_stride);
    s.finish();
  }

  if (const json* jt = root.object("trial")) {
    Section t(*jt, "trial");
    c.trial.impact_speed = t.number("impact_speed", c.trial.impact_speed);
    c.trial.lateral_offset = t.number("lateral_offset", c.trial.lateral_offset);
    c.trial.approach_angle = t.number("approach_angle", c.trial.approach_angle);
    c.trial.start_distance = t.number("start_distance", c.trial.start_distance);
    t.finish();
  }

  if (const json* jq = root.object("plan")) {
    Section q(*jq, "plan");
    c.plan.fractions = q.number_array("fractions", c.plan.fractions);
    c.plan.trials_per_cell = q.integer("trials_per_cell", c.plan.trials_per_cell);
    c.plan.distribution.speed_lo = q.number("speed_lo", c.plan.distribution.speed_lo);
    c.plan.distribution.speed_hi = q.number("speed_hi", c.plan.distribution.speed_hi);
    c.plan.distribution.lateral_offset_max =
        q.number("lateral_offset_max", c.plan.distribution.lateral_offset_max);
    c.plan.distribution.approach_angle_max =
        q.number("approach_angle_max", c.plan.distribution.approach_angle_max);
    c.plan.min_speed_lo = q.number("min_speed_lo", c.plan.min_speed_lo);
    c.plan.min_speed_hi = q.number("min_speed_hi", c.plan.min_speed_hi);
    c.plan.min_speed_tol = q.number("min_speed_tol", c.plan.min_speed_tol);
    q.finish();
  }

  root.finish();
  c.plan.distribution.start_distance = c.trial.start_distance;
  return c;
}

std::string config_to_json(const ExperimentConfig& c) {
  json j;
  j["master_seed"] = c.master_seed;
  j["output_dir"] = c.output_dir;

  json& v = j["vehicle"];
  v["fuselage_mass"] = c.fuselage_mass;
  v["fuselage_half_width"] = c.fuselage_half_width;
  v["tip_mass_fraction"] = c.tip_mass_fraction;
  json& w = v["wing"];
  w["segment_count"] = c.wing.segment_count;
  w["segment_length"] = c.wing.segment.length;
  w["segment_mass"] = c.wing.segment.mass;
  w["segment_half_thickness"] = c.wing.segment.half_thickness;
  w["root_rigid"] = c.wing.root_rigid;
  json& h = w["hinge"];
  h["free_stiffness"] = c.wing.hinge.free_stiffness;
  h["free_damping"] = c.wing.hinge.free_damping;
  h["block_stiffness"] = c.wing.hinge.block_stiffness;
  h["max_fold_angle"] = c.wing.hinge.max_fold_angle;

  json& p = j["pole"];
  p["radius"] = c.pole.radius;
  p["friction_mu"] = c.pole.friction_mu;
  p["normal_stiffness"] = c.pole.normal_stiffness;
  p["normal_damping"] = c.pole.normal_damping;
  p["slip_regularization_velocity"] = c.slip_regularization_velocity;

  json& s = j["sim"];
  s["dt"] = c.sim.dt;
  s["settle_kinetic_energy"] = c.sim.settle_kinetic_energy;
  s["settle_hold_time"] = c.sim.settle_hold_time;
  s["timeout"] = c.sim.timeout;
  s["wrap_success_threshold"] = c.sim.wrap_success_threshold;
  s["tip_collision_distance"] = c.sim.tip_collision_distance;
  s["tip_closing_speed"] = c.sim.tip_closing_speed;
  s["overlap_epsilon"] = c.sim.overlap_epsilon;
  s["contact_margin"] = c.sim.contact_margin;
  s["early_exit"] = c.sim.early_exit;
  s["trajectory_stride"] = c.sim.trajectory_stride;

  json& t = j["trial"];
  t["impact_speed"] = c.trial.impact_speed;
  t["lateral_offset"] = c.trial.lateral_offset;
  t["approach_angle"] = c.trial.approach_angle;
  t["start_distance"] = c.trial.start_distance;

  json& q = j["plan"];
  q["fractions"] = c.plan.fractions;
  q["trials_per_cell"] = c.plan.trials_per_cell;
  q["speed_lo"] = c.plan.distribution.speed_lo;
  q["speed_hi"] = c.plan.distribution.speed_hi;
  q["lateral_offset_max"] = c.plan.distribution.lateral_offset_max;
  q["approach_angle_max"] = c.plan.distribution.approach_angle_max;
  q["min_speed_lo"] = c.plan.min_speed_lo;
  q["min_speed_hi"] = c.plan.min_speed_hi;
  q["min_speed_tol"] = c.plan.min_speed_tol;

  return j.dump(2) + "\n";
}

std::string config_hash_hex(const ExperimentConfig& c) {
  return fnv1a64_hex(config_to_json(c));
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return config_from_json(buf.str());
}

std::vector<ValidationIssue> validate_config(const ExperimentConfig& c) {
  std::vector<ValidationIssue> issues =
      validate_spec(c.make_vehicle(), c.pole, c.make_material());
  for (const ValidationIssue& i : validate_sim_params(c.sim)) issues.push_back(i);

  check(&issues, c.trial.impact_speed > 0.0, "trial.impact_speed", "must be > 0");
  check(&issues, c.trial.start_distance > 0.0, "trial.start_distance", "must be > 0");
  check(&issues, !c.plan.fractions.empty(), "plan.fractions", "must be non-empty");
  for (double f : c.plan.fractions) {
    if (!(f >= 0.0 && f < 1.0)) {
      issues.push_back({"plan.fractions", "entries must lie in [0, 1)"});
      break;
    }
  }
  check(&issues, c.plan.trials_per_cell >= 1, "plan.trials_per_cell", "must be >= 1");
  const ConditionDistribution& d = c.plan.distribution;
  check(&issues, d.speed_lo > 0.0 && d.speed_hi >= d.speed_lo, "plan.speed_lo",
        "requires 0 < speed_lo <= speed_hi");
  check(&issues, d.lateral_offset_max >= 0.0, "plan.lateral_offset_max", "must be >= 0");
  check(&issues, d.approach_angle_max >= 0.0, "plan.approach_angle_max", "must be >= 0");
  check(&issues, c.plan.min_speed_lo > 0.0 && c.plan.min_speed_hi > c.plan.min_speed_lo,
        "plan.min_speed_lo", "requires 0 < min_speed_lo < min_speed_hi");
  check(&issues, c.plan.min_speed_tol > 0.0, "plan.min_speed_tol", "must be > 0");
  return issues;
}

}  // namespace wingwrap
