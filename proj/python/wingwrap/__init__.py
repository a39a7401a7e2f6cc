"""Planar wing-wrapping perch simulator."""

from wingwrap._core import (
    ArticulatedModel,
    ConditionDistribution,
    ConfigError,
    ExperimentConfig,
    GripState,
    HingeSpec,
    HoldReport,
    IoError,
    MaterialParams,
    Outcome,
    PoleSpec,
    RateEstimate,
    SegmentSpec,
    Side,
    SimParams,
    SimulationError,
    Simulator,
    SpeedSearchResult,
    State,
    SweepPlan,
    SweepReport,
    SweepRow,
    TrajectoryFrame,
    TrialConditions,
    TrialResult,
    ValidationError,
    VehicleSpec,
    WingSpec,
    STANDARD_GRAVITY,
    build_model,
    capstan_tension_ratio,
    config_from_json,
    config_hash_hex,
    config_to_json,
    default_material,
    default_pole,
    default_vehicle,
    derive_seed,
    fold_angle,
    fold_rate,
    forward_dynamics,
    is_success,
    joint_torque,
    kinetic_energy,
    make_launch_state,
    mass_matrix,
    mass_sweep,
    material_from_pole,
    min_perch_speed,
    outcome_name,
    required_normal_force,
    run_trial,
    run_trials,
    sample_conditions,
    slide_check,
    step,
    success_rate,
    total_energy,
    uniform_wing,
    validate_spec,
    wilson_interval,
    with_tip_mass_fraction,
    wrap_angle,
)

__all__ = [
    "ArticulatedModel",
    "ConditionDistribution",
    "ConfigError",
    "ExperimentConfig",
    "GripState",
    "HingeSpec",
    "HoldReport",
    "IoError",
    "MaterialParams",
    "Outcome",
    "PoleSpec",
    "RateEstimate",
    "SegmentSpec",
    "Side",
    "SimParams",
    "SimulationError",
    "Simulator",
    "SpeedSearchResult",
    "State",
    "SweepPlan",
    "SweepReport",
    "SweepRow",
    "TrajectoryFrame",
    "TrialConditions",
    "TrialResult",
    "ValidationError",
    "VehicleSpec",
    "WingSpec",
    "STANDARD_GRAVITY",
    "build_model",
    "capstan_tension_ratio",
    "config_from_json",
    "config_hash_hex",
    "config_to_json",
    "default_material",
    "default_pole",
    "default_vehicle",
    "derive_seed",
    "fold_angle",
    "fold_rate",
    "forward_dynamics",
    "is_success",
    "joint_torque",
    "kinetic_energy",
    "make_launch_state",
    "mass_matrix",
    "mass_sweep",
    "material_from_pole",
    "min_perch_speed",
    "outcome_name",
    "required_normal_force",
    "run_trial",
    "run_trials",
    "sample_conditions",
    "slide_check",
    "step",
    "success_rate",
    "total_energy",
    "uniform_wing",
    "validate_spec",
    "wilson_interval",
    "with_tip_mass_fraction",
    "wrap_angle",
]
