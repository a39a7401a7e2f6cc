#pragma once

#include <stdexcept>
#include <string>

namespace wingwrap {

/// A vehicle/pole/material description violates a documented bound.
/// what() carries the joined field-path messages from validate_spec.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// The integrator produced a non-finite state or an impossible internal
/// condition (e.g. a non-SPD reduced mass matrix for a valid model).
class SimulationError : public std::runtime_error {
 public:
  explicit SimulationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Config file problems: unparseable text, unknown keys, wrong types.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Filesystem failures while reading configs or writing report files.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace wingwrap
