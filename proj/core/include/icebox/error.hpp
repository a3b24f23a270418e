// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace icebox {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent user input (instances, configs, bit-strings).
class InputError : public Error {
 public:
  using Error::Error;
};

// Valid input but an unusable parameter choice.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Integration left its validity envelope: truncation leak, divergence,
// loss of positivity, boundary leak.
class EvolutionError : public Error {
 public:
  EvolutionError(const std::string& what, double time, double value)
      : Error(what), time_(time), value_(value) {}

  double time() const { return time_; }
  double value() const { return value_; }

 private:
  double time_;
  double value_;
};

// Iterative eigensolver did not reach tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Curve fit did not converge or produced a non-physical result.
class FitError : public Error {
 public:
  using Error::Error;
};

// Relaxation probability is no better than guessing.
class WildGuessError : public Error {
 public:
  using Error::Error;
};

// Emits a warning line on stderr unless warnings are silenced.
void warn(const std::string& message);
void set_warnings_enabled(bool enabled);

}  // namespace icebox
