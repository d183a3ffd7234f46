// Copyright 2026 The trapsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <stdexcept>
#include <string>

namespace trapsim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent user input (bad config line, wrong vector length).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Physically meaningless parameters or a numerical method that could not
/// deliver a result. The CLI maps these to exit code 2.
class PhysicsError : public Error {
 public:
  using Error::Error;
};

class SolverFailure : public PhysicsError {
 public:
  SolverFailure(const std::string& what, double residual)
      : PhysicsError(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Crystal is not stable in the transverse direction (past the zigzag transition).
class InstabilityError : public PhysicsError {
 public:
  InstabilityError(const std::string& what, std::size_t mode)
      : PhysicsError(what), mode_(mode) {}
  std::size_t mode() const noexcept { return mode_; }

 private:
  std::size_t mode_;
};

class ResonanceError : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

class IntegrationError : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

/// Two control branches share (nearly) the same splitting, so the gate
/// cannot select one of them.
class AmbiguityError : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

class ConsistencyError : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

}  // namespace trapsim
