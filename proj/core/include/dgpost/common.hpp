// Copyright 2026 The dgpost Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DGPOST_COMMON_HPP_
#define DGPOST_COMMON_HPP_

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace dgpost {

// Points and vectors are always stored with two components. One-dimensional
// meshes use the first component only and keep the second at zero.
using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Raised for malformed input: empty meshes, bad coordinates, wrong sizes.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a valid request falls outside what is implemented,
/// e.g. SIAC filtering on a non-uniform mesh.
class Unsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Linear solver failure. Carries the relative residual reached, if any.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

}  // namespace dgpost

#endif  // DGPOST_COMMON_HPP_
