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

#ifndef DGPOST_ORTHO_HPP_
#define DGPOST_ORTHO_HPP_

#include <memory>

#include "dgpost/ipdg.hpp"

namespace dgpost {

/// Discrete w_h with A(w_h, phi) = A(w, phi) for all phi in the space.
/// `solver` must hold the factorization of `form`'s matrix.
std::shared_ptr<DiscreteField> ritz_project(const Field& w, const IpdgForm& form,
                                            const LinearSolver& solver);

/// u** = u* - R u* + u_h.
struct ImprovedReconstruction {
  std::shared_ptr<const Field> ustar;
  std::shared_ptr<const DiscreteField> ritz;
  std::shared_ptr<const DiscreteField> uh;
  std::shared_ptr<const CompositeField> field;
  double solver_residual = 0.0;
};

ImprovedReconstruction improve(std::shared_ptr<const Field> ustar,
                               std::shared_ptr<const DiscreteField> uh, const IpdgForm& form,
                               const LinearSolver& solver);

}  // namespace dgpost

#endif  // DGPOST_ORTHO_HPP_
