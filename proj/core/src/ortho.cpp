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

#include "dgpost/ortho.hpp"

namespace dgpost {

std::shared_ptr<DiscreteField> ritz_project(const Field& w, const IpdgForm& form,
                                            const LinearSolver& solver) {
  return std::make_shared<DiscreteField>(form.space_ptr(), solver.solve(form.apply(w)));
}

ImprovedReconstruction improve(std::shared_ptr<const Field> ustar,
                               std::shared_ptr<const DiscreteField> uh, const IpdgForm& form,
                               const LinearSolver& solver) {
  if (!ustar || !uh) throw InvalidArgument("improve needs u* and u_h");
  if (&uh->space() != &form.space()) throw InvalidArgument("u_h is not in the form's space");
  ImprovedReconstruction out;
  out.ustar = ustar;
  out.uh = uh;
  out.ritz = ritz_project(*ustar, form, solver);
  out.solver_residual = solver.last_residual();
  out.field = std::make_shared<CompositeField>(std::vector<CompositeField::Term>{
      {1.0, ustar}, {-1.0, out.ritz}, {1.0, uh}});
  return out;
}

}  // namespace dgpost
