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

#ifndef DGPOST_PIPELINE_HPP_
#define DGPOST_PIPELINE_HPP_

#include <memory>
#include <optional>
#include <string>

#include "dgpost/estimate.hpp"
#include "dgpost/ipdg.hpp"
#include "dgpost/ortho.hpp"
#include "dgpost/problems.hpp"

namespace dgpost {

enum class PostKind { None, Siac, Spr };
enum class Driver { Rh, Rss };

PostKind parse_post(const std::string& s);
Driver parse_driver(const std::string& s);
std::string to_string(PostKind k);
std::string to_string(Driver d);

struct PipelineOptions {
  int p = 2;
  std::optional<Continuity> continuity;  // problem default when unset
  PenaltySpec penalty;
  PostKind post = PostKind::Siac;
  int r = -1;  // SIAC kernel; r < 0 selects ceil((p+1)/2)
  int m = 1;
  bool estimate_uh = true;
  bool estimate_improved = true;
};

/// Everything produced by one solve on one mesh.
struct PipelineResult {
  std::shared_ptr<const Mesh> mesh;
  std::shared_ptr<const PolySpace> space;
  std::shared_ptr<const IpdgForm> form;
  std::shared_ptr<const LinearSolver> solver;
  Eigen::VectorXd load;
  std::shared_ptr<const DiscreteField> uh;
  std::shared_ptr<const Field> ustar;
  std::optional<ImprovedReconstruction> improved;
  std::optional<EstimatorReport> rh;
  std::optional<EstimatorReport> rss;
};

/// Solve for u_h, post-process, improve and estimate.
PipelineResult run_pipeline(const ProblemSpec& problem, std::shared_ptr<const Mesh> mesh,
                            const PipelineOptions& options);

/// The post-processed field u* for a given u_h.
std::shared_ptr<const Field> postprocess(const ProblemSpec& problem, const DiscreteField& uh,
                                         const PipelineOptions& options);

}  // namespace dgpost

#endif  // DGPOST_PIPELINE_HPP_
