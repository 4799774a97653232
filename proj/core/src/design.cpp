// Copyright 2026 The Authors.
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

#include "subsel/design.hpp"

#include <utility>

namespace subsel {

StandardizedDesign::StandardizedDesign(Eigen::MatrixXd features,
                                       Eigen::VectorXd response,
                                       std::vector<std::string> names,
                                       std::string response_name,
                                       std::vector<ColumnSummary> feature_summary,
                                       ColumnSummary response_summary)
    : features_(std::move(features)),
      response_(std::move(response)),
      names_(std::move(names)),
      response_name_(std::move(response_name)),
      feature_summary_(std::move(feature_summary)),
      response_summary_(response_summary) {
  correlation_ = features_.transpose() * features_;
  xty_ = features_.transpose() * response_;
}

std::vector<std::string> StandardizedDesign::names_of(Subset s) const {
  std::vector<std::string> out;
  for (int i : s.members()) out.push_back(name(i));
  return out;
}

Eigen::MatrixXd StandardizedDesign::columns(Subset s) const {
  const auto idx = s.members();
  Eigen::MatrixXd out(n(), static_cast<Eigen::Index>(idx.size()));
  for (size_t c = 0; c < idx.size(); ++c) {
    out.col(static_cast<Eigen::Index>(c)) = features_.col(idx[c]);
  }
  return out;
}

}  // namespace subsel
