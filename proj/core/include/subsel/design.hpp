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

#ifndef SUBSEL_DESIGN_HPP_
#define SUBSEL_DESIGN_HPP_

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "subsel/subset.hpp"

namespace subsel {

/// Raw tabular data before standardization.
struct RawData {
  Eigen::MatrixXd features;  // n x m
  Eigen::VectorXd response;  // n
  std::vector<std::string> names;
  std::string response_name = "Y";
};

/// Per-column summary recorded during standardization.
struct ColumnSummary {
  double mean = 0.0;
  double centered_norm = 0.0;
};

/// Feature columns and response, each centered to mean zero and scaled to
/// unit l2 norm, so every inner product is a sample correlation.
///
/// Instances are immutable after construction; build them with
/// regress::standardize or regress::gram_factory.
class StandardizedDesign {
 public:
  StandardizedDesign(Eigen::MatrixXd features, Eigen::VectorXd response,
                     std::vector<std::string> names, std::string response_name,
                     std::vector<ColumnSummary> feature_summary,
                     ColumnSummary response_summary);

  int n() const { return static_cast<int>(features_.rows()); }
  int m() const { return static_cast<int>(features_.cols()); }

  const Eigen::MatrixXd& features() const { return features_; }
  const Eigen::VectorXd& response() const { return response_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& response_name() const { return response_name_; }
  const std::string& name(int i) const { return names_[static_cast<size_t>(i)]; }

  /// X'X: the feature correlation matrix.
  const Eigen::MatrixXd& correlation() const { return correlation_; }
  /// X'Y: marginal correlations r_Yi.
  const Eigen::VectorXd& response_correlation() const { return xty_; }

  const std::vector<ColumnSummary>& feature_summary() const {
    return feature_summary_;
  }
  const ColumnSummary& response_summary() const { return response_summary_; }

  Subset all() const { return Subset::full(m()); }
  std::vector<std::string> names_of(Subset s) const;

  /// Columns of X restricted to s, in ascending index order.
  Eigen::MatrixXd columns(Subset s) const;

 private:
  Eigen::MatrixXd features_;
  Eigen::VectorXd response_;
  std::vector<std::string> names_;
  std::string response_name_;
  std::vector<ColumnSummary> feature_summary_;
  ColumnSummary response_summary_;
  Eigen::MatrixXd correlation_;
  Eigen::VectorXd xty_;
};

}  // namespace subsel

#endif  // SUBSEL_DESIGN_HPP_
