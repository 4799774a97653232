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

// JSON views of library results. Non-finite numbers become the strings
// "inf", "-inf" and "nan"; subsets become arrays of feature names.

#ifndef SUBSEL_SERIALIZE_HPP_
#define SUBSEL_SERIALIZE_HPP_

#include <optional>
#include <ostream>

#include <nlohmann/json.hpp>

#include "subsel/design.hpp"
#include "subsel/gamma.hpp"
#include "subsel/selection.hpp"
#include "subsel/setfun.hpp"
#include "subsel/spectral.hpp"

namespace subsel::serialize {

using Json = nlohmann::json;

Json number(double x);
Json number(const std::optional<double>& x);
Json subset(const StandardizedDesign& design, Subset s);
Json feature(const StandardizedDesign& design, int i);

Json certificate(const StandardizedDesign& design,
                 const setfun::ViolationCertificate& c);
Json violations(const StandardizedDesign& design, const setfun::ViolationSet& v);
Json witness(const StandardizedDesign& design, const setfun::GammaWitness& w);
Json gammas(const StandardizedDesign& design, const setfun::GammaEstimates& g);
Json ratio(const StandardizedDesign& design, const gamma::RatioQuery& query,
           const gamma::RatioResult& r);
Json step(const StandardizedDesign& design, const selection::SelectionStep& s);
Json trace(const StandardizedDesign& design, const selection::SelectionTrace& t);
Json nwf(const StandardizedDesign& design, const selection::NwfResult& r);
Json gamma_spectral(const StandardizedDesign& design,
                    const spectral::GammaSpectral& g);

/// One JSON object per step, then a closing {"algorithm", "stop", ...} line.
void write_trace_lines(std::ostream& out, const StandardizedDesign& design,
                       const selection::SelectionTrace& t);

}  // namespace subsel::serialize

#endif  // SUBSEL_SERIALIZE_HPP_
