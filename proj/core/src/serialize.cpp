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

#include "subsel/serialize.hpp"

#include <cmath>

namespace subsel::serialize {

Json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

Json number(const std::optional<double>& x) {
  return x ? number(*x) : Json(nullptr);
}

Json subset(const StandardizedDesign& design, Subset s) {
  return design.names_of(s);
}

Json feature(const StandardizedDesign& design, int i) {
  return i < 0 ? Json(nullptr) : Json(design.name(i));
}

Json certificate(const StandardizedDesign& design,
                 const setfun::ViolationCertificate& c) {
  return {{"form", setfun::to_string(c.form)},
          {"a", subset(design, c.a)},
          {"b", subset(design, c.b)},
          {"i", feature(design, c.i)},
          {"j", feature(design, c.j)},
          {"lhs", number(c.lhs)},
          {"rhs", number(c.rhs)},
          {"deficit", number(c.deficit)}};
}

Json violations(const StandardizedDesign& design, const setfun::ViolationSet& v) {
  Json list = Json::array();
  for (const auto& c : v.certificates) list.push_back(certificate(design, c));
  return {{"total", v.total}, {"certificates", list}};
}

Json witness(const StandardizedDesign& design, const setfun::GammaWitness& w) {
  return {{"a", subset(design, w.a)},
          {"b", subset(design, w.b)},
          {"i", feature(design, w.i)},
          {"j", feature(design, w.j)}};
}

Json gammas(const StandardizedDesign& design, const setfun::GammaEstimates& g) {
  return {{"gamma_s2", number(g.gamma_s2)},
          {"gamma_s", number(g.gamma_s)},
          {"witness_s2", witness(design, g.witness_s2)},
          {"witness_s", witness(design, g.witness_s)},
          {"compared_s2", g.compared_s2},
          {"compared_s", g.compared_s},
          {"skipped_s2", g.skipped_s2},
          {"skipped_s", g.skipped_s}};
}

Json ratio(const StandardizedDesign& design, const gamma::RatioQuery& query,
           const gamma::RatioResult& r) {
  return {{"base", subset(design, query.base)},
          {"k", query.k},
          {"mode", gamma::to_string(query.mode)},
          {"gamma_sr", number(r.gamma_sr)},
          {"argmin", subset(design, r.argmin)},
          {"compared", r.compared},
          {"skipped", r.skipped}};
}

Json step(const StandardizedDesign& design, const selection::SelectionStep& s) {
  Json out = {{"feature", feature(design, s.feature)},
              {"delta_r2", number(s.delta_r2)},
              {"cumulative_r2", number(s.cumulative_r2)},
              {"marginal_t", number(s.marginal_t)}};
  if (s.round > 0) out["round"] = s.round;
  return out;
}

Json trace(const StandardizedDesign& design, const selection::SelectionTrace& t) {
  Json steps = Json::array();
  for (const auto& s : t.steps) steps.push_back(step(design, s));
  return {{"algorithm", t.algorithm},
          {"stop", selection::to_string(t.stop)},
          {"steps", steps}};
}

Json nwf(const StandardizedDesign& design, const selection::NwfResult& r) {
  return {{"k", r.k},
          {"greedy", subset(design, r.greedy)},
          {"optimal", subset(design, r.optimal)},
          {"greedy_r2", number(r.greedy_r2)},
          {"optimal_r2", number(r.optimal_r2)},
          {"ratio", number(r.ratio)},
          {"threshold", number(r.threshold)},
          {"guarantee_holds", r.guarantee_holds},
          {"submodular", r.submodular},
          {"violation_count", r.violation_count}};
}

Json gamma_spectral(const StandardizedDesign& design,
                    const spectral::GammaSpectral& g) {
  return {{"gamma_sr", number(g.gamma_sr)},
          {"lambda_min", number(g.lambda_min)},
          {"order", g.lambda_order},
          {"support", subset(design, g.support)},
          {"holds", g.holds}};
}

void write_trace_lines(std::ostream& out, const StandardizedDesign& design,
                       const selection::SelectionTrace& t) {
  for (const auto& s : t.steps) {
    Json line = step(design, s);
    line["algorithm"] = t.algorithm;
    out << line.dump() << '\n';
  }
  const Json last = {{"algorithm", t.algorithm},
                     {"stop", selection::to_string(t.stop)},
                     {"selected", subset(design, t.selected())},
                     {"r_squared", number(t.final_r2())}};
  out << last.dump() << '\n';
}

}  // namespace subsel::serialize
