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

#include "subsel/setfun.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>
#include <utility>

#include "subsel/error.hpp"
#include "subsel/regress.hpp"

namespace subsel::setfun {
namespace {

using Mask = std::uint64_t;

constexpr Mask bit(int i) { return Mask{1} << i; }

// Collects certificates, keeping the `cap` largest deficits. Earlier
// enumeration order wins ties, both for retention and for final ordering.
class CertificateSink {
 public:
  explicit CertificateSink(std::size_t cap) : cap_(cap) {}

  void add(const ViolationCertificate& cert) {
    const Entry entry{cert, total_++};
    if (cap_ == 0) return;
    if (heap_.size() < cap_) {
      heap_.push(entry);
    } else if (Worse{}(entry, heap_.top())) {
      heap_.pop();
      heap_.push(entry);
    }
  }

  ViolationSet finish() {
    ViolationSet out;
    out.total = total_;
    std::vector<Entry> entries;
    entries.reserve(heap_.size());
    while (!heap_.empty()) {
      entries.push_back(heap_.top());
      heap_.pop();
    }
    std::sort(entries.begin(), entries.end(), Worse{});
    out.certificates.reserve(entries.size());
    for (auto& e : entries) out.certificates.push_back(e.cert);
    return out;
  }

 private:
  struct Entry {
    ViolationCertificate cert;
    std::uint64_t seq;
  };
  // "a before b" in the final listing: larger deficit, then earlier seq.
  struct Worse {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.cert.deficit != b.cert.deficit) return a.cert.deficit > b.cert.deficit;
      return a.seq < b.seq;
    }
  };

  std::size_t cap_;
  std::uint64_t total_ = 0;
  // Top of the heap is the entry that would be listed last.
  std::priority_queue<Entry, std::vector<Entry>, Worse> heap_;
};

// Visits nonempty submasks of `within` in ascending order.
template <typename Fn>
void for_each_nonempty_submask(Mask within, Fn&& fn) {
  for (Mask t = (Mask{0} - within) & within; t != 0; t = (t - within) & within) {
    fn(t);
  }
}

double gain(std::span<const double> f, Mask base, int i) {
  return f[base | bit(i)] - f[base];
}

}  // namespace

std::string_view to_string(ViolationForm form) {
  switch (form) {
    case ViolationForm::kDefinition: return "definition";
    case ViolationForm::kFirstOrder: return "first_order";
    case ViolationForm::kSecondOrder: return "second_order";
    case ViolationForm::kSuppression: return "suppression";
  }
  return "unknown";
}

std::string_view to_string(CheckMode mode) {
  switch (mode) {
    case CheckMode::kDefinition: return "definition";
    case CheckMode::kFirstOrder: return "first_order";
    case CheckMode::kSecondOrder: return "second_order";
  }
  return "unknown";
}

double delta(const StandardizedDesign& design, Subset add, Subset base,
             FitCache* cache) {
  return regress::r_squared(design, add | base, cache) -
         regress::r_squared(design, base, cache);
}

ViolationSet check_submodular(const StandardizedDesign& design, CheckMode mode,
                              const CheckOptions& options, FitCache* cache) {
  const int m = design.m();
  const std::vector<double> table = regress::r2_table(design, cache, options.max_enum);
  const std::span<const double> f(table);
  const Mask full = Subset::full(m).bits();
  const Mask count = Mask{1} << m;
  CertificateSink sink(options.max_certificates);

  switch (mode) {
    case CheckMode::kDefinition:
      for (Mask a = 0; a < count; ++a) {
        for (Mask b = a + 1; b < count; ++b) {
          if ((a & b) == a || (a & b) == b) continue;  // nested: equality
          const double lhs = f[a] + f[b];
          const double rhs = f[a | b] + f[a & b];
          if (rhs - lhs > options.tolerance) {
            sink.add({ViolationForm::kDefinition, Subset(a), Subset(b), -1, -1,
                      lhs, rhs, rhs - lhs});
          }
        }
      }
      break;
    case CheckMode::kFirstOrder:
      for (Mask a = 0; a < count; ++a) {
        for_each_nonempty_submask(full & ~a, [&](Mask extra) {
          const Mask b = a | extra;
          for (int i = 0; i < m; ++i) {
            if (b & bit(i)) continue;
            const double lhs = gain(f, a, i);
            const double rhs = gain(f, b, i);
            if (rhs - lhs > options.tolerance) {
              sink.add({ViolationForm::kFirstOrder, Subset(a), Subset(b), i, -1,
                        lhs, rhs, rhs - lhs});
            }
          }
        });
      }
      break;
    case CheckMode::kSecondOrder:
      for (Mask a = 0; a < count; ++a) {
        for (int i = 0; i < m; ++i) {
          if (a & bit(i)) continue;
          for (int j = 0; j < m; ++j) {
            if (j == i || (a & bit(j))) continue;
            const double lhs = gain(f, a, i);
            const double rhs = gain(f, a | bit(j), i);
            if (rhs - lhs > options.tolerance) {
              sink.add({ViolationForm::kSecondOrder, Subset(a), Subset(a | bit(j)),
                        i, j, lhs, rhs, rhs - lhs});
            }
          }
        }
      }
      break;
  }
  return sink.finish();
}

ViolationSet find_suppressors(const StandardizedDesign& design,
                              const CheckOptions& options, FitCache* cache) {
  const int m = design.m();
  const std::vector<double> table = regress::r2_table(design, cache, options.max_enum);
  const std::span<const double> f(table);
  const Mask count = Mask{1} << m;
  CertificateSink sink(options.max_certificates);

  // |Cor(Y, X_{i.S-perp})| = sqrt(Delta_S(i)) because Y has unit norm.
  auto abs_corr = [&](Mask s, int i) { return std::sqrt(std::max(0.0, gain(f, s, i))); };
  for (Mask s = 0; s < count; ++s) {
    for (int i = 0; i < m; ++i) {
      if (s & bit(i)) continue;
      const double unconditional = abs_corr(s, i);
      for (int j = 0; j < m; ++j) {
        if (j == i || (s & bit(j))) continue;
        const double conditional = abs_corr(s | bit(j), i);
        if (conditional - unconditional > options.tolerance) {
          sink.add({ViolationForm::kSuppression, Subset(s), Subset(s | bit(j)), i,
                    j, unconditional, conditional, conditional - unconditional});
        }
      }
    }
  }
  return sink.finish();
}

ViolationCertificate replay(const StandardizedDesign& design,
                            const ViolationCertificate& c) {
  auto r2 = [&](Subset s) { return regress::r_squared(design, s); };
  auto d = [&](Subset base, int i) { return r2(base.with(i)) - r2(base); };
  ViolationCertificate out = c;
  switch (c.form) {
    case ViolationForm::kDefinition:
      out.lhs = r2(c.a) + r2(c.b);
      out.rhs = r2(c.a | c.b) + r2(c.a & c.b);
      break;
    case ViolationForm::kFirstOrder:
      out.lhs = d(c.a, c.i);
      out.rhs = d(c.b, c.i);
      break;
    case ViolationForm::kSecondOrder:
      out.lhs = d(c.a, c.i);
      out.rhs = d(c.a.with(c.j), c.i);
      break;
    case ViolationForm::kSuppression:
      out.lhs = std::sqrt(std::max(0.0, d(c.a, c.i)));
      out.rhs = std::sqrt(std::max(0.0, d(c.a.with(c.j), c.i)));
      break;
  }
  out.deficit = out.rhs - out.lhs;
  return out;
}

GammaEstimates gamma_s2_from_table(std::span<const double> f, int m) {
  GammaEstimates out;
  const Mask count = Mask{1} << m;
  for (Mask a = 0; a < count; ++a) {
    for (int i = 0; i < m; ++i) {
      if (a & bit(i)) continue;
      const double num = std::max(0.0, gain(f, a, i));
      for (int j = 0; j < m; ++j) {
        if (j == i || (a & bit(j))) continue;
        const double den = gain(f, a | bit(j), i);
        if (den < kSkipDenominator) {
          ++out.skipped_s2;
          continue;
        }
        ++out.compared_s2;
        const double ratio = num / den;
        if (ratio < out.gamma_s2) {
          out.gamma_s2 = ratio;
          out.witness_s2 = {Subset(a), Subset(a | bit(j)), i, j};
        }
      }
    }
  }
  return out;
}

GammaEstimates gamma_s_from_table(std::span<const double> f, int m) {
  GammaEstimates out;
  const Mask full = Subset::full(m).bits();
  const Mask count = Mask{1} << m;
  for (Mask a = 0; a < count; ++a) {
    for_each_nonempty_submask(full & ~a, [&](Mask extra) {
      const Mask b = a | extra;
      for (int i = 0; i < m; ++i) {
        if (b & bit(i)) continue;
        const double den = gain(f, b, i);
        if (den < kSkipDenominator) {
          ++out.skipped_s;
          continue;
        }
        ++out.compared_s;
        const double ratio = std::max(0.0, gain(f, a, i)) / den;
        if (ratio < out.gamma_s) {
          out.gamma_s = ratio;
          out.witness_s = {Subset(a), Subset(b), i, -1};
        }
      }
    });
  }
  return out;
}

GammaEstimates empirical_gamma_s2(const StandardizedDesign& design,
                                  FitCache* cache, int max_enum) {
  const auto table = regress::r2_table(design, cache, max_enum);
  return gamma_s2_from_table(table, design.m());
}

GammaEstimates empirical_gamma_s(const StandardizedDesign& design,
                                 FitCache* cache, int max_enum) {
  const auto table = regress::r2_table(design, cache, max_enum);
  return gamma_s_from_table(table, design.m());
}

GammaEstimates empirical_gammas(const StandardizedDesign& design,
                                FitCache* cache, int max_enum) {
  const auto table = regress::r2_table(design, cache, max_enum);
  GammaEstimates out = gamma_s2_from_table(table, design.m());
  const GammaEstimates first = gamma_s_from_table(table, design.m());
  out.gamma_s = first.gamma_s;
  out.witness_s = first.witness_s;
  out.compared_s = first.compared_s;
  out.skipped_s = first.skipped_s;
  return out;
}

double chain_lower_bound(double gamma_s2, int k) {
  if (k < 1) {
    throw Error(ErrorKind::kOutOfDomain, "chain length must be >= 1");
  }
  if (!(gamma_s2 > 0.0 && gamma_s2 <= 1.0)) {
    throw Error(ErrorKind::kOutOfDomain,
                "gamma_s2 = " + std::to_string(gamma_s2) + " outside (0, 1]");
  }
  if (gamma_s2 == 1.0) return 1.0;
  const double inv = 1.0 / gamma_s2;
  const double geometric = (1.0 - std::pow(inv, k)) / (1.0 - inv);
  const double bracket = gamma_s2 + (1.0 - gamma_s2) * geometric;
  return gamma_s2 / bracket;
}

}  // namespace subsel::setfun
