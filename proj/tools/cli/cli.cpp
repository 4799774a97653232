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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "subsel/csv.hpp"
#include "subsel/datasets.hpp"
#include "subsel/error.hpp"
#include "subsel/gamma.hpp"
#include "subsel/geometry2d.hpp"
#include "subsel/regress.hpp"
#include "subsel/selection.hpp"
#include "subsel/serialize.hpp"
#include "subsel/setfun.hpp"
#include "subsel/spectral.hpp"

namespace subsel::cli {
namespace {

using serialize::Json;
using serialize::number;

// gamma_s visits every (A, B, i) triple, about m 3^m comparisons.
constexpr int kGammaSMaxFeatures = 14;
constexpr std::size_t kReportCertificates = 10;

struct Options {
  std::string csv;
  std::string response = "Y";
  int k = 2;
  int d = 1;
  int rounds = 1;
  double alpha = 1.0;
  std::string mode = "both";
  std::string base;
  double r2_full = 0.5;
  int theta_steps = 100;
  int v_steps = 100;
  std::uint64_t seed = 0;
  std::string out;
  std::string svg;
  int max_enum = 20;
  std::string algo = "stepwise";
  std::optional<double> t_stop;
  std::vector<double> lambdas{0.0, 0.01, 0.1, 1.0};
  std::string generator;
  int p = 3;
  double sz = 1.0;
  double se = 3.0;
  int n = 20;
  int m = 5;
  double rho = 0.0;
  double sigma = 1.0;
  std::vector<double> beta;
};

// Buffers the whole artifact so a failed open leaves no partial file.
void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out.empty() || o.out == "-") {
    out << text;
    return;
  }
  std::ofstream file(o.out, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorKind::kIo, "cannot write '" + o.out + "'");
  file << text;
  if (!file) throw Error(ErrorKind::kIo, "write to '" + o.out + "' failed");
}

StandardizedDesign load(const Options& o) {
  return regress::standardize(csv::read_file(o.csv, o.response));
}

Subset parse_base(const StandardizedDesign& d, const std::string& list) {
  Subset s;
  std::stringstream in(list);
  std::string name;
  while (std::getline(in, name, ',')) {
    if (name.empty()) continue;
    const auto it = std::find(d.names().begin(), d.names().end(), name);
    if (it == d.names().end()) {
      throw Error(ErrorKind::kInvalidArgument, "unknown feature '" + name + "'");
    }
    s = s.with(static_cast<int>(it - d.names().begin()));
  }
  return s;
}

int cmd_audit(const Options& o, std::ostream& out) {
  const StandardizedDesign d = load(o);
  const int m = d.m();
  if (o.k < 1 || o.k > m) {
    throw Error(ErrorKind::kInvalidArgument, "--k must lie in [1, m]");
  }
  const Subset base = parse_base(d, o.base);
  FitCache cache;
  Json report;
  Json skipped = Json::array();
  auto attempt = [&](const std::string& section, const std::function<void()>& body) {
    try {
      body();
    } catch (const Error& e) {
      skipped.push_back({{"section", section},
                         {"kind", to_string(e.kind())},
                         {"reason", e.what()}});
    }
  };

  report["schema"] = "1";
  Json features = Json::array();
  for (int i = 0; i < m; ++i) {
    const auto& s = d.feature_summary()[static_cast<size_t>(i)];
    features.push_back({{"name", d.name(i)},
                        {"mean", number(s.mean)},
                        {"centered_norm", number(s.centered_norm)},
                        {"r_y", number(d.response_correlation()(i))}});
  }
  report["standardization"] = {
      {"n", d.n()},
      {"m", m},
      {"response",
       {{"name", d.response_name()},
        {"mean", number(d.response_summary().mean)},
        {"centered_norm", number(d.response_summary().centered_norm)}}},
      {"features", features}};

  std::vector<double> table;
  attempt("r2_table", [&] { table = regress::r2_table(d, &cache, o.max_enum); });
  if (!table.empty()) {
    report["r_squared_full"] = number(table.back());
    attempt("gamma_s2", [&] {
      const auto g = setfun::gamma_s2_from_table(table, m);
      report["gamma_s2"] = {{"gamma_s2", number(g.gamma_s2)},
                            {"compared", g.compared_s2},
                            {"skipped", g.skipped_s2},
                            {"witness", serialize::witness(d, g.witness_s2)}};
    });
    attempt("gamma_s", [&] {
      require_enumerable(m, std::min(o.max_enum, kGammaSMaxFeatures));
      const auto g = setfun::gamma_s_from_table(table, m);
      report["gamma_s"] = {{"gamma_s", number(g.gamma_s)},
                           {"chain_lower_bound", nullptr},
                           {"compared", g.compared_s},
                           {"skipped", g.skipped_s},
                           {"witness", serialize::witness(d, g.witness_s)}};
    });
  } else {
    skipped.push_back({{"section", "gamma_s2"}, {"kind", "TooManyFeatures"},
                       {"reason", "requires the R^2 table"}});
    skipped.push_back({{"section", "gamma_s"}, {"kind", "TooManyFeatures"},
                       {"reason", "requires the R^2 table"}});
  }
  if (report.contains("gamma_s2") && report.contains("gamma_s")) {
    const Json& g2 = report["gamma_s2"]["gamma_s2"];
    if (g2.is_number()) {
      const double v = g2.get<double>();
      report["gamma_s"]["chain_lower_bound"] =
          v > 0.0 && v <= 1.0 ? number(setfun::chain_lower_bound(v, m)) : Json(nullptr);
    }
  }

  Json ratios = Json::array();
  std::vector<gamma::CardinalityMode> modes;
  if (o.mode != "exact") modes.push_back(gamma::CardinalityMode::kAtMostK);
  if (o.mode != "atmost") modes.push_back(gamma::CardinalityMode::kExactlyK);
  for (auto mode : modes) {
    attempt(std::string("gamma_sr_") + std::string(gamma::to_string(mode)), [&] {
      const gamma::RatioQuery q{base, o.k, mode};
      ratios.push_back(serialize::ratio(d, q, gamma::submodularity_ratio(d, q, &cache, o.max_enum)));
    });
  }
  report["submodularity_ratio"] = ratios;

  setfun::CheckOptions check;
  check.max_enum = o.max_enum;
  check.max_certificates = kReportCertificates;
  attempt("violations", [&] {
    const auto v = setfun::check_submodular(d, setfun::CheckMode::kSecondOrder, check, &cache);
    report["violations"] = serialize::violations(d, v);
    report["submodular"] = v.empty();
  });
  attempt("suppressors", [&] {
    report["suppressors"] = serialize::violations(d, setfun::find_suppressors(d, check, &cache));
  });

  Json selection_json;
  selection_json["stepwise"] =
      serialize::trace(d, selection::forward_stepwise(d, o.k, std::nullopt, &cache));
  std::optional<Subset> best;
  attempt("best_subset", [&] {
    const auto b = selection::best_subset(d, o.k, &cache, o.max_enum);
    best = b.subset;
    selection_json["best_subset"] = {{"k", o.k},
                                     {"selected", serialize::subset(d, b.subset)},
                                     {"r_squared", number(b.r_squared)}};
  });
  attempt("nwf", [&] {
    selection_json["nwf"] = serialize::nwf(d, selection::nwf_check(d, o.k, &cache, o.max_enum));
  });
  Json ranking = Json::array();
  for (int i : selection::sis_screen(d, m)) {
    ranking.push_back({{"feature", d.name(i)},
                       {"abs_r", number(std::abs(d.response_correlation()(i)))}});
  }
  selection_json["sis_ranking"] = ranking;
  report["selection"] = selection_json;

  Json spectral_json;
  attempt("lambda_min", [&] {
    const int order = std::min(2 * o.k, m);
    const auto e = spectral::sparse_min_eigenvalue(d.correlation(), order, o.max_enum);
    spectral_json["lambda_min"] = {{"order", order},
                                   {"value", number(e.value)},
                                   {"support", serialize::subset(d, e.support)}};
  });
  attempt("gamma_vs_spectral", [&] {
    spectral_json["gamma_vs_spectral"] = serialize::gamma_spectral(
        d, spectral::gamma_vs_spectral(d, base, o.k, &cache, o.max_enum));
  });
  {
    Subset s = !base.empty() ? base : (best && !best->empty() ? *best : Subset{0});
    spectral::ReOptions re;
    re.seed = o.seed;
    const auto r = spectral::restricted_eigenvalue(d.correlation(), {s, o.alpha}, re);
    Json cert = Json::array();
    for (Eigen::Index i = 0; i < r.certificate.size(); ++i) cert.push_back(number(r.certificate(i)));
    spectral_json["restricted_eigenvalue"] = {{"s", serialize::subset(d, s)},
                                              {"alpha", number(o.alpha)},
                                              {"value", number(r.value)},
                                              {"certificate", cert},
                                              {"is_heuristic", r.is_heuristic}};
  }
  report["spectral"] = spectral_json;

  report["partial"] = !skipped.empty();
  report["skipped"] = skipped;
  emit(o, report.dump(2) + "\n", out);
  return skipped.empty() ? kExitOk : kExitPartial;
}

int cmd_grid(const Options& o, std::ostream& out) {
  const auto cells = geometry2d::grid_evaluate(o.theta_steps, o.v_steps, o.r2_full);
  std::ostringstream text;
  geometry2d::write_grid_csv(text, cells);
  emit(o, text.str(), out);
  if (!o.svg.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(o.svg, ec);
    for (std::string_view column :
         {"gamma1", "gamma2", "gamma_s2", "sum_bound", "gamma_sr", "t_ratio_bound"}) {
      const auto path = std::filesystem::path(o.svg) / (std::string(column) + ".svg");
      std::ofstream file(path, std::ios::binary | std::ios::trunc);
      if (!file) throw Error(ErrorKind::kIo, "cannot write '" + path.string() + "'");
      const auto levels = geometry2d::default_levels(column);
      geometry2d::write_svg_heatmap(file, cells, column, levels);
    }
  }
  return kExitOk;
}

int cmd_select(const Options& o, std::ostream& out) {
  const StandardizedDesign d = load(o);
  FitCache cache;
  std::ostringstream text;
  if (o.algo == "stepwise") {
    serialize::write_trace_lines(text, d, selection::forward_stepwise(d, o.k, o.t_stop, &cache));
  } else if (o.algo == "best") {
    const auto b = selection::best_subset(d, o.k, &cache, o.max_enum);
    text << Json{{"algorithm", "best"},
                 {"k", o.k},
                 {"selected", serialize::subset(d, b.subset)},
                 {"r_squared", number(b.r_squared)}}
                .dump()
         << '\n';
  } else if (o.algo == "l0") {
    for (const auto& p : selection::l0_path(d, o.lambdas, &cache, o.max_enum)) {
      text << Json{{"algorithm", "l0"},
                   {"lambda", number(p.lambda)},
                   {"selected", serialize::subset(d, p.subset)},
                   {"r_squared", number(p.r_squared)},
                   {"objective", number(p.objective)}}
                  .dump()
           << '\n';
    }
  } else if (o.algo == "sis") {
    const auto ranked = selection::sis_screen(d, o.d);
    for (size_t r = 0; r < ranked.size(); ++r) {
      text << Json{{"algorithm", "sis"},
                   {"rank", r + 1},
                   {"feature", d.name(ranked[r])},
                   {"abs_r", number(std::abs(d.response_correlation()(ranked[r])))}}
                  .dump()
           << '\n';
    }
    text << Json{{"algorithm", "sis"}, {"selected", d.names_of(Subset::of(ranked))}}.dump()
         << '\n';
  } else if (o.algo == "isis") {
    const auto res = selection::isis(d, o.d, o.rounds, &cache);
    for (const auto& s : res.trace.steps) {
      Json line = serialize::step(d, s);
      line["algorithm"] = "isis";
      text << line.dump() << '\n';
    }
    Json rounds = Json::array();
    for (const auto& r : res.rounds) {
      Json picked = Json::array();
      for (int i : r.picked) picked.push_back(d.name(i));
      rounds.push_back({{"round", r.round},
                        {"picked", picked},
                        {"r_squared", number(r.r_squared)},
                        {"skipped", r.skipped}});
    }
    Json order = Json::array();
    for (int i : res.selected) order.push_back(d.name(i));
    text << Json{{"algorithm", "isis"},
                 {"stop", selection::to_string(res.trace.stop)},
                 {"selected", order},
                 {"rounds", rounds},
                 {"skipped", res.skipped},
                 {"r_squared", number(res.trace.final_r2())}}
                .dump()
         << '\n';
  }
  emit(o, text.str(), out);
  return kExitOk;
}

int cmd_gen(const Options& o, std::ostream& out) {
  std::ostringstream text;
  if (o.generator == "miller") {
    csv::write(text, datasets::miller_table());
  } else if (o.generator == "suppressor") {
    csv::write(text, datasets::suppressor_design(o.p, o.sz, o.se, o.n));
  } else {
    if (o.m < 1) throw Error(ErrorKind::kInvalidArgument, "--m must be >= 1");
    Eigen::MatrixXd corr = Eigen::MatrixXd::Constant(o.m, o.m, o.rho);
    corr.diagonal().setOnes();
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(o.m);
    if (o.beta.empty()) {
      for (int i = 0; i < std::min(2, o.m); ++i) beta(i) = 1.0;
    } else if (static_cast<int>(o.beta.size()) == o.m) {
      for (int i = 0; i < o.m; ++i) beta(i) = o.beta[static_cast<size_t>(i)];
    } else {
      throw Error(ErrorKind::kInvalidArgument, "--beta needs exactly m values");
    }
    csv::write(text, datasets::random_gaussian(o.n, o.m, corr, beta, o.sigma, o.seed));
  }
  emit(o, text.str(), out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Submodularity diagnostics for regression feature selection"};
  app.name("subsel");
  app.require_subcommand(1);
  Options o;

  auto* audit = app.add_subcommand("audit", "Full diagnostic report for a CSV as JSON");
  audit->add_option("csv", o.csv, "Input CSV with a header row")->required();
  audit->add_option("--response", o.response, "Response column name");
  audit->add_option("--k", o.k, "Selection size / ratio cardinality");
  audit->add_option("--mode", o.mode, "Ratio cardinality mode")
      ->check(CLI::IsMember({"atmost", "exact", "both"}));
  audit->add_option("--base", o.base, "Comma-separated base set S for the ratio");
  audit->add_option("--alpha", o.alpha, "Cone parameter for the restricted eigenvalue");
  audit->add_option("--seed", o.seed, "Restart seed for the restricted eigenvalue");
  audit->add_option("--max-enum", o.max_enum, "Largest m for exhaustive passes");
  audit->add_option("--out", o.out, "Output path (default stdout)");

  auto* grid = app.add_subcommand("grid", "Two-feature diagnostic grid as CSV");
  grid->add_option("--theta-steps", o.theta_steps, "Divisions of theta over (0, pi)");
  grid->add_option("--v-steps", o.v_steps, "Divisions of v over (0, pi)");
  grid->add_option("--r2-full", o.r2_full, "Joint R^2 of every grid problem");
  grid->add_option("--out", o.out, "Output CSV path (default stdout)");
  grid->add_option("--svg", o.svg, "Directory for per-diagnostic SVG heatmaps");

  auto* select = app.add_subcommand("select", "Run a selector and log its trace as JSON lines");
  select->add_option("csv", o.csv, "Input CSV with a header row")->required();
  select->add_option("--response", o.response, "Response column name");
  select->add_option("--algo", o.algo, "Selector")
      ->check(CLI::IsMember({"stepwise", "best", "l0", "sis", "isis"}));
  select->add_option("--k", o.k, "Steps for stepwise, size cap for best");
  select->add_option("--d", o.d, "Features kept per screening round");
  select->add_option("--rounds", o.rounds, "Screening rounds for isis");
  select->add_option("--t-stop", o.t_stop, "Stepwise |t| stopping threshold");
  select->add_option("--lambda", o.lambdas, "Comma-separated l0 penalties")->delimiter(',');
  select->add_option("--max-enum", o.max_enum, "Largest m for exhaustive passes");
  select->add_option("--out", o.out, "Output path (default stdout)");

  auto* gen = app.add_subcommand("gen", "Write a generated dataset as CSV");
  gen->add_option("generator", o.generator, "Dataset generator")
      ->required()
      ->check(CLI::IsMember({"miller", "suppressor", "gaussian"}));
  gen->add_option("--p", o.p, "Suppressor: number of features");
  gen->add_option("--sz", o.sz, "Suppressor: signal standard deviation");
  gen->add_option("--se", o.se, "Suppressor: hiding-noise standard deviation");
  gen->add_option("--n", o.n, "Rows");
  gen->add_option("--m", o.m, "Gaussian: features");
  gen->add_option("--rho", o.rho, "Gaussian: equicorrelation of the features");
  gen->add_option("--sigma", o.sigma, "Gaussian: noise standard deviation");
  gen->add_option("--beta", o.beta, "Gaussian: comma-separated coefficients")->delimiter(',');
  gen->add_option("--seed", o.seed, "Gaussian: generator seed");
  gen->add_option("--out", o.out, "Output path (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitError;
  }

  try {
    if (audit->parsed()) return cmd_audit(o, out);
    if (grid->parsed()) return cmd_grid(o, out);
    if (select->parsed()) return cmd_select(o, out);
    return cmd_gen(o, out);
  } catch (const Error& e) {
    err << "subsel: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "subsel: " << e.what() << '\n';
  }
  return kExitError;
}

}  // namespace subsel::cli
