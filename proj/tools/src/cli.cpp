// Copyright 2026 The dplab Authors.
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
#include "dplab/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dplab/augmented.hpp"
#include "dplab/error.hpp"
#include "dplab/io.hpp"
#include "dplab/tradeoff.hpp"
#include "dplab/transport.hpp"
#include "scenario.hpp"

namespace dplab::cli {

using nlohmann::json;

namespace {

double ParseNumber(const std::string& token) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != token.size() || !std::isfinite(v)) {
    Fail(ErrorKind::kInvalidArgument, "not a number: '" + token + "'");
  }
  return v;
}

json PointJson(const Point& p) { return json(p); }

void Emit(const Scenario& sc, std::ostream& out, const std::string& text) {
  if (sc.out.empty()) {
    out << text;
  } else {
    io::write_file(sc.out, text);
  }
}

std::string Format(const Scenario& sc, const std::string& fallback) {
  return sc.format.empty() ? fallback : sc.format;
}

void RequireCsvOrJson(const std::string& format) {
  if (format != "csv" && format != "json") {
    Fail(ErrorKind::kInvalidArgument, "unknown format '" + format + "'");
  }
}

json PlanJson(const TransportPlan& plan) { return json::parse(io::plan_to_json(plan)); }

// Plans either travel inside JSON output or, for CSV output, next to it.
void EmitPlans(const Scenario& sc, const json& plans) {
  if (sc.out.empty()) {
    Fail(ErrorKind::kInvalidArgument, "--dump-plan with CSV output needs --out");
  }
  io::write_file(sc.out + ".plans.json", plans.dump(2) + "\n");
}

int CmdMmse(const Scenario& sc, std::ostream& out, std::ostream& err) {
  const std::string format = Format(sc, "json");
  if (format != "json") Fail(ErrorKind::kInvalidArgument, "codec output is JSON only");
  const Prepared p = Prepare(sc);
  Emit(sc, out, io::codec_to_json({p.encoder, p.gd, std::nullopt}) + "\n");
  err << "D_d = " << io::FormatNumber(distortion(p.source, p.encoder, p.gd)) << "\n";
  return kExitOk;
}

int CmdPerceptual(const Scenario& sc, std::ostream& out, std::ostream& err) {
  const std::string format = Format(sc, "json");
  if (format != "json") Fail(ErrorKind::kInvalidArgument, "codec output is JSON only");
  const Prepared p = Prepare(sc);
  Emit(sc, out, io::codec_to_json({p.encoder, p.gd, p.gp}) + "\n");
  err << "D(0) = " << io::FormatNumber(distortion(p.source, p.encoder, p.gp)) << "\n";
  return kExitOk;
}

int CmdSweep(const Scenario& sc, std::ostream& out, std::ostream&) {
  const std::string format = Format(sc, "csv");
  RequireCsvOrJson(format);
  const std::vector<double> alphas = ParseRange(sc.alphas);
  const Prepared p = Prepare(sc);
  SweepOptions opt;
  opt.keep_plans = sc.dump_plan;
  const SweepResult r = sweep(p.source, p.encoder, p.gd, p.gp, alphas, opt);
  json plans = json::array();
  for (const auto& plan : r.plans) plans.push_back(PlanJson(plan));
  if (format == "csv") {
    Emit(sc, out, io::sweep_csv(r.points));
    if (sc.dump_plan) EmitPlans(sc, plans);
    return kExitOk;
  }
  json j;
  j["certified_optimal"] = p.certified;
  j["points"] = json::array();
  for (const auto& pt : r.points) {
    j["points"].push_back({{"alpha", pt.alpha},
                           {"D_measured", pt.D_measured},
                           {"P_measured", pt.P_measured},
                           {"D_predicted", pt.D_predicted},
                           {"P_predicted", pt.P_predicted},
                           {"D_d", pt.D_d},
                           {"P_d", pt.P_d}});
  }
  if (sc.dump_plan) j["plans"] = plans;
  Emit(sc, out, j.dump(2) + "\n");
  return kExitOk;
}

int CmdOracle(const Scenario& sc, std::ostream& out, std::ostream&) {
  const std::string format = Format(sc, "csv");
  RequireCsvOrJson(format);
  std::vector<double> requested;
  if (!sc.perception.empty()) {
    requested = ParseList(sc.perception);
    for (double P : requested) {
      if (P < 0.0) Fail(ErrorKind::kInvalidArgument, "perception must be ≥ 0");
    }
  }
  const Prepared p = Prepare(sc);
  const MmseBaseline base = mmse_baseline(p.source, p.encoder, p.gd);
  std::vector<double> perceptions;
  if (sc.perception.empty()) {
    for (double a : {0.0, 0.25, 0.5, 0.75, 1.0}) perceptions.push_back(a * a * base.P_d);
  } else {
    perceptions = requested;
  }
  std::vector<double> alphas = ParseRange(sc.alphas);
  for (double P : perceptions) {
    if (base.P_d > 0.0) alphas.push_back(alpha_for_perception(P, base.P_d));
  }
  const std::vector<Point> support = default_oracle_support(p.source, p.encoder, p.gd, alphas);

  std::ostringstream csv;
  csv << "perception,alpha,D_star,D_predicted,coupling_cost\n";
  json rows = json::array();
  for (double P : perceptions) {
    const OracleResult r = constrained_oracle(p.source, p.encoder, P, support);
    const double alpha = base.P_d > 0.0 ? alpha_for_perception(P, base.P_d) : 1.0;
    const double predicted = predicted_distortion(alpha, base.D_d);
    csv << io::FormatNumber(P) << ',' << io::FormatNumber(alpha) << ','
        << io::FormatNumber(r.D_star) << ',' << io::FormatNumber(predicted) << ','
        << io::FormatNumber(r.perception) << '\n';
    json row{{"perception", P},
             {"alpha", alpha},
             {"D_star", r.D_star},
             {"D_predicted", predicted},
             {"coupling_cost", r.perception}};
    if (sc.dump_plan) {
      json sup = json::array();
      for (const Point& x : r.decoder.out_support()) sup.push_back(PointJson(x));
      row["decoder"] = {{"support", sup}, {"rows", r.decoder.rows()}};
    }
    rows.push_back(row);
  }
  if (format == "csv") {
    Emit(sc, out, csv.str());
    if (sc.dump_plan) EmitPlans(sc, rows);
    return kExitOk;
  }
  json j{{"D_d", base.D_d}, {"P_d", base.P_d}, {"support_size", support.size()}, {"rows", rows}};
  Emit(sc, out, j.dump(2) + "\n");
  return kExitOk;
}

int CmdAugmented(const Scenario& sc, std::ostream& out, std::ostream&) {
  const std::string format = Format(sc, "csv");
  RequireCsvOrJson(format);
  const std::vector<double> lambdas = ParseList(sc.lambdas);
  const Prepared p = Prepare(sc);
  const auto rows = phase_sweep(p.source, p.encoder, p.gd, lambdas,
                                default_augmented_support(p.source, p.gd));
  if (format == "csv") {
    Emit(sc, out, io::phase_csv(rows));
    return kExitOk;
  }
  json j = json::array();
  for (const auto& r : rows) {
    json row{{"lambda", r.lambda},     {"w1_gap", r.w1_gap},       {"mean_dev", r.mean_dev},
             {"mse", r.mse},           {"objective", r.objective}, {"flag", ToString(r.flag)}};
    if (sc.dump_plan) {
      json sup = json::array();
      for (const Point& x : r.decoder.out_support()) sup.push_back(PointJson(x));
      row["decoder"] = {{"support", sup}, {"rows", r.decoder.rows()}};
    }
    j.push_back(row);
  }
  Emit(sc, out, j.dump(2) + "\n");
  return kExitOk;
}

int CmdVerify(const Scenario& sc, std::ostream& out, std::ostream& err) {
  const std::string format = Format(sc, "csv");
  RequireCsvOrJson(format);
  const Prepared p = Prepare(sc);
  const std::vector<CheckRow> rows = RunVerify(sc, p);
  bool ok = true;
  std::ostringstream csv;
  csv << "check,status,measured,tolerance\n";
  json j = json::array();
  for (const auto& r : rows) {
    ok = ok && r.status != "fail";
    csv << r.name << ',' << r.status << ',' << io::FormatNumber(r.measured) << ','
        << io::FormatNumber(r.tolerance) << '\n';
    j.push_back({{"check", r.name},
                 {"status", r.status},
                 {"measured", r.measured},
                 {"tolerance", r.tolerance}});
  }
  Emit(sc, out, format == "csv" ? csv.str() : j.dump(2) + "\n");
  err << (ok ? "verify: all checks passed\n" : "verify: some checks FAILED\n");
  return ok ? kExitOk : kExitCheckFailed;
}

void AddScenarioOptions(CLI::App* cmd, Scenario& sc) {
  cmd->add_option("--source", sc.source, "builtin:NAME, inline JSON or a JSON file")
      ->capture_default_str();
  cmd->add_option("--rate", sc.rate, "rate R in bits (K = 2^R)")
      ->check(CLI::Range(0, 30))
      ->capture_default_str();
  cmd->add_option("--method", sc.method, "codec training method")
      ->check(CLI::IsMember({"exhaustive", "lloyd"}))
      ->capture_default_str();
  cmd->add_option("--alphas", sc.alphas, "alpha grid a:b:step")->capture_default_str();
  cmd->add_option("--lambdas", sc.lambdas, "comma-separated lambda grid")
      ->capture_default_str();
  cmd->add_option("--perception", sc.perception, "comma-separated perception levels P");
  cmd->add_option("--seed", sc.seed, "seed for Lloyd initialization")->capture_default_str();
  cmd->add_option("--tol", sc.tol, "Lloyd relative tolerance")->capture_default_str();
  cmd->add_option("--out", sc.out, "output file (default: stdout)");
  cmd->add_option("--format", sc.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--dump-plan", sc.dump_plan, "include transport plans / decoders");
  cmd->add_option("--codec", sc.codec, "codec JSON written by mmse or perceptual");
}

}  // namespace

int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete distortion-perception tradeoff lab", "dplab"};
  app.require_subcommand(1);
  Scenario sc;
  struct Sub {
    const char* name;
    const char* help;
    int (*fn)(const Scenario&, std::ostream&, std::ostream&);
  };
  const Sub subs[] = {
      {"mmse", "train the MSE-optimal codec and write codec JSON", CmdMmse},
      {"perceptual", "codec JSON including the conditional resampler", CmdPerceptual},
      {"sweep", "alpha sweep of measured and predicted (D, P)", CmdSweep},
      {"oracle", "perception-constrained distortion oracle", CmdOracle},
      {"theorem2", "augmented objective over a lambda grid", CmdAugmented},
      {"verify", "run the invariant suite", CmdVerify},
  };
  std::vector<CLI::App*> cmds;
  for (const Sub& s : subs) {
    CLI::App* cmd = app.add_subcommand(s.name, s.help);
    AddScenarioOptions(cmd, sc);
    cmds.push_back(cmd);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  try {
    for (std::size_t k = 0; k < cmds.size(); ++k) {
      if (cmds[k]->parsed()) return subs[k].fn(sc, out, err);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

DiscreteDistribution LoadSource(const std::string& spec) {
  if (spec.rfind("builtin:", 0) == 0) {
    auto d = io::builtin_source(spec);
    if (!d) Fail(ErrorKind::kInvalidArgument, "unknown builtin source '" + spec + "'");
    return *d;
  }
  if (!spec.empty() && spec.front() == '{') return io::parse_source_json(spec);
  return io::parse_source_json(io::read_file(spec));
}

std::vector<double> ParseList(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) values.push_back(ParseNumber(token));
  if (values.empty()) Fail(ErrorKind::kInvalidArgument, "empty list");
  return values;
}

std::vector<double> ParseRange(const std::string& text) {
  if (text.find(':') == std::string::npos) return ParseList(text);
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ':')) parts.push_back(ParseNumber(token));
  if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
    Fail(ErrorKind::kInvalidArgument, "range must be a:b:step with a <= b and step > 0");
  }
  const double a = parts[0], b = parts[1], step = parts[2];
  const double steps = (b - a) / step;
  const long n = std::lround(std::floor(steps + 1e-9));
  std::vector<double> grid;
  const bool exact = std::abs(steps - std::round(steps)) <= 1e-9;
  for (long k = 0; k <= n; ++k) {
    // Interpolate between the endpoints when the step divides the range, so
    // the last point is b itself.
    grid.push_back(exact && n > 0 ? a + (b - a) * static_cast<double>(k) / static_cast<double>(n)
                                  : a + step * static_cast<double>(k));
  }
  return grid;
}

Prepared Prepare(const Scenario& sc) {
  Prepared p;
  p.source = LoadSource(sc.source);
  const std::size_t K = CodebookSize(sc.rate);
  if (!sc.codec.empty()) {
    io::Codec codec = io::parse_codec_json(io::read_file(sc.codec));
    if (codec.encoder.support_size() != p.source.size()) {
      Fail(ErrorKind::kInvalidArgument, "codec does not match the source support size");
    }
    p.encoder = codec.encoder;
    p.gd = codec.gd;
    p.gp = codec.gp ? *codec.gp : perceptual_decoder_for(p.source, p.encoder);
    const OptimalCodec best = certified_optimal_encoder(p.source, p.encoder.K());
    p.certified = std::abs(distortion(p.source, p.encoder, p.gd) - best.mse) <= 1e-12 &&
                  p.gd == mmse_decoder_for(p.source, p.encoder);
    return p;
  }
  if (K > p.source.size()) {
    Fail(ErrorKind::kInvalidArgument, "codebook size " + std::to_string(K) +
                                          " exceeds the support size " +
                                          std::to_string(p.source.size()));
  }
  if (sc.method == "lloyd") {
    LloydOptions opt;
    opt.seed = sc.seed;
    opt.tol = sc.tol;
    LloydResult r = lloyd_train(p.source, K, opt);
    p.encoder = r.encoder;
    p.gd = r.decoder;
    p.lloyd = std::move(r);
    p.certified = false;
  } else {
    OptimalCodec c = certified_optimal_encoder(p.source, K);
    p.encoder = c.encoder;
    p.gd = c.decoder;
    p.certified = true;
  }
  p.gp = perceptual_decoder_for(p.source, p.encoder);
  return p;
}

}  // namespace dplab::cli
