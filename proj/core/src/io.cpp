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
#include "dplab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

#include "dplab/error.hpp"
#include "json.hpp"

namespace dplab::io {
namespace {

using nlohmann::json;

json PointsToJson(const std::vector<Point>& points) {
  json arr = json::array();
  for (const Point& p : points) arr.push_back(p);
  return arr;
}

Point PointFromJson(const json& j) {
  if (j.is_number()) return Point{j.get<double>()};
  if (!j.is_array() || j.empty()) {
    Fail(ErrorKind::kIo, "point must be a number or a non-empty array of numbers");
  }
  Point p;
  for (const json& v : j) {
    if (!v.is_number()) Fail(ErrorKind::kIo, "point coordinates must be numbers");
    p.push_back(v.get<double>());
  }
  return p;
}

std::vector<Point> PointsFromJson(const json& j, const char* field) {
  if (!j.is_array()) Fail(ErrorKind::kIo, std::string("\"") + field + "\" must be an array");
  std::vector<Point> out;
  for (const json& p : j) out.push_back(PointFromJson(p));
  return out;
}

std::vector<double> NumbersFromJson(const json& j, const char* field) {
  if (!j.is_array()) Fail(ErrorKind::kIo, std::string("\"") + field + "\" must be an array");
  std::vector<double> out;
  for (const json& v : j) {
    if (!v.is_number()) Fail(ErrorKind::kIo, std::string("\"") + field + "\" must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

json Parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    Fail(ErrorKind::kIo, std::string("malformed JSON: ") + e.what());
  }
}

const json& Field(const json& obj, const char* name) {
  if (!obj.is_object() || !obj.contains(name)) {
    Fail(ErrorKind::kIo, std::string("missing field \"") + name + "\"");
  }
  return obj.at(name);
}

double NumberField(const json& obj, const char* name) {
  const json& v = Field(obj, name);
  if (!v.is_number()) Fail(ErrorKind::kIo, std::string("field \"") + name + "\" must be a number");
  return v.get<double>();
}

json DistributionToJson(const DiscreteDistribution& d) {
  return json{{"points", PointsToJson(d.points())}, {"probs", d.probs()}};
}

}  // namespace

DiscreteDistribution parse_source_json(const std::string& text) {
  const json j = Parse(text);
  if (!j.is_object()) Fail(ErrorKind::kIo, "source spec must be a JSON object");
  if (j.contains("kind")) {
    const json& kind = j.at("kind");
    if (!kind.is_string() || kind.get<std::string>() != "gaussian-grid") {
      Fail(ErrorKind::kIo, "unknown source kind (expected \"gaussian-grid\")");
    }
    const double n = NumberField(j, "n");
    if (n != static_cast<int>(n)) Fail(ErrorKind::kIo, "\"n\" must be an integer");
    return gaussian_grid(NumberField(j, "mean"), NumberField(j, "std"),
                         static_cast<int>(n), NumberField(j, "halfwidth"));
  }
  return make_distribution(PointsFromJson(Field(j, "points"), "points"),
                           NumbersFromJson(Field(j, "probs"), "probs"));
}

std::string source_to_json(const DiscreteDistribution& dist) {
  return DistributionToJson(dist).dump() + "\n";
}

std::optional<DiscreteDistribution> builtin_source(const std::string& name) {
  if (name == "builtin:u4") return uniform_1d({0.0, 1.0, 2.0, 3.0});
  if (name == "builtin:u2") return uniform_1d({0.0, 1.0});
  if (name == "builtin:gauss33") return gaussian_grid(0.0, 1.0, 33, 4.0);
  return std::nullopt;
}

std::string codec_to_json(const Codec& codec) {
  json j;
  j["K"] = codec.encoder.K();
  j["assignment"] = codec.encoder.assignment();
  j["gd"] = PointsToJson(codec.gd.table);
  if (codec.gp) {
    j["gp"] = json{{"support", PointsToJson(codec.gp->out_support())},
                   {"rows", codec.gp->rows()}};
  }
  return j.dump() + "\n";
}

Codec parse_codec_json(const std::string& text) {
  const json j = Parse(text);
  const json& K = Field(j, "K");
  if (!K.is_number_unsigned()) Fail(ErrorKind::kIo, "\"K\" must be a positive integer");
  const json& assignment = Field(j, "assignment");
  if (!assignment.is_array()) Fail(ErrorKind::kIo, "\"assignment\" must be an array");
  std::vector<std::size_t> codes;
  for (const json& v : assignment) {
    if (!v.is_number_unsigned()) Fail(ErrorKind::kIo, "assignment entries must be codes");
    codes.push_back(v.get<std::size_t>());
  }
  Codec codec;
  codec.encoder = Encoder(std::move(codes), K.get<std::size_t>());
  codec.gd.table = PointsFromJson(Field(j, "gd"), "gd");
  if (codec.gd.K() != codec.encoder.K()) {
    Fail(ErrorKind::kIo, "\"gd\" must have K entries");
  }
  if (j.contains("gp")) {
    const json& gp = j.at("gp");
    std::vector<std::vector<double>> rows;
    const json& jrows = Field(gp, "rows");
    if (!jrows.is_array()) Fail(ErrorKind::kIo, "\"rows\" must be an array");
    for (const json& r : jrows) rows.push_back(NumbersFromJson(r, "rows"));
    codec.gp = StochasticDecoder(PointsFromJson(Field(gp, "support"), "support"),
                                 std::move(rows));
    if (codec.gp->K() != codec.encoder.K()) {
      Fail(ErrorKind::kIo, "\"gp\" must have K rows");
    }
  }
  return codec;
}

std::string plan_to_json(const TransportPlan& plan) {
  json pi = json::array();
  for (Eigen::Index r = 0; r < plan.pi.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < plan.pi.cols(); ++c) row.push_back(plan.pi(r, c));
    pi.push_back(std::move(row));
  }
  json j{{"order", plan.order},
         {"cost", plan.cost},
         {"row", DistributionToJson(plan.row)},
         {"col", DistributionToJson(plan.col)},
         {"pi", std::move(pi)}};
  return j.dump();
}

std::string FormatNumber(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string sweep_csv(const std::vector<TradeoffPoint>& points) {
  std::string out = "alpha,D_measured,P_measured,D_predicted,P_predicted,D_d,P_d\n";
  for (const TradeoffPoint& p : points) {
    out += FormatNumber(p.alpha) + "," + FormatNumber(p.D_measured) + "," +
           FormatNumber(p.P_measured) + "," + FormatNumber(p.D_predicted) + "," +
           FormatNumber(p.P_predicted) + "," + FormatNumber(p.D_d) + "," +
           FormatNumber(p.P_d) + "\n";
  }
  return out;
}

std::string phase_csv(const std::vector<AugmentedSolution>& rows) {
  std::string out = "lambda,w1_gap,mean_dev,mse,objective,flag\n";
  for (const AugmentedSolution& s : rows) {
    out += FormatNumber(s.lambda) + "," + FormatNumber(s.w1_gap) + "," +
           FormatNumber(s.mean_dev) + "," + FormatNumber(s.mse) + "," +
           FormatNumber(s.objective) + "," + ToString(s.flag) + "\n";
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorKind::kIo, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) Fail(ErrorKind::kIo, "error reading " + path);
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorKind::kIo, "cannot open " + path + " for writing");
  out << content;
  out.flush();
  if (!out) Fail(ErrorKind::kIo, "error writing " + path);
}

}  // namespace dplab::io
