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
#include <filesystem>
#include <random>

#include <gtest/gtest.h>

#include "dplab/codec.hpp"
#include "dplab/error.hpp"
#include "test_util.hpp"

namespace dplab::io {
namespace {

TEST(SourceJsonTest, Points) {
  const auto d = parse_source_json(R"({"points": [[3], [0], [1], [2]], "probs": [0.25, 0.25, 0.25, 0.25]})");
  EXPECT_EQ(d, uniform_1d({0, 1, 2, 3}));
  EXPECT_EQ(parse_source_json(source_to_json(d)), d);
}

TEST(SourceJsonTest, GaussianGrid) {
  const auto d = parse_source_json(
      R"({"kind": "gaussian-grid", "mean": 0, "std": 1, "n": 33, "halfwidth": 4})");
  EXPECT_EQ(d, gaussian_grid(0, 1, 33, 4));
  EXPECT_EQ(*builtin_source("builtin:gauss33"), d);
}

TEST(SourceJsonTest, Errors) {
  EXPECT_THROW(parse_source_json("{"), Error);
  EXPECT_THROW(parse_source_json(R"({"points": [[0]]})"), Error);
  EXPECT_THROW(parse_source_json(R"({"kind": "cauchy"})"), Error);
  EXPECT_THROW(parse_source_json(R"({"points": [["a"]], "probs": [1]})"), Error);
  EXPECT_THROW(parse_source_json(R"({"points": [[0], [1]], "probs": [0.6, 0.6]})"), Error);
}

TEST(SourceJsonTest, RoundTripIsBitExact) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const auto d = testing::RandomDistribution(rng, 10, 2, 1e-3);
    const auto back = parse_source_json(source_to_json(d));
    ASSERT_EQ(back.points(), d.points());
    ASSERT_EQ(back.probs(), d.probs());
  }
}

TEST(BuiltinTest, Names) {
  EXPECT_EQ(*builtin_source("builtin:u4"), uniform_1d({0, 1, 2, 3}));
  EXPECT_EQ(*builtin_source("builtin:u2"), uniform_1d({0, 1}));
  EXPECT_FALSE(builtin_source("builtin:u5").has_value());
}

TEST(CodecJsonTest, RoundTrip) {
  const auto g = gaussian_grid(0, 1, 33, 4);
  const auto c = certified_optimal_encoder(g, 4);
  Codec codec{c.encoder, c.decoder, perceptual_decoder_for(g, c.encoder)};
  const std::string text = codec_to_json(codec);
  const Codec back = parse_codec_json(text);
  EXPECT_EQ(back, codec);
  EXPECT_EQ(codec_to_json(back), text);
  Codec bare{c.encoder, c.decoder, std::nullopt};
  EXPECT_EQ(parse_codec_json(codec_to_json(bare)), bare);
  EXPECT_EQ(codec_to_json(bare).find("\"gp\""), std::string::npos);
}

TEST(CodecJsonTest, Errors) {
  EXPECT_THROW(parse_codec_json(R"({"K": 2, "assignment": [0, 2], "gd": [[0], [1]]})"), Error);
  EXPECT_THROW(parse_codec_json(R"({"K": 2, "assignment": [0, 1], "gd": [[0]]})"), Error);
  EXPECT_THROW(parse_codec_json("[]"), Error);
}

TEST(FormatTest, Numbers) {
  EXPECT_EQ(FormatNumber(0.1), "0.10000000000000001");
  EXPECT_EQ(FormatNumber(0.25), "0.25");
  EXPECT_EQ(FormatNumber(0.0), "0");
  EXPECT_EQ(std::stod(FormatNumber(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(CsvTest, Layout) {
  TradeoffPoint p;
  p.alpha = 0.5;
  p.D_measured = 0.3125;
  const std::string csv = sweep_csv({p});
  EXPECT_EQ(csv,
            "alpha,D_measured,P_measured,D_predicted,P_predicted,D_d,P_d\n"
            "0.5,0.3125,0,0,0,0,0\n");
  AugmentedSolution s;
  s.lambda = 1;
  s.flag = PhaseFlag::kIndeterminate;
  EXPECT_EQ(phase_csv({s}),
            "lambda,w1_gap,mean_dev,mse,objective,flag\n1,0,0,0,0,indeterminate\n");
}

TEST(FileTest, ReadWrite) {
  const auto path = std::filesystem::temp_directory_path() / "dplab_io_test.txt";
  write_file(path.string(), "hello\n");
  EXPECT_EQ(read_file(path.string()), "hello\n");
  std::filesystem::remove(path);
  EXPECT_THROW(read_file(path.string()), Error);
  EXPECT_THROW(write_file("/nonexistent-dir/x/y.txt", "z"), Error);
}

}  // namespace
}  // namespace dplab::io
