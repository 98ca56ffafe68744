// Copyright 2026 The ginvq Authors
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


#include "test_util.hpp"

namespace ginvq {
namespace {

TEST(MatrixJson, RoundTrip) {
  const CMatrix m{{cplx{1.0, -2.0}, 0.5}, {cplx{0.0, 1e-17}, -3.25}};
  const json j = matrix_to_json(m);
  EXPECT_EQ(j.dump(), "[[[1.0,-2.0],[0.5,0.0]],[[0.0,1e-17],[-3.25,0.0]]]");
  EXPECT_EQ(matrix_from_json(j), m);
}

TEST(MatrixJson, RejectsMalformed) {
  EXPECT_THROW(matrix_from_json(json::parse("{}")), FormatError);
  EXPECT_THROW(matrix_from_json(json::parse("[1,2]")), FormatError);
  EXPECT_THROW(matrix_from_json(json::parse("[[[1,0]],[[1,0],[2,0]]]")), FormatError);
  EXPECT_THROW(matrix_from_json(json::parse("[[[1,0,0]]]")), FormatError);
  EXPECT_THROW(matrix_from_json(json::parse("[[[\"1\",0]]]")), FormatError);
  EXPECT_EQ(matrix_from_json(json::parse("[]")).rows(), 0u);
}

TEST(ChannelJson, KrausAndSuperForms) {
  const Channel ad = amplitude_damping(0.3);
  const Channel back = channel_from_json(channel_to_json(ad));
  EXPECT_TRUE(back.kraus().has_value());
  EXPECT_EQ(back.super(), ad.super());

  const Channel sup = Channel::from_super(2, 2, depolarizing(2, 0.4).super());
  const json j = channel_to_json(sup);
  EXPECT_TRUE(j.contains("super"));
  EXPECT_FALSE(j.contains("kraus"));
  EXPECT_EQ(channel_from_json(j).super(), sup.super());
}

TEST(ChannelJson, Errors) {
  EXPECT_THROW(channel_from_json(json::parse("[]")), FormatError);
  EXPECT_THROW(channel_from_json(json::parse(R"({"d_out":1,"kraus":[[[[1,0]]]]})")), FormatError);
  EXPECT_THROW(channel_from_json(json::parse(R"({"d_in":1,"d_out":1})")), FormatError);
  EXPECT_THROW(channel_from_json(json::parse(R"({"d_in":"1","d_out":1,"kraus":[[[[1,0]]]]})")), FormatError);
  EXPECT_THROW(channel_from_json(json::parse(R"({"d_in":2,"d_out":2,"kraus":[[[[1,0]]]]})")), DimensionError);
  EXPECT_THROW(channel_from_json(json::parse(R"({"d_in":0,"d_out":1,"kraus":[[[[1,0]]]]})")), DimensionError);
  EXPECT_THROW(channel_from_json(json::parse(R"({"d_in":2,"d_out":2,"super":[[[1,0]]]})")), DimensionError);
  EXPECT_NO_THROW(channel_from_json(json::parse(R"({"d_in":1,"d_out":1,"kraus":[[[[1,0]]]],"note":"x"})")));
}

TEST(ParseJsonText, Malformed) {
  EXPECT_THROW(parse_json_text("{\"d_in\": 2,"), FormatError);
  EXPECT_THROW(read_json_file("/nonexistent/file.json"), FormatError);
}

TEST(ReportJson, GinvReportFields) {
  const GinvReport r = drazin_report(CMatrix::diag({2.0, 0.0}));
  const json j = ginv_report_to_json(r);
  EXPECT_EQ(j.at("kind"), "drazin");
  EXPECT_EQ(j.at("index"), 1);
  EXPECT_TRUE(j.at("residuals").contains("D1"));
  const json p = property_report_to_json(properties(depolarizing(2, 2.0)));
  EXPECT_EQ(p.at("cp").at("verdict"), false);
  EXPECT_EQ(p.at("tp").at("verdict"), true);
}

}  // namespace
}  // namespace ginvq
