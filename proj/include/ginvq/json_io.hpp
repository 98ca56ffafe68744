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

/**
 * JSON encoding of matrices, channels and inverse reports.
 *
 * Matrix: row-major nested arrays of [re, im] pairs, e.g. [[[1,0],[0,0]],[[0,0],[1,0]]].
 * Channel: {"d_in": n, "d_out": m, "kraus": [matrix, ...]}
 *      or  {"d_in": n, "d_out": m, "super": matrix}
 * Unknown members are ignored on input.
 */

#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"  // nlohmann/json single header

#include "ginvq/channels.hpp"
#include "ginvq/errors.hpp"
#include "ginvq/ginv.hpp"
#include "ginvq/linalg.hpp"

namespace ginvq {

using json = nlohmann::json;

inline json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline CMatrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw FormatError("matrix must be an array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  std::vector<cplx> entries;
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = j[i];
    if (!row.is_array()) throw FormatError("matrix row " + std::to_string(i) + " is not an array");
    if (i == 0) cols = row.size();
    if (row.size() != cols) throw FormatError("matrix rows have different lengths");
    for (const json& z : row) {
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
        throw FormatError("matrix entries must be [re, im] number pairs");
      entries.emplace_back(z[0].get<double>(), z[1].get<double>());
    }
  }
  try {
    return CMatrix(rows, cols, std::move(entries));
  } catch (const NumericError& e) {
    throw FormatError(e.what());
  }
}

inline json channel_to_json(const Channel& ch) {
  json out{{"d_in", ch.d_in()}, {"d_out", ch.d_out()}};
  if (ch.kraus()) {
    json ks = json::array();
    for (const auto& k : *ch.kraus()) ks.push_back(matrix_to_json(k));
    out["kraus"] = std::move(ks);
  } else {
    out["super"] = matrix_to_json(ch.super());
  }
  return out;
}

/// Throws FormatError for structural problems and DimensionError when the
/// declared dimensions disagree with the matrices.
inline Channel channel_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("channel document must be a JSON object");
  auto dim = [&](const char* key) -> std::size_t {
    if (!j.contains(key)) throw FormatError(std::string("channel is missing \"") + key + "\"");
    const json& v = j.at(key);
    if (!v.is_number_integer() && !v.is_number_unsigned()) throw FormatError(std::string(key) + " must be an integer");
    const auto n = v.get<long long>();
    if (n <= 0) throw DimensionError(std::string(key) + " must be positive");
    return static_cast<std::size_t>(n);
  };
  const std::size_t d_in = dim("d_in");
  const std::size_t d_out = dim("d_out");
  const bool has_kraus = j.contains("kraus");
  const bool has_super = j.contains("super");
  if (!has_kraus && !has_super) throw FormatError("channel needs \"kraus\" or \"super\"");

  if (has_kraus) {
    const json& ks = j.at("kraus");
    if (!ks.is_array() || ks.empty()) throw FormatError("\"kraus\" must be a non-empty array of matrices");
    std::vector<CMatrix> kraus;
    for (const json& k : ks) {
      CMatrix m = matrix_from_json(k);
      if (m.rows() != d_out || m.cols() != d_in)
        throw DimensionError("Kraus operator " + m.shape_str() + " for d_in=" + std::to_string(d_in) +
                             ", d_out=" + std::to_string(d_out));
      kraus.push_back(std::move(m));
    }
    Channel ch = Channel::from_kraus(std::move(kraus));
    if (has_super) {
      const CMatrix s = matrix_from_json(j.at("super"));
      if (s.rows() != ch.super().rows() || s.cols() != ch.super().cols() ||
          fro_dist(s, ch.super()) > 1e-8)
        throw DimensionError("\"super\" disagrees with \"kraus\"");
    }
    return ch;
  }
  return Channel::from_super(d_in, d_out, matrix_from_json(j.at("super")));
}

inline json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

inline Channel read_channel_file(const std::string& path) { return channel_from_json(read_json_file(path)); }

/// A bare matrix, or an object with a "matrix" member.
inline CMatrix read_matrix_file(const std::string& path) {
  const json j = read_json_file(path);
  if (j.is_object()) {
    if (!j.contains("matrix")) throw FormatError("matrix document needs a \"matrix\" member");
    return matrix_from_json(j.at("matrix"));
  }
  return matrix_from_json(j);
}

inline json ginv_report_to_json(const GinvReport& r) {
  json out{{"kind", std::string(to_string(r.kind))}, {"residuals", r.residuals}};
  out["index"] = r.index ? json(*r.index) : json(nullptr);
  out["witness_k"] = r.witness_k ? json(*r.witness_k) : json(nullptr);
  if (r.double_inverse_residual) out["double_inverse_residual"] = *r.double_inverse_residual;
  if (r.formula_gap) out["formula_gap"] = *r.formula_gap;
  return out;
}

inline json property_report_to_json(const PropertyReport& p) {
  return json{
      {"cp", {{"verdict", p.cp.verdict},
              {"min_choi_eigenvalue", p.cp.min_choi_eigenvalue},
              {"hermiticity_residual", p.cp.hermiticity_residual}}},
      {"tp", {{"verdict", p.tp.verdict}, {"residual", p.tp.residual}}},
      {"unital", {{"verdict", p.unital.verdict}, {"residual", p.unital.residual}}},
  };
}

}  // namespace ginvq
