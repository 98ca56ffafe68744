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

// Subcommand bodies for the ginvq tool. Each takes its inputs explicitly,
// writes to the given streams and returns the process exit code.
//
// Exit codes:
//   0  success
//   1  theorem suite did not reach its expected verdicts
//   2  malformed JSON, unreadable file or bad parameter
//   3  dimension mismatch
//   4  group inverse does not exist (Drazin index > 1)
//   5  an inverse failed its axiom check
//   6  mitigate: channel is not trace preserving

#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>

#include "ginvq/ginvq.hpp"

namespace ginvq::cli {

enum ExitCode : int {
  kOk = 0,
  kTheoremFailure = 1,
  kBadInput = 2,
  kDimension = 3,
  kNoGroupInverse = 4,
  kResidual = 5,
  kNotTp = 6,
};

enum class OutputFormat { json, text };

struct CliConfig {
  Tolerances tolerances;
  std::uint64_t seed = kDefaultSuiteSeed;
  OutputFormat output = OutputFormat::json;
};

namespace detail {

inline bool is_matrix_like(const json& j) {
  return j.is_array() && std::all_of(j.begin(), j.end(), [](const json& e) { return !e.is_object(); });
}

// "path: value" lines. Numbers go through the same serializer as JSON output.
inline void flatten(const json& j, const std::string& path, std::ostream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
  } else if (j.is_array() && !is_matrix_like(j)) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out << path << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

}  // namespace detail

inline void emit(const json& doc, const CliConfig& cfg, std::ostream& out) {
  if (cfg.output == OutputFormat::json)
    out << doc.dump(2) << "\n";
  else
    detail::flatten(doc, "", out);
}

/// Maps library exceptions to exit codes with a one-line diagnostic.
template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << "\n";
    return kDimension;
  } catch (const IndexTooLarge& e) {
    err << "error: " << e.what() << "\n";
    return kNoGroupInverse;
  } catch (const ResidualError& e) {
    err << "error: " << e.what() << "\n";
    return kResidual;
  } catch (const NotHermitian& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kResidual;
  }
}

inline int cmd_check(const std::string& channel_file, const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Channel ch = read_channel_file(channel_file);
    const PropertyReport p = properties(ch, cfg.tolerances);
    json doc{{"d_in", ch.d_in()}, {"d_out", ch.d_out()}};
    doc.update(property_report_to_json(p));
    doc["cptp"] = p.cptp();
    doc["ucptp"] = p.ucptp();
    emit(doc, cfg, out);
    return kOk;
  });
}

/// Inverse channel document: {"d_in", "d_out", "super", "report"}. The
/// inverse maps the output system back to the input system.
inline json inverse_document(const Channel& ch, const GinvReport& rep) {
  json doc = channel_to_json(Channel::from_super(ch.d_out(), ch.d_in(), rep.inverse));
  doc["report"] = ginv_report_to_json(rep);
  return doc;
}

inline int cmd_inverse(const std::string& channel_file, const std::string& kind_name,
                       const std::optional<std::string>& out_file, const CliConfig& cfg, std::ostream& out,
                       std::ostream& err) {
  return guarded(err, [&] {
    const InverseKind kind = parse_inverse_kind(kind_name);
    const Channel ch = read_channel_file(channel_file);
    if ((kind == InverseKind::drazin || kind == InverseKind::group) && !ch.is_endo())
      throw DimensionError(std::string(to_string(kind)) + " inverse needs d_in == d_out");
    const GinvReport rep = generalized_inverse(kind, ch.super(), cfg.tolerances);
    const json doc = inverse_document(ch, rep);
    if (out_file) {
      std::ofstream f(*out_file);
      if (!f) throw FormatError("cannot write " + *out_file);
      f << doc.dump(2) << "\n";
      emit(doc.at("report"), cfg, out);
    } else {
      emit(doc, cfg, out);
    }
    return kOk;
  });
}

inline int cmd_theorems(std::size_t count, const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::vector<TheoremReport> reports = run_suite(cfg.seed, count, cfg.tolerances);
    const bool passed = suite_passes(reports);
    const json doc{{"seed", cfg.seed}, {"instance_count", count}, {"reports", to_json(reports)}, {"passed", passed}};
    emit(doc, cfg, out);
    for (const auto& r : reports)
      if (!report_passes(r))
        err << r.theorem_id << ": " << to_string(r.verdict) << " (expected " << to_string(expected_verdict(r.theorem_id))
            << ")\n";
    return passed ? kOk : kTheoremFailure;
  });
}

struct MitigationResult {
  double ideal = 0.0;
  double noisy = 0.0;
  double mitigated = 0.0;
  std::size_t drazin_index = 0;
  bool recovered = false;
  std::optional<std::string> caveat;
};

/// Tr(O rho), Tr(O Phi^n(rho)) and Tr(O (Phi^D)^n Phi^n(rho)).
inline MitigationResult mitigate(const Channel& ch, const CMatrix& rho, const CMatrix& obs, std::size_t n,
                                 const Tolerances& tol) {
  if (!ch.is_endo()) throw DimensionError("mitigate: channel must have d_in == d_out");
  const std::size_t d = ch.d_in();
  if (rho.rows() != d || rho.cols() != d) throw DimensionError("mitigate: state is " + rho.shape_str());
  if (obs.rows() != d || obs.cols() != d) throw DimensionError("mitigate: observable is " + obs.shape_str());
  if (std::abs(trace(rho) - 1.0) > tol.residual_atol) throw InvalidArgument("mitigate: state trace is not 1");
  if (eigh(rho, tol).eigenvalues.front() < -tol.psd_atol) throw InvalidArgument("mitigate: state is not PSD");
  const double herm = hermiticity_residual(obs);
  if (herm > tol.residual_atol) throw NotHermitian(herm);

  const DrazinResult dz = drazin_inverse(ch.super(), tol);
  const CMatrix noise = matpow(ch.super(), n);
  const CMatrix undo = matpow(dz.inverse, n);
  const CMatrix noisy = noise * vec(rho);
  const CMatrix mitigated = undo * noisy;
  auto expect = [&](const CMatrix& v) { return trace(obs * unvec(v, d, d)).real(); };

  MitigationResult r;
  r.ideal = trace(obs * rho).real();
  r.noisy = expect(noisy);
  r.mitigated = expect(mitigated);
  r.drazin_index = dz.index;
  r.recovered = std::abs(r.mitigated - r.ideal) <= tol.residual_atol;
  if (dz.index > 0)
    r.caveat = "channel is singular (Drazin index " + std::to_string(dz.index) +
               "); only the component of the state in the range of S^" + std::to_string(dz.index) +
               " is recovered";
  return r;
}

inline int cmd_mitigate(const std::string& channel_file, const std::string& state_file,
                        const std::string& observable_file, std::size_t n, const CliConfig& cfg, std::ostream& out,
                        std::ostream& err) {
  return guarded(err, [&] {
    const Channel ch = read_channel_file(channel_file);
    const CMatrix rho = read_matrix_file(state_file);
    const CMatrix obs = read_matrix_file(observable_file);
    if (!ch.is_endo()) throw DimensionError("mitigate: channel must have d_in == d_out");
    const ResidualVerdict tp = is_tp(ch, cfg.tolerances);
    if (!tp.verdict) {
      err << "error: channel is not trace preserving (residual " << json(tp.residual).dump() << ")\n";
      return static_cast<int>(kNotTp);
    }
    const MitigationResult r = mitigate(ch, rho, obs, n, cfg.tolerances);
    const json doc{{"repetitions", n},
                   {"ideal", r.ideal},
                   {"noisy", r.noisy},
                   {"mitigated", r.mitigated},
                   {"noisy_error", std::abs(r.noisy - r.ideal)},
                   {"mitigated_error", std::abs(r.mitigated - r.ideal)},
                   {"drazin_index", r.drazin_index},
                   {"recovered", r.recovered},
                   {"caveat", r.caveat ? json(*r.caveat) : json(nullptr)}};
    emit(doc, cfg, out);
    return static_cast<int>(kOk);
  });
}

/// kind "cptp" uses `param` as the environment dimension, "ucptp" as the
/// number of unitaries.
inline int cmd_random(const std::string& kind, std::size_t d, std::size_t param, const CliConfig& cfg,
                      std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (d == 0 || param == 0) throw InvalidArgument("random: dimensions must be positive");
    Channel ch = kind == "cptp"    ? random_cptp(d, d, param, cfg.seed)
                 : kind == "ucptp" ? random_ucptp(d, param, cfg.seed)
                                   : throw InvalidArgument("random: kind must be cptp or ucptp");
    // Always JSON: the output is a channel file for the other commands.
    out << channel_to_json(ch).dump(2) << "\n";
    return kOk;
  });
}

}  // namespace ginvq::cli
