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

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cli_commands.hpp"

int main(int argc, char** argv) {
  using namespace ginvq::cli;

  CLI::App app{"Generalized inverses of quantum channels"};
  app.require_subcommand(1);
  app.fallthrough();

  CliConfig cfg;
  std::string output = "json";
  app.add_option("--rank-rtol", cfg.tolerances.rank_rtol, "relative singular-value cutoff")->capture_default_str();
  app.add_option("--atol", cfg.tolerances.residual_atol, "absolute residual tolerance")->capture_default_str();
  app.add_option("--psd-atol", cfg.tolerances.psd_atol, "Choi eigenvalue floor")->capture_default_str();
  app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  app.add_option("--output", output, "output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  std::string channel_file, state_file, observable_file, kind = "mp", random_kind;
  std::optional<std::string> out_file;
  std::size_t count = ginvq::kDefaultInstanceCount, repetitions = 1, dim = 2, env = 2, unitaries = 3;

  auto* check = app.add_subcommand("check", "CP/TP/unital verdicts for a channel file");
  check->add_option("channel", channel_file, "channel JSON")->required();

  auto* inverse = app.add_subcommand("inverse", "generalized inverse of a channel file");
  inverse->add_option("channel", channel_file, "channel JSON")->required();
  inverse->add_option("--kind", kind, "mp | drazin | group | dagger-drazin")
      ->check(CLI::IsMember({"mp", "drazin", "group", "dagger-drazin"}))
      ->capture_default_str();
  inverse->add_option("-o,--out", out_file, "write the inverse channel here; print only the report");

  auto* theorems = app.add_subcommand("theorems", "run the randomized theorem suite");
  theorems->add_option("--count", count, "instances per suite item")->capture_default_str();

  auto* mitigate = app.add_subcommand("mitigate", "Drazin-inverse error mitigation demo");
  mitigate->add_option("channel", channel_file, "channel JSON")->required();
  mitigate->add_option("state", state_file, "density matrix JSON")->required();
  mitigate->add_option("observable", observable_file, "observable JSON")->required();
  mitigate->add_option("-n,--repetitions", repetitions, "channel applications")->capture_default_str();

  auto* random = app.add_subcommand("random", "emit a random channel file");
  random->add_option("kind", random_kind, "cptp | ucptp")->required()->check(CLI::IsMember({"cptp", "ucptp"}));
  random->add_option("-d,--dim", dim, "Hilbert space dimension")->capture_default_str();
  random->add_option("--env", env, "environment dimension (cptp)")->capture_default_str();
  random->add_option("-m,--unitaries", unitaries, "number of unitaries (ucptp)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  cfg.output = output == "text" ? OutputFormat::text : OutputFormat::json;
  try {
    cfg.tolerances.validate();
  } catch (const ginvq::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }

  if (*check) return cmd_check(channel_file, cfg, std::cout, std::cerr);
  if (*inverse) return cmd_inverse(channel_file, kind, out_file, cfg, std::cout, std::cerr);
  if (*theorems) return cmd_theorems(count, cfg, std::cout, std::cerr);
  if (*mitigate) return cmd_mitigate(channel_file, state_file, observable_file, repetitions, cfg, std::cout, std::cerr);
  return cmd_random(random_kind, dim, random_kind == "cptp" ? env : unitaries, cfg, std::cout, std::cerr);
}
