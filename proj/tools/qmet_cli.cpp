//  Copyright 2026 The qmet Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#include <cstdlib>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "qmet/scenario.hpp"

namespace {

// flags fall back to QMET_* environment variables
std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v == nullptr ? fallback : v;
}

int emit(const std::vector<qmet::Report>& reports, const std::string& format) {
  if (format == "structured") {
    if (reports.size() == 1)
      std::cout << qmet::report_to_json(reports[0]);
    else
      std::cout << qmet::reports_to_json(reports);
  } else {
    for (const auto& r : reports) std::cout << qmet::report_to_text(r);
  }
  for (const auto& r : reports)
    if (!r.passed()) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qmet: quantale-valued metric spaces, robust topologies and "
               "the Hausdorff-Smyth powerspace monads"};
  app.require_subcommand(1);

  qmet::RunOptions opts;
  opts.seed = static_cast<std::uint32_t>(
      std::stoul(env_or("QMET_SEED", "1")));
  std::string format = env_or("QMET_FORMAT", "text");
  bool all = false;
  std::string target;

  auto* run = app.add_subcommand("run", "run a builtin or a scenario file");
  run->add_option("target", target, "builtin name or scenario file path");
  run->add_flag("--all", all, "run the full builtin set");
  run->add_option("--seed", opts.seed, "random seed (QMET_SEED)");
  run->add_option("--cap-carrier", opts.caps.carrier,
                  "carrier size cap (QMET_CAP_CARRIER)");
  run->add_option("--cap-points", opts.caps.points,
                  "powerspace point cap (QMET_CAP_POINTS)");
  run->add_option("--format", format, "text | structured (QMET_FORMAT)");
  run->add_flag("--fail-fast", opts.fail_fast,
                "stop at the first failing check (QMET_FAIL_FAST)");

  auto* list = app.add_subcommand("list", "list builtin scenarios");
  auto* describe =
      app.add_subcommand("describe", "describe a builtin scenario");
  std::string desc_target;
  describe->add_option("name", desc_target, "builtin name")->required();

  CLI11_PARSE(app, argc, argv);

  if (const char* v = std::getenv("QMET_CAP_CARRIER"))
    opts.caps.carrier = std::stoull(v);
  if (const char* v = std::getenv("QMET_CAP_POINTS"))
    opts.caps.points = std::stoull(v);
  if (std::getenv("QMET_FAIL_FAST") != nullptr) opts.fail_fast = true;

  try {
    if (list->parsed()) {
      for (const auto& name : qmet::list_builtins())
        std::cout << name << "\n";
      return 0;
    }
    if (describe->parsed()) {
      std::cout << qmet::describe_builtin(desc_target);
      return 0;
    }
    // run
    if (all) return emit(qmet::run_all_builtins(opts), format);
    if (target.empty()) {
      std::cerr << "error: run needs a target or --all\n";
      return 2;
    }
    const auto& names = qmet::list_builtins();
    bool is_builtin =
        std::find(names.begin(), names.end(), target) != names.end();
    if (is_builtin)
      return emit({qmet::run_builtin(target, opts)}, format);
    if (!std::filesystem::exists(target)) {
      std::cerr << "error: '" << target
                << "' is neither a builtin nor a scenario file\n";
      return 2;
    }
    auto sc = qmet::parse_scenario_file(target);
    return emit({qmet::run_scenario(sc, opts)}, format);
  } catch (const qmet::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
