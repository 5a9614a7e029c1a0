// Acceptance suite: runs the full builtin scenario set and grades the
// project's acceptance criteria, one line per criterion.  Exits non-zero if
// any criterion fails.

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <vector>

#include "qmet/scenario.hpp"

using namespace qmet;

namespace {

int failures = 0;

double report_seconds(const Report& r) {
  double ms = 0;
  for (const auto& c : r.checks) ms += c.millis;
  return ms / 1000.0;
}

std::size_t leading_count(const std::string& detail) {
  std::istringstream in(detail);
  std::size_t n = 0;
  in >> n;
  return n;
}

void grade(int id, const std::string& title,
           const std::vector<const Report*>& reports, double budget_s,
           const std::string& extra_note = "", bool extra_ok = true) {
  bool ok = extra_ok;
  double seconds = 0;
  std::vector<std::string> problems;
  for (const auto* r : reports) {
    seconds += report_seconds(*r);
    for (const auto& c : r->checks)
      if (c.status != CheckStatus::kPass)
        problems.push_back(c.name + ": " + c.detail);
  }
  if (!problems.empty()) ok = false;
  bool in_budget = seconds < budget_s;
  if (!in_budget) ok = false;

  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << std::setw(2) << id
            << ": " << title << " (" << std::fixed << std::setprecision(2)
            << seconds << " s < " << budget_s << " s)\n";
  for (const auto& p : problems) std::cout << "       - " << p << "\n";
  if (!extra_ok && !extra_note.empty())
    std::cout << "       - " << extra_note << "\n";
  if (!ok) ++failures;
}

}  // namespace

int main() {
  RunOptions opts;
  if (const char* s = std::getenv("QMET_SEED"))
    opts.seed = static_cast<std::uint32_t>(std::stoul(s));

  auto wall0 = std::chrono::steady_clock::now();
  std::map<std::string, Report> runs;
  auto first_pass = run_all_builtins(opts);
  for (auto& r : first_pass) runs.emplace(r.scenario, std::move(r));
  auto get = [&](const std::string& name) { return &runs.at(name); };

  grade(1, "quantale laws and mutation detection", {get("quantale-laws")}, 5);
  grade(2, "way-below oracle", {get("way-below-oracle")}, 10);
  grade(3, "interpolation lemmas", {get("interpolation")}, 10);
  grade(4, "D(P) construction and algebra lifting", {get("d-construction"),
                                                     get("inequation-lift")},
        30);
  grade(5, "Met arrow suite", {get("met-arrows")}, 60);
  grade(6, "extensive metrization on 3 points", {get("metrize-all-3pt")}, 30);
  grade(7, "robustness calculus", {get("br-properties"),
                                   get("robust-specialization")},
        60);
  grade(8, "main theorem (robust = Hausdorff-Smyth)",
        {get("hausdorff-theorem")}, 120);
  {
    std::size_t instances = 0;
    for (const auto* r : {get("monad-laws"), get("transformer-laws")})
      for (const auto& c : r->checks)
        if (c.status == CheckStatus::kPass) instances += leading_count(c.detail);
    grade(9, "monad suites (>= 500 law instances)",
          {get("monad-laws"), get("transformer-laws")}, 60,
          "only " + std::to_string(instances) + " law instances",
          instances >= 500);
  }
  grade(10, "paper counterexample decider", {get("sigma2-counterexample")}, 5);
  grade(11, "linear quantale remark", {get("linear-iso-remark")}, 10);

  // two full runs with the same seed must serialize identically
  {
    auto second_pass = run_all_builtins(opts);
    auto json1 = reports_to_json(first_pass);
    // first_pass was moved from; rebuild the vector in builtin order
    std::vector<Report> ordered;
    for (const auto& name : list_builtins()) ordered.push_back(runs.at(name));
    json1 = reports_to_json(ordered);
    auto json2 = reports_to_json(second_pass);
    auto wall1 = std::chrono::steady_clock::now();
    double total =
        std::chrono::duration_cast<std::chrono::milliseconds>(wall1 - wall0)
            .count() /
        1000.0;
    bool identical = json1 == json2;
    bool in_budget = total < 300.0;
    bool ok = identical && in_budget;
    std::cout << (ok ? "PASS" : "FAIL")
              << " criterion 12: determinism, byte-identical structured "
                 "reports ("
              << std::fixed << std::setprecision(2) << total
              << " s < 300 s total)\n";
    if (!identical)
      std::cout << "       - reports differ between identically seeded runs\n";
    if (!ok) ++failures;
  }

  std::cout << (failures == 0 ? "acceptance: all criteria passed\n"
                              : "acceptance: " + std::to_string(failures) +
                                    " criterion(s) failed\n");
  return failures == 0 ? 0 : 1;
}
