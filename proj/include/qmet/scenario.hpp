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

#ifndef QMET_SCENARIO_HPP_
#define QMET_SCENARIO_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "qmet/powerspace.hpp"

namespace qmet {

struct CheckDecl {
  std::string name;
  std::map<std::string, std::string> params;
};

/// A scenario: named declarations plus a list of checks.  Line-oriented text
/// format, one declaration per line:
///
///   scenario <name>
///   quantale <id> <constructor-expr>     # e.g. product:sigma,sigma
///   poset <id> <label>...
///   leq <poset> <a> <b>                  # generator pair; closure is taken
///   monoid <id> <poset> <unit-label>
///   mop <monoid> <a> <b> <c>             # a (x) b = c
///   algebra <id> <poset>
///   aop <algebra> <opname> <arity>
///   aentry <algebra> <opname> <arg>... <result>
///   space <id> <quantale> <point>...
///   dist <space> <from> <to> <element-label>
///   topology <id> <point>...
///   open <topology> [<point>...]         # listed subsets generate it
///   arrow <id> <src-space> <tgt-space>
///   amap <arrow> <from-point> <to-point>
///   morphism <id> <src-quantale> <tgt-quantale>
///   qmap <morphism> <from-element> <to-element>
///   cap <carrier|points|opens|metrize_opens> <value>
///   seed <value>
///   check <name> [key=value ...]
///
/// '#' starts a comment; blank lines are ignored.
struct Scenario {
  struct QuantaleDecl {
    std::string id, expr;
  };
  struct PosetDecl {
    std::string id;
    std::vector<std::string> elems;
    std::vector<std::pair<std::string, std::string>> leqs;
  };
  struct MonoidDecl {
    std::string id, poset, unit;
    std::vector<std::array<std::string, 3>> triples;
  };
  struct AlgebraDecl {
    std::string id, poset;
    std::vector<std::pair<std::string, std::size_t>> ops;
    // opname, arguments..., result
    std::vector<std::vector<std::string>> entries;
  };
  struct SpaceDecl {
    std::string id, quantale;
    std::vector<std::string> points;
    std::vector<std::tuple<std::string, std::string, std::string>> dists;
  };
  struct ArrowDecl {
    std::string id, src, tgt;
    std::vector<std::pair<std::string, std::string>> maps;
  };
  struct TopologyDecl {
    std::string id;
    std::vector<std::string> points;
    std::vector<std::vector<std::string>> opens;
  };
  struct MorphismDecl {
    std::string id, src, tgt;
    std::vector<std::pair<std::string, std::string>> maps;
  };

  std::string name;
  std::vector<QuantaleDecl> quantales;
  std::vector<PosetDecl> posets;
  std::vector<MonoidDecl> monoids;
  std::vector<AlgebraDecl> algebras;
  std::vector<SpaceDecl> spaces;
  std::vector<ArrowDecl> arrows;
  std::vector<TopologyDecl> topologies;
  std::vector<MorphismDecl> morphisms;
  std::vector<CheckDecl> checks;
  Caps caps;
  std::optional<std::uint32_t> seed_override;
};

struct RunOptions {
  std::uint32_t seed = 1;
  bool fail_fast = false;
  Caps caps;
};

enum class CheckStatus { kPass, kFail, kSkip };

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::kPass;
  std::string strategy;
  std::string detail;
  double millis = 0;  // text report only; excluded from the structured form
};

struct Report {
  std::string scenario;
  std::uint32_t seed = 0;
  std::vector<CheckResult> checks;

  bool passed() const;
};

/// Resolved scenario declarations.
struct Env {
  std::map<std::string, QuantalePtr> quantales;
  std::map<std::string, FinPoset> posets;
  std::map<std::string, OrderedMonoid> monoids;
  std::map<std::string, TermAlgebra> algebras;
  std::map<std::string, SpacePtr> spaces;
  std::map<std::string, MetArrow> arrows;
  std::map<std::string, FinTopology> topologies;
  std::map<std::string, QuantaleMorphism> morphisms;
  Caps caps;
};

using CheckFn = CheckResult (*)(const Env&, const CheckDecl&,
                                std::uint32_t seed);

/// Registered check predicates, by name.
const std::map<std::string, CheckFn>& check_registry();

/// Parses a constructor expression such as "chain_plus:3" or
/// "product:(product:sigma,sigma),sigma".  Poset and monoid identifiers
/// resolve through env when given.
QuantalePtr make_quantale_expr(const std::string& expr, const Env* env,
                               const Caps& caps);

Scenario parse_scenario_text(const std::string& text,
                             const std::string& origin);
Scenario parse_scenario_file(const std::string& path);

Env build_env(const Scenario& sc, const RunOptions& opts);
Report run_scenario(const Scenario& sc, const RunOptions& opts);

std::vector<std::string> list_builtins();
const Scenario& builtin_scenario(const std::string& name);
std::string describe_builtin(const std::string& name);
Report run_builtin(const std::string& name, const RunOptions& opts);
std::vector<Report> run_all_builtins(const RunOptions& opts);

std::string report_to_text(const Report& r);
std::string report_to_json(const Report& r);
std::string reports_to_json(const std::vector<Report>& rs);

/// Per-check deterministic rng stream derived from the run seed.
Lcg check_rng(std::uint32_t seed, const std::string& check_name);

}  // namespace qmet

#endif  // QMET_SCENARIO_HPP_
