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

#include "qmet/scenario.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qmet {

bool Report::passed() const {
  for (const auto& c : checks)
    if (c.status == CheckStatus::kFail) return false;
  return true;
}

Lcg check_rng(std::uint32_t seed, const std::string& check_name) {
  std::uint32_t h = 2166136261u;
  for (char c : check_name) {
    h ^= static_cast<unsigned char>(c);
    h *= 16777619u;
  }
  return Lcg(seed * 2654435761u ^ h);
}

// ---- constructor expressions --------------------------------------------------

namespace {

std::vector<std::string> split_args(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
      continue;
    }
    cur += c;
  }
  out.push_back(cur);
  return out;
}

std::string strip_parens(std::string s) {
  while (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
    int depth = 0;
    bool wraps = true;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      if (s[i] == '(') ++depth;
      if (s[i] == ')') --depth;
      if (depth == 0) {
        wraps = false;
        break;
      }
    }
    if (!wraps) break;
    s = s.substr(1, s.size() - 2);
  }
  return s;
}

std::size_t parse_count(const std::string& s, const std::string& what) {
  try {
    return static_cast<std::size_t>(std::stoull(s));
  } catch (const std::exception&) {
    throw Error("unknown-constructor", "bad " + what + " argument: " + s);
  }
}

}  // namespace

QuantalePtr make_quantale_expr(const std::string& raw, const Env* env,
                               const Caps& caps) {
  auto expr = strip_parens(raw);
  auto colon = expr.find(':');
  std::string head = colon == std::string::npos ? expr : expr.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : expr.substr(colon + 1);

  if (head == "sigma") return sigma();
  if (head == "one") return trivial_quantale();
  if (head == "chain_plus") return chain_plus(parse_count(rest, "chain_plus"));
  if (head == "chain_max") return chain_max(parse_count(rest, "chain_max"));
  if (head == "rational_rplus") return rational_rplus();
  if (head == "rational_rmax") return rational_rmax();
  if (head == "relations") return relations(parse_count(rest, "relations"), caps);
  if (head == "product") {
    auto args = split_args(rest);
    if (args.size() != 2)
      throw Error("unknown-constructor", "product takes two arguments");
    return product(make_quantale_expr(args[0], env, caps),
                   make_quantale_expr(args[1], env, caps), caps);
  }
  if (head == "affine_part")
    return affine_part(make_quantale_expr(rest, env, caps));
  if (head == "scott_closed")
    return scott_closed_quantale(make_quantale_expr(rest, env, caps), caps)
        .closed;
  if (head == "pointwise_hom") {
    auto args = split_args(rest);
    if (args.size() != 2 || env == nullptr ||
        env->posets.find(args[0]) == env->posets.end())
      throw Error("unknown-constructor",
                  "pointwise_hom needs a declared poset and a quantale");
    return pointwise_hom(env->posets.at(args[0]),
                         make_quantale_expr(args[1], env, caps), caps);
  }
  if (head == "day_convolution") {
    auto args = split_args(rest);
    if (args.size() != 2 || env == nullptr ||
        env->monoids.find(args[0]) == env->monoids.end())
      throw Error("unknown-constructor",
                  "day_convolution needs a declared monoid and a quantale");
    return day_convolution(env->monoids.at(args[0]),
                           make_quantale_expr(args[1], env, caps), caps);
  }
  if (head == "free_quantale") {
    if (env == nullptr || env->monoids.find(rest) == env->monoids.end())
      throw Error("unknown-constructor",
                  "free_quantale needs a declared monoid");
    return free_quantale(env->monoids.at(rest), caps);
  }
  throw Error("unknown-constructor", "no quantale constructor '" + head + "'");
}

// ---- parsing -------------------------------------------------------------------

namespace {

struct Token {
  std::string text;
  std::size_t line, col;
};

std::vector<std::vector<Token>> tokenize(const std::string& text) {
  std::vector<std::vector<Token>> lines;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<Token> toks;
    std::size_t i = 0;
    while (i < line.size()) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      if (line[i] == '#') break;
      std::size_t start = i;
      while (i < line.size() &&
             !std::isspace(static_cast<unsigned char>(line[i])))
        ++i;
      toks.push_back(Token{line.substr(start, i - start), lineno, start + 1});
    }
    if (!toks.empty()) lines.push_back(std::move(toks));
  }
  return lines;
}

[[noreturn]] void parse_fail(const Token& t, const std::string& msg,
                             const std::string& origin) {
  throw Error("parse-error", origin + ":" + std::to_string(t.line) + ":" +
                                 std::to_string(t.col) + ": " + msg);
}

}  // namespace

Scenario parse_scenario_text(const std::string& text,
                             const std::string& origin) {
  Scenario sc;
  sc.name = "unnamed";
  auto lines = tokenize(text);
  for (const auto& toks : lines) {
    const auto& kw = toks[0];
    auto need = [&](std::size_t n) {
      if (toks.size() < n)
        parse_fail(kw, "'" + kw.text + "' needs at least " +
                           std::to_string(n - 1) + " arguments",
                   origin);
    };
    if (kw.text == "scenario") {
      need(2);
      sc.name = toks[1].text;
    } else if (kw.text == "quantale") {
      need(3);
      sc.quantales.push_back({toks[1].text, toks[2].text});
    } else if (kw.text == "poset") {
      need(3);
      Scenario::PosetDecl d;
      d.id = toks[1].text;
      for (std::size_t i = 2; i < toks.size(); ++i)
        d.elems.push_back(toks[i].text);
      sc.posets.push_back(std::move(d));
    } else if (kw.text == "leq") {
      need(4);
      bool found = false;
      for (auto& d : sc.posets)
        if (d.id == toks[1].text) {
          d.leqs.emplace_back(toks[2].text, toks[3].text);
          found = true;
        }
      if (!found) parse_fail(toks[1], "unknown poset", origin);
    } else if (kw.text == "monoid") {
      need(4);
      sc.monoids.push_back({toks[1].text, toks[2].text, toks[3].text, {}});
    } else if (kw.text == "algebra") {
      need(3);
      sc.algebras.push_back({toks[1].text, toks[2].text, {}, {}});
    } else if (kw.text == "aop") {
      need(4);
      bool found = false;
      for (auto& d : sc.algebras)
        if (d.id == toks[1].text) {
          std::size_t arity = 0;
          try {
            arity = static_cast<std::size_t>(std::stoull(toks[3].text));
          } catch (const std::exception&) {
            parse_fail(toks[3], "arity must be a number", origin);
          }
          d.ops.emplace_back(toks[2].text, arity);
          found = true;
        }
      if (!found) parse_fail(toks[1], "unknown algebra", origin);
    } else if (kw.text == "aentry") {
      need(4);
      bool found = false;
      for (auto& d : sc.algebras)
        if (d.id == toks[1].text) {
          std::vector<std::string> entry;
          for (std::size_t i = 2; i < toks.size(); ++i)
            entry.push_back(toks[i].text);
          d.entries.push_back(std::move(entry));
          found = true;
        }
      if (!found) parse_fail(toks[1], "unknown algebra", origin);
    } else if (kw.text == "mop") {
      need(5);
      bool found = false;
      for (auto& d : sc.monoids)
        if (d.id == toks[1].text) {
          d.triples.push_back({toks[2].text, toks[3].text, toks[4].text});
          found = true;
        }
      if (!found) parse_fail(toks[1], "unknown monoid", origin);
    } else if (kw.text == "space") {
      need(4);
      Scenario::SpaceDecl d;
      d.id = toks[1].text;
      d.quantale = toks[2].text;
      for (std::size_t i = 3; i < toks.size(); ++i)
        d.points.push_back(toks[i].text);
      sc.spaces.push_back(std::move(d));
    } else if (kw.text == "dist") {
      need(5);
      bool found = false;
      for (auto& d : sc.spaces)
        if (d.id == toks[1].text) {
          d.dists.emplace_back(toks[2].text, toks[3].text, toks[4].text);
          found = true;
        }
      if (!found) parse_fail(toks[1], "unknown space", origin);
    } else if (kw.text == "topology") {
      need(3);
      Scenario::TopologyDecl d;
      d.id = toks[1].text;
      for (std::size_t i = 2; i < toks.size(); ++i)
        d.points.push_back(toks[i].text);
      sc.topologies.push_back(std::move(d));
    } else if (kw.text == "open") {
      need(2);
      bool found = false;
      for (auto& d : sc.topologies)
        if (d.id == toks[1].text) {
          std::vector<std::string> members;
          for (std::size_t i = 2; i < toks.size(); ++i)
            members.push_back(toks[i].text);
          d.opens.push_back(std::move(members));
          found = true;
        }
      if (!found) parse_fail(toks[1], "unknown topology", origin);
    } else if (kw.text == "morphism") {
      need(4);
      sc.morphisms.push_back({toks[1].text, toks[2].text, toks[3].text, {}});
    } else if (kw.text == "qmap") {
      need(4);
      bool found = false;
      for (auto& d : sc.morphisms)
        if (d.id == toks[1].text) {
          d.maps.emplace_back(toks[2].text, toks[3].text);
          found = true;
        }
      if (!found) parse_fail(toks[1], "unknown morphism", origin);
    } else if (kw.text == "arrow") {
      need(4);
      sc.arrows.push_back({toks[1].text, toks[2].text, toks[3].text, {}});
    } else if (kw.text == "amap") {
      need(4);
      bool found = false;
      for (auto& d : sc.arrows)
        if (d.id == toks[1].text) {
          d.maps.emplace_back(toks[2].text, toks[3].text);
          found = true;
        }
      if (!found) parse_fail(toks[1], "unknown arrow", origin);
    } else if (kw.text == "cap") {
      need(3);
      std::size_t v = 0;
      try {
        v = static_cast<std::size_t>(std::stoull(toks[2].text));
      } catch (const std::exception&) {
        parse_fail(toks[2], "cap value must be a number", origin);
      }
      if (toks[1].text == "carrier")
        sc.caps.carrier = v;
      else if (toks[1].text == "points")
        sc.caps.points = v;
      else if (toks[1].text == "opens")
        sc.caps.opens = v;
      else if (toks[1].text == "metrize_opens")
        sc.caps.metrize_opens = v;
      else
        parse_fail(toks[1], "unknown cap name", origin);
    } else if (kw.text == "seed") {
      need(2);
      try {
        sc.seed_override = static_cast<std::uint32_t>(std::stoul(toks[1].text));
      } catch (const std::exception&) {
        parse_fail(toks[1], "seed must be a number", origin);
      }
    } else if (kw.text == "check") {
      need(2);
      CheckDecl c;
      c.name = toks[1].text;
      for (std::size_t i = 2; i < toks.size(); ++i) {
        auto eq = toks[i].text.find('=');
        if (eq == std::string::npos)
          parse_fail(toks[i], "check parameters use key=value", origin);
        c.params[toks[i].text.substr(0, eq)] = toks[i].text.substr(eq + 1);
      }
      sc.checks.push_back(std::move(c));
    } else {
      parse_fail(kw, "unknown keyword '" + kw.text + "'", origin);
    }
  }
  return sc;
}

Scenario parse_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw Error("parse-error", path + ": cannot open scenario file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario_text(ss.str(), path);
}

// ---- environment ----------------------------------------------------------------

Env build_env(const Scenario& sc, const RunOptions& opts) {
  Env env;
  env.caps = sc.caps;
  // the command line caps win over scenario caps when tighter
  env.caps.carrier = std::min(env.caps.carrier, opts.caps.carrier);
  env.caps.points = std::min(env.caps.points, opts.caps.points);
  env.caps.opens = std::min(env.caps.opens, opts.caps.opens);
  env.caps.metrize_opens =
      std::min(env.caps.metrize_opens, opts.caps.metrize_opens);

  for (const auto& d : sc.posets) {
    Preorder ord(d.elems.size());
    auto index = [&](const std::string& l) -> std::size_t {
      for (std::size_t i = 0; i < d.elems.size(); ++i)
        if (d.elems[i] == l) return i;
      throw Error("parse-error",
                  "poset " + d.id + " has no element '" + l + "'");
    };
    for (const auto& [a, b] : d.leqs) ord.set(index(a), index(b));
    ord.transitive_close();
    env.posets.emplace(d.id, FinPoset(d.elems, ord));
  }

  for (const auto& d : sc.monoids) {
    auto it = env.posets.find(d.poset);
    if (it == env.posets.end())
      throw Error("parse-error", "monoid over unknown poset " + d.poset);
    const auto& p = it->second;
    auto n = p.size();
    Operation op;
    op.arity = 2;
    op.table.assign(n * n, SIZE_MAX);
    auto index = [&](const std::string& l) {
      auto i = p.index_of(l);
      if (!i)
        throw Error("parse-error",
                    "monoid " + d.id + " uses unknown element '" + l + "'");
      return *i;
    };
    for (const auto& t : d.triples)
      op.table[index(t[0]) * n + index(t[1])] = index(t[2]);
    for (auto v : op.table)
      if (v == SIZE_MAX)
        throw Error("parse-error", "monoid " + d.id + " table is incomplete");
    env.monoids.emplace(d.id, OrderedMonoid(p, op, index(d.unit)));
  }

  for (const auto& d : sc.algebras) {
    auto it = env.posets.find(d.poset);
    if (it == env.posets.end())
      throw Error("parse-error", "algebra over unknown poset " + d.poset);
    const auto& p = it->second;
    auto n = p.size();
    auto index = [&](const std::string& l) {
      auto i = p.index_of(l);
      if (!i)
        throw Error("parse-error",
                    "algebra " + d.id + " uses unknown element '" + l + "'");
      return *i;
    };
    std::map<std::string, Operation> ops;
    for (const auto& [name, arity] : d.ops) {
      Operation op;
      op.arity = arity;
      std::size_t total = 1;
      for (std::size_t i = 0; i < arity; ++i) total *= n;
      op.table.assign(total, SIZE_MAX);
      ops.emplace(name, std::move(op));
    }
    for (const auto& entry : d.entries) {
      auto oit = ops.find(entry[0]);
      if (oit == ops.end())
        throw Error("parse-error",
                    "algebra " + d.id + " has no operation " + entry[0]);
      auto& op = oit->second;
      if (entry.size() != op.arity + 2)
        throw Error("parse-error", "algebra entry arity mismatch for " +
                                       entry[0]);
      std::size_t idx = 0;
      for (std::size_t i = 1; i + 1 < entry.size(); ++i)
        idx = idx * n + index(entry[i]);
      op.table[idx] = index(entry.back());
    }
    for (const auto& [name, op] : ops)
      for (auto v : op.table)
        if (v == SIZE_MAX)
          throw Error("parse-error", "algebra " + d.id + " operation " +
                                         name + " is incomplete");
    env.algebras.emplace(d.id, TermAlgebra(p, std::move(ops)));
  }

  for (const auto& d : sc.quantales)
    env.quantales.emplace(d.id, make_quantale_expr(d.expr, &env, env.caps));

  for (const auto& d : sc.spaces) {
    auto it = env.quantales.find(d.quantale);
    if (it == env.quantales.end())
      throw Error("parse-error", "space over unknown quantale " + d.quantale);
    auto q = it->second;
    auto n = d.points.size();
    std::vector<QElem> dist(n * n);
    std::vector<bool> seen(n * n, false);
    auto pindex = [&](const std::string& l) -> std::size_t {
      for (std::size_t i = 0; i < n; ++i)
        if (d.points[i] == l) return i;
      throw Error("parse-error",
                  "space " + d.id + " has no point '" + l + "'");
    };
    for (const auto& [from, to, label] : d.dists) {
      auto e = q->parse(label);
      if (!e)
        throw Error("invalid-element", "label '" + label +
                                           "' is not an element of " +
                                           q->name());
      auto i = pindex(from) * n + pindex(to);
      dist[i] = *e;
      seen[i] = true;
    }
    for (std::size_t i = 0; i < n * n; ++i)
      if (!seen[i])
        throw Error("invalid-element",
                    "space " + d.id + " has an incomplete distance matrix");
    env.spaces.emplace(d.id, make_space(d.points, q, std::move(dist)));
  }

  for (const auto& d : sc.topologies) {
    auto n = d.points.size();
    auto pindex = [&](const std::string& l) -> std::size_t {
      for (std::size_t i = 0; i < n; ++i)
        if (d.points[i] == l) return i;
      throw Error("parse-error",
                  "topology " + d.id + " has no point '" + l + "'");
    };
    std::vector<DynBitset> subbase;
    for (const auto& members : d.opens) {
      DynBitset o(n);
      for (const auto& m : members) o.set(pindex(m));
      subbase.push_back(std::move(o));
    }
    env.topologies.emplace(
        d.id, FinTopology::generate(n, std::move(subbase), env.caps.opens));
  }

  for (const auto& d : sc.morphisms) {
    auto si = env.quantales.find(d.src);
    auto ti = env.quantales.find(d.tgt);
    if (si == env.quantales.end() || ti == env.quantales.end())
      throw Error("parse-error", "morphism between unknown quantales");
    auto src = si->second;
    auto tgt = ti->second;
    if (!src->enumerable())
      throw Error("parse-error",
                  "explicit-graph morphisms need an enumerable source");
    std::vector<QElem> values(src->size());
    std::vector<bool> seen(src->size(), false);
    for (const auto& [from, to] : d.maps) {
      auto fe = src->parse(from);
      auto te = tgt->parse(to);
      if (!fe || !te)
        throw Error("invalid-element",
                    "morphism " + d.id + " maps unknown elements");
      auto i = *src->index_of(*fe);
      values[i] = *te;
      seen[i] = true;
    }
    for (auto v : seen)
      if (!v)
        throw Error("invalid-element",
                    "morphism " + d.id + " is not total on its source");
    env.morphisms.emplace(
        d.id, QuantaleMorphism(d.id, src, tgt, std::move(values)));
  }

  for (const auto& d : sc.arrows) {
    auto si = env.spaces.find(d.src);
    auto ti = env.spaces.find(d.tgt);
    if (si == env.spaces.end() || ti == env.spaces.end())
      throw Error("parse-error", "arrow between unknown spaces");
    auto src = si->second;
    auto tgt = ti->second;
    std::vector<std::size_t> f(src->size(), SIZE_MAX);
    for (const auto& [from, to] : d.maps) {
      auto a = src->point_index(from);
      auto b = tgt->point_index(to);
      if (!a || !b)
        throw Error("parse-error", "arrow " + d.id + " maps unknown points");
      f[*a] = *b;
    }
    for (auto v : f)
      if (v == SIZE_MAX)
        throw Error("parse-error", "arrow " + d.id + " is not total");
    env.arrows.emplace(d.id, make_arrow(src, tgt, std::move(f)));
  }
  return env;
}

// ---- running --------------------------------------------------------------------

Report run_scenario(const Scenario& sc, const RunOptions& opts) {
  Report rep;
  rep.scenario = sc.name;
  rep.seed = sc.seed_override.value_or(opts.seed);

  Env env = build_env(sc, opts);
  const auto& registry = check_registry();
  for (const auto& decl : sc.checks) {
    auto it = registry.find(decl.name);
    CheckResult res;
    res.name = decl.name;
    auto t0 = std::chrono::steady_clock::now();
    if (it == registry.end()) {
      res.status = CheckStatus::kFail;
      res.detail = "unknown-check: no check named '" + decl.name + "'";
    } else {
      try {
        res = it->second(env, decl, rep.seed);
      } catch (const Error& e) {
        bool cap = e.kind() == "cap-exceeded" ||
                   e.kind() == "carrier-cap-exceeded";
        res.status = cap ? CheckStatus::kSkip : CheckStatus::kFail;
        res.detail = e.what();
      } catch (const std::exception& e) {
        res.status = CheckStatus::kFail;
        res.detail = std::string("exception: ") + e.what();
      }
    }
    auto t1 = std::chrono::steady_clock::now();
    res.millis =
        std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0)
            .count() /
        1000.0;
    rep.checks.push_back(std::move(res));
    if (opts.fail_fast && rep.checks.back().status == CheckStatus::kFail)
      break;
  }
  return rep;
}

Report run_builtin(const std::string& name, const RunOptions& opts) {
  return run_scenario(builtin_scenario(name), opts);
}

std::vector<Report> run_all_builtins(const RunOptions& opts) {
  std::vector<Report> out;
  for (const auto& name : list_builtins())
    out.push_back(run_builtin(name, opts));
  return out;
}

// ---- reports --------------------------------------------------------------------

namespace {

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass:
      return "pass";
    case CheckStatus::kFail:
      return "fail";
    case CheckStatus::kSkip:
      return "skipped";
  }
  return "?";
}

nlohmann::ordered_json report_json(const Report& r) {
  nlohmann::ordered_json j;
  j["format"] = "qmet-report/1";
  j["scenario"] = r.scenario;
  j["seed"] = r.seed;
  j["checks"] = nlohmann::ordered_json::array();
  std::size_t pass = 0, fail = 0, skip = 0;
  for (const auto& c : r.checks) {
    nlohmann::ordered_json jc;
    jc["name"] = c.name;
    jc["status"] = status_name(c.status);
    jc["strategy"] = c.strategy;
    jc["detail"] = c.detail;
    j["checks"].push_back(jc);
    if (c.status == CheckStatus::kPass) ++pass;
    if (c.status == CheckStatus::kFail) ++fail;
    if (c.status == CheckStatus::kSkip) ++skip;
  }
  j["summary"] = {{"pass", pass}, {"fail", fail}, {"skipped", skip}};
  return j;
}

}  // namespace

std::string report_to_text(const Report& r) {
  std::ostringstream out;
  out << "scenario " << r.scenario << " (seed " << r.seed << ")\n";
  for (const auto& c : r.checks) {
    out << "  " << (c.status == CheckStatus::kPass   ? "PASS"
                    : c.status == CheckStatus::kFail ? "FAIL"
                                                     : "SKIP")
        << " " << c.name;
    if (!c.strategy.empty()) out << " [" << c.strategy << "]";
    out << " (" << c.millis << " ms)";
    if (!c.detail.empty()) out << " -- " << c.detail;
    out << "\n";
  }
  return out.str();
}

std::string report_to_json(const Report& r) {
  return report_json(r).dump(2) + "\n";
}

std::string reports_to_json(const std::vector<Report>& rs) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& r : rs) j.push_back(report_json(r));
  return j.dump(2) + "\n";
}

}  // namespace qmet
