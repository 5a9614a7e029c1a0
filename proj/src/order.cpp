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

#include "qmet/order.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace qmet {

bool Preorder::reflexive() const {
  for (std::size_t i = 0; i < n; ++i)
    if (!leq(i, i)) return false;
  return true;
}

bool Preorder::transitive() const {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!leq(i, j)) continue;
      for (std::size_t k = 0; k < n; ++k)
        if (leq(j, k) && !leq(i, k)) return false;
    }
  return true;
}

bool Preorder::antisymmetric() const {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (leq(i, j) && leq(j, i)) return false;
  return true;
}

void Preorder::transitive_close() {
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (!leq(i, k)) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (leq(k, j)) set(i, j);
    }
}

FinPoset::FinPoset(std::vector<std::string> labels, Preorder order)
    : labels_(std::move(labels)), order_(std::move(order)) {
  if (labels_.size() != order_.n)
    throw Error("invalid-element", "label count does not match order size");
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != labels_.size())
    throw Error("invalid-element", "poset labels must be pairwise distinct");
  if (!order_.reflexive())
    throw Error("invalid-element", "order is not reflexive");
  if (!order_.transitive())
    throw Error("invalid-element", "order is not transitive");
  if (!order_.antisymmetric())
    throw Error("invalid-element", "order is not antisymmetric");
  lattice_ = compute_lattice();
}

std::optional<std::size_t> FinPoset::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

std::optional<std::size_t> FinPoset::join_of(
    const std::vector<std::size_t>& s) const {
  std::optional<std::size_t> best;
  for (std::size_t u = 0; u < size(); ++u) {
    bool upper = true;
    for (auto x : s)
      if (!leq(x, u)) {
        upper = false;
        break;
      }
    if (!upper) continue;
    if (!best || leq(u, *best)) best = u;
  }
  if (!best) return std::nullopt;
  // `best` must be below every upper bound, otherwise no lub exists.
  for (std::size_t u = 0; u < size(); ++u) {
    bool upper = true;
    for (auto x : s)
      if (!leq(x, u)) {
        upper = false;
        break;
      }
    if (upper && !leq(*best, u)) return std::nullopt;
  }
  return best;
}

std::optional<std::size_t> FinPoset::meet_of(
    const std::vector<std::size_t>& s) const {
  std::optional<std::size_t> best;
  for (std::size_t u = 0; u < size(); ++u) {
    bool lower = true;
    for (auto x : s)
      if (!leq(u, x)) {
        lower = false;
        break;
      }
    if (!lower) continue;
    if (!best || leq(*best, u)) best = u;
  }
  if (!best) return std::nullopt;
  for (std::size_t u = 0; u < size(); ++u) {
    bool lower = true;
    for (auto x : s)
      if (!leq(u, x)) {
        lower = false;
        break;
      }
    if (lower && !leq(u, *best)) return std::nullopt;
  }
  return best;
}

std::optional<std::size_t> FinPoset::bottom() const {
  return join_of({});
}

std::optional<std::size_t> FinPoset::top() const {
  return meet_of({});
}

bool FinPoset::compute_lattice() const {
  if (size() == 0) return false;
  if (!bottom() || !top()) return false;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i + 1; j < size(); ++j)
      if (!join_of({i, j}) || !meet_of({i, j})) return false;
  return true;
}

void FinPoset::require_lattice() const {
  if (!lattice_)
    throw Error("not-a-complete-lattice",
                "operation requires a finite complete lattice");
}

bool FinPoset::way_below(std::size_t x, std::size_t y) const {
  require_lattice();
  return leq(x, y);
}

bool FinPoset::totally_below(std::size_t x, std::size_t y) const {
  require_lattice();
  // y !<= join{z : x !<= z}; the complement join is the largest join
  // reachable without meeting the up-set of x.
  std::vector<std::size_t> zs;
  for (std::size_t z = 0; z < size(); ++z)
    if (!leq(x, z)) zs.push_back(z);
  auto j = join_of(zs);
  if (!j) return true;  // no join avoiding up(x): every cover meets it
  return !leq(y, *j);
}

namespace {

// Enumerates subsets of {0..n-1} as masks; n must stay small (oracle use).
bool subset_directed(const FinPoset& p, std::uint64_t mask) {
  if (mask == 0) return false;
  auto n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!((mask >> i) & 1)) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (!((mask >> j) & 1)) continue;
      bool bounded = false;
      for (std::size_t k = 0; k < n; ++k)
        if (((mask >> k) & 1) && p.leq(i, k) && p.leq(j, k)) {
          bounded = true;
          break;
        }
      if (!bounded) return false;
    }
  }
  return true;
}

std::vector<std::size_t> mask_members(std::uint64_t mask, std::size_t n) {
  std::vector<std::size_t> m;
  for (std::size_t i = 0; i < n; ++i)
    if ((mask >> i) & 1) m.push_back(i);
  return m;
}

}  // namespace

bool FinPoset::way_below_by_definition(std::size_t x, std::size_t y) const {
  auto n = size();
  for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
    if (!subset_directed(*this, mask)) continue;
    auto d = mask_members(mask, n);
    auto j = join_of(d);
    if (!j || !leq(y, *j)) continue;
    bool hit = false;
    for (auto e : d)
      if (leq(x, e)) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

bool FinPoset::totally_below_by_definition(std::size_t x,
                                           std::size_t y) const {
  auto n = size();
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    auto d = mask_members(mask, n);
    auto j = join_of(d);
    if (!j || !leq(y, *j)) continue;
    bool hit = false;
    for (auto e : d)
      if (leq(x, e)) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

DynBitset FinPoset::down_closure(const DynBitset& a) const {
  DynBitset out(size());
  for (std::size_t i = 0; i < size(); ++i) {
    if (!a.test(i)) continue;
    for (std::size_t j = 0; j < size(); ++j)
      if (leq(j, i)) out.set(j);
  }
  return out;
}

DynBitset FinPoset::up_closure(const DynBitset& a) const {
  DynBitset out(size());
  for (std::size_t i = 0; i < size(); ++i) {
    if (!a.test(i)) continue;
    for (std::size_t j = 0; j < size(); ++j)
      if (leq(i, j)) out.set(j);
  }
  return out;
}

bool FinPoset::is_lower(const DynBitset& a) const {
  for (std::size_t i = 0; i < size(); ++i) {
    if (!a.test(i)) continue;
    for (std::size_t j = 0; j < size(); ++j)
      if (leq(j, i) && !a.test(j)) return false;
  }
  return true;
}

std::optional<std::size_t> joins_meets(const FinPoset& p, const DynBitset& s,
                                       Bound which) {
  auto m = s.members();
  return which == Bound::kJoin ? p.join_of(m) : p.meet_of(m);
}

LatticeClassification classify_lattice(const FinPoset& l) {
  l.require_lattice();
  auto n = l.size();
  LatticeClassification out;
  out.compact_elements = DynBitset(n);
  out.prime_elements = DynBitset(n);

  std::vector<std::vector<bool>> tb(n, std::vector<bool>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) tb[x][y] = l.totally_below(x, y);

  for (std::size_t x = 0; x < n; ++x) {
    if (l.way_below(x, x)) out.compact_elements.set(x);
    if (tb[x][x]) out.prime_elements.set(x);
  }

  out.continuous = true;
  out.algebraic = true;
  out.prime_continuous = true;
  out.prime_algebraic = true;
  for (std::size_t y = 0; y < n; ++y) {
    std::vector<std::size_t> wb, wbc, tbl, tbp;
    for (std::size_t x = 0; x < n; ++x) {
      if (l.way_below(x, y)) {
        wb.push_back(x);
        if (out.compact_elements.test(x)) wbc.push_back(x);
      }
      if (tb[x][y]) {
        tbl.push_back(x);
        if (out.prime_elements.test(x)) tbp.push_back(x);
      }
    }
    auto check = [&](const std::vector<std::size_t>& s, bool& flag) {
      auto j = l.join_of(s);
      if (!j || *j != y) flag = false;
    };
    check(wb, out.continuous);
    check(wbc, out.algebraic);
    check(tbl, out.prime_continuous);
    check(tbp, out.prime_algebraic);
  }
  return out;
}

namespace {

std::string set_label(const FinPoset& p, const DynBitset& s) {
  std::string out = "{";
  bool first = true;
  for (auto i : s.members()) {
    if (!first) out += ",";
    out += p.label(i);
    first = false;
  }
  return out + "}";
}

}  // namespace

LowerSetLattice lower_set_lattice(const FinPoset& p, std::size_t cap) {
  auto n = p.size();
  std::set<DynBitset> found;
  std::deque<DynBitset> work;
  DynBitset empty(n);
  found.insert(empty);
  work.push_back(empty);
  while (!work.empty()) {
    DynBitset a = work.front();
    work.pop_front();
    for (std::size_t q = 0; q < n; ++q) {
      if (a.test(q)) continue;
      // adding q keeps the set lower iff everything strictly below q is in
      bool ok = true;
      for (std::size_t r = 0; r < n; ++r)
        if (r != q && p.leq(r, q) && !a.test(r)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      DynBitset b = a;
      b.set(q);
      if (found.insert(b).second) {
        if (found.size() > cap)
          throw Error("carrier-cap-exceeded",
                      "lower set lattice exceeds cap of " +
                          std::to_string(cap) + " elements");
        work.push_back(b);
      }
    }
  }

  LowerSetLattice out{FinPoset({}, Preorder(0)), {}, {}};
  out.sets.assign(found.begin(), found.end());
  auto m = out.sets.size();
  Preorder ord(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (out.sets[i].is_subset_of(out.sets[j])) ord.set(i, j);
  std::vector<std::string> labels(m);
  for (std::size_t i = 0; i < m; ++i) labels[i] = set_label(p, out.sets[i]);
  out.lattice = FinPoset(std::move(labels), std::move(ord));
  out.eta.resize(n);
  for (std::size_t q = 0; q < n; ++q) {
    DynBitset d(n);
    d.set(q);
    out.eta[q] = out.index_of(p.down_closure(d));
  }
  return out;
}

std::size_t LowerSetLattice::index_of(const DynBitset& s) const {
  auto it = std::lower_bound(sets.begin(), sets.end(), s);
  if (it == sets.end() || !(*it == s))
    throw Error("invalid-element", "not a lower set of this lattice");
  return static_cast<std::size_t>(it - sets.begin());
}

std::size_t Operation::apply(std::size_t n,
                             const std::vector<std::size_t>& args) const {
  if (args.size() != arity)
    throw Error("arity-mismatch", "operation expects " +
                                      std::to_string(arity) + " arguments");
  std::size_t idx = 0;
  for (auto a : args) idx = idx * n + a;
  return table[idx];
}

bool operation_monotone(const FinPoset& p, const Operation& o) {
  auto n = p.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < o.arity; ++i) total *= n;
  if (o.table.size() != total) return false;
  std::vector<std::size_t> args(o.arity, 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    // decode
    std::size_t t = idx;
    for (std::size_t k = o.arity; k-- > 0;) {
      args[k] = t % n;
      t /= n;
    }
    for (std::size_t k = 0; k < o.arity; ++k) {
      for (std::size_t v = 0; v < n; ++v) {
        if (!p.leq(args[k], v)) continue;
        auto bigger = args;
        bigger[k] = v;
        if (!p.leq(o.apply(n, args), o.apply(n, bigger))) return false;
      }
    }
  }
  return true;
}

TermAlgebra::TermAlgebra(FinPoset carrier, std::map<std::string, Operation> ops)
    : carrier_(std::move(carrier)), ops_(std::move(ops)) {
  for (const auto& [name, op] : ops_)
    if (!operation_monotone(carrier_, op))
      throw Error("non-monotone",
                  "operation '" + name + "' is not monotone in each argument");
}

const Operation& TermAlgebra::operation(const std::string& name) const {
  auto it = ops_.find(name);
  if (it == ops_.end())
    throw Error("unknown-operation", "no operation named '" + name + "'");
  return it->second;
}

Term tvar(const std::string& name) { return Term{name, true, {}}; }

Term tapp(const std::string& op, std::vector<Term> args) {
  return Term{op, false, std::move(args)};
}

namespace {

void collect_vars(const Term& t, std::vector<std::string>& out) {
  if (t.is_var) {
    out.push_back(t.head);
    return;
  }
  for (const auto& a : t.args) collect_vars(a, out);
}

}  // namespace

std::vector<std::string> term_vars(const Term& t) {
  std::vector<std::string> v;
  collect_vars(t, v);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool term_linear(const Term& t) {
  std::vector<std::string> v;
  collect_vars(t, v);
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

namespace {

Term parse_term_at(const std::string& s, std::size_t& i) {
  auto fail = [&](const std::string& msg) {
    throw Error("parse-error", "term '" + s + "': " + msg);
  };
  std::size_t start = i;
  while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) ||
                          s[i] == '_' || s[i] == '\''))
    ++i;
  if (i == start) fail("expected a name");
  std::string name = s.substr(start, i - start);
  if (i >= s.size() || s[i] != '(') return tvar(name);
  ++i;  // '('
  std::vector<Term> args;
  if (i < s.size() && s[i] == ')') {
    ++i;
    return tapp(name, {});
  }
  while (true) {
    args.push_back(parse_term_at(s, i));
    if (i < s.size() && s[i] == ',') {
      ++i;
      continue;
    }
    if (i < s.size() && s[i] == ')') {
      ++i;
      break;
    }
    fail("expected ',' or ')'");
  }
  return tapp(name, std::move(args));
}

}  // namespace

Term parse_term(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  std::size_t i = 0;
  auto t = parse_term_at(s, i);
  if (i != s.size())
    throw Error("parse-error", "term '" + text + "': trailing input");
  return t;
}

std::size_t eval_term(const TermAlgebra& a, const Term& t,
                      const std::map<std::string, std::size_t>& env) {
  if (t.is_var) {
    auto it = env.find(t.head);
    if (it == env.end())
      throw Error("invalid-element", "unbound variable '" + t.head + "'");
    return it->second;
  }
  const Operation& op = a.operation(t.head);
  if (op.arity != t.args.size())
    throw Error("arity-mismatch", "operation '" + t.head + "' applied to " +
                                      std::to_string(t.args.size()) +
                                      " arguments");
  std::vector<std::size_t> args;
  args.reserve(t.args.size());
  for (const auto& sub : t.args) args.push_back(eval_term(a, sub, env));
  return op.apply(a.carrier().size(), args);
}

Operation lift_operation(const FinPoset& p, const LowerSetLattice& d,
                         const Operation& o) {
  auto n = p.size();
  auto m = d.sets.size();
  Operation out;
  out.arity = o.arity;
  std::size_t total = 1;
  for (std::size_t i = 0; i < o.arity; ++i) total *= m;
  out.table.resize(total);
  std::vector<std::size_t> args(o.arity, 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t t = idx;
    for (std::size_t k = o.arity; k-- > 0;) {
      args[k] = t % m;
      t /= m;
    }
    // image of the product of the chosen lower sets
    DynBitset img(n);
    if (o.arity == 0) {
      img.set(o.apply(n, {}));
    } else {
      std::vector<std::vector<std::size_t>> mem(o.arity);
      bool any_empty = false;
      for (std::size_t k = 0; k < o.arity; ++k) {
        mem[k] = d.sets[args[k]].members();
        if (mem[k].empty()) any_empty = true;
      }
      if (!any_empty) {
        std::vector<std::size_t> cursor(o.arity, 0), theta(o.arity);
        bool done = false;
        while (!done) {
          for (std::size_t k = 0; k < o.arity; ++k)
            theta[k] = mem[k][cursor[k]];
          img.set(o.apply(n, theta));
          std::size_t k = o.arity;
          while (true) {
            if (k == 0) {
              done = true;
              break;
            }
            --k;
            if (++cursor[k] < mem[k].size()) break;
            cursor[k] = 0;
          }
        }
      }
    }
    out.table[idx] = d.index_of(p.down_closure(img));
  }
  return out;
}

LiftedAlgebra lift_algebra(const TermAlgebra& a, std::size_t cap) {
  LiftedAlgebra out{lower_set_lattice(a.carrier(), cap),
                    TermAlgebra(FinPoset({"x"}, Preorder(1)), {})};
  std::map<std::string, Operation> ops;
  for (const auto& [name, op] : a.operations())
    ops[name] = lift_operation(a.carrier(), out.d, op);
  out.algebra = TermAlgebra(out.d.lattice, std::move(ops));
  return out;
}

InequationReport check_inequation_lift(const TermAlgebra& a, const Term& e1,
                                       const Term& e2, std::size_t cap) {
  InequationReport rep;
  auto v1 = term_vars(e1);
  auto v2 = term_vars(e2);
  bool vars_ok = std::includes(v1.begin(), v1.end(), v2.begin(), v2.end());
  rep.linearity_ok = term_linear(e1) && vars_ok;

  std::vector<std::string> vars = v1;
  for (const auto& v : v2)
    if (std::find(vars.begin(), vars.end(), v) == vars.end())
      vars.push_back(v);
  std::sort(vars.begin(), vars.end());

  auto sweep = [&](const TermAlgebra& alg, bool& holds,
                   const std::string& where) {
    auto n = alg.carrier().size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (total > cap) throw Error("carrier-cap-exceeded",
                                   "environment sweep exceeds cap");
      total *= n;
    }
    if (total > cap)
      throw Error("carrier-cap-exceeded", "environment sweep exceeds cap");
    holds = true;
    std::map<std::string, std::size_t> env;
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t t = idx;
      for (std::size_t k = vars.size(); k-- > 0;) {
        env[vars[k]] = t % n;
        t /= n;
      }
      auto lhs = eval_term(alg, e1, env);
      auto rhs = eval_term(alg, e2, env);
      if (!alg.carrier().leq(lhs, rhs)) {
        holds = false;
        if (!rep.counterexample) {
          std::map<std::string, std::string> ce;
          for (const auto& [v, e] : env) ce[v] = alg.carrier().label(e);
          rep.counterexample = ce;
          rep.counterexample_where = where;
        }
        return;
      }
    }
  };

  sweep(a, rep.holds_in_base, "base");
  auto lifted = lift_algebra(a, cap);
  sweep(lifted.algebra, rep.holds_in_lift, "lift");
  return rep;
}

Antichain make_antichain(std::vector<DynBitset> gens) {
  // drop generators below (subset of) another generator, then sort
  std::vector<DynBitset> keep;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (i == j) continue;
      if (gens[i] == gens[j] && i > j) {
        dominated = true;
        break;
      }
      if (!(gens[i] == gens[j]) && gens[i].is_subset_of(gens[j])) {
        dominated = true;
        break;
      }
    }
    if (!dominated) keep.push_back(gens[i]);
  }
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  return Antichain{std::move(keep)};
}

bool antichain_leq(const Antichain& a, const Antichain& b) {
  for (const auto& g : a.gens) {
    bool below = false;
    for (const auto& h : b.gens)
      if (g.is_subset_of(h)) {
        below = true;
        break;
      }
    if (!below) return false;
  }
  return true;
}

Antichain antichain_join(const Antichain& a, const Antichain& b) {
  auto gens = a.gens;
  gens.insert(gens.end(), b.gens.begin(), b.gens.end());
  return make_antichain(std::move(gens));
}

Antichain antichain_meet(const Antichain& a, const Antichain& b) {
  std::vector<DynBitset> gens;
  for (const auto& g : a.gens)
    for (const auto& h : b.gens) gens.push_back(g & h);
  return make_antichain(std::move(gens));
}

LowerSet LowerSet::concrete(const FinPoset* parent, DynBitset members) {
  if (!parent->is_lower(members))
    throw Error("invalid-element", "bitset is not downward closed");
  LowerSet out;
  out.rep_ = Concrete{parent, std::move(members)};
  return out;
}

LowerSet LowerSet::symbolic(Antichain gens) {
  auto canon = make_antichain(gens.gens);
  if (!(canon == gens))
    throw Error("invalid-element", "generators are not an antichain");
  LowerSet out;
  out.rep_ = std::move(canon);
  return out;
}

const DynBitset& LowerSet::members() const {
  return std::get<Concrete>(rep_).members;
}

const Antichain& LowerSet::generators() const {
  return std::get<Antichain>(rep_);
}

bool LowerSet::leq(const LowerSet& other) const {
  if (is_concrete() != other.is_concrete())
    throw Error("invalid-element", "mixed lower set representations");
  if (is_concrete()) {
    const auto& a = std::get<Concrete>(rep_);
    const auto& b = std::get<Concrete>(other.rep_);
    if (a.parent != b.parent)
      throw Error("invalid-element", "lower sets over different posets");
    return a.members.is_subset_of(b.members);
  }
  return antichain_leq(std::get<Antichain>(rep_),
                       std::get<Antichain>(other.rep_));
}

LowerSet LowerSet::join(const LowerSet& other) const {
  if (is_concrete()) {
    const auto& a = std::get<Concrete>(rep_);
    const auto& b = std::get<Concrete>(other.rep_);
    return concrete(a.parent, a.members | b.members);
  }
  LowerSet out;
  out.rep_ = antichain_join(std::get<Antichain>(rep_),
                            std::get<Antichain>(other.rep_));
  return out;
}

LowerSet LowerSet::meet(const LowerSet& other) const {
  if (is_concrete()) {
    const auto& a = std::get<Concrete>(rep_);
    const auto& b = std::get<Concrete>(other.rep_);
    return concrete(a.parent, a.members & b.members);
  }
  LowerSet out;
  out.rep_ = antichain_meet(std::get<Antichain>(rep_),
                            std::get<Antichain>(other.rep_));
  return out;
}

bool operator==(const LowerSet& a, const LowerSet& b) {
  return a.leq(b) && b.leq(a);
}

void for_each_poset_upto_iso(std::size_t n,
                             const std::function<void(const FinPoset&)>& fn) {
  // Strict relations contained in the numeric order; every poset has a
  // linear extension, so each isomorphism class shows up.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = "p" + std::to_string(i);
  for (std::uint64_t mask = 0; mask < (1ull << pairs.size()); ++mask) {
    Preorder ord(n);
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if ((mask >> k) & 1) ord.set(pairs[k].first, pairs[k].second);
    if (!ord.transitive()) continue;
    fn(FinPoset(labels, ord));
  }
}

void for_each_lattice_upto_iso(std::size_t n,
                               const std::function<void(const FinPoset&)>& fn) {
  for_each_poset_upto_iso(n, [&](const FinPoset& p) {
    if (p.is_lattice()) fn(p);
  });
}

}  // namespace qmet
