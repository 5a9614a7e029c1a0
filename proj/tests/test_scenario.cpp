#include <doctest.h>

#include "qmet/scenario.hpp"

using namespace qmet;

TEST_CASE("constructor expressions") {
  Caps caps;
  CHECK(make_quantale_expr("sigma", nullptr, caps)->size() == 2);
  CHECK(make_quantale_expr("chain_plus:3", nullptr, caps)->size() == 4);
  CHECK(make_quantale_expr("product:sigma,sigma", nullptr, caps)->size() == 4);
  CHECK(make_quantale_expr("product:(product:sigma,sigma),sigma", nullptr,
                           caps)
            ->size() == 8);
  CHECK(make_quantale_expr("scott_closed:sigma", nullptr, caps)->size() == 3);
  CHECK(!make_quantale_expr("rational_rplus", nullptr, caps)->enumerable());
  CHECK_THROWS_AS(make_quantale_expr("frobnicate", nullptr, caps), Error);
  CHECK_THROWS_AS(make_quantale_expr("free_quantale:missing", nullptr, caps),
                  Error);
}

TEST_CASE("scenario parsing") {
  auto sc = parse_scenario_text(R"(
# a tiny scenario
scenario demo
quantale Q sigma
space X Q a b
dist X a a 0
dist X a b inf
dist X b a inf
dist X b b 0
check met-verify
)",
                                "<test>");
  CHECK(sc.name == "demo");
  CHECK(sc.quantales.size() == 1);
  CHECK(sc.spaces.size() == 1);
  CHECK(sc.checks.size() == 1);

  RunOptions opts;
  auto env = build_env(sc, opts);
  CHECK(env.spaces.count("X") == 1);
  CHECK(env.spaces.at("X")->size() == 2);

  auto rep = run_scenario(sc, opts);
  CHECK(rep.passed());
}

TEST_CASE("parse errors carry a location") {
  try {
    parse_scenario_text("scenario x\nbogus-keyword a b\n", "<test>");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == "parse-error");
    CHECK(std::string(e.what()).find("<test>:2:1") != std::string::npos);
  }

  try {
    parse_scenario_text("scenario x\ncheck met-verify oops\n", "<test>");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find(":2:") != std::string::npos);
  }
}

TEST_CASE("element labels are validated") {
  auto sc = parse_scenario_text(R"(
scenario bad
quantale Q sigma
space X Q a
dist X a a nonsense
check met-verify
)",
                                "<test>");
  RunOptions opts;
  CHECK_THROWS_AS(build_env(sc, opts), Error);
}

TEST_CASE("posets and monoids in scenarios") {
  auto sc = parse_scenario_text(R"(
scenario monoids
poset P a b
leq P a b
monoid M P a
mop M a a a
mop M a b b
mop M b a b
mop M b b b
quantale F free_quantale:M
check quantale-laws
)",
                                "<test>");
  RunOptions opts;
  auto env = build_env(sc, opts);
  CHECK(env.quantales.at("F")->size() == 3);  // lower sets of a 2-chain
  auto rep = run_scenario(sc, opts);
  CHECK(rep.passed());
}

TEST_CASE("builtin registry") {
  auto names = list_builtins();
  for (const char* required :
       {"quantale-laws", "interpolation", "d-construction", "inequation-lift",
        "met-arrows", "ball-topology", "metrize-all-3pt", "br-properties",
        "robust-specialization", "hausdorff-theorem", "monad-laws",
        "transformer-laws", "sigma2-counterexample", "linear-iso-remark",
        "taur-containment"})
    CHECK(std::find(names.begin(), names.end(), required) != names.end());
  CHECK(names == list_builtins());  // stable ordering

  CHECK(describe_builtin("sigma2-counterexample").find("check") !=
        std::string::npos);
  CHECK_THROWS_AS(builtin_scenario("no-such-builtin"), Error);
}

TEST_CASE("reports are deterministic and skip on caps") {
  RunOptions opts;
  opts.seed = 7;
  auto r1 = run_builtin("sigma2-counterexample", opts);
  auto r2 = run_builtin("sigma2-counterexample", opts);
  CHECK(report_to_json(r1) == report_to_json(r2));
  CHECK(r1.passed());

  // a cap violation surfaces as a skipped check
  auto sc = parse_scenario_text(R"(
scenario capped
cap metrize_opens 1
check metrize points=2
)",
                                "<test>");
  RunOptions topts;
  auto rep = run_scenario(sc, topts);
  CHECK(rep.checks.size() == 1);
  CHECK(rep.checks[0].status == CheckStatus::kSkip);
  CHECK(rep.passed());  // skipped-by-cap is not a failure
}

TEST_CASE("term parsing") {
  auto t = parse_term("tensor(x, tensor(y,z))");
  CHECK(!t.is_var);
  CHECK(t.head == "tensor");
  CHECK(t.args.size() == 2);
  CHECK(t.args[0].is_var);
  CHECK(term_vars(t) == std::vector<std::string>{"x", "y", "z"});
  CHECK(term_linear(t));
  CHECK(!term_linear(parse_term("tensor(x,x)")));
  auto one = parse_term("one()");
  CHECK(!one.is_var);
  CHECK(one.args.empty());
  CHECK_THROWS_AS(parse_term("tensor(x"), Error);
  CHECK_THROWS_AS(parse_term("tensor(x,y) z"), Error);
}

TEST_CASE("algebras in scenarios") {
  auto sc = parse_scenario_text(R"(
scenario alg
poset P a b
leq P a b
algebra A P
aop A tensor 2
aentry A tensor a a a
aentry A tensor a b b
aentry A tensor b a b
aentry A tensor b b b
check inequation algebra=A lhs=tensor(x,y) rhs=tensor(y,x) base=yes lift=yes
)",
                                "<test>");
  RunOptions opts;
  auto env = build_env(sc, opts);
  CHECK(env.algebras.count("A") == 1);
  auto rep = run_scenario(sc, opts);
  CHECK(rep.passed());

  // incomplete tables are rejected
  auto bad = parse_scenario_text(R"(
scenario alg2
poset P a b
algebra A P
aop A tensor 2
aentry A tensor a a a
)",
                                 "<test>");
  CHECK_THROWS_AS(build_env(bad, opts), Error);
}

TEST_CASE("topologies in scenarios") {
  auto sc = parse_scenario_text(R"(
scenario topo
topology T a b
open T a
check metrize-topology topology=T
)",
                                "<test>");
  RunOptions opts;
  auto env = build_env(sc, opts);
  REQUIRE(env.topologies.count("T") == 1);
  CHECK(env.topologies.at("T").opens().size() == 3);  // Sierpinski
  auto rep = run_scenario(sc, opts);
  CHECK(rep.passed());
}

TEST_CASE("morphisms in scenarios") {
  auto sc = parse_scenario_text(R"(
scenario morph
quantale Q sigma
morphism collapse Q Q
qmap collapse 0 0
qmap collapse inf 0
check morphism-kinds morphism=collapse monotone=yes lax_unital=yes join_preserving=no
)",
                                "<test>");
  RunOptions opts;
  auto env = build_env(sc, opts);
  REQUIRE(env.morphisms.count("collapse") == 1);
  CHECK(run_scenario(sc, opts).passed());

  // partial graphs are rejected
  auto bad = parse_scenario_text(R"(
scenario morph2
quantale Q sigma
morphism h Q Q
qmap h 0 0
)",
                                 "<test>");
  CHECK_THROWS_AS(build_env(bad, opts), Error);
}

TEST_CASE("unknown checks fail cleanly") {
  auto sc = parse_scenario_text("scenario u\ncheck does-not-exist\n", "<t>");
  RunOptions opts;
  auto rep = run_scenario(sc, opts);
  CHECK(!rep.passed());
  CHECK(rep.checks[0].detail.find("unknown-check") != std::string::npos);
}
