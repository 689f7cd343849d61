#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_helpers.hpp"

using namespace schemasat;
using namespace ts;

TEST_CASE("normalize_expr canonicalizes arithmetic terms") {
  // s(0)+s(s(0))-0
  RawExpr t = RawExpr::sub(
      RawExpr::add(RawExpr::succ(RawExpr::zero()),
                   RawExpr::succ(RawExpr::succ(RawExpr::zero()))),
      RawExpr::zero());
  LinearExpr e = normalize_expr(t);
  CHECK(e == n(3));
  CHECK(e.coeffs().empty());

  // n+k-k
  LinearExpr e2 = normalize_expr(RawExpr::sub(
      RawExpr::add(RawExpr::var("n"), RawExpr::var("k")), RawExpr::var("k")));
  CHECK(e2 == v("n"));

  // n+n written as repeated addition
  LinearExpr e3 = normalize_expr(RawExpr::add(RawExpr::var("n"), RawExpr::var("n")));
  CHECK(e3 == v("n", 2));
}

TEST_CASE("normalize_expr agrees with direct tree evaluation") {
  std::mt19937 rng(7);
  auto pick = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  std::vector<std::string> vars{"a", "b", "c"};
  std::function<RawExpr(int)> gen = [&](int depth) -> RawExpr {
    if (depth == 0) {
      switch (pick(0, 2)) {
        case 0: return RawExpr::lit(pick(-5, 5));
        case 1: return RawExpr::var(vars[pick(0, 2)]);
        default: return RawExpr::zero();
      }
    }
    switch (pick(0, 4)) {
      case 0: return RawExpr::add(gen(depth - 1), gen(depth - 1));
      case 1: return RawExpr::sub(gen(depth - 1), gen(depth - 1));
      case 2: return RawExpr::succ(gen(depth - 1));
      case 3: return RawExpr::neg(gen(depth - 1));
      default: return RawExpr::scale(pick(-3, 3), gen(depth - 1));
    }
  };
  for (int i = 0; i < 1000; ++i) {
    RawExpr t = gen(pick(0, 4));
    LinearExpr e = normalize_expr(t);
    std::map<std::string, long long> env;
    for (auto& name : vars) env[name] = pick(-8, 8);
    CHECK(e.evaluate(env) == t.evaluate(env));
  }
}

TEST_CASE("substitution application and capture rejection") {
  // (i+1)[3/i] = 4
  CHECK(apply_subst(v("i") + n(1), Substitution{{"i", n(3)}}) == n(4));

  // (1<=i /\ i<=n)[n-1/n]
  ConstraintPtr c = mk_and(le(n(1), v("i")), le(v("i"), v("n")));
  ConstraintPtr shifted = apply_subst(c, Substitution{{"n", v("n") - n(1)}});
  CHECK(equal(shifted, mk_and(le(n(1), v("i")), le(v("i"), v("n") - n(1)))));

  // (exists i. i=n)[i+2/n] captures i
  ConstraintPtr q = mk_exists("i", eq(v("i"), v("n")));
  CHECK_THROWS_AS(apply_subst(q, Substitution{{"n", v("i") + n(2)}}), CaptureError);

  // composition associates
  Substitution s1{{"a", v("b") + n(1)}};
  Substitution s2{{"b", n(5)}};
  LinearExpr e = v("a") + v("b");
  CHECK(apply_subst(apply_subst(e, s1), s2) == apply_subst(e, compose(s1, s2)));
}

TEST_CASE("is_satisfiable with witnesses") {
  CHECK_FALSE(is_satisfiable(mk_and(ge(v("n"), n(0)), lt(v("n"), n(0)))).sat);

  auto r = is_satisfiable(mk_and(le(n(1), v("i")), le(v("i"), v("n"))));
  REQUIRE(r.sat);
  CHECK(r.witness.at("i") == 1);
  CHECK(r.witness.at("n") == 1);

  // forall i. ~(1<=i /\ i<=n), together with n>=1
  ConstraintPtr c = mk_and(
      mk_forall("i", mk_not(mk_and(le(n(1), v("i")), le(v("i"), v("n"))))),
      ge(v("n"), n(1)));
  bool brute = false;
  for (long long nn = 0; nn <= 5 && !brute; ++nn) {
    std::map<std::string, long long> env{{"n", nn}};
    brute = brute_eval(c, env);
  }
  CHECK_FALSE(brute);
  CHECK_FALSE(is_satisfiable(c).sat);
}

TEST_CASE("satisfying witnesses actually satisfy") {
  ConstraintFuzzer fz(11, {"x", "y"});
  for (int i = 0; i < 150; ++i) {
    ConstraintPtr c = fz.formula({}, 3, 2);
    auto r = is_satisfiable(c);
    if (r.sat) {
      std::map<std::string, long long> env = r.witness;
      for (auto& name : free_vars(c))
        if (!env.count(name)) env[name] = 0;
      CHECK(evaluate(c, env));
    }
  }
}

TEST_CASE("is_valid") {
  // i<=n -> i<=n+1, closed under forall
  ConstraintPtr impl = mk_or(mk_not(le(v("i"), v("n"))), le(v("i"), v("n") + n(1)));
  bool brute = true;
  for (long long i = -4; i <= 4 && brute; ++i)
    for (long long nn = -4; nn <= 4 && brute; ++nn) {
      std::map<std::string, long long> env{{"i", i}, {"n", nn}};
      brute = brute_eval(impl, env);
    }
  CHECK(brute);
  CHECK(is_valid(impl));
  CHECK(is_valid(eq(v("n"), v("n"))));
  CHECK_FALSE(is_valid(ge(v("n"), n(1))));
}

TEST_CASE("entails") {
  CHECK(entails(ge(v("n") - n(1), n(0)), ge(v("n"), n(0))));
  ConstraintPtr c = mk_and(le(n(1), v("i")), le(v("i"), v("n")));
  CHECK(entails(c, c));
  CHECK_FALSE(entails(ge(v("n"), n(0)), ge(v("n"), n(1))));
}

TEST_CASE("entails is unsatisfiability of the counterexample constraint") {
  ConstraintFuzzer fz(23, {"x", "y"});
  for (int i = 0; i < 100; ++i) {
    ConstraintPtr c1 = fz.formula({}, 2, 1);
    ConstraintPtr c2 = fz.formula({}, 2, 1);
    CHECK(entails(c1, c2) == !is_satisfiable(mk_and(c1, mk_not(c2))).sat);
  }
}

TEST_CASE("eliminate_quantifiers examples") {
  ConstraintPtr dom = mk_and(le(n(1), v("i")), le(v("i"), v("n")));
  ConstraintPtr q = eliminate_quantifiers(mk_exists("i", dom));
  CHECK_FALSE(has_quantifier(q));
  for (long long nn = -3; nn <= 3; ++nn)
    CHECK(evaluate(q, {{"n", nn}}) == (nn >= 1));

  CHECK(is_true(eliminate_quantifiers(mk_exists("i", eq(v("i"), n(5))))));

  ConstraintPtr all = mk_forall(
      "i", mk_or(lt(v("i"), v("n")), gt(v("i"), v("n") - n(1))));
  CHECK(is_true(eliminate_quantifiers(all)));
}

TEST_CASE("eliminate_quantifiers handles scaled quantified variables") {
  // exists i. 3i = n  <=>  n divisible by 3
  ConstraintPtr c = mk_exists("i", eq(v("i", 3), v("n")));
  ConstraintPtr q = eliminate_quantifiers(c);
  CHECK_FALSE(has_quantifier(q));
  for (long long nn = -9; nn <= 9; ++nn)
    CHECK(evaluate(q, {{"n", nn}}) == (nn % 3 == 0));

  // exists i. 2i <= n /\ 3i >= m
  ConstraintPtr c2 = mk_exists("i", mk_and(le(v("i", 2), v("n")), ge(v("i", 3), v("m"))));
  ConstraintPtr q2 = eliminate_quantifiers(c2);
  for (long long nn = -6; nn <= 6; ++nn)
    for (long long mm = -6; mm <= 6; ++mm) {
      bool want = false;
      for (long long i = -30; i <= 30 && !want; ++i)
        want = 2 * i <= nn && 3 * i >= mm;
      CHECK(evaluate(q2, {{"n", nn}, {"m", mm}}) == want);
    }
}

TEST_CASE("eliminate_quantifiers agrees with input on a box") {
  ConstraintFuzzer fz(42, {"x", "y"});
  for (int i = 0; i < 60; ++i) {
    ConstraintPtr c = fz.formula({}, 3, 2);
    auto bad = qe_disagreement(c);
    if (bad) {
      CAPTURE(*bad);
      REQUIRE(false);
    }
  }
}

TEST_CASE("encloses") {
  CHECK(encloses(mk_and(le(n(1), v("i")), le(v("i"), v("n"))), "i"));
  CHECK(encloses(eq(v("i"), n(0)), "i"));
  CHECK_FALSE(encloses(ge(v("i"), n(1)), "i"));
  CHECK_FALSE(encloses(ge(v("j"), n(1)), "i"));  // i not free
}

TEST_CASE("evaluate") {
  CHECK(evaluate(mk_and(le(n(1), n(2)), le(n(2), n(3))), {}));
  CHECK_FALSE(evaluate(ge(v("n"), n(1)), {{"n", 0}}));
  ConstraintPtr q = mk_exists("i", mk_and(le(n(1), v("i")), le(v("i"), v("n"))));
  CHECK(evaluate(q, {{"n", 2}}));
  CHECK_THROWS_AS(evaluate(ge(v("n"), n(1)), {}), EvalError);
}

TEST_CASE("solution_range") {
  ConstraintPtr dom = mk_and(le(n(1), v("i")), le(v("i"), v("n")));
  CHECK(solution_range(dom, "i", {{"n", 3}}) == std::vector<long long>{1, 2, 3});
  CHECK(solution_range(dom, "i", {{"n", 0}}).empty());

  ConstraintPtr dom2 = mk_and(mk_and(le(n(1), v("j")), le(v("j"), v("n") + n(1))),
                              ne(v("i"), v("j")));
  CHECK(solution_range(dom2, "j", {{"n", 2}, {"i", 1}}) ==
        std::vector<long long>{2, 3});

  CHECK_THROWS(solution_range(ge(v("i"), n(1)), "i", {}));
}

TEST_CASE("enclosing constraints have finite ranges in sampled environments") {
  ConstraintPtr dom = mk_and(mk_and(le(n(0), v("i")), le(v("i", 2), v("n") + v("m"))),
                             ne(v("i"), v("m")));
  REQUIRE(encloses(dom, "i"));
  std::mt19937 rng(5);
  for (int s = 0; s < 50; ++s) {
    long long nn = std::uniform_int_distribution<long long>(-6, 6)(rng);
    long long mm = std::uniform_int_distribution<long long>(-6, 6)(rng);
    auto range = solution_range(dom, "i", {{"n", nn}, {"m", mm}});
    CHECK(range.size() <= 64);
    for (size_t k = 1; k < range.size(); ++k) CHECK(range[k - 1] < range[k]);
  }
}
