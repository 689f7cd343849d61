#pragma once

#include "schemasat/constraint.hpp"

namespace schemasat {

// Raw term trees as read from input: 0, successor, +, -, literals,
// variables, constant scaling.
struct RawExpr {
  enum class Kind { Zero, Succ, Lit, Var, Add, Sub, Neg, Scale };
  Kind kind = Kind::Zero;
  long long value = 0;       // Lit, Scale factor
  std::string name;          // Var
  std::vector<RawExpr> kids;

  static RawExpr zero() { return {}; }
  static RawExpr lit(long long v) { return {Kind::Lit, v, "", {}}; }
  static RawExpr var(std::string n) { return {Kind::Var, 0, std::move(n), {}}; }
  static RawExpr succ(RawExpr e) { return {Kind::Succ, 0, "", {std::move(e)}}; }
  static RawExpr add(RawExpr a, RawExpr b) { return {Kind::Add, 0, "", {std::move(a), std::move(b)}}; }
  static RawExpr sub(RawExpr a, RawExpr b) { return {Kind::Sub, 0, "", {std::move(a), std::move(b)}}; }
  static RawExpr neg(RawExpr a) { return {Kind::Neg, 0, "", {std::move(a)}}; }
  static RawExpr scale(long long k, RawExpr a) { return {Kind::Scale, k, "", {std::move(a)}}; }

  long long evaluate(const std::map<std::string, long long>& env) const;
};

LinearExpr normalize_expr(const RawExpr& raw);

struct SatResult {
  bool sat;
  // Ground witness for the free variables when sat.
  std::map<std::string, long long> witness;
};

// Decides satisfiability over the integers and produces a witness.
SatResult is_satisfiable(const ConstraintPtr& c);
bool is_valid(const ConstraintPtr& c);
bool entails(const ConstraintPtr& c1, const ConstraintPtr& c2);

// Cooper-style elimination; the result is quantifier-free and equivalent
// over the integers, with free variables a subset of the input's.
ConstraintPtr eliminate_quantifiers(const ConstraintPtr& c);

// True iff under every valuation of the other free variables the solutions
// for x form a bounded interval set; false when x is not free in c.
bool encloses(const ConstraintPtr& c, const std::string& x);

// Standard first-order evaluation; env must cover all free variables.
bool evaluate(const ConstraintPtr& c, const std::map<std::string, long long>& env);

// All integers i with c true at env + {x -> i}, ascending.
// Requires encloses(c, x).
std::vector<long long> solution_range(const ConstraintPtr& c, const std::string& x,
                                      const std::map<std::string, long long>& env);

// Negation normal form: Not only on Cmp-free leaves (Divides).
ConstraintPtr to_nnf(const ConstraintPtr& c, bool positive = true);

void clear_arith_caches();

}  // namespace schemasat
