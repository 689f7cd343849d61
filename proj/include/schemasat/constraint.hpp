#pragma once

#include <memory>
#include <set>

#include "schemasat/linexpr.hpp"

namespace schemasat {

enum class Rel { Eq, Ne, Lt, Le, Gt, Ge };

Rel negate_rel(Rel r);
const char* rel_symbol(Rel r);
bool eval_rel(long long lhs, Rel r, long long rhs);

struct Constraint;
using ConstraintPtr = std::shared_ptr<const Constraint>;

// First-order constraint over linear integer expressions.
// Divides(m, arg) never comes from the parser; quantifier elimination
// introduces it internally and removes it again whenever the result is
// expressible without it.
struct Constraint {
  enum class Kind { True, False, Cmp, Divides, Not, And, Or, Exists, Forall };

  Kind kind;
  LinearExpr lhs, rhs;  // Cmp
  Rel rel = Rel::Eq;    // Cmp
  long long divisor = 1;      // Divides
  LinearExpr arg;             // Divides
  std::vector<ConstraintPtr> kids;  // Not (1), And, Or
  std::string var;                  // Exists/Forall
  ConstraintPtr body;               // Exists/Forall
};

ConstraintPtr mk_true();
ConstraintPtr mk_false();
ConstraintPtr mk_bool(bool b);
ConstraintPtr mk_cmp(LinearExpr lhs, Rel r, LinearExpr rhs);
ConstraintPtr mk_divides(long long m, LinearExpr arg);
ConstraintPtr mk_not(ConstraintPtr c);
// And/Or builders flatten nested nodes of the same kind and fold units.
ConstraintPtr mk_and(std::vector<ConstraintPtr> kids);
ConstraintPtr mk_or(std::vector<ConstraintPtr> kids);
ConstraintPtr mk_and(ConstraintPtr a, ConstraintPtr b);
ConstraintPtr mk_or(ConstraintPtr a, ConstraintPtr b);
ConstraintPtr mk_exists(std::string var, ConstraintPtr body);
ConstraintPtr mk_forall(std::string var, ConstraintPtr body);

bool is_true(const ConstraintPtr& c);
bool is_false(const ConstraintPtr& c);

bool equal(const ConstraintPtr& a, const ConstraintPtr& b);

void collect_free_vars(const ConstraintPtr& c, std::set<std::string>& out);
std::set<std::string> free_vars(const ConstraintPtr& c);
bool mentions_free(const ConstraintPtr& c, const std::string& name);
bool has_quantifier(const ConstraintPtr& c);

// Homomorphic replacement of free variables; bound variables are never
// replaced and capture raises CaptureError.
ConstraintPtr apply_subst(const ConstraintPtr& c, const Substitution& sub);

// Conjuncts of a (flattened) conjunction; a non-And constraint is its own
// single conjunct.
std::vector<ConstraintPtr> conjuncts(const ConstraintPtr& c);

std::string to_string(const ConstraintPtr& c);

}  // namespace schemasat
