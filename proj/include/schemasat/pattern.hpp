#pragma once

#include "schemasat/constraint.hpp"

namespace schemasat {

// Literal with linear-expression indices, e.g. p[n+1] or ~q[i,j].
struct IndexedLiteral {
  bool positive = true;
  std::string symbol;
  std::vector<LinearExpr> indices;

  IndexedLiteral complement() const { return {!positive, symbol, indices}; }

  bool operator==(const IndexedLiteral& o) const {
    return positive == o.positive && symbol == o.symbol && indices == o.indices;
  }
  bool operator!=(const IndexedLiteral& o) const { return !(*this == o); }
  // shift-stable order: expressions compare by coefficient structure first,
  // constants last, so substituting p-k for p preserves relative order
  bool operator<(const IndexedLiteral& o) const {
    if (symbol != o.symbol) return symbol < o.symbol;
    if (indices != o.indices) return indices < o.indices;
    return positive < o.positive;
  }

  bool same_atom(const IndexedLiteral& o) const {
    return symbol == o.symbol && indices == o.indices;
  }
  std::string to_string() const;
  // name of the ground propositional atom under a ground assignment
  std::string ground_name(const std::map<std::string, long long>& env) const;
};

struct Pattern;
using PatternPtr = std::shared_ptr<const Pattern>;

// Formula skeleton in negation normal form. Not appears only transiently
// (literal replacement can produce ~true / ~false) and is removed by the
// algebraic rewrites.
struct Pattern {
  enum class Kind { Top, Bottom, Lit, Not, And, Or, IterAnd, IterOr };
  Kind kind;
  IndexedLiteral lit;      // Lit
  PatternPtr left, right;  // And/Or; Not uses left only
  std::string var;         // IterAnd/IterOr binder
  ConstraintPtr domain;    // IterAnd/IterOr
  PatternPtr body;         // IterAnd/IterOr
};

PatternPtr pat_top();
PatternPtr pat_bottom();
PatternPtr pat_lit(IndexedLiteral lit);
PatternPtr pat_not(PatternPtr p);
PatternPtr pat_and(PatternPtr l, PatternPtr r);
PatternPtr pat_or(PatternPtr l, PatternPtr r);
PatternPtr pat_iter(Pattern::Kind kind, std::string var, ConstraintPtr domain,
                    PatternPtr body);

bool is_iteration(const PatternPtr& p);
bool equal(const PatternPtr& a, const PatternPtr& b);
std::string to_string(const PatternPtr& p);

std::set<std::string> pattern_free_vars(const PatternPtr& p);
std::vector<std::string> pattern_binders(const PatternPtr& p);  // preorder, with dups
bool pattern_mentions_var(const PatternPtr& p, const std::string& name);

PatternPtr apply_subst(const PatternPtr& p, const Substitution& sub);

// Subpattern addressing: And/Or children are 0/1, Not and iteration bodies 0.
using Pos = std::vector<int>;
std::string pos_to_string(const Pos& pos);
PatternPtr subpattern_at(const PatternPtr& p, const Pos& pos);
PatternPtr replace_subpattern(const PatternPtr& p, const Pos& pos, PatternPtr repl);

struct LitOccurrence {
  Pos pos;
  IndexedLiteral lit;
  // enclosing iteration binders with their domains, outermost first
  std::vector<std::pair<std::string, ConstraintPtr>> scopes;
};
std::vector<LitOccurrence> literal_occurrences(const PatternPtr& p);

struct IterOccurrence {
  Pos pos;
  Pattern::Kind kind;
  std::string var;
  ConstraintPtr domain;
  PatternPtr body;
  std::vector<std::pair<std::string, ConstraintPtr>> scopes;
};
std::vector<IterOccurrence> iteration_occurrences(const PatternPtr& p);

// Parameterized schema: pattern plus a global constraint on the parameters.
struct Schema {
  PatternPtr pattern;
  ConstraintPtr constraint;
  std::string name;
};

// Free variables of pattern and constraint together.
std::set<std::string> parameters(const Schema& s);
bool equal(const Schema& a, const Schema& b);
std::string to_string(const Schema& s);
Schema apply_subst(const Schema& s, const Substitution& sub);

// Surface formulas before negation normal form: adds ~, ->, <->, xor.
struct Surface;
using SurfacePtr = std::shared_ptr<const Surface>;
struct Surface {
  enum class Kind { Top, Bottom, Lit, Not, And, Or, Implies, Iff, Xor, IterAnd, IterOr };
  Kind kind;
  IndexedLiteral lit;
  SurfacePtr left, right;
  std::string var;
  ConstraintPtr domain;
  SurfacePtr body;
};

SurfacePtr surf_top();
SurfacePtr surf_bottom();
SurfacePtr surf_lit(IndexedLiteral lit);
SurfacePtr surf_not(SurfacePtr a);
SurfacePtr surf_bin(Surface::Kind k, SurfacePtr l, SurfacePtr r);
SurfacePtr surf_iter(Surface::Kind k, std::string var, ConstraintPtr domain, SurfacePtr body);

// Expands ->, <->, xor and pushes negation to the literals. Checks that
// every symbol is used with one fixed arity.
PatternPtr desugar_to_nnf(const SurfacePtr& s);

}  // namespace schemasat
