#pragma once

#include <optional>

#include "schemasat/arith.hpp"
#include "schemasat/pattern.hpp"
#include "schemasat/propformula.hpp"

namespace schemasat {

using Environment = std::map<std::string, long long>;

// Ground propositional formula obtained by fixing the parameters and
// expanding every iteration over the integer solutions of its domain.
// Throws EvalError when env is not an environment of s.
PropPtr realize(const Schema& s, const Environment& env);

// Schema constraint conjoined with every iteration domain of the pattern.
ConstraintPtr context(const Schema& s);

// Disjunction, over the same-sign same-symbol occurrences of L's atom, of
// the existentially closed index-agreement formulas. The existential prefix
// covers the binders enclosing each occurrence together with their domains.
ConstraintPtr occur_formula(const IndexedLiteral& lit, const Schema& s);

struct OccurDecision {
  bool holds;
  // counterexample environment when always_occurs fails, witness
  // environment when may_belong holds
  std::optional<Environment> env;
};

// The ground instance of lit occurs positively in every realization of s.
OccurDecision always_occurs(const IndexedLiteral& lit, const Schema& s);
// Some environment realizes s with the ground instance of lit occurring.
OccurDecision may_belong(const IndexedLiteral& lit, const Schema& s);

// Least witness of the schema constraint, when satisfiable.
std::optional<Environment> smallest_environment(const Schema& s);

// Parameter-only syntactic literals whose ground instance occurs in every
// realization, computed by scanning one realization and filtering with
// always_occurs.
std::vector<IndexedLiteral> literal_set(const Schema& s);

// Syntactic replacement of an indexed proposition (both polarities; a
// negative occurrence becomes the negation of the replacement).
PatternPtr replace_literal_occurrences(const PatternPtr& p, const IndexedLiteral& target,
                                       PatternPtr repl);
// Sign-matched variant: only occurrences equal to lit (including polarity).
PatternPtr replace_signed_literal(const PatternPtr& p, const IndexedLiteral& lit,
                                  const PatternPtr& repl);

// Empty iff every schema/pattern invariant holds; each entry names the
// violated condition and the offending subterm.
std::vector<std::string> check_wellformed(const Schema& s);

}  // namespace schemasat
