#pragma once

#include "schemasat/pattern.hpp"

namespace schemasat {

// Problem-file text; parse_problem(format_schema(s)) rebuilds the same AST
// for schemata in negation normal form.
std::string format_schema(const Schema& s);

std::string format_pattern(const PatternPtr& p);
std::string format_constraint(const ConstraintPtr& c);

// [lo..hi] when the domain is syntactically lo<=x /\ x<=hi.
std::optional<std::pair<LinearExpr, LinearExpr>> frame_of(const ConstraintPtr& domain,
                                                          const std::string& var);

}  // namespace schemasat
