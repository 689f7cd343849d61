#pragma once

#include "schemasat/schema_ops.hpp"

namespace schemasat {

struct ParseError : Error {
  ParseError(const std::string& msg, int line, int col)
      : Error("parse error at " + std::to_string(line) + ":" + std::to_string(col) +
              ": " + msg),
        line(line),
        col(col) {}
  int line, col;
};

struct IllFormed : Error {
  explicit IllFormed(std::vector<std::string> diags)
      : Error("ill-formed schema: " + join(diags)), diagnostics(std::move(diags)) {}
  std::vector<std::string> diagnostics;

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (auto& d : v) s += (s.empty() ? "" : "; ") + d;
    return s;
  }
};

// Problem file grammar:
//   schema NAME { params: n, m; constraint: C; pattern: P; }
//   P ::= true | false | SYM[e,...] | ~P | P /\ P | P \/ P | P -> P
//       | P <-> P | P xor P | And x in D: P | Or x in D: P | (P)
//   D ::= [e1..e2] | {C}
//   C ::= true | false | e REL e | ~C | C /\ C | C \/ C
//       | exists x. C | forall x. C | (C)      REL in = != < <= > >=
//   e ::= linear expressions with + - and integer-constant coefficients
// Iteration bodies bind tightly; parenthesize compound bodies.
Schema parse_problem(const std::string& text);

// Surface form only, no desugaring or well-formedness checks.
SurfacePtr parse_pattern_text(const std::string& text);
ConstraintPtr parse_constraint_text(const std::string& text);

}  // namespace schemasat
