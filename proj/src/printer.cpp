#include "schemasat/printer.hpp"

#include <optional>

namespace schemasat {

std::optional<std::pair<LinearExpr, LinearExpr>> frame_of(const ConstraintPtr& domain,
                                                          const std::string& var) {
  if (domain->kind != Constraint::Kind::And || domain->kids.size() != 2)
    return std::nullopt;
  const ConstraintPtr& lo = domain->kids[0];
  const ConstraintPtr& hi = domain->kids[1];
  if (lo->kind != Constraint::Kind::Cmp || hi->kind != Constraint::Kind::Cmp)
    return std::nullopt;
  if (lo->rel != Rel::Le || hi->rel != Rel::Le) return std::nullopt;
  // lo: e1 <= var, hi: var <= e2
  if (!(lo->rhs == LinearExpr::var(var)) || lo->lhs.mentions(var)) return std::nullopt;
  if (!(hi->lhs == LinearExpr::var(var)) || hi->rhs.mentions(var)) return std::nullopt;
  return std::make_pair(lo->lhs, hi->rhs);
}

namespace {

// precedence: or 2, and 3, unary 4, atoms 5
std::string pat_print(const PatternPtr& p, int parent_prec) {
  auto wrap = [&](const std::string& s, int prec) {
    return prec < parent_prec ? "(" + s + ")" : s;
  };
  switch (p->kind) {
    case Pattern::Kind::Top: return "true";
    case Pattern::Kind::Bottom: return "false";
    case Pattern::Kind::Lit: return p->lit.to_string();
    case Pattern::Kind::Not: return wrap("~" + pat_print(p->left, 5), 4);
    case Pattern::Kind::And:
      return wrap(pat_print(p->left, 3) + " /\\ " + pat_print(p->right, 4), 3);
    case Pattern::Kind::Or:
      return wrap(pat_print(p->left, 2) + " \\/ " + pat_print(p->right, 3), 2);
    case Pattern::Kind::IterAnd:
    case Pattern::Kind::IterOr: {
      std::string s = p->kind == Pattern::Kind::IterAnd ? "And " : "Or ";
      s += p->var + " in ";
      if (auto fr = frame_of(p->domain, p->var))
        s += "[" + fr->first.to_string() + ".." + fr->second.to_string() + "]";
      else
        s += "{" + to_string(p->domain) + "}";
      s += ": " + pat_print(p->body, 5);
      return wrap(s, 4);
    }
  }
  return "?";
}

}  // namespace

std::string format_pattern(const PatternPtr& p) { return pat_print(p, 0); }

std::string format_constraint(const ConstraintPtr& c) { return to_string(c); }

std::string format_schema(const Schema& s) {
  std::string out = "schema " + (s.name.empty() ? std::string("anon") : s.name) + " {\n";
  out += "  params:";
  bool first = true;
  for (auto& p : parameters(s)) {
    out += first ? " " : ", ";
    out += p;
    first = false;
  }
  out += ";\n";
  out += "  constraint: " + format_constraint(s.constraint) + ";\n";
  out += "  pattern: " + format_pattern(s.pattern) + ";\n";
  out += "}\n";
  return out;
}

}  // namespace schemasat
