#include "schemasat/schema_ops.hpp"

#include <algorithm>
#include <functional>

namespace schemasat {

namespace {

PropPtr realize_pattern(const PatternPtr& p, Environment& env) {
  switch (p->kind) {
    case Pattern::Kind::Top: return prop_top();
    case Pattern::Kind::Bottom: return prop_bottom();
    case Pattern::Kind::Lit:
      return p->lit.positive ? prop_atom(p->lit.ground_name(env))
                             : prop_neg(p->lit.ground_name(env));
    case Pattern::Kind::Not: {
      PropPtr inner = realize_pattern(p->left, env);
      switch (inner->kind) {
        case PropFormula::Kind::Top: return prop_bottom();
        case PropFormula::Kind::Bottom: return prop_top();
        case PropFormula::Kind::Atom: return prop_neg(inner->atom);
        case PropFormula::Kind::Neg: return prop_atom(inner->atom);
        default: throw InternalError("negation above a compound pattern");
      }
    }
    case Pattern::Kind::And:
      return prop_and({realize_pattern(p->left, env), realize_pattern(p->right, env)});
    case Pattern::Kind::Or:
      return prop_or({realize_pattern(p->left, env), realize_pattern(p->right, env)});
    case Pattern::Kind::IterAnd:
    case Pattern::Kind::IterOr: {
      std::vector<long long> range = solution_range(p->domain, p->var, env);
      std::vector<PropPtr> kids;
      kids.reserve(range.size());
      auto saved = env.find(p->var) != env.end()
                       ? std::optional<long long>(env[p->var])
                       : std::nullopt;
      for (long long i : range) {
        env[p->var] = i;
        kids.push_back(realize_pattern(p->body, env));
      }
      if (saved) env[p->var] = *saved; else env.erase(p->var);
      return p->kind == Pattern::Kind::IterAnd ? prop_and(std::move(kids))
                                               : prop_or(std::move(kids));
    }
  }
  return prop_top();
}

}  // namespace

PropPtr realize(const Schema& s, const Environment& env) {
  if (!evaluate(s.constraint, env))
    throw EvalError("assignment does not satisfy the schema constraint");
  Environment scratch = env;
  return realize_pattern(s.pattern, scratch);
}

ConstraintPtr context(const Schema& s) {
  std::vector<ConstraintPtr> parts{s.constraint};
  for (auto& it : iteration_occurrences(s.pattern)) parts.push_back(it.domain);
  return mk_and(std::move(parts));
}

ConstraintPtr occur_formula(const IndexedLiteral& lit, const Schema& s) {
  std::vector<ConstraintPtr> cases;
  for (auto& occ : literal_occurrences(s.pattern)) {
    if (occ.lit.positive != lit.positive || occ.lit.symbol != lit.symbol) continue;
    if (occ.lit.indices.size() != lit.indices.size())
      throw Error("arity mismatch for symbol " + lit.symbol);
    std::vector<ConstraintPtr> eqs;
    for (size_t i = 0; i < lit.indices.size(); ++i)
      eqs.push_back(mk_cmp(lit.indices[i], Rel::Eq, occ.lit.indices[i]));
    ConstraintPtr body = mk_and(std::move(eqs));
    for (auto it = occ.scopes.rbegin(); it != occ.scopes.rend(); ++it)
      body = mk_exists(it->first, mk_and(it->second, body));
    cases.push_back(body);
  }
  return mk_or(std::move(cases));
}

namespace {
Environment witness_to_env(const Schema& s, const std::map<std::string, long long>& w) {
  Environment env;
  for (auto& p : parameters(s)) {
    auto it = w.find(p);
    env[p] = it == w.end() ? 0 : it->second;
  }
  return env;
}
}  // namespace

OccurDecision always_occurs(const IndexedLiteral& lit, const Schema& s) {
  ConstraintPtr phi = occur_formula(lit, s);
  SatResult counter = is_satisfiable(mk_and(s.constraint, mk_not(phi)));
  if (!counter.sat) return {true, std::nullopt};
  return {false, witness_to_env(s, counter.witness)};
}

OccurDecision may_belong(const IndexedLiteral& lit, const Schema& s) {
  ConstraintPtr phi = occur_formula(lit, s);
  SatResult wit = is_satisfiable(mk_and(s.constraint, phi));
  if (!wit.sat) return {false, std::nullopt};
  return {true, witness_to_env(s, wit.witness)};
}

std::optional<Environment> smallest_environment(const Schema& s) {
  SatResult r = is_satisfiable(s.constraint);
  if (!r.sat) return std::nullopt;
  return witness_to_env(s, r.witness);
}

std::vector<IndexedLiteral> literal_set(const Schema& s) {
  auto env = smallest_environment(s);
  if (!env) return {};
  std::set<std::string> params = parameters(s);

  // the candidates are the parameter-only syntactic literals
  std::vector<IndexedLiteral> candidates;
  for (auto& occ : literal_occurrences(s.pattern)) {
    bool param_only = true;
    for (auto& e : occ.lit.indices)
      for (auto& [name, _] : e.coeffs())
        if (!params.count(name)) param_only = false;
    if (!param_only) continue;
    if (std::find(candidates.begin(), candidates.end(), occ.lit) == candidates.end())
      candidates.push_back(occ.lit);
  }

  // prefilter against one realization, then decide exactly
  PropPtr ground = realize(s, *env);
  std::set<std::pair<bool, std::string>> present;
  std::vector<const PropFormula*> stack{ground.get()};
  while (!stack.empty()) {
    const PropFormula* n = stack.back();
    stack.pop_back();
    if (n->kind == PropFormula::Kind::Atom) present.insert({true, n->atom});
    if (n->kind == PropFormula::Kind::Neg) present.insert({false, n->atom});
    for (auto& k : n->kids) stack.push_back(k.get());
  }

  std::vector<IndexedLiteral> out;
  for (auto& lit : candidates) {
    if (!present.count({lit.positive, lit.ground_name(*env)})) continue;
    if (always_occurs(lit, s).holds) out.push_back(lit);
  }
  std::sort(out.begin(), out.end());
  return out;
}

PatternPtr replace_literal_occurrences(const PatternPtr& p, const IndexedLiteral& target,
                                       PatternPtr repl) {
  switch (p->kind) {
    case Pattern::Kind::Lit:
      if (p->lit.same_atom(target)) return p->lit.positive ? repl : pat_not(repl);
      return p;
    case Pattern::Kind::Not:
      return pat_not(replace_literal_occurrences(p->left, target, repl));
    case Pattern::Kind::And:
      return pat_and(replace_literal_occurrences(p->left, target, repl),
                     replace_literal_occurrences(p->right, target, repl));
    case Pattern::Kind::Or:
      return pat_or(replace_literal_occurrences(p->left, target, repl),
                    replace_literal_occurrences(p->right, target, repl));
    case Pattern::Kind::IterAnd:
    case Pattern::Kind::IterOr:
      return pat_iter(p->kind, p->var, p->domain,
                      replace_literal_occurrences(p->body, target, repl));
    default: return p;
  }
}

PatternPtr replace_signed_literal(const PatternPtr& p, const IndexedLiteral& lit,
                                  const PatternPtr& repl) {
  switch (p->kind) {
    case Pattern::Kind::Lit: return p->lit == lit ? repl : p;
    case Pattern::Kind::Not: return pat_not(replace_signed_literal(p->left, lit, repl));
    case Pattern::Kind::And:
      return pat_and(replace_signed_literal(p->left, lit, repl),
                     replace_signed_literal(p->right, lit, repl));
    case Pattern::Kind::Or:
      return pat_or(replace_signed_literal(p->left, lit, repl),
                    replace_signed_literal(p->right, lit, repl));
    case Pattern::Kind::IterAnd:
    case Pattern::Kind::IterOr:
      return pat_iter(p->kind, p->var, p->domain,
                      replace_signed_literal(p->body, lit, repl));
    default: return p;
  }
}

std::vector<std::string> check_wellformed(const Schema& s) {
  std::vector<std::string> out;

  std::map<std::string, size_t> arity;
  for (auto& occ : literal_occurrences(s.pattern)) {
    auto [it, fresh] = arity.emplace(occ.lit.symbol, occ.lit.indices.size());
    if (!fresh && it->second != occ.lit.indices.size())
      out.push_back("symbol " + occ.lit.symbol + " used with inconsistent arity");
  }

  std::function<void(const PatternPtr&)> scan_not = [&](const PatternPtr& p) {
    if (p->kind == Pattern::Kind::Not)
      out.push_back("negation above a non-literal: " + to_string(p));
    if (p->left) scan_not(p->left);
    if (p->right) scan_not(p->right);
    if (p->body) scan_not(p->body);
  };
  scan_not(s.pattern);

  std::vector<std::string> binders = pattern_binders(s.pattern);
  std::set<std::string> seen;
  for (auto& b : binders)
    if (!seen.insert(b).second) out.push_back("duplicate binder " + b);

  std::set<std::string> params = parameters(s);
  for (auto& b : binders)
    if (params.count(b)) out.push_back("variable " + b + " is both bound and free");

  for (auto& it : iteration_occurrences(s.pattern))
    if (!encloses(it.domain, it.var))
      out.push_back("non-enclosing domain for binder " + it.var + ": {" +
                    to_string(it.domain) + "}");

  if (has_quantifier(s.constraint))
    out.push_back("schema constraint contains quantifiers");

  for (auto& p : params) {
    if (seen.count(p)) continue;  // already reported as bound+free
    if (!entails(s.constraint, mk_cmp(LinearExpr::var(p), Rel::Ge, LinearExpr(0))))
      out.push_back("constraint does not entail " + p + ">=0");
  }

  return out;
}

}  // namespace schemasat
