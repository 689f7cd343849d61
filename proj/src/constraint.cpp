#include "schemasat/constraint.hpp"

#include <algorithm>

namespace schemasat {

Rel negate_rel(Rel r) {
  switch (r) {
    case Rel::Eq: return Rel::Ne;
    case Rel::Ne: return Rel::Eq;
    case Rel::Lt: return Rel::Ge;
    case Rel::Le: return Rel::Gt;
    case Rel::Gt: return Rel::Le;
    case Rel::Ge: return Rel::Lt;
  }
  return Rel::Eq;
}

const char* rel_symbol(Rel r) {
  switch (r) {
    case Rel::Eq: return "=";
    case Rel::Ne: return "!=";
    case Rel::Lt: return "<";
    case Rel::Le: return "<=";
    case Rel::Gt: return ">";
    case Rel::Ge: return ">=";
  }
  return "?";
}

bool eval_rel(long long lhs, Rel r, long long rhs) {
  switch (r) {
    case Rel::Eq: return lhs == rhs;
    case Rel::Ne: return lhs != rhs;
    case Rel::Lt: return lhs < rhs;
    case Rel::Le: return lhs <= rhs;
    case Rel::Gt: return lhs > rhs;
    case Rel::Ge: return lhs >= rhs;
  }
  return false;
}

namespace {
ConstraintPtr make(Constraint c) { return std::make_shared<Constraint>(std::move(c)); }
}  // namespace

ConstraintPtr mk_true() {
  static ConstraintPtr t = make({.kind = Constraint::Kind::True});
  return t;
}

ConstraintPtr mk_false() {
  static ConstraintPtr f = make({.kind = Constraint::Kind::False});
  return f;
}

ConstraintPtr mk_bool(bool b) { return b ? mk_true() : mk_false(); }

ConstraintPtr mk_cmp(LinearExpr lhs, Rel r, LinearExpr rhs) {
  LinearExpr d = lhs - rhs;
  if (d.is_constant()) return mk_bool(eval_rel(d.constant(), r, 0));
  Constraint c{.kind = Constraint::Kind::Cmp};
  c.lhs = std::move(lhs);
  c.rhs = std::move(rhs);
  c.rel = r;
  return make(std::move(c));
}

ConstraintPtr mk_divides(long long m, LinearExpr arg) {
  if (m < 0) m = -m;
  if (m == 0) throw Error("zero divisor in divisibility atom");
  if (m == 1) return mk_true();
  if (arg.is_constant()) {
    long long r = arg.constant() % m;
    return mk_bool(r == 0);
  }
  Constraint c{.kind = Constraint::Kind::Divides};
  c.divisor = m;
  c.arg = std::move(arg);
  return make(std::move(c));
}

ConstraintPtr mk_not(ConstraintPtr c) {
  switch (c->kind) {
    case Constraint::Kind::True: return mk_false();
    case Constraint::Kind::False: return mk_true();
    case Constraint::Kind::Cmp: return mk_cmp(c->lhs, negate_rel(c->rel), c->rhs);
    case Constraint::Kind::Not: return c->kids[0];
    default: break;
  }
  Constraint n{.kind = Constraint::Kind::Not};
  n.kids = {std::move(c)};
  return make(std::move(n));
}

namespace {
// flatten + drop duplicates, keeping first occurrences
void push_unique(std::vector<ConstraintPtr>& flat, const ConstraintPtr& k) {
  for (auto& seen : flat)
    if (equal(seen, k)) return;
  flat.push_back(k);
}
}  // namespace

ConstraintPtr mk_and(std::vector<ConstraintPtr> kids) {
  std::vector<ConstraintPtr> flat;
  for (auto& k : kids) {
    if (is_true(k)) continue;
    if (is_false(k)) return mk_false();
    if (k->kind == Constraint::Kind::And)
      for (auto& kk : k->kids) push_unique(flat, kk);
    else
      push_unique(flat, k);
  }
  if (flat.empty()) return mk_true();
  if (flat.size() == 1) return flat[0];
  Constraint c{.kind = Constraint::Kind::And};
  c.kids = std::move(flat);
  return make(std::move(c));
}

ConstraintPtr mk_or(std::vector<ConstraintPtr> kids) {
  std::vector<ConstraintPtr> flat;
  for (auto& k : kids) {
    if (is_false(k)) continue;
    if (is_true(k)) return mk_true();
    if (k->kind == Constraint::Kind::Or)
      for (auto& kk : k->kids) push_unique(flat, kk);
    else
      push_unique(flat, k);
  }
  if (flat.empty()) return mk_false();
  if (flat.size() == 1) return flat[0];
  Constraint c{.kind = Constraint::Kind::Or};
  c.kids = std::move(flat);
  return make(std::move(c));
}

ConstraintPtr mk_and(ConstraintPtr a, ConstraintPtr b) {
  return mk_and(std::vector<ConstraintPtr>{std::move(a), std::move(b)});
}
ConstraintPtr mk_or(ConstraintPtr a, ConstraintPtr b) {
  return mk_or(std::vector<ConstraintPtr>{std::move(a), std::move(b)});
}

ConstraintPtr mk_exists(std::string var, ConstraintPtr body) {
  if (is_true(body) || is_false(body)) return body;
  Constraint c{.kind = Constraint::Kind::Exists};
  c.var = std::move(var);
  c.body = std::move(body);
  return make(std::move(c));
}

ConstraintPtr mk_forall(std::string var, ConstraintPtr body) {
  if (is_true(body) || is_false(body)) return body;
  Constraint c{.kind = Constraint::Kind::Forall};
  c.var = std::move(var);
  c.body = std::move(body);
  return make(std::move(c));
}

bool is_true(const ConstraintPtr& c) { return c->kind == Constraint::Kind::True; }
bool is_false(const ConstraintPtr& c) { return c->kind == Constraint::Kind::False; }

bool equal(const ConstraintPtr& a, const ConstraintPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Constraint::Kind::True:
    case Constraint::Kind::False: return true;
    case Constraint::Kind::Cmp:
      return a->rel == b->rel && a->lhs == b->lhs && a->rhs == b->rhs;
    case Constraint::Kind::Divides:
      return a->divisor == b->divisor && a->arg == b->arg;
    case Constraint::Kind::Not:
    case Constraint::Kind::And:
    case Constraint::Kind::Or: {
      if (a->kids.size() != b->kids.size()) return false;
      for (size_t i = 0; i < a->kids.size(); ++i)
        if (!equal(a->kids[i], b->kids[i])) return false;
      return true;
    }
    case Constraint::Kind::Exists:
    case Constraint::Kind::Forall:
      return a->var == b->var && equal(a->body, b->body);
  }
  return false;
}

namespace {
void collect_free(const ConstraintPtr& c, std::set<std::string>& bound,
                  std::set<std::string>& out) {
  switch (c->kind) {
    case Constraint::Kind::True:
    case Constraint::Kind::False: return;
    case Constraint::Kind::Cmp:
      for (auto& [name, _] : c->lhs.coeffs())
        if (!bound.count(name)) out.insert(name);
      for (auto& [name, _] : c->rhs.coeffs())
        if (!bound.count(name)) out.insert(name);
      return;
    case Constraint::Kind::Divides:
      for (auto& [name, _] : c->arg.coeffs())
        if (!bound.count(name)) out.insert(name);
      return;
    case Constraint::Kind::Not:
    case Constraint::Kind::And:
    case Constraint::Kind::Or:
      for (auto& k : c->kids) collect_free(k, bound, out);
      return;
    case Constraint::Kind::Exists:
    case Constraint::Kind::Forall: {
      bool fresh = bound.insert(c->var).second;
      collect_free(c->body, bound, out);
      if (fresh) bound.erase(c->var);
      return;
    }
  }
}
}  // namespace

void collect_free_vars(const ConstraintPtr& c, std::set<std::string>& out) {
  std::set<std::string> bound;
  collect_free(c, bound, out);
}

std::set<std::string> free_vars(const ConstraintPtr& c) {
  std::set<std::string> out;
  collect_free_vars(c, out);
  return out;
}

bool mentions_free(const ConstraintPtr& c, const std::string& name) {
  return free_vars(c).count(name) != 0;
}

bool has_quantifier(const ConstraintPtr& c) {
  switch (c->kind) {
    case Constraint::Kind::Exists:
    case Constraint::Kind::Forall: return true;
    case Constraint::Kind::Not:
    case Constraint::Kind::And:
    case Constraint::Kind::Or:
      return std::any_of(c->kids.begin(), c->kids.end(),
                         [](const ConstraintPtr& k) { return has_quantifier(k); });
    default: return false;
  }
}

namespace {
LinearExpr subst_expr_checked(const LinearExpr& e, const Substitution& sub,
                              const std::set<std::string>& bound) {
  LinearExpr out(e.constant());
  for (auto& [name, c] : e.coeffs()) {
    if (bound.count(name)) {  // bound occurrence, never replaced
      out = out + LinearExpr::var(name, c);
      continue;
    }
    auto it = sub.find(name);
    if (it == sub.end()) {
      out = out + LinearExpr::var(name, c);
      continue;
    }
    for (auto& [rname, _] : it->second.coeffs())
      if (bound.count(rname))
        throw CaptureError("substitution captures bound variable " + rname);
    out = out + it->second.scaled(c);
  }
  return out;
}

ConstraintPtr subst_rec(const ConstraintPtr& c, const Substitution& sub,
                        std::set<std::string>& bound) {
  switch (c->kind) {
    case Constraint::Kind::True:
    case Constraint::Kind::False: return c;
    case Constraint::Kind::Cmp:
      return mk_cmp(subst_expr_checked(c->lhs, sub, bound), c->rel,
                    subst_expr_checked(c->rhs, sub, bound));
    case Constraint::Kind::Divides:
      return mk_divides(c->divisor, subst_expr_checked(c->arg, sub, bound));
    case Constraint::Kind::Not: return mk_not(subst_rec(c->kids[0], sub, bound));
    case Constraint::Kind::And: {
      std::vector<ConstraintPtr> kids;
      kids.reserve(c->kids.size());
      for (auto& k : c->kids) kids.push_back(subst_rec(k, sub, bound));
      return mk_and(std::move(kids));
    }
    case Constraint::Kind::Or: {
      std::vector<ConstraintPtr> kids;
      kids.reserve(c->kids.size());
      for (auto& k : c->kids) kids.push_back(subst_rec(k, sub, bound));
      return mk_or(std::move(kids));
    }
    case Constraint::Kind::Exists:
    case Constraint::Kind::Forall: {
      bool fresh = bound.insert(c->var).second;
      ConstraintPtr body = subst_rec(c->body, sub, bound);
      if (fresh) bound.erase(c->var);
      return c->kind == Constraint::Kind::Exists ? mk_exists(c->var, body)
                                                 : mk_forall(c->var, body);
    }
  }
  return c;
}
}  // namespace

ConstraintPtr apply_subst(const ConstraintPtr& c, const Substitution& sub) {
  if (sub.empty()) return c;
  std::set<std::string> bound;
  return subst_rec(c, sub, bound);
}

std::vector<ConstraintPtr> conjuncts(const ConstraintPtr& c) {
  if (c->kind == Constraint::Kind::And) return c->kids;
  if (is_true(c)) return {};
  return {c};
}

namespace {
// precedence: atoms > not > and > or > quantifier
std::string print(const ConstraintPtr& c, int parent_prec) {
  auto wrap = [&](const std::string& s, int prec) {
    return prec < parent_prec ? "(" + s + ")" : s;
  };
  switch (c->kind) {
    case Constraint::Kind::True: return "true";
    case Constraint::Kind::False: return "false";
    case Constraint::Kind::Cmp:
      return wrap(c->lhs.to_string() + rel_symbol(c->rel) + c->rhs.to_string(), 4);
    case Constraint::Kind::Divides:
      return wrap("div(" + std::to_string(c->divisor) + "," + c->arg.to_string() + ")", 4);
    case Constraint::Kind::Not: return wrap("~" + print(c->kids[0], 4), 3);
    case Constraint::Kind::And: {
      std::string s;
      for (size_t i = 0; i < c->kids.size(); ++i) {
        if (i) s += " /\\ ";
        s += print(c->kids[i], 3);
      }
      return wrap(s, 2);
    }
    case Constraint::Kind::Or: {
      std::string s;
      for (size_t i = 0; i < c->kids.size(); ++i) {
        if (i) s += " \\/ ";
        s += print(c->kids[i], 2);
      }
      return wrap(s, 1);
    }
    case Constraint::Kind::Exists:
      return wrap("exists " + c->var + ". " + print(c->body, 0), 0);
    case Constraint::Kind::Forall:
      return wrap("forall " + c->var + ". " + print(c->body, 0), 0);
  }
  return "?";
}
}  // namespace

std::string to_string(const ConstraintPtr& c) { return print(c, 0); }

}  // namespace schemasat
