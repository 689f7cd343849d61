#include "schemasat/pattern.hpp"

#include <algorithm>

namespace schemasat {

std::string IndexedLiteral::to_string() const {
  std::string s = positive ? "" : "~";
  s += symbol + "[";
  for (size_t i = 0; i < indices.size(); ++i) {
    if (i) s += ",";
    s += indices[i].to_string();
  }
  return s + "]";
}

std::string IndexedLiteral::ground_name(const std::map<std::string, long long>& env) const {
  std::string s = symbol + "(";
  for (size_t i = 0; i < indices.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(indices[i].evaluate(env));
  }
  return s + ")";
}

namespace {
PatternPtr make(Pattern p) { return std::make_shared<Pattern>(std::move(p)); }
}  // namespace

PatternPtr pat_top() {
  static PatternPtr t = make({.kind = Pattern::Kind::Top});
  return t;
}
PatternPtr pat_bottom() {
  static PatternPtr b = make({.kind = Pattern::Kind::Bottom});
  return b;
}
PatternPtr pat_lit(IndexedLiteral lit) {
  Pattern p{.kind = Pattern::Kind::Lit};
  p.lit = std::move(lit);
  return make(std::move(p));
}
PatternPtr pat_not(PatternPtr a) {
  Pattern p{.kind = Pattern::Kind::Not};
  p.left = std::move(a);
  return make(std::move(p));
}
PatternPtr pat_and(PatternPtr l, PatternPtr r) {
  Pattern p{.kind = Pattern::Kind::And};
  p.left = std::move(l);
  p.right = std::move(r);
  return make(std::move(p));
}
PatternPtr pat_or(PatternPtr l, PatternPtr r) {
  Pattern p{.kind = Pattern::Kind::Or};
  p.left = std::move(l);
  p.right = std::move(r);
  return make(std::move(p));
}
PatternPtr pat_iter(Pattern::Kind kind, std::string var, ConstraintPtr domain,
                    PatternPtr body) {
  Pattern p{.kind = kind};
  p.var = std::move(var);
  p.domain = std::move(domain);
  p.body = std::move(body);
  return make(std::move(p));
}

bool is_iteration(const PatternPtr& p) {
  return p->kind == Pattern::Kind::IterAnd || p->kind == Pattern::Kind::IterOr;
}

bool equal(const PatternPtr& a, const PatternPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Pattern::Kind::Top:
    case Pattern::Kind::Bottom: return true;
    case Pattern::Kind::Lit: return a->lit == b->lit;
    case Pattern::Kind::Not: return equal(a->left, b->left);
    case Pattern::Kind::And:
    case Pattern::Kind::Or:
      return equal(a->left, b->left) && equal(a->right, b->right);
    case Pattern::Kind::IterAnd:
    case Pattern::Kind::IterOr:
      return a->var == b->var && equal(a->domain, b->domain) && equal(a->body, b->body);
  }
  return false;
}

std::string to_string(const PatternPtr& p) {
  switch (p->kind) {
    case Pattern::Kind::Top: return "true";
    case Pattern::Kind::Bottom: return "false";
    case Pattern::Kind::Lit: return p->lit.to_string();
    case Pattern::Kind::Not: return "~(" + to_string(p->left) + ")";
    case Pattern::Kind::And:
      return "(" + to_string(p->left) + " /\\ " + to_string(p->right) + ")";
    case Pattern::Kind::Or:
      return "(" + to_string(p->left) + " \\/ " + to_string(p->right) + ")";
    case Pattern::Kind::IterAnd:
    case Pattern::Kind::IterOr: {
      std::string head = p->kind == Pattern::Kind::IterAnd ? "And " : "Or ";
      return "(" + head + p->var + " in {" + schemasat::to_string(p->domain) +
             "}: " + to_string(p->body) + ")";
    }
  }
  return "?";
}

namespace {
void pattern_free_rec(const PatternPtr& p, std::set<std::string>& bound,
                      std::set<std::string>& out) {
  switch (p->kind) {
    case Pattern::Kind::Top:
    case Pattern::Kind::Bottom: return;
    case Pattern::Kind::Lit:
      for (auto& e : p->lit.indices)
        for (auto& [name, _] : e.coeffs())
          if (!bound.count(name)) out.insert(name);
      return;
    case Pattern::Kind::Not: pattern_free_rec(p->left, bound, out); return;
    case Pattern::Kind::And:
    case Pattern::Kind::Or:
      pattern_free_rec(p->left, bound, out);
      pattern_free_rec(p->right, bound, out);
      return;
    case Pattern::Kind::IterAnd:
    case Pattern::Kind::IterOr: {
      bool fresh = bound.insert(p->var).second;
      for (auto& name : free_vars(p->domain))
        if (!bound.count(name)) out.insert(name);
      pattern_free_rec(p->body, bound, out);
      if (fresh) bound.erase(p->var);
      return;
    }
  }
}

void binders_rec(const PatternPtr& p, std::vector<std::string>& out) {
  switch (p->kind) {
    case Pattern::Kind::Not: binders_rec(p->left, out); return;
    case Pattern::Kind::And:
    case Pattern::Kind::Or:
      binders_rec(p->left, out);
      binders_rec(p->right, out);
      return;
    case Pattern::Kind::IterAnd:
    case Pattern::Kind::IterOr:
      out.push_back(p->var);
      binders_rec(p->body, out);
      return;
    default: return;
  }
}
}  // namespace

std::set<std::string> pattern_free_vars(const PatternPtr& p) {
  std::set<std::string> bound, out;
  pattern_free_rec(p, bound, out);
  return out;
}

std::vector<std::string> pattern_binders(const PatternPtr& p) {
  std::vector<std::string> out;
  binders_rec(p, out);
  return out;
}

bool pattern_mentions_var(const PatternPtr& p, const std::string& name) {
  switch (p->kind) {
    case Pattern::Kind::Top:
    case Pattern::Kind::Bottom: return false;
    case Pattern::Kind::Lit:
      return std::any_of(p->lit.indices.begin(), p->lit.indices.end(),
                         [&](const LinearExpr& e) { return e.mentions(name); });
    case Pattern::Kind::Not: return pattern_mentions_var(p->left, name);
    case Pattern::Kind::And:
    case Pattern::Kind::Or:
      return pattern_mentions_var(p->left, name) || pattern_mentions_var(p->right, name);
    case Pattern::Kind::IterAnd:
    case Pattern::Kind::IterOr:
      if (p->var == name) return free_vars(p->domain).count(name) != 0;
      return mentions_free(p->domain, name) || pattern_mentions_var(p->body, name);
  }
  return false;
}

namespace {
LinearExpr subst_index(const LinearExpr& e, const Substitution& sub,
                       const std::set<std::string>& bound) {
  LinearExpr out(e.constant());
  for (auto& [name, c] : e.coeffs()) {
    auto it = bound.count(name) ? sub.end() : sub.find(name);
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

PatternPtr subst_rec(const PatternPtr& p, const Substitution& sub,
                     std::set<std::string>& bound) {
  switch (p->kind) {
    case Pattern::Kind::Top:
    case Pattern::Kind::Bottom: return p;
    case Pattern::Kind::Lit: {
      IndexedLiteral lit = p->lit;
      for (auto& e : lit.indices) e = subst_index(e, sub, bound);
      return pat_lit(std::move(lit));
    }
    case Pattern::Kind::Not: return pat_not(subst_rec(p->left, sub, bound));
    case Pattern::Kind::And:
      return pat_and(subst_rec(p->left, sub, bound), subst_rec(p->right, sub, bound));
    case Pattern::Kind::Or:
      return pat_or(subst_rec(p->left, sub, bound), subst_rec(p->right, sub, bound));
    case Pattern::Kind::IterAnd:
    case Pattern::Kind::IterOr: {
      bool fresh = bound.insert(p->var).second;
      Substitution masked = sub;
      masked.erase(p->var);
      for (auto& [name, repl] : masked) {
        if (!mentions_free(p->domain, name)) continue;
        for (auto& [rname, _] : repl.coeffs())
          if (bound.count(rname))
            throw CaptureError("substitution captures bound variable " + rname);
      }
      ConstraintPtr dom = apply_subst(p->domain, masked);
      PatternPtr body = subst_rec(p->body, masked, bound);
      if (fresh) bound.erase(p->var);
      return pat_iter(p->kind, p->var, dom, body);
    }
  }
  return p;
}
}  // namespace

PatternPtr apply_subst(const PatternPtr& p, const Substitution& sub) {
  if (sub.empty()) return p;
  std::set<std::string> bound;
  return subst_rec(p, sub, bound);
}

std::string pos_to_string(const Pos& pos) {
  std::string s;
  for (int i : pos) s += std::to_string(i) + ".";
  if (!s.empty()) s.pop_back();
  return s;
}

PatternPtr subpattern_at(const PatternPtr& p, const Pos& pos) {
  PatternPtr cur = p;
  for (int step : pos) {
    switch (cur->kind) {
      case Pattern::Kind::Not:
        if (step != 0) throw Error("bad position step");
        cur = cur->left;
        break;
      case Pattern::Kind::And:
      case Pattern::Kind::Or:
        if (step == 0)
          cur = cur->left;
        else if (step == 1)
          cur = cur->right;
        else
          throw Error("bad position step");
        break;
      case Pattern::Kind::IterAnd:
      case Pattern::Kind::IterOr:
        if (step != 0) throw Error("bad position step");
        cur = cur->body;
        break;
      default: throw Error("position leads below a leaf");
    }
  }
  return cur;
}

PatternPtr replace_subpattern(const PatternPtr& p, const Pos& pos, PatternPtr repl) {
  if (pos.empty()) return repl;
  Pos rest(pos.begin() + 1, pos.end());
  switch (p->kind) {
    case Pattern::Kind::Not:
      return pat_not(replace_subpattern(p->left, rest, std::move(repl)));
    case Pattern::Kind::And:
      return pos[0] == 0
                 ? pat_and(replace_subpattern(p->left, rest, std::move(repl)), p->right)
                 : pat_and(p->left, replace_subpattern(p->right, rest, std::move(repl)));
    case Pattern::Kind::Or:
      return pos[0] == 0
                 ? pat_or(replace_subpattern(p->left, rest, std::move(repl)), p->right)
                 : pat_or(p->left, replace_subpattern(p->right, rest, std::move(repl)));
    case Pattern::Kind::IterAnd:
    case Pattern::Kind::IterOr:
      return pat_iter(p->kind, p->var, p->domain,
                      replace_subpattern(p->body, rest, std::move(repl)));
    default: throw Error("position leads below a leaf");
  }
}

namespace {
void lit_occ_rec(const PatternPtr& p, Pos& pos,
                 std::vector<std::pair<std::string, ConstraintPtr>>& scopes,
                 std::vector<LitOccurrence>& out) {
  switch (p->kind) {
    case Pattern::Kind::Lit: out.push_back({pos, p->lit, scopes}); return;
    case Pattern::Kind::Not:
      pos.push_back(0);
      lit_occ_rec(p->left, pos, scopes, out);
      pos.pop_back();
      return;
    case Pattern::Kind::And:
    case Pattern::Kind::Or:
      pos.push_back(0);
      lit_occ_rec(p->left, pos, scopes, out);
      pos.back() = 1;
      lit_occ_rec(p->right, pos, scopes, out);
      pos.pop_back();
      return;
    case Pattern::Kind::IterAnd:
    case Pattern::Kind::IterOr:
      scopes.emplace_back(p->var, p->domain);
      pos.push_back(0);
      lit_occ_rec(p->body, pos, scopes, out);
      pos.pop_back();
      scopes.pop_back();
      return;
    default: return;
  }
}

void iter_occ_rec(const PatternPtr& p, Pos& pos,
                  std::vector<std::pair<std::string, ConstraintPtr>>& scopes,
                  std::vector<IterOccurrence>& out) {
  switch (p->kind) {
    case Pattern::Kind::Not:
      pos.push_back(0);
      iter_occ_rec(p->left, pos, scopes, out);
      pos.pop_back();
      return;
    case Pattern::Kind::And:
    case Pattern::Kind::Or:
      pos.push_back(0);
      iter_occ_rec(p->left, pos, scopes, out);
      pos.back() = 1;
      iter_occ_rec(p->right, pos, scopes, out);
      pos.pop_back();
      return;
    case Pattern::Kind::IterAnd:
    case Pattern::Kind::IterOr:
      out.push_back({pos, p->kind, p->var, p->domain, p->body, scopes});
      scopes.emplace_back(p->var, p->domain);
      pos.push_back(0);
      iter_occ_rec(p->body, pos, scopes, out);
      pos.pop_back();
      scopes.pop_back();
      return;
    default: return;
  }
}
}  // namespace

std::vector<LitOccurrence> literal_occurrences(const PatternPtr& p) {
  std::vector<LitOccurrence> out;
  Pos pos;
  std::vector<std::pair<std::string, ConstraintPtr>> scopes;
  lit_occ_rec(p, pos, scopes, out);
  return out;
}

std::vector<IterOccurrence> iteration_occurrences(const PatternPtr& p) {
  std::vector<IterOccurrence> out;
  Pos pos;
  std::vector<std::pair<std::string, ConstraintPtr>> scopes;
  iter_occ_rec(p, pos, scopes, out);
  return out;
}

std::set<std::string> parameters(const Schema& s) {
  std::set<std::string> out = pattern_free_vars(s.pattern);
  collect_free_vars(s.constraint, out);
  return out;
}

bool equal(const Schema& a, const Schema& b) {
  return equal(a.pattern, b.pattern) && equal(a.constraint, b.constraint);
}

std::string to_string(const Schema& s) {
  return to_string(s.pattern) + " with " + to_string(s.constraint);
}

Schema apply_subst(const Schema& s, const Substitution& sub) {
  return {apply_subst(s.pattern, sub), apply_subst(s.constraint, sub), s.name};
}

namespace {
SurfacePtr smake(Surface s) { return std::make_shared<Surface>(std::move(s)); }
}  // namespace

SurfacePtr surf_top() { return smake({.kind = Surface::Kind::Top}); }
SurfacePtr surf_bottom() { return smake({.kind = Surface::Kind::Bottom}); }
SurfacePtr surf_lit(IndexedLiteral lit) {
  Surface s{.kind = Surface::Kind::Lit};
  s.lit = std::move(lit);
  return smake(std::move(s));
}
SurfacePtr surf_not(SurfacePtr a) {
  Surface s{.kind = Surface::Kind::Not};
  s.left = std::move(a);
  return smake(std::move(s));
}
SurfacePtr surf_bin(Surface::Kind k, SurfacePtr l, SurfacePtr r) {
  Surface s{.kind = k};
  s.left = std::move(l);
  s.right = std::move(r);
  return smake(std::move(s));
}
SurfacePtr surf_iter(Surface::Kind k, std::string var, ConstraintPtr domain,
                     SurfacePtr body) {
  Surface s{.kind = k};
  s.var = std::move(var);
  s.domain = std::move(domain);
  s.body = std::move(body);
  return smake(std::move(s));
}

namespace {
void check_arities(const SurfacePtr& s, std::map<std::string, size_t>& arity) {
  switch (s->kind) {
    case Surface::Kind::Lit: {
      auto [it, fresh] = arity.emplace(s->lit.symbol, s->lit.indices.size());
      if (!fresh && it->second != s->lit.indices.size())
        throw Error("symbol " + s->lit.symbol + " used with inconsistent arity");
      return;
    }
    case Surface::Kind::Not: check_arities(s->left, arity); return;
    case Surface::Kind::IterAnd:
    case Surface::Kind::IterOr: check_arities(s->body, arity); return;
    case Surface::Kind::Top:
    case Surface::Kind::Bottom: return;
    default:
      check_arities(s->left, arity);
      check_arities(s->right, arity);
      return;
  }
}

PatternPtr nnf(const SurfacePtr& s, bool positive) {
  switch (s->kind) {
    case Surface::Kind::Top: return positive ? pat_top() : pat_bottom();
    case Surface::Kind::Bottom: return positive ? pat_bottom() : pat_top();
    case Surface::Kind::Lit: {
      IndexedLiteral lit = s->lit;
      if (!positive) lit.positive = !lit.positive;
      return pat_lit(std::move(lit));
    }
    case Surface::Kind::Not: return nnf(s->left, !positive);
    case Surface::Kind::And:
      return positive ? pat_and(nnf(s->left, true), nnf(s->right, true))
                      : pat_or(nnf(s->left, false), nnf(s->right, false));
    case Surface::Kind::Or:
      return positive ? pat_or(nnf(s->left, true), nnf(s->right, true))
                      : pat_and(nnf(s->left, false), nnf(s->right, false));
    case Surface::Kind::Implies:
      return positive ? pat_or(nnf(s->left, false), nnf(s->right, true))
                      : pat_and(nnf(s->left, true), nnf(s->right, false));
    case Surface::Kind::Iff:
      // (~a \/ b) /\ (~b \/ a); negated it is an xor
      if (positive)
        return pat_and(pat_or(nnf(s->left, false), nnf(s->right, true)),
                       pat_or(nnf(s->right, false), nnf(s->left, true)));
      return pat_and(pat_or(nnf(s->left, true), nnf(s->right, true)),
                     pat_or(nnf(s->left, false), nnf(s->right, false)));
    case Surface::Kind::Xor:
      // (a \/ b) /\ (~a \/ ~b)
      if (positive)
        return pat_and(pat_or(nnf(s->left, true), nnf(s->right, true)),
                       pat_or(nnf(s->left, false), nnf(s->right, false)));
      return pat_and(pat_or(nnf(s->left, false), nnf(s->right, true)),
                     pat_or(nnf(s->right, false), nnf(s->left, true)));
    case Surface::Kind::IterAnd:
      return pat_iter(positive ? Pattern::Kind::IterAnd : Pattern::Kind::IterOr,
                      s->var, s->domain, nnf(s->body, positive));
    case Surface::Kind::IterOr:
      return pat_iter(positive ? Pattern::Kind::IterOr : Pattern::Kind::IterAnd,
                      s->var, s->domain, nnf(s->body, positive));
  }
  return pat_top();
}
}  // namespace

PatternPtr desugar_to_nnf(const SurfacePtr& s) {
  std::map<std::string, size_t> arity;
  check_arities(s, arity);
  return nnf(s, true);
}

}  // namespace schemasat
