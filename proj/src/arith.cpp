#include "schemasat/arith.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <unordered_map>

namespace schemasat {

long long RawExpr::evaluate(const std::map<std::string, long long>& env) const {
  switch (kind) {
    case Kind::Zero: return 0;
    case Kind::Lit: return value;
    case Kind::Var: {
      auto it = env.find(name);
      if (it == env.end()) throw EvalError("unmapped variable " + name);
      return it->second;
    }
    case Kind::Succ: return kids[0].evaluate(env) + 1;
    case Kind::Add: return kids[0].evaluate(env) + kids[1].evaluate(env);
    case Kind::Sub: return kids[0].evaluate(env) - kids[1].evaluate(env);
    case Kind::Neg: return -kids[0].evaluate(env);
    case Kind::Scale: return value * kids[0].evaluate(env);
  }
  return 0;
}

LinearExpr normalize_expr(const RawExpr& raw) {
  switch (raw.kind) {
    case RawExpr::Kind::Zero: return LinearExpr(0);
    case RawExpr::Kind::Lit: return LinearExpr(raw.value);
    case RawExpr::Kind::Var: return LinearExpr::var(raw.name);
    case RawExpr::Kind::Succ: return normalize_expr(raw.kids[0]) + LinearExpr(1);
    case RawExpr::Kind::Add: return normalize_expr(raw.kids[0]) + normalize_expr(raw.kids[1]);
    case RawExpr::Kind::Sub: return normalize_expr(raw.kids[0]) - normalize_expr(raw.kids[1]);
    case RawExpr::Kind::Neg: return -normalize_expr(raw.kids[0]);
    case RawExpr::Kind::Scale: return normalize_expr(raw.kids[0]).scaled(raw.value);
  }
  return LinearExpr(0);
}

ConstraintPtr to_nnf(const ConstraintPtr& c, bool positive) {
  switch (c->kind) {
    case Constraint::Kind::True: return mk_bool(positive);
    case Constraint::Kind::False: return mk_bool(!positive);
    case Constraint::Kind::Cmp:
      return positive ? c : mk_cmp(c->lhs, negate_rel(c->rel), c->rhs);
    case Constraint::Kind::Divides: {
      if (positive) return c;
      Constraint n{.kind = Constraint::Kind::Not};
      n.kids = {c};
      return std::make_shared<Constraint>(std::move(n));
    }
    case Constraint::Kind::Not: return to_nnf(c->kids[0], !positive);
    case Constraint::Kind::And:
    case Constraint::Kind::Or: {
      std::vector<ConstraintPtr> kids;
      kids.reserve(c->kids.size());
      for (auto& k : c->kids) kids.push_back(to_nnf(k, positive));
      bool as_and = (c->kind == Constraint::Kind::And) == positive;
      return as_and ? mk_and(std::move(kids)) : mk_or(std::move(kids));
    }
    case Constraint::Kind::Exists:
    case Constraint::Kind::Forall: {
      bool as_exists = (c->kind == Constraint::Kind::Exists) == positive;
      ConstraintPtr body = to_nnf(c->body, positive);
      return as_exists ? mk_exists(c->var, body) : mk_forall(c->var, body);
    }
  }
  return c;
}

namespace {

long long lcm_ll(long long a, long long b) {
  if (a == 0 || b == 0) return a ? a : b;
  return a / std::gcd(a, b) * b;
}

// ---- Cooper elimination of one existential quantifier -------------------

// Rewrites every comparison atom containing x into strict < with x isolated
// on one side: (a*x < t) or (t < a*x), a > 0, t free of x.
ConstraintPtr isolate_x(const ConstraintPtr& c, const std::string& x) {
  switch (c->kind) {
    case Constraint::Kind::Cmp: {
      LinearExpr d = c->lhs - c->rhs;
      long long a = d.coeff(x);
      if (a == 0) {
        // x may still occur syntactically on both sides and cancel
        if (c->lhs.mentions(x) || c->rhs.mentions(x))
          return mk_cmp(d, c->rel, LinearExpr(0));
        return c;
      }
      LinearExpr t = LinearExpr::var(x, a) - d;  // atom is a*x rel t
      LinearExpr ax = LinearExpr::var(x, a > 0 ? a : -a);
      if (a < 0) t = -t;  // flip sides so the x coefficient is positive
      Rel r = a < 0 ? [&] {
        switch (c->rel) {
          case Rel::Lt: return Rel::Gt;
          case Rel::Le: return Rel::Ge;
          case Rel::Gt: return Rel::Lt;
          case Rel::Ge: return Rel::Le;
          default: return c->rel;
        }
      }() : c->rel;
      LinearExpr one(1);
      switch (r) {
        case Rel::Lt: return mk_cmp(ax, Rel::Lt, t);
        case Rel::Le: return mk_cmp(ax, Rel::Lt, t + one);
        case Rel::Gt: return mk_cmp(t, Rel::Lt, ax);
        case Rel::Ge: return mk_cmp(t - one, Rel::Lt, ax);
        case Rel::Eq:
          return mk_and(mk_cmp(ax, Rel::Lt, t + one), mk_cmp(t - one, Rel::Lt, ax));
        case Rel::Ne:
          return mk_or(mk_cmp(ax, Rel::Lt, t), mk_cmp(t, Rel::Lt, ax));
      }
      return c;
    }
    case Constraint::Kind::Divides: {
      if (c->arg.coeff(x) >= 0) return c;
      return mk_divides(c->divisor, -c->arg);
    }
    case Constraint::Kind::Not: return mk_not(isolate_x(c->kids[0], x));
    case Constraint::Kind::And:
    case Constraint::Kind::Or: {
      std::vector<ConstraintPtr> kids;
      for (auto& k : c->kids) kids.push_back(isolate_x(k, x));
      return c->kind == Constraint::Kind::And ? mk_and(std::move(kids))
                                              : mk_or(std::move(kids));
    }
    default: return c;
  }
}

void collect_lcm(const ConstraintPtr& c, const std::string& x, long long& coeff_lcm,
                 long long& div_lcm) {
  switch (c->kind) {
    case Constraint::Kind::Cmp: {
      long long a = c->lhs.coeff(x) + c->rhs.coeff(x);
      if (a != 0) coeff_lcm = lcm_ll(coeff_lcm, a > 0 ? a : -a);
      return;
    }
    case Constraint::Kind::Divides:
      if (c->arg.coeff(x) != 0) {
        long long a = c->arg.coeff(x);
        coeff_lcm = lcm_ll(coeff_lcm, a > 0 ? a : -a);
        div_lcm = lcm_ll(div_lcm, c->divisor);
      }
      return;
    case Constraint::Kind::Not:
    case Constraint::Kind::And:
    case Constraint::Kind::Or:
      for (auto& k : c->kids) collect_lcm(k, x, coeff_lcm, div_lcm);
      return;
    default: return;
  }
}

// Multiplies every x-atom so the x coefficient becomes exactly lambda, then
// treats lambda*x as a unit variable.
ConstraintPtr unitize(const ConstraintPtr& c, const std::string& x, long long lambda) {
  switch (c->kind) {
    case Constraint::Kind::Cmp: {
      long long a = c->lhs.coeff(x);
      long long b = c->rhs.coeff(x);
      if (a == 0 && b == 0) return c;
      // after isolate_x the atom is (a*x < t) or (t < a*x) with a > 0
      if (a > 0) {
        long long s = lambda / a;
        return mk_cmp(LinearExpr::var(x, 1), Rel::Lt, c->rhs.scaled(s));
      }
      long long s = lambda / b;
      return mk_cmp(c->lhs.scaled(s), Rel::Lt, LinearExpr::var(x, 1));
    }
    case Constraint::Kind::Divides: {
      long long a = c->arg.coeff(x);
      if (a == 0) return c;
      long long s = lambda / a;
      LinearExpr rest = c->arg - LinearExpr::var(x, a);
      return mk_divides(c->divisor * s, LinearExpr::var(x, 1) + rest.scaled(s));
    }
    case Constraint::Kind::Not: return mk_not(unitize(c->kids[0], x, lambda));
    case Constraint::Kind::And:
    case Constraint::Kind::Or: {
      std::vector<ConstraintPtr> kids;
      for (auto& k : c->kids) kids.push_back(unitize(k, x, lambda));
      return c->kind == Constraint::Kind::And ? mk_and(std::move(kids))
                                              : mk_or(std::move(kids));
    }
    default: return c;
  }
}

enum class Bound { Lower, Upper };

void collect_bounds(const ConstraintPtr& c, const std::string& x, Bound which,
                    std::vector<LinearExpr>& out) {
  switch (c->kind) {
    case Constraint::Kind::Cmp: {
      if (c->lhs.coeff(x) == 1 && which == Bound::Upper) out.push_back(c->rhs);
      if (c->rhs.coeff(x) == 1 && which == Bound::Lower) out.push_back(c->lhs);
      return;
    }
    case Constraint::Kind::Not:
    case Constraint::Kind::And:
    case Constraint::Kind::Or:
      for (auto& k : c->kids) collect_bounds(k, x, which, out);
      return;
    default: return;
  }
}

// Replaces x-atoms by their limit value (towards -inf or +inf); divisibility
// atoms keep x for later substitution.
ConstraintPtr at_infinity(const ConstraintPtr& c, const std::string& x, bool minus_inf) {
  switch (c->kind) {
    case Constraint::Kind::Cmp: {
      if (c->lhs.coeff(x) == 1) return mk_bool(minus_inf);   // x < t
      if (c->rhs.coeff(x) == 1) return mk_bool(!minus_inf);  // t < x
      return c;
    }
    case Constraint::Kind::Not: return mk_not(at_infinity(c->kids[0], x, minus_inf));
    case Constraint::Kind::And:
    case Constraint::Kind::Or: {
      std::vector<ConstraintPtr> kids;
      for (auto& k : c->kids) kids.push_back(at_infinity(k, x, minus_inf));
      return c->kind == Constraint::Kind::And ? mk_and(std::move(kids))
                                              : mk_or(std::move(kids));
    }
    default: return c;
  }
}

ConstraintPtr cooper_exists(const std::string& x, const ConstraintPtr& body) {
  ConstraintPtr f = to_nnf(body);
  if (!free_vars(f).count(x)) return f;
  f = isolate_x(f, x);
  long long lambda = 1, unused = 1;
  collect_lcm(f, x, lambda, unused);
  f = unitize(f, x, lambda);
  if (lambda > 1) f = mk_and(f, mk_divides(lambda, LinearExpr::var(x)));
  long long ones = 1, delta = 1;  // divisors were scaled, recollect them
  collect_lcm(f, x, ones, delta);

  std::vector<LinearExpr> lowers, uppers;
  collect_bounds(f, x, Bound::Lower, lowers);
  collect_bounds(f, x, Bound::Upper, uppers);
  bool use_lowers = lowers.size() <= uppers.size();
  const auto& bounds = use_lowers ? lowers : uppers;

  std::vector<ConstraintPtr> disjuncts;
  ConstraintPtr finf = at_infinity(f, x, use_lowers);
  for (long long j = 1; j <= delta; ++j) {
    Substitution sj{{x, LinearExpr(use_lowers ? j : -j)}};
    disjuncts.push_back(apply_subst(finf, sj));
  }
  for (auto& b : bounds) {
    for (long long j = 1; j <= delta; ++j) {
      LinearExpr val = use_lowers ? b + LinearExpr(j) : b - LinearExpr(j);
      disjuncts.push_back(apply_subst(f, Substitution{{x, val}}));
    }
  }
  return mk_or(std::move(disjuncts));
}

// A disjunction of divisibility atoms over a full residue system is true;
// the dual conjunction of negated atoms is false. This removes the internal
// atoms in the common cases where the result is expressible without them.
ConstraintPtr cleanup_divides(const ConstraintPtr& c) {
  switch (c->kind) {
    case Constraint::Kind::Not: return mk_not(cleanup_divides(c->kids[0]));
    case Constraint::Kind::And:
    case Constraint::Kind::Or: {
      bool is_or = c->kind == Constraint::Kind::Or;
      std::vector<ConstraintPtr> kids;
      for (auto& k : c->kids) kids.push_back(cleanup_divides(k));
      // group (possibly negated) divisibility atoms by divisor + variable part
      std::map<std::string, std::set<long long>> residues;
      for (auto& k : kids) {
        const Constraint* atom = k.get();
        bool negated = false;
        if (atom->kind == Constraint::Kind::Not) {
          atom = atom->kids[0].get();
          negated = true;
        }
        if (atom->kind != Constraint::Kind::Divides) continue;
        if (negated == is_or) continue;  // only plain atoms in Or, negated in And
        LinearExpr vp = atom->arg - LinearExpr(atom->arg.constant());
        std::string key = std::to_string(atom->divisor) + "|" + vp.to_string();
        long long r = atom->arg.constant() % atom->divisor;
        residues[key].insert(((r % atom->divisor) + atom->divisor) % atom->divisor);
      }
      for (auto& [key, rs] : residues) {
        long long d = std::stoll(key.substr(0, key.find('|')));
        if ((long long)rs.size() == d)
          return mk_bool(is_or);  // full residue system
      }
      return is_or ? mk_or(std::move(kids)) : mk_and(std::move(kids));
    }
    default: return c;
  }
}

ConstraintPtr qe_rec(const ConstraintPtr& c) {
  switch (c->kind) {
    case Constraint::Kind::Not: return mk_not(qe_rec(c->kids[0]));
    case Constraint::Kind::And:
    case Constraint::Kind::Or: {
      std::vector<ConstraintPtr> kids;
      for (auto& k : c->kids) kids.push_back(qe_rec(k));
      return c->kind == Constraint::Kind::And ? mk_and(std::move(kids))
                                              : mk_or(std::move(kids));
    }
    case Constraint::Kind::Exists: return cooper_exists(c->var, qe_rec(c->body));
    case Constraint::Kind::Forall:
      return mk_not(cooper_exists(c->var, to_nnf(qe_rec(c->body), false)));
    default: return c;
  }
}

thread_local std::unordered_map<std::string, ConstraintPtr> g_qe_cache;
thread_local std::unordered_map<std::string, SatResult> g_sat_cache;

}  // namespace

void clear_arith_caches() {
  g_qe_cache.clear();
  g_sat_cache.clear();
}

ConstraintPtr eliminate_quantifiers(const ConstraintPtr& c) {
  if (!has_quantifier(c)) return c;
  std::string key = to_string(c);
  auto it = g_qe_cache.find(key);
  if (it != g_qe_cache.end()) return it->second;
  ConstraintPtr out = cleanup_divides(qe_rec(c));
  if (g_qe_cache.size() > 200000) g_qe_cache.clear();
  g_qe_cache.emplace(std::move(key), out);
  return out;
}

namespace {

bool eval_ground(const ConstraintPtr& c, const std::map<std::string, long long>& env);

bool eval_quantified(const ConstraintPtr& c, const std::map<std::string, long long>& env) {
  // substitute the environment, then decide the resulting sentence
  Substitution sub;
  std::set<std::string> fv = free_vars(c);
  for (auto& name : fv) {
    auto it = env.find(name);
    if (it == env.end()) throw EvalError("unmapped variable " + name);
    sub[name] = LinearExpr(it->second);
  }
  ConstraintPtr closed = eliminate_quantifiers(apply_subst(c, sub));
  if (is_true(closed)) return true;
  if (is_false(closed)) return false;
  return eval_ground(closed, {});
}

bool eval_ground(const ConstraintPtr& c, const std::map<std::string, long long>& env) {
  switch (c->kind) {
    case Constraint::Kind::True: return true;
    case Constraint::Kind::False: return false;
    case Constraint::Kind::Cmp:
      return eval_rel(c->lhs.evaluate(env), c->rel, c->rhs.evaluate(env));
    case Constraint::Kind::Divides: {
      long long v = c->arg.evaluate(env) % c->divisor;
      return v == 0;
    }
    case Constraint::Kind::Not: return !eval_ground(c->kids[0], env);
    case Constraint::Kind::And:
      return std::all_of(c->kids.begin(), c->kids.end(),
                         [&](const ConstraintPtr& k) { return eval_ground(k, env); });
    case Constraint::Kind::Or:
      return std::any_of(c->kids.begin(), c->kids.end(),
                         [&](const ConstraintPtr& k) { return eval_ground(k, env); });
    case Constraint::Kind::Exists:
    case Constraint::Kind::Forall: return eval_quantified(c, env);
  }
  return false;
}

struct UniProfile {
  std::vector<long long> boundaries;  // comparison flip points (within +-1)
  long long delta = 1;                // divisibility period
  bool has_cmp = false;
};

UniProfile univariate_profile(const ConstraintPtr& c, const std::string& x) {
  UniProfile p;
  p.boundaries.push_back(0);
  std::vector<const Constraint*> stack{c.get()};
  while (!stack.empty()) {
    const Constraint* n = stack.back();
    stack.pop_back();
    switch (n->kind) {
      case Constraint::Kind::Cmp: {
        LinearExpr d = n->lhs - n->rhs;
        long long a = d.coeff(x);
        if (a == 0) break;
        long long t = -(d - LinearExpr::var(x, a)).constant();
        p.boundaries.push_back(t / a);  // either rounding, padding covers both
        p.has_cmp = true;
        break;
      }
      case Constraint::Kind::Divides:
        if (n->arg.coeff(x) != 0) p.delta = lcm_ll(p.delta, n->divisor);
        break;
      case Constraint::Kind::Not:
      case Constraint::Kind::And:
      case Constraint::Kind::Or:
        for (auto& k : n->kids) stack.push_back(k.get());
        break;
      default: break;
    }
  }
  return p;
}

// Candidate values that must contain a witness of a satisfiable univariate
// quantifier-free constraint: boundary points padded by the divisibility
// period, plus far tails for the eventually-periodic regions.
std::vector<long long> univariate_candidates(const ConstraintPtr& c, const std::string& x) {
  UniProfile p = univariate_profile(c, x);
  long long far = 1;
  for (long long b : p.boundaries) far = std::max(far, b < 0 ? -b : b);
  far += p.delta + 1;
  p.boundaries.push_back(far);
  p.boundaries.push_back(-far);
  std::set<long long> cands;
  for (long long b : p.boundaries)
    for (long long j = -p.delta - 1; j <= p.delta + 1; ++j) cands.insert(b + j);
  return {cands.begin(), cands.end()};
}

}  // namespace

SatResult is_satisfiable(const ConstraintPtr& c) {
  std::string key = to_string(c);
  auto cached = g_sat_cache.find(key);
  if (cached != g_sat_cache.end()) return cached->second;

  SatResult result{false, {}};
  ConstraintPtr qf = eliminate_quantifiers(c);
  std::set<std::string> fv = free_vars(qf);
  std::vector<std::string> vars(fv.begin(), fv.end());

  // close existentially to decide, then peel witnesses variable by variable
  ConstraintPtr closed = qf;
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) closed = mk_exists(*it, closed);
  closed = eliminate_quantifiers(closed);
  bool sat = is_true(closed) ? true : is_false(closed) ? false : eval_ground(closed, {});
  if (sat) {
    result.sat = true;
    ConstraintPtr cur = qf;
    for (size_t i = 0; i < vars.size(); ++i) {
      ConstraintPtr uni = cur;
      for (size_t j = vars.size(); j-- > i + 1;) uni = mk_exists(vars[j], uni);
      uni = eliminate_quantifiers(uni);
      long long w = 0;
      bool found = false;
      for (long long cand : univariate_candidates(uni, vars[i])) {
        if (eval_ground(uni, {{vars[i], cand}})) {
          w = cand;
          found = true;
          break;
        }
      }
      if (!found) throw InternalError("witness extraction failed for " + vars[i]);
      result.witness[vars[i]] = w;
      cur = apply_subst(cur, Substitution{{vars[i], LinearExpr(w)}});
    }
    // variables of c that were eliminated entirely do not affect truth
    for (auto& name : free_vars(c))
      if (!result.witness.count(name)) result.witness[name] = 0;
  }
  if (g_sat_cache.size() > 200000) g_sat_cache.clear();
  g_sat_cache.emplace(std::move(key), result);
  return result;
}

bool is_valid(const ConstraintPtr& c) { return !is_satisfiable(mk_not(c)).sat; }

bool entails(const ConstraintPtr& c1, const ConstraintPtr& c2) {
  return !is_satisfiable(mk_and(c1, mk_not(c2))).sat;
}

bool encloses(const ConstraintPtr& c, const std::string& x) {
  if (!free_vars(c).count(x)) return false;
  std::set<std::string> fv = free_vars(c);
  std::string lo = "_lo", hi = "_hi";
  while (fv.count(lo)) lo += "_";
  while (fv.count(hi)) hi += "_";
  ConstraintPtr bounded =
      mk_and(mk_cmp(LinearExpr::var(lo), Rel::Le, LinearExpr::var(x)),
             mk_cmp(LinearExpr::var(x), Rel::Le, LinearExpr::var(hi)));
  ConstraintPtr body = mk_forall(x, mk_or(mk_not(c), bounded));
  ConstraintPtr sentence = mk_exists(lo, mk_exists(hi, body));
  for (auto& v : fv)
    if (v != x) sentence = mk_forall(v, sentence);
  return is_valid(sentence);
}

bool evaluate(const ConstraintPtr& c, const std::map<std::string, long long>& env) {
  for (auto& name : free_vars(c))
    if (!env.count(name)) throw EvalError("unmapped free variable " + name);
  return eval_ground(c, env);
}

std::vector<long long> solution_range(const ConstraintPtr& c, const std::string& x,
                                      const std::map<std::string, long long>& env) {
  if (!encloses(c, x)) throw Error("solution_range requires an enclosing constraint");
  Substitution sub;
  for (auto& name : free_vars(c))
    if (name != x) {
      auto it = env.find(name);
      if (it == env.end()) throw EvalError("environment misses variable " + name);
      sub[name] = LinearExpr(it->second);
    }
  ConstraintPtr uni = eliminate_quantifiers(apply_subst(c, sub));
  // Enclosure bounds the solutions, so they all sit between the extreme
  // comparison boundaries (padded by the divisibility period).
  UniProfile p = univariate_profile(uni, x);
  std::vector<long long> out;
  if (!p.has_cmp) {
    // only periodic atoms: a nonempty solution set would be infinite
    for (long long r = 0; r < p.delta; ++r)
      if (eval_ground(uni, {{x, r}}))
        throw InternalError("solution_range: unbounded solution set");
    return out;
  }
  long long lo = *std::min_element(p.boundaries.begin(), p.boundaries.end()) - p.delta - 1;
  long long hi = *std::max_element(p.boundaries.begin(), p.boundaries.end()) + p.delta + 1;
  for (long long v = lo; v <= hi; ++v)
    if (eval_ground(uni, {{x, v}})) out.push_back(v);
  return out;
}

}  // namespace schemasat
