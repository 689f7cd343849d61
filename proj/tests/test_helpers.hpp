#pragma once

// Shared helpers for the test suites: compact constraint builders and a
// brute-force evaluator used as the oracle against the decision procedures.

#include <functional>
#include <optional>
#include <random>

#include "schemasat/arith.hpp"

namespace ts {

using namespace schemasat;

inline LinearExpr v(const std::string& name, long long c = 1) {
  return LinearExpr::var(name, c);
}
inline LinearExpr n(long long k) { return LinearExpr(k); }

inline ConstraintPtr le(LinearExpr a, LinearExpr b) { return mk_cmp(a, Rel::Le, b); }
inline ConstraintPtr lt(LinearExpr a, LinearExpr b) { return mk_cmp(a, Rel::Lt, b); }
inline ConstraintPtr ge(LinearExpr a, LinearExpr b) { return mk_cmp(a, Rel::Ge, b); }
inline ConstraintPtr gt(LinearExpr a, LinearExpr b) { return mk_cmp(a, Rel::Gt, b); }
inline ConstraintPtr eq(LinearExpr a, LinearExpr b) { return mk_cmp(a, Rel::Eq, b); }
inline ConstraintPtr ne(LinearExpr a, LinearExpr b) { return mk_cmp(a, Rel::Ne, b); }

// Ground-truth evaluator by exhaustive quantifier scan, compiled to slot
// arithmetic so nested scans stay cheap. Scan windows: when every other
// variable of an atom is assigned, the comparison boundary is computed
// exactly; atoms that still mention deeper unassigned quantifiers
// contribute a fixed margin sized for the fuzzed formula shapes (free
// values in [-4..4], coefficients up to 3 on free variables and up to 2 on
// quantified ones, <=2 nested quantifiers). Beyond the window every atom
// keeps its truth value, so the scan is exact for those inputs.
class BruteOracle {
 public:
  explicit BruteOracle(const ConstraintPtr& c) { root_ = compile(c); }

  bool eval(const std::map<std::string, long long>& env) {
    vals_.assign(slots_.size(), 0);
    assigned_.assign(slots_.size(), 0);
    for (auto& [name, value] : env) {
      auto it = slots_.find(name);
      if (it == slots_.end()) continue;
      vals_[it->second] = value;
      assigned_[it->second] = 1;
    }
    return eval_node(root_);
  }

 private:
  struct Node {
    Constraint::Kind kind;
    Rel rel = Rel::Eq;
    long long divisor = 1, cst = 0;
    std::vector<std::pair<int, long long>> terms;  // lhs-rhs or divides arg
    std::vector<int> kids;
    int var_slot = -1;
    std::vector<int> atoms;  // Cmp descendants, for window sizing
  };

  int slot(const std::string& name) {
    auto it = slots_.find(name);
    if (it != slots_.end()) return it->second;
    int s = (int)slots_.size();
    slots_.emplace(name, s);
    return s;
  }

  void fill_terms(Node& nd, const LinearExpr& e) {
    nd.cst = e.constant();
    for (auto& [name, c] : e.coeffs()) nd.terms.emplace_back(slot(name), c);
  }

  void collect_atoms(int idx, std::vector<int>& out) {
    const Node& nd = nodes_[idx];
    if (nd.kind == Constraint::Kind::Cmp) out.push_back(idx);
    for (int k : nd.kids) collect_atoms(k, out);
  }

  int compile(const ConstraintPtr& c) {
    Node nd;
    nd.kind = c->kind;
    switch (c->kind) {
      case Constraint::Kind::Cmp:
        nd.rel = c->rel;
        fill_terms(nd, c->lhs - c->rhs);
        break;
      case Constraint::Kind::Divides:
        nd.divisor = c->divisor;
        fill_terms(nd, c->arg);
        break;
      case Constraint::Kind::Not:
      case Constraint::Kind::And:
      case Constraint::Kind::Or:
        for (auto& k : c->kids) nd.kids.push_back(compile(k));
        break;
      case Constraint::Kind::Exists:
      case Constraint::Kind::Forall:
        nd.var_slot = slot(c->var);
        nd.kids.push_back(compile(c->body));
        break;
      default: break;
    }
    nodes_.push_back(std::move(nd));
    int idx = (int)nodes_.size() - 1;
    if (nodes_[idx].kind == Constraint::Kind::Exists ||
        nodes_[idx].kind == Constraint::Kind::Forall)
      collect_atoms(nodes_[idx].kids[0], nodes_[idx].atoms);
    return idx;
  }

  long long window(const Node& q) {
    long long w = 4;
    for (int ai : q.atoms) {
      const Node& at = nodes_[ai];
      long long a = 0, t = at.cst < 0 ? -at.cst : at.cst;
      bool unknown = false;
      for (auto& [s, co] : at.terms) {
        if (s == q.var_slot) {
          a = co;
        } else if (!assigned_[s]) {
          unknown = true;
        } else {
          long long contrib = co * vals_[s];
          t += contrib < 0 ? -contrib : contrib;
        }
      }
      if (a == 0) continue;
      if (unknown)
        w = std::max(w, 200LL);
      else
        w = std::max(w, t / (a < 0 ? -a : a) + 2);
    }
    return w;
  }

  bool eval_node(int idx) {
    const Node& nd = nodes_[idx];
    switch (nd.kind) {
      case Constraint::Kind::True: return true;
      case Constraint::Kind::False: return false;
      case Constraint::Kind::Cmp: {
        long long s = nd.cst;
        for (auto& [sl, co] : nd.terms) s += co * vals_[sl];
        return eval_rel(s, nd.rel, 0);
      }
      case Constraint::Kind::Divides: {
        long long s = nd.cst;
        for (auto& [sl, co] : nd.terms) s += co * vals_[sl];
        return s % nd.divisor == 0;
      }
      case Constraint::Kind::Not: return !eval_node(nd.kids[0]);
      case Constraint::Kind::And:
        for (int k : nd.kids)
          if (!eval_node(k)) return false;
        return true;
      case Constraint::Kind::Or:
        for (int k : nd.kids)
          if (eval_node(k)) return true;
        return false;
      case Constraint::Kind::Exists:
      case Constraint::Kind::Forall: {
        bool want = nd.kind == Constraint::Kind::Exists;
        long long saved = vals_[nd.var_slot];
        char saved_assigned = assigned_[nd.var_slot];
        assigned_[nd.var_slot] = 0;
        long long span = window(nd);
        assigned_[nd.var_slot] = 1;
        bool result = !want;
        for (long long i = -span; i <= span; ++i) {
          vals_[nd.var_slot] = i;
          if (eval_node(nd.kids[0]) == want) {
            result = want;
            break;
          }
        }
        vals_[nd.var_slot] = saved;
        assigned_[nd.var_slot] = saved_assigned;
        return result;
      }
    }
    return false;
  }

  std::vector<Node> nodes_;
  std::map<std::string, int> slots_;
  std::vector<long long> vals_;
  std::vector<char> assigned_;
  int root_;
};

inline bool brute_eval(const ConstraintPtr& c, std::map<std::string, long long>& env) {
  BruteOracle oracle(c);
  return oracle.eval(env);
}

struct ConstraintFuzzer {
  std::mt19937 rng;
  std::vector<std::string> free_names;

  ConstraintFuzzer(unsigned seed, std::vector<std::string> vs)
      : rng(seed), free_names(std::move(vs)) {}

  long long pick(long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(rng);
  }

  LinearExpr expr(const std::vector<std::string>& quants) {
    LinearExpr e(pick(-3, 3));
    for (auto& name : free_names)
      if (pick(0, 2) == 0) {
        long long c = pick(-3, 3);
        if (c) e = e + v(name, c);
      }
    for (auto& name : quants)
      if (pick(0, 1) == 0) {
        long long c = pick(1, 2) * (pick(0, 1) ? 1 : -1);
        e = e + v(name, c);
      }
    return e;
  }

  ConstraintPtr atom(const std::vector<std::string>& quants) {
    static const Rel rels[] = {Rel::Eq, Rel::Ne, Rel::Lt, Rel::Le, Rel::Gt, Rel::Ge};
    return mk_cmp(expr(quants), rels[pick(0, 5)], expr(quants));
  }

  ConstraintPtr formula(std::vector<std::string> quants, int depth, int quants_left) {
    int c = (int)pick(0, depth == 0 ? 0 : (quants_left > 0 ? 4 : 3));
    switch (c) {
      case 0: return atom(quants);
      case 1: return mk_and(formula(quants, depth - 1, quants_left),
                            formula(quants, depth - 1, quants_left));
      case 2: return mk_or(formula(quants, depth - 1, quants_left),
                           formula(quants, depth - 1, quants_left));
      case 3: return mk_not(formula(quants, depth - 1, quants_left));
      default: {
        std::string q = "q" + std::to_string(quants_left);
        quants.push_back(q);
        ConstraintPtr body = formula(quants, depth - 1, quants_left - 1);
        return pick(0, 1) ? mk_exists(q, body) : mk_forall(q, body);
      }
    }
  }
};

// Checks QE output against bounded-scan ground truth on the [-4..4] box of
// the free variables; returns a description of the first mismatch.
inline std::optional<std::string> qe_disagreement(const ConstraintPtr& c) {
  ConstraintPtr q = eliminate_quantifiers(c);
  if (has_quantifier(q)) return "output still has quantifiers: " + to_string(q);
  std::set<std::string> fvset = free_vars(c);
  std::vector<std::string> fv(fvset.begin(), fvset.end());
  BruteOracle oracle(c);
  BruteOracle qe_oracle(q);
  std::vector<long long> point(fv.size(), -4);
  while (true) {
    std::map<std::string, long long> env;
    for (size_t i = 0; i < fv.size(); ++i) env[fv[i]] = point[i];
    bool want = oracle.eval(env);
    if (qe_oracle.eval(env) != want)
      return "mismatch on " + to_string(c) + "  =>  " + to_string(q);
    size_t i = 0;
    for (; i < fv.size(); ++i) {
      if (++point[i] <= 4) break;
      point[i] = -4;
    }
    if (i == fv.size()) break;
  }
  return std::nullopt;
}

}  // namespace ts
