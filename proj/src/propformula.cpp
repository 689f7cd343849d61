#include "schemasat/propformula.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace schemasat {

namespace {
PropPtr make(PropFormula f) { return std::make_shared<PropFormula>(std::move(f)); }
}  // namespace

PropPtr prop_top() {
  static PropPtr t = make({.kind = PropFormula::Kind::Top});
  return t;
}
PropPtr prop_bottom() {
  static PropPtr b = make({.kind = PropFormula::Kind::Bottom});
  return b;
}
PropPtr prop_atom(std::string name) {
  PropFormula f{.kind = PropFormula::Kind::Atom};
  f.atom = std::move(name);
  return make(std::move(f));
}
PropPtr prop_neg(std::string name) {
  PropFormula f{.kind = PropFormula::Kind::Neg};
  f.atom = std::move(name);
  return make(std::move(f));
}
PropPtr prop_and(std::vector<PropPtr> kids) {
  PropFormula f{.kind = PropFormula::Kind::And};
  f.kids = std::move(kids);
  return make(std::move(f));
}
PropPtr prop_or(std::vector<PropPtr> kids) {
  PropFormula f{.kind = PropFormula::Kind::Or};
  f.kids = std::move(kids);
  return make(std::move(f));
}

std::string to_string(const PropPtr& f) {
  switch (f->kind) {
    case PropFormula::Kind::Top: return "true";
    case PropFormula::Kind::Bottom: return "false";
    case PropFormula::Kind::Atom: return f->atom;
    case PropFormula::Kind::Neg: return "~" + f->atom;
    case PropFormula::Kind::And:
    case PropFormula::Kind::Or: {
      const char* sep = f->kind == PropFormula::Kind::And ? " /\\ " : " \\/ ";
      if (f->kids.empty()) return f->kind == PropFormula::Kind::And ? "true" : "false";
      std::string s = "(";
      for (size_t i = 0; i < f->kids.size(); ++i) {
        if (i) s += sep;
        s += to_string(f->kids[i]);
      }
      return s + ")";
    }
  }
  return "?";
}

void collect_atoms(const PropPtr& f, std::vector<std::string>& out) {
  std::set<std::string> seen;
  std::vector<const PropFormula*> stack{f.get()};
  while (!stack.empty()) {
    const PropFormula* n = stack.back();
    stack.pop_back();
    switch (n->kind) {
      case PropFormula::Kind::Atom:
      case PropFormula::Kind::Neg:
        if (seen.insert(n->atom).second) out.push_back(n->atom);
        break;
      case PropFormula::Kind::And:
      case PropFormula::Kind::Or:
        for (auto it = n->kids.rbegin(); it != n->kids.rend(); ++it)
          stack.push_back(it->get());
        break;
      default: break;
    }
  }
}

std::vector<std::string> atoms_of(const PropPtr& f) {
  std::vector<std::string> out;
  collect_atoms(f, out);
  return out;
}

bool eval_prop(const PropPtr& f, const PropModel& model) {
  switch (f->kind) {
    case PropFormula::Kind::Top: return true;
    case PropFormula::Kind::Bottom: return false;
    case PropFormula::Kind::Atom: {
      auto it = model.find(f->atom);
      return it != model.end() && it->second;
    }
    case PropFormula::Kind::Neg: {
      auto it = model.find(f->atom);
      return !(it != model.end() && it->second);
    }
    case PropFormula::Kind::And:
      return std::all_of(f->kids.begin(), f->kids.end(),
                         [&](const PropPtr& k) { return eval_prop(k, model); });
    case PropFormula::Kind::Or:
      return std::any_of(f->kids.begin(), f->kids.end(),
                         [&](const PropPtr& k) { return eval_prop(k, model); });
  }
  return false;
}

PropPtr assume(const PropPtr& f, const PropModel& partial) {
  switch (f->kind) {
    case PropFormula::Kind::Top:
    case PropFormula::Kind::Bottom: return f;
    case PropFormula::Kind::Atom: {
      auto it = partial.find(f->atom);
      if (it == partial.end()) return f;
      return it->second ? prop_top() : prop_bottom();
    }
    case PropFormula::Kind::Neg: {
      auto it = partial.find(f->atom);
      if (it == partial.end()) return f;
      return it->second ? prop_bottom() : prop_top();
    }
    case PropFormula::Kind::And:
    case PropFormula::Kind::Or: {
      std::vector<PropPtr> kids;
      kids.reserve(f->kids.size());
      for (auto& k : f->kids) kids.push_back(assume(k, partial));
      return f->kind == PropFormula::Kind::And ? prop_and(std::move(kids))
                                               : prop_or(std::move(kids));
    }
  }
  return f;
}

// ---- Tseitin conversion ---------------------------------------------------

namespace {

struct CnfBuilder {
  Cnf cnf;
  std::unordered_map<std::string, int> index;  // name -> 1-based var

  int var_of(const std::string& name) {
    auto it = index.find(name);
    if (it != index.end()) return it->second;
    cnf.names.push_back(name);
    int v = (int)cnf.names.size();
    index.emplace(name, v);
    return v;
  }

  int fresh() {
    cnf.names.push_back("_d" + std::to_string(cnf.names.size() + 1));
    return (int)cnf.names.size();
  }

  // returns a literal equisatisfiably representing the subformula,
  // or +-INT_MAX-style constants via the two sentinels below
  static constexpr int kTrue = INT32_MAX;
  static constexpr int kFalse = -INT32_MAX;

  int encode(const PropPtr& f) {
    switch (f->kind) {
      case PropFormula::Kind::Top: return kTrue;
      case PropFormula::Kind::Bottom: return kFalse;
      case PropFormula::Kind::Atom: return var_of(f->atom);
      case PropFormula::Kind::Neg: return -var_of(f->atom);
      case PropFormula::Kind::And:
      case PropFormula::Kind::Or: {
        bool conj = f->kind == PropFormula::Kind::And;
        std::vector<int> lits;
        for (auto& k : f->kids) {
          int l = encode(k);
          if (l == kTrue) {
            if (!conj) return kTrue;
            continue;
          }
          if (l == kFalse) {
            if (conj) return kFalse;
            continue;
          }
          lits.push_back(l);
        }
        if (lits.empty()) return conj ? kTrue : kFalse;
        if (lits.size() == 1) return lits[0];
        int d = fresh();
        if (conj) {
          // d -> li, and (l1..ln) -> d
          std::vector<int> big{d};
          for (int l : lits) {
            cnf.clauses.push_back({-d, l});
            big.push_back(-l);
          }
          cnf.clauses.push_back(std::move(big));
        } else {
          std::vector<int> big{-d};
          for (int l : lits) {
            cnf.clauses.push_back({d, -l});
            big.push_back(l);
          }
          cnf.clauses.push_back(std::move(big));
        }
        return d;
      }
    }
    return kFalse;
  }
};

}  // namespace

Cnf to_cnf(const PropPtr& f) {
  CnfBuilder b;
  // register original atoms first so they map to the low indices
  for (auto& name : atoms_of(f)) b.var_of(name);
  b.cnf.original_count = b.cnf.names.size();
  int root = b.encode(f);
  if (root == CnfBuilder::kTrue) {
    // no clauses: trivially satisfiable
  } else if (root == CnfBuilder::kFalse) {
    b.cnf.clauses.push_back({});
  } else {
    b.cnf.clauses.push_back({root});
  }
  return std::move(b.cnf);
}

std::string to_dimacs(const Cnf& cnf) {
  std::string out;
  for (size_t i = 0; i < cnf.names.size(); ++i)
    out += "c var " + std::to_string(i + 1) + " = " + cnf.names[i] + "\n";
  out += "p cnf " + std::to_string(cnf.names.size()) + " " +
         std::to_string(cnf.clauses.size()) + "\n";
  for (auto& cl : cnf.clauses) {
    for (int l : cl) out += std::to_string(l) + " ";
    out += "0\n";
  }
  return out;
}

// ---- DPLL ------------------------------------------------------------------

namespace {

struct Dpll {
  const Cnf& cnf;
  std::vector<int8_t> assign;  // 0 unknown, 1 true, -1 false
  std::vector<int> trail;

  explicit Dpll(const Cnf& c) : cnf(c), assign(c.names.size() + 1, 0) {}

  bool lit_true(int l) const { return assign[std::abs(l)] == (l > 0 ? 1 : -1); }
  bool lit_false(int l) const { return assign[std::abs(l)] == (l > 0 ? -1 : 1); }

  bool set(int l) {
    int v = std::abs(l);
    int8_t want = l > 0 ? 1 : -1;
    if (assign[v] == want) return true;
    if (assign[v] != 0) return false;
    assign[v] = want;
    trail.push_back(v);
    return true;
  }

  void undo(size_t mark) {
    while (trail.size() > mark) {
      assign[trail.back()] = 0;
      trail.pop_back();
    }
  }

  // propagate to fixpoint: unit clauses and conflicts
  bool propagate() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto& cl : cnf.clauses) {
        int unassigned = 0, last = 0;
        bool sat = false;
        for (int l : cl) {
          if (lit_true(l)) {
            sat = true;
            break;
          }
          if (!lit_false(l)) {
            ++unassigned;
            last = l;
          }
        }
        if (sat) continue;
        if (unassigned == 0) return false;
        if (unassigned == 1) {
          if (!set(last)) return false;
          changed = true;
        }
      }
    }
    return true;
  }

  int pick_branch() const {
    for (auto& cl : cnf.clauses) {
      bool sat = false;
      for (int l : cl)
        if (lit_true(l)) {
          sat = true;
          break;
        }
      if (sat) continue;
      for (int l : cl)
        if (!lit_false(l)) return l;
    }
    return 0;
  }

  bool solve() {
    if (!propagate()) return false;
    int l = pick_branch();
    if (l == 0) return true;  // every clause satisfied
    size_t mark = trail.size();
    if (set(l) && solve()) return true;
    undo(mark);
    if (set(-l) && solve()) return true;
    undo(mark);
    return false;
  }
};

}  // namespace

PropResult solve_prop(const PropPtr& f) {
  Cnf cnf = to_cnf(f);
  Dpll d(cnf);
  if (!d.solve()) return {false, {}};
  PropModel model;
  for (size_t i = 0; i < cnf.original_count; ++i)
    model[cnf.names[i]] = d.assign[i + 1] == 1;
  return {true, std::move(model)};
}

}  // namespace schemasat
