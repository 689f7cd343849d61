#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace schemasat {

struct PropFormula;
using PropPtr = std::shared_ptr<const PropFormula>;

// Ground propositional formula in negation normal form.
struct PropFormula {
  enum class Kind { Top, Bottom, Atom, Neg, And, Or };
  Kind kind;
  std::string atom;           // Atom/Neg
  std::vector<PropPtr> kids;  // And/Or
};

PropPtr prop_top();
PropPtr prop_bottom();
PropPtr prop_atom(std::string name);
PropPtr prop_neg(std::string name);
PropPtr prop_and(std::vector<PropPtr> kids);
PropPtr prop_or(std::vector<PropPtr> kids);

std::string to_string(const PropPtr& f);
void collect_atoms(const PropPtr& f, std::vector<std::string>& out);
std::vector<std::string> atoms_of(const PropPtr& f);

using PropModel = std::map<std::string, bool>;

bool eval_prop(const PropPtr& f, const PropModel& model);

// Replaces assigned atoms by their truth constants.
PropPtr assume(const PropPtr& f, const PropModel& partial);

struct PropResult {
  bool sat;
  PropModel model;  // total on the formula's atoms when sat
};

// Complete DPLL with unit propagation on a Tseitin-style CNF encoding.
PropResult solve_prop(const PropPtr& f);

// CNF clauses over the formula atoms plus definitional atoms.
struct Cnf {
  std::vector<std::string> names;          // index -> atom name
  std::vector<std::vector<int>> clauses;   // 1-based DIMACS literals
  size_t original_count = 0;               // names[0..original_count) are input atoms
};
Cnf to_cnf(const PropPtr& f);
std::string to_dimacs(const Cnf& cnf);

}  // namespace schemasat
