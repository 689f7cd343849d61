#pragma once

#include "schemasat/schema_ops.hpp"

namespace schemasat {

struct BaselineResult {
  bool sat = false;
  Environment env;         // least satisfying environment when sat
  PropModel model;         // model of its realization
  long long bound = 0;     // the n_max that was swept
  long long attempts = 0;  // realizations actually solved
};

// Ground enumeration: sweeps parameter values over [0..n_max] (the box
// [0..n_max]^k in lexicographic order for several parameters), realizes the
// schema at each admissible point and hands the result to the SAT solver.
// Stops at the first satisfiable realization.
BaselineResult enumerate_baseline(const Schema& s, long long n_max);

}  // namespace schemasat
