#include "schemasat/baseline.hpp"

namespace schemasat {

BaselineResult enumerate_baseline(const Schema& s, long long n_max) {
  BaselineResult out;
  out.bound = n_max;
  std::vector<std::string> params(parameters(s).begin(), parameters(s).end());
  if (params.empty()) {
    if (evaluate(s.constraint, {})) {
      ++out.attempts;
      PropResult r = solve_prop(realize(s, {}));
      if (r.sat) {
        out.sat = true;
        out.model = std::move(r.model);
      }
    }
    return out;
  }
  std::vector<long long> point(params.size(), 0);
  while (true) {
    Environment env;
    for (size_t i = 0; i < params.size(); ++i) env[params[i]] = point[i];
    if (evaluate(s.constraint, env)) {
      ++out.attempts;
      PropResult r = solve_prop(realize(s, env));
      if (r.sat) {
        out.sat = true;
        out.env = std::move(env);
        out.model = std::move(r.model);
        return out;
      }
    }
    // lexicographic increment, last coordinate fastest
    size_t i = params.size();
    while (i-- > 0) {
      if (++point[i] <= n_max) break;
      point[i] = 0;
      if (i == 0) return out;
    }
  }
}

}  // namespace schemasat
