#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace schemasat {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a substitution would move a variable under a binder of the
// same name.
struct CaptureError : Error {
  using Error::Error;
};

// Raised when evaluation hits a variable the assignment does not cover.
struct EvalError : Error {
  using Error::Error;
};

// Trap for soundness self-checks; the CLI turns this into exit code 3.
struct InternalError : Error {
  using Error::Error;
};

// Affine integer expression: constant + sum of coeff*var.
// Canonical: no zero coefficient is ever stored, map is ordered by name.
class LinearExpr {
public:
  LinearExpr() : constant_(0) {}
  explicit LinearExpr(long long c) : constant_(c) {}
  static LinearExpr var(const std::string& name, long long coeff = 1) {
    LinearExpr e;
    if (coeff != 0) e.coeffs_[name] = coeff;
    return e;
  }

  long long constant() const { return constant_; }
  const std::map<std::string, long long>& coeffs() const { return coeffs_; }

  long long coeff(const std::string& name) const {
    auto it = coeffs_.find(name);
    return it == coeffs_.end() ? 0 : it->second;
  }
  bool mentions(const std::string& name) const { return coeffs_.count(name) != 0; }
  bool is_constant() const { return coeffs_.empty(); }

  LinearExpr operator+(const LinearExpr& o) const;
  LinearExpr operator-(const LinearExpr& o) const;
  LinearExpr operator-() const;
  LinearExpr scaled(long long k) const;

  bool operator==(const LinearExpr& o) const {
    return constant_ == o.constant_ && coeffs_ == o.coeffs_;
  }
  bool operator!=(const LinearExpr& o) const { return !(*this == o); }
  bool operator<(const LinearExpr& o) const {  // deterministic total order
    if (coeffs_ != o.coeffs_) return coeffs_ < o.coeffs_;
    return constant_ < o.constant_;
  }

  long long evaluate(const std::map<std::string, long long>& env) const;

  std::string to_string() const;

private:
  long long constant_;
  std::map<std::string, long long> coeffs_;
  friend LinearExpr make_expr(long long, std::map<std::string, long long>);
};

LinearExpr make_expr(long long constant, std::map<std::string, long long> coeffs);

// Finite map var -> LinearExpr.
using Substitution = std::map<std::string, LinearExpr>;

LinearExpr apply_subst(const LinearExpr& e, const Substitution& sub);
Substitution compose(const Substitution& first, const Substitution& then);

Substitution ground_subst(const std::map<std::string, long long>& env);
// Extracts integer values; throws EvalError on a non-ground binding.
std::map<std::string, long long> as_ground(const Substitution& sub);

}  // namespace schemasat
