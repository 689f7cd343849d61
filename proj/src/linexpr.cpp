#include "schemasat/linexpr.hpp"

namespace schemasat {

LinearExpr make_expr(long long constant, std::map<std::string, long long> coeffs) {
  LinearExpr e;
  e.constant_ = constant;
  for (auto& [name, c] : coeffs)
    if (c != 0) e.coeffs_.emplace(name, c);
  return e;
}

LinearExpr LinearExpr::operator+(const LinearExpr& o) const {
  auto coeffs = coeffs_;
  for (auto& [name, c] : o.coeffs_) coeffs[name] += c;
  return make_expr(constant_ + o.constant_, std::move(coeffs));
}

LinearExpr LinearExpr::operator-(const LinearExpr& o) const { return *this + (-o); }

LinearExpr LinearExpr::operator-() const { return scaled(-1); }

LinearExpr LinearExpr::scaled(long long k) const {
  std::map<std::string, long long> coeffs;
  if (k != 0)
    for (auto& [name, c] : coeffs_) coeffs[name] = c * k;
  return make_expr(constant_ * k, std::move(coeffs));
}

long long LinearExpr::evaluate(const std::map<std::string, long long>& env) const {
  long long v = constant_;
  for (auto& [name, c] : coeffs_) {
    auto it = env.find(name);
    if (it == env.end()) throw EvalError("unmapped variable in evaluation: " + name);
    v += c * it->second;
  }
  return v;
}

std::string LinearExpr::to_string() const {
  std::string out;
  for (auto& [name, c] : coeffs_) {
    if (out.empty()) {
      if (c == 1)
        out = name;
      else if (c == -1)
        out = "-" + name;
      else
        out = std::to_string(c) + "*" + name;
    } else {
      long long a = c < 0 ? -c : c;
      out += c < 0 ? "-" : "+";
      if (a != 1) out += std::to_string(a) + "*";
      out += name;
    }
  }
  if (out.empty()) return std::to_string(constant_);
  if (constant_ > 0) out += "+" + std::to_string(constant_);
  if (constant_ < 0) out += std::to_string(constant_);
  return out;
}

LinearExpr apply_subst(const LinearExpr& e, const Substitution& sub) {
  LinearExpr out(e.constant());
  for (auto& [name, c] : e.coeffs()) {
    auto it = sub.find(name);
    if (it == sub.end())
      out = out + LinearExpr::var(name, c);
    else
      out = out + it->second.scaled(c);
  }
  return out;
}

Substitution compose(const Substitution& first, const Substitution& then) {
  Substitution out;
  for (auto& [name, e] : first) out[name] = apply_subst(e, then);
  for (auto& [name, e] : then)
    if (!out.count(name)) out[name] = e;
  return out;
}

Substitution ground_subst(const std::map<std::string, long long>& env) {
  Substitution s;
  for (auto& [name, v] : env) s[name] = LinearExpr(v);
  return s;
}

std::map<std::string, long long> as_ground(const Substitution& sub) {
  std::map<std::string, long long> env;
  for (auto& [name, e] : sub) {
    if (!e.is_constant()) throw EvalError("substitution is not ground at " + name);
    env[name] = e.constant();
  }
  return env;
}

}  // namespace schemasat
