#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

namespace essdim {

using Monomial = std::vector<int>;  // exponent per variable

// Sparse multivariate polynomial over Q in a fixed number of variables.
// Terms with zero coefficient are never stored.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::size_t nvars) : nvars_(nvars) {}
  static Poly constant(std::size_t nvars, const mpq_class& c);
  static Poly variable(std::size_t nvars, std::size_t i);
  static Poly monomial(const Monomial& m, const mpq_class& c);

  std::size_t nvars() const { return nvars_; }
  const std::map<Monomial, mpq_class>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t degree() const;

  void add_term(const Monomial& m, const mpq_class& c);
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly scaled(const mpq_class& c) const;
  Poly pow(unsigned k) const;
  bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  mpq_class eval(const std::vector<mpq_class>& point) const;
  Poly derivative(std::size_t var) const;
  // p(x_1..x_n) -> p(s_1..s_n) for polynomials s_i in a common ring.
  Poly substitute(const std::vector<Poly>& images) const;
  // Same polynomial with extra trailing variables.
  Poly extended(std::size_t nvars) const;

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  std::size_t nvars_ = 0;
  std::map<Monomial, mpq_class> terms_;
};

// Expression grammar: sums and differences of products of factors; a
// factor is a rational literal (3, 2/5), a variable name, or a
// parenthesized expression, optionally raised to a nonnegative integer
// power with '^'. Multiplication is '*', '·' or juxtaposition; '−' is
// accepted for '-'. Errors: ParseError with the byte offset.
Poly parse_poly(const std::string& text, const std::vector<std::string>& names);

// Exact rational from "3", "-2/7".
mpq_class parse_rational(const std::string& s);

}  // namespace essdim
