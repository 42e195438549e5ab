#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace essdim {

// Element of Q(ζ_n) in the power basis 1, ζ, ..., ζ^{φ(n)-1}, reduced modulo
// the n-th cyclotomic polynomial. The conductor n is never 2 mod 4 (ζ_{2h}
// is rewritten through ζ_h for odd h). Values at different conductors are
// compared after embedding both into the lcm.
class Cyclotomic {
 public:
  Cyclotomic() : n_(1), c_{0} {}
  Cyclotomic(long v) : n_(1), c_{mpq_class(v)} {}  // NOLINT: implicit by design
  Cyclotomic(const mpq_class& v) : n_(1), c_{v} { c_[0].canonicalize(); }  // NOLINT

  // ζ_n^k
  static Cyclotomic root_of_unity(long n, long k);
  // Σ e[t] ζ_n^t for t = 0..n-1
  static Cyclotomic from_exponents(long n, const std::vector<mpq_class>& e);
  static Cyclotomic from_coefficients(long n, std::vector<mpq_class> c);

  long conductor() const { return n_; }
  const std::vector<mpq_class>& coefficients() const { return c_; }

  Cyclotomic operator+(const Cyclotomic& o) const;
  Cyclotomic operator-(const Cyclotomic& o) const;
  Cyclotomic operator*(const Cyclotomic& o) const;
  Cyclotomic operator-() const;
  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }
  Cyclotomic scaled(const mpq_class& s) const;
  bool operator==(const Cyclotomic& o) const;
  bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

  // Complex conjugate, and the Galois action ζ -> ζ^a (gcd(a, n) = 1).
  Cyclotomic conj() const;
  Cyclotomic galois(long a) const;

  bool is_rational() const;
  mpq_class rational() const;  // requires is_rational()
  bool is_zero() const;
  // True if the value lies in Q(ζ_m).
  bool lies_in(long m) const;
  // The same element written over Q(ζ_N) for a multiple N of the conductor.
  std::vector<mpq_class> coefficients_at(long big_n) const;

  // Total order used only for deterministic sorting.
  int compare(const Cyclotomic& o) const;

  // e.g. "-1", "1/2+z5^2-z5^3"
  std::string to_string() const;
  // Exponent form Σ e_t ζ_n^t, t < n (power basis padded with zeros).
  std::vector<mpq_class> exponents() const;

 private:
  long n_;
  std::vector<mpq_class> c_;
};

long euler_phi(long n);
// Integer coefficients of the n-th cyclotomic polynomial, lowest first.
const std::vector<long>& cyclotomic_polynomial(long n);

}  // namespace essdim
