#include "essdim/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "essdim/error.hpp"

namespace essdim {

long euler_phi(long n) {
  long r = n;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      r -= r / p;
    }
  if (n > 1) r -= r / n;
  return r;
}

namespace {

struct Tables {
  std::vector<long> phi_poly;
  // reduce[k] = x^k mod Φ_n, k = 0..n-1, as φ(n) integer coefficients
  std::vector<std::vector<long>> reduce;
};

std::mutex g_mu;
std::map<long, Tables> g_tables;

const Tables& tables(long n);

std::vector<long> poly_div_exact(std::vector<long> num, const std::vector<long>& den) {
  // both lowest-first; den monic
  std::size_t dn = den.size() - 1;
  std::vector<long> q(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    long c = num[i];
    q[i - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return q;
}

Tables build(long n) {
  Tables t;
  // x^n - 1 divided by Φ_d for proper divisors d
  std::vector<long> p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (long d = 1; d < n; ++d)
    if (n % d == 0) p = poly_div_exact(p, tables(d).phi_poly);
  t.phi_poly = p;
  long f = long(p.size()) - 1;
  t.reduce.assign(n, std::vector<long>(f, 0));
  std::vector<long> cur(f, 0);
  cur[0] = 1;
  if (f == 0) return t;  // cannot happen for n >= 1
  for (long k = 0; k < n; ++k) {
    t.reduce[k] = cur;
    // multiply by x, then subtract the overflow times Φ_n
    long top = cur[f - 1];
    for (long i = f - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    for (long i = 0; i < f; ++i) cur[i] -= top * p[i];
  }
  return t;
}

const Tables& tables(long n) {
  {
    std::lock_guard<std::mutex> lock(g_mu);
    auto it = g_tables.find(n);
    if (it != g_tables.end()) return it->second;
  }
  Tables t = build(n);  // recursion into smaller n happens unlocked
  std::lock_guard<std::mutex> lock(g_mu);
  return g_tables.emplace(n, std::move(t)).first->second;  // std::map refs are stable
}

long mod(long a, long m) { return ((a % m) + m) % m; }

}  // namespace

const std::vector<long>& cyclotomic_polynomial(long n) { return tables(n).phi_poly; }

Cyclotomic Cyclotomic::from_exponents(long n, const std::vector<mpq_class>& e) {
  if (n < 1 || long(e.size()) != n) fail(ErrorKind::InternalInconsistency, "bad exponent vector");
  if (n % 4 == 2) {
    // ζ_n^k = (-1)^k ζ_h^{k(h+1)/2}, h = n/2 odd
    long h = n / 2;
    std::vector<mpq_class> f(h, 0);
    for (long k = 0; k < n; ++k)
      if (e[k] != 0) {
        long t = mod(k * ((h + 1) / 2), h);
        if (k % 2) f[t] -= e[k];
        else f[t] += e[k];
      }
    return from_exponents(h, f);
  }
  const auto& t = tables(n);
  long phi = long(t.phi_poly.size()) - 1;
  Cyclotomic r;
  r.n_ = n;
  r.c_.assign(phi, 0);
  for (long k = 0; k < n; ++k) {
    if (e[k] == 0) continue;
    const auto& row = t.reduce[k];
    for (long i = 0; i < phi; ++i)
      if (row[i]) r.c_[i] += e[k] * row[i];
  }
  return r;
}

Cyclotomic Cyclotomic::from_coefficients(long n, std::vector<mpq_class> c) {
  std::vector<mpq_class> e(n, 0);
  for (std::size_t i = 0; i < c.size(); ++i) e[i % n] += c[i];
  return from_exponents(n, e);
}

Cyclotomic Cyclotomic::root_of_unity(long n, long k) {
  std::vector<mpq_class> e(n, 0);
  e[mod(k, n)] = 1;
  return from_exponents(n, e);
}

std::vector<mpq_class> Cyclotomic::exponents() const {
  std::vector<mpq_class> e(n_, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) e[i] = c_[i];
  return e;
}

std::vector<mpq_class> Cyclotomic::coefficients_at(long big_n) const {
  if (big_n % 4 == 2) big_n /= 2;
  if (big_n % n_ != 0) fail(ErrorKind::InternalInconsistency, "conductor does not divide target");
  if (big_n == n_) return c_;
  std::vector<mpq_class> e(big_n, 0);
  long step = big_n / n_;
  for (std::size_t i = 0; i < c_.size(); ++i) e[i * step] = c_[i];
  return from_exponents(big_n, e).c_;
}

namespace {

long common(long a, long b) {
  long l = std::lcm(a, b);
  return l % 4 == 2 ? l / 2 : l;
}

}  // namespace

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
  long n = common(n_, o.n_);
  Cyclotomic r;
  r.n_ = n;
  r.c_ = coefficients_at(n);
  auto b = o.coefficients_at(n);
  for (std::size_t i = 0; i < b.size(); ++i) r.c_[i] += b[i];
  return r;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + (-o); }

Cyclotomic Cyclotomic::scaled(const mpq_class& s) const {
  mpq_class k = s;
  k.canonicalize();
  Cyclotomic r = *this;
  for (auto& x : r.c_) x *= k;
  return r;
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
  if (n_ == 1) return o.scaled(c_[0]);
  if (o.n_ == 1) return scaled(o.c_[0]);
  long n = common(n_, o.n_);
  auto a = coefficients_at(n), b = o.coefficients_at(n);
  std::vector<mpq_class> e(n, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b[j] != 0) e[(i + j) % n] += a[i] * b[j];
  }
  return from_exponents(n, e);
}

bool Cyclotomic::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
  if (n_ == o.n_) return c_ == o.c_;
  return (*this - o).is_zero();
}

Cyclotomic Cyclotomic::galois(long a) const {
  if (std::gcd(a, n_) != 1) fail(ErrorKind::InternalInconsistency, "Galois exponent not a unit");
  std::vector<mpq_class> e(n_, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) e[mod(long(i) * a, n_)] += c_[i];
  return from_exponents(n_, e);
}

Cyclotomic Cyclotomic::conj() const { return galois(n_ == 1 ? 1 : n_ - 1); }

bool Cyclotomic::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

mpq_class Cyclotomic::rational() const {
  if (!is_rational()) fail(ErrorKind::InternalInconsistency, "value is not rational");
  return c_[0];
}

bool Cyclotomic::lies_in(long m) const {
  // Q(ζ_n) ∩ Q(ζ_m) = Q(ζ_d); x lies there iff fixed by all σ_a, a ≡ 1 mod d
  long d = std::gcd(m, n_);
  for (long a = 1; a < n_; a += d)
    if (std::gcd(a, n_) == 1 && galois(a) != *this) return false;
  return true;
}

int Cyclotomic::compare(const Cyclotomic& o) const {
  long n = common(n_, o.n_);
  auto a = coefficients_at(n), b = o.coefficients_at(n);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

std::string Cyclotomic::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const mpq_class& x = c_[i];
    if (x == 0) continue;
    bool neg = x < 0;
    mpq_class ab = neg ? mpq_class(-x) : x;
    if (neg) os << "-";
    else if (!first) os << "+";
    if (i == 0) {
      os << ab.get_str();
    } else {
      if (ab != 1) os << ab.get_str() << "*";
      os << "z" << n_;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace essdim
