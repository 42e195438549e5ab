#include "essdim/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "essdim/error.hpp"

namespace essdim {

Poly Poly::constant(std::size_t nvars, const mpq_class& c) {
  Poly p(nvars);
  p.add_term(Monomial(nvars, 0), c);
  return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t i) {
  Monomial m(nvars, 0);
  m[i] = 1;
  return monomial(m, 1);
}

Poly Poly::monomial(const Monomial& m, const mpq_class& c) {
  Poly p(m.size());
  p.add_term(m, c);
  return p;
}

std::size_t Poly::degree() const {
  std::size_t d = 0;
  for (const auto& [m, c] : terms_) {
    std::size_t s = 0;
    for (auto e : m) s += std::size_t(e);
    d = std::max(d, s);
  }
  return d;
}

void Poly::add_term(const Monomial& m, const mpq_class& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(m, c);
  if (fresh) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  r.nvars_ = std::max(nvars_, o.nvars_);
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r(std::max(nvars_, o.nvars_));
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) {
      Monomial m(m1.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = m1[i] + m2[i];
      r.add_term(m, c1 * c2);
    }
  return r;
}

Poly Poly::scaled(const mpq_class& c) const {
  if (c == 0) return Poly(nvars_);
  Poly r = *this;
  for (auto& [m, x] : r.terms_) x *= c;
  return r;
}

Poly Poly::pow(unsigned k) const {
  Poly r = constant(nvars_, 1), b = *this;
  while (k) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

mpq_class Poly::eval(const std::vector<mpq_class>& point) const {
  mpq_class s = 0;
  for (const auto& [m, c] : terms_) {
    mpq_class t = c;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (int e = 0; e < m[i]; ++e) t *= point[i];
    s += t;
  }
  return s;
}

Poly Poly::derivative(std::size_t var) const {
  Poly r(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial d = m;
    --d[var];
    r.add_term(d, c * m[var]);
  }
  return r;
}

Poly Poly::substitute(const std::vector<Poly>& images) const {
  std::size_t n = images.empty() ? 0 : images[0].nvars();
  Poly r(n);
  // cache powers per variable
  std::vector<std::vector<Poly>> pw(nvars_);
  for (const auto& [m, c] : terms_) {
    Poly t = constant(n, c);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (!m[i]) continue;
      auto& cache = pw[i];
      if (cache.empty()) cache.push_back(constant(n, 1));
      while (cache.size() <= std::size_t(m[i])) cache.push_back(cache.back() * images[i]);
      t = t * cache[m[i]];
    }
    r = r + t;
  }
  return r;
}

Poly Poly::extended(std::size_t nvars) const {
  Poly r(nvars);
  for (const auto& [m, c] : terms_) {
    Monomial e = m;
    e.resize(nvars, 0);
    r.add_term(e, c);
  }
  return r;
}

std::string Poly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // highest total degree first, then reverse lexicographic on exponents
  std::vector<std::pair<Monomial, mpq_class>> ts(terms_.begin(), terms_.end());
  std::stable_sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
    int da = 0, db = 0;
    for (auto e : a.first) da += e;
    for (auto e : b.first) db += e;
    if (da != db) return da > db;
    return a.first > b.first;
  });
  for (const auto& [m, c] : ts) {
    mpq_class a = abs(c);
    bool is_const = std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
    os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    if (a != 1 || is_const) {
      os << a.get_str();
      if (!is_const) os << "*";
    }
    bool lead = true;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (!m[i]) continue;
      if (!lead) os << "*";
      os << names[i];
      if (m[i] > 1) os << "^" << m[i];
      lead = false;
    }
    first = false;
  }
  return os.str();
}

mpq_class parse_rational(const std::string& s) {
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0)
    fail(ErrorKind::InputError, "not a rational number: '" + s + "'");
  if (q.get_den() == 0) fail(ErrorKind::InputError, "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

namespace {

struct Parser {
  const std::string& s;
  const std::vector<std::string>& names;
  std::size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  // '−' (U+2212) and '·' (U+00B7) in UTF-8
  bool at_minus() {
    skip();
    if (pos < s.size() && s[pos] == '-') return true;
    return s.compare(pos, 3, "\xE2\x88\x92") == 0;
  }
  void eat_minus() { pos += s[pos] == '-' ? 1 : 3; }
  bool at_times() {
    skip();
    if (pos < s.size() && s[pos] == '*') return true;
    return s.compare(pos, 2, "\xC2\xB7") == 0;
  }
  void eat_times() { pos += s[pos] == '*' ? 1 : 2; }
  bool at_factor_start() {
    skip();
    if (pos >= s.size()) return false;
    char c = s[pos];
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(';
  }

  Poly expr() {
    Poly acc(names.size());
    bool first = true;
    for (;;) {
      skip();
      bool neg = false;
      if (at_minus()) {
        eat_minus();
        neg = true;
      } else if (pos < s.size() && s[pos] == '+') {
        ++pos;
      } else if (!first) {
        break;
      }
      Poly t = term();
      acc = neg ? acc - t : acc + t;
      first = false;
    }
    return acc;
  }

  Poly term() {
    Poly t = power();
    for (;;) {
      if (at_times()) {
        eat_times();
        t = t * power();
      } else if (at_factor_start()) {
        t = t * power();
      } else if (skip(), pos < s.size() && s[pos] == '/') {
        ++pos;
        skip();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) throw ParseError(pos, "only integer divisors are allowed");
        mpz_class d(s.substr(start, pos - start));
        if (d == 0) throw ParseError(start, "division by zero");
        t = t.scaled(mpq_class(1, 1) / mpq_class(d));
      } else {
        return t;
      }
    }
  }

  Poly power() {
    Poly b = factor();
    skip();
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      skip();
      std::size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (start == pos) throw ParseError(pos, "expected an exponent");
      if (pos - start > 4) throw ParseError(start, "exponent too large");
      b = b.pow(unsigned(std::stoul(s.substr(start, pos - start))));
    }
    return b;
  }

  Poly factor() {
    skip();
    if (pos >= s.size()) throw ParseError(pos, "unexpected end of expression");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      Poly e = expr();
      skip();
      if (pos >= s.size() || s[pos] != ')') throw ParseError(pos, "expected ')'");
      ++pos;
      return e;
    }
    if (at_minus()) {
      eat_minus();
      return -power();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      return Poly::constant(names.size(), mpq_class(mpz_class(s.substr(start, pos - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos;
      while (pos < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
        ++pos;
      std::string name = s.substr(start, pos - start);
      auto it = std::find(names.begin(), names.end(), name);
      if (it == names.end()) throw ParseError(start, "unknown variable '" + name + "'");
      return Poly::variable(names.size(), std::size_t(it - names.begin()));
    }
    throw ParseError(pos, std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

Poly parse_poly(const std::string& text, const std::vector<std::string>& names) {
  Parser p{text, names};
  Poly r = p.expr();
  p.skip();
  if (p.pos != text.size()) throw ParseError(p.pos, "trailing input");
  return r.extended(names.size());
}

}  // namespace essdim
