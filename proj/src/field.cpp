#include "essdim/field.hpp"

#include <numeric>
#include <sstream>

#include "essdim/abelian.hpp"

namespace essdim {

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool FieldDescriptor::has_primitive_root(long n) const {
  if (n < 1) return false;
  if (n == 1) return true;
  if (characteristic > 0 && n % characteristic == 0) return false;
  switch (roots) {
    case Roots::All: return true;
    case Roots::Cyclotomic: return m % n == 0;
    case Roots::Explicit: return explicit_.count(n) > 0;
  }
  return false;
}

std::string FieldDescriptor::canonical() const {
  std::ostringstream os;
  if (roots == Roots::All) {
    os << "algclosed:" << characteristic;
  } else if (roots == Roots::Cyclotomic && characteristic == 0) {
    if (m == 2) os << "Q";
    else os << "Q(zeta_" << m << ")";
  } else {
    os << "char=" << characteristic;
    if (!roots_unspecified) {
      os << ";zeta=";
      bool first = true;
      for (auto n : explicit_) {
        os << (first ? "" : ",") << n;
        first = false;
      }
    }
  }
  return os.str();
}

namespace {

struct Cursor {
  const std::string& s;
  std::size_t pos = 0;

  [[noreturn]] void error(const std::string& what) const {
    throw ParseError(pos, "field spec '" + s + "': " + what);
  }
  bool eat(const std::string& lit) {
    if (s.compare(pos, lit.size(), lit) == 0) {
      pos += lit.size();
      return true;
    }
    return false;
  }
  void expect(const std::string& lit) {
    if (!eat(lit)) error("expected '" + lit + "'");
  }
  long number() {
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) error("expected a number");
    if (pos - start > 9) error("number too large");
    return std::stol(s.substr(start, pos - start));
  }
  void end() {
    if (pos != s.size()) error("trailing characters");
  }
};

int characteristic_at(Cursor& c) {
  std::size_t at = c.pos;
  long p = c.number();
  if (p != 0 && !is_prime(p)) {
    c.pos = at;
    c.error("characteristic must be 0 or a prime");
  }
  return int(p);
}

}  // namespace

FieldDescriptor parse_field(const std::string& s) {
  FieldDescriptor f;
  f.text = s;
  Cursor c{s};
  if (c.eat("algclosed:")) {
    f.characteristic = characteristic_at(c);
    f.roots = FieldDescriptor::Roots::All;
    c.end();
    return f;
  }
  if (c.eat("char=")) {
    f.characteristic = characteristic_at(c);
    f.roots = FieldDescriptor::Roots::Explicit;
    long p = f.characteristic;
    long lcm = p == 2 ? 1 : 2;  // -1 is a primitive square root of 1 unless char 2
    if (c.eat(";")) {
      c.expect("zeta=");
      do {
        std::size_t at = c.pos;
        long n = c.number();
        if (n < 1) {
          c.pos = at;
          c.error("root order must be positive");
        }
        // strip the char-p part: x^(p^a n') - 1 = (x^n' - 1)^(p^a)
        while (p > 0 && n % p == 0) n /= p;
        lcm = std::lcm(lcm, n);
        if (lcm > 1'000'000) c.error("root orders too large");
      } while (c.eat(","));
    } else {
      f.roots_unspecified = true;
    }
    c.end();
    for (long d = 1; d <= lcm; ++d)
      if (lcm % d == 0) f.explicit_.insert(d);
    if (p == 0) {
      // same set as Q(zeta_lcm)
      f.roots = FieldDescriptor::Roots::Cyclotomic;
      f.m = lcm;
      f.explicit_.clear();
    }
    return f;
  }
  if (c.eat("Q")) {
    long m = 2;
    if (c.eat("(")) {
      c.expect("zeta_");
      std::size_t at = c.pos;
      m = c.number();
      if (m < 1) {
        c.pos = at;
        c.error("conductor must be positive");
      }
      c.expect(")");
    }
    c.end();
    if (m % 2) m *= 2;
    f.m = m;
    return f;
  }
  c.error("expected 'Q', 'Q(zeta_m)', 'algclosed:c' or 'char=p;zeta=...'");
}

Subgroup k_center(const FiniteGroup& g, const FieldDescriptor& f) {
  std::vector<Elem> keep;
  Subgroup z_all = g.center();
  for (auto z : z_all.elements())
    if (f.has_primitive_root(g.element_order(z))) keep.push_back(z);
  Subgroup h(g, keep);
  for (auto a : keep)
    for (auto b : keep)
      if (!h.contains(g.mult(a, b)))
        fail(ErrorKind::InternalInconsistency, "k-center is not closed");
  return h;
}

int k_center_rank(const FiniteGroup& g, const FieldDescriptor& f) {
  return int(structure(k_center(g, f)).rank());
}

bool is_semi_faithful(const FiniteGroup& g, const FieldDescriptor& f) {
  if (f.characteristic == 0 || g.is_trivial()) return true;
  for (const auto& foot : g.feet())
    if (foot.is_p_group(f.characteristic)) return false;
  return true;
}

bool supports_splitting(const FiniteGroup& g, const FieldDescriptor& f) {
  if (f.characteristic > 0 && g.order() % std::size_t(f.characteristic) == 0) return false;
  return f.has_primitive_root(g.exponent());
}

}  // namespace essdim
