#include "essdim/abelian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "essdim/smith.hpp"

namespace essdim {

namespace {

long mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

long mpz_mod(const mpz_class& a, long m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), mpz_class(m).get_mpz_t());
  return r.get_si();
}

}  // namespace

std::vector<std::pair<long, int>> factorize(long n) {
  std::vector<std::pair<long, int>> f;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.emplace_back(p, e);
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

long mod_inverse(long a, long m) {
  mpz_class r, x(mod(a, m));
  if (m == 1) return 0;
  if (!mpz_invert(r.get_mpz_t(), x.get_mpz_t(), mpz_class(m).get_mpz_t()))
    fail(ErrorKind::PreconditionViolated, "no inverse modulo " + std::to_string(m));
  return r.get_si();
}

long crt(const std::vector<long>& r, const std::vector<long>& m) {
  mpz_class x = 0, big = 1;
  for (std::size_t i = 0; i < r.size(); ++i) {
    // x + big * t = r_i mod m_i
    long bm = mpz_mod(big, m[i]);
    long t = mod((r[i] - mpz_mod(x, m[i])) * (m[i] == 1 ? 0 : mod_inverse(bm, m[i])), m[i]);
    x += big * t;
    big *= m[i];
  }
  return mpz_class(x % big).get_si();
}

// ------------------------------------------------------------- structure

AbelianStructure::AbelianStructure(std::vector<long> divisors)
    : divisors_(std::move(divisors)) {
  for (std::size_t i = 0; i < divisors_.size(); ++i) {
    if (divisors_[i] <= 1)
      fail(ErrorKind::PreconditionViolated, "elementary divisor must exceed 1");
    if (i && divisors_[i] % divisors_[i - 1] != 0)
      fail(ErrorKind::PreconditionViolated, "divisors must form a divisibility chain");
  }
}

long AbelianStructure::order() const {
  long n = 1;
  for (auto d : divisors_) n *= d;
  return n;
}

std::uint64_t AbelianStructure::encode(const IVec& v) const {
  std::uint64_t code = 0;
  for (std::size_t i = divisors_.size(); i-- > 0;)
    code = code * std::uint64_t(divisors_[i]) + std::uint64_t(mod(v[i], divisors_[i]));
  return code;
}

IVec AbelianStructure::decode(std::uint64_t code) const {
  IVec v(divisors_.size());
  for (std::size_t i = 0; i < divisors_.size(); ++i) {
    v[i] = (long)(code % std::uint64_t(divisors_[i]));
    code /= std::uint64_t(divisors_[i]);
  }
  return v;
}

IVec AbelianStructure::reduce(IVec v) const {
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = mod(v[i], divisors_[i]);
  return v;
}

IVec AbelianStructure::add(const IVec& a, const IVec& b) const {
  IVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod(a[i] + b[i], divisors_[i]);
  return r;
}

IVec AbelianStructure::scale(const IVec& a, long k) const {
  IVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = mod((long)((__int128)a[i] * mod(k, divisors_[i]) % divisors_[i]), divisors_[i]);
  return r;
}

long AbelianStructure::element_order(const IVec& v) const {
  long o = 1;
  for (std::size_t i = 0; i < v.size(); ++i)
    o = std::lcm(o, divisors_[i] / std::gcd(mod(v[i], divisors_[i]), divisors_[i]));
  return o;
}

long AbelianStructure::subgroup_order(const std::vector<IVec>& gens) const {
  std::size_t r = divisors_.size();
  if (r == 0) return 1;
  ZMatrix m = zmatrix(gens.size() + r, r);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < r; ++j) m[i][j] = gens[i][j];
  for (std::size_t j = 0; j < r; ++j) m[gens.size() + j][j] = divisors_[j];
  auto s = smith_normal_form(m);
  mpz_class index = 1;
  for (std::size_t j = 0; j < r; ++j) index *= s.D[j][j];
  return order() / index.get_si();
}

IVec AbelianStructure::to_vector(Elem g) const {
  auto it = code_of_.find(g);
  if (it == code_of_.end())
    fail(ErrorKind::PreconditionViolated, "element outside the abelian subgroup");
  return decode(it->second);
}

Elem AbelianStructure::from_vector(const IVec& v) const {
  return elem_of_code_.at(encode(v));
}

AbelianStructure structure(const Subgroup& a) {
  if (!a.is_abelian()) fail(ErrorKind::NotAbelian, "structure of a nonabelian subgroup");
  const FiniteGroup& g = a.parent();
  // Greedy generators s_k with triangular relations m_k e_k - x(s_k^{m_k}).
  std::vector<Elem> gens;
  std::map<Elem, IVec> span{{0, {}}};
  std::vector<IVec> rels;
  for (auto x : a.elements()) {
    if (span.count(x)) continue;
    std::size_t t = gens.size();
    long m = 1;
    Elem p = x;
    while (!span.count(p)) {
      p = g.mult(p, x);
      ++m;
    }
    IVec rel = span.at(p);
    for (auto& c : rel) c = -c;
    rel.resize(t + 1, 0);
    rel[t] += m;
    rels.push_back(rel);
    std::map<Elem, IVec> next;
    for (const auto& [y, xv] : span) {
      Elem cur = y;
      for (long k = 0; k < m; ++k) {
        IVec v = xv;
        v.resize(t + 1, 0);
        v[t] = k;
        next.emplace(cur, std::move(v));
        cur = g.mult(cur, x);
      }
    }
    span = std::move(next);
    gens.push_back(x);
  }
  std::size_t t = gens.size();
  AbelianStructure s;
  s.sub_ = a;
  if (t == 0) {
    s.code_of_[0] = 0;
    s.elem_of_code_ = {0};
    return s;
  }
  ZMatrix r = zmatrix(t, t);
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < rels[i].size(); ++j) r[i][j] = rels[i][j];
  auto snf = smith_normal_form(r);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < t; ++i)
    if (snf.D[i][i] != 1) {
      keep.push_back(i);
      s.divisors_.push_back(snf.D[i][i].get_si());
    }
  for (auto i : keep) {
    Elem b = 0;
    for (std::size_t k = 0; k < t; ++k)
      b = g.mult(b, g.pow(gens[k], mpz_mod(snf.Vinv[i][k], g.element_order(gens[k]))));
    s.basis_.push_back(b);
  }
  s.elem_of_code_.assign(std::size_t(s.order()), 0);
  std::vector<char> seen(s.elem_of_code_.size(), 0);
  for (const auto& [y, xv] : span) {
    IVec v(keep.size());
    for (std::size_t c = 0; c < keep.size(); ++c) {
      mpz_class acc = 0;
      for (std::size_t k = 0; k < t; ++k) acc += snf.V[k][keep[c]] * xv[k];
      v[c] = mpz_mod(acc, s.divisors_[c]);
    }
    std::uint64_t code = s.encode(v);
    if (seen[code]) fail(ErrorKind::InternalInconsistency, "structure map not injective");
    seen[code] = 1;
    s.code_of_[y] = code;
    s.elem_of_code_[code] = y;
  }
  // basis elements must map to unit vectors
  for (std::size_t i = 0; i < s.basis_.size(); ++i) {
    IVec e(s.basis_.size(), 0);
    e[i] = 1;
    if (s.to_vector(s.basis_[i]) != e)
      fail(ErrorKind::InternalInconsistency, "structure basis mismatch");
  }
  return s;
}

// ---------------------------------------------------------------- modules

GModule::GModule(AbelianStructure base, std::vector<IMat> action)
    : base_(std::move(base)), action_(std::move(action)) {
  std::size_t r = base_.rank();
  for (auto& m : action_) {
    if (m.size() != r) fail(ErrorKind::ShapeMismatch, "action matrix size");
    for (std::size_t i = 0; i < r; ++i) {
      if (m[i].size() != r) fail(ErrorKind::ShapeMismatch, "action matrix size");
      for (std::size_t j = 0; j < r; ++j) {
        m[i][j] = mod(m[i][j], base_.divisors()[i]);
        // a homomorphism Z/d_j -> Z/d_i needs d_i | m_ij d_j
        if ((__int128)m[i][j] * base_.divisors()[j] % base_.divisors()[i] != 0)
          fail(ErrorKind::PreconditionViolated, "action matrix is not a homomorphism");
      }
    }
    std::vector<IVec> cols;
    for (std::size_t j = 0; j < r; ++j) {
      IVec c(r);
      for (std::size_t i = 0; i < r; ++i) c[i] = m[i][j];
      cols.push_back(c);
    }
    if (base_.subgroup_order(cols) != base_.order())
      fail(ErrorKind::PreconditionViolated, "action matrix is not invertible");
  }
}

IVec GModule::act(std::size_t s, const IVec& v) const {
  const auto& m = action_[s];
  std::size_t r = v.size();
  IVec w(r);
  for (std::size_t i = 0; i < r; ++i) {
    __int128 acc = 0;
    for (std::size_t j = 0; j < r; ++j) acc += (__int128)m[i][j] * v[j];
    w[i] = mod((long)(acc % base_.divisors()[i]), base_.divisors()[i]);
  }
  return w;
}

namespace {

IMat compose(const AbelianStructure& a, const IMat& x, const IMat& y) {
  std::size_t r = x.size();
  IMat z(r, IVec(r, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      __int128 acc = 0;
      for (std::size_t k = 0; k < r; ++k) acc += (__int128)x[i][k] * y[k][j];
      z[i][j] = mod((long)(acc % a.divisors()[i]), a.divisors()[i]);
    }
  return z;
}

bool is_identity(const IMat& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m[i][j] != (i == j ? 1 : 0)) return false;
  return true;
}

}  // namespace

IMat GModule::inverse_action(std::size_t s) const {
  const IMat& m = action_[s];
  IMat prev = m, cur = m;
  std::size_t r = m.size();
  IMat id(r, IVec(r, 0));
  for (std::size_t i = 0; i < r; ++i) id[i][i] = 1;
  if (is_identity(m)) return id;
  for (long step = 0; step < 10'000'000; ++step) {
    IMat next = compose(base_, cur, m);
    if (is_identity(next)) return cur;
    cur = std::move(next);
  }
  fail(ErrorKind::SearchBudgetExceeded, "automorphism order too large");
}

GModule conjugation_module(const FiniteGroup& g, const Subgroup& a) {
  if (!a.is_normal()) fail(ErrorKind::NotNormal, "module subgroup must be normal");
  AbelianStructure s = structure(a);
  std::size_t r = s.rank();
  std::vector<IMat> action;
  for (auto gen : g.generators()) {
    IMat m(r, IVec(r, 0));
    for (std::size_t j = 0; j < r; ++j) {
      IVec col = s.to_vector(g.conj(s.basis()[j], g.inv(gen)));
      for (std::size_t i = 0; i < r; ++i) m[i][j] = col[i];
    }
    action.push_back(std::move(m));
  }
  GModule mod(s, action);
  // action of a generator word must match conjugation
  std::mt19937_64 rng(20);
  std::uniform_int_distribution<std::size_t> pg(0, g.order() - 1), pa(0, a.order() - 1);
  for (int t = 0; t < 20; ++t) {
    Elem w = Elem(pg(rng));
    Elem x = a.elements()[pa(rng)];
    IVec v = s.to_vector(x);
    auto word = g.word(w);
    for (std::size_t i = word.size(); i-- > 0;) v = mod.act(word[i], v);
    if (v != s.to_vector(g.mult(w, g.mult(x, g.inv(w)))))
      fail(ErrorKind::InternalInconsistency, "module action disagrees with conjugation");
  }
  return mod;
}

long pairing(const AbelianStructure& a, const IVec& chi, const IVec& v) {
  long e = a.exponent();
  __int128 acc = 0;
  for (std::size_t i = 0; i < a.rank(); ++i)
    acc += (__int128)chi[i] * v[i] % e * (e / a.divisors()[i]);
  return mod((long)(acc % e), e);
}

GModule dual_module(const GModule& m) {
  const auto& d = m.base().divisors();
  std::size_t r = d.size();
  std::vector<IMat> action;
  for (std::size_t s = 0; s < m.generator_count(); ++s) {
    IMat inv = m.inverse_action(s);
    IMat n(r, IVec(r, 0));
    // (g·χ)_j = Σ_i χ_i inv[i][j] d_j / d_i
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t i = 0; i < r; ++i) {
        __int128 num = (__int128)inv[i][j] * d[j];
        n[j][i] = (long)(num / d[i] % d[j]);
      }
    action.push_back(std::move(n));
  }
  return GModule(AbelianStructure(d), action);
}

// ---------------------------------------------------------------- tables

ModuleTables::ModuleTables(const GModule& m, long cap) {
  const auto& a = m.base();
  if (a.order() > cap)
    fail(ErrorKind::SearchBudgetExceeded,
         "module of order " + std::to_string(a.order()) + " exceeds cap " + std::to_string(cap));
  n_ = std::size_t(a.order());
  std::vector<IVec> vecs(n_);
  for (std::size_t c = 0; c < n_; ++c) vecs[c] = a.decode(c);
  add_.resize(n_ * n_);
  for (std::size_t x = 0; x < n_; ++x)
    for (std::size_t y = 0; y < n_; ++y)
      add_[x * n_ + y] = std::uint32_t(a.encode(a.add(vecs[x], vecs[y])));
  for (std::size_t s = 0; s < m.generator_count(); ++s) {
    std::vector<std::uint32_t> t(n_);
    for (std::size_t x = 0; x < n_; ++x) t[x] = std::uint32_t(a.encode(m.act(s, vecs[x])));
    act_.push_back(std::move(t));
  }
  cyclic_.resize(n_);
  for (std::uint32_t x = 0; x < n_; ++x) {
    Bits orbit = empty();
    std::vector<std::uint32_t> list{x};
    orbit[x >> 6] |= 1ULL << (x & 63);
    for (std::size_t i = 0; i < list.size(); ++i)
      for (const auto& t : act_) {
        std::uint32_t y = t[list[i]];
        if (!test(orbit, y)) {
          orbit[y >> 6] |= 1ULL << (y & 63);
          list.push_back(y);
        }
      }
    cyclic_[x] = join(zero_module(), orbit);
  }
}

ModuleTables::Bits ModuleTables::empty() const { return Bits((n_ + 63) / 64, 0); }

ModuleTables::Bits ModuleTables::zero_module() const {
  Bits b = empty();
  b[0] = 1;
  return b;
}

std::size_t ModuleTables::count(const Bits& b) const {
  std::size_t c = 0;
  for (auto w : b) c += std::size_t(__builtin_popcountll(w));
  return c;
}

ModuleTables::Bits ModuleTables::join(const Bits& x, const Bits& y) const {
  // x must be a subgroup; y any subset. Result: subgroup generated by both.
  Bits r = x;
  std::vector<std::uint32_t> list;
  for (std::uint32_t e = 0; e < n_; ++e)
    if (test(r, e)) list.push_back(e);
  for (std::uint32_t t = 0; t < n_; ++t) {
    if (!test(y, t) || test(r, t)) continue;
    // R + <t> is the union of the cosets R + kt for k until kt lies in R
    std::vector<std::uint32_t> base = list;
    Bits orig = r;
    std::uint32_t step = t;
    while (!test(orig, step)) {
      for (auto b : base) {
        std::uint32_t s = add(b, step);
        r[s >> 6] |= 1ULL << (s & 63);
        list.push_back(s);
      }
      step = add(step, t);
    }
  }
  return r;
}

namespace {

// Rank of the coinvariants A / <g·a - a>: a lower bound for rank_zg.
int coinvariant_rank(const GModule& m) {
  const auto& d = m.base().divisors();
  std::size_t r = d.size();
  ZMatrix rows;
  for (std::size_t j = 0; j < r; ++j) {
    std::vector<mpz_class> row(r, 0);
    row[j] = d[j];
    rows.push_back(row);
  }
  for (const auto& mat : m.action())
    for (std::size_t j = 0; j < r; ++j) {
      std::vector<mpz_class> row(r, 0);
      for (std::size_t i = 0; i < r; ++i) row[i] = mat[i][j] - (i == j ? 1 : 0);
      rows.push_back(row);
    }
  if (r == 0) return 0;
  auto s = smith_normal_form(rows);
  int k = 0;
  for (std::size_t j = 0; j < r; ++j)
    if (s.D[j][j] != 1) ++k;
  return k;
}

struct GenSearch {
  const ModuleTables& t;
  const std::vector<ModuleTables::Bits>& cyc;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  std::set<std::pair<int, ModuleTables::Bits>> dead;

  bool dfs(int left, std::size_t start, const ModuleTables::Bits& cur) {
    if (t.is_all(cur)) return true;
    if (left == 0) return false;
    if (dead.count({left, cur})) return false;
    for (std::size_t i = start; i < cyc.size(); ++i) {
      if (++nodes > budget)
        fail(ErrorKind::SearchBudgetExceeded, "rank_zg search budget exhausted");
      bool inside = true;
      for (std::size_t w = 0; w < cur.size() && inside; ++w)
        if (cyc[i][w] & ~cur[w]) inside = false;
      if (inside) continue;
      if (dfs(left - 1, i + 1, t.join(cur, cyc[i]))) return true;
    }
    dead.insert({left, cur});
    return false;
  }
};

std::vector<ModuleTables::Bits> distinct_cyclic(const ModuleTables& t) {
  std::vector<ModuleTables::Bits> out;
  std::set<ModuleTables::Bits> seen;
  for (std::uint32_t x = 1; x < t.size(); ++x)
    if (seen.insert(t.cyclic(x)).second) out.push_back(t.cyclic(x));
  return out;
}

}  // namespace

int rank_zg(const GModule& m, long cap, std::uint64_t node_budget) {
  if (m.base().order() == 1) return 0;
  ModuleTables t(m, cap);
  int lb = std::max(1, coinvariant_rank(m));
  int ub = int(m.base().rank());
  // Candidates up to the G-action: cyclic submodules are G-stable, so
  // elements in one orbit (or generating the same cyclic submodule) are
  // interchangeable.
  auto cyc = distinct_cyclic(t);
  GenSearch s{t, cyc, node_budget, 0, {}};
  for (int r = lb; r < ub; ++r)
    if (s.dfs(r, 0, t.zero_module())) return r;
  return ub;
}

std::uint64_t generating_tuples_count(const GModule& m, int r, long cap) {
  ModuleTables t(m, cap);
  double space = std::pow(double(t.size()), r);
  if (space > 1e12) fail(ErrorKind::SearchBudgetExceeded, "tuple space too large");
  // group elements by their cyclic submodule
  std::map<ModuleTables::Bits, std::uint64_t> mult;
  for (std::uint32_t x = 0; x < t.size(); ++x) ++mult[t.cyclic(x)];
  std::map<ModuleTables::Bits, std::uint64_t> states{{t.zero_module(), 1}};
  for (int level = 0; level < r; ++level) {
    std::map<ModuleTables::Bits, std::uint64_t> next;
    for (const auto& [s, c] : states)
      for (const auto& [z, k] : mult) next[t.join(s, z)] += c * k;
    states = std::move(next);
  }
  std::uint64_t total = 0;
  for (const auto& [s, c] : states)
    if (t.is_all(s)) total += c;
  return total;
}

// ----------------------------------------------------------- eldiv_shift

namespace {

// A primitive integer relation Σ f_k g_k = 0 among the generators, which
// exists when the generated subgroup has rank below the generator count.
IVec primitive_relation(const AbelianStructure& a, const std::vector<IVec>& g) {
  std::size_t k = g.size(), r = a.rank();
  ZMatrix m = zmatrix(k + r, r);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < r; ++j) m[i][j] = g[i][j];
  for (std::size_t j = 0; j < r; ++j) m[k + j][j] = a.divisors()[j];
  auto s = smith_normal_form(m);
  // rows of U beyond the rank span the left kernel; their first k entries
  // span the relation lattice of the generators
  ZMatrix lattice;
  for (std::size_t i = r; i < k + r; ++i)
    lattice.emplace_back(s.U[i].begin(), s.U[i].begin() + long(k));
  auto t = smith_normal_form(lattice);
  if (t.D[0][0] != 1)
    fail(ErrorKind::PreconditionViolated, "no primitive relation: rank exceeds generator count");
  IVec f(k);
  for (std::size_t i = 0; i < k; ++i) f[i] = t.Vinv[0][i].get_si();
  // sanity: it is a relation
  IVec sum(r, 0);
  for (std::size_t i = 0; i < k; ++i) sum = a.add(sum, a.scale(g[i], f[i]));
  if (a.encode(sum) != 0) fail(ErrorKind::InternalInconsistency, "relation check failed");
  return f;
}

}  // namespace

std::vector<long> eldiv_shift(const AbelianStructure& a, const std::vector<IVec>& c,
                                   const IVec& h) {
  std::size_t n = c.size();
  if (a.rank() > n) fail(ErrorKind::PreconditionViolated, "rank of A exceeds n");
  std::vector<IVec> all = c;
  all.push_back(h);
  if (a.subgroup_order(all) != a.order())
    fail(ErrorKind::PreconditionViolated, "c and h do not generate A");
  long oh = a.element_order(h);
  std::vector<long> result(n, 0);
  if (oh == 1) return result;
  auto primes = factorize(oh);
  std::vector<std::vector<long>> residues(n);
  std::vector<long> moduli;
  std::vector<IVec> cur = c;
  for (auto [p, l] : primes) {
    long q = 1;
    for (int i = 0; i < l; ++i) q *= p;
    moduli.push_back(q);
    // h_p = u h with u = 1 mod q, u = 0 mod oh/q
    long u = crt({1, 0}, {q, oh / q});
    IVec hp = a.scale(h, u);
    std::vector<IVec> gens = cur;
    gens.push_back(hp);
    IVec f = primitive_relation(a, gens);
    // Σ e_i cur_i = e_0 h_p
    long e0 = -f[n];
    std::vector<long> m(n, 0);
    if (mod(e0, p) != 0) {
      // h_p already lies in <cur>
    } else {
      std::size_t i = 0;
      while (i < n && mod(f[i], p) == 0) ++i;
      if (i == n) fail(ErrorKind::InternalInconsistency, "relation not primitive");
      m[i] = mod((long)((__int128)mod(1 - e0, q) * mod_inverse(f[i], q) % q), q);
      cur[i] = a.add(cur[i], a.scale(hp, m[i]));
    }
    for (std::size_t i = 0; i < n; ++i) residues[i].push_back(m[i]);
  }
  for (std::size_t i = 0; i < n; ++i) result[i] = crt(residues[i], moduli);
  std::vector<IVec> shifted;
  for (std::size_t i = 0; i < n; ++i) shifted.push_back(a.add(c[i], a.scale(h, result[i])));
  if (a.subgroup_order(shifted) != a.order())
    fail(ErrorKind::InternalInconsistency, "eldiv_shift postcondition failed");
  return result;
}

}  // namespace essdim
