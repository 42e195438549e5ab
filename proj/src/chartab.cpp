#include "essdim/chartab.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numeric>
#include <set>

#include <unistd.h>

#include "essdim/abelian.hpp"
#include "json.hpp"

namespace essdim {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// --------------------------------------------------------------- F_q tools

struct Fq {
  u64 q;
  u64 mul(u64 a, u64 b) const { return u64(u128(a) * b % q); }
  u64 add(u64 a, u64 b) const { return (a + b) % q; }
  u64 sub(u64 a, u64 b) const { return (a + q - b) % q; }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    for (a %= q; e; e >>= 1, a = mul(a, a))
      if (e & 1) r = mul(r, a);
    return r;
  }
  u64 inv(u64 a) const { return pow(a, q - 2); }
};

u64 dixon_prime(u64 order, u64 e) {
  double bound = 2.0 * std::sqrt(double(order));
  for (u64 q = e + 1;; q += e)
    if (double(q) > bound && is_prime(long(q))) return q;
}

u64 primitive_root(const Fq& f) {
  auto fac = factorize(long(f.q - 1));
  for (u64 z = 2;; ++z) {
    bool ok = true;
    for (auto [p, k] : fac)
      if (f.pow(z, (f.q - 1) / u64(p)) == 1) ok = false;
    if (ok) return z;
  }
}

using Mat = std::vector<std::vector<u64>>;

// Characteristic polynomial (lowest coefficient first, monic) via reduction
// to upper Hessenberg form.
std::vector<u64> char_poly(Mat h, const Fq& f) {
  std::size_t n = h.size();
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t piv = m;
    while (piv < n && h[piv][m - 1] == 0) ++piv;
    if (piv == n) continue;
    if (piv != m) {
      std::swap(h[piv], h[m]);
      for (auto& row : h) std::swap(row[piv], row[m]);
    }
    u64 inv = f.inv(h[m][m - 1]);
    for (std::size_t i = m + 1; i < n; ++i) {
      u64 u = f.mul(h[i][m - 1], inv);
      if (u == 0) continue;
      // row_i -= u row_m, then col_m += u col_i (similarity)
      for (std::size_t j = 0; j < n; ++j) h[i][j] = f.sub(h[i][j], f.mul(u, h[m][j]));
      for (std::size_t j = 0; j < n; ++j) h[j][m] = f.add(h[j][m], f.mul(u, h[j][i]));
    }
  }
  // p_k = char poly of the leading k x k block
  std::vector<std::vector<u64>> p(n + 1);
  p[0] = {1};
  for (std::size_t k = 1; k <= n; ++k) {
    std::size_t m = k - 1;
    std::vector<u64> cur(k + 1, 0);
    // (x - h_mm) p_{k-1}
    for (std::size_t i = 0; i < p[k - 1].size(); ++i) {
      cur[i + 1] = f.add(cur[i + 1], p[k - 1][i]);
      cur[i] = f.sub(cur[i], f.mul(h[m][m], p[k - 1][i]));
    }
    u64 prod = 1;
    for (std::size_t i = m; i-- > 0;) {
      prod = f.mul(prod, h[i + 1][i]);
      if (prod == 0) break;
      u64 c = f.mul(prod, h[i][m]);
      for (std::size_t t = 0; t < p[i].size(); ++t) cur[t] = f.sub(cur[t], f.mul(c, p[i][t]));
    }
    p[k] = std::move(cur);
  }
  return p[n];
}

// Row-reduce in place; returns pivot columns. Rows become a reduced echelon
// basis of their span.
std::vector<std::size_t> echelon(Mat& rows, const Fq& f) {
  std::vector<std::size_t> piv;
  std::size_t r = 0, cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t i = r;
    while (i < rows.size() && rows[i][c] == 0) ++i;
    if (i == rows.size()) continue;
    std::swap(rows[i], rows[r]);
    u64 inv = f.inv(rows[r][c]);
    for (auto& x : rows[r]) x = f.mul(x, inv);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (k == r || rows[k][c] == 0) continue;
      u64 u = rows[k][c];
      for (std::size_t j = 0; j < cols; ++j) rows[k][j] = f.sub(rows[k][j], f.mul(u, rows[r][j]));
    }
    piv.push_back(c);
    ++r;
  }
  rows.resize(r);
  return piv;
}

// Null space of a square matrix, as row vectors.
Mat null_space(Mat a, const Fq& f) {
  std::size_t n = a.size();
  auto piv = echelon(a, f);
  std::vector<char> is_piv(n, 0);
  for (auto c : piv) is_piv[c] = 1;
  Mat out;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_piv[free]) continue;
    std::vector<u64> v(n, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = f.sub(0, a[i][free]);
    out.push_back(std::move(v));
  }
  return out;
}

struct Space {
  Mat basis;  // reduced echelon rows in F_q^r
  std::vector<std::size_t> piv;
};

}  // namespace

// ------------------------------------------------------------ construction

CharacterTable character_table(const FiniteGroup& g) {
  const auto& classes = g.conjugacy_classes();
  const auto& cls_of = g.class_map();
  std::size_t r = classes.size();
  if (r > 120) fail(ErrorKind::BackendLimit, "more than 120 conjugacy classes");
  if (g.order() > 50000) fail(ErrorKind::BackendLimit, "group order above 50000");
  u64 order = g.order(), e = u64(g.exponent());
  Fq f{dixon_prime(order, e)};
  u64 z = primitive_root(f);

  std::vector<Elem> reps(r);
  std::vector<std::size_t> sizes(r), inv_cls(r);
  for (std::size_t k = 0; k < r; ++k) {
    reps[k] = classes[k][0];
    sizes[k] = classes[k].size();
    inv_cls[k] = cls_of[g.inv(reps[k])];
  }

  // Class-sum matrix for class j: A[l][k] = #{x in C_j : x^-1 g_k in C_l};
  // the central-character vector (ω(K_l))_l is a right eigenvector.
  auto class_matrix = [&](std::size_t j) {
    Mat a(r, std::vector<u64>(r, 0));
    for (auto x : classes[j]) {
      Elem xi = g.inv(x);
      for (std::size_t k = 0; k < r; ++k) ++a[cls_of[g.mult(xi, reps[k])]][k];
    }
    for (auto& row : a)
      for (auto& v : row) v %= f.q;
    return a;
  };

  std::vector<Space> todo, done;
  {
    Space all;
    all.basis.assign(r, std::vector<u64>(r, 0));
    for (std::size_t i = 0; i < r; ++i) all.basis[i][i] = 1;
    for (std::size_t i = 0; i < r; ++i) all.piv.push_back(i);
    (r == 1 ? done : todo).push_back(std::move(all));
  }
  // cheapest class sums first
  std::vector<std::size_t> order_j(r - 1);
  std::iota(order_j.begin(), order_j.end(), 1);
  std::stable_sort(order_j.begin(), order_j.end(),
                   [&](std::size_t a, std::size_t b) { return sizes[a] < sizes[b]; });
  for (std::size_t j : order_j) {
    if (todo.empty()) break;
    Mat a = class_matrix(j);
    std::vector<Space> next;
    for (auto& sp : todo) {
      std::size_t d = sp.basis.size();
      // restriction: column i holds the coordinates of A b_i
      Mat b(d, std::vector<u64>(d, 0));
      for (std::size_t i = 0; i < d; ++i) {
        const auto& v = sp.basis[i];
        for (std::size_t ii = 0; ii < d; ++ii) {
          std::size_t l = sp.piv[ii];
          u64 s = 0;
          for (std::size_t k = 0; k < r; ++k)
            if (v[k] && a[l][k]) s = f.add(s, f.mul(a[l][k], v[k]));
          b[ii][i] = s;
        }
      }
      auto cp = char_poly(b, f);
      std::vector<u64> roots;
      for (u64 lam = 0; lam < f.q && roots.size() < d; ++lam) {
        u64 acc = 0;
        for (std::size_t t = cp.size(); t-- > 0;) acc = f.add(f.mul(acc, lam), cp[t]);
        if (acc == 0) roots.push_back(lam);
      }
      if (roots.size() == 1) {
        next.push_back(std::move(sp));
        continue;
      }
      std::size_t total = 0;
      for (u64 lam : roots) {
        Mat m = b;
        for (std::size_t i = 0; i < d; ++i) m[i][i] = f.sub(m[i][i], lam);
        Space part;
        for (const auto& coord : null_space(m, f)) {
          std::vector<u64> v(r, 0);
          for (std::size_t i = 0; i < d; ++i)
            if (coord[i])
              for (std::size_t k = 0; k < r; ++k)
                v[k] = f.add(v[k], f.mul(coord[i], sp.basis[i][k]));
          part.basis.push_back(std::move(v));
        }
        part.piv = echelon(part.basis, f);
        total += part.basis.size();
        (part.basis.size() == 1 ? done : next).push_back(std::move(part));
      }
      if (total != d) fail(ErrorKind::InternalInconsistency, "class-sum matrix not split over F_q");
    }
    todo = std::move(next);
  }
  if (!todo.empty() || done.size() != r)
    fail(ErrorKind::InternalInconsistency, "eigenspaces did not separate the characters");

  // powers: pc[k][j] = class of g_k^j
  std::vector<std::vector<std::size_t>> pc(r);
  for (std::size_t k = 0; k < r; ++k) {
    Elem x = 0;
    do {
      pc[k].push_back(cls_of[x]);
      x = g.mult(x, reps[k]);
    } while (x != 0);
  }

  CharacterTable t;
  t.g_ = g;
  t.sizes_ = sizes;
  t.reps_ = reps;
  long root = long(std::sqrt(double(order))) + 1;
  for (auto& sp : done) {
    auto w = sp.basis[0];
    if (w[0] == 0) fail(ErrorKind::InternalInconsistency, "eigenvector vanishes at identity");
    u64 n0 = f.inv(w[0]);
    for (auto& x : w) x = f.mul(x, n0);
    u64 s = 0;
    for (std::size_t k = 0; k < r; ++k)
      s = f.add(s, f.mul(f.mul(w[k], w[inv_cls[k]]), f.inv(sizes[k] % f.q)));
    if (s == 0) fail(ErrorKind::InternalInconsistency, "degenerate norm");
    u64 d2 = f.mul(order % f.q, f.inv(s));
    long deg = 0;
    for (long d = 1; d <= root; ++d)
      if (order % u64(d) == 0 && u64(d) * u64(d) % f.q == d2) {
        deg = d;
        break;
      }
    if (deg == 0) fail(ErrorKind::InternalInconsistency, "no integral degree");
    std::vector<u64> chi(r);
    for (std::size_t k = 0; k < r; ++k)
      chi[k] = f.mul(f.mul(u64(deg), w[k]), f.inv(sizes[k] % f.q));
    std::vector<Cyclotomic> row(r);
    for (std::size_t k = 0; k < r; ++k) {
      long o = long(pc[k].size());
      u64 zo = f.pow(z, (f.q - 1) / u64(o)), zinv = f.inv(zo), oinv = f.inv(u64(o));
      std::vector<mpq_class> ex(o, 0);
      long sum = 0;
      u64 step = 1;  // z^{-t}
      for (long t = 0; t < o; ++t) {
        u64 acc = 0, pw = 1;  // z^{-jt}
        for (long j = 0; j < o; ++j) {
          acc = f.add(acc, f.mul(chi[pc[k][j]], pw));
          pw = f.mul(pw, step);
        }
        long m = long(f.mul(acc, oinv));
        if (m > deg) fail(ErrorKind::InternalInconsistency, "eigenvalue multiplicity out of range");
        ex[t] = m;
        sum += m;
        step = f.mul(step, zinv);
      }
      if (sum != deg) fail(ErrorKind::InternalInconsistency, "multiplicities do not sum to degree");
      row[k] = Cyclotomic::from_exponents(o, ex);
    }
    t.degrees_.push_back(deg);
    t.vals_.push_back(std::move(row));
  }
  t.sort_rows();
  t.verify();
  return t;
}

void CharacterTable::sort_rows() {
  std::vector<std::size_t> idx(degrees_.size());
  std::iota(idx.begin(), idx.end(), 0);
  auto trivial = [&](std::size_t i) {
    for (const auto& v : vals_[i])
      if (v != Cyclotomic(1)) return false;
    return true;
  };
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (degrees_[a] != degrees_[b]) return degrees_[a] < degrees_[b];
    bool ta = trivial(a), tb = trivial(b);
    if (ta != tb) return ta;
    for (std::size_t k = 0; k < vals_[a].size(); ++k) {
      int c = vals_[a][k].compare(vals_[b][k]);
      if (c) return c < 0;
    }
    return false;
  });
  std::vector<long> d;
  std::vector<std::vector<Cyclotomic>> v;
  for (auto i : idx) {
    d.push_back(degrees_[i]);
    v.push_back(std::move(vals_[i]));
  }
  degrees_ = std::move(d);
  vals_ = std::move(v);
}

long CharacterTable::row_conductor(std::size_t row) const {
  long n = 1;
  for (const auto& v : vals_[row]) n = std::lcm(n, v.conductor());
  return n;
}

void CharacterTable::verify_rows() const {
  std::size_t r = sizes_.size();
  if (degrees_.size() != r || vals_.size() != r)
    fail(ErrorKind::InternalInconsistency, "row count differs from class count");
  long total = 0;
  const auto& cls_of = g_.class_map();
  std::vector<std::size_t> inv_cls(r);
  for (std::size_t k = 0; k < r; ++k) inv_cls[k] = cls_of[g_.inv(reps_[k])];
  for (std::size_t i = 0; i < r; ++i) {
    if (vals_[i][0] != Cyclotomic(degrees_[i]) || long(g_.order()) % degrees_[i] != 0)
      fail(ErrorKind::InternalInconsistency, "bad degree");
    total += degrees_[i] * degrees_[i];
  }
  if (total != long(g_.order())) fail(ErrorKind::InternalInconsistency, "sum of squared degrees");
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i; j < r; ++j) {
      Cyclotomic s;
      for (std::size_t k = 0; k < r; ++k)
        s += (vals_[i][k] * vals_[j][inv_cls[k]]).scaled(long(sizes_[k]));
      if (s != Cyclotomic(i == j ? long(g_.order()) : 0))
        fail(ErrorKind::InternalInconsistency, "row orthogonality fails");
    }
}

void CharacterTable::verify() const {
  verify_rows();
  std::size_t r = sizes_.size();
  std::vector<std::vector<Cyclotomic>> conj(r, std::vector<Cyclotomic>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < r; ++k) conj[i][k] = vals_[i][k].conj();
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t l = k; l < r; ++l) {
      Cyclotomic s;
      for (std::size_t i = 0; i < r; ++i) s += vals_[i][k] * conj[i][l];
      Cyclotomic want = k == l ? Cyclotomic(mpq_class(long(g_.order()), long(sizes_[k]))) : Cyclotomic(0);
      if (s != want) fail(ErrorKind::InternalInconsistency, "column orthogonality fails");
    }
}

// ------------------------------------------------------------------- cache

namespace {

std::string cache_path(const FiniteGroup& g, const std::string& dir) {
  return (std::filesystem::path(dir) / ("chartab-" + g.fingerprint() + ".json")).string();
}

}  // namespace

std::optional<CharacterTable> load_cached_table(const FiniteGroup& g, const std::string& dir) {
  using nlohmann::json;
  std::ifstream in(cache_path(g, dir));
  if (!in) return std::nullopt;
  try {
    json j = json::parse(in);
    if (j.at("format").get<int>() != 1 || j.at("fingerprint").get<std::string>() != g.fingerprint() ||
        j.at("order").get<std::size_t>() != g.order())
      return std::nullopt;
    CharacterTable t;
    t.g_ = g;
    const auto& classes = g.conjugacy_classes();
    for (const auto& c : classes) {
      t.sizes_.push_back(c.size());
      t.reps_.push_back(c[0]);
    }
    if (j.at("class_sizes").get<std::vector<std::size_t>>() != t.sizes_ ||
        j.at("class_reps").get<std::vector<Elem>>() != t.reps_)
      return std::nullopt;
    t.degrees_ = j.at("degrees").get<std::vector<long>>();
    for (const auto& row : j.at("values")) {
      std::vector<Cyclotomic> vr;
      for (const auto& v : row) {
        std::vector<mpq_class> c;
        for (const auto& s : v.at("c")) {
          mpq_class x(s.get<std::string>());
          x.canonicalize();
          c.push_back(x);
        }
        long n = v.at("n").get<long>();
        if (n < 1 || long(c.size()) != euler_phi(n)) return std::nullopt;
        vr.push_back(Cyclotomic::from_coefficients(n, c));
      }
      if (vr.size() != t.sizes_.size()) return std::nullopt;
      t.vals_.push_back(std::move(vr));
    }
    t.verify_rows();
    t.origin_ = "cache";
    return t;
  } catch (const std::exception&) {
    return std::nullopt;  // unreadable or inconsistent: recompute
  }
}

void store_cached_table(const CharacterTable& t, const std::string& dir) {
  using nlohmann::json;
  json j;
  j["format"] = 1;
  j["fingerprint"] = t.g_.fingerprint();
  j["order"] = t.g_.order();
  j["conductor"] = t.g_.exponent();
  j["class_sizes"] = t.sizes_;
  j["class_reps"] = t.reps_;
  j["degrees"] = t.degrees_;
  json vals = json::array();
  for (const auto& row : t.vals_) {
    json jr = json::array();
    for (const auto& v : row) {
      json c = json::array();
      for (const auto& x : v.coefficients()) c.push_back(x.get_str());
      jr.push_back({{"n", v.conductor()}, {"c", c}});
    }
    vals.push_back(jr);
  }
  j["values"] = vals;
  std::filesystem::create_directories(dir);
  std::string path = cache_path(t.g_, dir);
  std::string tmp = path + ".tmp" + std::to_string(std::hash<std::string>{}(path) ^ std::size_t(::getpid()));
  {
    std::ofstream out(tmp);
    if (!out) fail(ErrorKind::InputError, "cannot write cache file " + tmp);
    out << j.dump();
  }
  std::filesystem::rename(tmp, path);
}

CharacterTable character_table(const FiniteGroup& g, const std::string& cache_dir) {
  if (!cache_dir.empty())
    if (auto t = load_cached_table(g, cache_dir)) return *t;
  CharacterTable t = character_table(g);
  if (!cache_dir.empty()) {
    try {
      store_cached_table(t, cache_dir);
    } catch (const std::exception&) {
      // a read-only cache is not fatal
    }
  }
  return t;
}

TableSource& TableSource::global() {
  static TableSource s;
  return s;
}

const CharacterTable& TableSource::table(const FiniteGroup& g) {
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = memo_.find(g.identity());
  if (it != memo_.end()) return *it->second.second;
  auto t = std::make_shared<CharacterTable>(character_table(g, cache_dir));
  return *memo_.emplace(g.identity(), std::make_pair(g, t)).first->second.second;
}

// ----------------------------------------------------------------- queries

Subgroup kernel(const CharacterTable& t, std::size_t row) {
  return kernel(t, std::vector<std::size_t>{row});
}

std::size_t kernel_order(const CharacterTable& t, const std::vector<std::size_t>& rows) {
  std::size_t n = 0;
  for (std::size_t k = 0; k < t.class_sizes().size(); ++k) {
    bool in = true;
    for (auto i : rows) in = in && t.value(i, k) == Cyclotomic(t.degrees()[i]);
    if (in) n += t.class_sizes()[k];
  }
  return n;
}

Subgroup kernel(const CharacterTable& t, const std::vector<std::size_t>& rows) {
  const auto& g = t.group();
  const auto& classes = g.conjugacy_classes();
  std::vector<Elem> els;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    bool in = true;
    for (auto i : rows)
      if (t.value(i, k) != Cyclotomic(t.degrees()[i])) in = false;
    if (in) els.insert(els.end(), classes[k].begin(), classes[k].end());
  }
  std::sort(els.begin(), els.end());
  Subgroup k(g, els);
  for (auto a : els)
    for (auto b : k.generating_set())
      if (!k.contains(g.mult(a, b))) fail(ErrorKind::InternalInconsistency, "kernel not closed");
  return k;
}

bool CentralCharacter::is_trivial() const {
  for (auto x : exps)
    if (x) return false;
  return true;
}

CentralCharacter trivial_central_character(const Subgroup& c) {
  CentralCharacter ch;
  ch.domain = c;
  ch.e = c.exponent();
  ch.exps.assign(c.order(), 0);
  return ch;
}

CentralCharacter central_character(const CharacterTable& t, std::size_t row, const Subgroup& c) {
  if (!c.is_central()) fail(ErrorKind::NotCentral, "subgroup is not central");
  CentralCharacter ch = trivial_central_character(c);
  mpq_class inv_deg(1, t.degrees()[row]);
  const auto& g = t.group();
  for (std::size_t i = 0; i < c.order(); ++i) {
    Elem z = c.elements()[i];
    Cyclotomic v = t.value_at(row, z).scaled(inv_deg);
    // only exponents that are multiples of E/ord(z) can match
    long step = ch.e / g.element_order(z);
    long found = -1;
    for (long k = 0; k < ch.e && found < 0; k += step)
      if (Cyclotomic::root_of_unity(ch.e, k) == v) found = k;
    if (found < 0) fail(ErrorKind::NonScalar, "central element does not act as a scalar");
    ch.exps[i] = found;
  }
  return ch;
}

std::vector<long> rep_chi_degrees(const CharacterTable& t, const Subgroup& c,
                                  const CentralCharacter& chi) {
  std::vector<long> out;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (central_character(t, i, c) == chi) out.push_back(t.degrees()[i]);
  return out;
}

long f_value(const CharacterTable& t, const FieldDescriptor& f, const Subgroup& c,
             const CentralCharacter& chi) {
  if (!supports_splitting(t.group(), f))
    fail(ErrorKind::OutOfScope, "field " + f.canonical() + " does not split the group");
  if (chi.is_trivial()) return 1;
  auto d = rep_chi_degrees(t, c, chi);
  if (d.empty()) fail(ErrorKind::EmptyRepClass, "no irreducible row restricts to the character");
  return *std::min_element(d.begin(), d.end());
}

bool gcd_min_condition(const CharacterTable& t, const FieldDescriptor& f, const Subgroup& c) {
  if (!supports_splitting(t.group(), f))
    fail(ErrorKind::OutOfScope, "field " + f.canonical() + " does not split the group");
  std::map<std::vector<long>, std::vector<long>> by_chi;
  for (std::size_t i = 0; i < t.size(); ++i)
    by_chi[central_character(t, i, c).exps].push_back(t.degrees()[i]);
  if (by_chi.size() != c.order())
    fail(ErrorKind::InternalInconsistency, "some central character has no irreducible row");
  for (const auto& [k, d] : by_chi) {
    long gg = 0;
    for (auto x : d) gg = std::gcd(gg, x);
    if (gg != *std::min_element(d.begin(), d.end())) return false;
  }
  return true;
}

namespace {

// Class-count vectors of the subgroups H used for permutation characters
// 1_H^G: cyclic subgroups always, subgroups generated by a class
// representative and one more element when |G| <= 1000.
std::vector<std::vector<long>> perm_subgroups(const CharacterTable& t) {
  const auto& g = t.group();
  const auto& cls_of = g.class_map();
  std::set<std::vector<Elem>> seen;
  std::vector<std::vector<long>> out;
  auto add = [&](const Subgroup& h) {
    if (!seen.insert(h.elements()).second) return;
    std::vector<long> counts(t.class_sizes().size(), 0);
    for (auto x : h.elements()) ++counts[cls_of[x]];
    out.push_back(std::move(counts));
  };
  for (auto x : t.class_reps()) add(g.subgroup_generated({x}));
  if (g.order() <= 1000)
    for (auto x : t.class_reps())
      for (Elem y = 1; y < g.order(); ++y) add(g.subgroup_generated({x, y}));
  // small subgroups first: they give the smallest multiplicities
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::accumulate(a.begin(), a.end(), 0L) < std::accumulate(b.begin(), b.end(), 0L);
  });
  return out;
}

// Multiplicity 1 in some 1_H^G, so the Schur index over Q is 1.
bool schur_index_one(const CharacterTable& t, std::size_t i,
                     const std::vector<std::vector<long>>& subgroups) {
  for (const auto& counts : subgroups) {
    Cyclotomic sum;
    long h = 0;
    for (std::size_t k = 0; k < counts.size(); ++k)
      if (counts[k]) {
        sum += t.value(i, k).scaled(counts[k]);
        h += counts[k];
      }
    if (sum == Cyclotomic(h)) return true;
  }
  return false;
}

}  // namespace

std::vector<std::size_t> realizable_rows(const CharacterTable& t, const FieldDescriptor& f) {
  const auto& g = t.group();
  std::vector<std::size_t> out;
  if (supports_splitting(g, f)) {
    for (std::size_t i = 0; i < t.size(); ++i) out.push_back(i);
    return out;
  }
  std::vector<std::vector<long>> subgroups;
  for (std::size_t i = 0; i < t.size(); ++i) {
    bool values_in_k = true;
    for (std::size_t k = 0; k < t.class_sizes().size() && values_in_k; ++k) {
      const auto& v = t.value(i, k);
      if (f.characteristic == 0) {
        if (f.roots == FieldDescriptor::Roots::Cyclotomic) values_in_k = v.lies_in(f.m);
      } else {
        // char p without splitting: only linear rows, with image of order |G/ker|
        values_in_k = t.degrees()[i] == 1 &&
                      f.has_primitive_root(long(g.order() / kernel_order(t, {i})));
      }
    }
    if (!values_in_k) continue;
    if (f.characteristic != 0) {
      if (f.characteristic > 0 && g.order() % std::size_t(f.characteristic) == 0) continue;
      out.push_back(i);
      continue;
    }
    if (subgroups.empty()) subgroups = perm_subgroups(t);
    bool schur_one = schur_index_one(t, i, subgroups);
    if (schur_one) out.push_back(i);
  }
  return out;
}

std::vector<KIrreducible> k_irreducibles(const CharacterTable& t, const FieldDescriptor& f) {
  const auto& g = t.group();
  std::vector<KIrreducible> out;
  if (supports_splitting(g, f)) {
    for (std::size_t i = 0; i < t.size(); ++i) out.push_back({{i}, t.degrees()[i]});
    return out;
  }
  if (f.characteristic != 0) {
    for (auto i : realizable_rows(t, f)) out.push_back({{i}, t.degrees()[i]});
    return out;
  }
  // Gal(k(ζ_N)/k) is {σ_a : a ≡ 1 mod gcd(m, N)}
  long n = g.exponent(), d = std::gcd(f.m, n);
  std::size_t r = t.class_sizes().size();
  auto subgroups = perm_subgroups(t);
  std::vector<bool> done(t.size(), false);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (done[i]) continue;
    std::set<std::size_t> orbit{i};
    for (long a = 1; a < n; ++a) {
      if (std::gcd(a, n) != 1 || (a - 1) % d != 0) continue;
      for (std::size_t j = 0; j < t.size(); ++j) {
        if (orbit.count(j) || t.degrees()[j] != t.degrees()[i]) continue;
        bool same = true;
        for (std::size_t k = 0; k < r && same; ++k) same = t.value(j, k) == t.value(i, k).galois(a);
        if (same) orbit.insert(j);
      }
    }
    for (auto j : orbit) done[j] = true;
    if (!schur_index_one(t, i, subgroups)) continue;
    out.push_back({std::vector<std::size_t>(orbit.begin(), orbit.end()),
                   long(orbit.size()) * t.degrees()[i]});
  }
  return out;
}

}  // namespace essdim
