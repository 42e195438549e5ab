#include "essdim/repdim.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>

#include "essdim/abelian.hpp"

namespace essdim {

namespace {

using Bits = std::vector<std::uint64_t>;

Bits kernel_bits(const CharacterTable& t, std::size_t row) {
  std::size_t r = t.class_sizes().size();
  Bits b((r + 63) / 64, 0);
  for (std::size_t k = 0; k < r; ++k)
    if (t.value(row, k) == Cyclotomic(t.degrees()[row])) b[k >> 6] |= 1ULL << (k & 63);
  return b;
}

Bits all_classes(std::size_t r) {
  Bits b((r + 63) / 64, 0);
  for (std::size_t k = 0; k < r; ++k) b[k >> 6] |= 1ULL << (k & 63);
  return b;
}

bool only_identity(const Bits& b) {
  if (b[0] != 1) return false;
  for (std::size_t i = 1; i < b.size(); ++i)
    if (b[i]) return false;
  return true;
}

Bits meet(const Bits& a, const Bits& b) {
  Bits c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] & b[i];
  return c;
}

void require_splitting(const FiniteGroup& g, const FieldDescriptor& f) {
  if (!supports_splitting(g, f))
    fail(ErrorKind::OutOfScope, "field " + f.canonical() +
                                    " is outside the splitting gate for this group (needs char ∤ |G| "
                                    "and ζ_" + std::to_string(g.exponent()) + ")");
}

// Best-first search over states with nonnegative edge costs. States are
// hashed bitsets; ties go to the lexicographically smaller choice list.
template <class State, class Expand, class IsGoal>
std::vector<std::size_t> cheapest_path(const State& start, Expand expand, IsGoal goal,
                                       std::uint64_t budget, long* out_cost) {
  struct Node {
    long cost;
    std::vector<std::size_t> picks;
    State state;
    bool operator>(const Node& o) const {
      if (cost != o.cost) return cost > o.cost;
      return picks > o.picks;
    }
  };
  std::priority_queue<Node, std::vector<Node>, std::greater<Node>> pq;
  std::map<State, long> settled;
  pq.push({0, {}, start});
  std::uint64_t nodes = 0;
  while (!pq.empty()) {
    Node n = pq.top();
    pq.pop();
    if (settled.count(n.state)) continue;
    settled[n.state] = n.cost;
    if (goal(n.state)) {
      *out_cost = n.cost;
      return n.picks;
    }
    expand(n.state, [&](std::size_t choice, long c, State next) {
      if (++nodes > budget) fail(ErrorKind::SearchBudgetExceeded, "search budget exceeded");
      if (settled.count(next)) return;
      auto picks = n.picks;
      picks.push_back(choice);
      std::sort(picks.begin(), picks.end());
      pq.push({n.cost + c, std::move(picks), std::move(next)});
    });
  }
  fail(ErrorKind::InternalInconsistency, "no faithful combination exists");
}

// F_p coordinates of the characters of an elementary abelian p-group C,
// in code order, together with the CentralCharacter encoding.
struct DualTable {
  long p = 1;
  std::size_t rank = 0;
  std::vector<IVec> coords;
  std::vector<CentralCharacter> chars;
};

DualTable dual_table(const Subgroup& c) {
  DualTable d;
  auto st = structure(c);
  d.rank = st.rank();
  for (auto x : st.divisors()) {
    if (!is_prime(x) || (d.p != 1 && x != d.p))
      fail(ErrorKind::PreconditionViolated, "subgroup is not elementary abelian of prime exponent");
    d.p = x;
  }
  long n = 1;
  for (std::size_t i = 0; i < d.rank; ++i) n *= d.p;
  std::vector<IVec> elem_vecs;
  for (auto z : c.elements()) elem_vecs.push_back(st.to_vector(z));
  for (long code = 0; code < n; ++code) {
    IVec v(d.rank);
    long x = code;
    for (std::size_t i = d.rank; i-- > 0;) {
      v[i] = x % d.p;
      x /= d.p;
    }
    CentralCharacter ch = trivial_central_character(c);
    for (std::size_t i = 0; i < elem_vecs.size(); ++i) {
      long s = 0;
      for (std::size_t j = 0; j < d.rank; ++j) s += v[j] * elem_vecs[i][j];
      ch.exps[i] = s % d.p;
    }
    d.coords.push_back(v);
    d.chars.push_back(std::move(ch));
  }
  return d;
}

// Incremental F_p span membership.
struct Span {
  long p;
  std::vector<IVec> rows;  // echelon, leading entry 1
  std::vector<std::size_t> lead;
  IVec reduce(IVec v) const {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      long c = v[lead[i]] % p;
      if (c)
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = ((v[j] - c * rows[i][j]) % p + p) % p;
    }
    return v;
  }
  bool contains(const IVec& v) const {
    auto w = reduce(v);
    return std::all_of(w.begin(), w.end(), [](long x) { return x == 0; });
  }
  void add(const IVec& v) {
    auto w = reduce(v);
    std::size_t l = 0;
    while (l < w.size() && w[l] == 0) ++l;
    if (l == w.size()) return;
    long inv = mod_inverse(w[l], p);
    for (auto& x : w) x = x * inv % p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      long c = rows[i][l];
      if (c)
        for (std::size_t j = 0; j < w.size(); ++j) rows[i][j] = ((rows[i][j] - c * w[j]) % p + p) % p;
    }
    rows.push_back(w);
    lead.push_back(l);
  }
};

}  // namespace

// ---------------------------------------------------------- components

int min_components(const FiniteGroup& g, const FieldDescriptor& f) {
  if (!is_semi_faithful(g, f))
    fail(ErrorKind::NotSemiFaithful, "group has a nontrivial normal " +
                                         std::to_string(f.characteristic) + "-subgroup");
  if (g.is_trivial()) return 1;
  auto a = g.socle_abelian();
  if (f.characteristic > 0 && a.order() % std::size_t(f.characteristic) == 0)
    fail(ErrorKind::InternalInconsistency, "characteristic divides |soc^ab| of a semi-faithful group");
  return std::max(rank_zg(conjugation_module(g, a)), 1);
}

int min_components_oracle(const FiniteGroup& g, const FieldDescriptor& f) {
  require_splitting(g, f);
  if (g.is_trivial()) return 1;
  const auto& t = TableSource::global().table(g);
  std::size_t n = t.size();
  if (n > 40) fail(ErrorKind::SearchBudgetExceeded, "more than 40 irreducible rows");
  std::vector<Bits> ker;
  for (std::size_t i = 0; i < n; ++i) ker.push_back(kernel_bits(t, i));
  std::uint64_t visited = 0;
  for (std::size_t r = 1; r <= n; ++r) {
    std::vector<std::size_t> idx(r);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      if (++visited > kPathCBudget) fail(ErrorKind::SearchBudgetExceeded, "oracle budget exceeded");
      Bits b = all_classes(t.class_sizes().size());
      for (auto i : idx) b = meet(b, ker[i]);
      if (only_identity(b)) return int(r);
      std::size_t k = r;
      while (k-- > 0 && idx[k] == n - r + k) {
      }
      if (k == std::size_t(-1)) break;
      ++idx[k];
      for (std::size_t j = k + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  fail(ErrorKind::InternalInconsistency, "irreducible rows have nontrivial common kernel");
}

// ------------------------------------------------------- minimal basis

std::vector<CentralCharacter> dual_characters(const Subgroup& c) { return dual_table(c).chars; }

MinimalBasis minimal_basis(const Subgroup& c,
                           const std::function<long(const CentralCharacter&)>& f,
                           std::uint64_t seed) {
  auto d = dual_table(c);
  std::vector<long> fv;
  for (const auto& ch : d.chars) fv.push_back(f(ch));
  std::mt19937_64 rng(seed);
  Span span{d.p, {}, {}};
  MinimalBasis out;
  for (std::size_t step = 0; step < d.rank; ++step) {
    long best = -1;
    std::vector<std::size_t> ties;
    for (std::size_t i = 0; i < d.chars.size(); ++i) {
      if (span.contains(d.coords[i])) continue;
      if (best < 0 || fv[i] < best) {
        best = fv[i];
        ties.clear();
      }
      if (fv[i] == best) ties.push_back(i);
    }
    std::size_t pick = seed == 0 ? ties.front() : ties[rng() % ties.size()];
    span.add(d.coords[pick]);
    out.basis.push_back(d.chars[pick]);
    out.f_values.push_back(best);
  }
  // each value is the minimum of f outside the span of the earlier picks
  Span check{d.p, {}, {}};
  for (std::size_t step = 0; step < out.basis.size(); ++step) {
    long m = -1;
    for (std::size_t i = 0; i < d.chars.size(); ++i)
      if (!check.contains(d.coords[i]) && (m < 0 || fv[i] < m)) m = fv[i];
    if (m != out.f_values[step]) fail(ErrorKind::InternalInconsistency, "greedy basis not minimal");
    auto it = std::find(d.chars.begin(), d.chars.end(), out.basis[step]);
    check.add(d.coords[it - d.chars.begin()]);
  }
  return out;
}

// --------------------------------------------------------------- rdim

bool path_a_applies(const FiniteGroup& g) {
  if (g.is_trivial()) return false;
  auto s = g.socle();
  return s.is_central() && s.prime_of_order() > 0;
}

bool path_b_applies(const FiniteGroup& g) {
  if (g.is_trivial()) return false;
  return g.socle().order() == g.socle_abelian().order();
}

std::vector<std::size_t> cheapest_faithful_rows(const CharacterTable& t,
                                                const std::vector<std::size_t>& allowed,
                                                const std::function<long(std::size_t)>& cost,
                                                std::uint64_t budget) {
  std::size_t r = t.class_sizes().size();
  std::vector<Bits> ker(t.size());
  for (auto i : allowed) ker[i] = kernel_bits(t, i);
  long total = 0;
  auto expand = [&](const Bits& s, auto&& emit) {
    for (auto i : allowed) {
      Bits next = meet(s, ker[i]);
      if (next != s) emit(i, cost(i), std::move(next));
    }
  };
  return cheapest_path(all_classes(r), expand, only_identity, budget, &total);
}

namespace {

RdimWitness finish(const CharacterTable& t, std::vector<std::size_t> rows, std::string path) {
  RdimWitness w;
  std::sort(rows.begin(), rows.end());
  w.component_rows = rows;
  for (auto i : rows) {
    w.value += t.degrees()[i];
    w.dimension_vector.push_back(t.degrees()[i]);
  }
  std::sort(w.dimension_vector.begin(), w.dimension_vector.end());
  w.path = std::move(path);
  if (kernel_order(t, rows) != 1)
    fail(ErrorKind::InternalInconsistency, "rdim witness is not faithful");
  return w;
}

RdimWitness path_a(const FiniteGroup& g, const CharacterTable& t) {
  auto c = g.socle();
  std::map<std::vector<long>, std::pair<long, std::size_t>> best;  // exps -> (degree, row)
  for (std::size_t i = 0; i < t.size(); ++i) {
    auto ch = central_character(t, i, c);
    auto it = best.find(ch.exps);
    if (it == best.end() || t.degrees()[i] < it->second.first)
      best[ch.exps] = {t.degrees()[i], i};
  }
  auto f = [&](const CentralCharacter& ch) {
    auto it = best.find(ch.exps);
    if (it == best.end()) fail(ErrorKind::EmptyRepClass, "central character with no row");
    return it->second.first;
  };
  auto mb = minimal_basis(c, f);
  std::vector<std::size_t> rows;
  for (const auto& ch : mb.basis) rows.push_back(best[ch.exps].second);
  auto w = finish(t, rows, "A");
  auto fv = mb.f_values;
  std::sort(fv.begin(), fv.end());
  if (fv != w.dimension_vector)
    fail(ErrorKind::InternalInconsistency, "Path A dimension vector differs from the f-values");
  return w;
}

RdimWitness path_b(const FiniteGroup& g, const CharacterTable& t, std::uint64_t budget) {
  auto a = g.socle_abelian();
  auto m = conjugation_module(g, a);
  auto d = dual_module(m);
  const auto& st = m.base();
  long e = st.exponent(), n = st.order();
  ModuleTables tab(d, kModuleCap);
  // pairing table: pair[x][y] for character code x, element code y
  std::vector<std::vector<long>> pair(n, std::vector<long>(n));
  for (long x = 0; x < n; ++x)
    for (long y = 0; y < n; ++y) pair[x][y] = pairing(st, d.base().decode(x), st.decode(y));
  std::vector<Cyclotomic> roots;
  for (long k = 0; k < e; ++k) roots.push_back(Cyclotomic::root_of_unity(e, k));
  // f(λ) and a row realizing it: constituents of a row's restriction form
  // one G-orbit, found by testing inner products until one is nonzero
  std::vector<long> fval(n, -1);
  std::vector<std::size_t> frow(n, 0);
  for (std::size_t i = 0; i < t.size(); ++i) {
    std::vector<Cyclotomic> vals(n);
    for (long y = 0; y < n; ++y) vals[y] = t.value_at(i, st.from_vector(st.decode(y)));
    for (long x = 0; x < n; ++x) {
      std::vector<Cyclotomic> bucket(e);
      for (long y = 0; y < n; ++y) bucket[pair[x][y]] += vals[y];
      Cyclotomic s;
      for (long k = 0; k < e; ++k)
        if (!bucket[k].is_zero()) s += bucket[k] * roots[(e - k) % e];
      if (s.is_zero()) continue;
      // orbit of x under the dual action
      std::set<long> orbit{x};
      std::vector<long> todo{x};
      while (!todo.empty()) {
        long u = todo.back();
        todo.pop_back();
        for (std::size_t gidx = 0; gidx < d.generator_count(); ++gidx) {
          long v = long(tab.act(gidx, std::uint32_t(u)));
          if (orbit.insert(v).second) todo.push_back(v);
        }
      }
      for (auto o : orbit)
        if (fval[o] < 0 || t.degrees()[i] < fval[o]) {
          fval[o] = t.degrees()[i];
          frow[o] = i;
        }
      break;
    }
  }
  for (long x = 0; x < n; ++x)
    if (fval[x] < 0) fail(ErrorKind::InternalInconsistency, "character of soc^ab with no row");
  auto expand = [&](const ModuleTables::Bits& s, auto&& emit) {
    for (long x = 1; x < n; ++x) {
      if (tab.test(s, std::uint32_t(x))) continue;
      emit(std::size_t(x), fval[x], tab.join(s, tab.cyclic(std::uint32_t(x))));
    }
  };
  long total = 0;
  auto picks = cheapest_path(tab.zero_module(), expand,
                             [&](const ModuleTables::Bits& s) { return tab.is_all(s); }, budget, &total);
  std::vector<std::size_t> rows;
  for (auto x : picks) rows.push_back(frow[x]);
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  auto w = finish(t, rows, "B");
  if (w.value != total) fail(ErrorKind::InternalInconsistency, "Path B witness dimension mismatch");
  return w;
}

RdimWitness path_c(const CharacterTable& t, std::uint64_t budget) {
  std::vector<std::size_t> all(t.size());
  std::iota(all.begin(), all.end(), 0);
  auto rows = cheapest_faithful_rows(t, all, [&](std::size_t i) { return t.degrees()[i]; }, budget);
  return finish(t, rows, "C");
}

}  // namespace

RdimWitness rdim(const FiniteGroup& g, const FieldDescriptor& f, RdimPath path,
                 std::uint64_t budget) {
  require_splitting(g, f);
  if (g.is_trivial()) {
    RdimWitness w;
    w.path = "trivial";
    return w;
  }
  const auto& t = TableSource::global().table(g);
  if (path == RdimPath::Auto) {
    // Path B tabulates the dual module; past the cap only C is feasible
    if (path_a_applies(g)) path = RdimPath::A;
    else if (path_b_applies(g) && long(g.socle_abelian().order()) <= kModuleCap) path = RdimPath::B;
    else path = RdimPath::C;
  }
  switch (path) {
    case RdimPath::A:
      if (!path_a_applies(g))
        fail(ErrorKind::PreconditionViolated, "Path A needs a central p-group socle");
      return path_a(g, t);
    case RdimPath::B:
      if (!path_b_applies(g)) fail(ErrorKind::PreconditionViolated, "Path B needs an abelian socle");
      return path_b(g, t, budget);
    default:
      return path_c(t, budget);
  }
}

// -------------------------------------------------- central extensions

namespace {

// Minimal exponent of a pure (hence direct-summand) subgroup of the p-group
// B that contains S and has the rank of S. Elements are codes of `st`.
long economical_exponent(const AbelianStructure& st, const std::vector<std::uint64_t>& b,
                         const std::set<std::uint64_t>& s, long p) {
  auto closure = [&](const std::vector<std::uint64_t>& gens) {
    std::set<std::uint64_t> out{0};
    std::vector<std::uint64_t> todo{0};
    while (!todo.empty()) {
      auto x = todo.back();
      todo.pop_back();
      for (auto gcode : gens) {
        auto y = st.encode(st.add(st.decode(x), st.decode(gcode)));
        if (out.insert(y).second) todo.push_back(y);
      }
    }
    return out;
  };
  auto rank_of = [&](const std::set<std::uint64_t>& h) {
    long cnt = 0;
    for (auto x : h) cnt += st.element_order(st.decode(x)) <= p;
    int r = 0;
    while (cnt > 1) {
      cnt /= p;
      ++r;
    }
    return r;
  };
  auto exponent_of = [&](const std::set<std::uint64_t>& h) {
    long e = 1;
    for (auto x : h) e = std::max(e, st.element_order(st.decode(x)));
    return e;
  };
  auto mult_set = [&](const std::set<std::uint64_t>& h, long k) {
    std::set<std::uint64_t> out;
    for (auto x : h) out.insert(st.encode(st.scale(st.decode(x), k)));
    return out;
  };
  std::set<std::uint64_t> bset(b.begin(), b.end());
  long exp_b = exponent_of(bset);
  auto pure = [&](const std::set<std::uint64_t>& h) {
    for (long q = p; q < exp_b; q *= p) {
      auto qb = mult_set(bset, q), qh = mult_set(h, q);
      for (auto x : h)
        if (qb.count(x) && !qh.count(x)) return false;
    }
    return true;
  };
  int r = rank_of(s);
  if (r == 0) return 1;
  long best = exp_b;  // B itself is always a direct summand
  std::vector<std::size_t> idx(r, 0);
  std::uint64_t tried = 0;
  // r-tuples with nondecreasing indices
  while (true) {
    if (++tried > 200000) break;  // fall back to B
    std::vector<std::uint64_t> gens;
    for (auto i : idx) gens.push_back(b[i]);
    auto h = closure(gens);
    bool has_s = std::includes(h.begin(), h.end(), s.begin(), s.end());
    if (has_s && rank_of(h) == r) {
      long e = exponent_of(h);
      if (e < best && pure(h)) best = e;
    }
    int k = r - 1;
    while (k >= 0 && idx[k] + 1 == b.size()) --k;
    if (k < 0) break;
    ++idx[k];
    for (int j = k + 1; j < r; ++j) idx[j] = idx[k];
  }
  return best;
}

}  // namespace

CentralExtHypotheses check_central_ext(const FiniteGroup& g, const Subgroup& h,
                                       const FieldDescriptor& f) {
  CentralExtHypotheses out;
  if (!is_semi_faithful(g, f)) {
    out.failed = "G semi-faithful over k";
    return out;
  }
  if (!h.is_central()) {
    out.failed = "H central";
    return out;
  }
  if (h.intersect(g.commutator_subgroup()).order() != 1) {
    out.failed = "H ∩ [G,G] trivial";
    return out;
  }
  auto ab = quotient(g, g.commutator_subgroup());
  auto st = structure(ab.target.whole());
  std::set<std::uint64_t> image;
  for (auto x : h.elements()) image.insert(st.encode(st.to_vector(ab.projection[x])));
  long exp_h = 1;
  std::vector<long> divs;
  for (auto [p, k] : factorize(long(std::max<std::size_t>(h.order(), 1)))) {
    (void)k;
    std::vector<std::uint64_t> bp;
    for (long c = 0; c < st.order(); ++c) {
      long o = st.element_order(st.decode(c));
      long oo = o;
      while (oo % p == 0) oo /= p;
      if (oo == 1) bp.push_back(std::uint64_t(c));
    }
    std::set<std::uint64_t> sp;
    for (auto x : image) {
      long o = st.element_order(st.decode(x)), oo = o;
      while (oo % p == 0) oo /= p;
      if (oo == 1) sp.insert(x);
    }
    long e = economical_exponent(st, bp, sp, p);
    divs.push_back(e);
    exp_h *= e;
  }
  out.h_prime_exponent = exp_h;
  out.h_prime_divisors = divs;
  if (!f.has_primitive_root(exp_h)) {
    out.failed = "ζ_" + std::to_string(exp_h) + " ∈ k (exponent of the economical H')";
    return out;
  }
  out.ok = true;
  return out;
}

CenterQuotientCheck check_center_quotient(const FiniteGroup& g, const Subgroup& h,
                                  const FieldDescriptor& f) {
  CenterQuotientCheck out;
  auto q = quotient(g, h);
  auto zg = k_center(g, f);
  auto zq = k_center(q.target, f);
  std::set<Elem> img;
  for (auto z : zg.elements()) img.insert(q.projection[z]);
  Subgroup image(q.target, std::vector<Elem>(img.begin(), img.end()));
  out.rank_quotient_of_center = int(structure(image).rank());
  out.rank_center_of_quotient = int(structure(zq).rank());
  out.ok = h.is_subgroup_of(zg) && image.elements() == zq.elements() &&
           out.rank_quotient_of_center == out.rank_center_of_quotient;
  return out;
}

namespace {

// Row of t whose values equal vals (per class of t), or npos.
std::size_t find_row(const CharacterTable& t, const std::vector<Cyclotomic>& vals) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    bool same = true;
    for (std::size_t k = 0; k < vals.size() && same; ++k) same = t.value(i, k) == vals[k];
    if (same) return i;
  }
  return std::size_t(-1);
}

// Coordinates of a character of Z in the dual basis of structure(Z).
IVec dual_coords(const AbelianStructure& st, const CentralCharacter& ch) {
  IVec c(st.rank());
  const auto& els = ch.domain.elements();
  for (std::size_t i = 0; i < st.rank(); ++i) {
    Elem b = st.basis()[i];
    long ex = ch.exps[std::lower_bound(els.begin(), els.end(), b) - els.begin()];
    c[i] = ex / (ch.e / st.divisors()[i]);
  }
  return c;
}

std::vector<std::size_t> twisted_witness(const FiniteGroup& g, const Subgroup& h,
                                         const FieldDescriptor& f) {
  if (!h.is_trivial() && g.subgroup_generated({h.generating_set()[0]}).order() != h.order())
    return {};  // cyclic H only
  auto q = quotient(g, h);
  if (!supports_splitting(q.target, f) || !supports_splitting(g, f)) return {};
  const auto& tg = TableSource::global().table(g);
  const auto& tq = TableSource::global().table(q.target);
  auto wq = rdim(q.target, f);
  std::size_t r = tg.class_sizes().size();
  std::vector<std::vector<Cyclotomic>> lifted;
  for (auto j : wq.component_rows) {
    std::vector<Cyclotomic> v(r);
    for (std::size_t k = 0; k < r; ++k) v[k] = tq.value_at(j, q.projection[tg.class_reps()[k]]);
    lifted.push_back(v);
  }
  if (h.is_trivial()) {
    std::vector<std::size_t> rows;
    for (const auto& v : lifted) rows.push_back(find_row(tg, v));
    return rows;
  }
  // a linear character faithful on H
  std::size_t chi = tg.size();
  for (std::size_t i = 0; i < tg.size() && chi == tg.size(); ++i)
    if (tg.degrees()[i] == 1 && kernel(tg, i).intersect(h).order() == 1) chi = i;
  if (chi == tg.size()) fail(ErrorKind::InternalInconsistency, "no linear character faithful on H");
  auto z = k_center(g, f);
  int rk_g = int(structure(z).rank()), rk_q = k_center_rank(q.target, f);
  std::vector<std::size_t> rows;
  if (rk_g == rk_q + 1) {
    for (const auto& v : lifted) rows.push_back(find_row(tg, v));
    rows.push_back(chi);
    return rows;
  }
  auto st = structure(z);
  AbelianStructure dual(st.divisors());
  std::vector<IVec> c;
  for (const auto& v : lifted) {
    std::size_t row = find_row(tg, v);
    c.push_back(dual_coords(st, central_character(tg, row, z)));
  }
  IVec hv = dual_coords(st, central_character(tg, chi, z));
  auto m = eldiv_shift(dual, c, hv);
  for (std::size_t i = 0; i < lifted.size(); ++i) {
    std::vector<Cyclotomic> v = lifted[i];
    for (std::size_t k = 0; k < r; ++k) {
      Cyclotomic p(1);
      for (long s = 0; s < m[i]; ++s) p *= tg.value(chi, k);
      v[k] = v[k] * p;
    }
    std::size_t row = find_row(tg, v);
    if (row == std::size_t(-1)) fail(ErrorKind::InternalInconsistency, "twisted row not irreducible");
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

CentralExtRdim central_ext_rdim(const FiniteGroup& g, const Subgroup& h, const FieldDescriptor& f,
                                CentralExtRdim::Known known, long known_value) {
  CentralExtRdim out;
  out.hypotheses = check_central_ext(g, h, f);
  if (!out.hypotheses.ok) fail(ErrorKind::HypothesisFailed, out.hypotheses.failed);
  out.center_quotient = check_center_quotient(g, h, f);
  if (!out.center_quotient.ok)
    fail(ErrorKind::InternalInconsistency, "Z(G,k)/H and Z(G/H,k) differ under verified hypotheses");
  auto q = quotient(g, h);
  out.rk_z_group = k_center_rank(g, f);
  out.rk_z_quotient = k_center_rank(q.target, f);
  out.exact = path_a_applies(g);
  if (known == CentralExtRdim::Known::Quotient) {
    out.value = known_value + out.rk_z_group - out.rk_z_quotient;
    out.relation = out.exact ? "=" : "<=";
    out.witness_rows = twisted_witness(g, h, f);
    if (!out.witness_rows.empty()) {
      const auto& tg = TableSource::global().table(g);
      if (kernel(tg, out.witness_rows).order() != 1)
        fail(ErrorKind::InternalInconsistency, "twisted witness is not faithful");
    }
  } else {
    out.value = known_value - out.rk_z_group + out.rk_z_quotient;
    out.relation = out.exact ? "=" : ">=";
  }
  return out;
}

}  // namespace essdim
