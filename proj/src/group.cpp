#include "essdim/group.hpp"

#include <algorithm>
#include <cstring>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

namespace essdim {

namespace {

std::uint64_t fnv(std::uint64_t h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xff;
    h *= 1099511628211ULL;
  }
  return h;
}
constexpr std::uint64_t kFnvBasis = 1469598103934665603ULL;

std::string hex64(std::uint64_t v) {
  static const char* d = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[i] = d[v & 15];
  return s;
}

// Open-addressing index from permutation rows to element indices.
class PermIndex {
 public:
  void init(std::size_t degree, std::size_t expected) {
    degree_ = degree;
    std::size_t cap = 16;
    while (cap < 2 * expected + 2) cap <<= 1;
    slots_.assign(cap, kEmpty);
  }
  std::uint64_t hash(const std::uint32_t* p) const {
    std::uint64_t h = kFnvBasis;
    for (std::size_t i = 0; i < degree_; ++i) h = (h ^ p[i]) * 1099511628211ULL;
    return h;
  }
  // Returns element index or kEmpty.
  Elem find(const std::uint32_t* p, const std::vector<std::uint32_t>& store) const {
    std::size_t mask = slots_.size() - 1;
    for (std::size_t s = hash(p) & mask;; s = (s + 1) & mask) {
      Elem e = slots_[s];
      if (e == kEmpty) return kEmpty;
      if (std::memcmp(&store[std::size_t(e) * degree_], p,
                      degree_ * sizeof(std::uint32_t)) == 0)
        return e;
    }
  }
  void insert(const std::uint32_t* p, Elem e) {
    std::size_t mask = slots_.size() - 1;
    std::size_t s = hash(p) & mask;
    while (slots_[s] != kEmpty) s = (s + 1) & mask;
    slots_[s] = e;
  }
  bool needs_grow(std::size_t count) const { return 2 * count + 2 > slots_.size(); }
  void rebuild(std::size_t count, const std::vector<std::uint32_t>& store) {
    std::size_t cap = slots_.size() * 2;
    while (cap < 2 * count + 2) cap <<= 1;
    slots_.assign(cap, kEmpty);
    for (std::size_t e = 0; e < count; ++e) insert(&store[e * degree_], Elem(e));
  }
  static constexpr Elem kEmpty = 0xffffffffu;

 private:
  std::size_t degree_ = 0;
  std::vector<Elem> slots_;
};

}  // namespace

struct GroupImpl {
  enum class Kind { Table, Perm, Keyed };

  std::size_t n = 1;
  std::vector<Elem> gens;
  std::vector<Elem> inverse;
  std::vector<Elem> parent;         // BFS tree: e = parent[e] * gens[pgen[e]]
  std::vector<std::uint32_t> pgen;
  std::vector<Elem> rmul;           // n * k, right multiplication by generator

  Kind kind = Kind::Table;
  std::vector<std::uint16_t> table;

  std::size_t degree = 0;
  std::vector<std::uint32_t> perms;  // n * degree
  PermIndex perm_index;
  std::vector<Perm> gen_perms;

  std::vector<std::uint64_t> keys;
  std::unordered_map<std::uint64_t, Elem> key_index;
  std::function<std::uint64_t(std::uint64_t, std::uint64_t)> keymul;

  std::shared_ptr<FiniteGroup::ProductInfo> product;

  // write-once caches
  mutable std::once_flag orders_once, classes_once, center_once, feet_once;
  mutable std::vector<int> orders;
  mutable int exponent = 0;
  mutable std::vector<std::vector<Elem>> classes;
  mutable std::vector<std::uint32_t> class_of;
  mutable std::vector<Elem> center_elems;
  mutable std::vector<std::vector<Elem>> feet;

  Elem mult(Elem a, Elem b) const {
    switch (kind) {
      case Kind::Table:
        return table[std::size_t(a) * n + b];
      case Kind::Perm: {
        thread_local std::vector<std::uint32_t> buf;
        buf.resize(degree);
        const std::uint32_t* pa = &perms[std::size_t(a) * degree];
        const std::uint32_t* pb = &perms[std::size_t(b) * degree];
        for (std::size_t i = 0; i < degree; ++i) buf[i] = pb[pa[i]];
        Elem r = perm_index.find(buf.data(), perms);
        if (r == PermIndex::kEmpty)
          fail(ErrorKind::InternalInconsistency, "product left the group");
        return r;
      }
      case Kind::Keyed:
        return key_index.at(keymul(keys[a], keys[b]));
    }
    return 0;
  }

  // Fill inverse table and, for small orders, the Cayley table.
  void finalize(bool keep_keys) {
    std::size_t k = gens.size();
    if (n <= kTableLimit && kind != Kind::Table) {
      std::vector<std::uint16_t> t(n * n);
      for (std::size_t x = 0; x < n; ++x) {
        std::uint16_t* row = &t[x * n];
        row[0] = std::uint16_t(x);
        for (std::size_t y = 1; y < n; ++y)
          row[y] = std::uint16_t(rmul[std::size_t(row[parent[y]]) * k + pgen[y]]);
      }
      table = std::move(t);
      kind = Kind::Table;
      perms.clear();
      perms.shrink_to_fit();
      perm_index = PermIndex();
      if (!keep_keys) {
        keys.clear();
        key_index.clear();
        keymul = nullptr;
      }
    }
    std::vector<Elem> gen_inv(k);
    for (std::size_t i = 0; i < k; ++i) {
      Elem g = gens[i], prev = 0, cur = g;
      while (cur != 0) {
        prev = cur;
        cur = mult(cur, g);
      }
      gen_inv[i] = (g == 0) ? 0 : prev;
    }
    inverse.assign(n, 0);
    for (std::size_t y = 1; y < n; ++y)
      inverse[y] = mult(gen_inv[pgen[y]], inverse[parent[y]]);
  }
};

// Breadth-first closure over 64-bit keys.
struct GroupBuilder {
  static std::shared_ptr<GroupImpl> keyed(
      std::uint64_t identity, const std::vector<std::uint64_t>& gen_keys,
      std::function<std::uint64_t(std::uint64_t, std::uint64_t)> mul,
      std::size_t cap) {
    auto impl = std::make_shared<GroupImpl>();
    impl->kind = GroupImpl::Kind::Keyed;
    impl->keymul = std::move(mul);
    std::size_t k = gen_keys.size();
    impl->keys.push_back(identity);
    impl->key_index[identity] = 0;
    impl->parent.push_back(0);
    impl->pgen.push_back(0);
    for (std::size_t i = 0; i < impl->keys.size(); ++i) {
      for (std::size_t s = 0; s < k; ++s) {
        std::uint64_t y = impl->keymul(impl->keys[i], gen_keys[s]);
        auto it = impl->key_index.find(y);
        Elem idx;
        if (it == impl->key_index.end()) {
          idx = Elem(impl->keys.size());
          if (idx >= cap)
            fail(ErrorKind::ClosureTooLarge,
                 "closure exceeds element cap " + std::to_string(cap));
          impl->keys.push_back(y);
          impl->key_index.emplace(y, idx);
          impl->parent.push_back(Elem(i));
          impl->pgen.push_back(std::uint32_t(s));
        } else {
          idx = it->second;
        }
        impl->rmul.push_back(idx);
      }
    }
    impl->n = impl->keys.size();
    for (auto gk : gen_keys) impl->gens.push_back(impl->key_index.at(gk));
    return impl;
  }

  static FiniteGroup wrap(std::shared_ptr<const GroupImpl> impl) {
    return FiniteGroup(std::move(impl));
  }
  static const GroupImpl& impl(const FiniteGroup& g) { return *g.impl_; }
};

FiniteGroup FiniteGroup::from_permutations(std::size_t degree,
                                           const std::vector<Perm>& gens,
                                           std::size_t cap) {
  if (degree == 0) degree = 1;
  for (const auto& p : gens) {
    if (p.size() != degree)
      fail(ErrorKind::InputError, "generator has wrong degree");
    std::vector<char> seen(degree, 0);
    for (auto v : p) {
      if (v >= degree || seen[v])
        fail(ErrorKind::InputError, "generator is not a bijection");
      seen[v] = 1;
    }
  }
  auto impl = std::make_shared<GroupImpl>();
  impl->kind = GroupImpl::Kind::Perm;
  impl->degree = degree;
  impl->gen_perms = gens;
  std::size_t k = gens.size();
  auto& store = impl->perms;
  auto& index = impl->perm_index;
  index.init(degree, 1024);
  for (std::size_t i = 0; i < degree; ++i) store.push_back(std::uint32_t(i));
  index.insert(&store[0], 0);
  impl->parent.push_back(0);
  impl->pgen.push_back(0);
  std::vector<std::uint32_t> buf(degree);
  std::size_t count = 1;
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t s = 0; s < k; ++s) {
      const std::uint32_t* pa = &store[i * degree];
      for (std::size_t j = 0; j < degree; ++j) buf[j] = gens[s][pa[j]];
      Elem idx = index.find(buf.data(), store);
      if (idx == PermIndex::kEmpty) {
        idx = Elem(count);
        if (count >= cap)
          fail(ErrorKind::ClosureTooLarge,
               "closure exceeds element cap " + std::to_string(cap));
        store.insert(store.end(), buf.begin(), buf.end());
        ++count;
        if (index.needs_grow(count)) index.rebuild(count - 1, store);
        index.insert(&store[idx * degree], idx);
        impl->parent.push_back(Elem(i));
        impl->pgen.push_back(std::uint32_t(s));
      }
      impl->rmul.push_back(idx);
    }
  }
  impl->n = count;
  for (const auto& p : gens) {
    Elem idx = index.find(p.data(), store);
    impl->gens.push_back(idx);
  }
  impl->finalize(false);
  return FiniteGroup(impl);
}

FiniteGroup FiniteGroup::trivial() { return from_permutations(1, {}); }

std::size_t FiniteGroup::order() const { return impl_->n; }
Elem FiniteGroup::mult(Elem a, Elem b) const { return impl_->mult(a, b); }
Elem FiniteGroup::inv(Elem a) const { return impl_->inverse[a]; }
const std::vector<Elem>& FiniteGroup::generators() const { return impl_->gens; }

std::vector<std::uint32_t> FiniteGroup::word(Elem g) const {
  std::vector<std::uint32_t> w;
  for (; g != 0; g = impl_->parent[g]) w.push_back(impl_->pgen[g]);
  std::reverse(w.begin(), w.end());
  return w;
}

Elem FiniteGroup::pow(Elem a, long long k) const {
  if (k < 0) {
    a = inv(a);
    k = -k;
  }
  Elem r = 0;
  while (k > 0) {
    if (k & 1) r = mult(r, a);
    a = mult(a, a);
    k >>= 1;
  }
  return r;
}

bool FiniteGroup::is_abelian() const {
  const auto& g = generators();
  for (auto a : g)
    for (auto b : g)
      if (mult(a, b) != mult(b, a)) return false;
  return true;
}

int FiniteGroup::element_order(Elem g) const {
  std::call_once(impl_->orders_once, [this] {
    std::size_t n = order();
    impl_->orders.assign(n, 0);
    long long e = 1;
    for (std::size_t x = 0; x < n; ++x) {
      int k = 1;
      for (Elem c = Elem(x); c != 0; c = mult(c, Elem(x))) ++k;
      if (x == 0) k = 1;
      impl_->orders[x] = k;
      e = std::lcm(e, (long long)k);
    }
    impl_->exponent = int(e);
  });
  return impl_->orders[g];
}

int FiniteGroup::exponent() const {
  element_order(0);
  return impl_->exponent;
}

const std::vector<std::vector<Elem>>& FiniteGroup::conjugacy_classes() const {
  std::call_once(impl_->classes_once, [this] {
    std::size_t n = order();
    auto& cls = impl_->classes;
    auto& of = impl_->class_of;
    of.assign(n, 0xffffffffu);
    const auto& gs = generators();
    for (std::size_t x = 0; x < n; ++x) {
      if (of[x] != 0xffffffffu) continue;
      std::uint32_t id = std::uint32_t(cls.size());
      std::vector<Elem> orbit{Elem(x)};
      of[x] = id;
      for (std::size_t i = 0; i < orbit.size(); ++i)
        for (auto s : gs) {
          Elem y = conj(orbit[i], s);
          if (of[y] == 0xffffffffu) {
            of[y] = id;
            orbit.push_back(y);
          }
        }
      std::sort(orbit.begin(), orbit.end());
      cls.push_back(std::move(orbit));
    }
  });
  return impl_->classes;
}

const std::vector<std::uint32_t>& FiniteGroup::class_map() const {
  conjugacy_classes();
  return impl_->class_of;
}

Subgroup FiniteGroup::whole() const {
  std::vector<Elem> all(order());
  std::iota(all.begin(), all.end(), Elem(0));
  return Subgroup(*this, std::move(all));
}

Subgroup FiniteGroup::trivial_subgroup() const { return Subgroup(*this, {0}); }

namespace {

// Extend `elems` (closed, marked in `mask`) to the closure under right
// multiplication by `gens`, starting the scan at `from`.
void close_under(const FiniteGroup& g, const std::vector<Elem>& gens,
                 std::vector<Elem>& elems, std::vector<char>& mask) {
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (auto s : gens) {
      Elem y = g.mult(elems[i], s);
      if (!mask[y]) {
        mask[y] = 1;
        elems.push_back(y);
      }
    }
}

}  // namespace

Subgroup FiniteGroup::subgroup_generated(const std::vector<Elem>& s) const {
  std::vector<char> mask(order(), 0);
  std::vector<Elem> elems{0};
  mask[0] = 1;
  std::vector<Elem> gens;
  for (auto x : s)
    if (x != 0) gens.push_back(x);
  close_under(*this, gens, elems, mask);
  std::sort(elems.begin(), elems.end());
  return Subgroup(*this, std::move(elems));
}

Subgroup FiniteGroup::normal_closure(const std::vector<Elem>& s) const {
  std::vector<char> mask(order(), 0);
  std::vector<Elem> elems{0};
  mask[0] = 1;
  std::vector<Elem> t;
  for (auto x : s)
    if (x != 0 && std::find(t.begin(), t.end(), x) == t.end()) t.push_back(x);
  close_under(*this, t, elems, mask);
  const auto& gs = generators();
  for (std::size_t i = 0; i < t.size(); ++i)
    for (auto g : gs) {
      Elem c = conj(t[i], g);
      if (!mask[c]) {
        t.push_back(c);
        close_under(*this, t, elems, mask);
      }
    }
  std::sort(elems.begin(), elems.end());
  return Subgroup(*this, std::move(elems));
}

Subgroup FiniteGroup::center() const {
  std::call_once(impl_->center_once, [this] {
    const auto& gs = generators();
    for (std::size_t x = 0; x < order(); ++x) {
      bool ok = true;
      for (auto s : gs)
        if (mult(Elem(x), s) != mult(s, Elem(x))) {
          ok = false;
          break;
        }
      if (ok) impl_->center_elems.push_back(Elem(x));
    }
  });
  return Subgroup(*this, impl_->center_elems);
}

Subgroup FiniteGroup::commutator_subgroup() const {
  const auto& gs = generators();
  std::vector<Elem> comms;
  for (auto a : gs)
    for (auto b : gs) comms.push_back(commutator(a, b));
  return normal_closure(comms);
}

std::vector<Subgroup> FiniteGroup::feet() const {
  if (order() == 1) fail(ErrorKind::TrivialGroup, "feet of the trivial group");
  std::call_once(impl_->feet_once, [this] {
    const auto& cls = conjugacy_classes();
    // Closures of class representatives, visiting small classes first.
    std::vector<std::size_t> idx(cls.size() - 1);
    std::iota(idx.begin(), idx.end(), std::size_t(1));
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return cls[a].size() < cls[b].size();
    });
    std::vector<std::vector<Elem>> closures;
    std::vector<std::vector<char>> masks;
    for (auto c : idx) {
      Elem x = cls[c].front();
      Subgroup n = normal_closure({x});
      if (std::find(closures.begin(), closures.end(), n.elements()) ==
          closures.end()) {
        std::vector<char> m(order(), 0);
        for (auto e : n.elements()) m[e] = 1;
        closures.push_back(n.elements());
        masks.push_back(std::move(m));
      }
    }
    std::vector<std::vector<Elem>> out;
    for (std::size_t i = 0; i < closures.size(); ++i) {
      bool minimal = true;
      for (std::size_t j = 0; j < closures.size() && minimal; ++j) {
        if (i == j || closures[j].size() >= closures[i].size()) continue;
        if (std::all_of(closures[j].begin(), closures[j].end(),
                        [&](Elem e) { return masks[i][e]; }))
          minimal = false;
      }
      if (minimal) out.push_back(closures[i]);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    impl_->feet = std::move(out);
  });
  std::vector<Subgroup> r;
  for (const auto& f : impl_->feet) r.emplace_back(*this, f);
  return r;
}

Subgroup FiniteGroup::socle() const {
  std::vector<Elem> gens;
  for (const auto& f : feet())
    for (auto g : f.generating_set()) gens.push_back(g);
  return subgroup_generated(gens);
}

Subgroup FiniteGroup::socle_abelian() const {
  std::vector<Elem> gens;
  for (const auto& f : feet())
    if (f.is_abelian())
      for (auto g : f.generating_set()) gens.push_back(g);
  return subgroup_generated(gens);
}

bool FiniteGroup::check_associativity(std::size_t samples) const {
  std::size_t n = order();
  if (n <= 256) {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) {
        Elem ab = mult(a, b);
        for (Elem c = 0; c < n; ++c)
          if (mult(ab, c) != mult(a, mult(b, c))) return false;
      }
    return true;
  }
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<Elem> d(0, Elem(n - 1));
  for (std::size_t i = 0; i < samples; ++i) {
    Elem a = d(rng), b = d(rng), c = d(rng);
    if (mult(mult(a, b), c) != mult(a, mult(b, c))) return false;
  }
  return true;
}

bool FiniteGroup::check_basic_invariants() const {
  std::size_t n = order();
  for (Elem g = 0; g < n; ++g) {
    if (mult(0, g) != g || mult(g, 0) != g) return false;
    if (mult(g, inv(g)) != 0) return false;
  }
  return subgroup_generated(generators()).order() == n;
}

std::string FiniteGroup::invariant_fingerprint() const {
  std::vector<std::pair<std::size_t, int>> stats;
  for (const auto& c : conjugacy_classes())
    stats.emplace_back(c.size(), element_order(c.front()));
  std::sort(stats.begin(), stats.end());
  std::uint64_t h = fnv(kFnvBasis, order());
  for (auto [sz, o] : stats) h = fnv(fnv(h, sz), std::uint64_t(o));
  return "o" + std::to_string(order()) + "-" + hex64(h);
}

std::string FiniteGroup::fingerprint() const {
  std::uint64_t h = kFnvBasis;
  for (auto g : impl_->gens) h = fnv(h, g);
  for (auto r : impl_->rmul) h = fnv(h, r);
  return invariant_fingerprint() + "-" + hex64(h);
}

std::size_t FiniteGroup::perm_degree() const { return impl_->degree; }
const std::vector<Perm>& FiniteGroup::generator_perms() const {
  return impl_->gen_perms;
}

const std::string& FiniteGroup::label() const { return label_; }
FiniteGroup FiniteGroup::with_label(std::string label) const {
  FiniteGroup g = *this;
  g.label_ = std::move(label);
  return g;
}

const FiniteGroup::ProductInfo* FiniteGroup::product_info() const {
  return impl_->product.get();
}

// ---------------------------------------------------------------- Subgroup

Subgroup::Subgroup(FiniteGroup parent, std::vector<Elem> sorted_elems)
    : parent_(std::move(parent)), elems_(std::move(sorted_elems)) {
  mask_.assign(parent_.order(), 0);
  for (auto e : elems_) mask_[e] = 1;
  if (elems_.empty() || elems_.front() != 0)
    fail(ErrorKind::InternalInconsistency, "subgroup without identity");
  if (parent_.order() % elems_.size() != 0)
    fail(ErrorKind::InternalInconsistency, "subgroup order fails Lagrange");
}

bool Subgroup::is_normal() const {
  if (normal_ < 0) {
    normal_ = 1;
    for (auto h : generating_set()) {
      for (auto g : parent_.generators())
        if (!contains(parent_.conj(h, g))) {
          normal_ = 0;
          break;
        }
      if (!normal_) break;
    }
  }
  return normal_ == 1;
}

bool Subgroup::is_abelian() const {
  auto gs = generating_set();
  for (auto a : gs)
    for (auto b : gs)
      if (parent_.mult(a, b) != parent_.mult(b, a)) return false;
  return true;
}

bool Subgroup::is_central() const {
  for (auto h : generating_set())
    for (auto g : parent_.generators())
      if (parent_.mult(h, g) != parent_.mult(g, h)) return false;
  return true;
}

bool Subgroup::is_subgroup_of(const Subgroup& o) const {
  for (auto e : elems_)
    if (!o.contains(e)) return false;
  return true;
}

Subgroup Subgroup::intersect(const Subgroup& o) const {
  std::vector<Elem> r;
  for (auto e : elems_)
    if (o.contains(e)) r.push_back(e);
  return Subgroup(parent_, std::move(r));
}

Subgroup Subgroup::join(const Subgroup& o) const {
  auto gs = generating_set();
  auto og = o.generating_set();
  gs.insert(gs.end(), og.begin(), og.end());
  return parent_.subgroup_generated(gs);
}

bool Subgroup::is_p_group(int p) const {
  std::size_t n = order();
  while (n % p == 0) n /= p;
  return n == 1;
}

int Subgroup::prime_of_order() const {
  std::size_t n = order();
  if (n == 1) return 0;
  for (std::size_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      return n == 1 ? int(p) : 0;
    }
  return int(n);
}

int Subgroup::exponent() const {
  long long e = 1;
  for (auto x : elems_) e = std::lcm(e, (long long)parent_.element_order(x));
  return int(e);
}

std::vector<Elem> Subgroup::generating_set() const {
  std::vector<Elem> gens;
  std::vector<char> mask(parent_.order(), 0);
  std::vector<Elem> cur{0};
  mask[0] = 1;
  for (auto x : elems_) {
    if (mask[x]) continue;
    gens.push_back(x);
    close_under(parent_, gens, cur, mask);
    if (cur.size() == elems_.size()) break;
  }
  return gens;
}

// ---------------------------------------------------------------- quotient

QuotientMap quotient(const FiniteGroup& g, const Subgroup& n) {
  if (!n.parent().same_as(g))
    fail(ErrorKind::PreconditionViolated, "subgroup of a different group");
  if (!n.is_normal()) fail(ErrorKind::NotNormal, "quotient by non-normal subgroup");
  std::size_t order = g.order();
  std::vector<std::uint32_t> coset(order, 0xffffffffu);
  std::vector<Elem> rep;
  for (Elem x = 0; x < order; ++x) {
    if (coset[x] != 0xffffffffu) continue;
    std::uint32_t id = std::uint32_t(rep.size());
    rep.push_back(x);
    for (auto k : n.elements()) coset[g.mult(x, k)] = id;
  }
  std::vector<std::uint64_t> gen_keys;
  for (auto s : g.generators()) gen_keys.push_back(coset[s]);
  auto impl = GroupBuilder::keyed(
      0, gen_keys,
      [g, coset, rep](std::uint64_t a, std::uint64_t b) -> std::uint64_t {
        return coset[g.mult(rep[a], rep[b])];
      },
      kDefaultElementCap);
  impl->finalize(true);
  QuotientMap q;
  q.source = g;
  q.kernel = n;
  q.projection.resize(order);
  for (Elem x = 0; x < order; ++x) q.projection[x] = impl->key_index.at(coset[x]);
  if (impl->kind == GroupImpl::Kind::Table) {
    impl->keys.clear();
    impl->key_index.clear();
    impl->keymul = nullptr;
  }
  q.target = GroupBuilder::wrap(impl);
  q.fiber.assign(q.target.order(), {});
  for (Elem x = 0; x < order; ++x) q.fiber[q.projection[x]].push_back(x);
  return q;
}

// ---------------------------------------------------------- direct product

FiniteGroup direct_product(const std::vector<FiniteGroup>& factors,
                           std::size_t cap) {
  std::vector<std::uint64_t> radix;
  std::uint64_t total = 1;
  for (const auto& f : factors) {
    radix.push_back(total);
    total *= f.order();
    if (total > cap)
      fail(ErrorKind::ClosureTooLarge, "direct product exceeds element cap");
  }
  auto decode = [factors, radix](std::uint64_t key, std::size_t i) {
    return Elem((key / radix[i]) % factors[i].order());
  };
  std::vector<std::uint64_t> gen_keys;
  for (std::size_t i = 0; i < factors.size(); ++i)
    for (auto s : factors[i].generators()) gen_keys.push_back(s * radix[i]);
  auto impl = GroupBuilder::keyed(
      0, gen_keys,
      [factors, radix, decode](std::uint64_t a, std::uint64_t b) {
        std::uint64_t r = 0;
        for (std::size_t i = 0; i < factors.size(); ++i)
          r += factors[i].mult(decode(a, i), decode(b, i)) * radix[i];
        return r;
      },
      cap);
  impl->finalize(true);
  auto info = std::make_shared<FiniteGroup::ProductInfo>();
  info->factors = factors;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    std::vector<Elem> emb(factors[i].order());
    for (Elem x = 0; x < emb.size(); ++x) emb[x] = impl->key_index.at(x * radix[i]);
    std::vector<Elem> proj(impl->n);
    for (std::size_t e = 0; e < impl->n; ++e) proj[e] = decode(impl->keys[e], i);
    info->embeddings.push_back(std::move(emb));
    info->projections.push_back(std::move(proj));
  }
  if (impl->kind == GroupImpl::Kind::Table) {
    impl->keys.clear();
    impl->key_index.clear();
    impl->keymul = nullptr;
  }
  impl->product = info;
  std::string label;
  for (const auto& f : factors) {
    if (f.label().empty()) {
      label.clear();
      break;
    }
    label += (label.empty() ? "" : "x") + f.label();
  }
  return GroupBuilder::wrap(impl).with_label(label);
}

SubgroupGroup as_group(const Subgroup& h) {
  const FiniteGroup& g = h.parent();
  std::vector<std::uint64_t> gen_keys;
  for (auto s : h.generating_set()) gen_keys.push_back(s);
  auto impl = GroupBuilder::keyed(
      0, gen_keys,
      [g](std::uint64_t a, std::uint64_t b) -> std::uint64_t {
        return g.mult(Elem(a), Elem(b));
      },
      kDefaultElementCap);
  impl->finalize(true);
  SubgroupGroup r;
  r.embedding.resize(impl->n);
  for (std::size_t e = 0; e < impl->n; ++e) r.embedding[e] = Elem(impl->keys[e]);
  if (impl->kind == GroupImpl::Kind::Table) {
    impl->keys.clear();
    impl->key_index.clear();
    impl->keymul = nullptr;
  }
  r.group = GroupBuilder::wrap(impl);
  return r;
}

}  // namespace essdim
