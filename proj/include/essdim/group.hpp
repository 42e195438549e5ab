#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "essdim/error.hpp"

namespace essdim {

using Elem = std::uint32_t;
using Perm = std::vector<std::uint32_t>;  // image form: p[i] is the image of i

class Subgroup;
struct GroupImpl;

// Largest order for which a dense Cayley table is built.
inline constexpr std::size_t kTableLimit = 4096;
// Default cap on closure enumeration.
inline constexpr std::size_t kDefaultElementCap = 60000;

// A finite group with elements 0..order-1, identity 0, indexed breadth-first
// over generator words (right multiplication, generators tried in order).
//
// Cheap to copy: a handle onto immutable shared state. Permutations multiply
// left to right, (a*b)(i) = b(a(i)).
class FiniteGroup {
 public:
  FiniteGroup() = default;

  static FiniteGroup from_permutations(std::size_t degree,
                                       const std::vector<Perm>& gens,
                                       std::size_t cap = kDefaultElementCap);
  static FiniteGroup trivial();

  std::size_t order() const;
  Elem mult(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem pow(Elem a, long long k) const;
  Elem conj(Elem a, Elem by) const { return mult(inv(by), mult(a, by)); }
  Elem commutator(Elem a, Elem b) const {
    return mult(mult(inv(a), inv(b)), mult(a, b));
  }
  const std::vector<Elem>& generators() const;
  // Generator positions i1..ik with g = gens[i1] * ... * gens[ik].
  std::vector<std::uint32_t> word(Elem g) const;

  bool is_trivial() const { return order() == 1; }
  bool is_abelian() const;

  int element_order(Elem g) const;
  int exponent() const;

  // Conjugacy classes ordered by least element; each class sorted.
  const std::vector<std::vector<Elem>>& conjugacy_classes() const;
  const std::vector<std::uint32_t>& class_map() const;

  Subgroup whole() const;
  Subgroup trivial_subgroup() const;
  Subgroup subgroup_generated(const std::vector<Elem>& s) const;
  Subgroup normal_closure(const std::vector<Elem>& s) const;
  Subgroup center() const;
  Subgroup commutator_subgroup() const;
  std::vector<Subgroup> feet() const;
  Subgroup socle() const;
  Subgroup socle_abelian() const;

  // Associativity on all triples (order <= 256) or on `samples` random ones.
  bool check_associativity(std::size_t samples = 10000) const;
  // Identity, inverse and generation invariants.
  bool check_basic_invariants() const;

  // Isomorphism-invariant class statistics; used to key facts.
  std::string invariant_fingerprint() const;
  // Invariant fingerprint plus a hash of the generator-word structure; tied
  // to this exact element indexing. Used to key the character-table cache.
  std::string fingerprint() const;

  // Permutation data if the group was built from permutations (else empty).
  std::size_t perm_degree() const;
  const std::vector<Perm>& generator_perms() const;

  // Label carried through for output ("Q8", file name, ...).
  const std::string& label() const;
  FiniteGroup with_label(std::string label) const;

  // Direct-product metadata: recorded factors and their embeddings.
  struct ProductInfo;
  const ProductInfo* product_info() const;

  bool same_as(const FiniteGroup& o) const { return impl_ == o.impl_; }
  // Stable address of the shared state, for memo tables.
  const void* identity() const { return impl_.get(); }
  bool valid() const { return impl_ != nullptr; }

 private:
  explicit FiniteGroup(std::shared_ptr<const GroupImpl> impl)
      : impl_(std::move(impl)) {}
  std::shared_ptr<const GroupImpl> impl_;
  std::string label_;

  friend struct GroupBuilder;
};

// A subset of a parent group closed under multiplication and inversion.
class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(FiniteGroup parent, std::vector<Elem> sorted_elems);

  const FiniteGroup& parent() const { return parent_; }
  const std::vector<Elem>& elements() const { return elems_; }
  std::size_t order() const { return elems_.size(); }
  bool contains(Elem g) const { return mask_[g] != 0; }
  bool is_trivial() const { return elems_.size() == 1; }

  bool is_normal() const;
  bool is_abelian() const;
  bool is_central() const;
  bool is_subgroup_of(const Subgroup& o) const;
  Subgroup intersect(const Subgroup& o) const;
  // Subgroup generated by the union.
  Subgroup join(const Subgroup& o) const;
  // True if every element has order a power of p (p-group, p prime).
  bool is_p_group(int p) const;
  // Prime p if |H| is a prime power p^k, k >= 1; 0 otherwise.
  int prime_of_order() const;
  int exponent() const;
  // Generators: a small generating set picked greedily in index order.
  std::vector<Elem> generating_set() const;

  bool operator==(const Subgroup& o) const {
    return parent_.same_as(o.parent_) && elems_ == o.elems_;
  }

 private:
  FiniteGroup parent_;
  std::vector<Elem> elems_;
  std::vector<char> mask_;
  mutable int normal_ = -1;  // tri-state cache
};

struct FiniteGroup::ProductInfo {
  std::vector<FiniteGroup> factors;
  // embeddings[i][x] = image of factor element x in the product
  std::vector<std::vector<Elem>> embeddings;
  // projections[i][g] = factor-i component of g
  std::vector<std::vector<Elem>> projections;
};

struct QuotientMap {
  FiniteGroup source;
  FiniteGroup target;
  Subgroup kernel;
  std::vector<Elem> projection;             // source -> target
  std::vector<std::vector<Elem>> fiber;     // target -> coset
};

QuotientMap quotient(const FiniteGroup& g, const Subgroup& n);

// Direct product of the factors (in order), with ProductInfo attached.
FiniteGroup direct_product(const std::vector<FiniteGroup>& factors,
                           std::size_t cap = kDefaultElementCap);
inline FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  return direct_product(std::vector<FiniteGroup>{a, b});
}

// Standalone copy of a subgroup; embedding[i] is the parent index of i.
struct SubgroupGroup {
  FiniteGroup group;
  std::vector<Elem> embedding;
};
SubgroupGroup as_group(const Subgroup& h);

}  // namespace essdim
