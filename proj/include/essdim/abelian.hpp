#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "essdim/group.hpp"

namespace essdim {

using IVec = std::vector<long>;
using IMat = std::vector<std::vector<long>>;  // row-major

// Finite abelian group in invariant-factor form ⊕ Z/d_i, d_1 | d_2 | ...
// When built from a subgroup, to_vector / from_vector translate between the
// parent's element indices and coordinate vectors.
class AbelianStructure {
 public:
  AbelianStructure() = default;
  explicit AbelianStructure(std::vector<long> divisors);

  const std::vector<long>& divisors() const { return divisors_; }
  std::size_t rank() const { return divisors_.size(); }
  long order() const;
  long exponent() const { return divisors_.empty() ? 1 : divisors_.back(); }

  // Coordinate codec for the abstract group (mixed radix over divisors).
  std::uint64_t encode(const IVec& v) const;
  IVec decode(std::uint64_t code) const;
  IVec reduce(IVec v) const;
  IVec add(const IVec& a, const IVec& b) const;
  IVec scale(const IVec& a, long k) const;
  long element_order(const IVec& v) const;
  // Order of the subgroup generated by the vectors.
  long subgroup_order(const std::vector<IVec>& gens) const;

  bool has_subgroup() const { return sub_.has_value(); }
  const Subgroup& subgroup() const { return *sub_; }
  // Parent elements mapped to the standard basis vectors.
  const std::vector<Elem>& basis() const { return basis_; }
  IVec to_vector(Elem g) const;
  Elem from_vector(const IVec& v) const;

  friend AbelianStructure structure(const Subgroup& a);

 private:
  std::vector<long> divisors_;
  std::optional<Subgroup> sub_;
  std::vector<Elem> basis_;
  std::map<Elem, std::uint64_t> code_of_;
  std::vector<Elem> elem_of_code_;
};

// Invariant factors and coordinate maps of an abelian subgroup.
AbelianStructure structure(const Subgroup& a);

// Finite abelian group with a left action of a group given on generators:
// action[s] maps coordinate column vectors, v -> action[s] * v (mod d).
class GModule {
 public:
  GModule() = default;
  GModule(AbelianStructure base, std::vector<IMat> action);

  const AbelianStructure& base() const { return base_; }
  const std::vector<IMat>& action() const { return action_; }
  std::size_t generator_count() const { return action_.size(); }

  IVec act(std::size_t s, const IVec& v) const;
  // action matrix of the inverse of generator s
  IMat inverse_action(std::size_t s) const;

 private:
  AbelianStructure base_;
  std::vector<IMat> action_;
};

// The normal abelian subgroup A of G as a ZG-module under g·a = g a g^{-1}.
// Checks the action against conjugation on sampled (g, a) pairs.
GModule conjugation_module(const FiniteGroup& g, const Subgroup& a);

// Dual module A* = Hom(A, roots of unity) with (g·χ)(a) = χ(g^{-1}·a). A
// character is a coordinate vector c; see pairing().
GModule dual_module(const GModule& m);
// χ(a) = ζ_e^{pairing(c, a)} with e the exponent of A.
long pairing(const AbelianStructure& a, const IVec& chi, const IVec& v);

// Default cap on |A| for the exhaustive searches.
inline constexpr long kModuleCap = 512;

// Minimal number of generators as a ZG-module.
int rank_zg(const GModule& m, long cap = kModuleCap,
            std::uint64_t node_budget = 50'000'000);

// Number of r-tuples generating the module.
std::uint64_t generating_tuples_count(const GModule& m, int r,
                                      long cap = kModuleCap);

// Integers m_i with <c_i + m_i h> = A, following the constructive proof:
// split h into prime-power parts, find a coprime relation for each part by
// Smith normal form, solve e_i m_i = 1 - e_0 mod p^l, recombine by CRT.
std::vector<long> eldiv_shift(const AbelianStructure& a,
                                   const std::vector<IVec>& c, const IVec& h);

// Smallest nonnegative x with x = r_i mod m_i (moduli pairwise coprime).
long crt(const std::vector<long>& r, const std::vector<long>& m);
long mod_inverse(long a, long m);
std::vector<std::pair<long, int>> factorize(long n);

// Internal tables shared by the searches; exposed for tests.
class ModuleTables {
 public:
  explicit ModuleTables(const GModule& m, long cap = kModuleCap);
  std::size_t size() const { return n_; }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return add_[a * n_ + b]; }
  std::uint32_t act(std::size_t s, std::uint32_t a) const { return act_[s][a]; }

  using Bits = std::vector<std::uint64_t>;
  Bits empty() const;
  Bits zero_module() const;
  bool test(const Bits& b, std::uint32_t a) const { return (b[a >> 6] >> (a & 63)) & 1; }
  // Submodule generated by one element.
  const Bits& cyclic(std::uint32_t a) const { return cyclic_[a]; }
  Bits join(const Bits& x, const Bits& y) const;
  std::size_t count(const Bits& b) const;
  bool is_all(const Bits& b) const { return count(b) == n_; }

 private:
  std::size_t n_;
  std::vector<std::uint32_t> add_;
  std::vector<std::vector<std::uint32_t>> act_;
  std::vector<Bits> cyclic_;
};

}  // namespace essdim
