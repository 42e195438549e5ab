#pragma once

#include <set>
#include <string>

#include "essdim/group.hpp"

namespace essdim {

// A field k described only by its characteristic and the roots of unity it
// contains. No arithmetic in k is ever needed.
struct FieldDescriptor {
  enum class Roots { All, Cyclotomic, Explicit };

  int characteristic = 0;
  Roots roots = Roots::Cyclotomic;
  long m = 2;                // Cyclotomic: ζ_n ∈ k iff n | m (m even)
  std::set<long> explicit_;  // Explicit: closed under divisors and lcm
  // "char=p" with no zeta clause; facts use it to mean "any field of char p"
  bool roots_unspecified = false;
  std::string text;          // the input string, echoed in results

  bool has_primitive_root(long n) const;
  // Canonical rendering ("Q(zeta_12)", "algclosed:0", "char=2;zeta=1,3").
  std::string canonical() const;
  bool operator==(const FieldDescriptor& o) const { return canonical() == o.canonical(); }
};

// "Q" | "Q(zeta_m)" | "algclosed:c" | "char=p;zeta=n1,n2,..."
FieldDescriptor parse_field(const std::string& s);

// Z(G,k): central elements g with ζ_{ord g} ∈ k.
Subgroup k_center(const FiniteGroup& g, const FieldDescriptor& f);
// Rank of Z(G,k) as an abelian group.
int k_center_rank(const FiniteGroup& g, const FieldDescriptor& f);

// Char 0, or no foot of G is a p-group.
bool is_semi_faithful(const FiniteGroup& g, const FieldDescriptor& f);

// char ∤ |G| and ζ_{exp G} ∈ k: irreducible k-degrees equal complex degrees.
bool supports_splitting(const FiniteGroup& g, const FieldDescriptor& f);

bool is_prime(long n);

}  // namespace essdim
