#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "essdim/chartab.hpp"
#include "essdim/field.hpp"
#include "essdim/group.hpp"

namespace essdim {

inline constexpr std::uint64_t kPathCBudget = 10'000'000;

struct RdimWitness {
  long value = 0;
  std::vector<std::size_t> component_rows;  // character-table rows
  std::vector<long> dimension_vector;       // sorted degrees
  std::string path;                         // "A", "B", "C" or "trivial"
};

struct MinimalBasis {
  std::vector<CentralCharacter> basis;
  std::vector<long> f_values;  // nondecreasing
};

// max(rank_ZG(soc^ab G), 1). Errors: NotSemiFaithful.
int min_components(const FiniteGroup& g, const FieldDescriptor& f);
// Least number of irreducible rows with trivial common kernel, by search.
int min_components_oracle(const FiniteGroup& g, const FieldDescriptor& f);

// All characters of an elementary abelian central p-subgroup C.
std::vector<CentralCharacter> dual_characters(const Subgroup& c);

// Greedy minimal basis of C* for f. seed 0 breaks ties lexicographically on
// the character encoding; other seeds shuffle ties (used to test that the
// f-vector does not depend on the choice).
MinimalBasis minimal_basis(const Subgroup& c,
                           const std::function<long(const CentralCharacter&)>& f,
                           std::uint64_t seed = 0);

enum class RdimPath { Auto, A, B, C };

// Minimal faithful dimension over a splitting field, with witness rows.
// Errors: OutOfScope (no splitting), SearchBudgetExceeded (Path C),
// PreconditionViolated when a forced path does not apply.
RdimWitness rdim(const FiniteGroup& g, const FieldDescriptor& f, RdimPath path = RdimPath::Auto,
                 std::uint64_t budget = kPathCBudget);

// Which paths apply to G: A needs a central p-group socle, B an abelian
// socle; C always applies.
bool path_a_applies(const FiniteGroup& g);
bool path_b_applies(const FiniteGroup& g);

// Minimum of Σ cost(row) over row sets with trivial common kernel, by
// branch and bound; rows restricted to `allowed`. Returns the rows.
std::vector<std::size_t> cheapest_faithful_rows(const CharacterTable& t,
                                                const std::vector<std::size_t>& allowed,
                                                const std::function<long(std::size_t)>& cost,
                                                std::uint64_t budget = kPathCBudget);

// ------------------------------------------------------ central extensions

// Hypotheses shared by the central extension results for (G, H, k): G
// semi-faithful, H central, H ∩ [G,G] = 1, and ζ_{exp H'} ∈ k for the most
// economical direct factor H' of G/[G,G] containing the image of H.
struct CentralExtHypotheses {
  bool ok = false;
  std::string failed;        // name of the failed clause
  long h_prime_exponent = 0; // exp H' (0 if not reached)
  std::vector<long> h_prime_divisors;
};
CentralExtHypotheses check_central_ext(const FiniteGroup& g, const Subgroup& h,
                                       const FieldDescriptor& f);

// Z(G,k)/H ≅ Z(G/H,k) under the projection; the orders and ranks agree.
struct CenterQuotientCheck {
  bool ok = false;
  int rank_quotient_of_center = 0;  // rk Z(G,k)/H
  int rank_center_of_quotient = 0;  // rk Z(G/H,k)
};
CenterQuotientCheck check_center_quotient(const FiniteGroup& g, const Subgroup& h,
                                  const FieldDescriptor& f);

struct CentralExtRdim {
  enum class Known { Group, Quotient };
  bool exact = false;      // equality case (socle a central p-group)
  long value = 0;          // the unknown side, or its bound
  std::string relation;    // "=", "<=" (bound on rdim G) or ">=" (on rdim G/H)
  int rk_z_group = 0, rk_z_quotient = 0;
  CentralExtHypotheses hypotheses;
  CenterQuotientCheck center_quotient;
  // Faithful rows of G built from a minimal witness of G/H by twisting with
  // powers of a linear character (cyclic H only; empty otherwise).
  std::vector<std::size_t> witness_rows;
};

// Errors: HypothesisFailed naming the clause.
CentralExtRdim central_ext_rdim(const FiniteGroup& g, const Subgroup& h, const FieldDescriptor& f,
                                CentralExtRdim::Known known, long known_value);

}  // namespace essdim
