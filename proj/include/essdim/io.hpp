#pragma once

#include <string>

#include "essdim/group.hpp"
#include "json.hpp"

namespace essdim {

// Named small groups: C<n>, D<n> (dihedral of order 2n), Q<4m> (dicyclic,
// Q8 quaternion), S<n>, A<n>, Heis<p> (extraspecial p^{1+2}, exponent p),
// SL2_<p>, V4, E<p>^<r> (elementary abelian), "1" (trivial).
FiniteGroup named_group(const std::string& name);

// Group spec JSON:
//   {"kind":"permutation","degree":n,"generators":[[cycle,...],...]}
//   {"kind":"named","name":"Q8"}
//   {"kind":"named"|"product","product":[spec,spec,...]}
// A spec may also be a string, read as a named group.
FiniteGroup group_from_json(const nlohmann::json& spec);
FiniteGroup load_group_file(const std::string& path);

// Cycle notation (0-based) to image form.
Perm perm_from_cycles(std::size_t degree,
                      const std::vector<std::vector<std::uint32_t>>& cycles);

// An element given as {"word": [generator positions]} or, for permutation
// groups, in cycle notation.
Elem element_from_json(const FiniteGroup& g, const nlohmann::json& e);

}  // namespace essdim
