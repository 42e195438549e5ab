#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "essdim/cyclotomic.hpp"
#include "essdim/field.hpp"
#include "essdim/group.hpp"

namespace essdim {

// Complex character table. Columns follow the group's class order, rows
// are sorted by degree (trivial row first, then by values).
class CharacterTable {
 public:
  const FiniteGroup& group() const { return g_; }
  std::size_t size() const { return degrees_.size(); }
  const std::vector<long>& degrees() const { return degrees_; }
  const std::vector<std::size_t>& class_sizes() const { return sizes_; }
  const std::vector<Elem>& class_reps() const { return reps_; }
  const Cyclotomic& value(std::size_t row, std::size_t cls) const { return vals_[row][cls]; }
  const Cyclotomic& value_at(std::size_t row, Elem g) const {
    return vals_[row][g_.class_map()[g]];
  }
  // Conductor of the row's values over Q (lcm of the value conductors).
  long row_conductor(std::size_t row) const;

  // Throws InternalInconsistency unless both orthogonality relations hold.
  void verify() const;
  // Row orthogonality and degree checks only (cache hits).
  void verify_rows() const;

  // Where a table came from: "computed" or "cache".
  const std::string& origin() const { return origin_; }

  friend CharacterTable character_table(const FiniteGroup& g);
  friend std::optional<CharacterTable> load_cached_table(const FiniteGroup& g,
                                                         const std::string& dir);
  friend void store_cached_table(const CharacterTable& t, const std::string& dir);

 private:
  FiniteGroup g_;
  std::vector<std::size_t> sizes_;
  std::vector<Elem> reps_;
  std::vector<long> degrees_;
  std::vector<std::vector<Cyclotomic>> vals_;
  std::string origin_ = "computed";
  void sort_rows();
};

// Dixon–Schneider. Errors: BackendLimit past 120 classes or order 50000.
CharacterTable character_table(const FiniteGroup& g);

// Disk cache keyed by the group's strong fingerprint. A missing or invalid
// file yields nullopt; stores replace the whole file atomically.
std::optional<CharacterTable> load_cached_table(const FiniteGroup& g, const std::string& dir);
void store_cached_table(const CharacterTable& t, const std::string& dir);

// Table lookup through an optional cache directory (empty: no cache).
CharacterTable character_table(const FiniteGroup& g, const std::string& cache_dir);

// Process-wide cache settings used by the higher layers.
struct TableSource {
  std::string cache_dir;  // empty: disk cache off
  static TableSource& global();
  // Memoized per group instance.
  const CharacterTable& table(const FiniteGroup& g);

 private:
  std::map<const void*, std::pair<FiniteGroup, std::shared_ptr<CharacterTable>>> memo_;
};

Subgroup kernel(const CharacterTable& t, std::size_t row);
// Intersection of the kernels of the rows.
Subgroup kernel(const CharacterTable& t, const std::vector<std::size_t>& rows);
// |kernel| from class sizes alone; cheap on large groups.
std::size_t kernel_order(const CharacterTable& t, const std::vector<std::size_t>& rows);

// Restriction of a row to a central subgroup C: z -> ζ_E^{exp[z]} with
// E = exp(C), indexed like C.elements().
struct CentralCharacter {
  Subgroup domain;
  long e = 1;
  std::vector<long> exps;
  bool is_trivial() const;
  bool operator==(const CentralCharacter& o) const { return e == o.e && exps == o.exps; }
  bool operator<(const CentralCharacter& o) const { return exps < o.exps; }
};

CentralCharacter central_character(const CharacterTable& t, std::size_t row, const Subgroup& c);
CentralCharacter trivial_central_character(const Subgroup& c);

std::vector<long> rep_chi_degrees(const CharacterTable& t, const Subgroup& c,
                                  const CentralCharacter& chi);
long f_value(const CharacterTable& t, const FieldDescriptor& f, const Subgroup& c,
             const CentralCharacter& chi);
bool gcd_min_condition(const CharacterTable& t, const FieldDescriptor& f, const Subgroup& c);

// Rows realizable over a characteristic-0 field k with dimension equal to
// the degree: values lie in k and some permutation character on the cosets
// of a small subgroup contains the row exactly once (so the Schur index is
// 1). Under the splitting gate every row qualifies.
std::vector<std::size_t> realizable_rows(const CharacterTable& t, const FieldDescriptor& f);

// An irreducible k-representation certified to exist: the Galois orbit of a
// row over k with Schur index 1. Its kernel is the kernel of any orbit row.
struct KIrreducible {
  std::vector<std::size_t> rows;  // the orbit, ascending
  long dim = 0;                   // |orbit| * degree
};
// Certified k-irreducibles. Char 0 orbits with an uncertified Schur index
// are left out; in char p without splitting only the linear rows of
// realizable_rows appear.
std::vector<KIrreducible> k_irreducibles(const CharacterTable& t, const FieldDescriptor& f);

}  // namespace essdim
