#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "essdim/field.hpp"
#include "essdim/group.hpp"
#include "essdim/poly.hpp"
#include "json.hpp"

namespace essdim {

using Weight = std::vector<long>;  // total degree per source block

// Coordinates split into named blocks; variables are numbered block by block.
struct Grading {
  std::vector<std::vector<std::string>> blocks;

  std::size_t block_count() const { return blocks.size(); }
  std::size_t dim() const;
  std::vector<std::string> names() const;
  std::vector<std::size_t> block_dims() const;
  // block index of each coordinate
  std::vector<std::size_t> block_of() const;
  static Grading from_dims(const std::vector<std::size_t>& dims, const std::string& prefix);
};

// φ = (1/f)·ψ with ψ_j the numerators, one per target coordinate (ordered
// like target.names()).
struct GradedPolyMap {
  Grading source;
  Grading target;
  std::vector<Poly> numerators;
  Poly denominator;

  // Numerators of target block j.
  std::vector<Poly> block(std::size_t j) const;
  bool block_is_zero(std::size_t j) const;
  bool operator==(const GradedPolyMap& o) const {
    return numerators == o.numerators && denominator == o.denominator;
  }
  nlohmann::json to_json() const;
};

struct DegreeMatrix {
  std::vector<std::vector<long>> entries;  // m × n: source block i, target block j
  std::set<std::size_t> zero_columns;
  bool operator==(const DegreeMatrix&) const = default;
};

struct OneParamSubgroup {
  Weight weights;
  long pair(const Weight& chi) const;
};

Weight weight_of(const Monomial& m, const Grading& g);

// Components of p grouped by weight; they sum to p.
std::map<Weight, Poly> weight_decompose(const Poly& p, const Grading& g);

// First λ = (1, b, b², …) (b = 1, 2, …) injective on S.
OneParamSubgroup choose_lambda(const std::set<Weight>& s, std::size_t m);

struct Homogenized {
  GradedPolyMap map;
  DegreeMatrix matrix;
  OneParamSubgroup lambda;
};

// H_λ(φ): the λ-lowest weight part of each block over that of f, with its
// degree matrix. The scaling identity is verified symbolically before
// returning. Errors: LambdaNotInjective.
Homogenized homogenize(const GradedPolyMap& phi, std::optional<OneParamSubgroup> lambda = {});

// Errors: NotMultihomogeneous naming the component and its weights.
DegreeMatrix degree_matrix(const GradedPolyMap& phi);

// ψ_j(s·v_i) f(v) = s^{m_ij} ψ_j(v) f(s·v_i) for every block pair, as a
// polynomial identity in the source variables and s.
bool satisfies_scaling_identity(const GradedPolyMap& phi, const DegreeMatrix& m);

// Exact rank over Q (fraction-free elimination).
int matrix_rank(const std::vector<std::vector<long>>& m);

struct Refined {
  GradedPolyMap map;
  DegreeMatrix matrix;
  int rank_before = 0;
  int rank_after = 0;
};
// New blocks must partition the old ones (source by variable name, target
// by coordinate name). Source refinement re-homogenizes. Errors:
// InvalidRefinement, NotMultihomogeneous (φ must be multihomogeneous).
Refined refine(const GradedPolyMap& phi, const std::optional<Grading>& source,
               const std::optional<Grading>& target);

using QMatrix = std::vector<std::vector<mpq_class>>;

// φ(g·v) = g·φ(v) for every generator, symbolically. Matrices act on column
// vectors and must be block diagonal for the gradings. Errors: ShapeMismatch.
bool verify_equivariance(const GradedPolyMap& phi, const std::vector<QMatrix>& gens_v,
                         const std::vector<QMatrix>& gens_w);

// Jacobian rank of φ at a random rational point (max over `tries` points).
// Probabilistic; a lower bound on the generic rank that is exact with high
// probability.
int jacobian_rank(const GradedPolyMap& phi, std::uint64_t seed, int tries = 3);

// The group generated by block-diagonal pairs (g_V, g_W), as a permutation
// group on its own elements, plus whether it acts faithfully on V.
struct MatrixGroup {
  FiniteGroup group;
  bool faithful_on_v = false;
};
MatrixGroup matrix_group(const std::vector<QMatrix>& gens_v, const std::vector<QMatrix>& gens_w,
                         std::size_t cap = 5000);

struct RankBoundReport {
  int rank_m = 0;
  int rank_z = 0;
  bool rank_inequality_holds = false;
  bool faithful_on_v = false;
  int dim_estimate = 0;          // probabilistic
  long edim_upper_estimate = 0;  // dim_estimate − (rank_m − rank_z); probabilistic
  std::string note;
  nlohmann::json to_json() const;
};
// Errors: NotEquivariant.
RankBoundReport rank_bound_check(const GradedPolyMap& phi, const FieldDescriptor& f,
                                 const std::vector<QMatrix>& gens_v,
                                 const std::vector<QMatrix>& gens_w, std::uint64_t seed = 1);

// Covariant file: {"source": {"blocks": [["x1","x2"],["y"]]},
//                  "target": {"blocks": [["u"],["v"]]},
//                  "components": ["x1 + x1*y", ...], "denominator": "1",
//                  "action": {"source": [M, ...], "target": [M, ...]}}
// Matrices are lists of rows of rational strings or integers.
struct CovariantFile {
  GradedPolyMap map;
  std::vector<QMatrix> gens_v, gens_w;
};
CovariantFile parse_covariant(const nlohmann::json& j);
CovariantFile load_covariant(const std::string& path);

}  // namespace essdim
