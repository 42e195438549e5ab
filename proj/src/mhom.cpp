#include "essdim/mhom.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>

#include "essdim/error.hpp"

namespace essdim {

using nlohmann::json;

// ---------------------------------------------------------------- gradings

std::size_t Grading::dim() const {
  std::size_t d = 0;
  for (const auto& b : blocks) d += b.size();
  return d;
}

std::vector<std::string> Grading::names() const {
  std::vector<std::string> out;
  for (const auto& b : blocks) out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::vector<std::size_t> Grading::block_dims() const {
  std::vector<std::size_t> out;
  for (const auto& b : blocks) out.push_back(b.size());
  return out;
}

std::vector<std::size_t> Grading::block_of() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < blocks.size(); ++i) out.insert(out.end(), blocks[i].size(), i);
  return out;
}

Grading Grading::from_dims(const std::vector<std::size_t>& dims, const std::string& prefix) {
  Grading g;
  std::size_t k = 0;
  for (auto d : dims) {
    std::vector<std::string> b;
    for (std::size_t i = 0; i < d; ++i) b.push_back(prefix + std::to_string(++k));
    g.blocks.push_back(b);
  }
  return g;
}

std::vector<Poly> GradedPolyMap::block(std::size_t j) const {
  auto of = target.block_of();
  std::vector<Poly> out;
  for (std::size_t c = 0; c < numerators.size(); ++c)
    if (of[c] == j) out.push_back(numerators[c]);
  return out;
}

bool GradedPolyMap::block_is_zero(std::size_t j) const {
  auto b = block(j);
  return std::all_of(b.begin(), b.end(), [](const Poly& p) { return p.is_zero(); });
}

json GradedPolyMap::to_json() const {
  auto names = source.names();
  json nums = json::array();
  for (const auto& p : numerators) nums.push_back(p.to_string(names));
  return {{"source", source.blocks},
          {"target", target.blocks},
          {"components", nums},
          {"denominator", denominator.to_string(names)}};
}

long OneParamSubgroup::pair(const Weight& chi) const {
  long s = 0;
  for (std::size_t i = 0; i < chi.size(); ++i) s += chi[i] * weights[i];
  return s;
}

Weight weight_of(const Monomial& m, const Grading& g) {
  Weight w(g.block_count(), 0);
  std::size_t v = 0;
  for (std::size_t i = 0; i < g.blocks.size(); ++i)
    for (std::size_t k = 0; k < g.blocks[i].size(); ++k, ++v) w[i] += m[v];
  return w;
}

std::map<Weight, Poly> weight_decompose(const Poly& p, const Grading& g) {
  std::map<Weight, Poly> out;
  for (const auto& [m, c] : p.terms()) {
    auto w = weight_of(m, g);
    auto it = out.find(w);
    if (it == out.end()) it = out.emplace(w, Poly(p.nvars())).first;
    it->second.add_term(m, c);
  }
  return out;
}

OneParamSubgroup choose_lambda(const std::set<Weight>& s, std::size_t m) {
  for (long b = 1;; ++b) {
    OneParamSubgroup l;
    long x = 1;
    for (std::size_t i = 0; i < m; ++i, x *= b) l.weights.push_back(x);
    std::set<long> seen;
    bool ok = true;
    for (const auto& w : s) ok = ok && seen.insert(l.pair(w)).second;
    if (ok) return l;
  }
}

// ------------------------------------------------------------ homogenize

namespace {

std::string weight_str(const Weight& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s + ")";
}

std::set<Weight> weights_of(const Poly& p, const Grading& g) {
  std::set<Weight> out;
  for (const auto& [m, c] : p.terms()) out.insert(weight_of(m, g));
  return out;
}

void require_nonzero_denominator(const GradedPolyMap& phi) {
  if (phi.denominator.is_zero()) fail(ErrorKind::InputError, "denominator is zero");
  if (phi.numerators.size() != phi.target.dim())
    fail(ErrorKind::ShapeMismatch, std::to_string(phi.numerators.size()) +
                                       " components for a target of dimension " +
                                       std::to_string(phi.target.dim()));
}

}  // namespace

Homogenized homogenize(const GradedPolyMap& phi, std::optional<OneParamSubgroup> lambda) {
  require_nonzero_denominator(phi);
  const auto& g = phi.source;
  std::size_t m = g.block_count(), n = phi.target.block_count();
  std::set<Weight> s = weights_of(phi.denominator, g);
  for (const auto& p : phi.numerators) {
    auto w = weights_of(p, g);
    s.insert(w.begin(), w.end());
  }
  OneParamSubgroup l;
  if (lambda) {
    l = *lambda;
    if (l.weights.size() != m)
      fail(ErrorKind::LambdaNotInjective, "lambda has " + std::to_string(l.weights.size()) +
                                              " entries for " + std::to_string(m) + " blocks");
    std::map<long, Weight> seen;
    for (const auto& w : s) {
      auto [it, fresh] = seen.emplace(l.pair(w), w);
      if (!fresh)
        fail(ErrorKind::LambdaNotInjective, "weights " + weight_str(it->second) + " and " +
                                                weight_str(w) + " pair to " +
                                                std::to_string(it->first));
    }
  } else {
    l = choose_lambda(s, m);
  }
  auto lowest = [&](const std::set<Weight>& ws) {
    return *std::min_element(ws.begin(), ws.end(), [&](const Weight& a, const Weight& b) {
      return l.pair(a) < l.pair(b);
    });
  };
  Homogenized out;
  out.lambda = l;
  out.map.source = phi.source;
  out.map.target = phi.target;
  Weight chi0 = lowest(weights_of(phi.denominator, g));
  out.map.denominator = weight_decompose(phi.denominator, g).at(chi0);
  out.map.numerators.assign(phi.numerators.size(), Poly(g.dim()));
  out.matrix.entries.assign(m, std::vector<long>(n, 0));
  auto of = phi.target.block_of();
  for (std::size_t j = 0; j < n; ++j) {
    std::set<Weight> ws;
    for (std::size_t c = 0; c < of.size(); ++c)
      if (of[c] == j) {
        auto w = weights_of(phi.numerators[c], g);
        ws.insert(w.begin(), w.end());
      }
    if (ws.empty()) {
      out.matrix.zero_columns.insert(j);
      continue;
    }
    Weight chi = lowest(ws);
    for (std::size_t c = 0; c < of.size(); ++c) {
      if (of[c] != j) continue;
      auto parts = weight_decompose(phi.numerators[c], g);
      if (auto it = parts.find(chi); it != parts.end()) out.map.numerators[c] = it->second;
    }
    for (std::size_t i = 0; i < m; ++i) out.matrix.entries[i][j] = chi[i] - chi0[i];
  }
  if (!satisfies_scaling_identity(out.map, out.matrix))
    fail(ErrorKind::InternalInconsistency, "homogenized map fails the scaling identity");
  return out;
}

DegreeMatrix degree_matrix(const GradedPolyMap& phi) {
  require_nonzero_denominator(phi);
  const auto& g = phi.source;
  std::size_t m = g.block_count(), n = phi.target.block_count();
  auto w0 = weights_of(phi.denominator, g);
  if (w0.size() != 1) {
    std::string ws;
    for (const auto& w : w0) ws += " " + weight_str(w);
    fail(ErrorKind::NotMultihomogeneous, "denominator has weights" + ws);
  }
  Weight chi0 = *w0.begin();
  DegreeMatrix dm;
  dm.entries.assign(m, std::vector<long>(n, 0));
  auto of = phi.target.block_of();
  for (std::size_t j = 0; j < n; ++j) {
    std::set<Weight> ws;
    for (std::size_t c = 0; c < of.size(); ++c)
      if (of[c] == j) {
        auto w = weights_of(phi.numerators[c], g);
        ws.insert(w.begin(), w.end());
      }
    if (ws.empty()) {
      dm.zero_columns.insert(j);
      continue;
    }
    if (ws.size() > 1) {
      std::string s;
      for (const auto& w : ws) s += " " + weight_str(w);
      fail(ErrorKind::NotMultihomogeneous,
           "component " + std::to_string(j + 1) + " has weights" + s);
    }
    for (std::size_t i = 0; i < m; ++i) dm.entries[i][j] = (*ws.begin())[i] - chi0[i];
  }
  return dm;
}

bool satisfies_scaling_identity(const GradedPolyMap& phi, const DegreeMatrix& dm) {
  const auto& g = phi.source;
  std::size_t nv = g.dim(), svar = nv;
  auto of_src = g.block_of(), of_tgt = phi.target.block_of();
  Poly s = Poly::variable(nv + 1, svar);
  Poly f = phi.denominator.extended(nv + 1);
  for (std::size_t i = 0; i < g.block_count(); ++i) {
    std::vector<Poly> images;
    for (std::size_t v = 0; v < nv; ++v) {
      Poly x = Poly::variable(nv + 1, v);
      images.push_back(of_src[v] == i ? s * x : x);
    }
    images.push_back(s);
    Poly fs = f.substitute(images);
    for (std::size_t c = 0; c < phi.numerators.size(); ++c) {
      std::size_t j = of_tgt[c];
      long e = dm.zero_columns.count(j) ? 0 : dm.entries[i][j];
      Poly p = phi.numerators[c].extended(nv + 1);
      Poly lhs = p.substitute(images) * f, rhs = p * fs;
      if (e >= 0) rhs = rhs * s.pow(unsigned(e));
      else lhs = lhs * s.pow(unsigned(-e));
      if (!(lhs == rhs)) return false;
    }
  }
  return true;
}

int matrix_rank(const std::vector<std::vector<long>>& m) {
  if (m.empty()) return 0;
  std::vector<std::vector<mpz_class>> a;
  for (const auto& row : m) {
    std::vector<mpz_class> r;
    for (auto x : row) r.emplace_back(x);
    a.push_back(r);
  }
  std::size_t rows = a.size(), cols = a[0].size();
  int rank = 0;
  mpz_class prev = 1;
  for (std::size_t c = 0; c < cols && std::size_t(rank) < rows; ++c) {
    std::size_t piv = std::size_t(rank);
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[std::size_t(rank)]);
    const auto& pr = a[std::size_t(rank)];
    for (std::size_t r = std::size_t(rank) + 1; r < rows; ++r) {
      for (std::size_t k = c + 1; k < cols; ++k)
        a[r][k] = (pr[c] * a[r][k] - a[r][c] * pr[k]) / prev;  // Bareiss: exact
      a[r][c] = 0;
    }
    prev = pr[c];
    ++rank;
  }
  return rank;
}

// ---------------------------------------------------------------- refine

namespace {

// Each new block lies inside one old block and the new blocks cover every
// name exactly once. Returns new index of each old coordinate.
std::vector<std::size_t> check_partition(const Grading& old_g, const Grading& new_g,
                                         const std::string& what) {
  auto old_names = old_g.names();
  auto old_of = old_g.block_of();
  std::map<std::string, std::size_t> old_index;
  for (std::size_t i = 0; i < old_names.size(); ++i) old_index[old_names[i]] = i;
  std::vector<std::size_t> new_index(old_names.size(), std::size_t(-1));
  std::size_t k = 0;
  for (const auto& b : new_g.blocks) {
    if (b.empty()) fail(ErrorKind::InvalidRefinement, what + " refinement has an empty block");
    std::size_t parent = std::size_t(-1);
    for (const auto& name : b) {
      auto it = old_index.find(name);
      if (it == old_index.end())
        fail(ErrorKind::InvalidRefinement, what + " coordinate '" + name + "' is unknown");
      if (new_index[it->second] != std::size_t(-1))
        fail(ErrorKind::InvalidRefinement, what + " coordinate '" + name + "' appears twice");
      if (parent == std::size_t(-1)) parent = old_of[it->second];
      if (old_of[it->second] != parent)
        fail(ErrorKind::InvalidRefinement,
             what + " block containing '" + name + "' straddles two original blocks");
      new_index[it->second] = k++;
    }
  }
  if (k != old_names.size())
    fail(ErrorKind::InvalidRefinement, what + " refinement misses some coordinates");
  return new_index;
}

}  // namespace

Refined refine(const GradedPolyMap& phi, const std::optional<Grading>& source,
               const std::optional<Grading>& target) {
  Refined out;
  auto m0 = degree_matrix(phi);
  out.rank_before = matrix_rank(m0.entries);
  GradedPolyMap next = phi;
  if (source) {
    auto idx = check_partition(phi.source, *source, "source");
    std::size_t nv = idx.size();
    std::vector<Poly> images(nv);
    for (std::size_t v = 0; v < nv; ++v) images[v] = Poly::variable(nv, idx[v]);
    for (auto& p : next.numerators) p = p.substitute(images).extended(nv);
    next.denominator = phi.denominator.substitute(images).extended(nv);
    next.source = *source;
  }
  if (target) {
    auto idx = check_partition(phi.target, *target, "target");
    std::vector<Poly> nums(idx.size());
    for (std::size_t c = 0; c < idx.size(); ++c) nums[idx[c]] = next.numerators[c];
    next.numerators = nums;
    next.target = *target;
  }
  if (source) {
    auto h = homogenize(next);
    out.map = h.map;
    out.matrix = h.matrix;
  } else {
    out.map = next;
    out.matrix = degree_matrix(next);
  }
  out.rank_after = matrix_rank(out.matrix.entries);
  if (source && out.rank_after < out.rank_before)
    fail(ErrorKind::InternalInconsistency, "source refinement lowered the degree-matrix rank");
  if (!source && out.rank_after != out.rank_before)
    fail(ErrorKind::InternalInconsistency, "target refinement changed the degree-matrix rank");
  return out;
}

// ---------------------------------------------------------- equivariance

namespace {

void check_shape(const QMatrix& a, const Grading& g, const std::string& what) {
  std::size_t d = g.dim();
  if (a.size() != d)
    fail(ErrorKind::ShapeMismatch, what + " matrix has " + std::to_string(a.size()) +
                                       " rows, expected " + std::to_string(d));
  auto of = g.block_of();
  for (std::size_t r = 0; r < d; ++r) {
    if (a[r].size() != d) fail(ErrorKind::ShapeMismatch, what + " matrix is not square");
    for (std::size_t c = 0; c < d; ++c)
      if (of[r] != of[c] && a[r][c] != 0)
        fail(ErrorKind::ShapeMismatch, what + " matrix is not block diagonal for the grading");
  }
}

std::vector<Poly> linear_images(const QMatrix& a, std::size_t nv) {
  std::vector<Poly> out;
  for (std::size_t r = 0; r < a.size(); ++r) {
    Poly p(nv);
    for (std::size_t c = 0; c < a[r].size(); ++c)
      if (a[r][c] != 0) p = p + Poly::variable(nv, c).scaled(a[r][c]);
    out.push_back(p.extended(nv));
  }
  return out;
}

int q_rank(QMatrix a) {
  int rank = 0;
  std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && std::size_t(rank) < rows; ++c) {
    std::size_t piv = std::size_t(rank);
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[std::size_t(rank)]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == std::size_t(rank) || a[r][c] == 0) continue;
      mpq_class t = a[r][c] / a[std::size_t(rank)][c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= t * a[std::size_t(rank)][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

bool verify_equivariance(const GradedPolyMap& phi, const std::vector<QMatrix>& gens_v,
                         const std::vector<QMatrix>& gens_w) {
  if (gens_v.size() != gens_w.size())
    fail(ErrorKind::ShapeMismatch, "different numbers of source and target generators");
  require_nonzero_denominator(phi);
  std::size_t nv = phi.source.dim();
  for (std::size_t s = 0; s < gens_v.size(); ++s) {
    check_shape(gens_v[s], phi.source, "source");
    check_shape(gens_w[s], phi.target, "target");
    auto img = linear_images(gens_v[s], nv);
    Poly f = phi.denominator, fg = f.substitute(img);
    for (std::size_t c = 0; c < phi.numerators.size(); ++c) {
      Poly lhs = phi.numerators[c].substitute(img) * f;
      Poly acted(nv);
      for (std::size_t d = 0; d < phi.numerators.size(); ++d)
        if (gens_w[s][c][d] != 0) acted = acted + phi.numerators[d].scaled(gens_w[s][c][d]);
      Poly rhs = acted.extended(nv) * fg;
      if (!(lhs == rhs)) return false;
    }
  }
  return true;
}

int jacobian_rank(const GradedPolyMap& phi, std::uint64_t seed, int tries) {
  require_nonzero_denominator(phi);
  std::size_t nv = phi.source.dim(), nc = phi.numerators.size();
  std::vector<std::vector<Poly>> dpsi(nc);
  for (std::size_t c = 0; c < nc; ++c)
    for (std::size_t v = 0; v < nv; ++v) dpsi[c].push_back(phi.numerators[c].derivative(v));
  std::vector<Poly> df;
  for (std::size_t v = 0; v < nv; ++v) df.push_back(phi.denominator.derivative(v));
  std::mt19937_64 rng(seed);
  int best = 0;
  for (int t = 0, attempts = 0; t < tries && attempts < 20 * tries; ++attempts) {
    std::vector<mpq_class> pt;
    for (std::size_t v = 0; v < nv; ++v) {
      // 64-bit signed coordinates
      mpz_class z;
      std::uint64_t r = rng();
      mpz_import(z.get_mpz_t(), 1, 1, sizeof(r), 0, 0, &r);
      z -= mpz_class(1) << 63;
      pt.emplace_back(z);
    }
    mpq_class fv = phi.denominator.eval(pt);
    if (fv == 0) continue;
    ++t;
    // d(ψ/f) has the rank of ψ' f − ψ f' where f ≠ 0
    QMatrix j(nc, std::vector<mpq_class>(nv));
    for (std::size_t c = 0; c < nc; ++c) {
      mpq_class pv = phi.numerators[c].eval(pt);
      for (std::size_t v = 0; v < nv; ++v) j[c][v] = dpsi[c][v].eval(pt) * fv - pv * df[v].eval(pt);
    }
    best = std::max(best, q_rank(j));
  }
  return best;
}

// ---------------------------------------------------------- matrix groups

MatrixGroup matrix_group(const std::vector<QMatrix>& gens_v, const std::vector<QMatrix>& gens_w,
                         std::size_t cap) {
  if (gens_v.size() != gens_w.size())
    fail(ErrorKind::ShapeMismatch, "different numbers of source and target generators");
  std::size_t dv = gens_v.empty() ? 0 : gens_v[0].size();
  std::size_t dw = gens_w.empty() ? 0 : gens_w[0].size();
  std::size_t d = dv + dw;
  auto combine = [&](std::size_t s) {
    QMatrix m(d, std::vector<mpq_class>(d, 0));
    for (std::size_t r = 0; r < dv; ++r)
      for (std::size_t c = 0; c < dv; ++c) m[r][c] = gens_v[s][r][c];
    for (std::size_t r = 0; r < dw; ++r)
      for (std::size_t c = 0; c < dw; ++c) m[dv + r][dv + c] = gens_w[s][r][c];
    return m;
  };
  auto mul = [&](const QMatrix& a, const QMatrix& b) {
    QMatrix m(d, std::vector<mpq_class>(d, 0));
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t k = 0; k < d; ++k)
        if (a[r][k] != 0)
          for (std::size_t c = 0; c < d; ++c) m[r][c] += a[r][k] * b[k][c];
    return m;
  };
  QMatrix id(d, std::vector<mpq_class>(d, 0));
  for (std::size_t i = 0; i < d; ++i) id[i][i] = 1;
  std::vector<QMatrix> gens;
  for (std::size_t s = 0; s < gens_v.size(); ++s) gens.push_back(combine(s));
  std::vector<QMatrix> elems{id};
  std::map<QMatrix, std::uint32_t> index{{id, 0}};
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : gens) {
      auto x = mul(elems[i], g);
      if (index.count(x)) continue;
      if (elems.size() >= cap)
        fail(ErrorKind::ClosureTooLarge, "matrix group exceeds " + std::to_string(cap) + " elements");
      index[x] = std::uint32_t(elems.size());
      elems.push_back(x);
    }
  // right-regular permutations
  std::vector<Perm> perms;
  for (const auto& g : gens) {
    Perm p(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i) p[i] = index.at(mul(elems[i], g));
    perms.push_back(p);
  }
  MatrixGroup out;
  out.group = perms.empty() ? FiniteGroup::trivial()
                            : FiniteGroup::from_permutations(elems.size(), perms, cap);
  std::set<QMatrix> vparts;
  for (const auto& e : elems) {
    QMatrix v(dv, std::vector<mpq_class>(dv));
    for (std::size_t r = 0; r < dv; ++r)
      for (std::size_t c = 0; c < dv; ++c) v[r][c] = e[r][c];
    vparts.insert(v);
  }
  out.faithful_on_v = vparts.size() == elems.size();
  return out;
}

json RankBoundReport::to_json() const {
  return {{"rank_M", rank_m},
          {"rank_Z", rank_z},
          {"rank_M_ge_rank_Z", rank_inequality_holds},
          {"faithful_on_V", faithful_on_v},
          {"dim_estimate", dim_estimate},
          {"edim_upper_estimate", edim_upper_estimate},
          {"probabilistic", true},
          {"note", note}};
}

RankBoundReport rank_bound_check(const GradedPolyMap& phi, const FieldDescriptor& f,
                                 const std::vector<QMatrix>& gens_v,
                                 const std::vector<QMatrix>& gens_w, std::uint64_t seed) {
  if (!verify_equivariance(phi, gens_v, gens_w))
    fail(ErrorKind::NotEquivariant, "phi(g v) != g phi(v) for some generator");
  auto h = homogenize(phi);
  auto mg = matrix_group(gens_v, gens_w);
  RankBoundReport r;
  r.rank_m = matrix_rank(h.matrix.entries);
  r.rank_z = k_center_rank(mg.group, f);
  r.rank_inequality_holds = r.rank_m >= r.rank_z;
  r.faithful_on_v = mg.faithful_on_v;
  r.dim_estimate = jacobian_rank(h.map, seed);
  r.edim_upper_estimate = long(r.dim_estimate) - (r.rank_m - r.rank_z);
  r.note = "irreducibility of the target blocks is assumed, not checked; dim_estimate is a "
           "Jacobian rank at random points and is kept out of certified bounds";
  if (!r.faithful_on_v) r.note += "; the action on V is not faithful, so the bound does not apply";
  return r;
}

// ------------------------------------------------------------------ files

namespace {

Grading parse_grading(const json& j, const std::string& prefix) {
  if (j.contains("blocks")) {
    Grading g;
    for (const auto& b : j.at("blocks")) g.blocks.push_back(b.get<std::vector<std::string>>());
    return g;
  }
  if (j.contains("block_dims"))
    return Grading::from_dims(j.at("block_dims").get<std::vector<std::size_t>>(), prefix);
  fail(ErrorKind::InputError, "grading needs 'blocks' or 'block_dims'");
}

QMatrix parse_matrix(const json& j) {
  QMatrix m;
  for (const auto& row : j) {
    std::vector<mpq_class> r;
    for (const auto& x : row)
      r.push_back(x.is_string() ? parse_rational(x.get<std::string>()) : mpq_class(x.get<long>()));
    m.push_back(r);
  }
  return m;
}

}  // namespace

CovariantFile parse_covariant(const json& j) {
  CovariantFile out;
  try {
    out.map.source = parse_grading(j.at("source"), "x");
    out.map.target = parse_grading(j.at("target"), "w");
    auto names = out.map.source.names();
    std::set<std::string> uniq(names.begin(), names.end());
    if (uniq.size() != names.size()) fail(ErrorKind::InputError, "repeated source variable name");
    for (const auto& c : j.at("components")) out.map.numerators.push_back(parse_poly(c.get<std::string>(), names));
    out.map.denominator = parse_poly(j.value("denominator", std::string("1")), names);
    if (j.contains("action")) {
      for (const auto& m : j.at("action").at("source")) out.gens_v.push_back(parse_matrix(m));
      for (const auto& m : j.at("action").at("target")) out.gens_w.push_back(parse_matrix(m));
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::InputError, std::string("covariant file: ") + e.what());
  }
  require_nonzero_denominator(out.map);
  return out;
}

CovariantFile load_covariant(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InputError, "cannot open covariant file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::InputError, "covariant file '" + path + "': " + e.what());
  }
  return parse_covariant(j);
}

}  // namespace essdim
