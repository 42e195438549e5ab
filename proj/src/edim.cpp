#include "essdim/edim.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <regex>
#include <set>

#include "essdim/abelian.hpp"
#include "essdim/chartab.hpp"
#include "essdim/io.hpp"
#include "essdim/repdim.hpp"

namespace essdim {

using nlohmann::json;

Bounds shifted(const Bounds& b, long delta) {
  Bounds out{std::max(0L, b.lower + delta), std::nullopt};
  if (b.upper) out.upper = *b.upper + delta;
  return out;
}

Bounds central_transfer(const Bounds& from, int rk_from, int rk_to) {
  return shifted(from, long(rk_to) - long(rk_from));
}

// ------------------------------------------------------------------ facts

namespace {

json bounds_json(const Bounds& b) {
  return {{"lower", b.lower}, {"upper", b.upper ? json(*b.upper) : json(nullptr)}};
}

std::string show(const Bounds& b) {
  return "[" + std::to_string(b.lower) + ", " + (b.upper ? std::to_string(*b.upper) : "?") + "]";
}

std::string resolve_group_key(const std::string& g, const std::string& base_dir) {
  static const std::regex fp("o\\d+-[0-9a-f]{16}");
  if (std::regex_match(g, fp)) return g;
  namespace fs = std::filesystem;
  for (const auto& p : {fs::path(base_dir) / g, fs::path(g)})
    if (fs::is_regular_file(p)) return load_group_file(p.string()).invariant_fingerprint();
  return named_group(g).invariant_fingerprint();
}

}  // namespace

void FactStore::add(const Fact& f) {
  if (f.upper && *f.upper < f.lower)
    fail(ErrorKind::FactConflict, "fact from '" + f.source + "' has lower > upper");
  auto key = std::make_pair(f.group, f.field);
  auto it = facts_.find(key);
  if (it == facts_.end()) {
    facts_[key] = f;
    return;
  }
  Fact& old = it->second;
  Fact merged = old;
  merged.lower = std::max(old.lower, f.lower);
  if (f.upper && (!old.upper || *f.upper < *old.upper)) merged.upper = f.upper;
  if (merged.upper && *merged.upper < merged.lower)
    fail(ErrorKind::FactConflict, "facts for " + f.group + " over " + f.field + " conflict: " +
                                      show({old.lower, old.upper}) + " from '" + old.source +
                                      "' and " + show({f.lower, f.upper}) + " from '" + f.source +
                                      "'");
  if (old.source != f.source) merged.source = old.source + "; " + f.source;
  old = merged;
}

std::optional<Fact> FactStore::lookup(const std::string& fingerprint,
                                      const FieldDescriptor& f) const {
  std::optional<Fact> out;
  auto take = [&](const Fact& x) {
    if (!out) {
      out = x;
      return;
    }
    out->lower = std::max(out->lower, x.lower);
    if (x.upper && (!out->upper || *x.upper < *out->upper)) out->upper = x.upper;
    out->source += "; " + x.source;
  };
  if (auto it = facts_.find({fingerprint, f.canonical()}); it != facts_.end()) take(it->second);
  // "char=p" with no zeta clause covers every field of characteristic p
  if (f.characteristic > 0) {
    std::string wild = "char=" + std::to_string(f.characteristic);
    if (wild != f.canonical())
      if (auto it = facts_.find({fingerprint, wild}); it != facts_.end()) take(it->second);
  }
  return out;
}

FactStore FactStore::from_json(const json& j, const std::string& base_dir) {
  if (!j.is_array()) fail(ErrorKind::InputError, "facts file must hold a JSON array");
  FactStore s;
  for (const auto& e : j) {
    if (!e.is_object() || !e.contains("group") || !e.contains("field") || !e.contains("lower"))
      fail(ErrorKind::InputError, "fact entries need group, field and lower");
    Fact f;
    f.group = resolve_group_key(e.at("group").get<std::string>(), base_dir);
    f.field = parse_field(e.at("field").get<std::string>()).canonical();
    f.lower = e.at("lower").get<long>();
    if (e.contains("upper") && !e.at("upper").is_null()) f.upper = e.at("upper").get<long>();
    f.source = e.value("source", std::string("unspecified"));
    s.add(f);
  }
  return s;
}

FactStore FactStore::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InputError, "cannot open facts file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::InputError, "facts file '" + path + "': " + e.what());
  }
  return from_json(j, std::filesystem::path(path).parent_path().string());
}

void FactStore::merge(const FactStore& other) {
  for (const auto& [k, f] : other.facts_) add(f);
}

json FactStore::to_json() const {
  json out = json::array();
  for (const auto& [k, f] : facts_)
    out.push_back({{"group", f.group},
                   {"field", f.field},
                   {"lower", f.lower},
                   {"upper", f.upper ? json(*f.upper) : json(nullptr)},
                   {"source", f.source}});
  return out;
}

// ----------------------------------------------------------------- engine

json EdimResult::to_json() const {
  json tr = json::array();
  for (const auto& t : trace) {
    json e = {{"rule", t.rule}, {"citation", t.citation}, {"inputs", t.inputs}};
    e.update(bounds_json(t.produced));
    e["tightened"] = t.tightened;
    tr.push_back(e);
  }
  json out = {{"group", group_label},
              {"fingerprint", fingerprint},
              {"field", field.canonical()},
              {"exact", exact()},
              {"trace", tr}};
  out.update(bounds_json(bounds));
  out["conjectural"] = conjectural_value
                           ? json{{"value", *conjectural_value}, {"conjectural", true}}
                           : json(nullptr);
  return out;
}

namespace {

const std::map<std::string, std::string> kCitation = {
    {"R1", "trivial group: edim = 0"},
    {"R2", "nontrivial group: edim >= 1"},
    {"R3", "abelian A with a primitive exp(A)-th root of unity in k: edim A = rk A"},
    {"R4", "degree-matrix rank bound for the identity covariant on a faithful V = V_1+...+V_n "
           "with V_i irreducible: edim <= dim V - n + rk Z(G,k)"},
    {"R5", "socle a central p-group, zeta_p in k, gcd = min on every rep^(chi): edim = rdim"},
    {"R6", "central extension theorem: edim G - rk Z(G,k) = edim G/H - rk Z(G/H,k)"},
    {"R7", "abelian direct factor A with zeta_exp(A) in k: "
           "edim G x A - rk Z(G x A,k) = edim G - rk Z(G,k)"},
    {"R8", "subgroup bound under complete reducibility: "
           "edim G - rk Z(G,k) >= edim H - rk Z(H,k)"},
    {"R9", "direct product bound: edim G1 x G2 - rk Z(G1 x G2,k) <= "
           "sum of (edim G_i - rk Z(G_i,k))"},
    {"R10", "central elementary abelian p-subgroup A in char p: "
            "edim G/A <= edim G <= edim G/A + 1"},
    {"R11", "injected literature fact"},
    {"covdim", "covdim = edim iff Z(G,k) is nontrivial, else edim + 1"},
};

std::vector<Subgroup> all_subgroups(const FiniteGroup& g, std::size_t cap) {
  // joins of cyclic subgroups until closed
  std::set<std::vector<Elem>> seen;
  std::vector<Subgroup> out;
  for (Elem x = 0; x < g.order(); ++x) {
    auto h = g.subgroup_generated({x});
    if (seen.insert(h.elements()).second) out.push_back(h);
  }
  std::size_t cyclic = out.size();
  for (std::size_t i = 0; i < out.size() && out.size() < cap; ++i)
    for (std::size_t j = 1; j < cyclic && out.size() < cap; ++j) {
      auto h = out[i].join(out[j]);
      if (seen.insert(h.elements()).second) out.push_back(h);
    }
  return out;
}

class Engine {
 public:
  Engine(const FactStore& facts, const EdimOptions& opt) : facts_(facts), opt_(opt) {}

  EdimResult run(const FiniteGroup& g, const FieldDescriptor& f, int depth) {
    std::string key = g.fingerprint() + "|" + f.canonical() + "|" + std::to_string(depth);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    auto r = compute(g, f, depth);
    memo_[key] = r;
    return r;
  }

 private:
  const FactStore& facts_;
  EdimOptions opt_;
  std::map<std::string, EdimResult> memo_;

  EdimResult compute(const FiniteGroup& g, const FieldDescriptor& f, int depth) {
    EdimResult res;
    res.field = f;
    res.group_label = g.label();
    res.fingerprint = g.invariant_fingerprint();
    Bounds& b = res.bounds;
    bool any_fact = false;

    auto propose = [&](const std::string& rule, json inputs, Bounds p) {
      TraceEntry e{rule, kCitation.at(rule), std::move(inputs), p, false};
      if (p.lower > b.lower) {
        b.lower = p.lower;
        e.tightened = true;
      }
      if (p.upper && (!b.upper || *p.upper < *b.upper)) {
        b.upper = p.upper;
        e.tightened = true;
      }
      res.trace.push_back(std::move(e));
      if (b.upper && b.lower > *b.upper) {
        std::string msg = "bounds for " + g.label() + " over " + f.canonical() + " became " +
                          show(b) + " after " + rule;
        fail(any_fact ? ErrorKind::FactConflict : ErrorKind::InternalInconsistency, msg);
      }
    };

    if (g.is_trivial()) {
      propose("R1", json::object(), {0, 0});
      return res;
    }
    propose("R2", {{"order", g.order()}}, {1, std::nullopt});

    if (auto fact = facts_.lookup(res.fingerprint, f)) {
      any_fact = true;
      propose("R11", {{"source", fact->source}, {"fact_field", fact->field}},
              {fact->lower, fact->upper});
    }

    int rkz = k_center_rank(g, f);

    if (g.is_abelian()) {
      auto st = structure(g.whole());
      if (f.has_primitive_root(st.exponent()))
        propose("R3", {{"invariants", st.divisors()}, {"exponent", st.exponent()}},
                {long(st.rank()), long(st.rank())});
    }
    if (b.exact()) return res;

    bool semi = is_semi_faithful(g, f);
    const CharacterTable* t = nullptr;
    if (semi) {
      try {
        t = &TableSource::global().table(g);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::BackendLimit) throw;
      }
    }

    if (t) rule_r4(*t, f, rkz, propose);
    if (t && !b.exact()) rule_r5(g, *t, f, propose);

    if (depth < opt_.max_depth && semi) {
      if (!b.exact()) rule_r7(g, f, depth, rkz, propose);
      if (!b.exact()) rule_r6(g, f, depth, rkz, b, propose);
      if (!b.exact()) rule_r9(g, f, depth, rkz, propose);
      if (depth == 0 && !b.exact()) rule_r8(g, f, rkz, propose);
    }
    if (depth < opt_.max_depth && f.characteristic > 0 && !b.exact()) rule_r10(g, f, depth, propose);
    return res;
  }

  template <class Propose>
  void rule_r4(const CharacterTable& t, const FieldDescriptor& f, int rkz, Propose& propose) {
    auto kirr = k_irreducibles(t, f);
    std::vector<std::size_t> allowed;
    std::map<std::size_t, long> dim;
    for (const auto& w : kirr) {
      allowed.push_back(w.rows.front());
      dim[w.rows.front()] = w.dim;
    }
    if (allowed.empty() || kernel_order(t, allowed) != 1) return;
    auto rows = cheapest_faithful_rows(t, allowed, [&](std::size_t i) { return dim[i] - 1; });
    long dimv = 0;
    std::vector<long> dims;
    for (auto i : rows) {
      dimv += dim[i];
      dims.push_back(dim[i]);
    }
    long n = long(rows.size());
    propose("R4", {{"witness_rows", rows}, {"dims", dims}, {"n", n}, {"rk_Z", rkz}},
            {0, dimv - n + rkz});
    // the same bound read as rdim_k G (components counted with rank 0)
    auto rd = cheapest_faithful_rows(t, allowed, [&](std::size_t i) { return dim[i]; });
    long rdim_k = 0;
    for (auto i : rd) rdim_k += dim[i];
    propose("R4", {{"rdim_k", rdim_k}, {"witness_rows", rd}}, {0, rdim_k});
  }

  template <class Propose>
  void rule_r5(const FiniteGroup& g, const CharacterTable& t, const FieldDescriptor& f,
               Propose& propose) {
    if (!path_a_applies(g) || !supports_splitting(g, f)) return;
    auto c = g.socle();
    long p = c.prime_of_order();
    if (!f.has_primitive_root(p) || !gcd_min_condition(t, f, c)) return;
    auto w = rdim(g, f);
    propose("R5", {{"p", p}, {"rdim", w.value}, {"dimension_vector", w.dimension_vector}},
            {w.value, w.value});
  }

  template <class Propose>
  void rule_r7(const FiniteGroup& g, const FieldDescriptor& f, int depth, int rkz,
               Propose& propose) {
    const auto* pi = g.product_info();
    if (!pi || pi->factors.size() < 2) return;
    for (std::size_t i = 0; i < pi->factors.size(); ++i) {
      const auto& a = pi->factors[i];
      if (!a.is_abelian() || !f.has_primitive_root(a.exponent())) continue;
      std::vector<FiniteGroup> rest;
      for (std::size_t j = 0; j < pi->factors.size(); ++j)
        if (j != i) rest.push_back(pi->factors[j]);
      FiniteGroup g0 = rest.size() == 1 ? rest[0] : direct_product(rest);
      if (!is_semi_faithful(g0, f)) continue;
      auto r0 = run(g0, f, depth + 1);
      int rk0 = k_center_rank(g0, f);
      propose("R7",
              {{"abelian_factor", a.label()}, {"other", g0.label()}, {"other_bounds", bounds_json(r0.bounds)},
               {"rk_Z_other", rk0}, {"rk_Z", rkz}},
              central_transfer(r0.bounds, rk0, rkz));
      return;
    }
  }

  template <class Propose>
  void rule_r6(const FiniteGroup& g, const FieldDescriptor& f, int depth, int rkz,
               const Bounds& cur, Propose& propose) {
    auto z = g.center();
    if (z.is_trivial() || z.order() > 256) return;
    auto dg = g.commutator_subgroup();
    // subgroups of the center meeting [G,G] trivially, largest first
    std::set<std::vector<Elem>> seen;
    std::vector<Subgroup> hs;
    for (auto x : z.elements()) {
      auto h = g.subgroup_generated({x});
      if (h.is_trivial() || h.intersect(dg).order() != 1) continue;
      if (seen.insert(h.elements()).second) hs.push_back(h);
    }
    for (std::size_t i = 0; i < hs.size(); ++i)
      for (std::size_t j = i + 1; j < hs.size(); ++j) {
        auto h = hs[i].join(hs[j]);
        if (h.intersect(dg).order() == 1 && seen.insert(h.elements()).second) hs.push_back(h);
      }
    std::stable_sort(hs.begin(), hs.end(),
                     [](const Subgroup& a, const Subgroup& b) { return a.order() > b.order(); });
    for (const auto& h : hs) {
      auto hyp = check_central_ext(g, h, f);
      if (!hyp.ok) continue;
      auto q = quotient(g, h);
      auto qg = q.target.with_label(g.label() + "/H" + std::to_string(h.order()));
      auto rq = run(qg, f, depth + 1);
      int rkq = k_center_rank(qg, f);
      propose("R6",
              {{"H_order", h.order()}, {"H_generators", h.generating_set()},
               {"H_prime_exponent", hyp.h_prime_exponent}, {"quotient_bounds", bounds_json(rq.bounds)},
               {"rk_Z_quotient", rkq}, {"rk_Z", rkz}},
              central_transfer(rq.bounds, rkq, rkz));
      if (cur.exact()) return;
    }
  }

  template <class Propose>
  void rule_r9(const FiniteGroup& g, const FieldDescriptor& f, int depth, int rkz,
               Propose& propose) {
    const auto* pi = g.product_info();
    if (!pi || pi->factors.size() < 2) return;
    long sum = 0;
    json parts = json::array();
    for (const auto& fac : pi->factors) {
      if (!is_semi_faithful(fac, f)) return;
      auto r = run(fac, f, depth + 1);
      if (!r.upper()) return;
      int rk = k_center_rank(fac, f);
      sum += *r.upper() - rk;
      parts.push_back({{"factor", fac.label()}, {"upper", *r.upper()}, {"rk_Z", rk}});
    }
    propose("R9", {{"factors", parts}, {"rk_Z", rkz}}, {0, sum + rkz});
  }

  template <class Propose>
  void rule_r8(const FiniteGroup& g, const FieldDescriptor& f, int rkz, Propose& propose) {
    if (f.characteristic > 0 && g.order() % std::size_t(f.characteristic) == 0) return;
    std::vector<Subgroup> hs;
    std::set<std::vector<Elem>> seen;
    for (const auto& gens : opt_.subgroups) {
      auto h = g.subgroup_generated(gens);
      if (seen.insert(h.elements()).second) hs.push_back(h);
    }
    if (g.order() <= opt_.subgroup_order_cap) {
      auto auto_hs = opt_.full_subgroups ? all_subgroups(g, 2000) : std::vector<Subgroup>{};
      if (!opt_.full_subgroups)
        for (Elem x = 1; x < g.order(); ++x) auto_hs.push_back(g.subgroup_generated({x}));
      for (auto& h : auto_hs)
        if (seen.insert(h.elements()).second) hs.push_back(h);
    }
    // best bound only, to keep the trace readable
    long best = -1;
    json best_inputs;
    for (const auto& h : hs) {
      if (h.is_trivial() || h.order() == g.order()) continue;
      auto sg = as_group(h);
      auto hg = sg.group.with_label("subgroup of order " + std::to_string(h.order()));
      auto r = run(hg, f, opt_.max_depth);  // local rules only
      int rkh = k_center_rank(hg, f);
      long bound = r.lower() - rkh + rkz;
      if (bound > best) {
        best = bound;
        best_inputs = {{"H_order", h.order()}, {"H_generators", h.generating_set()},
                       {"H_lower", r.lower()}, {"rk_Z_H", rkh}, {"rk_Z", rkz},
                       {"subgroups_tried", hs.size()}};
      }
    }
    if (best >= 0) propose("R8", best_inputs, {best, std::nullopt});
  }

  template <class Propose>
  void rule_r10(const FiniteGroup& g, const FieldDescriptor& f, int depth, Propose& propose) {
    long p = f.characteristic;
    std::vector<Elem> a;
    auto zc = g.center();
    for (auto z : zc.elements())
      if (z == 0 || g.element_order(z) == p) a.push_back(z);
    if (a.size() <= 1) return;
    auto asub = g.subgroup_generated(a);
    auto q = quotient(g, asub);
    auto qg = q.target.with_label(g.label() + "/A" + std::to_string(asub.order()));
    auto rq = run(qg, f, depth + 1);
    Bounds p_b{rq.lower(), std::nullopt};
    if (rq.upper()) p_b.upper = *rq.upper() + 1;
    propose("R10",
            {{"A_order", asub.order()}, {"quotient_order", qg.order()},
             {"quotient_bounds", bounds_json(rq.bounds)}},
            p_b);
  }
};

}  // namespace

EdimResult edim(const FiniteGroup& g, const FieldDescriptor& f, const FactStore& facts,
                const EdimOptions& opt) {
  Engine e(facts, opt);
  auto r = e.run(g, f, 0);
  try {
    r.conjectural_value = conjectural_edim(g, f).value;
  } catch (const Error&) {
  }
  return r;
}

EdimResult covdim(const FiniteGroup& g, const FieldDescriptor& f, const FactStore& facts,
                  const EdimOptions& opt) {
  if (g.is_trivial()) {
    EdimResult r = edim(g, f, facts, opt);
    r.conjectural_value.reset();
    return r;
  }
  if (!is_semi_faithful(g, f))
    fail(ErrorKind::NotSemiFaithful, "covdim needs a semi-faithful group; G has a nontrivial normal " +
                                         std::to_string(f.characteristic) + "-subgroup");
  auto r = edim(g, f, facts, opt);
  r.conjectural_value.reset();
  auto z = k_center(g, f);
  long shift = z.is_trivial() ? 1 : 0;
  r.bounds = shifted(r.bounds, shift);
  TraceEntry e{"covdim", kCitation.at("covdim"), {{"Z_order", z.order()}, {"shift", shift}},
               r.bounds, shift != 0};
  r.trace.push_back(e);
  return r;
}

ConjecturalEdim conjectural_edim(const FiniteGroup& g, const FieldDescriptor& f) {
  if (g.is_trivial()) fail(ErrorKind::HypothesisFailed, "trivial group has no socle");
  auto c = g.socle();
  if (!c.is_central()) fail(ErrorKind::HypothesisFailed, "socle is not central");
  if (!supports_splitting(g, f)) fail(ErrorKind::HypothesisFailed, "field outside the splitting gate");
  ConjecturalEdim out;
  std::map<long, std::vector<Elem>> parts;
  for (auto z : c.elements()) {
    long o = g.element_order(z);
    if (is_prime(o)) parts[o].push_back(z);
  }
  for (const auto& [p, els] : parts)
    if (!f.has_primitive_root(p))
      fail(ErrorKind::HypothesisFailed, "zeta_" + std::to_string(p) + " not in k");
  if (g.is_abelian()) {
    // all rows linear: gcd = min holds and every f-value is 1
    for (const auto& [p, els] : parts) {
      int r = int(structure(g.subgroup_generated(els)).rank());
      out.dim_v_p[p] = r;
      out.rank_c_p[p] = r;
      out.dim_v += r;
    }
    out.rank_c = int(structure(c).rank());
    out.value = out.rank_c;
    return out;
  }
  const auto& t = TableSource::global().table(g);
  // gcd = min on rep^(χ) for every χ ∈ C* of prime order
  std::map<std::vector<long>, std::vector<long>> by_chi;
  long e = 1;
  for (std::size_t i = 0; i < t.size(); ++i) {
    auto ch = central_character(t, i, c);
    e = ch.e;
    by_chi[ch.exps].push_back(t.degrees()[i]);
  }
  for (const auto& [exps, degs] : by_chi) {
    long gg = e;
    for (auto x : exps) gg = std::gcd(gg, x);
    long ord = e / gg;
    if (ord == 1 || !is_prime(ord)) continue;
    long d = 0;
    for (auto x : degs) d = std::gcd(d, x);
    if (d != *std::min_element(degs.begin(), degs.end()))
      fail(ErrorKind::HypothesisFailed, "gcd != min on rep^(chi) for a character of order " +
                                            std::to_string(ord));
  }
  out.rank_c = int(structure(c).rank());
  for (const auto& [p, els] : parts) {
    auto cp = g.subgroup_generated(els);
    auto fp = [&](const CentralCharacter& ch) { return f_value(t, f, cp, ch); };
    auto mb = minimal_basis(cp, fp);
    long d = std::accumulate(mb.f_values.begin(), mb.f_values.end(), 0L);
    out.dim_v_p[p] = d;
    out.rank_c_p[p] = int(mb.basis.size());
    out.dim_v += d;
  }
  long sum_rk = 0;
  for (const auto& [p, r] : out.rank_c_p) sum_rk += r;
  out.value = out.dim_v - sum_rk + out.rank_c;
  return out;
}

}  // namespace essdim
