#include "essdim/io.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <regex>

namespace essdim {

using nlohmann::json;

Perm perm_from_cycles(std::size_t degree,
                      const std::vector<std::vector<std::uint32_t>>& cycles) {
  Perm p(degree);
  for (std::size_t i = 0; i < degree; ++i) p[i] = std::uint32_t(i);
  std::vector<char> used(degree, 0);
  for (const auto& c : cycles) {
    for (auto v : c) {
      if (v >= degree) fail(ErrorKind::InputError, "cycle point out of range");
      if (used[v]) fail(ErrorKind::InputError, "point repeated across cycles");
      used[v] = 1;
    }
    for (std::size_t i = 0; i < c.size(); ++i) p[c[i]] = c[(i + 1) % c.size()];
  }
  return p;
}

namespace {

// Right regular representation of a group given by a multiplication rule.
FiniteGroup regular(std::size_t n, const std::function<std::size_t(std::size_t, std::size_t)>& mul,
                    const std::vector<std::size_t>& gens) {
  std::vector<Perm> ps;
  for (auto g : gens) {
    Perm p(n);
    for (std::size_t x = 0; x < n; ++x) p[x] = std::uint32_t(mul(x, g));
    ps.push_back(std::move(p));
  }
  return FiniteGroup::from_permutations(n, ps);
}

Perm cycle_range(std::size_t degree, std::size_t from, std::size_t to) {
  std::vector<std::uint32_t> c;
  for (std::size_t i = from; i < to; ++i) c.push_back(std::uint32_t(i));
  return perm_from_cycles(degree, {c});
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FiniteGroup cyclic(std::size_t n) {
  if (n == 1) return FiniteGroup::trivial();
  return FiniteGroup::from_permutations(n, {cycle_range(n, 0, n)});
}

}  // namespace

FiniteGroup named_group(const std::string& name) {
  std::smatch m;
  auto num = [&](int i) { return std::stol(m[i].str()); };
  FiniteGroup g;
  if (auto x = name.find('x'); x != std::string::npos) {
    // "Q8xC3" and longer chains
    std::vector<FiniteGroup> fs;
    std::size_t start = 0;
    for (;;) {
      std::size_t stop = name.find('x', start);
      fs.push_back(named_group(name.substr(start, stop - start)));
      if (stop == std::string::npos) break;
      start = stop + 1;
    }
    return direct_product(fs).with_label(name);
  }
  if (name == "1" || name == "trivial") {
    g = FiniteGroup::trivial();
  } else if (std::regex_match(name, m, std::regex("C(\\d+)"))) {
    long n = num(1);
    if (n < 1) fail(ErrorKind::InputError, "bad cyclic order");
    g = cyclic(std::size_t(n));
  } else if (std::regex_match(name, m, std::regex("D(\\d+)"))) {
    // dihedral of order 2n acting on an n-gon
    long n = num(1);
    if (n < 2) fail(ErrorKind::InputError, "bad dihedral parameter");
    if (n == 2) {
      g = direct_product(cyclic(2), cyclic(2));
    } else {
      std::vector<std::vector<std::uint32_t>> refl;
      for (long i = 1; i < n - i; ++i)
        refl.push_back({std::uint32_t(i), std::uint32_t(n - i)});
      g = FiniteGroup::from_permutations(
          n, {cycle_range(n, 0, n), perm_from_cycles(n, refl)});
    }
  } else if (std::regex_match(name, m, std::regex("Q(\\d+)"))) {
    // dicyclic: <a, x | a^{2k}, x^2 = a^k, x a x^-1 = a^-1>, elements a^i x^j
    long n = num(1);
    if (n < 8 || n % 4 != 0) fail(ErrorKind::InputError, "Q<n> needs 4 | n, n >= 8");
    std::size_t k2 = std::size_t(n / 2), k = k2 / 2;
    auto mul = [k2, k](std::size_t u, std::size_t v) {
      std::size_t i = u % k2, j = u / k2, i2 = v % k2, j2 = v / k2;
      // a^i x^j a^i2 x^j2 with x a = a^-1 x
      std::size_t e = j ? (i + k2 - i2) % k2 : (i + i2) % k2;
      std::size_t jj = j + j2;
      if (jj == 2) {
        e = (e + k) % k2;
        jj = 0;
      }
      return e + jj * k2;
    };
    g = regular(std::size_t(n), mul, {1, k2});
  } else if (std::regex_match(name, m, std::regex("S(\\d+)"))) {
    long n = num(1);
    if (n <= 1) {
      g = FiniteGroup::trivial();
    } else {
      g = FiniteGroup::from_permutations(
          n, {perm_from_cycles(n, {{0, 1}}), cycle_range(n, 0, n)});
    }
  } else if (std::regex_match(name, m, std::regex("A(\\d+)"))) {
    long n = num(1);
    if (n <= 2) {
      g = FiniteGroup::trivial();
    } else if (n == 3) {
      g = FiniteGroup::from_permutations(3, {cycle_range(3, 0, 3)});
    } else {
      Perm c = (n % 2 == 0) ? cycle_range(n, 1, n) : cycle_range(n, 0, n);
      g = FiniteGroup::from_permutations(n, {perm_from_cycles(n, {{0, 1, 2}}), c});
    }
  } else if (std::regex_match(name, m, std::regex("Heis(\\d+)"))) {
    // (u,v) -> (u+1, v) and (u,v) -> (u, v+u) on F_p^2
    long p = num(1);
    if (!is_prime(p) || p == 2) fail(ErrorKind::InputError, "Heis<p> needs an odd prime");
    std::size_t deg = std::size_t(p * p);
    Perm a(deg), b(deg);
    for (long u = 0; u < p; ++u)
      for (long v = 0; v < p; ++v) {
        a[u * p + v] = std::uint32_t(((u + 1) % p) * p + v);
        b[u * p + v] = std::uint32_t(u * p + (v + u) % p);
      }
    g = FiniteGroup::from_permutations(deg, {a, b});
  } else if (std::regex_match(name, m, std::regex("SL2_(\\d+)"))) {
    // action on nonzero vectors of F_p^2
    long p = num(1);
    if (!is_prime(p)) fail(ErrorKind::InputError, "SL2_<p> needs a prime");
    auto idx = [p](long x, long y) { return std::uint32_t(x * p + y - 1); };
    std::size_t deg = std::size_t(p * p - 1);
    Perm s(deg), t(deg);
    for (long x = 0; x < p; ++x)
      for (long y = 0; y < p; ++y) {
        if (x == 0 && y == 0) continue;
        t[idx(x, y)] = idx((x + y) % p, y);           // [[1,1],[0,1]]
        s[idx(x, y)] = idx((p - y) % p, x);           // [[0,-1],[1,0]]
      }
    g = FiniteGroup::from_permutations(deg, {t, s});
  } else if (name == "V4") {
    g = direct_product(cyclic(2), cyclic(2));
  } else if (std::regex_match(name, m, std::regex("E(\\d+)\\^(\\d+)"))) {
    long p = num(1), r = num(2);
    if (r < 1 || r > 12) fail(ErrorKind::InputError, "bad elementary abelian rank");
    std::vector<FiniteGroup> fs(std::size_t(r), cyclic(std::size_t(p)));
    g = r == 1 ? fs[0] : direct_product(fs);
  } else {
    fail(ErrorKind::InputError, "unknown group name '" + name + "'");
  }
  return g.with_label(name);
}

FiniteGroup group_from_json(const json& spec) {
  if (spec.is_string()) return named_group(spec.get<std::string>());
  if (!spec.is_object()) fail(ErrorKind::InputError, "group spec must be an object");
  if (spec.contains("product")) {
    const auto& parts = spec.at("product");
    if (!parts.is_array() || parts.empty())
      fail(ErrorKind::InputError, "product must be a nonempty list");
    std::vector<FiniteGroup> fs;
    for (const auto& p : parts) fs.push_back(group_from_json(p));
    FiniteGroup g = fs.size() == 1 ? fs[0] : direct_product(fs);
    if (spec.contains("name")) g = g.with_label(spec["name"].get<std::string>());
    return g;
  }
  std::string kind = spec.value("kind", "");
  if (kind == "named") {
    if (!spec.contains("name")) fail(ErrorKind::InputError, "named spec without name");
    return named_group(spec["name"].get<std::string>());
  }
  if (kind == "permutation") {
    std::size_t degree = spec.at("degree").get<std::size_t>();
    std::vector<Perm> gens;
    for (const auto& gen : spec.at("generators"))
      gens.push_back(perm_from_cycles(
          degree, gen.get<std::vector<std::vector<std::uint32_t>>>()));
    FiniteGroup g = FiniteGroup::from_permutations(degree, gens);
    if (spec.contains("name")) g = g.with_label(spec["name"].get<std::string>());
    return g;
  }
  fail(ErrorKind::InputError, "unknown group kind '" + kind + "'");
}

FiniteGroup load_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InputError, "cannot open group file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(ErrorKind::InputError, std::string("malformed JSON in ") + path + ": " + e.what());
  }
  try {
    FiniteGroup g = group_from_json(j);
    if (g.label().empty()) g = g.with_label(std::filesystem::path(path).stem().string());
    return g;
  } catch (const json::exception& e) {
    fail(ErrorKind::InputError, std::string("bad group spec: ") + e.what());
  }
}

Elem element_from_json(const FiniteGroup& g, const json& e) {
  const auto& gens = g.generators();
  if (e.is_object() && e.contains("word")) {
    Elem x = 0;
    for (const auto& i : e.at("word")) {
      auto k = i.get<std::size_t>();
      if (k >= gens.size()) fail(ErrorKind::InputError, "generator index out of range");
      x = g.mult(x, gens[k]);
    }
    return x;
  }
  if (!e.is_array()) fail(ErrorKind::InputError, "element must be a cycle list or {\"word\": [...]}");
  if (g.perm_degree() == 0)
    fail(ErrorKind::InputError, "cycle notation needs a permutation group; use {\"word\": [...]}");
  Perm target = perm_from_cycles(g.perm_degree(), e.get<std::vector<std::vector<std::uint32_t>>>());
  const auto& gp = g.generator_perms();
  // walk words; fine for the subgroup-rule group sizes
  for (Elem x = 0; x < g.order(); ++x) {
    Perm p(g.perm_degree());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::uint32_t(i);
    for (auto k : g.word(x))
      for (auto& v : p) v = gp[k][v];
    if (p == target) return x;
  }
  fail(ErrorKind::InputError, "permutation is not in the group");
}

}  // namespace essdim
