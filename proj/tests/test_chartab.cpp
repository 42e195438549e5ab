#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numeric>

#include "essdim/chartab.hpp"
#include "essdim/io.hpp"

using namespace essdim;

namespace {

const char* kCorpus[] = {"C2", "C3", "C4", "C6", "C12", "V4", "S3", "D4", "Q8", "A4", "D5",
                         "Q12", "Heis3", "SL2_3", "S4", "D6", "E2^3", "Q8xC2", "Q8xC3",
                         "C3xS3", "D4xC2", "A5", "S5"};

// a_jlk = #{(x, y) in C_j x C_l : xy = g_k}, by brute force.
std::vector<std::vector<std::vector<long>>> structure_constants(const FiniteGroup& g) {
  const auto& cls = g.conjugacy_classes();
  std::size_t r = cls.size();
  std::vector<std::vector<std::vector<long>>> a(r, std::vector<std::vector<long>>(r, std::vector<long>(r, 0)));
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t l = 0; l < r; ++l)
      for (auto x : cls[j])
        for (auto y : cls[l]) {
          Elem p = g.mult(x, y);
          std::size_t k = g.class_map()[p];
          if (p == cls[k][0]) ++a[j][l][k];
        }
  return a;
}

Cyclotomic omega(const CharacterTable& t, std::size_t i, std::size_t k) {
  return t.value(i, k).scaled(mpq_class(long(t.class_sizes()[k]), t.degrees()[i]));
}

}  // namespace

TEST(Cyclotomic, Arithmetic) {
  auto z3 = Cyclotomic::root_of_unity(3, 1);
  EXPECT_EQ(z3 * z3 * z3, Cyclotomic(1));
  EXPECT_EQ(z3 + z3 * z3, Cyclotomic(-1));
  auto z6 = Cyclotomic::root_of_unity(6, 1);
  EXPECT_EQ(z6.conductor(), 3);
  EXPECT_EQ(z6 * z6 * z6, Cyclotomic(-1));
  auto i = Cyclotomic::root_of_unity(4, 1);
  EXPECT_EQ(i * i, Cyclotomic(-1));
  EXPECT_EQ(i.conj(), -i);
  // mixed conductors unify
  auto z12 = Cyclotomic::root_of_unity(12, 1);
  EXPECT_EQ(z12 * z12 * z12, i);
  EXPECT_EQ(z12 * z12 * z12 * z12, z3);
  EXPECT_TRUE((z3 + z3.conj()).is_rational());
  EXPECT_EQ(Cyclotomic(mpq_class(6, 2)), Cyclotomic(3));
  // sqrt(5) = 1 + 2(z5 + z5^4) lies in Q(ζ5) but not Q(ζ4)
  auto z5 = Cyclotomic::root_of_unity(5, 1);
  auto s5 = Cyclotomic(1) + (z5 + z5.galois(4)).scaled(2);
  EXPECT_EQ(s5 * s5, Cyclotomic(5));
  EXPECT_TRUE(s5.lies_in(5));
  EXPECT_FALSE(s5.lies_in(4));
  EXPECT_TRUE((z3 + z3.conj()).lies_in(2));
  EXPECT_TRUE(i.lies_in(12));
  EXPECT_FALSE(i.lies_in(6));
}

TEST(Cyclotomic, RootsOfUnitySum) {
  for (long n = 1; n <= 40; ++n) {
    Cyclotomic s;
    for (long k = 0; k < n; ++k) s += Cyclotomic::root_of_unity(n, k);
    EXPECT_EQ(s, Cyclotomic(n == 1 ? 1 : 0)) << n;
    long deg = long(cyclotomic_polynomial(n).size()) - 1;
    EXPECT_EQ(deg, euler_phi(n));
  }
}

TEST(CharTable, Examples) {
  EXPECT_EQ(character_table(named_group("S3")).degrees(), (std::vector<long>{1, 1, 2}));
  EXPECT_EQ(character_table(named_group("A5")).degrees(), (std::vector<long>{1, 3, 3, 4, 5}));
  auto c4 = named_group("C4");
  auto t = character_table(c4);
  EXPECT_EQ(t.degrees(), (std::vector<long>{1, 1, 1, 1}));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t k = 0; k < 4; ++k) {
      bool root = false;
      for (long e = 0; e < 4; ++e) root |= t.value(i, k) == Cyclotomic::root_of_unity(4, e);
      EXPECT_TRUE(root);
    }
}

TEST(CharTable, CorpusInvariants) {
  for (auto name : kCorpus) {
    auto g = named_group(name);
    auto t = character_table(g);
    EXPECT_NO_THROW(t.verify()) << name;
    EXPECT_EQ(t.size(), g.conjugacy_classes().size());
    long sq = 0, linear = 0;
    for (auto d : t.degrees()) {
      sq += d * d;
      linear += d == 1;
      EXPECT_EQ(long(g.order()) % d, 0);
    }
    EXPECT_EQ(sq, long(g.order())) << name;
    EXPECT_EQ(std::size_t(linear), g.order() / g.commutator_subgroup().order()) << name;
    std::vector<std::size_t> all(t.size());
    std::iota(all.begin(), all.end(), 0);
    EXPECT_EQ(kernel(t, all).order(), 1u) << name;
    for (std::size_t i = 0; i < t.size(); ++i) EXPECT_TRUE(kernel(t, i).is_normal());
  }
}

// Central characters ω_i(K_j) ω_i(K_l) = Σ_k a_jlk ω_i(K_k), with a_jlk counted directly.
TEST(CharTable, ClassAlgebraOracle) {
  for (auto name : {"S3", "Q8", "A4", "D5", "SL2_3", "S4", "Heis3", "C3xS3"}) {
    auto g = named_group(name);
    auto t = character_table(g);
    auto a = structure_constants(g);
    std::size_t r = t.size();
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        for (std::size_t l = 0; l < r; ++l) {
          Cyclotomic rhs;
          for (std::size_t k = 0; k < r; ++k)
            if (a[j][l][k]) rhs += omega(t, i, k).scaled(a[j][l][k]);
          ASSERT_EQ(omega(t, i, j) * omega(t, i, l), rhs) << name;
        }
  }
}

// Fixed-point characters decompose with nonnegative integer multiplicities.
TEST(CharTable, PermutationCharacterOracle) {
  for (auto name : {"S3", "S4", "A5", "S5", "D5", "SL2_3", "Heis3"}) {
    auto g = named_group(name);
    if (g.perm_degree() == 0) continue;
    auto t = character_table(g);
    const auto& cls = g.conjugacy_classes();
    std::vector<long> fix(cls.size(), 0);
    for (std::size_t k = 0; k < cls.size(); ++k) {
      // permutation of the class representative, via its generator word
      Perm p(g.perm_degree());
      std::iota(p.begin(), p.end(), 0u);
      for (auto w : g.word(cls[k][0])) {
        const auto& s = g.generator_perms()[w];
        for (auto& x : p) x = s[x];
      }
      for (std::size_t x = 0; x < p.size(); ++x) fix[k] += p[x] == x;
    }
    for (std::size_t i = 0; i < t.size(); ++i) {
      Cyclotomic s;
      for (std::size_t k = 0; k < cls.size(); ++k)
        s += t.value(i, k).conj().scaled(fix[k] * long(cls[k].size()));
      s = s.scaled(mpq_class(1, long(g.order())));
      ASSERT_TRUE(s.is_rational()) << name;
      EXPECT_EQ(s.rational().get_den(), 1);
      EXPECT_GE(s.rational(), 0);
    }
  }
}

TEST(CharTable, Kernels) {
  auto q8 = named_group("Q8");
  auto t = character_table(q8);
  EXPECT_EQ(kernel(t, 0).order(), 8u);
  EXPECT_EQ(kernel(t, 4).order(), 1u);  // the 2-dim row
  auto s3 = character_table(named_group("S3"));
  EXPECT_EQ(kernel(s3, 1).order(), 3u);
}

TEST(CharTable, CentralCharacters) {
  auto q8 = named_group("Q8");
  auto t = character_table(q8);
  auto z = q8.center();
  auto triv = central_character(t, 4, q8.trivial_subgroup());
  EXPECT_TRUE(triv.is_trivial());
  auto c = central_character(t, 4, z);
  EXPECT_EQ(c.e, 2);
  EXPECT_EQ(c.exps, (std::vector<long>{0, 1}));
  auto c4 = named_group("C4");
  auto t4 = character_table(c4);
  for (std::size_t i = 0; i < 4; ++i) {
    auto ch = central_character(t4, i, c4.whole());
    std::set<long> vals(ch.exps.begin(), ch.exps.end());
    if (kernel(t4, i).order() == 1) {
      EXPECT_EQ(vals.size(), 4u);
    }
  }
  EXPECT_THROW(central_character(character_table(named_group("S3")), 0, named_group("S3").whole()),
               Error);
}

TEST(CharTable, CentralCharacterProperties) {
  for (auto name : {"Q8", "Heis3", "C12", "Q8xC3", "SL2_3", "D4xC2", "Q12"}) {
    auto g = named_group(name);
    auto t = character_table(g);
    auto z = g.center();
    for (std::size_t i = 0; i < t.size(); ++i) {
      auto ch = central_character(t, i, z);
      const auto& els = z.elements();
      auto at = [&](Elem x) {
        return ch.exps[std::lower_bound(els.begin(), els.end(), x) - els.begin()];
      };
      for (auto a : els)
        for (auto b : els) ASSERT_EQ(at(g.mult(a, b)), (at(a) + at(b)) % ch.e) << name;
      // Galois conjugation of a row conjugates its central character
      long e = g.exponent();
      for (long s = 2; s < e; ++s) {
        if (std::gcd(s, e) != 1) continue;
        std::size_t j = t.size();
        for (std::size_t jj = 0; jj < t.size() && j == t.size(); ++jj) {
          bool same = true;
          for (std::size_t k = 0; k < t.size() && same; ++k)
            same = t.value(jj, k) == t.value(i, k).galois(s % t.value(i, k).conductor() ? s : 1);
          if (same) j = jj;
        }
        ASSERT_LT(j, t.size()) << name;
        auto cj = central_character(t, j, z);
        for (std::size_t x = 0; x < els.size(); ++x)
          EXPECT_EQ(cj.exps[x], ch.exps[x] * s % ch.e) << name;
      }
    }
  }
}

TEST(CharTable, RepChiAndF) {
  auto q8 = named_group("Q8");
  auto t = character_table(q8);
  auto z = q8.center();
  auto chi = central_character(t, 4, z);
  EXPECT_EQ(rep_chi_degrees(t, z, chi), std::vector<long>{2});
  auto k4 = parse_field("Q(zeta_4)");
  EXPECT_EQ(f_value(t, k4, z, chi), 2);
  EXPECT_EQ(f_value(t, k4, z, trivial_central_character(z)), 1);
  EXPECT_EQ(rep_chi_degrees(t, q8.trivial_subgroup(), trivial_central_character(q8.trivial_subgroup())).size(), 5u);
  try {
    f_value(t, parse_field("Q"), z, chi);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OutOfScope);
  }
  auto h = named_group("Heis3");
  auto th = character_table(h);
  for (std::size_t i = 0; i < th.size(); ++i) {
    auto c = central_character(th, i, h.center());
    if (!c.is_trivial()) {
      EXPECT_EQ(f_value(th, parse_field("Q(zeta_3)"), h.center(), c), 3);
      EXPECT_EQ(rep_chi_degrees(th, h.center(), c), std::vector<long>{3});
    }
  }
}

TEST(CharTable, GcdMin) {
  auto q8 = named_group("Q8");
  EXPECT_TRUE(gcd_min_condition(character_table(q8), parse_field("Q(zeta_4)"), q8.center()));
  auto h = named_group("Heis3");
  EXPECT_TRUE(gcd_min_condition(character_table(h), parse_field("Q(zeta_3)"), h.center()));
  auto c12 = named_group("C12");
  EXPECT_TRUE(gcd_min_condition(character_table(c12), parse_field("Q(zeta_12)"), c12.socle()));
}

TEST(CharTable, RealizableRows) {
  auto s3 = character_table(named_group("S3"));
  EXPECT_EQ(realizable_rows(s3, parse_field("Q")).size(), 3u);
  auto q8 = character_table(named_group("Q8"));
  // the quaternion row has Schur index 2 over Q
  EXPECT_EQ(realizable_rows(q8, parse_field("Q")), (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_EQ(realizable_rows(q8, parse_field("Q(zeta_4)")).size(), 5u);
  auto c3 = character_table(named_group("C3"));
  EXPECT_EQ(realizable_rows(c3, parse_field("Q")).size(), 1u);
  auto a5 = character_table(named_group("A5"));
  // the two 3-dim rows need sqrt(5)
  EXPECT_EQ(realizable_rows(a5, parse_field("Q")).size(), 3u);
  EXPECT_EQ(realizable_rows(a5, parse_field("Q(zeta_5)")).size(), 5u);
}

TEST(CharTable, DiskCache) {
  auto dir = std::filesystem::temp_directory_path() / "essdim-test-cache";
  std::filesystem::remove_all(dir);
  auto g = named_group("SL2_3");
  EXPECT_FALSE(load_cached_table(g, dir.string()).has_value());
  auto t = character_table(g, dir.string());
  EXPECT_EQ(t.origin(), "computed");
  auto again = character_table(g, dir.string());
  EXPECT_EQ(again.origin(), "cache");
  ASSERT_EQ(again.size(), t.size());
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t k = 0; k < t.size(); ++k) EXPECT_EQ(again.value(i, k), t.value(i, k));
  // tampered values fail validation and are ignored
  for (auto& e : std::filesystem::directory_iterator(dir)) {
    std::ifstream in(e.path());
    std::string s((std::istreambuf_iterator<char>(in)), {});
    auto pos = s.find("\"degrees\":[1");
    ASSERT_NE(pos, std::string::npos);
    s[pos + 11] = '2';
    std::ofstream(e.path()) << s;
  }
  EXPECT_FALSE(load_cached_table(g, dir.string()).has_value());
  EXPECT_EQ(character_table(g, dir.string()).origin(), "computed");
  // a different group never picks up the file
  EXPECT_FALSE(load_cached_table(named_group("S4"), dir.string()).has_value());
  std::filesystem::remove_all(dir);
}
