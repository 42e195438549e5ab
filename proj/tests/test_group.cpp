#include <gtest/gtest.h>

#include "essdim/io.hpp"
#include "oracles.hpp"

using namespace essdim;

namespace {

std::vector<std::size_t> sizes(const std::vector<Subgroup>& v) {
  std::vector<std::size_t> s;
  for (const auto& h : v) s.push_back(h.order());
  std::sort(s.begin(), s.end());
  return s;
}

const char* kCorpus[] = {"C2", "C3", "C4", "C6", "C12", "V4", "S3", "D4", "Q8", "A4",
                         "D5", "Q12", "Heis3", "SL2_3", "S4", "D6", "E2^3"};

}  // namespace

TEST(Group, FromGenerators) {
  auto s3 = FiniteGroup::from_permutations(
      3, {perm_from_cycles(3, {{0, 1}}), perm_from_cycles(3, {{0, 1, 2}})});
  EXPECT_EQ(s3.order(), oracle::perm_closure_size(
                            3, {perm_from_cycles(3, {{0, 1}}), perm_from_cycles(3, {{0, 1, 2}})}));
  EXPECT_EQ(s3.order(), 6u);
  EXPECT_EQ(FiniteGroup::from_permutations(1, {}).order(), 1u);
  EXPECT_EQ(FiniteGroup::from_permutations(4, {perm_from_cycles(4, {{0, 1, 2, 3}})}).order(), 4u);
}

TEST(Group, ClosureCap) {
  auto s = [] {
    return FiniteGroup::from_permutations(
        7, {perm_from_cycles(7, {{0, 1}}), perm_from_cycles(7, {{0, 1, 2, 3, 4, 5, 6}})}, 100);
  };
  try {
    s();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ClosureTooLarge);
  }
}

TEST(Group, BfsIndexingIsDeterministic) {
  auto a = named_group("S4"), b = named_group("S4");
  for (Elem x = 0; x < a.order(); ++x)
    for (Elem y = 0; y < a.order(); ++y) ASSERT_EQ(a.mult(x, y), b.mult(x, y));
  EXPECT_EQ(a.fingerprint(), b.fingerprint());
}

TEST(Group, InvariantsOnCorpus) {
  for (auto name : kCorpus) {
    auto g = named_group(name);
    EXPECT_TRUE(g.check_associativity()) << name;
    EXPECT_TRUE(g.check_basic_invariants()) << name;
    EXPECT_EQ(g.center().elements(), oracle::naive_center(g)) << name;
    std::multiset<std::size_t> cs;
    for (const auto& c : g.conjugacy_classes()) cs.insert(c.size());
    EXPECT_EQ(cs, oracle::naive_class_sizes(g)) << name;
    for (Elem x = 0; x < g.order(); ++x) ASSERT_EQ(g.element_order(x), oracle::naive_order(g, x));
  }
}

TEST(Group, ClassesOrderedByLeastElement) {
  auto g = named_group("S4");
  const auto& cls = g.conjugacy_classes();
  EXPECT_EQ(cls[0], std::vector<Elem>{0});
  for (std::size_t i = 1; i < cls.size(); ++i) EXPECT_LT(cls[i - 1][0], cls[i][0]);
  for (std::size_t i = 0; i < cls.size(); ++i)
    for (auto x : cls[i]) EXPECT_EQ(g.class_map()[x], i);
}

TEST(Group, ClassSizesExamples) {
  auto cs = [](const char* n) {
    std::multiset<std::size_t> s;
    auto g = named_group(n);
    for (const auto& c : g.conjugacy_classes()) s.insert(c.size());
    return s;
  };
  EXPECT_EQ(cs("S3"), (std::multiset<std::size_t>{1, 2, 3}));
  EXPECT_EQ(cs("Q8"), (std::multiset<std::size_t>{1, 1, 2, 2, 2}));
  EXPECT_EQ(cs("C12").size(), 12u);
}

TEST(Group, CenterCommutatorExponent) {
  EXPECT_EQ(named_group("Q8").center().order(), 2u);
  EXPECT_EQ(named_group("C12").commutator_subgroup().order(), 1u);
  EXPECT_EQ(named_group("S3").exponent(), 6);
  EXPECT_EQ(named_group("S4").commutator_subgroup().order(), 12u);
  EXPECT_EQ(named_group("Q8").exponent(), 4);
}

TEST(Group, NormalClosure) {
  auto s3 = named_group("S3");
  Elem three = 0, two = 0;
  for (Elem x = 0; x < 6; ++x) {
    if (s3.element_order(x) == 3) three = x;
    if (s3.element_order(x) == 2) two = x;
  }
  EXPECT_EQ(s3.normal_closure({three}).order(), 3u);
  EXPECT_EQ(s3.normal_closure({two}).order(), 6u);
  EXPECT_EQ(s3.normal_closure({0}).order(), 1u);
  for (auto name : kCorpus) {
    auto g = named_group(name);
    for (Elem x = 0; x < g.order(); ++x)
      ASSERT_EQ(g.normal_closure({x}).elements(), oracle::naive_normal_closure(g, {x})) << name;
  }
}

TEST(Group, FeetMatchOracle) {
  EXPECT_EQ(sizes(named_group("S3").feet()), (std::vector<std::size_t>{3}));
  EXPECT_EQ(sizes(named_group("C6").feet()), (std::vector<std::size_t>{2, 3}));
  EXPECT_EQ(sizes(named_group("Q8").feet()), (std::vector<std::size_t>{2}));
  for (auto name : kCorpus) {
    auto g = named_group(name);
    if (g.order() > 200) continue;
    std::vector<std::vector<Elem>> got;
    for (const auto& f : g.feet()) {
      got.push_back(f.elements());
      EXPECT_TRUE(f.is_normal());
    }
    std::sort(got.begin(), got.end());
    auto want = oracle::minimal_normal(g);
    std::sort(want.begin(), want.end());
    EXPECT_EQ(got, want) << name;
    auto feet = g.feet();
    for (std::size_t i = 0; i < feet.size(); ++i)
      for (std::size_t j = i + 1; j < feet.size(); ++j)
        EXPECT_EQ(feet[i].intersect(feet[j]).order(), 1u) << name;
  }
  try {
    FiniteGroup::trivial().feet();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TrivialGroup);
  }
}

TEST(Group, SocleDecomposition) {
  EXPECT_EQ(named_group("C12").socle().order(), 6u);
  EXPECT_EQ(named_group("S3").socle_abelian().order(), 3u);
  auto a5 = named_group("A5");
  EXPECT_EQ(a5.socle().order(), 60u);
  EXPECT_EQ(a5.socle_abelian().order(), 1u);
  for (auto name : {"S3", "C12", "A4", "S4", "Q12", "D6", "A5", "SL2_3", "Heis3"}) {
    auto g = named_group(name);
    std::size_t prod = g.socle_abelian().order();
    for (const auto& f : g.feet())
      if (!f.is_abelian()) prod *= f.order();
    EXPECT_EQ(g.socle().order(), prod) << name;
    EXPECT_TRUE(g.socle_abelian().is_abelian());
    EXPECT_TRUE(g.socle_abelian().is_normal());
  }
  auto a5xa5 = direct_product(a5, named_group("C2"));
  std::size_t prod = a5xa5.socle_abelian().order();
  for (const auto& f : a5xa5.feet())
    if (!f.is_abelian()) prod *= f.order();
  EXPECT_EQ(a5xa5.socle().order(), prod);
  EXPECT_EQ(prod, 120u);
}

TEST(Group, Quotients) {
  auto c4 = named_group("C4");
  Subgroup c2 = c4.center().intersect(c4.subgroup_generated({c4.pow(c4.generators()[0], 2)}));
  EXPECT_EQ(quotient(c4, c2).target.order(), 2u);
  auto q8 = named_group("Q8");
  auto q = quotient(q8, q8.center());
  EXPECT_EQ(q.target.order(), 4u);
  EXPECT_EQ(q.target.exponent(), 2);
  auto same = quotient(q8, q8.trivial_subgroup());
  EXPECT_EQ(same.target.invariant_fingerprint(), q8.invariant_fingerprint());
  for (auto name : kCorpus) {
    auto g = named_group(name);
    for (const auto& n : std::vector<Subgroup>{g.center(), g.commutator_subgroup()}) {
      auto qm = quotient(g, n);
      EXPECT_EQ(g.order(), n.order() * qm.target.order());
      for (Elem a = 0; a < g.order(); ++a)
        for (Elem b = 0; b < g.order(); ++b)
          ASSERT_EQ(qm.projection[g.mult(a, b)],
                    qm.target.mult(qm.projection[a], qm.projection[b]));
      for (const auto& f : qm.fiber) EXPECT_EQ(f.size(), n.order());
    }
  }
  auto s3 = named_group("S3");
  Elem t = 0;
  for (Elem x = 0; x < 6; ++x)
    if (s3.element_order(x) == 2) t = x;
  try {
    quotient(s3, s3.subgroup_generated({t}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotNormal);
  }
}

TEST(Group, DirectProducts) {
  auto c6 = direct_product(named_group("C2"), named_group("C3"));
  EXPECT_EQ(c6.order(), 6u);
  EXPECT_EQ(c6.exponent(), 6);
  auto q8c2 = direct_product(named_group("Q8"), named_group("C2"));
  EXPECT_EQ(q8c2.order(), 16u);
  EXPECT_EQ(q8c2.center().order(), 4u);
  auto s3 = named_group("S3");
  auto s3t = direct_product(s3, FiniteGroup::trivial());
  EXPECT_EQ(s3t.invariant_fingerprint(), s3.invariant_fingerprint());
  const auto* info = q8c2.product_info();
  ASSERT_NE(info, nullptr);
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& f = info->factors[i];
    for (Elem a = 0; a < f.order(); ++a)
      for (Elem b = 0; b < f.order(); ++b)
        ASSERT_EQ(info->embeddings[i][f.mult(a, b)],
                  q8c2.mult(info->embeddings[i][a], info->embeddings[i][b]));
  }
  for (auto a : info->embeddings[0])
    for (auto b : info->embeddings[1]) ASSERT_EQ(q8c2.mult(a, b), q8c2.mult(b, a));
}

TEST(Group, AsGroup) {
  auto s4 = named_group("S4");
  auto h = s4.commutator_subgroup();
  auto sg = as_group(h);
  EXPECT_EQ(sg.group.order(), 12u);
  EXPECT_EQ(sg.group.invariant_fingerprint(), named_group("A4").invariant_fingerprint());
  for (Elem a = 0; a < 12; ++a)
    for (Elem b = 0; b < 12; ++b)
      ASSERT_EQ(sg.embedding[sg.group.mult(a, b)], s4.mult(sg.embedding[a], sg.embedding[b]));
}

TEST(Group, NamedAndJson) {
  EXPECT_EQ(named_group("D4").order(), 8u);
  EXPECT_EQ(named_group("Heis3").exponent(), 3);
  EXPECT_EQ(named_group("Heis3").center().order(), 3u);
  EXPECT_EQ(named_group("SL2_3").order(), 24u);
  EXPECT_EQ(named_group("Q16").center().order(), 2u);
  auto j = nlohmann::json::parse(
      R"({"kind":"named","product":[{"kind":"named","name":"Q8"},"C3"]})");
  auto g = group_from_json(j);
  EXPECT_EQ(g.order(), 24u);
  EXPECT_NE(g.product_info(), nullptr);
  auto p = nlohmann::json::parse(R"({"kind":"permutation","degree":4,"generators":[[[0,1,2,3]]]})");
  EXPECT_EQ(group_from_json(p).order(), 4u);
  EXPECT_THROW(named_group("Bogus7"), Error);
}
