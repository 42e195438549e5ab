#include <gtest/gtest.h>

#include "essdim/field.hpp"
#include "essdim/io.hpp"

using namespace essdim;

TEST(Field, ParseExamples) {
  auto f = parse_field("Q(zeta_3)");
  EXPECT_EQ(f.roots, FieldDescriptor::Roots::Cyclotomic);
  EXPECT_EQ(f.m, 6);
  EXPECT_EQ(parse_field("Q").m, 2);
  auto a = parse_field("algclosed:2");
  EXPECT_EQ(a.characteristic, 2);
  EXPECT_EQ(a.roots, FieldDescriptor::Roots::All);
  EXPECT_EQ(parse_field("Q(zeta_12)").canonical(), "Q(zeta_12)");
  EXPECT_EQ(parse_field("char=0;zeta=4").canonical(), "Q(zeta_4)");
  auto e = parse_field("char=3;zeta=4,6");
  EXPECT_TRUE(e.has_primitive_root(4));
  EXPECT_TRUE(e.has_primitive_root(2));
  EXPECT_FALSE(e.has_primitive_root(3));
  EXPECT_FALSE(e.has_primitive_root(8));
  EXPECT_EQ(e.canonical(), "char=3;zeta=1,2,4");
  EXPECT_TRUE(parse_field("char=2").roots_unspecified);
}

TEST(Field, ParseErrorsCarryPosition) {
  struct Case {
    const char* s;
    std::size_t pos;
  } cases[] = {{"", 0}, {"Q(zeta_)", 7}, {"Q(zeta_4", 8}, {"algclosed:4", 11 - 1},
               {"char=2;zeta=", 12}, {"Qx", 1}, {"R", 0}};
  for (auto c : cases) {
    try {
      parse_field(c.s);
      ADD_FAILURE() << c.s;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.kind(), ErrorKind::ParseError);
      EXPECT_EQ(e.position(), c.pos) << c.s;
    }
  }
}

TEST(Field, HasPrimitiveRootExamples) {
  EXPECT_TRUE(parse_field("Q(zeta_12)").has_primitive_root(4));
  EXPECT_FALSE(parse_field("Q").has_primitive_root(3));
  EXPECT_FALSE(parse_field("algclosed:2").has_primitive_root(2));
  EXPECT_TRUE(parse_field("algclosed:2").has_primitive_root(3));
}

TEST(Field, CyclotomicDivisorProperty) {
  for (long m = 1; m <= 60; ++m) {
    auto f = parse_field("Q(zeta_" + std::to_string(m) + ")");
    long mm = m % 2 ? 2 * m : m;
    for (long n = 1; n <= 100; ++n) ASSERT_EQ(f.has_primitive_root(n), mm % n == 0) << m << " " << n;
  }
}

TEST(Field, KCenterExamples) {
  auto q8 = named_group("Q8");
  EXPECT_EQ(k_center(q8, parse_field("Q")).order(), 2u);
  EXPECT_EQ(k_center_rank(q8, parse_field("Q")), 1);
  auto c4 = named_group("C4");
  EXPECT_EQ(k_center(c4, parse_field("Q")).order(), 2u);
  EXPECT_EQ(k_center(c4, parse_field("Q(zeta_4)")).order(), 4u);
  for (auto name : {"C12", "Heis3", "Q8xC3", "D4", "S3"}) {
    auto g = named_group(name);
    EXPECT_EQ(k_center(g, parse_field("algclosed:0")).elements(), g.center().elements());
  }
  EXPECT_EQ(k_center(named_group("C6"), parse_field("algclosed:2")).order(), 3u);
}

TEST(Field, KCenterMonotone) {
  const char* chain[] = {"Q", "Q(zeta_4)", "Q(zeta_12)", "Q(zeta_24)", "algclosed:0"};
  for (auto name : {"C12", "Q8xC3", "C2xC4", "C3xC3xC2"}) {
    auto g = named_group(name);
    for (int i = 0; i + 1 < 5; ++i) {
      auto a = k_center(g, parse_field(chain[i]));
      auto b = k_center(g, parse_field(chain[i + 1]));
      EXPECT_TRUE(a.is_subgroup_of(b)) << name << " " << chain[i];
    }
  }
}

TEST(Field, SemiFaithful) {
  auto c2 = named_group("C2");
  EXPECT_FALSE(is_semi_faithful(c2, parse_field("algclosed:2")));
  EXPECT_TRUE(is_semi_faithful(named_group("S3"), parse_field("algclosed:2")));
  EXPECT_FALSE(is_semi_faithful(named_group("S3"), parse_field("algclosed:3")));
  EXPECT_TRUE(is_semi_faithful(c2, parse_field("Q")));
  EXPECT_TRUE(is_semi_faithful(named_group("A5"), parse_field("char=5")));
}

TEST(Field, SplittingGate) {
  EXPECT_TRUE(supports_splitting(named_group("Q8"), parse_field("Q(zeta_4)")));
  EXPECT_FALSE(supports_splitting(named_group("S3"), parse_field("Q")));
  EXPECT_FALSE(supports_splitting(named_group("C2"), parse_field("algclosed:2")));
  EXPECT_TRUE(supports_splitting(named_group("S3"), parse_field("algclosed:5")));
}
