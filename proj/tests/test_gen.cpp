#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "latkit/gen.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace latkit;

namespace {

ErrorKind kind_of(const std::string& spec, std::size_t cap = kMaxElements) {
  try {
    gen_named(spec, cap);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::BadArgument;
}

}  // namespace

TEST(Named, Chain) {
  const auto l = gen_named("chain:3");
  EXPECT_EQ(canonical_form(l), canonical_form(load_fixture("c3.lat")));
  EXPECT_EQ(l.labels(), (std::vector<std::string>{"0", "1", "2"}));
}

TEST(Named, PlusTopOfSquare) {
  const auto l = gen_named("plustop:boolean:2");
  EXPECT_EQ(l.size(), 5u);
  EXPECT_EQ(canonical_form(l), canonical_form(load_fixture("b4plus1.lat")));
  EXPECT_EQ(l.label(l.top()), "t");
}

TEST(Named, Divisors) {
  const auto l = gen_named("divisor:12");
  EXPECT_EQ(l.labels(), (std::vector<std::string>{"1", "2", "3", "4", "6", "12"}));
  EXPECT_TRUE(same_structure(l, load_fixture("div12.lat")));
  for (Elem x = 0; x < l.size(); ++x) {
    for (Elem y = 0; y < l.size(); ++y) {
      const auto a = std::stoull(l.label(x));
      const auto b = std::stoull(l.label(y));
      EXPECT_EQ(std::stoull(l.label(l.meet(x, y))), std::gcd(a, b));
      EXPECT_EQ(std::stoull(l.label(l.join(x, y))), std::lcm(a, b));
    }
  }
}

TEST(Named, ProductsAndBooleans) {
  EXPECT_EQ(canonical_form(gen_named("product:chain:2*chain:2")), canonical_form(gen_named("boolean:2")));
  EXPECT_EQ(canonical_form(gen_named("product:chain:2*chain:2*chain:2")), canonical_form(gen_named("boolean:3")));
  EXPECT_EQ(canonical_form(gen_named("product:chain:3*chain:2")), canonical_form(gen_named("divisor:12")));
  EXPECT_EQ(gen_named("boolean:6").size(), 64u);
}

TEST(Named, Downsets) {
  const auto l = gen_named("downsets:" + fixture("v.poset"));
  EXPECT_EQ(canonical_form(l), canonical_form(load_fixture("b4plus1.lat")));
}

TEST(Named, Errors) {
  EXPECT_EQ(kind_of("chain"), ErrorKind::BadSpec);
  EXPECT_EQ(kind_of("chain:x"), ErrorKind::BadSpec);
  EXPECT_EQ(kind_of("chain:0"), ErrorKind::BadSpec);
  EXPECT_EQ(kind_of("torus:3"), ErrorKind::BadSpec);
  EXPECT_EQ(kind_of("product:chain:3"), ErrorKind::BadSpec);
  EXPECT_EQ(kind_of("downsets:/nonexistent.poset"), ErrorKind::BadSpec);
  EXPECT_EQ(kind_of("chain:65"), ErrorKind::Overflow);
  EXPECT_EQ(kind_of("boolean:7"), ErrorKind::Overflow);
  EXPECT_EQ(kind_of("product:chain:9*chain:8"), ErrorKind::Overflow);
  EXPECT_EQ(kind_of("chain:10", 8), ErrorKind::Overflow);
}

TEST(Downsets, Examples) {
  PosetSpec antichain{"A2", {"p", "q"}, {0, 0}};
  EXPECT_EQ(canonical_form(downset_lattice(antichain)), canonical_form(gen_named("boolean:2")));
  PosetSpec chain{"C2", {"p", "q"}, {0, 0b01}};
  EXPECT_EQ(canonical_form(downset_lattice(chain)), canonical_form(gen_named("chain:3")));
  const auto v = downset_lattice(parse_poset(read_file(fixture("v.poset"))));
  EXPECT_EQ(v.labels(), (std::vector<std::string>{"0", "p", "q", "p+q", "p+q+r"}));
  EXPECT_TRUE(is_distributive(v).distributive);
}

TEST(Downsets, Overflow) {
  PosetSpec antichain{"A3", {"p", "q", "r"}, {0, 0, 0}};
  EXPECT_THROW(downset_lattice(antichain, 7), Error);
  EXPECT_NO_THROW(downset_lattice(antichain, 8));
}

TEST(Posets, SmallCounts) {
  EXPECT_EQ(enumerate_posets(0).size(), 1u);
  EXPECT_EQ(enumerate_posets(1).size(), 1u);
  EXPECT_EQ(enumerate_posets(2).size(), 2u);
  EXPECT_EQ(enumerate_posets(3).size(), 5u);
}

TEST(Posets, AgreeWithPermutationOracle) {
  for (std::size_t n = 1; n <= 4; ++n) EXPECT_EQ(enumerate_posets(n).size(), oracle::count_posets(n)) << n;
}

TEST(Posets, SixIsAtTheCap) {
  EXPECT_EQ(enumerate_posets(6).size(), 318u);
  try {
    enumerate_posets(7);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CapExceeded);
  }
}

TEST(Posets, Deterministic) {
  const auto a = enumerate_posets(4);
  const auto b = enumerate_posets(4);
  EXPECT_EQ(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].name, "P4." + std::to_string(i));
}

TEST(Corpus, UpToTwo) {
  const auto c = corpus(2);
  std::multiset<CanonicalForm> forms;
  for (const auto& e : c) forms.insert(e.form);
  std::multiset<CanonicalForm> expected{canonical_form(gen_named("chain:1")), canonical_form(gen_named("chain:2")),
                                        canonical_form(gen_named("chain:3")), canonical_form(gen_named("boolean:2"))};
  EXPECT_EQ(forms, expected);
}

TEST(Corpus, UpToThreeHasPlusTop) {
  const auto target = canonical_form(load_fixture("b4plus1.lat"));
  const auto c = corpus(3);
  EXPECT_TRUE(std::any_of(c.begin(), c.end(), [&](const CorpusEntry& e) { return e.form == target; }));
}

TEST(Corpus, UpToFourTagsDs4) {
  const auto ds4 = downset_lattice(parse_poset(read_file(fixture("ds4.poset"))));
  const auto target = canonical_form(ds4);
  const auto c = corpus(4);
  const auto it = std::find_if(c.begin(), c.end(), [&](const CorpusEntry& e) { return e.form == target; });
  ASSERT_NE(it, c.end());
  EXPECT_FALSE(it->decomposable);
}

TEST(Corpus, CapAndDeterminism) {
  EXPECT_THROW(corpus(7), Error);
  const auto a = corpus(4);
  const auto b = corpus(4);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].form, b[i].form);
    EXPECT_EQ(a[i].lattice, b[i].lattice);
  }
}

TEST(Corpus, SixIncludesTheFullCube) {
  const auto c = corpus(6);
  EXPECT_EQ(c.size(), 1u + 1 + 2 + 5 + 16 + 63 + 318);
  const auto cube = canonical_form(gen_named("boolean:6"));
  EXPECT_TRUE(std::any_of(c.begin(), c.end(), [&](const CorpusEntry& e) { return e.form == cube; }));
}
