#include <gtest/gtest.h>

#include "latkit/classes.hpp"
#include "latkit/gen.hpp"
#include "support.hpp"

using namespace latkit;

TEST(Classify, Square) {
  const auto r = classify(load_fixture("b4.lat"));
  EXPECT_FALSE(r.vacuous);
  EXPECT_TRUE(r.a);
  EXPECT_TRUE(r.b.member);
  EXPECT_TRUE(r.t);
  EXPECT_TRUE(r.consistency.consistent);
  EXPECT_EQ(r.b.most_minimal_primes, 1u);
}

TEST(Classify, PlusTop) {
  const auto l = load_fixture("b4plus1.lat");
  const auto r = classify(l);
  EXPECT_FALSE(r.a);
  EXPECT_EQ(r.non_minimal_prime, set_of(l, {"0", "a", "b", "1"}));
  EXPECT_FALSE(r.b.member);
  EXPECT_EQ(r.b.most_minimal_primes, 2u);
  EXPECT_FALSE(r.t);
  EXPECT_FALSE(r.consistency.consistent);
  ASSERT_TRUE(r.consistency.counterexample);
  EXPECT_EQ((*r.consistency.counterexample)[0], l.element("1"));
  EXPECT_EQ((*r.consistency.counterexample)[1], l.element("t"));
}

TEST(Classify, Div12) {
  const auto l = load_fixture("div12.lat");
  const auto r = classify(l);
  EXPECT_FALSE(r.a);
  EXPECT_EQ(r.non_minimal_prime, set_of(l, {"1", "2", "3", "6"}));
  EXPECT_TRUE(r.b.member);
  EXPECT_TRUE(r.t);
  EXPECT_TRUE(r.consistency.consistent);
  EXPECT_EQ(r.minimal_prime_count, 2u);
}

TEST(Classify, FiniteClassesFlagged) {
  const auto r = classify(load_fixture("div12.lat"));
  for (const auto* v : {&r.c, &r.c_omega, &r.d, &r.e, &r.f, &r.f_v, &r.s, &r.s_omega}) {
    EXPECT_TRUE(v->member);
    EXPECT_TRUE(v->finite_degenerate);
    EXPECT_FALSE(v->evidence.empty());
  }
}

TEST(Classify, OneElementIsVacuous) {
  const auto r = classify(parse_lattice("elements 0\n", Format::Lat));
  EXPECT_TRUE(r.vacuous);
  EXPECT_TRUE(r.a);
  EXPECT_TRUE(r.s.member);
}

TEST(Classify, RefusesNonDecomposable) {
  for (const char* f : {"m3.lat", "n5.lat"}) {
    try {
      classify(load_fixture(f));
      FAIL() << f;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::NotDecomposable);
    }
  }
  const auto ds4 = downset_lattice(parse_poset(read_file(fixture("ds4.poset"))));
  EXPECT_THROW(classify(ds4), Error);
}

TEST(Bn, Examples) {
  const auto l = load_fixture("b4plus1.lat");
  const auto one = in_bn(l, 1);
  EXPECT_FALSE(one.member);
  EXPECT_EQ(one.witness_prime, set_of(l, {"0", "a", "b", "1"}));
  EXPECT_TRUE(in_bn(l, 2).member);
  for (std::size_t n = 1; n <= 4; ++n) EXPECT_TRUE(in_bn(gen_named("chain:5"), n).member);
  EXPECT_THROW(in_bn(l, 0), Error);
}

TEST(Consistency, Examples) {
  EXPECT_TRUE(is_consistent(load_fixture("c3.lat")).consistent);
  EXPECT_TRUE(is_consistent(load_fixture("b8.lat")).consistent);
  const auto l = load_fixture("b4plus1.lat");
  const auto r = is_consistent(l);
  EXPECT_FALSE(r.consistent);
  EXPECT_EQ(r.counterexample, (std::array<Elem, 2>{l.element("1"), l.element("t")}));
  EXPECT_THROW(is_consistent(parse_lattice("elements 0\n", Format::Lat)), Error);
}

TEST(Consistency, CubeValueCounts) {
  const auto l = load_fixture("b8.lat");
  const auto v = value_spectrum(l);
  EXPECT_EQ(v.value_count(l.element("p")), 1u);
  EXPECT_EQ(v.value_count(l.element("p+q")), 2u);
  EXPECT_EQ(v.value_count(l.element("1")), 3u);
}

TEST(Dcc, Layers) {
  EXPECT_EQ(descending_chain_condition({}), 0u);
  EXPECT_EQ(descending_chain_condition({0b1, 0b11, 0b111, 0b101}), 3u);
}

TEST(Classify, ImplicationChainOnCorpus) {
  for (const auto& entry : corpus(5)) {
    if (!entry.decomposable || entry.lattice.size() < 2) continue;
    const auto r = classify(entry.lattice);
    if (r.a) {
      EXPECT_TRUE(r.b.member);
    }
    bool previous = r.b.member;
    for (std::size_t n = 1; n <= 6; ++n) {
      const bool now = r.in_bn(n);
      if (previous) {
        EXPECT_TRUE(now);
      }
      previous = now;
    }
    EXPECT_EQ(r.b_omega, r.in_bn(std::max<std::size_t>(r.minimal_prime_count, 1)));
    EXPECT_TRUE(r.s.member) << entry.lattice.name();
  }
}
