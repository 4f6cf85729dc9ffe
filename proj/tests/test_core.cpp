#include <gtest/gtest.h>

#include "latkit/gen.hpp"
#include "latkit/io.hpp"
#include "latkit/lattice.hpp"
#include "latkit/properties.hpp"
#include "support.hpp"

using namespace latkit;

namespace {

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::BadArgument;
}

void expect_lattice_axioms(const FiniteLattice& l) {
  const std::size_t n = l.size();
  for (Elem x = 0; x < n; ++x) {
    EXPECT_TRUE(l.leq(l.bottom(), x));
    EXPECT_TRUE(l.leq(x, l.top()));
    for (Elem y = 0; y < n; ++y) {
      if (l.leq(x, y) && l.leq(y, x)) {
        EXPECT_EQ(x, y);
      }
      EXPECT_EQ(l.meet(x, y), l.meet(y, x));
      EXPECT_EQ(l.join(x, y), l.join(y, x));
      EXPECT_EQ(l.meet(x, l.join(x, y)), x);
      EXPECT_EQ(l.join(x, l.meet(x, y)), x);
      // glb/lub by definition
      for (Elem z = 0; z < n; ++z) {
        if (l.leq(x, y) && l.leq(y, z)) {
          EXPECT_TRUE(l.leq(x, z));
        }
        if (l.leq(z, x) && l.leq(z, y)) {
          EXPECT_TRUE(l.leq(z, l.meet(x, y)));
        }
        if (l.leq(x, z) && l.leq(y, z)) {
          EXPECT_TRUE(l.leq(l.join(x, y), z));
        }
        EXPECT_EQ(l.meet(x, l.meet(y, z)), l.meet(l.meet(x, y), z));
        EXPECT_EQ(l.join(x, l.join(y, z)), l.join(l.join(x, y), z));
      }
    }
    EXPECT_EQ(l.meet(x, x), x);
    EXPECT_EQ(l.join(x, x), x);
  }
}

}  // namespace

TEST(Parse, ThreeChain) {
  const auto l = parse_lattice("elements: 0 a 1\ncovers: 0<a a<1\n", Format::Lat);
  EXPECT_EQ(l.size(), 3u);
  EXPECT_EQ(l.name(), "unnamed");
  EXPECT_TRUE(l.less(l.element("0"), l.element("1")));
  EXPECT_EQ(l.bottom(), l.element("0"));
  EXPECT_EQ(l.top(), l.element("1"));
  expect_lattice_axioms(l);
}

TEST(Parse, SquareIsBooleanFour) {
  const auto l = load_fixture("b4.lat");
  EXPECT_EQ(l.name(), "B4");
  EXPECT_FALSE(l.comparable(l.element("a"), l.element("b")));
  EXPECT_EQ(l.join(l.element("a"), l.element("b")), l.element("1"));
  EXPECT_EQ(l.meet(l.element("a"), l.element("b")), l.element("0"));
  expect_lattice_axioms(l);
}

TEST(Parse, AntichainHasNoBottom) {
  EXPECT_EQ(kind_of([] { parse_lattice("elements: x y\ncovers: (none)\n", Format::Lat); }), ErrorKind::NoBottom);
  EXPECT_EQ(kind_of([] { load_fixture("antichain.lat"); }), ErrorKind::NoBottom);
}

TEST(Parse, CycleIsRejected) {
  EXPECT_EQ(kind_of([] { load_fixture("cycle.lat"); }), ErrorKind::Cycle);
  EXPECT_EQ(kind_of([] { parse_lattice("elements a\ncovers a<a\n", Format::Lat); }), ErrorKind::Cycle);
}

TEST(Parse, MissingJoinCarriesPair) {
  try {
    load_fixture("bowtie.lat");
    FAIL() << "bowtie parsed";
  } catch (const NotALatticeError& e) {
    EXPECT_EQ(e.first(), "a");
    EXPECT_EQ(e.second(), "b");
  }
}

TEST(Parse, SyntaxErrors) {
  EXPECT_EQ(kind_of([] { load_fixture("syntax.lat"); }), ErrorKind::Syntax);
  EXPECT_EQ(kind_of([] { parse_lattice("elements 0 a\ncovers 0<z\n", Format::Lat); }), ErrorKind::Syntax);
  EXPECT_EQ(kind_of([] { parse_lattice("elements 0 0\n", Format::Lat); }), ErrorKind::Syntax);
  EXPECT_EQ(kind_of([] { parse_lattice("elements 0 a\ncovers 0-a\n", Format::Lat); }), ErrorKind::Syntax);
  EXPECT_EQ(kind_of([] { parse_lattice("{\"elements\": [\"0\"]", Format::Json); }), ErrorKind::Syntax);
  EXPECT_EQ(kind_of([] { parse_lattice("{\"name\": \"x\", \"elements\": [\"0\"], \"covers\": [[\"0\"]]}", Format::Json); }),
            ErrorKind::Syntax);
}

TEST(Parse, CommentsAndRepeatedCoverLines) {
  const auto l = load_fixture("b8.lat");
  EXPECT_EQ(l.size(), 8u);
  EXPECT_EQ(l.covers().size(), 12u);
  expect_lattice_axioms(l);
}

TEST(Parse, OneElementLattice) {
  const auto l = parse_lattice("lattice one\nelements 0\n", Format::Lat);
  EXPECT_EQ(l.size(), 1u);
  EXPECT_EQ(l.bottom(), l.top());
  EXPECT_TRUE(is_distributive(l).distributive);
  EXPECT_TRUE(is_decomposable(l).decomposable);
}

TEST(Parse, SizeCap) {
  std::string src = "elements";
  std::string covers = "covers";
  for (int i = 0; i < 65; ++i) {
    src += " e" + std::to_string(i);
    if (i > 0) covers += " e" + std::to_string(i - 1) + "<e" + std::to_string(i);
  }
  EXPECT_EQ(kind_of([&] { parse_lattice(src + "\n" + covers + "\n", Format::Lat); }), ErrorKind::TooLarge);
  EXPECT_EQ(kind_of([] { parse_lattice("elements 0 a 1\ncovers 0<a a<1\n", Format::Lat, 2); }), ErrorKind::TooLarge);
  EXPECT_NO_THROW(gen_named("chain:64"));
}

TEST(Parse, ClosureOfCovers) {
  const auto l = load_fixture("div12.lat");
  EXPECT_TRUE(l.leq(l.element("1"), l.element("12")));
  EXPECT_TRUE(l.leq(l.element("3"), l.element("12")));
  EXPECT_FALSE(l.leq(l.element("4"), l.element("6")));
  EXPECT_EQ(l.meet(l.element("4"), l.element("6")), l.element("2"));
  EXPECT_EQ(l.join(l.element("4"), l.element("3")), l.element("12"));
}

TEST(Io, JsonAndTextAgree) {
  const auto text = load_fixture("div12.lat");
  const auto json = load_fixture("div12.json");
  EXPECT_EQ(text, json);
  EXPECT_EQ(parse_lattice(emit_lattice(text, Format::Json), Format::Json), text);
  EXPECT_EQ(parse_lattice(emit_lattice(text, Format::Lat), Format::Lat), text);
}

TEST(Io, JsonEmissionIsStable) {
  const auto l = load_fixture("b4.lat");
  const auto once = emit_lattice(l, Format::Json);
  EXPECT_EQ(emit_lattice(parse_lattice(once, Format::Json), Format::Json), once);
  EXPECT_LT(once.find("\"covers\""), once.find("\"elements\""));
  EXPECT_LT(once.find("\"elements\""), once.find("\"name\""));
}

TEST(Io, PosetRoundTrip) {
  const auto p = parse_poset(read_file(fixture("ds4.poset")));
  EXPECT_EQ(p.name, "DS4");
  EXPECT_EQ(p.size(), 4u);
  EXPECT_EQ(parse_poset(emit_poset(p)), p);
  EXPECT_THROW(parse_poset("poset x\nelements p q\nrelations p<q q<p\n"), Error);
}

TEST(Distributivity, Boolean) { EXPECT_TRUE(is_distributive(load_fixture("b4.lat")).distributive); }

TEST(Distributivity, DiamondFailsWithinAtoms) {
  const auto l = load_fixture("m3.lat");
  const auto r = is_distributive(l);
  ASSERT_FALSE(r.distributive);
  ASSERT_TRUE(r.counterexample);
  const Mask atoms = set_of(l, {"a", "b", "c"});
  for (Elem e : *r.counterexample) EXPECT_TRUE(has(atoms, e));
  const auto [a, b, c] = *r.counterexample;
  EXPECT_NE(l.meet(a, l.join(b, c)), l.join(l.meet(a, b), l.meet(a, c)));
}

TEST(Distributivity, PentagonFails) {
  const auto l = load_fixture("n5.lat");
  const auto r = is_distributive(l);
  ASSERT_FALSE(r.distributive);
  const auto [a, b, c] = *r.counterexample;
  EXPECT_NE(l.meet(a, l.join(b, c)), l.join(l.meet(a, b), l.meet(a, c)));
}

TEST(Distributivity, DualIdentityAgrees) {
  for (const char* f : {"b4.lat", "m3.lat", "n5.lat", "div12.lat", "b4plus1.lat", "c3.lat", "b8.lat"}) {
    const auto l = load_fixture(f);
    EXPECT_EQ(is_distributive(l).distributive, is_distributive_dual(l).distributive) << f;
  }
}

TEST(Decomposability, BooleanWitness) {
  const auto l = load_fixture("b4.lat");
  const auto r = is_decomposable(l);
  ASSERT_TRUE(r.decomposable);
  ASSERT_EQ(r.witnesses.size(), 1u);
  EXPECT_EQ(r.witnesses[0], (DecompositionWitness{l.element("a"), l.element("b"), l.element("a"), l.element("b")}));
}

TEST(Decomposability, Div12Witness) {
  const auto l = load_fixture("div12.lat");
  const auto r = is_decomposable(l);
  ASSERT_TRUE(r.decomposable);
  const Elem four = l.element("4");
  const Elem six = l.element("6");
  const auto it = std::find_if(r.witnesses.begin(), r.witnesses.end(),
                               [&](const DecompositionWitness& w) { return w.a == four && w.b == six; });
  ASSERT_NE(it, r.witnesses.end());
  EXPECT_EQ(it->abar, four);
  EXPECT_EQ(it->bbar, l.element("3"));
  for (const auto& w : r.witnesses) {
    const Elem m = l.meet(w.a, w.b);
    EXPECT_EQ(l.join(w.abar, m), w.a);
    EXPECT_EQ(l.join(w.bbar, m), w.b);
    EXPECT_EQ(l.meet(w.abar, w.bbar), l.bottom());
  }
}

TEST(Decomposability, DownsetsOfDs4Fail) {
  const auto l = downset_lattice(parse_poset(read_file(fixture("ds4.poset"))));
  ASSERT_EQ(l.size(), 8u);
  const auto r = is_decomposable(l);
  EXPECT_TRUE(r.distributive);
  EXPECT_FALSE(r.decomposable);
  ASSERT_TRUE(r.counterexample);
  const Elem ps = l.element("p+s");
  const Elem pqr = l.element("p+q+r");
  EXPECT_FALSE(find_decomposition(l, ps, pqr).has_value());
  const auto [x, y] = *r.counterexample;
  EXPECT_FALSE(l.comparable(x, y));
  EXPECT_FALSE(find_decomposition(l, x, y).has_value());
}

TEST(Decomposability, NonDistributiveReason) {
  const auto r = is_decomposable(load_fixture("m3.lat"));
  EXPECT_FALSE(r.decomposable);
  EXPECT_EQ(r.reason, "not distributive");
}

TEST(Lattice, PermutedKeepsOrder) {
  const auto l = load_fixture("div12.lat");
  const auto p = l.permuted({5, 3, 1, 0, 4, 2});
  EXPECT_EQ(p.size(), l.size());
  for (Elem i = 0; i < 6; ++i) EXPECT_EQ(p.label(i), l.label(std::vector<Elem>{5, 3, 1, 0, 4, 2}[i]));
  expect_lattice_axioms(p);
  EXPECT_TRUE(p.leq(p.element("2"), p.element("4")));
}

TEST(Lattice, UnknownElement) {
  const auto l = load_fixture("c3.lat");
  EXPECT_EQ(kind_of([&] { l.element("zz"); }), ErrorKind::UnknownElement);
}

TEST(Lattice, FormatSet) {
  const auto l = load_fixture("b4.lat");
  EXPECT_EQ(format_set(l, set_of(l, {"b", "0"})), "{0, b}");
  EXPECT_EQ(format_set(l, 0), "{}");
}
