#include <gtest/gtest.h>

#include <sstream>

#include "latkit/cli.hpp"
#include "support.hpp"

using namespace latkit;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

const std::vector<std::string> kLatticeFixtures = {"c3.lat", "b4.lat", "div12.lat", "div12.json", "b4plus1.lat",
                                                   "b8.lat", "m3.lat", "n5.lat"};

}  // namespace

TEST(ExitCodes, Table) {
  EXPECT_EQ(cli({"analyze", fixture("cycle.lat")}).code, 2);
  EXPECT_EQ(cli({"analyze", fixture("antichain.lat")}).code, 2);
  EXPECT_EQ(cli({"analyze", fixture("bowtie.lat")}).code, 2);
  EXPECT_EQ(cli({"analyze", fixture("syntax.lat")}).code, 2);
  EXPECT_EQ(cli({"analyze", fixture("m3.lat"), "--audit", "all"}).code, 3);
  EXPECT_EQ(cli({"audit", fixture("m3.lat")}).code, 3);
  EXPECT_EQ(cli({"analyze", fixture("div12.lat")}).code, 0);
  EXPECT_EQ(cli({"analyze", fixture("missing.lat")}).code, 1);
  EXPECT_EQ(cli({"frobnicate"}).code, 1);
  EXPECT_EQ(cli({}).code, 1);
  EXPECT_EQ(cli({"audit", fixture("div12.lat"), "--theorems", "X1"}).code, 1);
}

TEST(ExitCodes, NonDecomposableAnalyzeStillReports) {
  const auto r = cli({"analyze", fixture("m3.lat")});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_FALSE(j["decomposability"]["decomposable"].get<bool>());
  EXPECT_FALSE(j["distributivity"]["distributive"].get<bool>());
  EXPECT_TRUE(j["classes"].is_null());
}

TEST(Audit, UnexpectedFailureExits4) {
  const auto r = cli({"audit", fixture("div12.lat"), "--manifest", fixture("empty_manifest.json")});
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(r.err.find("T7.2"), std::string::npos);
  EXPECT_EQ(cli({"audit", fixture("div12.lat")}).code, 0);
  EXPECT_EQ(cli({"audit", fixture("b8.lat"), "--manifest", fixture("empty_manifest.json")}).code, 0);
}

TEST(Audit, SelectedTheorems) {
  const auto r = cli({"audit", fixture("c3.lat"), "--theorems", "T7.2,L3.1"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[0]["theorem_id"], "T7.2");
  EXPECT_EQ(j[0]["verdict"], "fails");
  EXPECT_EQ(j[1]["verdict"], "holds");
}

TEST(RoundTrip, EmitParseOnAllFixtures) {
  for (const auto& name : kLatticeFixtures) {
    const auto l = load_fixture(name);
    EXPECT_EQ(parse_lattice(emit_lattice(l, Format::Json), Format::Json), l) << name;
    EXPECT_EQ(parse_lattice(emit_lattice(l, Format::Lat), Format::Lat), l) << name;
  }
}

TEST(RoundTrip, AnalysisDocumentJsonAndText) {
  for (const auto& name : kLatticeFixtures) {
    const auto json_run = cli({"analyze", fixture(name)});
    ASSERT_EQ(json_run.code, 0) << name;
    const auto doc = document_from_json(json_run.out);
    EXPECT_EQ(to_json_text(doc), json_run.out) << name;
    const auto text_run = cli({"analyze", fixture(name), "--text"});
    ASSERT_EQ(text_run.code, 0) << name;
    EXPECT_EQ(document_from_text(text_run.out), doc) << name;
  }
}

TEST(RoundTrip, JsonFixtureMatchesLat) {
  EXPECT_TRUE(same_structure(load_fixture("div12.json"), load_fixture("div12.lat")));
}

TEST(Golden, ByteExact) {
  for (const char* name : {"div12", "b4plus1", "b8"}) {
    const auto r = cli({"analyze", fixture(std::string(name) + ".lat"), "--audit", "all"});
    ASSERT_EQ(r.code, 0) << name;
    EXPECT_EQ(r.out, read_file(fixture(std::string("golden/") + name + ".json"))) << name;
  }
}

TEST(Golden, Div12Content) {
  const auto j = nlohmann::json::parse(read_file(fixture("golden/div12.json")));
  EXPECT_EQ(j["ideals"]["count"], 6);
  EXPECT_EQ(j["ideals"]["primes"], nlohmann::json({{"1", "3"}, {"1", "2", "4"}, {"1", "2", "3", "6"}}));
  EXPECT_EQ(j["ideals"]["minimal_primes"].size(), 2u);
  for (const auto& e : j["values"]["per_element"]) {
    if (e["element"] == "6" || e["element"] == "12") {
      EXPECT_EQ(e["count"], 2);
    }
  }
  EXPECT_TRUE(j["classes"]["b"].get<bool>());
  EXPECT_TRUE(j["classes"]["t"].get<bool>());
  EXPECT_TRUE(j["classes"]["consistent"].get<bool>());
  EXPECT_FALSE(j["classes"]["a"].get<bool>());
}

TEST(Golden, PlusTopContent) {
  const auto j = nlohmann::json::parse(read_file(fixture("golden/b4plus1.json")));
  EXPECT_FALSE(j["classes"]["t"].get<bool>());
  EXPECT_EQ(j["classes"]["non_projectable"], "a");
  EXPECT_FALSE(j["classes"]["b"].get<bool>());
  EXPECT_FALSE(j["classes"]["consistent"].get<bool>());
  EXPECT_EQ(j["classes"]["inconsistent_pair"], nlohmann::json({"1", "t"}));
  EXPECT_EQ(j["values"]["radical"], nlohmann::json({"0"}));
  EXPECT_EQ(j["values"]["essential_values"].size(), 3u);
}

TEST(Golden, CubeContent) {
  const auto j = nlohmann::json::parse(read_file(fixture("golden/b8.json")));
  EXPECT_EQ(j["polars"]["basis"], nlohmann::json({"p", "q", "r"}));
  EXPECT_EQ(j["polars"]["polars"].size(), 8u);
  ASSERT_EQ(j["ultrafilters"].size(), 3u);
  for (const auto& u : j["ultrafilters"]) EXPECT_FALSE(u["principal_generator"].is_null());
  EXPECT_EQ(j["ideals"]["primes"], j["ideals"]["minimal_primes"]);
  EXPECT_EQ(j["ideals"]["primes"].size(), 3u);
}

TEST(Gen, EmitsParsableLattices) {
  const auto r = cli({"gen", "divisor:12", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(same_structure(parse_lattice(r.out, Format::Json), load_fixture("div12.lat")));
  EXPECT_EQ(cli({"gen", "chain:0"}).code, 1);
  EXPECT_EQ(cli({"gen", "boolean:7"}).code, 1);
  EXPECT_EQ(cli({"gen", "chain:3", "--format", "xml"}).code, 1);
}

TEST(Gen, Posets) {
  const auto r = cli({"gen", "posets:3"});
  ASSERT_EQ(r.code, 0);
  std::size_t blocks = 1;
  for (std::size_t at = r.out.find("\n\n"); at != std::string::npos; at = r.out.find("\n\n", at + 2)) ++blocks;
  EXPECT_EQ(blocks, 5u);
}

TEST(Sweep, SmallAndCapped) {
  auto r = cli({"sweep", "--max-poset", "1"});
  EXPECT_EQ(r.code, 0) << r.err;
  r = cli({"sweep", "--max-poset", "3", "--text"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("T7.2"), std::string::npos);
  EXPECT_EQ(cli({"sweep", "--max-poset", "9"}).code, 1);
  EXPECT_EQ(cli({"sweep"}).code, 1);
}

TEST(Sweep, MissingExpectedFailureExits4) {
  const auto r = cli({"sweep", "--max-poset", "2", "--theorems", "T7.2", "--manifest", fixture("empty_manifest.json")});
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(r.err.find("039b80"), std::string::npos);
}

TEST(Eval, PrintsValues) {
  const auto r = cli({"eval", fixture("b4.lat"), "polar({a})"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{0, b}\n");
  EXPECT_EQ(cli({"eval", fixture("b4.lat"), "polar(a)"}).code, 1);
}

TEST(Manifest, CheckedInCopyMatchesDefault) {
  EXPECT_EQ(nlohmann::json::parse(read_file(std::string(LATKIT_DATA) + "/expected_failures.json")),
            nlohmann::json::parse(kDefaultManifest));
}

TEST(Manifest, RejectsUnknownTheorem) {
  EXPECT_THROW(parse_manifest(R"({"expected_failures":[{"theorem":"Z1","lattices":"any"}]})"), Error);
  EXPECT_THROW(parse_manifest("{"), Error);
}

TEST(Env, ElementCap) {
  ::setenv("LATKIT_MAX_N", "4", 1);
  const auto r = cli({"analyze", fixture("div12.lat")});
  ::unsetenv("LATKIT_MAX_N");
  EXPECT_EQ(r.code, 1);
  ::setenv("LATKIT_MAX_N", "zero", 1);
  EXPECT_EQ(cli({"analyze", fixture("b4.lat")}).code, 1);
  ::unsetenv("LATKIT_MAX_N");
}
