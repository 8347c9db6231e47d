#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli_app.hpp"

using namespace indsets;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string g6(const Graph& g) { return graph6::encode(g); }

}  // namespace

TEST(Cli, KeyValueTranslation) {
  const auto v = cli::translate_key_values({"verify", "check=size_t", "--n", "5", "max_classes=9", "--x=1"});
  const std::vector<std::string> want{"verify", "--check", "size_t", "--n", "5", "--max-classes", "9", "--x=1"};
  EXPECT_EQ(v, want);
}

TEST(Cli, CountSingleSize) {
  const auto r = invoke({"count", "--t", "3"}, g6(complete_bipartite(2, 3)) + "\n");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1\n");
}

TEST(Cli, CountAllVector) {
  const auto r = invoke({"count", "--all"}, g6(cycle(5)) + "\n\n" + g6(path(3)) + "\n");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1,5,5 total=11\n1,3,1 total=5\n");
}

TEST(Cli, CountJson) {
  const auto r = invoke({"count", "format=json"}, g6(complete_graph(3)) + "\n");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["total"], 4);
  EXPECT_EQ(j["counts"], nlohmann::json::array({1, 3}));
}

TEST(Cli, MalformedLineReportsLineNumber) {
  const auto r = invoke({"count"}, g6(cycle(5)) + "\n" + "D]o\n" + "bad!\n");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, ConstructFamilies) {
  EXPECT_EQ(invoke({"construct", "family=windmill", "n=7"}).out, g6(windmill(7)) + "\n");
  const auto k221 = graph6::decode(invoke({"construct", "family=conjecture_multipartite", "n=5", "delta=3"}).out);
  EXPECT_TRUE(canonical_form(k221) == canonical_form(complete_multipartite({{2, 2, 1}})));
  EXPECT_EQ(invoke({"construct", "family=multipartite", "parts=1,2,3"}).out,
            g6(complete_multipartite({{1, 2, 3}})) + "\n");
  const std::vector<Edge> inside{{0, 1}};
  EXPECT_EQ(invoke({"construct", "family=extremal_plus", "delta=3", "n=7", "inside=0-1"}).out,
            g6(extremal_plus_inside_edges(3, 7, inside)) + "\n");
  EXPECT_EQ(invoke({"construct", "family=disjoint_union", "of=" + g6(cycle(3)) + "," + g6(path(2))}).out,
            g6(disjoint_union(cycle(3), path(2))) + "\n");
}

TEST(Cli, ConstructErrors) {
  EXPECT_EQ(invoke({"construct", "family=cycle", "k=2"}).code, 2);
  EXPECT_EQ(invoke({"construct", "family=complete_bipartite", "a=2"}).code, 2);
  EXPECT_EQ(invoke({"construct", "family=nope"}).code, 2);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
  EXPECT_EQ(invoke({}).code, 2);
}

TEST(Cli, RoundTripConstructIntoCount) {
  const auto built = invoke({"construct", "family=complete_bipartite", "a=3", "b=4"});
  ASSERT_EQ(built.code, 0);
  const auto r = invoke({"count", "t=3"}, built.out);
  EXPECT_EQ(r.out, "5\n");  // C(3,3) + C(4,3)
}

TEST(Cli, CriticalReports) {
  auto one = [](const std::string& out) { return nlohmann::json::parse(out); };
  const auto c7 = one(invoke({"critical", "delta=2", "--decompose"}, g6(cycle(7)) + "\n").out);
  EXPECT_EQ(c7["schema"], "indsets.critical/1");
  EXPECT_EQ(c7["decomposition"]["kind"], "Cycle");

  // two triangles sharing a vertex both ends of the split path meet
  const Graph bowtie = Graph::from_edge_list(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}});
  const auto b = one(invoke({"critical", "delta=2", "--decompose"}, g6(bowtie) + "\n").out);
  EXPECT_EQ(b["decomposition"]["kind"], "PathSplit");
  EXPECT_EQ(b["decomposition"]["v1"], b["decomposition"]["v2"]);

  const auto k23 = one(invoke({"critical", "delta=2"}, g6(complete_bipartite(2, 3)) + "\n").out);
  EXPECT_EQ(k23["edge_critical"], true);
  EXPECT_EQ(k23["vertex_critical"], false);
  EXPECT_FALSE(k23["vertex_witness"].is_null());
}

TEST(Cli, CriticalRejectsWrongMinimumDegree) {
  const auto r = invoke({"critical", "delta=3"}, g6(cycle(5)) + "\n");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 1"), std::string::npos);
}

TEST(Cli, Enumerate) {
  const auto k4 = invoke({"enumerate", "n=4", "delta=3"});
  EXPECT_EQ(k4.code, 0);
  EXPECT_EQ(k4.out, g6(complete_graph(4)) + "\n");
  EXPECT_EQ(invoke({"enumerate", "n=6", "--count"}).out, "156\n");
  EXPECT_EQ(invoke({"enumerate", "n=7", "delta=2", "--connected", "--critical", "--count"}).code, 0);

  std::uint64_t sharded = 0;
  for (int i = 0; i < 3; ++i) {
    sharded += std::stoull(
        invoke({"enumerate", "n=6", "delta=2", "--count", "shard-index=" + std::to_string(i), "shard-count=3"}).out);
  }
  EXPECT_EQ(std::to_string(sharded) + "\n", invoke({"enumerate", "n=6", "delta=2", "--count"}).out);
}

TEST(Cli, EnumerateBudgets) {
  EXPECT_EQ(invoke({"enumerate", "n=11", "--count"}).code, 3);
  EXPECT_EQ(invoke({"enumerate", "n=10", "--count"}).code, 3);
  EXPECT_EQ(invoke({"enumerate", "n=7", "--count", "max-classes=5"}).code, 3);
}

TEST(Cli, VerifyHolds) {
  const auto r = invoke({"verify", "check=size_t", "n=5", "delta=2", "t=3", "--no-runtime"});
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["verdict"], "holds");
  EXPECT_EQ(j["achiever_count"], 2);
  EXPECT_EQ(j["outcome"], "met");
  EXPECT_FALSE(j.contains("runtime_seconds"));
}

TEST(Cli, VerifyExpectations) {
  // t = 2 lies outside the proven range and the bound fails there
  EXPECT_EQ(invoke({"verify", "check=size_t", "n=6", "delta=2", "t=2", "expect=violated"}).code, 0);
  EXPECT_EQ(invoke({"verify", "check=size_t", "n=6", "delta=2", "t=2"}).code, 1);
  const auto explore = invoke({"verify", "check=size_t", "n=6", "delta=2", "t=2", "expect=explore"});
  EXPECT_EQ(explore.code, 0);
  EXPECT_EQ(nlohmann::json::parse(explore.out)["outcome"], "finding");
}

TEST(Cli, VerifyCsvAndErrors) {
  const auto r = invoke({"verify", "check=total_count", "n=6", "delta=2", "format=csv"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind(csv_header() + "\n", 0), 0u);
  EXPECT_EQ(invoke({"verify", "check=size_t", "n=5", "delta=2"}).code, 2);  // t missing
  EXPECT_EQ(invoke({"verify", "check=unknown", "n=5"}).code, 2);
}

TEST(Cli, VerifyParallelMatchesSerial) {
  const std::vector<std::string> base{"verify", "check=equality_class", "n=8", "delta=3", "t=4", "--no-runtime"};
  auto parallel = base;
  parallel.push_back("jobs=4");
  EXPECT_EQ(invoke(base).out, invoke(parallel).out);
}

TEST(Cli, SuiteFromStdinAndFile) {
  const std::string config = R"({"checks": [
    {"check": "size_t", "n": {"from": 5, "to": 7}, "delta": 2, "t": {"from": 3, "to": "n-2"}},
    {"check": "size_t", "n": 6, "delta": 2, "t": 2, "expect": "violated"}]})";
  const auto r = invoke({"suite", "config=-", "--no-runtime"}, config);
  EXPECT_EQ(r.code, 0) << r.out;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["summary"]["met"], 7);

  const auto dir = std::filesystem::temp_directory_path();
  const auto path = (dir / "indsets_cli_suite.json").string();
  const auto csv = (dir / "indsets_cli_suite.csv").string();
  std::ofstream(path) << config;
  const auto f = invoke({"suite", "config=" + path, "csv=" + csv, "--no-runtime"});
  EXPECT_EQ(f.out, r.out);
  std::ifstream csv_in(csv);
  int lines = 0;
  for (std::string line; std::getline(csv_in, line);) ++lines;
  EXPECT_EQ(lines, 8);
  std::remove(path.c_str());
  std::remove(csv.c_str());
}

TEST(Cli, SuiteErrors) {
  EXPECT_EQ(invoke({"suite", "config=-"}, "{not json").code, 2);
  EXPECT_EQ(invoke({"suite", "config=-"}, R"({"checks": [{"check": "nope"}]})").code, 2);
  EXPECT_EQ(invoke({"suite", "config=/nonexistent/x.json"}).code, 2);
  const auto fail = invoke({"suite", "config=-"}, R"({"checks": [{"check": "size_t", "n": 6, "delta": 2, "t": 2}]})");
  EXPECT_EQ(fail.code, 1);
}

TEST(Cli, OutputFile) {
  const auto file = (std::filesystem::temp_directory_path() / "indsets_cli_out.g6").string();
  EXPECT_EQ(invoke({"construct", "family=path", "k=4", "output=" + file}).code, 0);
  std::ifstream in(file);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, g6(path(4)));
  std::remove(file.c_str());
}
