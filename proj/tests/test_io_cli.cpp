#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "fixtures.hpp"
#include "quandle/cli.hpp"

using namespace quandle;
using namespace quandle::test;
namespace fs = std::filesystem;

namespace {

std::string data(const std::string& name) {
  return std::string(QUANDLE_TEST_DATA) + "/" + name;
}

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("quandle-test-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& p, const std::string& body) {
  std::ofstream(p, std::ios::binary) << body;
}

struct EnvGuard {
  explicit EnvGuard(const char* value) { setenv("QUANDLE_MAX_ORDER", value, 1); }
  ~EnvGuard() { unsetenv("QUANDLE_MAX_ORDER"); }
};

} // namespace

TEST(Json, QuandleRoundTrip) {
  for (int n = 1; n <= 4; ++n)
    for (const auto& q : census(n).tables) {
      auto raw = io::raw_quandle_from_json(io::to_json(q));
      EXPECT_EQ(raw.order, n);
      EXPECT_EQ(raw.table, q.table());
    }
}

TEST(Json, PermutationAndGroup) {
  auto p = cyc(4, {{0, 2}, {1, 3}});
  EXPECT_EQ(io::permutation_from_json(io::to_json(p)), p);
  auto s4 = symmetric_group(4);
  EXPECT_EQ(io::group_from_json(io::to_json(s4)), s4);
  EXPECT_THROW(io::permutation_from_json(io::json::parse("[0, 0]")), ParseError);
  EXPECT_THROW(io::permutation_from_json(io::json::parse("[]")), ParseError);
  EXPECT_THROW(io::permutation_from_json(io::json::parse("[0, \"1\"]")),
               ParseError);
}

TEST(Json, GridAndJsonAgree) {
  auto a = io::read_quandle(data("t3.json"));
  auto b = io::read_quandle(data("t3_grid.txt"));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, tait_quandle());
}

TEST(Json, MalformedInputs) {
  EXPECT_THROW(io::parse_quandle_text(""), ParseError);
  EXPECT_THROW(io::parse_quandle_text("{\"order\": 2}"), ParseError);
  EXPECT_THROW(io::parse_quandle_text("2\n0 0\n1"), ParseError);
  EXPECT_THROW(io::parse_quandle_text("2\n0 0\n1 1 5"), ParseError);
  EXPECT_THROW(io::parse_quandle_text("{\"order\": 1, \"table\": [[0.5]]}"),
               ParseError);
  EXPECT_THROW(io::read_quandle(data("malformed.json")), ParseError);
  EXPECT_THROW(io::read_quandle(data("does-not-exist.json")), ParseError);
  EXPECT_THROW(io::read_quandle(data("not_idempotent.json")), InvalidQuandle);
}

TEST(Json, MeshRoundTrip) {
  auto d = decompose(io::read_quandle(data("mixed5.json")));
  auto raw = io::raw_mesh_from_json(io::to_json(d));
  ASSERT_TRUE(raw.layout);
  EXPECT_EQ(*raw.layout, d.layout);
  auto mesh = validate_mesh(raw.blocks, raw.homs);
  EXPECT_EQ(semidisjoint_union(mesh, *raw.layout), d.recompose());
}

TEST(Json, CensusEntryShape) {
  auto entries = enumerate_connected(3);
  auto j = io::to_json(entries);
  ASSERT_EQ(j.size(), 1u);
  EXPECT_EQ(j[0]["inner_order"], 6);
  EXPECT_EQ(j[0]["seed"]["group_order"], 6);
  EXPECT_EQ(j[0]["seed"]["stabilizer_order"], 2);
  EXPECT_TRUE(j[0]["quandle"].contains("table"));
}

TEST(Cli, ValidateTait) {
  auto r = run({"validate", data("t3.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "valid quandle of order 3\n");
  EXPECT_EQ(run({"validate", data("t3_grid.txt")}).code, 0);
}

TEST(Cli, ValidateReportsViolations) {
  auto r = run({"validate", data("not_idempotent.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("IdempotenceViolation(0)"), std::string::npos);
}

TEST(Cli, InfoTrivialFour) {
  auto r = run({"info", data("trivial4.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "order: 4\norbits: {0}{1}{2}{3}\nconnected: false\n|Inn|: 1\n"
            "|Aut|: 24\n");
}

TEST(Cli, Iso) {
  auto dir = scratch("iso");
  // swap_column relabeled by (0 2): the (0 1)-column becomes column 0
  // acting on {1, 2}.
  auto q = relabel(swap_column_quandle(), cyc(3, {{0, 2}}));
  write(dir / "r.json", io::to_json(q).dump());
  auto r = run({"iso", data("swap_column.json"), (dir / "r.json").string()});
  EXPECT_EQ(r.code, 0);
  auto w = find_isomorphism(swap_column_quandle(), q);
  ASSERT_TRUE(w);
  EXPECT_EQ(r.out, w->to_string() + "\n");

  auto n = run({"iso", data("t3.json"), data("swap_column.json")});
  EXPECT_EQ(n.code, 1);
  EXPECT_EQ(n.out, "non-isomorphic\n");
}

TEST(Cli, DecomposeComposeByteEqual) {
  auto dir = scratch("decompose");
  for (const char* name : {"mixed5.json", "swap_column.json", "trivial4.json",
                           "t3.json"}) {
    auto d = run({"decompose", data(name)});
    ASSERT_EQ(d.code, 0) << d.err;
    write(dir / "mesh.json", d.out);
    auto c = run({"compose", (dir / "mesh.json").string()});
    ASSERT_EQ(c.code, 0) << c.err;
    auto canonical = io::json::parse(io::read_file(data(name))).dump() + "\n";
    EXPECT_EQ(c.out, canonical) << name;
  }
}

TEST(Cli, DecomposeTree) {
  auto r = run({"decompose", "--tree", data("swap_column.json")});
  EXPECT_EQ(r.code, 0);
  auto j = io::json::parse(r.out);
  EXPECT_FALSE(j["leaf"].get<bool>());
  EXPECT_EQ(j["children"].size(), 2u);
  EXPECT_FALSE(j["children"][0]["leaf"].get<bool>());
  EXPECT_TRUE(j["children"][1]["leaf"].get<bool>());
  EXPECT_EQ(run({"tree", data("swap_column.json")}).out, r.out);
}

TEST(Cli, ComposeMeshFiles) {
  auto ok = run({"compose", data("swap_mesh.json")});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.out, io::to_json(swap_column_quandle()).dump() + "\n");
  auto bad = run({"compose", data("bad_mesh.json")});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("Condition1Violation"), std::string::npos);
}

TEST(Cli, CensusOrderThree) {
  auto r = run({"census", "--order", "3", "--check"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("structure: 1 connected classes"), std::string::npos);
  EXPECT_NE(r.out.find("brute: 3 classes, 1 connected"), std::string::npos);
  EXPECT_TRUE(r.out.ends_with("match\n"));
}

TEST(Cli, EnumerateWritesFiles) {
  auto dir = scratch("enumerate");
  auto s = run({"enumerate", "--order", "4", "--connected", "--out",
                dir.string()});
  ASSERT_EQ(s.code, 0) << s.err;
  auto j = io::json::parse(io::read_file((dir / "order-4.json").string()));
  EXPECT_EQ(j.size(), 1u);
  EXPECT_EQ(j[0]["inner_order"], 12);

  auto b = run({"enumerate", "--order", "4", "--method", "brute", "--out",
                dir.string()});
  ASSERT_EQ(b.code, 0);
  auto all = io::json::parse(io::read_file((dir / "order-4.json").string()));
  EXPECT_EQ(all.size(), 7u);

  auto nf = run({"enumerate", "--order", "5", "--connected", "--no-filters",
                 "--out", dir.string()});
  ASSERT_EQ(nf.code, 0);
  EXPECT_EQ(io::json::parse(io::read_file((dir / "order-5.json").string())).size(),
            3u);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"validate"}).code, 2);
  EXPECT_EQ(run({"validate", data("t3.json"), "--bogus"}).code, 2);
  EXPECT_EQ(run({"census", "--order", "3"}).code, 2);
  EXPECT_EQ(run({"census", "--order", "x", "--check"}).code, 2);
  EXPECT_EQ(run({"census", "--order", "7", "--check"}).code, 2);
  EXPECT_EQ(run({"enumerate", "--order", "3", "--out", "/tmp"}).code, 2);
  EXPECT_EQ(run({"enumerate", "--order", "3", "--method", "magic",
                 "--connected", "--out", "/tmp"}).code,
            2);
}

TEST(Cli, MalformedInput) {
  EXPECT_EQ(run({"validate", data("malformed.json")}).code, 3);
  EXPECT_EQ(run({"info", data("does-not-exist.json")}).code, 3);
  EXPECT_EQ(run({"compose", data("malformed.json")}).code, 3);
}

TEST(Cli, MaxOrderEnvironment) {
  {
    EnvGuard env("9");
    auto r = run({"census", "--order", "3", "--check"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("refused"), std::string::npos);
  }
  {
    EnvGuard env("3");
    EXPECT_EQ(run({"census", "--order", "4", "--check"}).code, 2);
    EXPECT_EQ(run({"census", "--order", "3", "--check"}).code, 0);
  }
}

TEST(Cli, DeterministicAcrossThreads) {
  auto a = run({"census", "--order", "4", "--check"});
  auto b = run({"-j", "3", "census", "--order", "4", "--check"});
  auto c = run({"census", "--order", "4", "--check"});
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
  auto d1 = run({"decompose", "--tree", data("mixed5.json")});
  auto d2 = run({"decompose", "--tree", data("mixed5.json")});
  EXPECT_EQ(d1.out, d2.out);
}
