#include <gtest/gtest.h>

#include <filesystem>
#include <string>

#include "finepoly/io.hpp"

using namespace finepoly;
namespace fs = std::filesystem;

namespace {

Rational r(const char* s) { return Rational::parse(s); }

std::string parse_error_of(const std::string& text) {
  try {
    io::parse_polytopes(text, "in.json");
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::Parse);
    return e.what();
  }
  ADD_FAILURE() << "no error for " << text;
  return {};
}

}  // namespace

TEST(Io, RationalsFromStringsAndIntegers) {
  EXPECT_EQ(io::rational_from_json(io::json("3/6"), "x"), r("1/2"));
  EXPECT_EQ(io::rational_from_json(io::json(-4), "x"), r("-4"));
  EXPECT_EQ(io::rational_from_json(io::json("123456789012345678901234567890"), "x"),
            r("123456789012345678901234567890"));
  EXPECT_THROW(io::rational_from_json(io::json(0.5), "x"), Error);
  EXPECT_THROW(io::rational_from_json(io::json("1/0"), "x"), Error);
  EXPECT_THROW(io::rational_from_json(io::json("abc"), "x"), Error);
}

TEST(Io, SingleObjectAndList) {
  auto one = io::parse_polytopes(R"({"id":"t","dim":2,"vertices":[[0,0],["1",0],[0,"1"]]})");
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].id, "t");
  EXPECT_EQ(one[0].polytope.vertices().size(), 3u);

  auto many = io::parse_polytopes(R"([{"dim":1,"vertices":[[0],[2]]},{"dim":1,"vertices":[["1/2"],[3]]}])", "dir/seg.json");
  ASSERT_EQ(many.size(), 2u);
  EXPECT_EQ(many[0].id, "seg#0");
  EXPECT_EQ(many[1].id, "seg#1");
  EXPECT_EQ(many[1].polytope.vertices()[0][0], r("1/2"));
  EXPECT_TRUE(io::parse_polytopes("[]").empty());
}

TEST(Io, SyntaxErrorsCarryLineAndColumn) {
  std::string msg = parse_error_of("{\"dim\": 2,\n \"vertices\": [[0,0],\n [1,,0]]}");
  EXPECT_NE(msg.find("in.json:3:"), std::string::npos) << msg;
}

TEST(Io, SemanticErrorsNameTheEntry) {
  EXPECT_NE(parse_error_of(R"({"vertices":[[0]]})").find("\"dim\""), std::string::npos);
  EXPECT_NE(parse_error_of(R"({"dim":2,"vertices":[]})").find("vertices"), std::string::npos);
  std::string msg = parse_error_of(R"([{"dim":2,"vertices":[[0,0]]},{"dim":2,"vertices":[[0,0],[1]]}])");
  EXPECT_NE(msg.find("entry 1 vertex 1"), std::string::npos) << msg;
  EXPECT_NE(parse_error_of(R"({"dim":1,"vertices":[["x"]]})").find("entry 0 vertex 0"), std::string::npos);
  EXPECT_NE(parse_error_of("7").find("object"), std::string::npos);
}

TEST(Io, PolytopeRoundTrip) {
  Polytope p = Polytope::from_points({QVector{r("0"), r("0")}, QVector{r("3/2"), r("0")}, QVector{r("0"), r("1")}});
  auto back = io::parse_polytopes(io::polytope_to_json(p, "tri").dump());
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].id, "tri");
  EXPECT_EQ(back[0].polytope.vertices(), p.vertices());
}

TEST(Io, Configurations) {
  auto cs = io::parse_configs(R"([{"id":"a","dim":2,"normals":[[1,0],[0,1],[-1,-1]],"eta":3},{"dim":1,"normals":[[1],[-1]]}])");
  ASSERT_EQ(cs.size(), 2u);
  EXPECT_EQ(cs[0].id, "a");
  ASSERT_TRUE(cs[0].stated_eta.has_value());
  EXPECT_EQ(*cs[0].stated_eta, Integer(3));
  EXPECT_EQ(cs[1].id, "config#1");
  EXPECT_FALSE(cs[1].stated_eta.has_value());
  EXPECT_EQ(cs[0].validated().normals.size(), 3u);

  EXPECT_THROW(io::parse_configs(R"({"dim":1,"normals":[["1/2"],[-1]]})"), Error);
  EXPECT_THROW(io::parse_configs(R"({"dim":1,"normals":[[1],[-1]],"eta":"1/2"})"), Error);
  // a non-spanning set parses; validation rejects it
  auto half = io::parse_configs(R"({"dim":1,"normals":[[1],[2]]})");
  EXPECT_THROW(half[0].validated(), Error);

  auto c = cs[0].validated();
  auto again = io::parse_configs(io::config_to_json(c, "a").dump());
  EXPECT_EQ(again[0].normals, c.normals);
}

TEST(Io, CsvQuoting) {
  EXPECT_EQ(io::csv_field("plain"), "plain");
  EXPECT_EQ(io::csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(io::csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  io::ResultRow row{"x,y", 2, r("1/3"), r("3"), 0, 3, "f.json"};
  EXPECT_EQ(io::row_to_csv(row), "\"x,y\",2,1/3,3,0,3,f.json");
  EXPECT_EQ(io::rows_to_csv({row}), std::string(io::csv_header()) + "\n\"x,y\",2,1/3,3,0,3,f.json\n");
  auto j = io::row_to_json(row);
  EXPECT_EQ(j["nF"], "1/3");
  EXPECT_EQ(j["core_normal_count"], 3);
}

TEST(Io, DirectoryLoadsSortedFiles) {
  auto all = io::load_polytopes(fs::path(FINEPOLY_DATA_DIR) / "samples");
  ASSERT_FALSE(all.empty());
  for (std::size_t i = 1; i < all.size(); ++i) EXPECT_LE(all[i - 1].source, all[i].source);
  EXPECT_EQ(all.front().id, "Delta2");
  EXPECT_THROW(io::load_polytopes("/nonexistent/file.json"), Error);
}

TEST(Io, ProfileJson) {
  Polytope tri = Polytope::from_points({QVector{r("0"), r("0")}, QVector{r("1"), r("0")}, QVector{r("0"), r("1")}});
  auto j = io::profile_to_json(fine_profile(tri));
  EXPECT_EQ(j["nF"], "1/3");
  EXPECT_EQ(j["muF"], "3");
  EXPECT_EQ(j["core_dim"], 0);
  EXPECT_EQ(j["core_vertices"], io::json::parse(R"([["1/3","1/3"]])"));
  EXPECT_EQ(j["core_normals"].size(), 3u);
}
