#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "regconst/cli.hpp"
#include "regconst/error.hpp"
#include "regconst/io.hpp"

using namespace regconst;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(REGCONST_FIXTURE_DIR) + "/" + name; }

std::string write_temp(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("regconst_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

bool single_error_line(const Result& r, const std::string& category) {
  return r.code == kExitError && r.out.empty() && r.err.rfind("error:" + category + ":", 0) == 0 &&
         std::count(r.err.begin(), r.err.end(), '\n') == 1;
}

}  // namespace

TEST_CASE("relations of elemab:3,2 in json") {
  const auto r = call({"relations", "elemab:3,2", "--json"});
  REQUIRE(r.code == 0);
  const Json doc = Json::parse(r.out);
  CHECK(doc["command"] == "relations");
  REQUIRE(doc["basis"].size() == 1);
  std::map<std::string, std::int64_t> coeffs;
  for (const auto& t : doc["basis"][0]) coeffs[t["class"].get<std::string>()] = t["coeff"].get<std::int64_t>();
  CHECK(coeffs == std::map<std::string, std::int64_t>{
                      {"o1#1", 1}, {"o3#1", -1}, {"o3#2", -1}, {"o3#3", -1}, {"o3#4", -1}, {"o9#1", 3}});
  CHECK(doc["bouc_spans_basis"] == true);
}

TEST_CASE("regconst of A over elemab:3,2") {
  const auto r = call({"regconst", "elemab:3,2", "A", "--all"});
  CHECK(r.code == 0);
  CHECK(r.out.find("9/1") != std::string::npos);
  const auto j = call({"regconst", "elemab:3,2", "A", "--json"});
  const Json doc = Json::parse(j.out);
  CHECK(doc["results"][0]["value"] == "9/1");
  CHECK(doc["results"][0]["valuations"]["3"] == 2);
  const auto z = call({"--json", "regconst", "elemab:2,2", "Z", "--relation", "o1#1:1,o2#1:-1,o2#2:-1,o2#3:-1,o4#1:2"});
  REQUIRE(z.code == 0);
  CHECK(Json::parse(z.out)["results"][0]["value"] == "1/2");
  const auto sum = call({"regconst", "elemab:2,2", "Sum(A, I) + Z^2 + Coset(o2#1)", "--json"});
  REQUIRE(sum.code == 0);
  CHECK(Json::parse(sum.out)["results"][0]["value"] == "1/4");
}

TEST_CASE("check-units fixtures") {
  CHECK(call({"check-units", fixture("elemab32_good.json")}).code == 0);
  CHECK(call({"check-units", fixture("elemab32_bad.json")}).code == 1);
  CHECK(call({"check-units", fixture("elemab32_good.json"), "--bouc"}).code == 0);
  CHECK(call({"check-units", fixture("elemab32_bad.json"), "--bouc"}).code == 1);
  CHECK(call({"check-units", fixture("elemab32_good.json"), "--p-part"}).code == 0);
  CHECK(call({"check-units", fixture("elemab32_bad.json"), "--candidate", "tower:1"}).code == 0);
  CHECK(call({"check-units", fixture("elemab32_bad.json"), "--candidate", "tower:2", "--p-part"}).code == 0);
  const auto j = call({"check-units", fixture("elemab32_bad.json"), "--json"});
  const Json doc = Json::parse(j.out);
  CHECK(doc["overall"] == false);
  CHECK(doc["minkowski_factor"]["relations"][0]["residual"] == "9/1");
  CHECK(call({"bk-check", fixture("elemab32_good.json")}).code == 0);
}

TEST_CASE("other subcommands") {
  CHECK(call({"group", "dihedral:8"}).out.find("o4#3") != std::string::npos);
  const Json g = Json::parse(call({"group", "perm:[(0,1),(1,2)]", "--json"}).out);
  CHECK(g["order"] == 6);
  CHECK(g["subgroup_classes"].size() == 4);
  CHECK(call({"bouc", "dihedral:16"}).code == 0);
  CHECK(call({"bouc", "heisenberg:3", "--p", "3"}).code == 0);
  CHECK(call({"factorizable", "elemab:2,2", "--order"}).code == 1);
  CHECK(call({"factorizable", "elemab:2,2", "--characters", "1,2,3/2,5"}).code == 0);
  CHECK(call({"factorizable", "cyclic:4", "--values", "o1#1:1,o2#1:2,o4#1:7/3"}).code == 0);
  CHECK(call({"index-check", "elemab:2,2", "Reg", "--scale", "2"}).code == 0);
  CHECK(call({"index-check", "elemab:3,2", "A", "--scale", "3"}).code == 0);
  const auto help = call({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("check-units") != std::string::npos);
}

TEST_CASE("error paths") {
  CHECK(single_error_line(call({"group", "heisenberg:4"}), "validation"));
  CHECK(single_error_line(call({"group", "cyclic:3*"}), "syntax"));
  CHECK(single_error_line(call({"group", "cyclic:1000"}), "resource"));
  CHECK(single_error_line(call({"frobnicate"}), "usage"));
  CHECK(single_error_line(call({}), "usage"));
  CHECK(single_error_line(call({"regconst", "elemab:2,2"}), "usage"));
  CHECK(single_error_line(call({"regconst", "elemab:2,2", "Q"}), "syntax"));
  CHECK(single_error_line(call({"regconst", "elemab:2,2", "Coset(o9#1)"}), "validation"));
  CHECK(single_error_line(call({"regconst", "elemab:2,2", "A", "--relation", "o1#1:1"}), "validation"));
  CHECK(single_error_line(call({"bouc", "symmetric:3"}), "validation"));
  CHECK(single_error_line(call({"factorizable", "symmetric:3", "--order"}), "validation"));
  CHECK(single_error_line(call({"factorizable", "cyclic:4", "--values", "o1#1:1"}), "validation"));
  CHECK(single_error_line(call({"factorizable", "cyclic:4"}), "usage"));
  CHECK(single_error_line(call({"check-units", "/nonexistent/profile.json"}), "io"));
  CHECK(single_error_line(call({"check-units", write_temp("broken.json", "{\"group\": ")}), "syntax"));
  CHECK(single_error_line(call({"index-check", "elemab:2,2", "Reg", "--scale", "0"}), "validation"));

  const auto unknown = call({"check-units", write_temp("label.json",
                                                       R"({"group": "elemab:2,2", "classes": [{"label": "o8#1", "h": 1}]})")});
  CHECK(single_error_line(unknown, "validation"));
  CHECK(unknown.err.find("o4#1") != std::string::npos);  // lists valid labels
  const auto zero = call({"check-units", write_temp("zero.json", R"({"group": "elemab:2,2", "classes": [{"label": "o2#1", "h": 0}]})")});
  CHECK(single_error_line(zero, "validation"));
  const auto missing = call({"check-units", write_temp("missing.json", R"({"group": "elemab:2,2", "classes": [{"label": "o2#1", "h": 1}]})")});
  CHECK(single_error_line(missing, "data"));
  const auto schema = call({"check-units", write_temp("schema.json", R"({"group": "elemab:2,2", "classes": [{"label": "o2#1", "h": "x"}]})")});
  CHECK(single_error_line(schema, "syntax"));
  const auto extra = call({"check-units", write_temp("extra.json", R"({"group": "elemab:2,2", "colour": 1})")});
  CHECK(single_error_line(extra, "data"));
}

TEST_CASE("element budget from the environment") {
  ::setenv("REGCONST_ELEMENT_BUDGET", "10", 1);
  const auto r = call({"group", "perm:[(0,1,2,3,4),(0,1)]"});
  ::setenv("REGCONST_ELEMENT_BUDGET", "many", 1);
  const auto u = call({"group", "cyclic:2"});
  ::unsetenv("REGCONST_ELEMENT_BUDGET");
  CHECK(single_error_line(r, "resource"));
  CHECK(single_error_line(u, "usage"));
  CHECK(call({"group", "perm:[(0,1,2,3,4),(0,1)]"}).code == 0);
}

TEST_CASE("output is deterministic") {
  for (const auto& args : std::vector<std::vector<std::string>>{{"relations", "dihedral:16", "--json"},
                                                                {"regconst", "heisenberg:3", "A+Z"},
                                                                {"check-units", fixture("elemab32_good.json"), "--json"}}) {
    const auto a = call(args);
    const auto b = call(args);
    CHECK(a.out == b.out);
    CHECK(a.code == b.code);
  }
}

TEST_CASE("json round trips") {
  const auto s = analyse(dihedral_group(8));
  for (const auto& rel : relation_basis(s)) {
    const Json j = relation_to_json(rel);
    CHECK(relation_from_json(Json::parse(j.dump()), s) == rel);
  }
  const auto v = regulator_constant(cyclic_quotient_lattice(s), relation_basis(s)[0]);
  const Json jv = Json::parse(regulator_to_json(v).dump());
  CHECK(parse_rational(jv["value"].get<std::string>()) == v.value);
  for (const auto& [p, e] : v.valuations) CHECK(jv["valuations"][p.get_str()] == e);

  const auto out = call({"relations", "dihedral:8", "--json"});
  const Json doc = Json::parse(out.out);
  const auto basis = relation_basis(s);
  REQUIRE(doc["basis"].size() == basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) CHECK(relation_from_json(doc["basis"][i], s) == basis[i]);
}

TEST_CASE("profile parsing") {
  const Json minimal = Json::parse(R"({"group": "elemab:3,2", "classes": [{"label": "o3#1", "h": 1}]})");
  const auto p = parse_profile(minimal);
  CHECK(p.invariants(1).h == Integer(1));
  CHECK_FALSE(p.invariants(1).w.has_value());
  CHECK_FALSE(p.invariants(2).h.has_value());
  const Json with_r = Json::parse(R"({"group": "elemab:3,2", "classes": [{"label": "o9#1", "R": "3/2"}]})");
  CHECK(parse_profile(with_r).invariants(5).R == Rational(3, 2));
  const Json big = Json::parse(R"({"group": "elemab:3,2", "p": 3, "classes": [{"label": "o9#1", "h": "3486784401", "h_p": "3486784401"}]})");
  CHECK(parse_profile(big).h(5) == Integer("3486784401"));
}

TEST_CASE("lattice expressions") {
  const auto s = analyse(elementary_abelian_group(2, 2));
  CHECK(parse_lattice_expr("A", s).rank() == 3);
  CHECK(parse_lattice_expr("Reg^2 + Z", s).rank() == 9);
  CHECK(parse_lattice_expr("Sum(A, I, Z)", s).rank() == 7);
  CHECK(parse_lattice_expr("(A + Z)^2", s).rank() == 8);
  CHECK(parse_lattice_expr("Tower(1)", s).rank() == 11);
  CHECK(parse_lattice_expr("Coset(o2#3)", s).rank() == 2);
  CHECK_THROWS_AS(parse_lattice_expr("A +", s), Error);
  CHECK_THROWS_AS(parse_lattice_expr("Sum(A", s), Error);
  CHECK_THROWS_AS(parse_lattice_expr("", s), Error);
  const auto rel = parse_relation("o1#1:1, o2#1:-1, o2#2:-1, o2#3:-1, o4#1:+2", s);
  CHECK(is_relation(rel));
  CHECK(format_relation(rel) == "o1#1 - o2#1 - o2#2 - o2#3 + 2*o4#1");
  CHECK_THROWS_AS(parse_relation("o1#1:x", s), Error);
}
