#include <doctest.h>

#include <algorithm>
#include <json.hpp>

#include "carnot/errors.hpp"
#include "carnot/serialize.hpp"

using namespace carnot;
using json = nlohmann::ordered_json;

TEST_SUITE("serialize") {
  TEST_CASE("dims and basis documents") {
    const auto d = json::parse(dims_json(4, 3));
    CHECK(d["schema"] == "carnot/dims@1");
    CHECK(d["dimensions"] == json::array({4, 6, 20}));
    CHECK(d["total"] == 30);
    const auto b = json::parse(basis_json(build_algebra(2, 3)));
    CHECK(b["basis"].size() == 5);
    CHECK(b["basis"][4]["name"] == "x212");
    CHECK(b["basis"][4]["degree"] == 3);
  }

  TEST_CASE("casimir documents are deterministic") {
    const auto alg = build_algebra(2, 3);
    std::vector<VerifiedFunction> fs;
    for (const auto& f : complete_system(alg).all()) fs.push_back({f, is_casimir(alg, f.polynomial)});
    const auto text = casimirs_json(alg, fs);
    CHECK(text == casimirs_json(alg, fs));
    const auto j = json::parse(text);
    CHECK(j["count"] == 3);
    CHECK(j["all_verified"] == true);
    CHECK(j["functions"][2]["polynomial"] == "2*x1*x212 - 2*x2*x112 + x12^2");
    std::vector<std::string> keys;
    for (const auto& [k, v] : j["functions"][0].items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"role", "degree", "provenance", "polynomial", "verified"});
  }

  TEST_CASE("point files") {
    const auto alg = build_algebra(3, 3);
    const Point p = parse_point_json(alg, R"({"x12": "3/2", "x213": "1", "x1": -2})");
    CHECK(p[*alg.find("x12")] == Rational(3, 2));
    CHECK(p[*alg.find("x1")] == -2);
    CHECK_THROWS_AS((void)parse_point_json(alg, R"({"x9": "1"})"), InputError);
    CHECK_THROWS_AS((void)parse_point_json(alg, R"({"x312": "1"})"), InputError);
    CHECK_THROWS_AS((void)parse_point_json(alg, R"({"x12": "1/0"})"), InputError);
    CHECK_THROWS_AS((void)parse_point_json(alg, "[1, 2"), InputError);
  }

  TEST_CASE("stratum files") {
    const auto alg = build_algebra(3, 3);
    const Stratum s = parse_stratum_json(
        alg, R"({"set_zero": ["x312", "x313", "x323"], "witness_point": {"x112": "1", "x123": "1", "x213": "1"}})");
    CHECK(s.conditions().size() == 3);
    CHECK(s.witness().has_value());
    CHECK_THROWS_AS((void)parse_stratum_json(alg, R"({"identify": [["x112"]]})"), InputError);
    CHECK_THROWS_AS((void)parse_stratum_json(alg, R"({"set_zero": ["x112"], "witness_point": {"x112": "1"}})"),
                    StratumError);
  }

  TEST_CASE("trajectory CSV header and rows") {
    const auto alg = build_algebra(2, 3);
    Point p(alg);
    p.set("x1", 1);
    p.set("x12", 1);
    const auto traj = integrate_vertical(alg, ControlSpec::identity(2), p, 0.01, 0.005);
    const auto csv = trajectory_csv(alg, traj);
    CHECK(csv.rfind("t,x1,x2,x12,x112,x212\n0,1,0,1,0,0\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  }

  TEST_CASE("metric files") {
    const auto m = parse_matrix_json(R"([["4", 0], [0, "1/2"]])");
    CHECK(m(0, 0) == 4);
    CHECK(m(1, 1) == Rational(1, 2));
    CHECK_THROWS_AS((void)parse_matrix_json("[[1, 2], [3]]"), InputError);
  }
}
