#include <doctest.h>

#include <json.hpp>

#include "kcof/error.hpp"
#include "kcof/instance_file.hpp"
#include "kcof/reports.hpp"

using namespace kcof;
using R = Rational;
using json = nlohmann::json;

namespace {

ErrorCode code_of(const std::string& text)
{
    try {
        parse_instance(text);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("document accepted: " << text);
    return ErrorCode::Internal;
}

} // namespace

TEST_CASE("parsing instance documents")
{
    const auto f = parse_instance(R"({"k": 1, "beliefs": ["-10", 2, "5.0"], "opinions": ["-7/2", "3", "4"],
                                      "labels": ["a", "b", "c"]})");
    CHECK(f.k == 1);
    CHECK(f.beliefs == std::vector<R>{R(-10), R(2), R(5)});
    REQUIRE(f.opinions);
    CHECK(*f.opinions == OpinionVector{R(-7, 2), R(3), R(4)});
    CHECK(f.labels == std::vector<std::string>{"a", "b", "c"});
    CHECK(f.game().size() == 3);

    const auto m = parse_instance(R"({"k": 1, "beliefs": ["0", "1"], "mixed": [[["0", "1/2"], ["1", "1/2"]], [["1", "1"]]]})");
    REQUIRE(m.mixed);
    CHECK((*m.mixed)[0].size() == 2);
    CHECK((*m.mixed)[0][1].probability == R(1, 2));
}

TEST_CASE("rejected documents")
{
    CHECK(code_of("{not json") == ErrorCode::Parse);
    CHECK(code_of("[1, 2]") == ErrorCode::Parse);
    CHECK(code_of(R"({"beliefs": ["0", "1"]})") == ErrorCode::Parse);
    CHECK(code_of(R"({"k": 1})") == ErrorCode::Parse);
    CHECK(code_of(R"({"k": 1, "beliefs": [0.5, 1]})") == ErrorCode::Parse);
    CHECK(code_of(R"({"k": 1, "beliefs": ["0", "x"]})") == ErrorCode::Parse);
    CHECK(code_of(R"({"k": 0, "beliefs": ["0", "1"]})") == ErrorCode::InvalidArgument);
    CHECK(code_of(R"({"k": 1, "beliefs": ["1", "0"]})") == ErrorCode::InvalidArgument);
    CHECK(code_of(R"({"k": 2, "beliefs": ["0", "1"]})") == ErrorCode::InvalidArgument);
    CHECK(code_of(R"({"k": 1, "beliefs": ["0", "1"], "opinions": ["0"]})") == ErrorCode::InvalidArgument);
    CHECK(code_of(R"({"k": 1, "beliefs": ["0", "1"], "mixed": [[["0", "1/3"]], [["1", "1"]]]})")
          == ErrorCode::InvalidArgument);
    try {
        parse_instance(R"({"k": 1, "beliefs": ["0", "1", "zz"]})");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("beliefs[3]") != std::string::npos);
    }
}

TEST_CASE("files")
{
    try {
        load_instance("/nonexistent/instance.json");
        FAIL("missing file accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Io);
    }
    const auto f = load_instance(KCOF_TEST_DATA "/two_equilibria.json");
    CHECK(f.beliefs == std::vector<R>{R(0), R(9), R(12), R(21)});
}

TEST_CASE("round trip through JSON")
{
    InstanceFile f;
    f.k = 2;
    f.beliefs = {R(0), R(1, 3), R(1, 3), R(2)};
    f.opinions = OpinionVector{R(-1, 7), R(1), R(2), R(5, 2)};
    f.labels = {"p", "q", "r", "s"};
    const auto back = parse_instance(to_json(f));
    CHECK(back.k == f.k);
    CHECK(back.beliefs == f.beliefs);
    CHECK(back.opinions == f.opinions);
    CHECK(back.labels == f.labels);
    CHECK(json::parse(to_json(f))["beliefs"][1] == "1/3");
}

TEST_CASE("reports")
{
    auto f = parse_instance(R"({"k": 1, "beliefs": ["-10", "2", "5"], "opinions": ["-7/2", "3", "4"]})");
    const auto check = json::parse(check_report(f));
    CHECK(check["kind"] == "pure");
    CHECK(check["is_equilibrium"] == true);
    CHECK(check["social_cost"] == "17/2");

    f.opinions = OpinionVector{R(-10), R(-5), R(4)};
    const auto bad = json::parse(check_report(f));
    CHECK(bad["is_equilibrium"] == false);
    CHECK(bad["social_cost"] == "23");
    REQUIRE_FALSE(bad["violations"].empty());
    CHECK(bad["violations"][0]["player"] == 1);

    const auto mixed = json::parse(mixed_check_report(f));
    CHECK(mixed["kind"] == "mixed");
    CHECK(mixed["is_equilibrium"] == false);
    CHECK(mixed["expected_social_cost"] == "23");

    const auto two = parse_instance(R"({"k": 1, "beliefs": ["0", "9", "12", "21"]})");
    const auto solve = json::parse(solve_report(two, 10, 100));
    CHECK(solve["method"] == "segment_graph");
    CHECK(solve["exists"] == true);
    CHECK(solve["enumeration"]["equilibria"].size() == 2);
    CHECK(segment_graph_dot(two).find("C(3,3,4) w=6") != std::string::npos);

    const auto none = parse_instance(R"({"k": 2, "beliefs": ["0", "0", "7/8", "2", "2"]})");
    const auto dyn = json::parse(solve_report(none, 0, 50));
    CHECK(dyn["method"] == "best_response_dynamics");
    CHECK(dyn["outcome"] != "converged");
    CHECK_THROWS_AS(segment_graph_dot(none), Error);

    const auto bounds = json::parse(bounds_report(two, false, {}));
    CHECK(bounds["bracket"]["worst_pne_cost"] == "12");
    CHECK(bounds["per_player"].size() == 4);

    const auto cat = json::parse(catalog_report({1, R(1, 2), R(1, 8)}, {100}));
    CHECK(cat["all_match"] == true);
    CHECK(cat["entries"].size() == 6);
}
