#include <doctest.h>

#include <algorithm>

#include "kcof/bounds.hpp"
#include "kcof/error.hpp"
#include "kcof/instances.hpp"

using namespace kcof;
using R = Rational;

namespace {

std::vector<std::string> names(const std::vector<CatalogEntry>& entries)
{
    std::vector<std::string> out;
    for (const auto& e : entries) {
        out.push_back(e.name);
    }
    return out;
}

const CatalogEntry& by_name(const std::vector<CatalogEntry>& entries, const std::string& name)
{
    const auto it = std::find_if(entries.begin(), entries.end(), [&](const auto& e) { return e.name == name; });
    REQUIRE(it != entries.end());
    return *it;
}

const ReferenceVector& ref(const CatalogEntry& e, const std::string& tag)
{
    const auto it = std::find_if(e.references.begin(), e.references.end(), [&](const auto& r) { return r.tag == tag; });
    REQUIRE(it != e.references.end());
    return *it;
}

} // namespace

TEST_CASE("parameter validation")
{
    CHECK_NOTHROW(validate_params({}));
    CHECK_THROWS_AS(validate_params({0, R(1, 2), R(1, 8)}), Error);
    CHECK_THROWS_AS(validate_params({1, R(0), R(1, 8)}), Error);
    CHECK_THROWS_AS(validate_params({1, R(1), R(1, 8)}), Error);
    CHECK_THROWS_AS(validate_params({1, R(1, 2), R(1, 4)}), Error);
    CHECK_THROWS_AS(build_catalog({1, R(1, 2), R(0)}), Error);
    CHECK(std::string(to_string(ExpectedVerdict::NotEquilibrium)) == "NOT_EQUILIBRIUM");
}

TEST_CASE("entries per neighbourhood size")
{
    CHECK(names(build_catalog({1, R(1, 2), R(1, 8)}))
          == std::vector<std::string>{"three_players", "two_equilibria", "no_equilibrium", "stability_gap_1", "anarchy_1",
                                      "mixed_anarchy_1"});
    CHECK(names(build_catalog({2, R(1, 2), R(1, 8)}))
          == std::vector<std::string>{"no_equilibrium", "stability_gap_2", "anarchy_k", "mixed_anarchy_k"});
    CHECK(names(build_catalog({4, R(1, 2), R(1, 8)}))
          == std::vector<std::string>{"no_equilibrium", "stability_gap_k", "anarchy_k", "mixed_anarchy_k"});
}

TEST_CASE("every stored value is recomputed exactly")
{
    for (int k : {1, 2, 3, 5}) {
        for (const R& l : {R(1, 2), R(1, 10), R(3, 7)}) {
            CAPTURE(k);
            CAPTURE(l);
            const auto entries = build_catalog({k, l, R(1, 8)});
            for (const auto& e : entries) {
                for (const auto& row : verify_entry(e, {200})) {
                    CAPTURE(row.entry);
                    CAPTURE(row.quantity);
                    CHECK(row.expected == row.recomputed);
                    CHECK(row.match);
                }
            }
        }
    }
}

TEST_CASE("closed-form values")
{
    const auto c1 = build_catalog({1, R(1, 2), R(1, 8)});
    CHECK(ref(by_name(c1, "anarchy_1"), "pne").expected_cost == R(8));
    CHECK(ref(by_name(c1, "anarchy_1"), "near_opt").expected_cost == R(10, 3));
    CHECK(ref(by_name(c1, "mixed_anarchy_1"), "mne").expected_cost == R(15));
    const auto& gap = by_name(c1, "stability_gap_1");
    CHECK(gap.lambda == R(1, 10));
    CHECK(ref(gap, "pne").expected_cost == R(164, 15));
    CHECK(ref(gap, "near_opt").expected_cost == R(56, 5));
    CHECK(by_name(build_catalog({1, R(1, 5), R(1, 8)}), "stability_gap_1").lambda == R(1, 5));

    for (int k : {2, 3, 5}) {
        const auto c = build_catalog({k, R(1, 2), R(1, 8)});
        CHECK(ref(by_name(c, "anarchy_k"), "pne").expected_cost == R(17, 2) * R(k + 1));
        CHECK(ref(by_name(c, "mixed_anarchy_k"), "mne").expected_cost == R(8 * k + 16) - R(1, 2));
        CHECK(ref(by_name(c, "anarchy_k"), "near_opt").expected_cost == (k == 2 ? R(15, 2) : R(9)));
        CHECK(by_name(c, "no_equilibrium").instance.size() == static_cast<std::size_t>(2 * k + 1));
    }
    const auto c4 = build_catalog({4, R(1, 2), R(1, 8)});
    const auto& sg = by_name(c4, "stability_gap_k");
    CHECK(ref(sg, "pne").opinions == OpinionVector{R(1, 3), R(1, 3), R(1, 3), R(1, 3), R(2, 3)});
    CHECK(ref(sg, "pne").expected_cost == R(5, 3));
}

TEST_CASE("verified catalog and references")
{
    const auto entries = catalog({2, R(1, 2), R(1, 8)});
    const auto& anarchy = by_name(entries, "anarchy_k");
    const auto refs = deterministic_references(anarchy);
    CHECK(refs.size() == 2);
    CHECK(deterministic_references(by_name(entries, "no_equilibrium")).empty());
    // The mixed entry carries one randomized and one deterministic reference.
    CHECK(deterministic_references(by_name(entries, "mixed_anarchy_k")).size() == 1);
}

TEST_CASE("catalog equilibria respect the bounds")
{
    for (int k : {1, 2, 3, 5}) {
        for (const auto& e : build_catalog({k, R(1, 2), R(1, 8)})) {
            for (const auto& r : e.references) {
                if (r.randomized || r.verdict != ExpectedVerdict::PNE) {
                    continue;
                }
                const auto costs = player_costs(e.instance, r.opinions);
                for (PlayerIndex i = 0; i < e.instance.size(); ++i) {
                    CHECK(costs[i] <= pne_player_cost_cap(e.instance, i));
                    if (k == 1) {
                        CHECK(costs[i] <= pne_player_cost_cap_1(e.instance, i));
                    }
                }
                CHECK(r.expected_cost >= opt_lower_bound_k(e.instance));
            }
        }
    }
}
