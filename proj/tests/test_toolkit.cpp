#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "ftflow/analysis.hpp"
#include "ftflow/complement.hpp"
#include "ftflow/invariant.hpp"
#include "ftflow/model_io.hpp"
#include "ftflow/toolkit.hpp"
#include "ftflow/validate.hpp"
#include "transform.hpp"

using namespace ftflow;

namespace {

EnumerationBudget budget(int seps, int points, int cycles, std::vector<std::string> surfaces) {
    EnumerationBudget b;
    b.max_seps = seps;
    b.max_points = points;
    b.max_cycles = cycles;
    for (const auto& s : surfaces) b.surfaces.push_back(*surface_from_name(s));
    return b;
}

}  // namespace

TEST_CASE("oracle on hand examples") {
    std::mt19937 rng(11);
    auto m1 = fixture("m1_ns_sphere");
    CHECK(brute_force_equivalent(m1, testing::relabel(m1, rng)));
    CHECK(brute_force_equivalent(fixture("m2_rational_torus"), fixture("m2_rational_torus")));
    CHECK_FALSE(brute_force_equivalent(fixture("m4_two_cycle_torus"), fixture("m4_reeb_torus")));
    CHECK_FALSE(brute_force_equivalent(m1, fixture("m2_rational_torus")));
    CHECK(brute_force_equivalent(fixture("m3_figure_eight"), testing::reflect(fixture("m3_figure_eight"))));
}

TEST_CASE("oracle budget") {
    CHECK_THROWS_AS(brute_force_equivalent(fixture("m6_gradient_sphere"), fixture("m6_gradient_sphere"), 8),
                    OracleError);
    CHECK_NOTHROW(brute_force_equivalent(fixture("m6_gradient_sphere"), fixture("m6_gradient_sphere"), 16));
}

TEST_CASE("oracle accepts random presentations") {
    std::mt19937 rng(5);
    for (auto name : {"m3_figure_eight", "m5_reeb_annulus", "m6_gradient_sphere", "m8_cherry_torus",
                      "strict_circuit_torus", "m_projective"}) {
        CAPTURE(name);
        auto m = fixture(name);
        for (int i = 0; i < 20; ++i) CHECK(brute_force_equivalent(m, testing::random_presentation(m, rng)));
    }
}

TEST_CASE("oracle separates the fixtures") {
    std::vector<std::string> names = {"m1_ns_sphere", "m3_figure_eight", "m4_two_cycle_torus", "m4_reeb_torus",
                                      "m6_gradient_sphere", "m8_cherry_torus", "strict_circuit_torus"};
    for (size_t i = 0; i < names.size(); ++i)
        for (size_t j = 0; j < names.size(); ++j)
            CHECK(brute_force_equivalent(fixture(names[i]), fixture(names[j])) == (i == j));
}

TEST_CASE("enumeration counts") {
    CHECK(enumerate_models(budget(0, 2, 0, {"sphere"})).size() == 2);
    CHECK(enumerate_models(budget(0, 0, 0, {"torus"})).size() == 1);
    CHECK(enumerate_models(EnumerationBudget{}).empty());
    CHECK(enumerate_models(budget(0, 0, 0, {"klein"})).size() == 1);
}

TEST_CASE("enumerated models are sound") {
    auto b = budget(2, 2, 1, {"sphere", "torus", "rp2", "klein"});
    auto ms = enumerate_models(b);
    REQUIRE(ms.size() > 50);
    std::vector<CanonicalCode> codes;
    for (const auto& m : ms) {
        CHECK(validate_model(m).ok());
        CHECK(poincare_hopf_check(m));
        CHECK(height(m) <= 2);
        CHECK_NOTHROW(classify_components(m));
        codes.push_back(canonical_code(m));
    }
    for (size_t i = 1; i < codes.size(); ++i) CHECK(codes[i - 1] < codes[i]);
    auto again = enumerate_models(b);
    REQUIRE(again.size() == ms.size());
    for (size_t i = 0; i < ms.size(); ++i) CHECK(serialize_model(again[i]) == serialize_model(ms[i]));
}

TEST_CASE("index prefilter does not hide models") {
    auto b = budget(2, 2, 0, {"sphere", "torus", "rp2", "klein"});
    auto with = enumerate_models(b);
    b.index_prefilter = false;
    auto without = enumerate_models(b);
    CHECK(with.size() == without.size());
}

TEST_CASE("code equality matches the oracle on raw enumeration output") {
    std::vector<FlowModel> raw;
    enumerate_candidates(budget(2, 2, 0, {"sphere", "torus", "rp2", "klein"}),
                         [&](const FlowModel& m) { raw.push_back(m); });
    REQUIRE(raw.size() > 50);
    std::vector<CanonicalCode> codes;
    for (const auto& m : raw) codes.push_back(canonical_code(m));
    int disagreements = 0, equal = 0;
    for (size_t i = 0; i < raw.size(); ++i)
        for (size_t j = i + 1; j < raw.size(); ++j) {
            bool o = brute_force_equivalent(raw[i], raw[j]);
            equal += o;
            if (o != (codes[i] == codes[j])) ++disagreements;
        }
    CHECK(disagreements == 0);
    CHECK(equal > 0);
}
