#include <doctest.h>

#include <cmath>

#include "optin/blossom.hpp"
#include "optin/errors.hpp"
#include "optin/generators.hpp"
#include "optin/mechanisms.hpp"
#include "support/oracles.hpp"

using namespace optin;

namespace {

SolveOptions cap(std::size_t L) {
    SolveOptions o;
    o.cycle_cap = L;
    return o;
}

}  // namespace

TEST_SUITE("mechanisms") {

TEST_CASE("veto on the seven-vertex example") {
    const Graph g = gen_figure1().graph;
    const auto blue = fixed_ownership(g, figure1_blue_owner(), 2);
    const MechanismOutcome out = veto_mechanism(g, blue, cap(3));
    CHECK(!out.accepted);
    CHECK(out.vetoing_players == std::vector<std::size_t>{0});
    CHECK(out.final_matching.size() == 3);
    CHECK(out.per_player[0].internal_opt == 3);
    CHECK(out.per_player[0].share == 2);
    CHECK(out.per_player[0].final_allocation == 3);
    CHECK(out.per_player[1].final_allocation == 0);

    const auto solo = fixed_ownership(g, std::vector<std::uint32_t>(7, 0), 1);
    const MechanismOutcome all = veto_mechanism(g, solo, cap(3));
    CHECK(all.accepted);
    CHECK(all.final_matching == max_cycle_cover(g, cap(3)));

    std::vector<std::uint32_t> owner(7, 1);
    owner[5] = 0;
    const MechanismOutcome lone = veto_mechanism(g, fixed_ownership(g, owner, 2), cap(3));
    CHECK(lone.accepted);
    CHECK(lone.per_player[0].internal_opt == 0);
    CHECK(lone.per_player[0].share == 0);
}

TEST_CASE("gap records") {
    const Graph g = gen_figure1().graph;
    const Matching pinned = max_cycle_cover(g, cap(3));
    const auto gaps = ir_gaps(g, fixed_ownership(g, figure1_blue_owner(), 2), cap(3), pinned);
    REQUIRE(gaps.size() == 2);
    CHECK(gaps[0].internal_opt == 3);
    CHECK(gaps[0].share == 2);
    CHECK(gaps[0].gap == 1);
    CHECK(gaps[1].internal_opt == 0);
    CHECK(gaps[1].share == 4);
    CHECK(gaps[1].gap == -4);

    const auto one = ir_gaps(g, fixed_ownership(g, std::vector<std::uint32_t>(7, 0), 1), cap(3), pinned);
    CHECK(one[0].gap == 0);
    const Graph empty(0, {});
    const auto none = ir_gaps(empty, fixed_ownership(empty, {}, 2), cap(3), Matching());
    CHECK(none[0].gap == 0);
    CHECK(none[1].gap == 0);
}

TEST_CASE("veto invariants on random instances") {
    std::uint64_t trial = 0;
    const PlayerProfile prof = PlayerProfile::uniform(3);
    for (const Graph& g : oracle::corpus(51, 150, 2, 10, false)) {
        const Matching pinned = max_cycle_cover(g, cap(3));
        const auto a = sample_ownership(g, prof, 51, trial++);
        const MechanismOutcome out = veto_mechanism(g, a, cap(3), pinned);
        CHECK(out.accepted == out.vetoing_players.empty());
        std::size_t shares = 0;
        for (const PlayerOutcome& po : out.per_player) {
            CHECK(po.final_allocation >= po.internal_opt);
            shares += po.share;
        }
        CHECK(shares == pinned.size());
        CHECK(is_valid_matching(g, out.final_matching, 3));
        if (out.accepted) CHECK(out.final_matching == pinned);
    }
}

TEST_CASE("augmenting mechanism is maximum and keeps internal matches") {
    std::uint64_t trial = 0;
    const PlayerProfile prof = PlayerProfile::uniform(3);
    for (const Graph& g : oracle::corpus(52, 300, 2, 14, true)) {
        const auto a = sample_ownership(g, prof, 52, trial++);
        const Matching m = augment_mechanism(g, a);
        CHECK(is_valid_matching(g, m, 2));
        CHECK(m.size() == 2 * oracle::matching_number(to_undirected(g)));
        const auto matched = m.matched_vertices();
        for (std::size_t i = 0; i < 3; ++i) {
            for (const Vertex v : internal_optimum(g, a, i, cap(2)).matched_vertices()) {
                CHECK(std::binary_search(matched.begin(), matched.end(), v));
            }
        }
    }
    const Graph pair(2, {{0, 1}, {1, 0}});
    CHECK(augment_mechanism(pair, fixed_ownership(pair, {0, 0}, 1)).size() == 2);
    const Graph edgeless(4, {});
    CHECK(augment_mechanism(edgeless, fixed_ownership(edgeless, {0, 1, 0, 1}, 2)).size() == 0);
}

TEST_CASE("bound formulas") {
    CHECK(theorem1_bound(300, 3, 2, 0.01) == doctest::Approx(313.47).epsilon(1e-4));
    CHECK(theorem1_bound(0, 3, 2, 0.01) == 0.0);
    CHECK(theorem1_bound(6, 3, 2, 0.1) == doctest::Approx(35.9).epsilon(1e-3));
    CHECK_THROWS_AS(theorem1_bound(6, 3, 2, 0.0), ValidationError);
    CHECK_THROWS_AS(theorem1_bound(6, 3, 2, 1.0), ValidationError);
    CHECK_THROWS_AS(corollary1_bound(6, 3, 2, -0.5), ValidationError);

    CHECK(corollary1_bound(0, 3, 2, 0.01) == 0.0);
    for (const std::size_t L : {2u, 3u, 4u}) {
        const double opt = 300.0, lg = std::log(2.0 / 0.01);
        CHECK(corollary1_bound(300, L, 1, 0.01) ==
              doctest::Approx((2.0 * L + 1) * std::sqrt(opt * lg) + L * std::sqrt(2.0 * opt * lg)));
    }
    for (const std::size_t k : {1u, 2u, 5u}) {
        // factor out sqrt(opt ln(2k/delta)): k(2L+1) + L sqrt(2k)
        const double s = std::sqrt(300.0 * std::log(2.0 * k / 0.01));
        CHECK(corollary1_bound(300, 3, k, 0.01) == doctest::Approx(s * (7.0 * k + 3.0 * std::sqrt(2.0 * k))));
    }
}

}  // TEST_SUITE
