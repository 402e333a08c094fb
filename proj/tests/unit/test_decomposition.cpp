#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "optin/blossom.hpp"
#include "optin/decomposition.hpp"
#include "optin/errors.hpp"
#include "optin/generators.hpp"
#include "support/oracles.hpp"

using namespace optin;

namespace {

UndirectedGraph complete(std::size_t n) {
    std::vector<UEdge> edges;
    for (Vertex a = 0; a < n; ++a) {
        for (Vertex b = a + 1; b < n; ++b) edges.push_back({a, b});
    }
    return UndirectedGraph(n, std::move(edges));
}

UndirectedGraph star(std::size_t leaves) {
    std::vector<UEdge> edges;
    for (Vertex l = 1; l <= leaves; ++l) edges.push_back({0, l});
    return UndirectedGraph(leaves + 1, std::move(edges));
}

void check_structure(const UndirectedGraph& ug, const EGDecomposition& eg) {
    const std::size_t n = ug.vertex_count();
    std::vector<int> where(n, -1);
    for (const Vertex v : eg.a) where[v] = 0;
    for (const Vertex v : eg.c) {
        CHECK(where[v] == -1);
        where[v] = 1;
    }
    for (const Vertex v : eg.d) {
        CHECK(where[v] == -1);
        where[v] = 2;
    }
    CHECK(std::count(where.begin(), where.end(), -1) == 0);
    for (const UEdge& e : ug.edges()) {
        CHECK(!(where[e.a] == 1 && where[e.b] == 2));
        CHECK(!(where[e.a] == 2 && where[e.b] == 1));
    }
    for (const auto& comp : eg.d_components) {
        CHECK(is_factor_critical(induced_subgraph(ug, comp).graph));
    }

    // A vertex is in A or C exactly when every maximum matching covers it.
    const std::size_t nu = oracle::matching_number(ug);
    for (Vertex v = 0; v < n; ++v) {
        std::vector<Vertex> keep;
        for (Vertex w = 0; w < n; ++w) {
            if (w != v) keep.push_back(w);
        }
        const bool always_covered = oracle::matching_number(induced_subgraph(ug, keep).graph) < nu;
        CHECK(always_covered == (where[v] != 2));
    }

    // In a maximum matching every A vertex is matched into D, each into a
    // different D component.
    const Matching2 m = max_matching_blossom(ug);
    std::vector<int> comp_of(n, -1);
    for (std::size_t i = 0; i < eg.d_components.size(); ++i) {
        for (const Vertex v : eg.d_components[i]) comp_of[v] = static_cast<int>(i);
    }
    std::vector<int> hit(eg.d_components.size(), 0);
    for (const UEdge& e : m.edges) {
        for (const auto& [x, y] : {std::pair{e.a, e.b}, std::pair{e.b, e.a}}) {
            if (where[x] == 0) {
                REQUIRE(where[y] == 2);
                ++hit[static_cast<std::size_t>(comp_of[y])];
            }
        }
    }
    CHECK(std::all_of(hit.begin(), hit.end(), [](int h) { return h <= 1; }));
}

}  // namespace

TEST_SUITE("decomposition") {

TEST_CASE("Edmonds-Gallai of the 17-vertex example") {
    const UndirectedGraph ug = to_undirected(gen_figure2().graph);
    const EGDecomposition eg = edmonds_gallai(ug);
    CHECK(eg.a.size() == 2);
    CHECK(eg.c.size() == 6);
    REQUIRE(eg.d_components.size() == 3);
    for (const auto& comp : eg.d_components) CHECK(comp.size() == 3);
    check_structure(ug, eg);

    const EdgePartition parts = build_partition(ug, eg);
    CHECK(parts.parts.size() == 7);
    CHECK(is_edge_partition(ug, parts));
    const Claim1Report claim = verify_claim1(ug, parts);
    CHECK(claim.lhs == 16);
    CHECK(claim.rhs == 16);
    CHECK(claim.part_sizes == std::vector<std::size_t>{2, 4, 2, 2, 2, 2, 2});
    std::size_t stars = 0;
    for (const Part& p : parts.parts) stars += p.kind == PartKind::star;
    CHECK(stars == 2);
}

TEST_CASE("small decompositions") {
    const UndirectedGraph edge(2, {{0, 1}});
    EGDecomposition eg = edmonds_gallai(edge);
    CHECK(eg.d.empty());
    CHECK(eg.a.empty());
    CHECK(eg.c == std::vector<Vertex>{0, 1});
    CHECK(verify_claim1(edge, build_partition(edge, eg)).lhs == 2);
    CHECK(verify_claim1(edge, build_partition(edge, eg)).holds());

    const UndirectedGraph path(3, {{0, 1}, {1, 2}});
    eg = edmonds_gallai(path);
    CHECK(eg.d == std::vector<Vertex>{0, 2});
    CHECK(eg.a == std::vector<Vertex>{1});
    CHECK(eg.c.empty());

    CHECK(build_partition(UndirectedGraph(4, {}), edmonds_gallai(UndirectedGraph(4, {}))).parts.empty());

    const UndirectedGraph tri = complete(3);
    const EdgePartition parts = build_partition(tri, edmonds_gallai(tri));
    REQUIRE(parts.parts.size() == 1);
    CHECK(parts.parts[0].kind == PartKind::d_component);
    CHECK(parts.parts[0].edges.size() == 3);
}

TEST_CASE("decomposition structure and Claim 1 on random graphs") {
    std::size_t holds = 0;
    const auto graphs = oracle::corpus(31, 200, 1, 12, true);
    for (const Graph& g : graphs) {
        const UndirectedGraph ug = to_undirected(g);
        const EGDecomposition eg = edmonds_gallai(ug);
        check_structure(ug, eg);
        const EdgePartition parts = build_partition(ug, eg);
        CHECK(is_edge_partition(ug, parts));
        std::size_t rhs = 0;
        for (const Part& p : parts.parts) rhs += 2 * oracle::matching_number(p.local().graph);
        const Claim1Report claim = verify_claim1(ug, parts);
        CHECK(claim.rhs == rhs);
        CHECK(claim.lhs == 2 * oracle::matching_number(ug));
        holds += claim.holds();
    }
    CHECK(holds == graphs.size());
}

TEST_CASE("each part satisfies the proportional bound") {
    const Rational ps[] = {Rational(1, 10), Rational(1, 4), Rational(1, 2)};
    for (const Graph& g : oracle::corpus(32, 60, 2, 10, true)) {
        const UndirectedGraph ug = to_undirected(g);
        for (const Part& part : build_partition(ug, edmonds_gallai(ug)).parts) {
            const UndirectedGraph local = part.local().graph;
            const std::size_t opt = 2 * matching_number(local);
            for (const Rational& p : ps) {
                CHECK(to_double(exact_internal_expectation(local, p)) <=
                      to_double(p) * static_cast<double>(opt) + 1e-9);
            }
        }
    }
}

TEST_CASE("exact expectation values") {
    const Graph tri = gen_appb_triangle(1).graph;
    CHECK(exact_internal_expectation(tri, 2, Rational(2, 3)) == Rational(40, 27));
    CHECK(exact_internal_expectation(tri, 2, Rational(0)) == 0);
    CHECK(exact_internal_expectation(complete(3), Rational(1, 2)) == 1);
    CHECK_THROWS_AS(exact_internal_expectation(Graph(21, {}), 2, Rational(1, 2)), ValidationError);
    CHECK_THROWS_AS(exact_internal_expectation(tri, 2, Rational(3, 2)), ValidationError);
}

TEST_CASE("subset dynamic program agrees with per-subset enumeration") {
    const Rational ps[] = {Rational(1, 3), Rational(1, 2), Rational(4, 5)};
    for (const Graph& g : oracle::corpus(33, 40, 1, 7, false)) {
        for (const Rational& p : ps) {
            CHECK(exact_internal_expectation(g, 3, p) == oracle::subset_expectation(g, 3, p));
        }
    }
}

TEST_CASE("closed form on complete graphs") {
    auto c = claim2_closed_form(1, 0.5);
    CHECK(c.expectation == doctest::Approx(1.0));
    CHECK(c.cap == doctest::Approx(1.0));
    CHECK(claim2_closed_form_exact(1, Rational(2, 3)) == Rational(40, 27));
    CHECK(claim2_closed_form_exact(2, Rational(1, 4)) == Rational(49, 64));
    CHECK(claim2_closed_form(2, 0.25).cap == doctest::Approx(1.0));
    for (unsigned t = 1; t <= 3; ++t) {
        const UndirectedGraph k = complete(2 * t + 1);
        for (const Rational& p : {Rational(1, 10), Rational(1, 4), Rational(1, 2), Rational(2, 3)}) {
            CHECK(exact_internal_expectation(k, p) == claim2_closed_form_exact(t, p));
        }
    }
}

TEST_CASE("near-perfect graphs at p <= 1/2") {
    std::size_t checked = 0;
    for (const Graph& g : oracle::corpus(34, 200, 2, 9, true)) {
        const UndirectedGraph ug = to_undirected(g);
        const std::size_t opt = 2 * matching_number(ug);
        if (opt + 1 < ug.vertex_count()) continue;
        ++checked;
        for (const Rational& p : {Rational(1, 10), Rational(1, 3), Rational(1, 2)}) {
            CHECK(exact_internal_expectation(ug, p) <= p * Rational(opt));
        }
    }
    CHECK(checked > 20);
    // equality for complete graphs on an odd number of vertices
    CHECK(exact_internal_expectation(complete(5), Rational(1, 2)) == Rational(2));
}

TEST_CASE("stars stay below 2p") {
    for (std::size_t leaves = 1; leaves <= 8; ++leaves) {
        for (const Rational& p : {Rational(1, 10), Rational(1, 2), Rational(9, 10)}) {
            CHECK(exact_internal_expectation(star(leaves), p) <= 2 * p);
        }
    }
}

TEST_CASE("pentagon sweep crosses the proportional share near p = 1") {
    const auto inst = gen_appb_pentagon(3);
    std::vector<Rational> ps;
    for (int i = 90; i < 100; ++i) ps.emplace_back(i, 100);
    const auto sweep = expectation_sweep(inst.graph, 3, ps);
    CHECK(std::any_of(sweep.begin(), sweep.end(), [](const auto& pt) { return pt.exceeds(); }));
    CHECK(enumerate_cycles(inst.graph, 3).size() == 5);  // only the 2-cycles
}

}  // TEST_SUITE
