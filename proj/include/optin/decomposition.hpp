#pragma once

// Edmonds-Gallai structure of undirected graphs, the edge-disjoint partition
// built from it, and exact expectations over random vertex subsets.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "optin/graph.hpp"
#include "optin/rational.hpp"

namespace optin {

// D: vertices missed by some maximum matching. A: vertices outside D with a
// neighbour in D. C: everything else. All sets are sorted.
struct EGDecomposition {
    std::vector<Vertex> a;
    std::vector<Vertex> c;
    std::vector<Vertex> d;
    std::vector<std::vector<Vertex>> d_components;
};

EGDecomposition edmonds_gallai(const UndirectedGraph& ug);

bool is_factor_critical(const UndirectedGraph& ug);

enum class PartKind { c_component, star, d_component };

const char* to_string(PartKind kind);

struct Part {
    PartKind kind = PartKind::c_component;
    Vertex anchor = 0;             // star centre, or the component's minimum vertex
    std::vector<Vertex> vertices;  // host ids, sorted
    std::vector<UEdge> edges;      // host ids, sorted

    // The part as a graph of its own (exactly its edges, vertices relabelled).
    UndirectedSubgraph local() const;
};

struct EdgePartition {
    std::vector<Part> parts;
};

// One part per edge-carrying component of G[C], one star per A vertex and one
// part per edge-carrying component of G[D]. An edge between two A vertices
// goes to the star of its lower endpoint.
EdgePartition build_partition(const UndirectedGraph& ug, const EGDecomposition& eg);

struct Claim1Report {
    std::size_t lhs = 0;                 // |opt(G)| = 2 nu(G)
    std::size_t rhs = 0;                 // sum of |opt(G_i)|
    std::vector<std::size_t> part_sizes; // |opt(G_i)| per part
    bool holds() const noexcept { return lhs == rhs; }
};

Claim1Report verify_claim1(const UndirectedGraph& ug, const EdgePartition& parts);

// True when the parts' edge sets are pairwise disjoint and cover ug.
bool is_edge_partition(const UndirectedGraph& ug, const EdgePartition& parts);

inline constexpr std::size_t kExactMaxVertices = 20;

// Optimal packing size of every induced subgraph, summed by subset size:
// weighted[s] = sum over |S| = s of |opt(g[S])|. Computed by a dynamic
// program over all 2^n subsets, independent of the branch-and-bound solver.
struct SubsetOptProfile {
    std::size_t vertex_count = 0;
    std::size_t full_opt = 0;
    std::vector<std::uint64_t> weighted;
};

SubsetOptProfile subset_opt_profile(const Graph& g, std::size_t cap);

// sum_s p^s (1-p)^(n-s) weighted[s]
Rational expectation_from_profile(const SubsetOptProfile& profile, const Rational& p);

// E over H ~_p g of |opt(H)|, exactly. Throws ValidationError above
// kExactMaxVertices vertices or for p outside [0, 1].
Rational exact_internal_expectation(const Graph& g, std::size_t cap, const Rational& p);
Rational exact_internal_expectation(const UndirectedGraph& ug, const Rational& p);

// (2t+1)p - 1/2 + (1/2)(1-2p)^(2t+1), and the comparison value 2tp.
struct Claim2Value {
    double expectation = 0.0;
    double cap = 0.0;
};

Claim2Value claim2_closed_form(unsigned t, double p);
Rational claim2_closed_form_exact(unsigned t, const Rational& p);

struct ExpectationPoint {
    Rational p;
    Rational expectation;
    Rational proportional_share;  // p |opt(G)|
    bool exceeds() const { return expectation > proportional_share; }
};

std::vector<ExpectationPoint> expectation_sweep(const Graph& g, std::size_t cap,
                                                std::span<const Rational> ps);

}  // namespace optin
