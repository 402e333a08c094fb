#pragma once

// Exact maximum-cardinality cycle packing under a cycle-length cap.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "optin/graph.hpp"

namespace optin {

struct SolveOptions {
    std::size_t cycle_cap = 3;
    // Branch-and-bound nodes allowed across all components before giving up.
    std::uint64_t node_limit = 10'000'000;
    // For cap 2, use the blossom-backed greedy instead of branch and bound.
    // Both produce the same matching.
    bool blossom_fast_path = true;
};

// A maximum set of vertex-disjoint cycles of length in [2, cap]. Among all
// optimal sets the lexicographically least one (comparing sorted canonical
// cycle lists) is returned, so the result is a pure function of the input.
// Throws SolverLimitError when the search exceeds opts.node_limit.
Matching max_cycle_cover(const Graph& g, const SolveOptions& opts);

// Exhaustive reference solver, independent of max_cycle_cover. Only the
// matched-vertex count is guaranteed to agree. Throws ValidationError above
// kBruteForceMaxVertices.
inline constexpr std::size_t kBruteForceMaxVertices = 12;
Matching brute_force_cover(const Graph& g, std::size_t cap);

// A directed path that starts at the altruist.
struct Chain {
    std::vector<Vertex> vertices;

    // Number of vertices reached by the chain, the altruist excluded.
    std::size_t length() const noexcept { return vertices.empty() ? 0 : vertices.size() - 1; }
};

// Longest chain from the altruist of an acyclic graph; ties go to the
// lexicographically least vertex sequence. Throws ValidationError when the
// graph has no altruist or contains a directed cycle.
Chain longest_chain_dag(const Graph& g);

}  // namespace optin
