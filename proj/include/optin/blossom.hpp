#pragma once

// Maximum-cardinality matching in general undirected graphs (Edmonds'
// blossom algorithm, O(V^3)).

#include <cstddef>
#include <vector>

#include "optin/graph.hpp"

namespace optin {

struct Matching2 {
    std::vector<UEdge> edges;  // sorted, pairwise disjoint

    std::size_t matched_vertex_count() const noexcept { return 2 * edges.size(); }
    bool operator==(const Matching2&) const = default;
};

Matching2 max_matching_blossom(const UndirectedGraph& ug);

// Grows `seed` by augmenting paths until maximum. Every vertex matched by
// the seed stays matched. Throws ValidationError if the seed is not a
// matching of ug.
Matching2 max_matching_blossom(const UndirectedGraph& ug, const Matching2& seed);

// nu(ug): the number of edges in a maximum matching.
std::size_t matching_number(const UndirectedGraph& ug);

bool is_matching_of(const UndirectedGraph& ug, const Matching2& m);

}  // namespace optin
