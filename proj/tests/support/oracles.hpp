#pragma once

// Reference routines for tests. Each one is deliberately naive and shares no
// code with the library routine it checks.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "optin/graph.hpp"
#include "optin/rational.hpp"

namespace optin::oracle {

// Uniform double from raw generator bits, identical on every platform.
double unit(std::mt19937_64& rng);

// Directed graph on n vertices, each ordered pair present with probability `density`.
Graph random_digraph(std::mt19937_64& rng, std::size_t n, double density);

// Graph made only of 2-cycles, each unordered pair present with probability `density`.
Graph random_two_cycle_graph(std::mt19937_64& rng, std::size_t n, double density);

// n drawn uniformly from [min_n, max_n], density from [0.15, 0.6].
std::vector<Graph> corpus(std::uint64_t seed, std::size_t count, std::size_t min_n,
                          std::size_t max_n, bool two_cycles_only);

// Maximum matching size by trying every edge for the lowest free vertex.
std::size_t matching_number(const UndirectedGraph& ug);

// Every simple cycle of length 2..cap as a vertex sequence rotated to its
// minimum, found by extending paths edge by edge. Sorted.
std::vector<std::vector<Vertex>> cycle_sequences(const Graph& g, std::size_t cap);

// Best packing size by plain recursion over explicit vertex cycles found by
// walking all paths; no memoisation.
std::size_t packing_size(const Graph& g, std::size_t cap);

// E|opt(H)| summed over every subset with exact weights, solving each
// induced subgraph with packing_size.
Rational subset_expectation(const Graph& g, std::size_t cap, const Rational& p);

// Philox4x32-10 written straight from the published round function.
std::uint32_t philox_word0(std::uint32_t c0, std::uint32_t c1, std::uint32_t c2, std::uint32_t c3,
                           std::uint32_t k0, std::uint32_t k1);

}  // namespace optin::oracle
