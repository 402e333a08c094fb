#pragma once

// Directed compatibility graphs, cycles and cycle packings.
//
// Vertex ids are dense and 0-based. A Graph is immutable once built and may
// be shared freely between threads.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace optin {

using Vertex = std::uint32_t;

struct Edge {
    Vertex from = 0;
    Vertex to = 0;

    auto operator<=>(const Edge&) const = default;
};

class Graph {
public:
    Graph() = default;

    // Throws ValidationError on self-loops, duplicate edges, out-of-range
    // endpoints or an invalid altruist id. Edges are stored sorted by (from, to).
    Graph(std::size_t vertex_count, std::vector<Edge> edges,
          std::optional<Vertex> altruist = std::nullopt);

    std::size_t vertex_count() const noexcept { return vertex_count_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    std::span<const Edge> edges() const noexcept { return edges_; }
    std::optional<Vertex> altruist() const noexcept { return altruist_; }

    // Sorted out-neighbours of v.
    std::span<const Vertex> successors(Vertex v) const;
    bool has_edge(Vertex from, Vertex to) const;

    bool operator==(const Graph& other) const {
        return vertex_count_ == other.vertex_count_ && edges_ == other.edges_ &&
               altruist_ == other.altruist_;
    }

private:
    std::size_t vertex_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_{0};
    std::vector<Vertex> targets_;
    std::optional<Vertex> altruist_;
};

// A simple directed cycle, stored rotated so that its minimum vertex is first.
// Ordering is lexicographic on that canonical vertex list.
class Cycle {
public:
    explicit Cycle(std::vector<Vertex> vertices);

    std::span<const Vertex> vertices() const noexcept { return vertices_; }
    std::size_t size() const noexcept { return vertices_.size(); }

    auto operator<=>(const Cycle&) const = default;

private:
    std::vector<Vertex> vertices_;
};

// A set of pairwise vertex-disjoint cycles, kept in canonical cycle order.
class Matching {
public:
    Matching() = default;
    explicit Matching(std::vector<Cycle> cycles);

    std::span<const Cycle> cycles() const noexcept { return cycles_; }

    // Number of matched vertices, |opt| in the usual notation.
    std::size_t size() const noexcept { return matched_; }
    std::vector<Vertex> matched_vertices() const;

    bool operator==(const Matching&) const = default;

private:
    std::vector<Cycle> cycles_;
    std::size_t matched_ = 0;
};

// True if every cycle of m is a cycle of g with length <= cap.
bool is_valid_matching(const Graph& g, const Matching& m, std::size_t cap);

struct UEdge {
    Vertex a = 0;  // a < b
    Vertex b = 0;

    auto operator<=>(const UEdge&) const = default;
};

class UndirectedGraph {
public:
    UndirectedGraph() = default;

    // Pairs are normalised to a < b. Throws ValidationError on self-loops,
    // duplicates or out-of-range endpoints.
    UndirectedGraph(std::size_t vertex_count, std::vector<UEdge> edges);

    std::size_t vertex_count() const noexcept { return vertex_count_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    std::span<const UEdge> edges() const noexcept { return edges_; }
    std::span<const Vertex> neighbors(Vertex v) const;
    bool has_edge(Vertex u, Vertex v) const;

    bool operator==(const UndirectedGraph& other) const {
        return vertex_count_ == other.vertex_count_ && edges_ == other.edges_;
    }

private:
    std::size_t vertex_count_ = 0;
    std::vector<UEdge> edges_;
    std::vector<std::size_t> offsets_{0};
    std::vector<Vertex> adjacency_;
};

// Result of restricting a graph to a vertex subset. Vertices are relabelled
// 0..k-1 in increasing order of their original id, so canonical cycle forms
// and their ordering survive the relabelling.
struct Subgraph {
    Graph graph;
    std::vector<Vertex> original;
};

struct UndirectedSubgraph {
    UndirectedGraph graph;
    std::vector<Vertex> original;
};

Graph parse_graph(std::string_view text);
std::string serialize_graph(const Graph& g);

// All simple directed cycles with 2 <= length <= cap, canonical and sorted.
std::vector<Cycle> enumerate_cycles(const Graph& g, std::size_t cap);

// Keeps {u, v} iff both (u, v) and (v, u) are edges of g.
UndirectedGraph to_undirected(const Graph& g);

// Each undirected edge becomes a directed 2-cycle.
Graph to_directed(const UndirectedGraph& ug);

Subgraph induced_subgraph(const Graph& g, std::span<const Vertex> keep);
UndirectedSubgraph induced_subgraph(const UndirectedGraph& g, std::span<const Vertex> keep);

// Maximal weakly connected vertex sets, ordered by their minimum vertex.
std::vector<std::vector<Vertex>> weakly_connected_components(const Graph& g);
std::vector<std::vector<Vertex>> connected_components(const UndirectedGraph& g);

// Adds (v, altruist) for every other vertex so chains from the altruist close
// into cycles. Throws ValidationError when no altruist is designated.
Graph add_altruist_backedges(const Graph& g);

// Disjoint union; the i-th graph's vertices are shifted past all earlier ones.
// The altruist of the first graph that has one is kept.
Graph disjoint_union(std::span<const Graph> parts);
Graph replicate(const Graph& g, std::size_t copies);

}  // namespace optin
