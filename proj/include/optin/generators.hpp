#pragma once

// Fixed constructions with known optimal values.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "optin/graph.hpp"

namespace optin {

struct NamedInstance {
    std::string name;
    Graph graph;
    std::size_t cycle_cap = 3;  // 0 for chain instances solved by the DAG oracle
    std::size_t known_opt = 0;  // matched vertices, or chain length for long_chain
    std::string notes;
};

// Seven vertices, three directed 3-cycles 0-1-4, 1-2-5, 2-3-6 sharing
// vertices 1 and 2. Optimum 6 (cap 3).
NamedInstance gen_figure1();

// The blue player of the seven-vertex example owns {1, 2, 5}; red owns the rest.
std::vector<std::uint32_t> figure1_blue_owner();

// 17-vertex undirected graph (as 2-cycles) with nu = 8: a C-part on six
// vertices, two A vertices and three D triangles.
NamedInstance gen_figure2();

// n / log2(n) stars of log2(n) vertices each, leaves joined to the centre by
// 2-cycles. n must be a power of two and at least 4.
NamedInstance gen_star_forest(std::size_t n);

// Four layers A, B, C, D of n/4 vertices: all edges A->B, B->C, C->A, C->D
// and D->C. n must be a positive multiple of 4.
NamedInstance gen_layered(std::size_t n);

// Layer of vertex v in gen_layered(n): 0..3 for A..D.
std::size_t layered_layer(std::size_t n, Vertex v);

// Internal optimum of a player owning a, b, c, d vertices of the layers:
// m = min(a, b, c) 3-cycles, then min(c - m, d) 2-cycles.
std::size_t layered_internal_opt(std::size_t a, std::size_t b, std::size_t c, std::size_t d);

// `copies` disjoint triangles whose edges are 2-cycles. Optimum 2 per copy.
NamedInstance gen_appb_triangle(std::size_t copies);

// A 5-cycle of 2-cycles. Optimum 4.
NamedInstance gen_appb_pentagon(std::size_t cap = 3);

// Altruist 0, a chain of n/3 vertices hanging off it, and 2n/9 layers of
// three vertices where every layer feeds every later layer and the altruist
// feeds every layer vertex. n + 1 vertices, acyclic, longest chain n/3.
// n must be a positive multiple of 9.
NamedInstance gen_long_chain(std::size_t n);

// Number of layers in gen_long_chain(n) and the vertices of layer i.
std::size_t long_chain_layer_count(std::size_t n);
std::vector<Vertex> long_chain_layer(std::size_t n, std::size_t layer);

// Vertices of the chain arm, altruist excluded.
std::vector<Vertex> long_chain_arm(std::size_t n);

// Builds an instance by name: figure1, figure2, star_forest, layered,
// appb_triangle, appb_pentagon, long_chain. `n` feeds the sized generators,
// `copies` replicates the result (known_opt scales; not allowed for
// long_chain, whose single altruist cannot be replicated). Throws ValidationError
// on an unknown name or invalid size.
NamedInstance make_instance(std::string_view name, std::size_t n, std::size_t copies);

std::vector<std::string> instance_names();

}  // namespace optin
