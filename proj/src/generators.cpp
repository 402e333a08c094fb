#include "optin/generators.hpp"

#include <bit>

#include <fmt/format.h>

#include "optin/errors.hpp"

namespace optin {

namespace {

void add_two_cycle(std::vector<Edge>& edges, Vertex u, Vertex v) {
    edges.push_back({u, v});
    edges.push_back({v, u});
}

}  // namespace

NamedInstance gen_figure1() {
    std::vector<Edge> edges{{0, 1}, {1, 4}, {4, 0}, {1, 2}, {2, 5},
                            {5, 1}, {2, 3}, {3, 6}, {6, 2}};
    return {"figure1", Graph(7, std::move(edges)), 3, 6,
            "three overlapping 3-cycles; vertices 1 and 2 are shared"};
}

std::vector<std::uint32_t> figure1_blue_owner() {
    // 0 = blue, 1 = red
    return {1, 0, 0, 1, 1, 0, 1};
}

NamedInstance gen_figure2() {
    // v1..v6 -> 0..5, u1, u2 -> 6, 7, w1..w9 -> 8..16
    auto v = [](int i) { return static_cast<Vertex>(i - 1); };
    auto u = [](int i) { return static_cast<Vertex>(5 + i); };
    auto w = [](int i) { return static_cast<Vertex>(7 + i); };
    const std::vector<std::pair<Vertex, Vertex>> pairs{
        {v(1), v(4)}, {v(2), v(5)}, {v(3), v(6)}, {v(2), v(3)}, {v(5), v(6)},
        {u(1), u(2)}, {u(1), v(1)}, {u(1), w(2)}, {u(1), w(1)}, {u(2), v(3)},
        {u(2), w(4)}, {u(2), w(3)}, {w(1), w(5)}, {w(1), w(6)}, {w(5), w(6)},
        {w(2), w(3)}, {w(3), w(7)}, {w(7), w(2)}, {w(4), w(8)}, {w(4), w(9)},
        {w(8), w(9)},
    };
    std::vector<Edge> edges;
    for (const auto& [a, b] : pairs) add_two_cycle(edges, a, b);
    return {"figure2", Graph(17, std::move(edges)), 2, 16,
            "Edmonds-Gallai example: |A| = 2, |C| = 6, three D triangles"};
}

NamedInstance gen_star_forest(std::size_t n) {
    if (n < 4 || !std::has_single_bit(n)) {
        throw ValidationError(fmt::format("star forest needs a power of two n >= 4, got {}", n));
    }
    const std::size_t size = static_cast<std::size_t>(std::bit_width(n) - 1);
    const std::size_t stars = n / size;
    std::vector<Edge> edges;
    for (std::size_t s = 0; s < stars; ++s) {
        const auto centre = static_cast<Vertex>(s * size);
        for (std::size_t leaf = 1; leaf < size; ++leaf) {
            add_two_cycle(edges, centre, static_cast<Vertex>(centre + leaf));
        }
    }
    return {"star_forest", Graph(stars * size, std::move(edges)), 2, 2 * stars,
            fmt::format("{} stars of {} vertices", stars, size)};
}

NamedInstance gen_layered(std::size_t n) {
    if (n == 0 || n % 4 != 0) {
        throw ValidationError(fmt::format("layered graph needs a positive multiple of 4, got {}", n));
    }
    const std::size_t q = n / 4;
    auto at = [q](std::size_t layer, std::size_t i) { return static_cast<Vertex>(layer * q + i); };
    std::vector<Edge> edges;
    edges.reserve(5 * q * q);
    for (std::size_t i = 0; i < q; ++i) {
        for (std::size_t j = 0; j < q; ++j) {
            edges.push_back({at(0, i), at(1, j)});
            edges.push_back({at(1, i), at(2, j)});
            edges.push_back({at(2, i), at(0, j)});
            edges.push_back({at(2, i), at(3, j)});
            edges.push_back({at(3, i), at(2, j)});
        }
    }
    return {"layered", Graph(n, std::move(edges)), 3, 3 * q,
            "layers A, B, C, D: A-B-C 3-cycles and C-D 2-cycles"};
}

std::size_t layered_layer(std::size_t n, Vertex v) { return v / (n / 4); }

std::size_t layered_internal_opt(std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    const std::size_t m = std::min({a, b, c});
    return 3 * m + 2 * std::min(c - m, d);
}

NamedInstance gen_appb_triangle(std::size_t copies) {
    if (copies == 0) throw ValidationError("copies must be at least 1");
    std::vector<Edge> edges;
    add_two_cycle(edges, 0, 1);
    add_two_cycle(edges, 1, 2);
    add_two_cycle(edges, 2, 0);
    return {"appb_triangle", replicate(Graph(3, std::move(edges)), copies), 2, 2 * copies,
            "triangles of 2-cycles"};
}

NamedInstance gen_appb_pentagon(std::size_t cap) {
    std::vector<Edge> edges;
    for (Vertex i = 0; i < 5; ++i) add_two_cycle(edges, i, (i + 1) % 5);
    return {"appb_pentagon", Graph(5, std::move(edges)), cap, 4, "5-cycle of 2-cycles"};
}

std::size_t long_chain_layer_count(std::size_t n) { return 2 * n / 9; }

std::vector<Vertex> long_chain_arm(std::size_t n) {
    std::vector<Vertex> arm;
    for (std::size_t i = 1; i <= n / 3; ++i) arm.push_back(static_cast<Vertex>(i));
    return arm;
}

std::vector<Vertex> long_chain_layer(std::size_t n, std::size_t layer) {
    const auto first = static_cast<Vertex>(1 + n / 3 + 3 * layer);
    return {first, first + 1, first + 2};
}

NamedInstance gen_long_chain(std::size_t n) {
    if (n == 0 || n % 9 != 0) {
        throw ValidationError(fmt::format("long-chain graph needs a positive multiple of 9, got {}", n));
    }
    const Vertex d = 0;
    const auto arm = long_chain_arm(n);
    const std::size_t layers = long_chain_layer_count(n);
    std::vector<Edge> edges;
    edges.push_back({d, arm.front()});
    for (std::size_t i = 0; i + 1 < arm.size(); ++i) edges.push_back({arm[i], arm[i + 1]});
    for (std::size_t i = 0; i < layers; ++i) {
        for (const Vertex x : long_chain_layer(n, i)) {
            edges.push_back({d, x});
            for (std::size_t j = i + 1; j < layers; ++j) {
                for (const Vertex y : long_chain_layer(n, j)) edges.push_back({x, y});
            }
        }
    }
    return {"long_chain", Graph(n + 1, std::move(edges), d), 0, n / 3,
            "altruist 0; known_opt is the longest chain length"};
}

NamedInstance make_instance(std::string_view name, std::size_t n, std::size_t copies) {
    if (copies == 0) throw ValidationError("copies must be at least 1");
    NamedInstance inst;
    if (name == "figure1") {
        inst = gen_figure1();
    } else if (name == "figure2") {
        inst = gen_figure2();
    } else if (name == "star_forest") {
        inst = gen_star_forest(n);
    } else if (name == "layered") {
        inst = gen_layered(n);
    } else if (name == "appb_triangle") {
        inst = gen_appb_triangle(1);
    } else if (name == "appb_pentagon") {
        inst = gen_appb_pentagon();
    } else if (name == "long_chain") {
        inst = gen_long_chain(n);
    } else {
        throw ValidationError(fmt::format("unknown instance '{}'", name));
    }
    if (copies > 1) {
        if (inst.graph.altruist()) throw ValidationError("instances with an altruist cannot be replicated");
        inst.graph = replicate(inst.graph, copies);
        inst.known_opt *= copies;
        inst.notes += fmt::format("; {} disjoint copies", copies);
    }
    return inst;
}

std::vector<std::string> instance_names() {
    return {"figure1", "figure2", "star_forest", "layered", "appb_triangle", "appb_pentagon",
            "long_chain"};
}

}  // namespace optin
