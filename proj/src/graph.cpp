#include "optin/graph.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "optin/errors.hpp"

namespace optin {

namespace {

constexpr std::size_t kUnmapped = std::numeric_limits<std::size_t>::max();

void build_csr(std::size_t n, std::span<const Edge> sorted_edges,
               std::vector<std::size_t>& offsets, std::vector<Vertex>& targets) {
    offsets.assign(n + 1, 0);
    targets.resize(sorted_edges.size());
    for (const Edge& e : sorted_edges) {
        ++offsets[e.from + 1];
    }
    std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
    for (std::size_t i = 0; i < sorted_edges.size(); ++i) {
        targets[i] = sorted_edges[i].to;
    }
}

// Tiny union-find for component labelling.
class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<std::size_t> parent_;
};

std::vector<std::vector<Vertex>> group_components(DisjointSets& sets, std::size_t n) {
    std::vector<std::size_t> slot(n, kUnmapped);
    std::vector<std::vector<Vertex>> out;
    for (std::size_t v = 0; v < n; ++v) {
        const std::size_t root = sets.find(v);
        if (slot[root] == kUnmapped) {
            slot[root] = out.size();
            out.emplace_back();
        }
        out[slot[root]].push_back(static_cast<Vertex>(v));
    }
    return out;
}

std::vector<std::size_t> make_relabel(std::size_t n, std::span<const Vertex> keep,
                                      std::vector<Vertex>& original) {
    original.assign(keep.begin(), keep.end());
    std::sort(original.begin(), original.end());
    original.erase(std::unique(original.begin(), original.end()), original.end());
    std::vector<std::size_t> relabel(n, kUnmapped);
    for (std::size_t i = 0; i < original.size(); ++i) {
        if (original[i] >= n) {
            throw ValidationError(fmt::format("vertex {} out of range (graph has {} vertices)",
                                              original[i], n));
        }
        relabel[original[i]] = i;
    }
    return relabel;
}

// Whitespace tokenizer over one line.
std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) fields.push_back(line.substr(start, i - start));
    }
    return fields;
}

std::uint64_t parse_count(std::string_view field, std::size_t line, const char* what) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw ParseError(line, fmt::format("expected non-negative integer for {}, got '{}'",
                                           what, field));
    }
    return value;
}

}  // namespace

Graph::Graph(std::size_t vertex_count, std::vector<Edge> edges, std::optional<Vertex> altruist)
    : vertex_count_(vertex_count), edges_(std::move(edges)), altruist_(altruist) {
    if (vertex_count_ > std::numeric_limits<Vertex>::max()) {
        throw ValidationError("vertex count exceeds the 32-bit id range");
    }
    for (const Edge& e : edges_) {
        if (e.from >= vertex_count_ || e.to >= vertex_count_) {
            throw ValidationError(fmt::format("edge ({}, {}) has an endpoint >= {}", e.from, e.to,
                                              vertex_count_));
        }
        if (e.from == e.to) {
            throw ValidationError(fmt::format("self-loop at vertex {}", e.from));
        }
    }
    std::sort(edges_.begin(), edges_.end());
    const auto dup = std::adjacent_find(edges_.begin(), edges_.end());
    if (dup != edges_.end()) {
        throw ValidationError(fmt::format("duplicate edge ({}, {})", dup->from, dup->to));
    }
    if (altruist_ && *altruist_ >= vertex_count_) {
        throw ValidationError(fmt::format("altruist {} out of range", *altruist_));
    }
    build_csr(vertex_count_, edges_, offsets_, targets_);
}

std::span<const Vertex> Graph::successors(Vertex v) const {
    return std::span<const Vertex>(targets_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
}

bool Graph::has_edge(Vertex from, Vertex to) const {
    if (from >= vertex_count_) return false;
    const auto succ = successors(from);
    return std::binary_search(succ.begin(), succ.end(), to);
}

Cycle::Cycle(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() < 2) {
        throw ValidationError("a cycle needs at least two vertices");
    }
    std::vector<Vertex> sorted = vertices_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ValidationError("cycle repeats a vertex");
    }
    std::rotate(vertices_.begin(), std::min_element(vertices_.begin(), vertices_.end()),
                vertices_.end());
}

Matching::Matching(std::vector<Cycle> cycles) : cycles_(std::move(cycles)) {
    std::sort(cycles_.begin(), cycles_.end());
    std::vector<Vertex> seen;
    for (const Cycle& c : cycles_) {
        matched_ += c.size();
        seen.insert(seen.end(), c.vertices().begin(), c.vertices().end());
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
        throw ValidationError("matching cycles are not vertex-disjoint");
    }
}

std::vector<Vertex> Matching::matched_vertices() const {
    std::vector<Vertex> out;
    out.reserve(matched_);
    for (const Cycle& c : cycles_) {
        out.insert(out.end(), c.vertices().begin(), c.vertices().end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_valid_matching(const Graph& g, const Matching& m, std::size_t cap) {
    for (const Cycle& c : m.cycles()) {
        if (c.size() > cap) return false;
        const auto vs = c.vertices();
        for (std::size_t i = 0; i < vs.size(); ++i) {
            if (!g.has_edge(vs[i], vs[(i + 1) % vs.size()])) return false;
        }
    }
    return true;
}

UndirectedGraph::UndirectedGraph(std::size_t vertex_count, std::vector<UEdge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
    for (UEdge& e : edges_) {
        if (e.a >= vertex_count_ || e.b >= vertex_count_) {
            throw ValidationError(fmt::format("edge {{{}, {}}} has an endpoint >= {}", e.a, e.b,
                                              vertex_count_));
        }
        if (e.a == e.b) throw ValidationError(fmt::format("self-loop at vertex {}", e.a));
        if (e.a > e.b) std::swap(e.a, e.b);
    }
    std::sort(edges_.begin(), edges_.end());
    const auto dup = std::adjacent_find(edges_.begin(), edges_.end());
    if (dup != edges_.end()) {
        throw ValidationError(fmt::format("duplicate edge {{{}, {}}}", dup->a, dup->b));
    }

    offsets_.assign(vertex_count_ + 1, 0);
    for (const UEdge& e : edges_) {
        ++offsets_[e.a + 1];
        ++offsets_[e.b + 1];
    }
    std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
    adjacency_.resize(2 * edges_.size());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (const UEdge& e : edges_) {
        adjacency_[fill[e.a]++] = e.b;
        adjacency_[fill[e.b]++] = e.a;
    }
    for (std::size_t v = 0; v < vertex_count_; ++v) {
        std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
                  adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]));
    }
}

std::span<const Vertex> UndirectedGraph::neighbors(Vertex v) const {
    return std::span<const Vertex>(adjacency_).subspan(offsets_[v],
                                                       offsets_[v + 1] - offsets_[v]);
}

bool UndirectedGraph::has_edge(Vertex u, Vertex v) const {
    if (u >= vertex_count_) return false;
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

Graph parse_graph(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool have_header = false;
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    std::optional<Vertex> altruist;
    std::vector<Edge> edges;
    std::vector<std::size_t> edge_lines;

    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        const std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;

        const auto fields = split_fields(line);
        if (fields.empty() || fields.front().front() == '#') {
            if (end == text.size()) break;
            continue;
        }

        if (!have_header) {
            if (fields.size() != 2) {
                throw ParseError(line_no, "malformed header, expected 'n m'");
            }
            n = parse_count(fields[0], line_no, "vertex count");
            m = parse_count(fields[1], line_no, "edge count");
            if (n > std::numeric_limits<Vertex>::max()) {
                throw ParseError(line_no, "vertex count exceeds the 32-bit id range");
            }
            have_header = true;
        } else if (fields[0] == "altruist") {
            if (!edges.empty() || altruist) {
                throw ParseError(line_no, "'altruist' must directly follow the header, once");
            }
            if (fields.size() != 2) throw ParseError(line_no, "expected 'altruist <id>'");
            const auto id = parse_count(fields[1], line_no, "altruist id");
            if (id >= n) throw ParseError(line_no, fmt::format("altruist {} out of range", id));
            altruist = static_cast<Vertex>(id);
        } else {
            if (fields.size() != 2) throw ParseError(line_no, "expected edge line 'u v'");
            const auto u = parse_count(fields[0], line_no, "edge source");
            const auto v = parse_count(fields[1], line_no, "edge target");
            if (u >= n || v >= n) {
                throw ParseError(line_no,
                                 fmt::format("edge ({}, {}) has an endpoint >= {}", u, v, n));
            }
            if (u == v) throw ParseError(line_no, fmt::format("self-loop at vertex {}", u));
            if (edges.size() == m) {
                throw ParseError(line_no, fmt::format("more than the declared {} edges", m));
            }
            edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
            edge_lines.push_back(line_no);
        }
        if (end == text.size()) break;
    }

    if (!have_header) throw ParseError(line_no, "missing header 'n m'");
    if (edges.size() != m) {
        throw ParseError(line_no,
                         fmt::format("declared {} edges but found {}", m, edges.size()));
    }

    std::vector<std::size_t> order(edges.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return edges[x] < edges[y]; });
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (edges[order[i]] == edges[order[i - 1]]) {
            const Edge& e = edges[order[i]];
            throw ParseError(edge_lines[order[i]],
                             fmt::format("duplicate edge ({}, {})", e.from, e.to));
        }
    }
    return Graph(static_cast<std::size_t>(n), std::move(edges), altruist);
}

std::string serialize_graph(const Graph& g) {
    std::string out = fmt::format("{} {}\n", g.vertex_count(), g.edge_count());
    if (g.altruist()) out += fmt::format("altruist {}\n", *g.altruist());
    for (const Edge& e : g.edges()) {
        out += fmt::format("{} {}\n", e.from, e.to);
    }
    return out;
}

std::vector<Cycle> enumerate_cycles(const Graph& g, std::size_t cap) {
    if (cap < 2) throw ValidationError("cycle cap must be at least 2");
    std::vector<Cycle> cycles;
    std::vector<Vertex> path;
    std::vector<char> on_path(g.vertex_count(), 0);

    // Only vertices above the root may appear after it, so each cycle is
    // produced once, from its minimum vertex.
    auto extend = [&](auto&& self, Vertex root, Vertex v) -> void {
        for (const Vertex w : g.successors(v)) {
            if (w == root) {
                if (path.size() >= 2) cycles.emplace_back(path);
            } else if (w > root && !on_path[w] && path.size() < cap) {
                path.push_back(w);
                on_path[w] = 1;
                self(self, root, w);
                on_path[w] = 0;
                path.pop_back();
            }
        }
    };

    for (Vertex root = 0; root < g.vertex_count(); ++root) {
        path.assign(1, root);
        on_path[root] = 1;
        extend(extend, root, root);
        on_path[root] = 0;
    }
    std::sort(cycles.begin(), cycles.end());
    return cycles;
}

UndirectedGraph to_undirected(const Graph& g) {
    std::vector<UEdge> edges;
    for (const Edge& e : g.edges()) {
        if (e.from < e.to && g.has_edge(e.to, e.from)) edges.push_back({e.from, e.to});
    }
    return UndirectedGraph(g.vertex_count(), std::move(edges));
}

Graph to_directed(const UndirectedGraph& ug) {
    std::vector<Edge> edges;
    edges.reserve(2 * ug.edge_count());
    for (const UEdge& e : ug.edges()) {
        edges.push_back({e.a, e.b});
        edges.push_back({e.b, e.a});
    }
    return Graph(ug.vertex_count(), std::move(edges));
}

Subgraph induced_subgraph(const Graph& g, std::span<const Vertex> keep) {
    Subgraph out;
    const auto relabel = make_relabel(g.vertex_count(), keep, out.original);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < out.original.size(); ++i) {
        for (const Vertex w : g.successors(out.original[i])) {
            if (relabel[w] != kUnmapped) {
                edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(relabel[w])});
            }
        }
    }
    std::optional<Vertex> altruist;
    if (g.altruist() && relabel[*g.altruist()] != kUnmapped) {
        altruist = static_cast<Vertex>(relabel[*g.altruist()]);
    }
    out.graph = Graph(out.original.size(), std::move(edges), altruist);
    return out;
}

UndirectedSubgraph induced_subgraph(const UndirectedGraph& g, std::span<const Vertex> keep) {
    UndirectedSubgraph out;
    const auto relabel = make_relabel(g.vertex_count(), keep, out.original);
    std::vector<UEdge> edges;
    for (std::size_t i = 0; i < out.original.size(); ++i) {
        for (const Vertex w : g.neighbors(out.original[i])) {
            if (w > out.original[i] && relabel[w] != kUnmapped) {
                edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(relabel[w])});
            }
        }
    }
    out.graph = UndirectedGraph(out.original.size(), std::move(edges));
    return out;
}

std::vector<std::vector<Vertex>> weakly_connected_components(const Graph& g) {
    DisjointSets sets(g.vertex_count());
    for (const Edge& e : g.edges()) sets.unite(e.from, e.to);
    return group_components(sets, g.vertex_count());
}

std::vector<std::vector<Vertex>> connected_components(const UndirectedGraph& g) {
    DisjointSets sets(g.vertex_count());
    for (const UEdge& e : g.edges()) sets.unite(e.a, e.b);
    return group_components(sets, g.vertex_count());
}

Graph add_altruist_backedges(const Graph& g) {
    if (!g.altruist()) throw ValidationError("graph has no designated altruist");
    const Vertex d = *g.altruist();
    std::vector<Edge> edges(g.edges().begin(), g.edges().end());
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (v != d && !g.has_edge(v, d)) edges.push_back({v, d});
    }
    return Graph(g.vertex_count(), std::move(edges), d);
}

Graph disjoint_union(std::span<const Graph> parts) {
    std::size_t offset = 0;
    std::vector<Edge> edges;
    std::optional<Vertex> altruist;
    for (const Graph& part : parts) {
        for (const Edge& e : part.edges()) {
            edges.push_back({static_cast<Vertex>(e.from + offset),
                             static_cast<Vertex>(e.to + offset)});
        }
        if (!altruist && part.altruist()) {
            altruist = static_cast<Vertex>(*part.altruist() + offset);
        }
        offset += part.vertex_count();
    }
    return Graph(offset, std::move(edges), altruist);
}

Graph replicate(const Graph& g, std::size_t copies) {
    std::vector<Graph> parts(copies, g);
    return disjoint_union(parts);
}

}  // namespace optin
