#include "optin/solver.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include <fmt/format.h>

#include "optin/blossom.hpp"
#include "optin/errors.hpp"

namespace optin {

namespace {

class NodeBudget {
public:
    explicit NodeBudget(std::uint64_t limit) : limit_(limit) {}

    void spend() {
        if (++used_ > limit_) {
            throw SolverLimitError(
                fmt::format("exact search exceeded the node limit of {}", limit_));
        }
    }

private:
    std::uint64_t limit_;
    std::uint64_t used_ = 0;
};

// Include/exclude branch and bound over cycles in canonical order. Including
// before excluding visits packings in lexicographic order, and only strict
// improvements replace the incumbent, so the first optimum found is the
// lexicographically least one.
class PackingSearch {
public:
    PackingSearch(std::size_t vertex_count, const std::vector<Cycle>& cycles, NodeBudget& budget)
        : n_(vertex_count),
          cycles_(cycles),
          budget_(budget),
          used_(vertex_count, 0),
          coverable_(vertex_count, 0),
          out_edges_(vertex_count),
          right_mate_(vertex_count),
          visited_(vertex_count) {}

    std::vector<std::size_t> solve() {
        search(0, 0);
        return best_set_;
    }

private:
    bool compatible(const Cycle& c) const {
        return std::none_of(c.vertices().begin(), c.vertices().end(),
                            [&](Vertex v) { return used_[v] != 0; });
    }

    void search(std::size_t i, std::size_t current) {
        budget_.spend();
        while (i < cycles_.size() && !compatible(cycles_[i])) ++i;

        if (current > best_) {
            best_ = current;
            best_set_ = chosen_;
        }
        if (i == cycles_.size()) return;
        if (current + upper_bound(i, best_ - current) <= best_) return;

        const Cycle& c = cycles_[i];
        for (const Vertex v : c.vertices()) used_[v] = 1;
        chosen_.push_back(i);
        search(i + 1, current + c.size());
        chosen_.pop_back();
        for (const Vertex v : c.vertices()) used_[v] = 0;

        search(i + 1, current);
    }

    // Two relaxations of the remaining packing problem: free vertices that
    // some compatible cycle still covers, and a bipartite (successor)
    // assignment over the edges of those cycles. Each matched vertex of a
    // packing consumes one distinct out-edge and one distinct in-edge, so the
    // assignment size bounds the number of vertices any packing can add.
    std::size_t upper_bound(std::size_t from, std::size_t must_beat) {
        std::fill(coverable_.begin(), coverable_.end(), 0);
        for (auto& out : out_edges_) out.clear();
        std::size_t cover = 0;
        for (std::size_t j = from; j < cycles_.size(); ++j) {
            const Cycle& c = cycles_[j];
            if (!compatible(c)) continue;
            const auto vs = c.vertices();
            for (std::size_t t = 0; t < vs.size(); ++t) {
                if (!coverable_[vs[t]]) {
                    coverable_[vs[t]] = 1;
                    ++cover;
                }
                out_edges_[vs[t]].push_back(vs[(t + 1) % vs.size()]);
            }
        }
        if (cover <= must_beat) return cover;

        std::fill(right_mate_.begin(), right_mate_.end(), -1);
        std::size_t assigned = 0;
        for (std::size_t v = 0; v < n_; ++v) {
            if (out_edges_[v].empty()) continue;
            auto& out = out_edges_[v];
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
            std::fill(visited_.begin(), visited_.end(), 0);
            if (try_assign(static_cast<Vertex>(v))) ++assigned;
        }
        return std::min(cover, assigned);
    }

    bool try_assign(Vertex v) {
        for (const Vertex w : out_edges_[v]) {
            if (visited_[w]) continue;
            visited_[w] = 1;
            if (right_mate_[w] < 0 || try_assign(static_cast<Vertex>(right_mate_[w]))) {
                right_mate_[w] = static_cast<int>(v);
                return true;
            }
        }
        return false;
    }

    std::size_t n_;
    const std::vector<Cycle>& cycles_;
    NodeBudget& budget_;
    std::vector<char> used_;
    std::vector<std::size_t> chosen_;
    std::vector<std::size_t> best_set_;
    std::size_t best_ = 0;

    std::vector<char> coverable_;
    std::vector<std::vector<Vertex>> out_edges_;
    std::vector<int> right_mate_;
    std::vector<char> visited_;
};

// Lexicographically least maximum matching of 2-cycles: walk the 2-cycles in
// order and keep one whenever the rest of the graph can still complete an
// optimum around it.
std::vector<Cycle> greedy_two_cycles(const Graph& component) {
    const UndirectedGraph ug = to_undirected(component);
    const std::size_t target = matching_number(ug);
    std::vector<Cycle> picked;
    if (target == 0) return picked;

    std::vector<char> removed(ug.vertex_count(), 0);
    auto nu_without = [&](Vertex a, Vertex b) {
        std::vector<Vertex> keep;
        for (Vertex v = 0; v < ug.vertex_count(); ++v) {
            if (!removed[v] && v != a && v != b) keep.push_back(v);
        }
        return matching_number(induced_subgraph(ug, keep).graph);
    };

    for (const UEdge& e : ug.edges()) {
        if (picked.size() == target) break;
        if (removed[e.a] || removed[e.b]) continue;
        if (picked.size() + 1 + nu_without(e.a, e.b) == target) {
            picked.emplace_back(std::vector<Vertex>{e.a, e.b});
            removed[e.a] = removed[e.b] = 1;
        }
    }
    return picked;
}

std::vector<Cycle> solve_component(const Graph& component, const SolveOptions& opts,
                                   NodeBudget& budget) {
    if (opts.cycle_cap == 2 && opts.blossom_fast_path) {
        budget.spend();
        return greedy_two_cycles(component);
    }
    const std::vector<Cycle> cycles = enumerate_cycles(component, opts.cycle_cap);
    if (cycles.empty()) return {};
    PackingSearch search(component.vertex_count(), cycles, budget);
    std::vector<Cycle> picked;
    for (const std::size_t idx : search.solve()) picked.push_back(cycles[idx]);
    return picked;
}

}  // namespace

Matching max_cycle_cover(const Graph& g, const SolveOptions& opts) {
    if (opts.cycle_cap < 2) throw ValidationError("cycle cap must be at least 2");
    NodeBudget budget(opts.node_limit);
    std::vector<Cycle> all;
    for (const auto& component : weakly_connected_components(g)) {
        if (component.size() < 2) continue;
        const Subgraph sub = induced_subgraph(g, component);
        if (sub.graph.edge_count() < 2) continue;
        for (const Cycle& local : solve_component(sub.graph, opts, budget)) {
            std::vector<Vertex> mapped;
            for (const Vertex v : local.vertices()) mapped.push_back(sub.original[v]);
            all.emplace_back(std::move(mapped));
        }
    }
    return Matching(std::move(all));
}

Matching brute_force_cover(const Graph& g, std::size_t cap) {
    if (cap < 2) throw ValidationError("cycle cap must be at least 2");
    const std::size_t n = g.vertex_count();
    if (n > kBruteForceMaxVertices) {
        throw ValidationError(fmt::format("brute force limited to {} vertices, got {}",
                                          kBruteForceMaxVertices, n));
    }

    // Every vertex subset of admissible size, every ordering with the
    // minimum first: keep those whose consecutive pairs are all edges.
    std::vector<std::vector<Vertex>> cycles;
    std::vector<std::uint32_t> cycle_mask;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        const auto size = static_cast<std::size_t>(std::popcount(mask));
        if (size < 2 || size > cap) continue;
        std::vector<Vertex> members;
        for (Vertex v = 0; v < n; ++v) {
            if (mask & (1u << v)) members.push_back(v);
        }
        do {
            bool closed = true;
            for (std::size_t t = 0; t < size && closed; ++t) {
                closed = g.has_edge(members[t], members[(t + 1) % size]);
            }
            if (closed) {
                cycles.push_back(members);
                cycle_mask.push_back(mask);
            }
        } while (std::next_permutation(members.begin() + 1, members.end()));
    }

    // best[free] = most vertices coverable using only vertices in `free`.
    const std::uint32_t full = (n == 0) ? 0 : ((1u << n) - 1);
    std::vector<int> best(std::size_t{1} << n, -1);
    std::vector<int> choice(std::size_t{1} << n, -1);
    auto solve = [&](auto&& self, std::uint32_t free) -> int {
        if (free == 0) return 0;
        int& memo = best[free];
        if (memo >= 0) return memo;
        const int low = std::countr_zero(free);
        int value = self(self, free & ~(1u << low));
        int pick = -1;
        for (std::size_t c = 0; c < cycles.size(); ++c) {
            const std::uint32_t cm = cycle_mask[c];
            if (!(cm & (1u << low)) || (cm & ~free)) continue;
            const int with = std::popcount(cm) + self(self, free & ~cm);
            if (with > value) {
                value = with;
                pick = static_cast<int>(c);
            }
        }
        choice[free] = pick;
        return memo = value;
    };
    solve(solve, full);

    std::vector<Cycle> picked;
    std::uint32_t free = full;
    while (free != 0) {
        const int low = std::countr_zero(free);
        const int c = choice[free];
        if (c < 0) {
            free &= ~(1u << low);
        } else {
            picked.emplace_back(cycles[static_cast<std::size_t>(c)]);
            free &= ~cycle_mask[static_cast<std::size_t>(c)];
        }
    }
    return Matching(std::move(picked));
}

Chain longest_chain_dag(const Graph& g) {
    if (!g.altruist()) throw ValidationError("graph has no designated altruist");
    const std::size_t n = g.vertex_count();

    std::vector<std::size_t> indegree(n, 0);
    for (const Edge& e : g.edges()) ++indegree[e.to];
    std::vector<Vertex> order;
    order.reserve(n);
    for (Vertex v = 0; v < n; ++v) {
        if (indegree[v] == 0) order.push_back(v);
    }
    for (std::size_t head = 0; head < order.size(); ++head) {
        for (const Vertex w : g.successors(order[head])) {
            if (--indegree[w] == 0) order.push_back(w);
        }
    }
    if (order.size() != n) throw ValidationError("graph contains a directed cycle");

    // reach[v] = vertices on the longest path starting at v, v included.
    std::vector<std::size_t> reach(n, 1);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        for (const Vertex w : g.successors(*it)) {
            reach[*it] = std::max(reach[*it], reach[w] + 1);
        }
    }

    Chain chain;
    Vertex v = *g.altruist();
    chain.vertices.push_back(v);
    while (reach[v] > 1) {
        for (const Vertex w : g.successors(v)) {
            if (reach[w] + 1 == reach[v]) {
                v = w;
                break;
            }
        }
        chain.vertices.push_back(v);
    }
    return chain;
}

}  // namespace optin
