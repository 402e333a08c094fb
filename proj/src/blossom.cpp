#include "optin/blossom.hpp"

#include <algorithm>

#include "optin/errors.hpp"

namespace optin {

namespace {

constexpr int kNone = -1;

// Edmonds' algorithm with explicit base/blossom bookkeeping. Exposed vertices
// are processed in increasing id order and neighbours in sorted order, so the
// result is a pure function of the input.
class BlossomMatcher {
public:
    BlossomMatcher(const UndirectedGraph& g, std::vector<int> mate)
        : g_(g),
          n_(static_cast<int>(g.vertex_count())),
          mate_(std::move(mate)),
          parent_(n_),
          base_(n_),
          used_(n_),
          in_blossom_(n_),
          lca_mark_(n_) {}

    void run() {
        for (int root = 0; root < n_; ++root) {
            if (mate_[root] != kNone) continue;
            int v = find_augmenting_path(root);
            while (v != kNone) {
                const int pv = parent_[v];
                const int next = mate_[pv];
                mate_[v] = pv;
                mate_[pv] = v;
                v = next;
            }
        }
    }

    const std::vector<int>& mate() const { return mate_; }

private:
    int lowest_common_ancestor(int a, int b) {
        std::fill(lca_mark_.begin(), lca_mark_.end(), 0);
        for (;;) {
            a = base_[a];
            lca_mark_[a] = 1;
            if (mate_[a] == kNone) break;
            a = parent_[mate_[a]];
        }
        for (;;) {
            b = base_[b];
            if (lca_mark_[b]) return b;
            b = parent_[mate_[b]];
        }
    }

    void mark_path(int v, int b, int child) {
        while (base_[v] != b) {
            in_blossom_[base_[v]] = 1;
            in_blossom_[base_[mate_[v]]] = 1;
            parent_[v] = child;
            child = mate_[v];
            v = parent_[mate_[v]];
        }
    }

    int find_augmenting_path(int root) {
        std::fill(used_.begin(), used_.end(), 0);
        std::fill(parent_.begin(), parent_.end(), kNone);
        for (int i = 0; i < n_; ++i) base_[i] = i;

        queue_.clear();
        used_[root] = 1;
        queue_.push_back(root);
        for (std::size_t head = 0; head < queue_.size(); ++head) {
            const int v = queue_[head];
            for (const Vertex w : g_.neighbors(static_cast<Vertex>(v))) {
                int to = static_cast<int>(w);
                if (base_[v] == base_[to] || mate_[v] == to) continue;
                if (to == root || (mate_[to] != kNone && parent_[mate_[to]] != kNone)) {
                    // Odd cycle: contract the blossom onto its base.
                    const int cur = lowest_common_ancestor(v, to);
                    std::fill(in_blossom_.begin(), in_blossom_.end(), 0);
                    mark_path(v, cur, to);
                    mark_path(to, cur, v);
                    for (int i = 0; i < n_; ++i) {
                        if (in_blossom_[base_[i]]) {
                            base_[i] = cur;
                            if (!used_[i]) {
                                used_[i] = 1;
                                queue_.push_back(i);
                            }
                        }
                    }
                } else if (parent_[to] == kNone) {
                    parent_[to] = v;
                    if (mate_[to] == kNone) return to;
                    to = mate_[to];
                    used_[to] = 1;
                    queue_.push_back(to);
                }
            }
        }
        return kNone;
    }

    const UndirectedGraph& g_;
    int n_;
    std::vector<int> mate_;
    std::vector<int> parent_;
    std::vector<int> base_;
    std::vector<char> used_;
    std::vector<char> in_blossom_;
    std::vector<char> lca_mark_;
    std::vector<int> queue_;
};

Matching2 from_mates(const std::vector<int>& mate) {
    Matching2 m;
    for (std::size_t v = 0; v < mate.size(); ++v) {
        if (mate[v] != kNone && static_cast<std::size_t>(mate[v]) > v) {
            m.edges.push_back({static_cast<Vertex>(v), static_cast<Vertex>(mate[v])});
        }
    }
    return m;
}

}  // namespace

bool is_matching_of(const UndirectedGraph& ug, const Matching2& m) {
    std::vector<char> hit(ug.vertex_count(), 0);
    for (const UEdge& e : m.edges) {
        if (!ug.has_edge(e.a, e.b) || hit[e.a] || hit[e.b]) return false;
        hit[e.a] = hit[e.b] = 1;
    }
    return true;
}

Matching2 max_matching_blossom(const UndirectedGraph& ug) {
    return max_matching_blossom(ug, Matching2{});
}

Matching2 max_matching_blossom(const UndirectedGraph& ug, const Matching2& seed) {
    if (!is_matching_of(ug, seed)) {
        throw ValidationError("seed is not a matching of the graph");
    }
    std::vector<int> mate(ug.vertex_count(), kNone);
    for (const UEdge& e : seed.edges) {
        mate[e.a] = static_cast<int>(e.b);
        mate[e.b] = static_cast<int>(e.a);
    }
    BlossomMatcher matcher(ug, std::move(mate));
    matcher.run();
    return from_mates(matcher.mate());
}

std::size_t matching_number(const UndirectedGraph& ug) {
    return max_matching_blossom(ug).edges.size();
}

}  // namespace optin
