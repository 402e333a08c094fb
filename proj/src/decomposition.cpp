#include "optin/decomposition.hpp"

#include <algorithm>
#include <bit>

#include <fmt/format.h>

#include "optin/blossom.hpp"
#include "optin/errors.hpp"

namespace optin {

namespace {

std::vector<Vertex> without(std::size_t n, Vertex skip) {
    std::vector<Vertex> keep;
    keep.reserve(n);
    for (Vertex v = 0; v < n; ++v) {
        if (v != skip) keep.push_back(v);
    }
    return keep;
}

std::vector<std::vector<Vertex>> components_within(const UndirectedGraph& ug,
                                                   std::span<const Vertex> vertices) {
    const UndirectedSubgraph sub = induced_subgraph(ug, vertices);
    std::vector<std::vector<Vertex>> out;
    for (const auto& comp : connected_components(sub.graph)) {
        std::vector<Vertex> mapped;
        for (const Vertex v : comp) mapped.push_back(sub.original[v]);
        out.push_back(std::move(mapped));
    }
    return out;
}

Part make_component_part(const UndirectedGraph& ug, PartKind kind, std::vector<Vertex> comp) {
    Part part;
    part.kind = kind;
    part.anchor = comp.front();
    for (const Vertex v : comp) {
        for (const Vertex w : ug.neighbors(v)) {
            if (w > v && std::binary_search(comp.begin(), comp.end(), w)) {
                part.edges.push_back({v, w});
            }
        }
    }
    part.vertices = std::move(comp);
    return part;
}

void check_probability(const Rational& p) {
    if (p < 0 || p > 1) {
        throw ValidationError(fmt::format("probability {} outside [0, 1]", to_string(p)));
    }
}

Rational power(const Rational& base, std::size_t exponent) {
    Rational result = 1;
    for (std::size_t i = 0; i < exponent; ++i) result *= base;
    return result;
}

}  // namespace

EGDecomposition edmonds_gallai(const UndirectedGraph& ug) {
    const std::size_t n = ug.vertex_count();
    const std::size_t nu = matching_number(ug);
    EGDecomposition eg;
    std::vector<char> in_d(n, 0);
    for (Vertex v = 0; v < n; ++v) {
        // v is missed by some maximum matching iff removing it keeps nu.
        const auto keep = without(n, v);
        if (matching_number(induced_subgraph(ug, keep).graph) == nu) {
            in_d[v] = 1;
            eg.d.push_back(v);
        }
    }
    for (Vertex v = 0; v < n; ++v) {
        if (in_d[v]) continue;
        const auto nb = ug.neighbors(v);
        const bool touches_d = std::any_of(nb.begin(), nb.end(), [&](Vertex w) { return in_d[w]; });
        (touches_d ? eg.a : eg.c).push_back(v);
    }
    eg.d_components = components_within(ug, eg.d);
    return eg;
}

bool is_factor_critical(const UndirectedGraph& ug) {
    const std::size_t n = ug.vertex_count();
    if (n % 2 == 0) return false;
    for (Vertex v = 0; v < n; ++v) {
        const auto keep = without(n, v);
        if (2 * matching_number(induced_subgraph(ug, keep).graph) != n - 1) return false;
    }
    return true;
}

const char* to_string(PartKind kind) {
    switch (kind) {
        case PartKind::c_component: return "c_component";
        case PartKind::star: return "star";
        case PartKind::d_component: return "d_component";
    }
    return "unknown";
}

UndirectedSubgraph Part::local() const {
    UndirectedSubgraph out;
    out.original = vertices;
    std::vector<UEdge> relabelled;
    relabelled.reserve(edges.size());
    auto index_of = [&](Vertex v) {
        return static_cast<Vertex>(std::lower_bound(vertices.begin(), vertices.end(), v) -
                                   vertices.begin());
    };
    for (const UEdge& e : edges) relabelled.push_back({index_of(e.a), index_of(e.b)});
    out.graph = UndirectedGraph(vertices.size(), std::move(relabelled));
    return out;
}

EdgePartition build_partition(const UndirectedGraph& ug, const EGDecomposition& eg) {
    EdgePartition out;
    for (auto& comp : components_within(ug, eg.c)) {
        Part part = make_component_part(ug, PartKind::c_component, std::move(comp));
        if (!part.edges.empty()) out.parts.push_back(std::move(part));
    }

    std::vector<char> in_a(ug.vertex_count(), 0);
    for (const Vertex v : eg.a) in_a[v] = 1;
    for (const Vertex centre : eg.a) {
        Part star;
        star.kind = PartKind::star;
        star.anchor = centre;
        star.vertices.push_back(centre);
        for (const Vertex w : ug.neighbors(centre)) {
            if (in_a[w] && w < centre) continue;
            star.edges.push_back({std::min(centre, w), std::max(centre, w)});
            star.vertices.push_back(w);
        }
        std::sort(star.edges.begin(), star.edges.end());
        std::sort(star.vertices.begin(), star.vertices.end());
        if (!star.edges.empty()) out.parts.push_back(std::move(star));
    }

    for (const auto& comp : eg.d_components) {
        Part part = make_component_part(ug, PartKind::d_component, comp);
        if (!part.edges.empty()) out.parts.push_back(std::move(part));
    }
    return out;
}

Claim1Report verify_claim1(const UndirectedGraph& ug, const EdgePartition& parts) {
    Claim1Report report;
    report.lhs = 2 * matching_number(ug);
    for (const Part& part : parts.parts) {
        const std::size_t size = 2 * matching_number(part.local().graph);
        report.part_sizes.push_back(size);
        report.rhs += size;
    }
    return report;
}

bool is_edge_partition(const UndirectedGraph& ug, const EdgePartition& parts) {
    std::vector<UEdge> all;
    for (const Part& part : parts.parts) all.insert(all.end(), part.edges.begin(), part.edges.end());
    std::sort(all.begin(), all.end());
    return std::equal(all.begin(), all.end(), ug.edges().begin(), ug.edges().end());
}

SubsetOptProfile subset_opt_profile(const Graph& g, std::size_t cap) {
    const std::size_t n = g.vertex_count();
    if (n > kExactMaxVertices) {
        throw ValidationError(fmt::format("exact enumeration limited to {} vertices, got {}",
                                          kExactMaxVertices, n));
    }
    // A cycle lies inside S with min(S) on it only if min(S) is the cycle's
    // canonical first vertex, so cycles are bucketed by that vertex.
    std::vector<std::vector<std::uint32_t>> by_min(n);
    for (const Cycle& c : enumerate_cycles(g, cap)) {
        std::uint32_t mask = 0;
        for (const Vertex v : c.vertices()) mask |= 1u << v;
        by_min[c.vertices().front()].push_back(mask);
    }

    const std::size_t subsets = std::size_t{1} << n;
    std::vector<std::uint8_t> opt(subsets, 0);
    SubsetOptProfile profile;
    profile.vertex_count = n;
    profile.weighted.assign(n + 1, 0);
    for (std::uint32_t mask = 1; mask < subsets; ++mask) {
        const int low = std::countr_zero(mask);
        std::uint8_t best = opt[mask & (mask - 1)];
        for (const std::uint32_t cm : by_min[static_cast<std::size_t>(low)]) {
            if ((cm & ~mask) != 0) continue;
            const auto with = static_cast<std::uint8_t>(std::popcount(cm) + opt[mask & ~cm]);
            best = std::max(best, with);
        }
        opt[mask] = best;
        profile.weighted[static_cast<std::size_t>(std::popcount(mask))] += best;
    }
    profile.full_opt = opt[subsets - 1];
    return profile;
}

Rational expectation_from_profile(const SubsetOptProfile& profile, const Rational& p) {
    check_probability(p);
    const std::size_t n = profile.vertex_count;
    const Rational q = 1 - p;
    Rational total = 0;
    for (std::size_t s = 0; s <= n; ++s) {
        if (profile.weighted[s] == 0) continue;
        total += power(p, s) * power(q, n - s) * Rational(profile.weighted[s]);
    }
    return total;
}

Rational exact_internal_expectation(const Graph& g, std::size_t cap, const Rational& p) {
    check_probability(p);
    return expectation_from_profile(subset_opt_profile(g, cap), p);
}

Rational exact_internal_expectation(const UndirectedGraph& ug, const Rational& p) {
    return exact_internal_expectation(to_directed(ug), 2, p);
}

Claim2Value claim2_closed_form(unsigned t, double p) {
    double tail = 1.0;
    for (unsigned i = 0; i < 2 * t + 1; ++i) tail *= (1.0 - 2.0 * p);
    return {(2.0 * t + 1.0) * p - 0.5 + 0.5 * tail, 2.0 * t * p};
}

Rational claim2_closed_form_exact(unsigned t, const Rational& p) {
    const Rational half(1, 2);
    return Rational(2 * t + 1) * p - half + half * power(1 - 2 * p, 2 * t + 1);
}

std::vector<ExpectationPoint> expectation_sweep(const Graph& g, std::size_t cap,
                                                std::span<const Rational> ps) {
    const SubsetOptProfile profile = subset_opt_profile(g, cap);
    std::vector<ExpectationPoint> out;
    for (const Rational& p : ps) {
        out.push_back({p, expectation_from_profile(profile, p),
                       p * Rational(profile.full_opt)});
    }
    return out;
}

}  // namespace optin
