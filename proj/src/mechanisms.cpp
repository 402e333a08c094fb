#include "optin/mechanisms.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "optin/blossom.hpp"
#include "optin/errors.hpp"

namespace optin {

namespace {

void check_bound_args(std::size_t k, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw ValidationError(fmt::format("delta must lie in (0, 1), got {}", delta));
    }
    if (k == 0) throw ValidationError("k must be positive");
}

std::vector<Cycle> lift(const Matching& local, std::span<const Vertex> original) {
    std::vector<Cycle> out;
    for (const Cycle& c : local.cycles()) {
        std::vector<Vertex> mapped;
        for (const Vertex v : c.vertices()) mapped.push_back(original[v]);
        out.emplace_back(std::move(mapped));
    }
    return out;
}

}  // namespace

Matching internal_optimum(const Graph& g, const OwnershipAssignment& a, std::size_t player,
                          const SolveOptions& opts) {
    const Subgraph sub = internal_subgraph(g, a, player);
    return Matching(lift(max_cycle_cover(sub.graph, opts), sub.original));
}

Matching augment_mechanism(const Graph& g, const OwnershipAssignment& a) {
    SolveOptions opts;
    opts.cycle_cap = 2;
    Matching2 seed;
    for (std::size_t i = 0; i < a.players; ++i) {
        const Matching internal = internal_optimum(g, a, i, opts);
        for (const Cycle& c : internal.cycles()) {
            const auto vs = c.vertices();
            seed.edges.push_back({std::min(vs[0], vs[1]), std::max(vs[0], vs[1])});
        }
    }
    std::sort(seed.edges.begin(), seed.edges.end());

    const Matching2 grown = max_matching_blossom(to_undirected(g), seed);
    std::vector<Cycle> cycles;
    for (const UEdge& e : grown.edges) cycles.emplace_back(std::vector<Vertex>{e.a, e.b});
    return Matching(std::move(cycles));
}

MechanismOutcome veto_mechanism(const Graph& g, const OwnershipAssignment& a,
                                const SolveOptions& opts, const Matching& pinned) {
    MechanismOutcome out;
    std::vector<Matching> internal;
    const std::vector<std::size_t> shares = restrict_matching_all(pinned, a);
    for (std::size_t i = 0; i < a.players; ++i) {
        internal.push_back(internal_optimum(g, a, i, opts));
        PlayerOutcome po;
        po.internal_opt = internal.back().size();
        po.share = shares[i];
        if (po.internal_opt > po.share) out.vetoing_players.push_back(i);
        out.per_player.push_back(po);
    }

    out.accepted = out.vetoing_players.empty();
    if (out.accepted) {
        out.final_matching = pinned;
        for (PlayerOutcome& po : out.per_player) po.final_allocation = po.share;
    } else {
        std::vector<Cycle> all;
        for (const Matching& m : internal) all.insert(all.end(), m.cycles().begin(), m.cycles().end());
        out.final_matching = Matching(std::move(all));
        for (PlayerOutcome& po : out.per_player) po.final_allocation = po.internal_opt;
    }
    return out;
}

MechanismOutcome veto_mechanism(const Graph& g, const OwnershipAssignment& a,
                                const SolveOptions& opts) {
    return veto_mechanism(g, a, opts, max_cycle_cover(g, opts));
}

std::vector<GapRecord> ir_gaps(const Graph& g, const OwnershipAssignment& a,
                               const SolveOptions& opts, const Matching& pinned) {
    const std::vector<std::size_t> shares = restrict_matching_all(pinned, a);
    std::vector<GapRecord> out;
    for (std::size_t i = 0; i < a.players; ++i) {
        GapRecord r;
        r.player = i;
        r.internal_opt = internal_optimum(g, a, i, opts).size();
        r.share = shares[i];
        r.gap = static_cast<std::int64_t>(r.internal_opt) - static_cast<std::int64_t>(r.share);
        out.push_back(r);
    }
    return out;
}

double theorem1_bound(std::size_t opt_size, std::size_t cap, std::size_t k, double delta) {
    check_bound_args(k, delta);
    const double log_term = std::log(4.0 * static_cast<double>(k) / delta);
    return static_cast<double>(2 * cap + 1) * std::sqrt(static_cast<double>(opt_size) * log_term);
}

double corollary1_bound(std::size_t opt_size, std::size_t cap, std::size_t k, double delta) {
    check_bound_args(k, delta);
    const double kd = static_cast<double>(k);
    const double opt = static_cast<double>(opt_size);
    const double log_term = std::log(2.0 * kd / delta);
    return kd * static_cast<double>(2 * cap + 1) * std::sqrt(opt * log_term) +
           kd * static_cast<double>(cap) * std::sqrt((2.0 / kd) * opt * log_term);
}

}  // namespace optin
