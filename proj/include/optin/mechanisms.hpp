#pragma once

// Individually rational mechanisms and per-player gaps.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "optin/graph.hpp"
#include "optin/ownership.hpp"
#include "optin/solver.hpp"

namespace optin {

struct PlayerOutcome {
    std::size_t internal_opt = 0;      // |opt(H_i)|
    std::size_t share = 0;             // |opt(G) restricted to H_i|
    std::size_t final_allocation = 0;  // player's matched vertices in the final matching
};

struct MechanismOutcome {
    bool accepted = false;
    Matching final_matching;
    std::vector<PlayerOutcome> per_player;
    std::vector<std::size_t> vetoing_players;
};

struct GapRecord {
    std::size_t player = 0;
    std::size_t internal_opt = 0;
    std::size_t share = 0;
    std::int64_t gap = 0;  // internal_opt - share
};

// opt(H_i) in host vertex ids.
Matching internal_optimum(const Graph& g, const OwnershipAssignment& a, std::size_t player,
                          const SolveOptions& opts);

// Union of the players' internal 2-cycle optima, grown by augmenting paths
// over the 2-cycle graph into a maximum matching. Every vertex matched
// internally stays matched. Only 2-cycles of g are considered.
Matching augment_mechanism(const Graph& g, const OwnershipAssignment& a);

// Proposes `pinned` (a maximum matching of g under opts.cycle_cap). Any
// player with |opt(H_i)| > share vetoes, and the outcome falls back to the
// union of the internal optima.
MechanismOutcome veto_mechanism(const Graph& g, const OwnershipAssignment& a,
                                const SolveOptions& opts, const Matching& pinned);
MechanismOutcome veto_mechanism(const Graph& g, const OwnershipAssignment& a,
                                const SolveOptions& opts);

std::vector<GapRecord> ir_gaps(const Graph& g, const OwnershipAssignment& a,
                               const SolveOptions& opts, const Matching& pinned);

// (2L+1) sqrt(opt ln(4k/delta)). Throws ValidationError unless 0 < delta < 1.
double theorem1_bound(std::size_t opt_size, std::size_t cap, std::size_t k, double delta);

// k(2L+1) sqrt(opt ln(2k/delta)) + kL sqrt((2/k) opt ln(2k/delta)).
double corollary1_bound(std::size_t opt_size, std::size_t cap, std::size_t k, double delta);

}  // namespace optin
