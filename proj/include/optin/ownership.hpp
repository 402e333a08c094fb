#pragma once

// Random assignment of vertices to players.
//
// Players are 0-based throughout the library; the CLI and CSV output number
// them from 1.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "optin/graph.hpp"
#include "optin/kernels.hpp"
#include "optin/rational.hpp"

namespace optin {

inline constexpr double kProfileSumTolerance = 1e-12;

class PlayerProfile {
public:
    PlayerProfile() = default;

    // Throws ValidationError when empty, when an entry lies outside [0, 1]
    // or when the entries do not sum to 1 within kProfileSumTolerance.
    explicit PlayerProfile(std::vector<Rational> probabilities);

    // Comma-separated entries, each a decimal or a fraction: "0.5,0.5", "1/3,2/3".
    static PlayerProfile parse(std::string_view text);
    static PlayerProfile uniform(std::size_t k);

    std::size_t player_count() const noexcept { return exact_.size(); }
    std::span<const Rational> exact() const noexcept { return exact_; }
    std::span<const double> probabilities() const noexcept { return approx_; }

    // Sorted 32-bit inverse-CDF cutpoints: a draw u goes to the player whose
    // index equals the number of cutpoints <= u.
    std::span<const std::uint32_t> cutpoints() const noexcept { return cutpoints_; }

    bool all_at_most_half() const;
    bool integral_inverse() const;  // every 1/p_i is an integer
    bool is_uniform() const;        // every p_i = 1/k

    std::string to_string() const;

private:
    std::vector<Rational> exact_;
    std::vector<double> approx_;
    std::vector<std::uint32_t> cutpoints_;
};

struct OwnershipAssignment {
    std::vector<std::uint32_t> owner;  // per vertex, in [0, players)
    std::uint64_t seed = 0;
    std::uint64_t trial_index = 0;
    std::size_t players = 0;

    std::vector<Vertex> vertices_of(std::size_t player) const;
};

// Stream id used for ownership draws; other random quantities use other ids.
inline constexpr std::uint32_t kOwnershipStream = 0;

// Vertex v's owner comes from the counter-based draw keyed by
// (seed, trial_index, v), so the result does not depend on call order.
OwnershipAssignment sample_ownership(const Graph& g, const PlayerProfile& profile,
                                     std::uint64_t seed, std::uint64_t trial_index,
                                     const kernels::KernelTable& kernels = kernels::active_kernels());

// A hand-written assignment. Throws ValidationError on a size mismatch or an
// owner outside [0, players).
OwnershipAssignment fixed_ownership(const Graph& g, std::vector<std::uint32_t> owner,
                                    std::size_t players);

// The subgraph induced by the player's vertices; the altruist survives only
// when the player owns it. Throws ValidationError for an invalid player.
Subgraph internal_subgraph(const Graph& g, const OwnershipAssignment& a, std::size_t player);

// Matched vertices of m owned by the player.
std::size_t restrict_matching(const Matching& m, const OwnershipAssignment& a, std::size_t player);

// restrict_matching for every player at once.
std::vector<std::size_t> restrict_matching_all(const Matching& m, const OwnershipAssignment& a,
                                               const kernels::KernelTable& kernels =
                                                   kernels::active_kernels());

}  // namespace optin
