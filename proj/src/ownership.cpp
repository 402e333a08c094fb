#include "optin/ownership.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "optin/errors.hpp"

namespace optin {

namespace {

std::vector<std::string_view> split_commas(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        out.push_back(text.substr(start, comma == std::string_view::npos ? comma : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

void check_player(const OwnershipAssignment& a, std::size_t player) {
    if (player >= a.players) {
        throw ValidationError(
            fmt::format("player {} out of range (k = {})", player + 1, a.players));
    }
}

}  // namespace

PlayerProfile::PlayerProfile(std::vector<Rational> probabilities)
    : exact_(std::move(probabilities)) {
    if (exact_.empty()) throw ValidationError("a profile needs at least one player");
    Rational sum = 0;
    for (const Rational& p : exact_) {
        if (p < 0 || p > 1) {
            throw ValidationError(fmt::format("probability {} outside [0, 1]", optin::to_string(p)));
        }
        sum += p;
        approx_.push_back(to_double(p));
    }
    if (std::abs(to_double(sum - 1)) > kProfileSumTolerance) {
        throw ValidationError(
            fmt::format("probabilities sum to {}, not 1", to_double(sum)));
    }

    const Rational scale = Rational(std::uint64_t{1} << 32);
    Rational cumulative = 0;
    for (std::size_t j = 0; j + 1 < exact_.size(); ++j) {
        cumulative += exact_[j];
        // round half up: floor(x + 1/2)
        const Rational scaled = cumulative * scale + Rational(1, 2);
        const boost::multiprecision::cpp_int cut =
            numerator(scaled) / denominator(scaled);
        if (cut >= (boost::multiprecision::cpp_int(1) << 32)) break;
        cutpoints_.push_back(cut.convert_to<std::uint32_t>());
    }
}

PlayerProfile PlayerProfile::parse(std::string_view text) {
    std::vector<Rational> probs;
    for (const std::string_view field : split_commas(text)) {
        const std::string_view entry = trim(field);
        if (entry.empty()) throw ValidationError(fmt::format("empty entry in profile '{}'", text));
        probs.push_back(parse_rational(entry));
    }
    return PlayerProfile(std::move(probs));
}

PlayerProfile PlayerProfile::uniform(std::size_t k) {
    if (k == 0) throw ValidationError("a profile needs at least one player");
    return PlayerProfile(std::vector<Rational>(k, Rational(1, static_cast<long long>(k))));
}

bool PlayerProfile::all_at_most_half() const {
    return std::all_of(exact_.begin(), exact_.end(),
                       [](const Rational& p) { return p <= Rational(1, 2); });
}

bool PlayerProfile::integral_inverse() const {
    return std::all_of(exact_.begin(), exact_.end(),
                       [](const Rational& p) { return p > 0 && numerator(p) == 1; });
}

bool PlayerProfile::is_uniform() const {
    const Rational target(1, static_cast<long long>(exact_.size()));
    return std::all_of(exact_.begin(), exact_.end(),
                       [&](const Rational& p) { return p == target; });
}

std::string PlayerProfile::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < exact_.size(); ++i) {
        if (i > 0) out += ',';
        out += optin::to_string(exact_[i]);
    }
    return out;
}

std::vector<Vertex> OwnershipAssignment::vertices_of(std::size_t player) const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < owner.size(); ++v) {
        if (owner[v] == player) out.push_back(v);
    }
    return out;
}

OwnershipAssignment sample_ownership(const Graph& g, const PlayerProfile& profile,
                                     std::uint64_t seed, std::uint64_t trial_index,
                                     const kernels::KernelTable& kernels) {
    OwnershipAssignment a;
    a.seed = seed;
    a.trial_index = trial_index;
    a.players = profile.player_count();
    a.owner.resize(g.vertex_count());
    const kernels::StreamKey key{seed, trial_index, kOwnershipStream};
    kernels.assign_owners(key, 0, profile.cutpoints(), a.owner);
    return a;
}

OwnershipAssignment fixed_ownership(const Graph& g, std::vector<std::uint32_t> owner,
                                    std::size_t players) {
    if (owner.size() != g.vertex_count()) {
        throw ValidationError(fmt::format("assignment covers {} vertices, graph has {}",
                                          owner.size(), g.vertex_count()));
    }
    for (const std::uint32_t o : owner) {
        if (o >= players) throw ValidationError(fmt::format("owner {} out of range", o + 1));
    }
    OwnershipAssignment a;
    a.owner = std::move(owner);
    a.players = players;
    return a;
}

Subgraph internal_subgraph(const Graph& g, const OwnershipAssignment& a, std::size_t player) {
    check_player(a, player);
    if (a.owner.size() != g.vertex_count()) {
        throw ValidationError("assignment does not match the graph");
    }
    const auto keep = a.vertices_of(player);
    return induced_subgraph(g, keep);
}

std::size_t restrict_matching(const Matching& m, const OwnershipAssignment& a, std::size_t player) {
    check_player(a, player);
    std::size_t count = 0;
    for (const Cycle& c : m.cycles()) {
        for (const Vertex v : c.vertices()) {
            if (a.owner.at(v) == player) ++count;
        }
    }
    return count;
}

std::vector<std::size_t> restrict_matching_all(const Matching& m, const OwnershipAssignment& a,
                                               const kernels::KernelTable& kernels) {
    std::vector<std::uint8_t> matched(a.owner.size(), 0);
    for (const Cycle& c : m.cycles()) {
        for (const Vertex v : c.vertices()) matched.at(v) = 1;
    }
    std::vector<std::uint64_t> counts(a.players, 0);
    kernels.tally(a.owner, matched, counts);
    return {counts.begin(), counts.end()};
}

}  // namespace optin
