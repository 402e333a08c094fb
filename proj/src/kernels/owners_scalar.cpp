#include <algorithm>

#include "optin/kernels.hpp"
#include "philox_round.hpp"

namespace optin::kernels {

using namespace detail;

PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) {
    for (int round = 0; round < kPhiloxRounds; ++round) {
        if (round > 0) {
            key[0] += kPhiloxW0;
            key[1] += kPhiloxW1;
        }
        const std::uint64_t p0 = std::uint64_t{kPhiloxM0} * ctr[0];
        const std::uint64_t p1 = std::uint64_t{kPhiloxM1} * ctr[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

std::uint32_t draw_u32(const StreamKey& key, std::uint32_t vertex) {
    const PhiloxCounter ctr{vertex, static_cast<std::uint32_t>(key.trial),
                            static_cast<std::uint32_t>(key.trial >> 32), key.stream};
    const PhiloxKey k{static_cast<std::uint32_t>(key.seed),
                      static_cast<std::uint32_t>(key.seed >> 32)};
    return philox4x32_10(ctr, k)[0];
}

namespace {

void assign_owners_scalar(const StreamKey& key, std::uint32_t first_vertex,
                          std::span<const std::uint32_t> cutpoints,
                          std::span<std::uint32_t> owners) {
    for (std::size_t i = 0; i < owners.size(); ++i) {
        const std::uint32_t u = draw_u32(key, first_vertex + static_cast<std::uint32_t>(i));
        std::uint32_t owner = 0;
        for (const std::uint32_t cut : cutpoints) owner += (u >= cut) ? 1u : 0u;
        owners[i] = owner;
    }
}

void tally_scalar(std::span<const std::uint32_t> owners, std::span<const std::uint8_t> mask,
                  std::span<std::uint64_t> counts) {
    for (std::size_t i = 0; i < owners.size(); ++i) {
        if (!mask.empty() && mask[i] == 0) continue;
        if (owners[i] < counts.size()) ++counts[owners[i]];
    }
}

}  // namespace

const KernelTable& scalar_kernels() {
    static constexpr KernelTable table{"scalar", &assign_owners_scalar, &tally_scalar};
    return table;
}

}  // namespace optin::kernels
