#pragma once

// Data-parallel inner loops of the Monte Carlo harness. Every kernel has a
// scalar reference implementation; SIMD variants must produce bit-identical
// output and are picked at runtime from what the CPU supports.
//
// Set OPTIN_KERNELS=scalar in the environment to force the reference path.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

namespace optin::kernels {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

// Philox4x32 with 10 rounds (Salmon et al., Random123).
PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

// Identifies one random stream: the draw for vertex v uses counter
// (v, trial_lo, trial_hi, stream) under key (seed_lo, seed_hi).
struct StreamKey {
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;
    std::uint32_t stream = 0;
};

std::uint32_t draw_u32(const StreamKey& key, std::uint32_t vertex);

// owners[i] = number of cutpoints <= draw_u32(key, first_vertex + i).
// Cutpoints are sorted ascending.
using AssignOwnersFn = void (*)(const StreamKey& key, std::uint32_t first_vertex,
                                std::span<const std::uint32_t> cutpoints,
                                std::span<std::uint32_t> owners);

// counts[j] += number of i with owners[i] == j and (mask empty or mask[i] != 0).
// owners and mask (when non-empty) have equal length.
using TallyFn = void (*)(std::span<const std::uint32_t> owners,
                         std::span<const std::uint8_t> mask,
                         std::span<std::uint64_t> counts);

struct KernelTable {
    const char* name;
    AssignOwnersFn assign_owners;
    TallyFn tally;
};

const KernelTable& scalar_kernels();

// Null when the variant was not compiled in or the CPU lacks the extension.
const KernelTable* avx2_kernels();

const KernelTable& active_kernels();

}  // namespace optin::kernels
