#include <doctest.h>

#include <vector>

#include "optin/kernels.hpp"
#include "optin/ownership.hpp"
#include "support/oracles.hpp"

using namespace optin;
using namespace optin::kernels;

TEST_SUITE("kernels") {

TEST_CASE("Philox4x32-10 known answers") {
    CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) ==
          PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("draw_u32 matches an independent round function") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 200; ++i) {
        const StreamKey key{rng(), rng(), static_cast<std::uint32_t>(rng())};
        const auto v = static_cast<std::uint32_t>(rng());
        CHECK(draw_u32(key, v) ==
              oracle::philox_word0(v, static_cast<std::uint32_t>(key.trial),
                                   static_cast<std::uint32_t>(key.trial >> 32), key.stream,
                                   static_cast<std::uint32_t>(key.seed),
                                   static_cast<std::uint32_t>(key.seed >> 32)));
    }
}

TEST_CASE("scalar owner assignment follows the cutpoint rule") {
    const PlayerProfile prof = PlayerProfile::parse("1/6,1/3,1/2");
    const StreamKey key{7, 3, 0};
    std::vector<std::uint32_t> owners(100);
    scalar_kernels().assign_owners(key, 5, prof.cutpoints(), owners);
    for (std::uint32_t i = 0; i < owners.size(); ++i) {
        const std::uint32_t u = draw_u32(key, 5 + i);
        std::uint32_t expected = 0;
        for (const std::uint32_t t : prof.cutpoints()) expected += u >= t;
        CHECK(owners[i] == expected);
    }
}

TEST_CASE("SIMD variants are bit-identical to the scalar reference") {
    const KernelTable* simd = avx2_kernels();
    if (simd == nullptr) {
        MESSAGE("no AVX2 variant on this machine; skipping");
        return;
    }
    std::mt19937_64 rng(42);
    const std::vector<std::string> profiles{"1", "1/2,1/2", "1/3,1/3,1/3", "0.1,0.2,0.3,0.4",
                                            "0,1", "1,0", "0.999,0.001", "1/7,1/7,1/7,1/7,1/7,1/7,1/7"};
    for (const std::string& text : profiles) {
        const PlayerProfile prof = PlayerProfile::parse(text);
        for (const std::size_t len : {0u, 1u, 7u, 8u, 9u, 31u, 64u, 1000u}) {
            const StreamKey key{rng(), rng(), static_cast<std::uint32_t>(rng() % 4)};
            const auto first = static_cast<std::uint32_t>(rng() % 1000);
            std::vector<std::uint32_t> a(len), b(len);
            scalar_kernels().assign_owners(key, first, prof.cutpoints(), a);
            simd->assign_owners(key, first, prof.cutpoints(), b);
            CHECK(a == b);

            std::vector<std::uint8_t> mask(len);
            for (auto& m : mask) m = static_cast<std::uint8_t>(rng() % 3 == 0 ? 0 : rng() % 256);
            for (const bool masked : {false, true}) {
                const std::span<const std::uint8_t> use =
                    masked ? std::span<const std::uint8_t>(mask) : std::span<const std::uint8_t>();
                std::vector<std::uint64_t> ca(prof.player_count() + 1, 3), cb(prof.player_count() + 1, 3);
                scalar_kernels().tally(a, use, ca);
                simd->tally(a, use, cb);
                CHECK(ca == cb);
            }
        }
    }
}

TEST_CASE("tally counts only players inside the counts span") {
    const std::vector<std::uint32_t> owners{0, 1, 2, 2, 5, 1};
    std::vector<std::uint64_t> counts(3, 0);
    scalar_kernels().tally(owners, {}, counts);
    CHECK(counts == std::vector<std::uint64_t>{1, 2, 2});
    const std::vector<std::uint8_t> mask{1, 0, 1, 0, 1, 1};
    std::vector<std::uint64_t> masked(3, 0);
    scalar_kernels().tally(owners, mask, masked);
    CHECK(masked == std::vector<std::uint64_t>{1, 1, 1});
}

TEST_CASE("active kernels report a name") {
    const std::string name = active_kernels().name;
    CHECK((name == "scalar" || name == "avx2"));
}

}  // TEST_SUITE
