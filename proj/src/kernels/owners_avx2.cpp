// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include "optin/kernels.hpp"
#include "philox_round.hpp"

namespace optin::kernels {

using namespace detail;

namespace {

struct MulHiLo {
    __m256i hi;
    __m256i lo;
};

// 32x32 -> 64 products for all eight lanes: mul_epu32 covers the even lanes,
// a 32-bit shift brings the odd lanes into position.
inline MulHiLo mulhilo(__m256i a, __m256i m) {
    const __m256i even = _mm256_mul_epu32(a, m);
    const __m256i odd = _mm256_mul_epu32(_mm256_srli_epi64(a, 32), m);
    return {_mm256_blend_epi32(_mm256_srli_epi64(even, 32), odd, 0xAA),
            _mm256_blend_epi32(even, _mm256_slli_epi64(odd, 32), 0xAA)};
}

inline __m256i philox_word0(__m256i c0, __m256i c1, __m256i c2, __m256i c3, std::uint32_t k0,
                            std::uint32_t k1) {
    const __m256i m0 = _mm256_set1_epi32(static_cast<int>(kPhiloxM0));
    const __m256i m1 = _mm256_set1_epi32(static_cast<int>(kPhiloxM1));
    for (int round = 0; round < kPhiloxRounds; ++round) {
        if (round > 0) {
            k0 += kPhiloxW0;
            k1 += kPhiloxW1;
        }
        const MulHiLo p0 = mulhilo(c0, m0);
        const MulHiLo p1 = mulhilo(c2, m1);
        const __m256i n0 =
            _mm256_xor_si256(_mm256_xor_si256(p1.hi, c1), _mm256_set1_epi32(static_cast<int>(k0)));
        const __m256i n2 =
            _mm256_xor_si256(_mm256_xor_si256(p0.hi, c3), _mm256_set1_epi32(static_cast<int>(k1)));
        c0 = n0;
        c1 = p1.lo;
        c2 = n2;
        c3 = p0.lo;
    }
    return c0;
}

void assign_owners_avx2(const StreamKey& key, std::uint32_t first_vertex,
                        std::span<const std::uint32_t> cutpoints,
                        std::span<std::uint32_t> owners) {
    const auto k0 = static_cast<std::uint32_t>(key.seed);
    const auto k1 = static_cast<std::uint32_t>(key.seed >> 32);
    const __m256i c1 = _mm256_set1_epi32(static_cast<int>(static_cast<std::uint32_t>(key.trial)));
    const __m256i c2 = _mm256_set1_epi32(static_cast<int>(static_cast<std::uint32_t>(key.trial >> 32)));
    const __m256i c3 = _mm256_set1_epi32(static_cast<int>(key.stream));
    const __m256i lane = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);

    std::size_t i = 0;
    for (; i + 8 <= owners.size(); i += 8) {
        const __m256i c0 = _mm256_add_epi32(
            _mm256_set1_epi32(static_cast<int>(first_vertex + static_cast<std::uint32_t>(i))), lane);
        const __m256i u = philox_word0(c0, c1, c2, c3, k0, k1);
        __m256i owner = _mm256_setzero_si256();
        for (const std::uint32_t cut : cutpoints) {
            const __m256i t = _mm256_set1_epi32(static_cast<int>(cut));
            // u >= t (unsigned) exactly when max(u, t) == u; the all-ones
            // compare result is -1, so subtracting it counts the cutpoint.
            owner = _mm256_sub_epi32(owner, _mm256_cmpeq_epi32(_mm256_max_epu32(u, t), u));
        }
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(owners.data() + i), owner);
    }
    if (i < owners.size()) {
        scalar_kernels().assign_owners(key, first_vertex + static_cast<std::uint32_t>(i), cutpoints,
                                       owners.subspan(i));
    }
}

inline std::uint64_t horizontal_sum(__m256i v) {
    alignas(32) std::uint32_t lanes[8];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
    std::uint64_t total = 0;
    for (const std::uint32_t x : lanes) total += x;
    return total;
}

void tally_avx2(std::span<const std::uint32_t> owners, std::span<const std::uint8_t> mask,
                std::span<std::uint64_t> counts) {
    const std::size_t n = owners.size();
    const std::size_t body = n - n % 8;
    const __m256i zero = _mm256_setzero_si256();
    for (std::size_t j = 0; j < counts.size(); ++j) {
        const __m256i player = _mm256_set1_epi32(static_cast<int>(j));
        __m256i acc = zero;
        for (std::size_t i = 0; i < body; i += 8) {
            const __m256i o = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(owners.data() + i));
            __m256i hit = _mm256_cmpeq_epi32(o, player);
            if (!mask.empty()) {
                const __m128i bytes = _mm_loadl_epi64(reinterpret_cast<const __m128i*>(mask.data() + i));
                const __m256i wide = _mm256_cvtepu8_epi32(bytes);
                hit = _mm256_andnot_si256(_mm256_cmpeq_epi32(wide, zero), hit);
            }
            acc = _mm256_sub_epi32(acc, hit);
        }
        counts[j] += horizontal_sum(acc);
    }
    if (body < n) {
        scalar_kernels().tally(owners.subspan(body),
                               mask.empty() ? mask : mask.subspan(body), counts);
    }
}

}  // namespace

namespace detail {

const KernelTable& avx2_table() {
    static constexpr KernelTable table{"avx2", &assign_owners_avx2, &tally_avx2};
    return table;
}

}  // namespace detail

}  // namespace optin::kernels
