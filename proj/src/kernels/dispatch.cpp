#include <cstdlib>
#include <string_view>

#include "optin/kernels.hpp"

namespace optin::kernels {

#if defined(OPTIN_HAVE_AVX2)
namespace detail {
const KernelTable& avx2_table();
}
#endif

const KernelTable* avx2_kernels() {
#if defined(OPTIN_HAVE_AVX2)
    static const bool supported = __builtin_cpu_supports("avx2");
    if (supported) return &detail::avx2_table();
#endif
    return nullptr;
}

const KernelTable& active_kernels() {
    static const KernelTable& chosen = [&]() -> const KernelTable& {
        const char* forced = std::getenv("OPTIN_KERNELS");
        if (forced != nullptr && std::string_view(forced) == "scalar") return scalar_kernels();
        if (const KernelTable* avx2 = avx2_kernels()) return *avx2;
        return scalar_kernels();
    }();
    return chosen;
}

}  // namespace optin::kernels
