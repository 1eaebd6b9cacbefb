#include "bpgeo/kernels.hpp"

#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"

namespace bpgeo::kernels {

namespace {

const KernelTable kScalar{
    "scalar",           scalar::dot,  scalar::abs_sum,
    scalar::max_abs,    scalar::abs_accumulate,
    scalar::axpy,       scalar::max_abs_diff,
};

#if defined(BPGEO_HAVE_AVX2)
const KernelTable kAvx2{
    "avx2",           avx2::dot,  avx2::abs_sum,
    avx2::max_abs,    avx2::abs_accumulate,
    avx2::axpy,       avx2::max_abs_diff,
};

bool cpu_has_avx2() noexcept {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

bool scalar_forced() noexcept {
    const char* env = std::getenv("BPGEO_FORCE_SCALAR");
    return env != nullptr && std::string_view(env) != "" && std::string_view(env) != "0";
}

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

const KernelTable* avx2_table() noexcept {
#if defined(BPGEO_HAVE_AVX2)
    static const bool supported = cpu_has_avx2();
    return supported ? &kAvx2 : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable& active() noexcept {
    static const KernelTable* chosen = [] {
        if (scalar_forced()) return &kScalar;
        const KernelTable* fast = avx2_table();
        return fast != nullptr ? fast : &kScalar;
    }();
    return *chosen;
}

}  // namespace bpgeo::kernels
