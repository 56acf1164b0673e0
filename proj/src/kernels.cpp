#include "gacz/kernels.hpp"

#include <atomic>
#include <cstdlib>

#include "gacz/errors.hpp"

namespace gacz {

bool avx2_supported() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

namespace {

const Kernels* resolve(std::string_view mode) {
    if (mode == "scalar") return &kernels_scalar;
    if (mode == "avx2") {
        if (!avx2_supported())
            throw config_error("GACZ_KERNELS=avx2 requested but CPU lacks AVX2+FMA");
        return &kernels_avx2;
    }
    if (mode == "auto" || mode.empty())
        return avx2_supported() ? &kernels_avx2 : &kernels_scalar;
    throw config_error("unknown kernel mode '" + std::string(mode) + "' (scalar|avx2|auto)");
}

std::atomic<const Kernels*>& slot() {
    static std::atomic<const Kernels*> k = [] {
        const char* env = std::getenv("GACZ_KERNELS");
        return resolve(env ? env : "auto");
    }();
    return k;
}

} // namespace

void select_kernels(std::string_view mode) { slot().store(resolve(mode)); }

const Kernels& active_kernels() { return *slot().load(); }

} // namespace gacz
