#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "nlspread/simd/ops.hpp"

namespace nlspread::simd {

bool avx2_supported() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Ops& active_ops() {
    static const Ops* selected = [] {
        const char* env = std::getenv("NLSPREAD_SIMD");
        if (env != nullptr) {
            if (std::strcmp(env, "scalar") == 0) return &scalar_ops();
            if (std::strcmp(env, "avx2") == 0) {
                if (!avx2_supported())
                    throw std::runtime_error("NLSPREAD_SIMD=avx2 but the CPU lacks AVX2/FMA");
                return &avx2_ops();
            }
            // anything else (including "auto") falls through to detection
        }
        return avx2_supported() ? &avx2_ops() : &scalar_ops();
    }();
    return *selected;
}

}  // namespace nlspread::simd
