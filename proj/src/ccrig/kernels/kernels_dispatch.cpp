#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "ccrig/kernels/kernels.hpp"

namespace ccrig::kern {

bool avx2_supported() {
#if (defined(__x86_64__) || defined(__i386__)) && defined(__GNUC__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

namespace {

const Ops* select_ops() {
    const char* forced = std::getenv("CCRIG_KERNELS");
    if (forced != nullptr) {
        if (std::strcmp(forced, "scalar") == 0) return &scalar_ops();
        if (std::strcmp(forced, "avx2") == 0) {
            if (!avx2_supported()) throw std::runtime_error("CCRIG_KERNELS=avx2 but cpu lacks avx2/fma");
            return &avx2_ops();
        }
        throw std::runtime_error(std::string("unknown CCRIG_KERNELS value: ") + forced);
    }
    return avx2_supported() ? &avx2_ops() : &scalar_ops();
}

}  // namespace

const Ops& ops() {
    static const Ops* selected = select_ops();
    return *selected;
}

}  // namespace ccrig::kern
