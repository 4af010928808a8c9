// Runtime backend selection.

#include <cstdlib>
#include <cstring>
#include <string>

#include "hyperquot/errors.hpp"
#include "hyperquot/kernels.hpp"

namespace hyperquot::kernels {

#if !defined(HYPERQUOT_HAVE_AVX2)
const Ops* avx2_ops() { return nullptr; }
#endif

namespace {

bool cpu_has_avx2() {
#if defined(HYPERQUOT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const Ops* pick(const char* name) {
    if (!name || std::strcmp(name, "auto") == 0) {
        if (avx2_ops() && cpu_has_avx2()) return avx2_ops();
        return &scalar_ops();
    }
    if (std::strcmp(name, "scalar") == 0) return &scalar_ops();
    if (std::strcmp(name, "avx2") == 0) {
        if (!avx2_ops() || !cpu_has_avx2())
            throw InvalidInput("avx2 kernels unavailable on this build/CPU");
        return avx2_ops();
    }
    throw InvalidInput(std::string("unknown kernel backend: ") + name);
}

const Ops*& active_slot() {
    static const Ops* slot = pick(std::getenv("HYPERQUOT_KERNELS"));
    return slot;
}

}  // namespace

const Ops& active() { return *active_slot(); }

void force_backend(const char* name) { active_slot() = pick(name); }

}  // namespace hyperquot::kernels
