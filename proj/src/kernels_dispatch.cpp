#include "qmpe/kernels.hpp"

#include <atomic>
#include <cstdlib>

namespace qmpe::kern {

namespace {

const Backend* lookup(std::string_view name) {
    if (name == "scalar") return &scalar_backend();
    if (name == "avx2") return avx2_backend();
    if (name == "neon") return neon_backend();
    return nullptr;
}

const Backend* widest() {
    if (const Backend* b = avx2_backend()) return b;
    if (const Backend* b = neon_backend()) return b;
    return &scalar_backend();
}

std::atomic<const Backend*>& slot() {
    static std::atomic<const Backend*> s{nullptr};
    return s;
}

const Backend* initial_pick() {
    if (const char* env = std::getenv("QMPE_SIMD")) {
        std::string_view name{env};
        if (name != "auto")
            if (const Backend* b = lookup(name)) return b;
    }
    return widest();
}

} // namespace

const Backend& active() {
    const Backend* b = slot().load(std::memory_order_acquire);
    if (!b) {
        b = initial_pick();
        slot().store(b, std::memory_order_release);
    }
    return *b;
}

bool set_active(std::string_view name) {
    const Backend* b = name == "auto" ? widest() : lookup(name);
    if (!b) return false;
    slot().store(b, std::memory_order_release);
    return true;
}

} // namespace qmpe::kern
