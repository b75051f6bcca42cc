#include "achlio/bitkernel.hpp"

#include <bit>
#include <cstdlib>
#include <cstring>

namespace achlio::bitkernel {

namespace scalar {

std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t nwords) {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < nwords; ++i) total += std::popcount(a[i] & b[i]);
    return total;
}

bool intersects(const std::uint64_t* a, const std::uint64_t* b, std::size_t nwords) {
    for (std::size_t i = 0; i < nwords; ++i)
        if (a[i] & b[i]) return true;
    return false;
}

void and_into(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
              std::size_t nwords) {
    for (std::size_t i = 0; i < nwords; ++i) dst[i] = a[i] & b[i];
}

std::uint64_t popcount(const std::uint64_t* a, std::size_t nwords) {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < nwords; ++i) total += std::popcount(a[i]);
    return total;
}

} // namespace scalar

namespace {

struct Vtable {
    Impl impl;
    std::uint64_t (*and_popcount)(const std::uint64_t*, const std::uint64_t*, std::size_t);
    bool (*intersects)(const std::uint64_t*, const std::uint64_t*, std::size_t);
    void (*and_into)(std::uint64_t*, const std::uint64_t*, const std::uint64_t*, std::size_t);
    std::uint64_t (*popcount)(const std::uint64_t*, std::size_t);
};

constexpr Vtable kScalar{Impl::scalar, &scalar::and_popcount, &scalar::intersects,
                         &scalar::and_into, &scalar::popcount};

Vtable pick() {
    const char* forced = std::getenv("ACHLIO_KERNEL");
#if defined(__x86_64__) || defined(_M_X64)
    const bool have_avx2 = avx2::supported();
    if (forced != nullptr) {
        if (std::strcmp(forced, "avx2") == 0 && have_avx2)
            return Vtable{Impl::avx2, &avx2::and_popcount, &avx2::intersects, &avx2::and_into,
                          &avx2::popcount};
        return kScalar;
    }
    if (have_avx2)
        return Vtable{Impl::avx2, &avx2::and_popcount, &avx2::intersects, &avx2::and_into,
                      &avx2::popcount};
#elif defined(__aarch64__)
    if (forced != nullptr && std::strcmp(forced, "scalar") == 0) return kScalar;
    return Vtable{Impl::neon, &neon::and_popcount, &neon::intersects, &neon::and_into,
                  &neon::popcount};
#else
    (void)forced;
#endif
    return kScalar;
}

const Vtable& vt() {
    static const Vtable table = pick();
    return table;
}

} // namespace

Impl active() { return vt().impl; }

const char* impl_name(Impl impl) {
    switch (impl) {
        case Impl::scalar: return "scalar";
        case Impl::avx2: return "avx2";
        case Impl::neon: return "neon";
    }
    return "unknown";
}

std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t nwords) {
    return vt().and_popcount(a, b, nwords);
}

bool intersects(const std::uint64_t* a, const std::uint64_t* b, std::size_t nwords) {
    return vt().intersects(a, b, nwords);
}

void and_into(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
              std::size_t nwords) {
    vt().and_into(dst, a, b, nwords);
}

std::uint64_t popcount(const std::uint64_t* a, std::size_t nwords) {
    return vt().popcount(a, nwords);
}

} // namespace achlio::bitkernel
