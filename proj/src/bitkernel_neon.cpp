#if defined(__aarch64__)

#include "achlio/bitkernel.hpp"

#include <arm_neon.h>

#include <bit>

namespace achlio::bitkernel::neon {

std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t nwords) {
    uint64x2_t acc = vdupq_n_u64(0);
    std::size_t i = 0;
    for (; i + 2 <= nwords; i += 2) {
        const uint64x2_t va = vld1q_u64(a + i);
        const uint64x2_t vb = vld1q_u64(b + i);
        const uint8x16_t cnt = vcntq_u8(vreinterpretq_u8_u64(vandq_u64(va, vb)));
        acc = vaddq_u64(acc, vpaddlq_u32(vpaddlq_u16(vpaddlq_u8(cnt))));
    }
    std::uint64_t total = vgetq_lane_u64(acc, 0) + vgetq_lane_u64(acc, 1);
    for (; i < nwords; ++i) total += std::popcount(a[i] & b[i]);
    return total;
}

bool intersects(const std::uint64_t* a, const std::uint64_t* b, std::size_t nwords) {
    std::size_t i = 0;
    for (; i + 2 <= nwords; i += 2) {
        const uint64x2_t v = vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i));
        if ((vgetq_lane_u64(v, 0) | vgetq_lane_u64(v, 1)) != 0) return true;
    }
    for (; i < nwords; ++i)
        if (a[i] & b[i]) return true;
    return false;
}

void and_into(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
              std::size_t nwords) {
    std::size_t i = 0;
    for (; i + 2 <= nwords; i += 2)
        vst1q_u64(dst + i, vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
    for (; i < nwords; ++i) dst[i] = a[i] & b[i];
}

std::uint64_t popcount(const std::uint64_t* a, std::size_t nwords) {
    uint64x2_t acc = vdupq_n_u64(0);
    std::size_t i = 0;
    for (; i + 2 <= nwords; i += 2) {
        const uint8x16_t cnt = vcntq_u8(vreinterpretq_u8_u64(vld1q_u64(a + i)));
        acc = vaddq_u64(acc, vpaddlq_u32(vpaddlq_u16(vpaddlq_u8(cnt))));
    }
    std::uint64_t total = vgetq_lane_u64(acc, 0) + vgetq_lane_u64(acc, 1);
    for (; i < nwords; ++i) total += std::popcount(a[i]);
    return total;
}

} // namespace achlio::bitkernel::neon

#endif
