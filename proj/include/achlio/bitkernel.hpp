#pragma once

#include <cstddef>
#include <cstdint>

// Word-level kernels behind the adjacency-bitset hot loops (codegree
// popcounts, common-neighbour tests, candidate-mask intersections).
// A scalar reference implementation always exists; AVX2 (x86-64) and NEON
// (aarch64) variants are selected once at startup.  The environment variable
// ACHLIO_KERNEL=scalar|avx2|neon forces a variant (falls back to scalar if
// the hardware lacks it).

namespace achlio::bitkernel {

enum class Impl { scalar, avx2, neon };

Impl active();
const char* impl_name(Impl impl);

// Dispatched entry points.
std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t nwords);
bool intersects(const std::uint64_t* a, const std::uint64_t* b, std::size_t nwords);
void and_into(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
              std::size_t nwords);
std::uint64_t popcount(const std::uint64_t* a, std::size_t nwords);

// Reference implementations, callable directly (equivalence tests).
namespace scalar {
std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t nwords);
bool intersects(const std::uint64_t* a, const std::uint64_t* b, std::size_t nwords);
void and_into(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
              std::size_t nwords);
std::uint64_t popcount(const std::uint64_t* a, std::size_t nwords);
} // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
bool supported();
std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t nwords);
bool intersects(const std::uint64_t* a, const std::uint64_t* b, std::size_t nwords);
void and_into(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
              std::size_t nwords);
std::uint64_t popcount(const std::uint64_t* a, std::size_t nwords);
} // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t nwords);
bool intersects(const std::uint64_t* a, const std::uint64_t* b, std::size_t nwords);
void and_into(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
              std::size_t nwords);
std::uint64_t popcount(const std::uint64_t* a, std::size_t nwords);
} // namespace neon
#endif

} // namespace achlio::bitkernel
