#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

// Counting kernels over a window of integer inter-arrival times. These sit
// under the empirical-CDF suspicion of the Adaptive detector, which is
// evaluated O(window) times per query. Every ISA variant must return exactly
// what the scalar reference returns.
namespace iotafd::simd {

enum class Isa { scalar, avx2, neon };

std::string_view to_string(Isa isa) noexcept;

// Number of elements <= x.
std::size_t count_less_equal_scalar(std::span<const std::int64_t> values, std::int64_t x) noexcept;
#if defined(__x86_64__) || defined(_M_X64)
std::size_t count_less_equal_avx2(std::span<const std::int64_t> values, std::int64_t x) noexcept;
#endif
#if defined(__aarch64__)
std::size_t count_less_equal_neon(std::span<const std::int64_t> values, std::int64_t x) noexcept;
#endif

// ISAs compiled in and supported by the running CPU; scalar is always first.
const std::vector<Isa>& available_isas();

// ISA used by count_less_equal(). Chosen once: the widest available, unless
// the IOTAFD_SIMD environment variable names another available one
// ("scalar", "avx2", "neon").
Isa active_isa() noexcept;

std::size_t count_less_equal(Isa isa, std::span<const std::int64_t> values, std::int64_t x) noexcept;

std::size_t count_less_equal(std::span<const std::int64_t> values, std::int64_t x) noexcept;

}  // namespace iotafd::simd
