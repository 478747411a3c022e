#include <arm_neon.h>

#include "iotafd/simd/count.hpp"

namespace iotafd::simd {

std::size_t count_less_equal_neon(std::span<const std::int64_t> values, std::int64_t x) noexcept {
  const std::int64_t* p = values.data();
  const std::size_t n = values.size();
  const int64x2_t threshold = vdupq_n_s64(x);

  // Each true lane is all-ones; shifting right by 63 turns it into 1.
  uint64x2_t acc = vdupq_n_u64(0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const uint64x2_t le = vcleq_s64(vld1q_s64(p + i), threshold);
    acc = vaddq_u64(acc, vshrq_n_u64(le, 63));
  }
  std::size_t count = static_cast<std::size_t>(vgetq_lane_u64(acc, 0) + vgetq_lane_u64(acc, 1));
  for (; i < n; ++i) count += p[i] <= x ? 1 : 0;
  return count;
}

}  // namespace iotafd::simd
