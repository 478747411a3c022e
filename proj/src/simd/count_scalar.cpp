#include "iotafd/simd/count.hpp"

namespace iotafd::simd {

std::size_t count_less_equal_scalar(std::span<const std::int64_t> values, std::int64_t x) noexcept {
  std::size_t count = 0;
  for (std::int64_t v : values) count += v <= x ? 1 : 0;
  return count;
}

}  // namespace iotafd::simd
