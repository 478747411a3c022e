#include <immintrin.h>

#include "iotafd/simd/count.hpp"

namespace iotafd::simd {

std::size_t count_less_equal_avx2(std::span<const std::int64_t> values, std::int64_t x) noexcept {
  const std::int64_t* p = values.data();
  const std::size_t n = values.size();
  const __m256i threshold = _mm256_set1_epi64x(x);

  // Count lanes with v > x, two vectors per iteration; the answer is n minus that.
  std::size_t greater = 0;
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i));
    const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i + 4));
    const int ma = _mm256_movemask_pd(_mm256_castsi256_pd(_mm256_cmpgt_epi64(a, threshold)));
    const int mb = _mm256_movemask_pd(_mm256_castsi256_pd(_mm256_cmpgt_epi64(b, threshold)));
    greater += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(ma | (mb << 4))));
  }
  for (; i + 4 <= n; i += 4) {
    const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i));
    const int ma = _mm256_movemask_pd(_mm256_castsi256_pd(_mm256_cmpgt_epi64(a, threshold)));
    greater += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(ma)));
  }
  for (; i < n; ++i) greater += p[i] > x ? 1 : 0;
  return n - greater;
}

}  // namespace iotafd::simd
