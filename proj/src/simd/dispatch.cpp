#include <cstdlib>
#include <string_view>

#include "iotafd/simd/count.hpp"

namespace iotafd::simd {

namespace {

std::vector<Isa> detect() {
  std::vector<Isa> isas{Isa::scalar};
#if defined(__x86_64__) || defined(_M_X64)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) isas.push_back(Isa::avx2);
#endif
#if defined(__aarch64__)
  isas.push_back(Isa::neon);
#endif
  return isas;
}

Isa choose() {
  const auto& isas = available_isas();
  Isa chosen = isas.back();
  if (const char* env = std::getenv("IOTAFD_SIMD")) {
    const std::string_view wanted(env);
    for (Isa isa : isas) {
      if (to_string(isa) == wanted) chosen = isa;
    }
  }
  return chosen;
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

const std::vector<Isa>& available_isas() {
  static const std::vector<Isa> isas = detect();
  return isas;
}

Isa active_isa() noexcept {
  static const Isa isa = choose();
  return isa;
}

std::size_t count_less_equal(Isa isa, std::span<const std::int64_t> values, std::int64_t x) noexcept {
  switch (isa) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::avx2: return count_less_equal_avx2(values, x);
#endif
#if defined(__aarch64__)
    case Isa::neon: return count_less_equal_neon(values, x);
#endif
    default: return count_less_equal_scalar(values, x);
  }
}

std::size_t count_less_equal(std::span<const std::int64_t> values, std::int64_t x) noexcept {
  static const Isa isa = active_isa();
  return count_less_equal(isa, values, x);
}

}  // namespace iotafd::simd
