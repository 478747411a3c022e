#pragma once

#include <cstdint>
#include <vector>

#include "iotafd/random.hpp"
#include "iotafd/simnet/trace.hpp"

namespace iotafd::simnet {

struct BurstLossModel {
  double burst_rate = 0.01;
  std::uint64_t burst_len_min = 1;
  std::uint64_t burst_len_max = 4;
  std::uint64_t seed = 1;

  // Throws Errc::invalid_argument.
  void validate() const;

  friend bool operator==(const BurstLossModel&, const BurstLossModel&) = default;
};

// Packet-at-a-time burst loss. A packet outside a burst is delivered, then a
// burst starts with probability burst_rate and swallows the next L packets.
class BurstLossProcess {
 public:
  explicit BurstLossProcess(const BurstLossModel& model);

  // Decides the fate of the next packet in send order.
  bool deliver();

 private:
  BurstLossModel model_;
  Rng rng_;
  std::uint64_t remaining_ = 0;
};

// Subsequence of `trace` that survives the loss process; order is preserved.
std::vector<TracePoint> apply_burst_loss(const std::vector<TracePoint>& trace, const BurstLossModel& model);

}  // namespace iotafd::simnet
