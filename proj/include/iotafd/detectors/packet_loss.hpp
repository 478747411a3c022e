#pragma once

#include <cstdint>

namespace iotafd::detectors {

struct PacketLossState {
  double alpha = 0.5;
  double p_prev = 0.0;
  std::uint64_t last_seq = 0;
  bool has_seq = false;
  std::uint64_t window_len = 0;  // expected heartbeats since the previous update

  friend bool operator==(const PacketLossState&, const PacketLossState&) = default;
};

// p = alpha * burst / window + (1 - alpha) * p_prev, kept in [0, 1].
double update_loss_estimate(double alpha, double p_prev, std::uint64_t burst_len,
                            std::uint64_t window_len);

// Feeds one received sequence number. A gap of k sequence numbers is a burst
// of length k and triggers an update over the heartbeats expected since the
// previous update. After loss_window loss-free heartbeats a zero-burst update
// lets the estimate decay.
void observe_sequence(PacketLossState& state, std::uint64_t seq, std::uint64_t loss_window);

}  // namespace iotafd::detectors
