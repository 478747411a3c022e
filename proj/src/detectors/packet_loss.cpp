#include "iotafd/detectors/packet_loss.hpp"

#include <algorithm>

namespace iotafd::detectors {

double update_loss_estimate(double alpha, double p_prev, std::uint64_t burst_len, std::uint64_t window_len) {
  const double ratio = window_len == 0 ? 0.0 : static_cast<double>(burst_len) / static_cast<double>(window_len);
  return std::clamp(alpha * ratio + (1.0 - alpha) * p_prev, 0.0, 1.0);
}

void observe_sequence(PacketLossState& state, std::uint64_t seq, std::uint64_t loss_window) {
  if (!state.has_seq) {
    state.has_seq = true;
    state.last_seq = seq;
    return;
  }
  const std::uint64_t burst = seq - state.last_seq - 1;
  state.window_len += seq - state.last_seq;
  state.last_seq = seq;
  if (burst > 0 || state.window_len >= loss_window) {
    state.p_prev = update_loss_estimate(state.alpha, state.p_prev, burst, state.window_len);
    state.window_len = 0;
  }
}

}  // namespace iotafd::detectors
