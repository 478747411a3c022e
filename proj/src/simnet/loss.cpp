#include "iotafd/simnet/loss.hpp"

#include "iotafd/error.hpp"

namespace iotafd::simnet {

void BurstLossModel::validate() const {
  auto fail = [](const char* what) { throw Error(Errc::invalid_argument, std::string("burst loss model: ") + what); };
  if (!(burst_rate >= 0.0 && burst_rate <= 1.0)) fail("burst_rate must be in [0, 1]");
  if (burst_len_min < 1) fail("burst_len_min must be >= 1");
  if (burst_len_max < burst_len_min) fail("burst_len_max must be >= burst_len_min");
}

BurstLossProcess::BurstLossProcess(const BurstLossModel& model) : model_(model), rng_(model.seed) {
  model_.validate();
}

bool BurstLossProcess::deliver() {
  if (remaining_ > 0) {
    --remaining_;
    return false;
  }
  if (rng_.bernoulli(model_.burst_rate)) remaining_ = rng_.uniform_int(model_.burst_len_min, model_.burst_len_max);
  return true;
}

std::vector<TracePoint> apply_burst_loss(const std::vector<TracePoint>& trace, const BurstLossModel& model) {
  BurstLossProcess process(model);
  std::vector<TracePoint> out;
  out.reserve(trace.size());
  for (const TracePoint& p : trace) {
    if (process.deliver()) out.push_back(p);
  }
  return out;
}

}  // namespace iotafd::simnet
