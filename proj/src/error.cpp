#include "iotafd/error.hpp"

namespace iotafd {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::ordering: return "ordering";
    case Errc::unavailable: return "unavailable";
    case Errc::invalid_argument: return "invalid argument";
    case Errc::scheduling: return "scheduling";
    case Errc::taxonomy: return "taxonomy";
    case Errc::state: return "state";
    case Errc::routing: return "routing";
    case Errc::config: return "config";
  }
  return "unknown";
}

}  // namespace iotafd
