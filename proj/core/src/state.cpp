#include "aoi/state.hpp"

#include <cmath>
#include <sstream>

#include "aoi/error.hpp"

namespace aoi {

std::ostream& operator<<(std::ostream& os, const State& s) {
  return os << '(' << s.x << ',' << s.y << ')';
}

NetworkParams::NetworkParams(double p, double q) : p_(p), q_(q) {
  auto check = [](double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0 || v > 1.0) {
      std::ostringstream msg;
      msg << "success probability " << name << " = " << v << " must lie in (0, 1]";
      throw ValidationError(msg.str());
    }
  };
  check(p, "p");
  check(q, "q");
}

}  // namespace aoi
