#include "qweb/params.hpp"

#include <cmath>
#include <string>

#include "qweb/errors.hpp"

namespace qweb {

void Params::validate() const {
  if (mu < 1) throw ConfigError("mu must be >= 1, got " + std::to_string(mu));
  if (!(hbar0 > 0.0) || !std::isfinite(hbar0))
    throw ConfigError("hbar0 must be a positive finite number, got " + std::to_string(hbar0));
  if (!(eps >= 0.0) || !std::isfinite(eps))
    throw ConfigError("eps must be a nonnegative finite number, got " + std::to_string(eps));
  if (n_max < mu + 2)
    throw ConfigError("n_max must be >= mu + 2, got " + std::to_string(n_max));
}

}  // namespace qweb
