#include "alphasun/params.hpp"

#include <cmath>
#include <limits>

namespace alphasun {

double Params::log_inv_alpha() const {
  if (alpha == 0.0) return std::numeric_limits<double>::infinity();
  return -std::log(alpha);
}

}  // namespace alphasun
