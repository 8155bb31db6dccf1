#include "lpptt/rng.hpp"

#include "lpptt/errors.hpp"

namespace lpptt {

GeometricSampler::GeometricSampler(double q) : q_(q) {
  if (!(q > 0.0 && q < 1.0))
    throw parameter_error("GeometricSampler: q must lie strictly between 0 and 1");
  inv_log_q_ = 1.0 / std::log(q);
  qpow_[0] = 1.0;
  for (int k = 1; k <= kScan; ++k) qpow_[k] = qpow_[k - 1] * q;
}

}  // namespace lpptt
