#include "priv/dp/dp.hpp"

#include <cmath>

#include "priv/rng.hpp"

namespace priv::dp {

void DpParams::validate() const {
  if (!std::isfinite(epsilon) || epsilon <= 0.0) {
    throw NumericError("epsilon must be finite and positive");
  }
  if (!std::isfinite(sensitivity) || sensitivity <= 0.0) {
    throw NumericError("sensitivity must be finite and positive");
  }
}

double laplace_from_unit(double u, double b) {
  if (!std::isfinite(b) || b <= 0.0) throw NumericError("laplace scale must be positive");
  if (u < -0.5 || u >= 0.5) throw NumericError("unit draw outside [-0.5, 0.5)");
  const double sign = u < 0.0 ? -1.0 : 1.0;
  double q = 1.0 - 2.0 * std::abs(u);
  if (q < 0x1p-53) q = 0x1p-53;
  return b * (-sign * std::log(q));
}

double laplace_sample(double b, std::uint64_t seed, std::uint64_t index) {
  return laplace_from_unit(counter_uniform(seed, index) - 0.5, b);
}

DpCountResult dp_count(std::uint64_t true_count, const DpParams& p, std::uint64_t index,
                       bool clamp_at_zero) {
  p.validate();
  DpCountResult r;
  r.epsilon = p.epsilon;
  r.value = static_cast<double>(true_count) + laplace_sample(p.scale(), p.seed, index);
  if (clamp_at_zero && r.value < 0.0) {
    r.value = 0.0;
    r.clamped = true;
  }
  return r;
}

double rr_truth_probability(double epsilon) {
  if (!std::isfinite(epsilon) || epsilon < 0.0) {
    throw NumericError("epsilon must be finite and non-negative");
  }
  const double e = std::exp(epsilon);
  return e / (e + 1.0);
}

int randomized_response(int bit, double epsilon, std::uint64_t seed) {
  if (bit != 0 && bit != 1) throw FormatError("bit must be 0 or 1");
  const double p_truth = rr_truth_probability(epsilon);
  const double u = counter_uniform(seed, 0x7272);  // one draw per seed
  return u < p_truth ? bit : 1 - bit;
}

double rr_debias(double observed_mean, double epsilon) {
  const double p = rr_truth_probability(epsilon);
  const double denom = 2.0 * p - 1.0;
  if (denom <= 0.0) throw NumericError("estimator undefined at epsilon 0");
  return (observed_mean - (1.0 - p)) / denom;
}

}  // namespace priv::dp
