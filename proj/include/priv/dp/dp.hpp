#pragma once

#include <cstdint>

#include "priv/errors.hpp"

namespace priv::dp {

struct DpParams {
  double epsilon = 1.0;
  double sensitivity = 1.0;  // L1 sensitivity of the query
  std::uint64_t seed = 0;

  // epsilon and sensitivity must be finite and positive.
  void validate() const;
  double scale() const { return sensitivity / epsilon; }
};

// Inverse-CDF Laplace transform of u in [-0.5, 0.5): -b*sign(u)*ln(1-2|u|).
// The log argument is clamped to 2^-53 so the stream edge cannot produce inf.
double laplace_from_unit(double u, double b);

// Deterministic per (seed, index); indices give replayable parallel streams.
double laplace_sample(double b, std::uint64_t seed, std::uint64_t index);

struct DpCountResult {
  double value = 0.0;
  bool clamped = false;  // clamping at 0 is post-processing, surfaced to consumers
  double epsilon = 0.0;
};

DpCountResult dp_count(std::uint64_t true_count, const DpParams& p, std::uint64_t index,
                       bool clamp_at_zero = true);

// Probability of reporting the true bit: e^eps / (e^eps + 1).
double rr_truth_probability(double epsilon);

// Reports bit truthfully with probability rr_truth_probability(epsilon),
// otherwise the flipped bit. bit must be 0 or 1; epsilon must be >= 0.
int randomized_response(int bit, double epsilon, std::uint64_t seed);

// Unbiased estimate of the true 1-proportion from the observed response mean.
// Undefined at epsilon = 0 (the mechanism carries no signal there).
double rr_debias(double observed_mean, double epsilon);

}  // namespace priv::dp
