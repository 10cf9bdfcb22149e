#include <cmath>

#include "doctest.h"
#include "priv/dp/dp.hpp"
#include "priv/errors.hpp"
#include "priv/rng.hpp"

using namespace priv;
using namespace priv::dp;

namespace {

// Independent closed-form Laplace density, the analytic oracle for the
// neighboring-counts ratio bound.
double laplace_pdf(double x, double center, double b) {
  return std::exp(-std::abs(x - center) / b) / (2.0 * b);
}

}  // namespace

TEST_CASE("laplace transform hits the median and is antisymmetric") {
  CHECK(laplace_from_unit(0.0, 1.0) == 0.0);
  CHECK(laplace_from_unit(0.25, 1.0) == doctest::Approx(-std::log(0.5)));
  CHECK(laplace_from_unit(-0.25, 1.0) == doctest::Approx(std::log(0.5)));
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const double u = counter_uniform(42, i) - 0.5;
    if (u == -0.5) continue;  // -u would fall outside the domain
    CHECK(laplace_from_unit(u, 1.7) == -laplace_from_unit(-u, 1.7));
  }
  // Stream edge: u = -0.5 maps through the clamp, staying finite.
  CHECK(std::isfinite(laplace_from_unit(-0.5, 1.0)));
  CHECK(laplace_from_unit(-0.5, 1.0) < 0.0);
}

TEST_CASE("laplace sampling is deterministic and scales linearly") {
  const double a = laplace_sample(0.7, 9, 12);
  CHECK(laplace_sample(0.7, 9, 12) == a);
  CHECK(laplace_sample(0.7, 9, 13) != a);
  CHECK(laplace_sample(0.7, 10, 12) != a);
  CHECK(laplace_sample(2 * 0.7, 9, 12) == 2 * a);
  CHECK_THROWS_AS(laplace_sample(0.0, 1, 1), NumericError);
  CHECK_THROWS_AS(laplace_sample(-1.0, 1, 1), NumericError);
  CHECK_THROWS_AS(laplace_from_unit(0.5, 1.0), NumericError);
  CHECK_THROWS_AS(laplace_from_unit(-0.6, 1.0), NumericError);
}

TEST_CASE("laplace empirical mean and absolute moment match theory") {
  const double b = 1.0;
  const std::size_t n = 100000;
  double sum = 0.0;
  double sum_abs = 0.0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const double x = laplace_sample(b, 7, i);
    sum += x;
    sum_abs += std::abs(x);
  }
  const double mean = sum / double(n);
  const double mean_abs = sum_abs / double(n);
  CHECK(std::abs(mean) <= 0.05 * b);             // E[X] = 0
  CHECK(std::abs(mean_abs - b) <= 0.02 * b);     // E[|X|] = b
}

TEST_CASE("dp_count adds near-zero noise at huge epsilon") {
  DpParams p;
  p.epsilon = 1e9;
  p.seed = 3;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const DpCountResult r = dp_count(42, p, i);
    CHECK(std::abs(r.value - 42.0) < 1e-6);
    CHECK(r.epsilon == 1e9);
  }
}

TEST_CASE("dp_count clamps at zero as flagged post-processing") {
  DpParams p;
  p.epsilon = 0.1;  // scale 10: negative draws guaranteed among 200 indices
  p.seed = 11;
  bool saw_clamp = false;
  bool saw_negative_unclamped = false;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const DpCountResult clamped = dp_count(0, p, i);
    CHECK(clamped.value >= 0.0);
    if (clamped.clamped) {
      saw_clamp = true;
      const DpCountResult raw = dp_count(0, p, i, false);
      CHECK(raw.value < 0.0);
      CHECK_FALSE(raw.clamped);
    }
    if (dp_count(0, p, i, false).value < 0.0) saw_negative_unclamped = true;
  }
  CHECK(saw_clamp);
  CHECK(saw_negative_unclamped);
  DpParams bad;
  bad.epsilon = 0.0;
  CHECK_THROWS_AS(dp_count(1, bad, 0), NumericError);
  bad.epsilon = 1.0;
  bad.sensitivity = -2.0;
  CHECK_THROWS_AS(dp_count(1, bad, 0), NumericError);
}

TEST_CASE("neighboring counts satisfy the analytic density ratio bound") {
  for (double eps : {0.5, 1.0, 2.0}) {
    const double b = 1.0 / eps;  // sensitivity 1
    for (double x : {-1.0, 0.0, 0.5, 3.0, 10.0}) {
      const double ratio = laplace_pdf(x, 5.0, b) / laplace_pdf(x, 6.0, b);
      CHECK(ratio <= std::exp(eps) * (1.0 + 1e-12));
      CHECK(ratio >= std::exp(-eps) * (1.0 - 1e-12));
    }
  }
}

TEST_CASE("randomized response reports truth with the contracted probability") {
  CHECK(rr_truth_probability(0.0) == 0.5);
  CHECK(rr_truth_probability(1.0) == doctest::Approx(std::exp(1.0) / (std::exp(1.0) + 1.0)));
  CHECK(rr_truth_probability(20.0) > 0.999999);
  CHECK_THROWS_AS(rr_truth_probability(-1.0), NumericError);
  CHECK_THROWS_AS(randomized_response(2, 1.0, 0), FormatError);

  // At eps = 20 flips are ~1e-9 events; 1000 trials should all be truthful.
  for (std::uint64_t s = 0; s < 1000; ++s) {
    CHECK(randomized_response(1, 20.0, s) == 1);
    CHECK(randomized_response(0, 20.0, s) == 0);
  }

  std::size_t truthful = 0;
  const std::size_t n = 100000;
  for (std::uint64_t s = 0; s < n; ++s) {
    const int bit = static_cast<int>(s & 1);
    if (randomized_response(bit, 1.0, s) == bit) ++truthful;
  }
  const double fraction = double(truthful) / double(n);
  CHECK(std::abs(fraction - std::exp(1.0) / (std::exp(1.0) + 1.0)) <= 0.01);
}

TEST_CASE("debiased estimator recovers the true proportion") {
  // Algebraic identities of the inverse map.
  const double p = rr_truth_probability(1.0);
  CHECK(rr_debias(p, 1.0) == doctest::Approx(1.0));
  CHECK(rr_debias(1.0 - p, 1.0) == doctest::Approx(0.0));
  CHECK(rr_debias(0.5, 1.0) == doctest::Approx(0.5));
  CHECK_THROWS_AS(rr_debias(0.5, 0.0), NumericError);

  const double true_pi = 0.3;
  const std::size_t n = 100000;
  Rng rng(99);
  std::size_t ones = 0;
  std::size_t actual_ones = 0;
  for (std::uint64_t s = 0; s < n; ++s) {
    const int bit = rng.uniform() < true_pi ? 1 : 0;
    actual_ones += std::size_t(bit);
    ones += std::size_t(randomized_response(bit, 1.0, counter_mix(1234, s)));
  }
  const double observed = double(ones) / double(n);
  const double estimate = rr_debias(observed, 1.0);
  const double sample_pi = double(actual_ones) / double(n);
  const double se = std::sqrt(observed * (1.0 - observed) / double(n)) / (2.0 * p - 1.0);
  CHECK(std::abs(estimate - sample_pi) <= 3.0 * se);
}
