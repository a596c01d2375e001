#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>

#include "nbsize/design.hpp"

namespace nbsize {

/// What a publication typically reports for one arm.
struct PublishedArmSummary {
  std::int64_t n = 0;
  double mean_events = 0.0;    ///< observed mean count, stands in for lambda_hat * mean_followup
  double mean_followup = 0.0;
  double max_followup = 0.0;
  std::optional<std::pair<double, double>> rate_ci;  ///< (lower, upper) at level 1 - alpha

  void validate() const;
};

struct KappaInterval {
  double lower = 0.0;
  double upper = 0.0;
  bool clipped = false;  ///< a bound came out negative and was set to 0
};

struct KappaEstimate {
  double kappa = 0.0;
  bool underdispersed = false;  ///< phi < 1, kappa reported as 0
};

/// Variance of the log of a ratio-scale estimate recovered from its CI.
double log_scale_variance_from_ci(double lower, double upper, double alpha);

/// Bounds on kappa from one arm's rate CI.
KappaInterval kappa_from_rate_ci(const PublishedArmSummary& arm, double alpha);

/// Bounds on kappa from the rate-ratio CI (arm 0 is the control).
KappaInterval kappa_from_ratio_ci(const std::array<PublishedArmSummary, 2>& arms, std::pair<double, double> ratio_ci,
                                  double alpha);

/// Same bounds given the variance of the log ratio directly.
KappaInterval kappa_from_log_ratio_variance(const std::array<PublishedArmSummary, 2>& arms, double variance);

/// kappa = (phi - 1) / mean_events_overall.
KappaEstimate kappa_from_quasi_poisson(double phi, double mean_events_overall);

/// The older variant dividing by the event rate instead of the mean count.
/// Kept for comparison with published numbers; it mixes units when follow-up is not 1.
KappaEstimate kappa_from_quasi_poisson_rate_divisor(double phi, double mean_rate);

/// Quasi-Poisson dispersion implied by the variance of a log rate ratio.
double phi_from_log_ratio_variance(const std::array<PublishedArmSummary, 2>& arms, double variance);

/// Size-weighted mean event count over both arms.
double overall_mean_events(const std::array<PublishedArmSummary, 2>& arms);

/// Total events over total follow-up.
double overall_event_rate(const std::array<PublishedArmSummary, 2>& arms);

/// p0 lambda0 mean_t0 + p1 lambda1 mean_t1.
double expected_mean_events(const std::array<ArmSpec, 2>& arms, const std::array<FollowUpMoments, 2>& moments);

/// (lambda0 - lambda1)^2 / (2 lambda0 lambda1).
double rate_ratio_penalty(double lambda0, double lambda1);

/// Approximate var_true - var_quasi_poisson for the log ratio with n_per_arm
/// subjects per arm and common follow-up moments:
/// (kappa / n) [2 CV^2 - (lambda0 - lambda1)^2 / (2 lambda0 lambda1)].
double quasi_poisson_variance_gap(const std::array<ArmSpec, 2>& arms, const FollowUpMoments& moments,
                                  std::int64_t n_per_arm);

}  // namespace nbsize
