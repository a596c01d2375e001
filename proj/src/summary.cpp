#include "nbsize/summary.hpp"

#include <cmath>

namespace nbsize {

void PublishedArmSummary::validate() const {
  if (n <= 0) throw ValidationError("arm size must be positive");
  if (!(mean_events > 0.0)) throw ValidationError("mean event count must be positive");
  if (!(mean_followup > 0.0)) throw ValidationError("mean follow-up must be positive");
  if (!(max_followup >= mean_followup)) throw ValidationError("max follow-up must be at least the mean follow-up");
  if (rate_ci && !(rate_ci->first > 0.0 && rate_ci->first <= rate_ci->second)) {
    throw ValidationError("rate CI must be positive and ordered");
  }
}

double log_scale_variance_from_ci(double lower, double upper, double alpha) {
  if (!(lower > 0.0 && lower <= upper)) throw ValidationError("CI must be positive and ordered");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  const double half = (std::log(upper) - std::log(lower)) / (2.0 * normal_quantile(1.0 - alpha / 2.0));
  return half * half;
}

namespace {

KappaInterval clip(double lower, double upper) {
  KappaInterval k{lower, upper, false};
  if (k.lower < 0.0) {
    k.lower = 0.0;
    k.clipped = true;
  }
  if (k.upper < 0.0) {
    k.upper = 0.0;
    k.clipped = true;
  }
  return k;
}

}  // namespace

KappaInterval kappa_from_rate_ci(const PublishedArmSummary& arm, double alpha) {
  arm.validate();
  if (!arm.rate_ci) throw ValidationError("rate CI is required");
  const double v = log_scale_variance_from_ci(arm.rate_ci->first, arm.rate_ci->second, alpha);
  // n V lies between 1 / (lambda t_bar) + kappa and 1 / (lambda t_bar) + kappa t_m / t_bar,
  // with lambda t_bar estimated by the mean event count.
  const double excess = static_cast<double>(arm.n) * v - 1.0 / arm.mean_events;
  return clip(excess * arm.mean_followup / arm.max_followup, excess);
}

KappaInterval kappa_from_log_ratio_variance(const std::array<PublishedArmSummary, 2>& arms, double variance) {
  for (const auto& a : arms) a.validate();
  if (!(variance >= 0.0)) throw DomainError("variance must be non-negative");
  const double n0 = static_cast<double>(arms[0].n);
  const double n1 = static_cast<double>(arms[1].n);
  const double num = variance - 1.0 / (n0 * arms[0].mean_events) - 1.0 / (n1 * arms[1].mean_events);
  const double den_lower = arms[0].max_followup / (n0 * arms[0].mean_followup) +
                           arms[1].max_followup / (n1 * arms[1].mean_followup);
  const double den_upper = 1.0 / n0 + 1.0 / n1;
  return clip(num / den_lower, num / den_upper);
}

KappaInterval kappa_from_ratio_ci(const std::array<PublishedArmSummary, 2>& arms, std::pair<double, double> ratio_ci,
                                  double alpha) {
  return kappa_from_log_ratio_variance(arms, log_scale_variance_from_ci(ratio_ci.first, ratio_ci.second, alpha));
}

KappaEstimate kappa_from_quasi_poisson(double phi, double mean_events_overall) {
  if (!(mean_events_overall > 0.0)) throw DomainError("mean event count must be positive");
  if (!std::isfinite(phi)) throw DomainError("phi must be finite");
  if (phi < 1.0) return {0.0, true};
  return {(phi - 1.0) / mean_events_overall, false};
}

KappaEstimate kappa_from_quasi_poisson_rate_divisor(double phi, double mean_rate) {
  return kappa_from_quasi_poisson(phi, mean_rate);
}

double phi_from_log_ratio_variance(const std::array<PublishedArmSummary, 2>& arms, double variance) {
  for (const auto& a : arms) a.validate();
  const double poisson = 1.0 / (static_cast<double>(arms[0].n) * arms[0].mean_events) +
                         1.0 / (static_cast<double>(arms[1].n) * arms[1].mean_events);
  return variance / poisson;
}

double overall_mean_events(const std::array<PublishedArmSummary, 2>& arms) {
  double events = 0.0;
  double n = 0.0;
  for (const auto& a : arms) {
    a.validate();
    events += static_cast<double>(a.n) * a.mean_events;
    n += static_cast<double>(a.n);
  }
  return events / n;
}

double overall_event_rate(const std::array<PublishedArmSummary, 2>& arms) {
  double events = 0.0;
  double time = 0.0;
  for (const auto& a : arms) {
    a.validate();
    events += static_cast<double>(a.n) * a.mean_events;
    time += static_cast<double>(a.n) * a.mean_followup;
  }
  return events / time;
}

double expected_mean_events(const std::array<ArmSpec, 2>& arms, const std::array<FollowUpMoments, 2>& moments) {
  return arms[0].allocation * arms[0].lambda * moments[0].mean_t + arms[1].allocation * arms[1].lambda * moments[1].mean_t;
}

double rate_ratio_penalty(double lambda0, double lambda1) {
  if (!(lambda0 > 0.0 && lambda1 > 0.0)) throw DomainError("rates must be positive");
  const double diff = lambda0 - lambda1;
  return diff * diff / (2.0 * lambda0 * lambda1);
}

double quasi_poisson_variance_gap(const std::array<ArmSpec, 2>& arms, const FollowUpMoments& moments,
                                  std::int64_t n_per_arm) {
  if (!(moments.mean_t > 0.0)) throw DomainError("mean follow-up must be positive");
  if (n_per_arm <= 0) throw DomainError("arm size must be positive");
  if (arms[0].kappa != arms[1].kappa) throw DomainError("variance gap assumes a common kappa");
  const double cv2 = moments.cv * moments.cv;
  return arms[0].kappa / static_cast<double>(n_per_arm) *
         (2.0 * cv2 - rate_ratio_penalty(arms[0].lambda, arms[1].lambda));
}

}  // namespace nbsize
