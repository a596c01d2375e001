#include "nbsize/design.hpp"

#include <algorithm>
#include <cmath>

namespace nbsize {

namespace {

// Entire functions used to keep the closed forms stable near their limits:
//   g1(x) = (1 - e^-x) / x
//   g2(x) = (1 - (1 + x) e^-x) / x^2
//   g3(x) = (2 - (x^2 + 2x + 2) e^-x) / x^3
// with g1(0) = 1, g2(0) = 1/2, g3(0) = 1/3. Small |x| uses the Taylor series.
double g1(double x) {
  if (std::abs(x) < 1e-12) return 1.0 - 0.5 * x;
  return -std::expm1(-x) / x;
}

double g2(double x) {
  if (std::abs(x) < 0.1) {
    // sum_k (-1)^k (k+1) x^k / (k+2)!
    double term = 0.5;  // k = 0
    double sum = term;
    for (int k = 1; k < 20; ++k) {
      term *= -x * static_cast<double>(k + 1) / (static_cast<double>(k) * static_cast<double>(k + 2));
      sum += term;
    }
    return sum;
  }
  return (-std::expm1(-x) - x * std::exp(-x)) / (x * x);
}

double g3(double x) {
  if (std::abs(x) < 0.1) {
    // sum_k (-1)^k (k+1)(k+2) x^k / (k+3)!
    double term = 1.0 / 3.0;
    double sum = term;
    for (int k = 1; k < 20; ++k) {
      term *= -x * static_cast<double>(k + 2) / (static_cast<double>(k) * static_cast<double>(k + 3));
      sum += term;
    }
    return sum;
  }
  return (2.0 - (x * x + 2.0 * x + 2.0) * std::exp(-x)) / (x * x * x);
}

constexpr double kUniformEntryThreshold = 1e-10;  // |eta| tau_a
constexpr double kEqualRateThreshold = 1e-8;      // |eta - delta| tau_a
constexpr double kNoDropoutThreshold = 1e-12;     // delta * tau
constexpr double kSmallDropoutThreshold = 1e-3;   // delta * tau, below it the closed forms cancel

// Entry density evaluated at tau_a: eta e^{-eta tau_a} / (1 - e^{-eta tau_a}).
double entry_density_at_close(double eta, double tau_a) {
  if (std::abs(eta) * tau_a < kUniformEntryThreshold) return 1.0 / tau_a;
  return eta / std::expm1(eta * tau_a);
}

FollowUpMoments finish(double mean_t, double mean_t2, double max_t) {
  FollowUpMoments m{mean_t, mean_t2, max_t, 0.0};
  const double var = std::max(mean_t2 - mean_t * mean_t, 0.0);
  m.cv = mean_t > 0.0 ? std::sqrt(var) / mean_t : 0.0;
  return m;
}

}  // namespace

void FollowUpDesign::validate() const {
  if (!(tau_c > 0.0) || !std::isfinite(tau_c)) throw ValidationError("tauc must be positive");
  if (kind == DesignKind::StaggeredAccrual && (!(tau_a > 0.0) || !std::isfinite(tau_a))) {
    throw ValidationError("taua must be >0 in design 2");
  }
  if (!std::isfinite(eta)) throw ValidationError("eta must be finite");
}

void ArmSpec::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ValidationError("lambda must be positive");
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw ValidationError("kappa must be non-negative");
  if (!(allocation > 0.0 && allocation < 1.0)) throw ValidationError("allocation must lie in (0, 1)");
  if (!(dropout_hazard >= 0.0) || !std::isfinite(dropout_hazard)) {
    throw ValidationError("dropout hazard must be non-negative");
  }
}

double dropout_proportion_to_hazard(double w, double tau) {
  if (!(w >= 0.0 && w < 1.0)) throw DomainError("dropout proportion must lie in [0, 1)");
  if (!(tau > 0.0)) throw DomainError("dropout horizon must be positive");
  return -std::log1p(-w) / tau;
}

FollowUpMoments follow_up_moments(const FollowUpDesign& design, double delta) {
  design.validate();
  if (!(delta >= 0.0)) throw DomainError("dropout hazard must be non-negative");
  const double tau_c = design.tau_c;
  const double tau = design.total_duration();
  const bool no_dropout = delta * tau < kNoDropoutThreshold;

  if (design.kind == DesignKind::FixedDuration) {
    if (no_dropout) return finish(tau_c, tau_c * tau_c, tau_c);
    // E(t) = (1 - e^{-delta tau_c}) / delta, E(t^2) = 2 [1 - (1 + delta tau_c) e^{-delta tau_c}] / delta^2
    const double x = delta * tau_c;
    return finish(tau_c * g1(x), 2.0 * tau_c * tau_c * g2(x), tau_c);
  }

  const double tau_a = design.tau_a;
  const double eta = design.eta;

  if (no_dropout) {
    // t = tau - e with the truncated-exponential entry time e.
    double mean_e, mean_e2;
    if (std::abs(eta) * tau_a < kUniformEntryThreshold) {
      mean_e = tau_a / 2.0;
      mean_e2 = tau_a * tau_a / 3.0;
    } else {
      const double y = eta * tau_a;
      mean_e = tau_a * g2(y) / g1(y);
      mean_e2 = tau_a * tau_a * g3(y) / g1(y);
    }
    return finish(tau - mean_e, (tau - 2.0 * mean_e) * tau + mean_e2, tau);
  }

  if (delta * tau < kSmallDropoutThreshold) {
    // Average the fixed-horizon moments h g1(delta h) and 2 h^2 g2(delta h),
    // h = tau - e, over the entry density; no 1/delta^2 factor to cancel.
    const bool uniform = std::abs(eta) * tau_a < kUniformEntryThreshold;
    const double norm = uniform ? 1.0 / tau_a : eta / -std::expm1(-eta * tau_a);
    const auto density = [&](double e) { return uniform ? norm : norm * std::exp(-eta * e); };
    const double mean_t = integrate([&](double e) {
      const double h = tau - e;
      return h * g1(delta * h) * density(e);
    }, 0.0, tau_a);
    const double mean_t2 = integrate([&](double e) {
      const double h = tau - e;
      return 2.0 * h * h * g2(delta * h) * density(e);
    }, 0.0, tau_a);
    return finish(mean_t, mean_t2, tau);
  }

  const double entry = entry_density_at_close(eta, tau_a);
  const double x = (delta - eta) * tau_a;
  double h1, h2;
  if (std::abs(x) < kEqualRateThreshold) {
    h1 = entry * tau_a;
    h2 = entry * tau_a * tau_a / 2.0;
  } else {
    h1 = entry * tau_a * g1(x);
    h2 = entry * tau_a * tau_a * g2(x);
  }
  const double decay = std::exp(-delta * tau_c);
  const double mean_t = (1.0 - decay * h1) / delta;
  const double mean_t2 = 2.0 / (delta * delta) * (1.0 - decay * ((delta * tau_c + 1.0) * h1 + delta * h2));
  return finish(mean_t, mean_t2, tau);
}

double follow_up_survival(const FollowUpDesign& design, double delta, double t) {
  if (t < 0.0) return 1.0;
  const double tau_c = design.tau_c;
  const double tau = design.total_duration();
  if (t > tau) return 0.0;
  const double retained = std::exp(-delta * t);
  if (t <= tau_c) return retained;
  if (design.kind == DesignKind::FixedDuration) return 0.0;
  // Probability that entry happened early enough to still be on study at t.
  const double remaining = tau - t;
  if (std::abs(design.eta) * design.tau_a < kUniformEntryThreshold) return retained * remaining / design.tau_a;
  return retained * std::expm1(-design.eta * remaining) / std::expm1(-design.eta * design.tau_a);
}

double info_lower_bound(double lambda, double kappa, const FollowUpMoments& m) {
  return lambda * m.mean_t * m.mean_t / (m.mean_t + kappa * lambda * m.mean_t2);
}

double info_upper_bound(double lambda, double kappa, const FollowUpMoments& m) {
  return lambda * m.mean_t / (1.0 + kappa * lambda * m.mean_t);
}

InfoQuantities info_quantities(const FollowUpDesign& design, const ArmSpec& arm, const QuadratureSpec& quad) {
  arm.validate();
  const auto moments = follow_up_moments(design, arm.dropout_hazard);
  const double lambda = arm.lambda;
  const double kappa = arm.kappa;

  InfoQuantities info;
  info.d_lower = info_lower_bound(lambda, kappa, moments);
  info.d_upper = info_upper_bound(lambda, kappa, moments);

  const bool degenerate = design.kind == DesignKind::FixedDuration &&
                          arm.dropout_hazard * design.tau_c < kNoDropoutThreshold;
  if (kappa == 0.0) {
    info.d = lambda * moments.mean_t;
    info.d_lower = info.d_upper = info.d;
    return info;
  }
  if (degenerate) {
    info.d = info.d_upper;
    info.d_lower = info.d_upper;
    return info;
  }

  // d = int_0^tau lambda S(t) / (1 + kappa lambda t)^2 dt, split at tau_c where S has a kink.
  auto integrand = [&](double t) {
    const double denom = 1.0 + kappa * lambda * t;
    return lambda * follow_up_survival(design, arm.dropout_hazard, t) / (denom * denom);
  };
  info.d = integrate(integrand, 0.0, design.tau_c, quad);
  if (design.kind == DesignKind::StaggeredAccrual) {
    info.d += integrate(integrand, design.tau_c, design.total_duration(), quad);
  }
  return info;
}

double coarse_upper_size_increment(const ArmSpec& arm, const FollowUpMoments& moments, double f) {
  if (!(moments.mean_t > 0.0)) throw DomainError("coarse_upper_size_increment: mean follow-up must be positive");
  if (!(f > 0.0)) throw DomainError("coarse_upper_size_increment: f must be positive");
  return arm.kappa * f * (moments.max_t - moments.mean_t) / moments.mean_t;
}

}  // namespace nbsize
