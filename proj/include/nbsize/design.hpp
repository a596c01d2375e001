#pragma once

#include "nbsize/numeric.hpp"

namespace nbsize {

enum class DesignKind {
  /// Every subject is planned for tau_c years of treatment.
  FixedDuration,
  /// Entry spread over tau_a years, administrative close-out at tau_a + tau_c.
  StaggeredAccrual,
};

/// Censoring/accrual process shared by both arms. Dropout hazards live on
/// ArmSpec so they may differ between arms.
///
/// For StaggeredAccrual the entry time e has density
/// eta * exp(-eta e) / (1 - exp(-eta tau_a)) on [0, tau_a]; eta = 0 is uniform
/// entry, eta > 0 front-loaded and eta < 0 lagging recruitment.
struct FollowUpDesign {
  DesignKind kind = DesignKind::FixedDuration;
  double tau_c = 1.0;
  double tau_a = 0.0;
  double eta = 0.0;

  static FollowUpDesign fixed(double tau_c) { return {DesignKind::FixedDuration, tau_c, 0.0, 0.0}; }
  static FollowUpDesign staggered(double tau_a, double tau_c, double eta = 0.0) {
    return {DesignKind::StaggeredAccrual, tau_c, tau_a, eta};
  }

  /// Calendar length of the study.
  double total_duration() const { return kind == DesignKind::FixedDuration ? tau_c : tau_a + tau_c; }

  /// Throws ValidationError when tau_c <= 0 or (staggered) tau_a <= 0.
  void validate() const;
};

/// One treatment arm.
struct ArmSpec {
  double lambda = 1.0;          ///< event rate per unit time
  double kappa = 0.0;           ///< NB dispersion, 0 is Poisson
  double allocation = 0.5;      ///< fraction of subjects randomized to this arm
  double dropout_hazard = 0.0;  ///< exponential loss-to-follow-up hazard

  void validate() const;
};

struct FollowUpMoments {
  double mean_t = 0.0;   ///< E(t)
  double mean_t2 = 0.0;  ///< E(t^2)
  double max_t = 0.0;    ///< largest possible follow-up
  double cv = 0.0;       ///< sd(t) / E(t)
};

/// d = E[lambda t / (1 + kappa lambda t)] together with its analytic bracket.
struct InfoQuantities {
  double d = 0.0;
  double d_lower = 0.0;
  double d_upper = 0.0;
};

/// Exponential hazard giving an overall dropout proportion w by time tau.
double dropout_proportion_to_hazard(double w, double tau);

FollowUpMoments follow_up_moments(const FollowUpDesign& design, double dropout_hazard);

/// P(follow-up >= t) for a subject of the given design.
double follow_up_survival(const FollowUpDesign& design, double dropout_hazard, double t);

/// d by quadrature plus the lower/upper bounds from the first two follow-up moments.
InfoQuantities info_quantities(const FollowUpDesign& design, const ArmSpec& arm,
                               const QuadratureSpec& quad = {});

/// Bound-specific d values from moments alone.
double info_lower_bound(double lambda, double kappa, const FollowUpMoments& m);
double info_upper_bound(double lambda, double kappa, const FollowUpMoments& m);

/// Extra subjects in the coarse upper size bound contributed by one arm:
/// kappa * f * (max_t - mean_t) / mean_t.
double coarse_upper_size_increment(const ArmSpec& arm, const FollowUpMoments& moments, double f);

}  // namespace nbsize
