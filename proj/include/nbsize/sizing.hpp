#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "nbsize/design.hpp"

namespace nbsize {

enum class HypothesisKind { Superiority, NonInferiority, Equivalence };
enum class Metric { RateRatio, RateDifference };

/// Which side of the control rate the experimental arm hopes to land on.
/// NI direction follows from the margin; superiority needs it spelled out
/// because its null margin (1 or 0) carries no sign.
enum class Direction { LowerIsBetter, HigherIsBetter };

/// Margins are on the natural scale: ratios for RateRatio (e.g. 1.3),
/// rate differences for RateDifference.
struct Hypothesis {
  HypothesisKind kind = HypothesisKind::NonInferiority;
  Metric metric = Metric::RateRatio;
  double margin_ni = 1.0;
  double margin_lower = 0.0;
  double margin_upper = 0.0;
  Direction direction = Direction::LowerIsBetter;

  static Hypothesis superiority(Metric metric, Direction direction = Direction::LowerIsBetter);
  /// Direction is LowerIsBetter unless the margin sits below the null value.
  static Hypothesis non_inferiority(Metric metric, double margin);
  static Hypothesis equivalence(Metric metric, double lower, double upper);

  /// Margin tested by the one-sided comparison: margin_ni for NI, 1 or 0 for superiority.
  double one_sided_margin() const;
};

/// Effect on the analysis scale (log ratio or difference) with the unit-n
/// variance sigma2 = var(beta_hat) * n. The two bound variances use d_upper
/// and d_lower respectively, so sigma2_lower <= sigma2 <= sigma2_upper.
struct EffectSummary {
  Metric metric = Metric::RateRatio;
  HypothesisKind kind = HypothesisKind::NonInferiority;
  double beta = 0.0;
  double beta_star = 0.0;  ///< margin - beta, one-sided hypotheses
  double delta_a = 0.0;    ///< upper margin - beta, equivalence
  double delta_b = 0.0;    ///< lower margin - beta, equivalence
  double sigma2 = 0.0;
  double sigma2_lower = 0.0;
  double sigma2_upper = 0.0;
};

enum class Rounding {
  Total,   ///< ceil(n_raw)
  PerArm,  ///< sum over arms of ceil(n_raw * p_g)
};

struct SizingOptions {
  Rounding rounding = Rounding::Total;
  double p0 = 0.5;  ///< control allocation, used for per-arm rounding and the split
};

struct SizingResult {
  double n_raw = 0.0;
  std::int64_t n = 0;
  std::int64_t n_lower = 0;
  std::int64_t n_upper = 0;
  std::optional<std::int64_t> n_zhu;
  double nominal_power_at_n = 0.0;
  std::array<std::int64_t, 2> per_arm{};  ///< control, experimental
};

/// Splits n into arm sizes close to n * p_g with a largest-remainder rule.
std::array<std::int64_t, 2> split_total(std::int64_t n, double p0);

/// beta, margins and variances for a two-arm comparison. Throws ValidationError
/// when the margins are inconsistent with the rates.
EffectSummary effect_summary(const std::array<ArmSpec, 2>& arms, const std::array<InfoQuantities, 2>& info,
                             const Hypothesis& hypothesis);

/// sqrt(lambda0 lambda1) log(ratio_margin).
double translate_margin(double ratio_margin, double lambda0, double lambda1);

double ni_power(double n, const EffectSummary& eff, double alpha);
double ni_power_with_variance(double n, double beta_star, double sigma2, double alpha);
SizingResult ni_size(double target_power, const EffectSummary& eff, double alpha, const SizingOptions& opts = {});

double equiv_power(double n, const EffectSummary& eff, double alpha);
double equiv_power_with_variance(double n, double delta_a, double delta_b, double sigma2, double alpha);
/// Real-valued size solving equiv_power = target (closed form when |delta_a| = |delta_b|).
double equiv_raw_size(double target_power, double delta_a, double delta_b, double sigma2, double alpha);
/// Smallest integer n with equiv_power(n) >= target.
std::int64_t equiv_min_size(double target_power, double delta_a, double delta_b, double sigma2, double alpha);
SizingResult equiv_size(double target_power, const EffectSummary& eff, double alpha, const SizingOptions& opts = {});

/// Variance of the log ratio at the restricted MLE under the null ratio margin,
/// with every subject followed for mean_t. Requires a common kappa and dropout.
double zhu_null_variance(HypothesisKind kind, double margin_ratio, const std::array<ArmSpec, 2>& arms, double mean_t);

std::int64_t zhu_ni_size(double target_power, const std::array<ArmSpec, 2>& arms, const FollowUpDesign& design,
                         const Hypothesis& hypothesis, double alpha);
std::int64_t zhu_equiv_size(double target_power, const std::array<ArmSpec, 2>& arms, const FollowUpDesign& design,
                            const Hypothesis& hypothesis, double alpha);

/// Everything needed to size or analyse one trial.
struct TrialSpec {
  FollowUpDesign design;
  std::array<ArmSpec, 2> arms;  ///< control, experimental
  Hypothesis hypothesis;
  double alpha = 0.05;

  /// Checks arms, design, allocation sum and margins.
  void validate() const;
};

struct TrialInfo {
  std::array<FollowUpMoments, 2> moments;
  std::array<InfoQuantities, 2> info;
  EffectSummary effect;
};

TrialInfo trial_info(const TrialSpec& spec, const QuadratureSpec& quad = {});

/// Size with bounds; n_zhu is filled for the ratio metric when kappa and dropout are common.
SizingResult size_trial(const TrialSpec& spec, double target_power, const SizingOptions& opts = {});

/// Nominal power at total size n (equivalence power is floored at 0).
double power_at(const TrialSpec& spec, double n);

}  // namespace nbsize
