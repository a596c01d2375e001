#include "nbsize/sizing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace nbsize {

namespace {

double z_upper(double alpha) { return normal_quantile(1.0 - alpha / 2.0); }

void check_probability(double p, const char* what) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError(std::string(what) + " must lie in (0, 1)");
}

std::int64_t ceil_to_int(double x) {
  if (!std::isfinite(x) || x > 9.0e15) throw InfeasibleDesign("sample size is not finite");
  return static_cast<std::int64_t>(std::ceil(x));
}

std::int64_t round_size(double n_raw, const SizingOptions& opts) {
  if (opts.rounding == Rounding::Total) return ceil_to_int(n_raw);
  return ceil_to_int(n_raw * opts.p0) + ceil_to_int(n_raw * (1.0 - opts.p0));
}

std::array<std::int64_t, 2> arm_sizes(double n_raw, std::int64_t n, const SizingOptions& opts) {
  if (opts.rounding == Rounding::Total) return split_total(n, opts.p0);
  return {ceil_to_int(n_raw * opts.p0), ceil_to_int(n_raw * (1.0 - opts.p0))};
}

void validate_margins(const std::array<ArmSpec, 2>& arms, const Hypothesis& h) {
  const double l0 = arms[0].lambda;
  const double l1 = arms[1].lambda;
  const bool ratio = h.metric == Metric::RateRatio;
  const double effect = ratio ? l1 / l0 : l1 - l0;
  switch (h.kind) {
    case HypothesisKind::Superiority:
      if (l0 == l1) throw ValidationError("lambda0 & lambda1 should be different in a superiority trial");
      break;
    case HypothesisKind::NonInferiority: {
      const double m = h.margin_ni;
      if (ratio) {
        if (!(m > 0.0) || effect == m) throw ValidationError("NI RATIO Margin must satisfy Mr0>0 & lambda1/lambda0^= Mr0");
        if ((m > 1.0 && effect > m) || (m < 1.0 && effect < m)) {
          throw ValidationError("NI RATIO margin direction: need lambda1/lambda0 < Mr0 when Mr0 > 1 and > Mr0 when Mr0 < 1");
        }
      } else {
        if (!std::isfinite(m) || effect == m) throw ValidationError("NI DIFF margin must satisfy MD0^=. and lambda1-lambda0^= Md0");
        if ((m > 0.0 && effect > m) || (m < 0.0 && effect < m)) {
          throw ValidationError("NI DIFF margin direction: need lambda1-lambda0 < Md0 when Md0 > 0 and > Md0 when Md0 < 0");
        }
      }
      break;
    }
    case HypothesisKind::Equivalence:
      if (ratio) {
        if (!(h.margin_lower > 0.0) || !(effect > h.margin_lower && effect < h.margin_upper)) {
          throw ValidationError("Equivalence RATIO margin must satisfy Mrl< lambda1/lambda0<Mru, Mru^=.");
        }
      } else if (!(effect > h.margin_lower && effect < h.margin_upper)) {
        throw ValidationError("Equivalence DIFF margin must satisfy Mdl< lambda1-lambda0<Mdu, Mdu^=.");
      }
      break;
  }
}

}  // namespace

Hypothesis Hypothesis::superiority(Metric metric, Direction direction) {
  Hypothesis h;
  h.kind = HypothesisKind::Superiority;
  h.metric = metric;
  h.margin_ni = metric == Metric::RateRatio ? 1.0 : 0.0;
  h.direction = direction;
  return h;
}

Hypothesis Hypothesis::non_inferiority(Metric metric, double margin) {
  Hypothesis h;
  h.kind = HypothesisKind::NonInferiority;
  h.metric = metric;
  h.margin_ni = margin;
  const double null_value = metric == Metric::RateRatio ? 1.0 : 0.0;
  h.direction = margin < null_value ? Direction::HigherIsBetter : Direction::LowerIsBetter;
  return h;
}

Hypothesis Hypothesis::equivalence(Metric metric, double lower, double upper) {
  Hypothesis h;
  h.kind = HypothesisKind::Equivalence;
  h.metric = metric;
  h.margin_lower = lower;
  h.margin_upper = upper;
  return h;
}

double Hypothesis::one_sided_margin() const {
  if (kind == HypothesisKind::Superiority) return metric == Metric::RateRatio ? 1.0 : 0.0;
  return margin_ni;
}

std::array<std::int64_t, 2> split_total(std::int64_t n, double p0) {
  if (n < 0) throw DomainError("split_total: n must be non-negative");
  if (!(p0 > 0.0 && p0 < 1.0)) throw DomainError("split_total: p0 must lie in (0, 1)");
  const double exact0 = static_cast<double>(n) * p0;
  const double exact1 = static_cast<double>(n) - exact0;
  std::array<std::int64_t, 2> sizes{static_cast<std::int64_t>(std::floor(exact0)),
                                    static_cast<std::int64_t>(std::floor(exact1))};
  if (sizes[0] + sizes[1] < n) {
    // Ties go to the control arm.
    if (exact0 - std::floor(exact0) >= exact1 - std::floor(exact1)) {
      ++sizes[0];
    } else {
      ++sizes[1];
    }
  }
  return sizes;
}

EffectSummary effect_summary(const std::array<ArmSpec, 2>& arms, const std::array<InfoQuantities, 2>& info,
                             const Hypothesis& hypothesis) {
  for (const auto& arm : arms) arm.validate();
  validate_margins(arms, hypothesis);
  const double l0 = arms[0].lambda;
  const double l1 = arms[1].lambda;
  const double p0 = arms[0].allocation;
  const double p1 = arms[1].allocation;

  EffectSummary eff;
  eff.metric = hypothesis.metric;
  eff.kind = hypothesis.kind;
  const bool ratio = hypothesis.metric == Metric::RateRatio;
  // Per-arm variance weights: 1 for log ratio, lambda^2 for the difference (delta method).
  const double w0 = ratio ? 1.0 : l0 * l0;
  const double w1 = ratio ? 1.0 : l1 * l1;
  auto variance = [&](double d0, double d1) { return w0 / (d0 * p0) + w1 / (d1 * p1); };
  eff.sigma2 = variance(info[0].d, info[1].d);
  eff.sigma2_lower = variance(info[0].d_upper, info[1].d_upper);
  eff.sigma2_upper = variance(info[0].d_lower, info[1].d_lower);

  auto scale = [&](double margin) { return ratio ? std::log(margin) : margin; };
  eff.beta = ratio ? std::log(l1 / l0) : l1 - l0;
  if (hypothesis.kind == HypothesisKind::Equivalence) {
    eff.delta_a = scale(hypothesis.margin_upper) - eff.beta;
    eff.delta_b = scale(hypothesis.margin_lower) - eff.beta;
  } else {
    eff.beta_star = scale(hypothesis.one_sided_margin()) - eff.beta;
  }
  return eff;
}

double translate_margin(double ratio_margin, double lambda0, double lambda1) {
  if (!(ratio_margin > 0.0) || !(lambda0 > 0.0) || !(lambda1 > 0.0)) {
    throw DomainError("translate_margin: margin and rates must be positive");
  }
  return std::sqrt(lambda0 * lambda1) * std::log(ratio_margin);
}

double ni_power_with_variance(double n, double beta_star, double sigma2, double alpha) {
  check_probability(alpha, "alpha");
  if (!(sigma2 > 0.0)) throw DomainError("ni_power: variance must be positive");
  return normal_cdf(std::sqrt(n / sigma2) * std::abs(beta_star) - z_upper(alpha));
}

double ni_power(double n, const EffectSummary& eff, double alpha) {
  return ni_power_with_variance(n, eff.beta_star, eff.sigma2, alpha);
}

SizingResult ni_size(double target_power, const EffectSummary& eff, double alpha, const SizingOptions& opts) {
  check_probability(target_power, "target power");
  check_probability(alpha, "alpha");
  if (eff.beta_star == 0.0) throw InfeasibleDesign("the effect coincides with the margin");
  const double zsum = z_upper(alpha) + normal_quantile(target_power);
  const double f = zsum * zsum / (eff.beta_star * eff.beta_star);

  SizingResult r;
  r.n_raw = f * eff.sigma2;
  r.n = round_size(r.n_raw, opts);
  r.n_lower = round_size(f * eff.sigma2_lower, opts);
  r.n_upper = round_size(f * eff.sigma2_upper, opts);
  r.per_arm = arm_sizes(r.n_raw, r.n, opts);
  r.nominal_power_at_n = ni_power(static_cast<double>(r.n), eff, alpha);
  return r;
}

double equiv_power_with_variance(double n, double delta_a, double delta_b, double sigma2, double alpha) {
  check_probability(alpha, "alpha");
  if (!(sigma2 > 0.0)) throw DomainError("equiv_power: variance must be positive");
  const double s = std::sqrt(n / sigma2);
  const double z = z_upper(alpha);
  const double p = normal_cdf(s * delta_a - z) + normal_cdf(-s * delta_b - z) - 1.0;
  return std::max(p, 0.0);
}

double equiv_power(double n, const EffectSummary& eff, double alpha) {
  return equiv_power_with_variance(n, eff.delta_a, eff.delta_b, eff.sigma2, alpha);
}

double equiv_raw_size(double target_power, double delta_a, double delta_b, double sigma2, double alpha) {
  check_probability(target_power, "target power");
  check_probability(alpha, "alpha");
  if (!(delta_a > 0.0 && delta_b < 0.0)) throw ValidationError("equivalence requires lower margin < effect < upper margin");
  const double upper_gap = delta_a;
  const double lower_gap = -delta_b;
  const double z = z_upper(alpha);
  const double zh = z + normal_quantile((1.0 + target_power) / 2.0);
  const double gap_min = std::min(upper_gap, lower_gap);
  const double gap_max = std::max(upper_gap, lower_gap);
  const double n_hi = zh * zh * sigma2 / (gap_min * gap_min);
  if (std::abs(upper_gap - lower_gap) < 1e-12) return n_hi;
  const double zl = z + normal_quantile(target_power);
  const double n_lo = zl * zl * sigma2 / (gap_max * gap_max);
  auto excess = [&](double n) {
    const double s = std::sqrt(n / sigma2);
    return normal_cdf(s * delta_a - z) + normal_cdf(-s * delta_b - z) - 1.0 - target_power;
  };
  return find_root_bisect(excess, n_lo, n_hi, 1e-5);
}

std::int64_t equiv_min_size(double target_power, double delta_a, double delta_b, double sigma2, double alpha) {
  std::int64_t n = std::max<std::int64_t>(1, ceil_to_int(equiv_raw_size(target_power, delta_a, delta_b, sigma2, alpha)));
  auto power = [&](std::int64_t m) {
    return equiv_power_with_variance(static_cast<double>(m), delta_a, delta_b, sigma2, alpha);
  };
  while (n > 1 && power(n - 1) >= target_power) --n;
  while (power(n) < target_power) ++n;
  return n;
}

SizingResult equiv_size(double target_power, const EffectSummary& eff, double alpha, const SizingOptions& opts) {
  SizingResult r;
  r.n_raw = equiv_raw_size(target_power, eff.delta_a, eff.delta_b, eff.sigma2, alpha);
  auto integer_size = [&](double sigma2) {
    if (opts.rounding == Rounding::PerArm) {
      return round_size(equiv_raw_size(target_power, eff.delta_a, eff.delta_b, sigma2, alpha), opts);
    }
    return equiv_min_size(target_power, eff.delta_a, eff.delta_b, sigma2, alpha);
  };
  r.n = integer_size(eff.sigma2);
  r.n_lower = integer_size(eff.sigma2_lower);
  r.n_upper = integer_size(eff.sigma2_upper);
  r.per_arm = arm_sizes(r.n_raw, r.n, opts);
  r.nominal_power_at_n = equiv_power(static_cast<double>(r.n), eff, alpha);
  return r;
}

double zhu_null_variance(HypothesisKind kind, double margin_ratio, const std::array<ArmSpec, 2>& arms, double mean_t) {
  if (arms[0].kappa != arms[1].kappa || arms[0].dropout_hazard != arms[1].dropout_hazard) {
    throw UnsupportedComparator("mean follow-up comparator needs a common kappa and dropout hazard");
  }
  if (!(mean_t > 0.0)) throw DomainError("zhu_null_variance: mean follow-up must be positive");
  const double l0 = arms[0].lambda;
  const double l1 = arms[1].lambda;
  const double p0 = arms[0].allocation;
  const double p1 = arms[1].allocation;
  const double kappa = arms[0].kappa;

  double r0, r1;
  if (kind == HypothesisKind::Superiority) {
    r0 = r1 = p0 * l0 + p1 * l1;
  } else {
    if (!(margin_ratio > 0.0)) throw DomainError("zhu_null_variance: margin must be positive");
    const double theta = p1 / p0;
    const double m = margin_ratio;
    if (kappa == 0.0) {
      r0 = (l0 + theta * l1) / (1.0 + theta * m);
    } else {
      const double a = -kappa * mean_t * m * (1.0 + theta);
      const double b = kappa * mean_t * (l0 * m + theta * l1) - (1.0 + theta * m);
      const double c = l0 + theta * l1;
      r0 = solve_quadratic_lower_root(a, b, c);
    }
    r1 = r0 * m;
  }
  return kappa / (p0 * p1) + (1.0 / (p0 * r0) + 1.0 / (p1 * r1)) / mean_t;
}

namespace {

struct ZhuInputs {
  double mean_t;
  double var_alt;  // log-ratio variance from d_upper
};

ZhuInputs zhu_inputs(const std::array<ArmSpec, 2>& arms, const FollowUpDesign& design, const Hypothesis& h) {
  if (h.metric != Metric::RateRatio) throw UnsupportedComparator("mean follow-up comparator is defined for the rate ratio only");
  if (arms[0].kappa != arms[1].kappa || arms[0].dropout_hazard != arms[1].dropout_hazard) {
    throw UnsupportedComparator("mean follow-up comparator needs a common kappa and dropout hazard");
  }
  for (const auto& arm : arms) arm.validate();
  validate_margins(arms, h);
  const auto m = follow_up_moments(design, arms[0].dropout_hazard);
  const double du0 = info_upper_bound(arms[0].lambda, arms[0].kappa, m);
  const double du1 = info_upper_bound(arms[1].lambda, arms[1].kappa, m);
  return {m.mean_t, 1.0 / (du0 * arms[0].allocation) + 1.0 / (du1 * arms[1].allocation)};
}

}  // namespace

std::int64_t zhu_ni_size(double target_power, const std::array<ArmSpec, 2>& arms, const FollowUpDesign& design,
                         const Hypothesis& hypothesis, double alpha) {
  check_probability(target_power, "target power");
  check_probability(alpha, "alpha");
  if (hypothesis.kind == HypothesisKind::Equivalence) throw ValidationError("zhu_ni_size: one-sided hypothesis required");
  const auto in = zhu_inputs(arms, design, hypothesis);
  const double margin = hypothesis.one_sided_margin();
  const double v0 = zhu_null_variance(hypothesis.kind, margin, arms, in.mean_t);
  const double beta_star = std::log(margin * arms[0].lambda / arms[1].lambda);
  if (beta_star == 0.0) throw InfeasibleDesign("the effect coincides with the margin");
  const double num = normal_quantile(alpha / 2.0) * std::sqrt(v0) + normal_quantile(1.0 - target_power) * std::sqrt(in.var_alt);
  return ceil_to_int(num * num / (beta_star * beta_star));
}

std::int64_t zhu_equiv_size(double target_power, const std::array<ArmSpec, 2>& arms, const FollowUpDesign& design,
                            const Hypothesis& hypothesis, double alpha) {
  check_probability(target_power, "target power");
  check_probability(alpha, "alpha");
  if (hypothesis.kind != HypothesisKind::Equivalence) throw ValidationError("zhu_equiv_size: equivalence hypothesis required");
  const auto in = zhu_inputs(arms, design, hypothesis);
  const double l0 = arms[0].lambda;
  const double l1 = arms[1].lambda;
  const double mru = hypothesis.margin_upper;
  const double mrl = hypothesis.margin_lower;
  const double v_plus = zhu_null_variance(hypothesis.kind, mru, arms, in.mean_t);
  const double v_minus = zhu_null_variance(hypothesis.kind, mrl, arms, in.mean_t);
  const double sd_alt = std::sqrt(in.var_alt);
  const double z = z_upper(alpha);

  const double seed_num = normal_quantile(alpha / 2.0) * std::sqrt(v_plus) + normal_quantile(1.0 - target_power) * sd_alt;
  const double seed_den = std::log(mru * l0 / l1);
  std::int64_t n = std::max<std::int64_t>(1, ceil_to_int(seed_num * seed_num / (seed_den * seed_den)));

  // Pairing of margins and null variances follows the reference macro term for term.
  const double gap_upper = std::abs(std::log(mru * l1 / l0));
  const double gap_lower = std::abs(std::log(mrl * l1 / l0));
  auto power = [&](std::int64_t m) {
    const double rn = std::sqrt(static_cast<double>(m));
    const double t1 = rn * gap_upper - z * std::sqrt(v_minus);
    const double t2 = rn * gap_lower - z * std::sqrt(v_plus);
    return normal_cdf(t1 / sd_alt) + normal_cdf(t2 / sd_alt) - 1.0;
  };
  constexpr std::int64_t kMaxSteps = 100'000'000;
  for (std::int64_t step = 0; power(n) < target_power; ++step) {
    if (step >= kMaxSteps) throw InfeasibleDesign("zhu_equiv_size: no size reaches the target power");
    ++n;
  }
  return n;
}

void TrialSpec::validate() const {
  design.validate();
  for (const auto& arm : arms) arm.validate();
  if (std::abs(arms[0].allocation + arms[1].allocation - 1.0) > 1e-12) {
    throw ValidationError("allocations of the two arms must sum to 1");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("alpha must lie in (0, 1)");
  validate_margins(arms, hypothesis);
}

TrialInfo trial_info(const TrialSpec& spec, const QuadratureSpec& quad) {
  spec.validate();
  TrialInfo t;
  for (int g = 0; g < 2; ++g) {
    t.moments[g] = follow_up_moments(spec.design, spec.arms[g].dropout_hazard);
    t.info[g] = info_quantities(spec.design, spec.arms[g], quad);
  }
  t.effect = effect_summary(spec.arms, t.info, spec.hypothesis);
  return t;
}

SizingResult size_trial(const TrialSpec& spec, double target_power, const SizingOptions& opts) {
  const auto t = trial_info(spec);
  SizingOptions o = opts;
  o.p0 = spec.arms[0].allocation;
  const bool equivalence = spec.hypothesis.kind == HypothesisKind::Equivalence;
  SizingResult r = equivalence ? equiv_size(target_power, t.effect, spec.alpha, o)
                               : ni_size(target_power, t.effect, spec.alpha, o);
  const bool comparable = spec.hypothesis.metric == Metric::RateRatio &&
                          spec.arms[0].kappa == spec.arms[1].kappa &&
                          spec.arms[0].dropout_hazard == spec.arms[1].dropout_hazard;
  if (comparable) {
    r.n_zhu = equivalence ? zhu_equiv_size(target_power, spec.arms, spec.design, spec.hypothesis, spec.alpha)
                          : zhu_ni_size(target_power, spec.arms, spec.design, spec.hypothesis, spec.alpha);
  }
  return r;
}

double power_at(const TrialSpec& spec, double n) {
  if (!(n > 0.0)) throw DomainError("power_at: n must be positive");
  const auto t = trial_info(spec);
  if (spec.hypothesis.kind == HypothesisKind::Equivalence) return equiv_power(n, t.effect, spec.alpha);
  return ni_power(n, t.effect, spec.alpha);
}

}  // namespace nbsize
