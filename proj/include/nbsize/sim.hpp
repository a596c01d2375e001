#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "nbsize/design.hpp"
#include "nbsize/sizing.hpp"

namespace nbsize {

using Rng = std::mt19937_64;

struct SubjectRecord {
  int arm = 0;  ///< 0 control, 1 experimental
  double entry_time = 0.0;
  double follow_up = 0.0;
  std::int64_t events = 0;
};

/// Draws entry, dropout, follow-up and a gamma-frailty Poisson count for one subject.
SubjectRecord sample_subject(const FollowUpDesign& design, const ArmSpec& arm, int arm_index, Rng& rng);

/// NB log-likelihood of one subject with mean mu = lambda t, dropping the
/// log(y!) term. kappa = 0 gives the Poisson log-likelihood.
double nb_log_likelihood(std::int64_t y, double t, double lambda, double kappa);

enum class DispersionMode { Common, PerArm };

struct FitOptions {
  double grad_tol = 1e-8;
  int max_iterations = 200;
  double kappa_floor = 1e-6;  ///< below this the Poisson model is used
};

struct FitResult {
  std::array<double, 2> gamma_hat{};  ///< log rates
  std::array<double, 2> kappa_hat{};  ///< equal entries for a common dispersion
  std::array<double, 2> var_gamma{};  ///< variance of each log rate
  double var_beta = 0.0;              ///< variance of the log rate ratio
  double phi = 1.0;                   ///< Pearson dispersion (quasi-Poisson only)
  bool converged = false;
  bool poisson_fallback = false;
  int iterations = 0;
};

/// Maximum likelihood NB fit with a treatment factor. Throws BoundaryError when
/// an arm has no events.
FitResult fit_nb(const std::vector<SubjectRecord>& data, DispersionMode mode, const FitOptions& opts = {});

/// Poisson rates with Pearson-scaled variances (two parameters).
FitResult fit_quasi_poisson(const std::vector<SubjectRecord>& data);

struct WaldInterval {
  double estimate = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

/// Two-sided 1 - alpha interval for the rate ratio (exponentiated) or the
/// rate difference (delta method).
WaldInterval wald_interval(const FitResult& fit, Metric metric, double alpha);

/// True when the interval rejects the null hypothesis.
bool decide(const WaldInterval& ci, const Hypothesis& hypothesis);
bool decide(const FitResult& fit, const Hypothesis& hypothesis, double alpha);

enum class AnalysisModel { NegBinCommon, NegBinPerArm, QuasiPoisson };

struct MonteCarloOptions {
  std::int64_t replications = 10000;
  std::uint64_t seed = 20240601;
  AnalysisModel model = AnalysisModel::NegBinCommon;
  int workers = 1;
  FitOptions fit;
};

struct SimReport {
  std::int64_t replications = 0;
  std::int64_t rejections = 0;
  double rejection_rate = 0.0;  ///< rejections / (replications - fit_failures)
  double mc_se = 0.0;
  std::int64_t fit_failures = 0;
  std::int64_t poisson_fallbacks = 0;
  std::uint64_t seed = 0;
};

/// Simulated subjects of one trial. Arm sizes come from split_total.
std::vector<SubjectRecord> simulate_trial(const TrialSpec& spec, std::int64_t n, const std::array<double, 2>& truth,
                                          Rng& rng);

/// Rng for replication `index`; independent of how replications are scheduled.
Rng replication_rng(std::uint64_t seed, std::uint64_t index);

/// Runs replications of a trial of total size n with true rates `truth`
/// (the hypothesis and dispersion come from spec). Results do not depend on
/// the worker count.
SimReport monte_carlo(const TrialSpec& spec, std::int64_t n, const std::array<double, 2>& truth,
                      const MonteCarloOptions& opts);

}  // namespace nbsize
