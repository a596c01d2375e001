#include "nbsize/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace nbsize {

SubjectRecord sample_subject(const FollowUpDesign& design, const ArmSpec& arm, int arm_index, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  SubjectRecord s;
  s.arm = arm_index;
  double planned = design.tau_c;
  if (design.kind == DesignKind::StaggeredAccrual) {
    const double u = unif(rng);
    const double eta = design.eta;
    if (std::abs(eta) * design.tau_a < 1e-10) {
      s.entry_time = u * design.tau_a;
    } else {
      // Inverse CDF of the truncated exponential entry density.
      s.entry_time = -std::log1p(u * std::expm1(-eta * design.tau_a)) / eta;
    }
    planned = design.total_duration() - s.entry_time;
  }
  s.follow_up = planned;
  if (arm.dropout_hazard > 0.0) {
    std::exponential_distribution<double> dropout(arm.dropout_hazard);
    s.follow_up = std::min(planned, dropout(rng));
  }
  double frailty = 1.0;
  if (arm.kappa > 0.0) {
    std::gamma_distribution<double> gamma(1.0 / arm.kappa, arm.kappa);
    frailty = gamma(rng);
  }
  const double mean = frailty * arm.lambda * s.follow_up;
  if (mean > 0.0) {
    std::poisson_distribution<std::int64_t> count(mean);
    s.events = count(rng);
  }
  return s;
}

namespace {

// log1p(x) / x, equal to 1 at x = 0.
double log1p_ratio(double x) { return x < 1e-8 ? 1.0 - 0.5 * x : std::log1p(x) / x; }

// log1p(x)/x^2 - 1/(x(1+x)); the 1/kappa part of the kappa score is mu^2 * A(kappa mu).
double score_tail(double x) {
  if (x < 0.1) {
    // [(1+x) log1p(x) - x] / (x^2 (1+x)) with the numerator expanded.
    double sum = 0.0;
    double power = 1.0;
    for (int m = 2; m < 22; ++m) {
      sum += ((m % 2 == 0) ? 1.0 : -1.0) * power / (static_cast<double>(m) * static_cast<double>(m - 1));
      power *= x;
    }
    return sum / (1.0 + x);
  }
  return std::log1p(x) / (x * x) - 1.0 / (x * (1.0 + x));
}

// The 1/kappa part of the second kappa derivative is mu^3 * C(kappa mu).
double curvature_tail(double x) {
  if (x < 0.1) {
    double sum = 0.0;
    double power = 1.0;
    for (int j = 0; j < 25; ++j) {
      const double c = static_cast<double>(j) + 2.0 / static_cast<double>(j + 3);
      sum += ((j % 2 == 0) ? -1.0 : 1.0) * c * power;
      power *= x;
    }
    return sum;
  }
  const double q = 1.0 / (1.0 + x);
  return 2.0 * q / (x * x) - 2.0 * std::log1p(x) / (x * x * x) + q * q / x;
}

struct ArmData {
  std::vector<double> t;
  std::vector<double> y;
  std::vector<double> exceed;  // exceed[k] = #{j : y_j > k}
  double sum_y = 0.0;
  double sum_t = 0.0;
};

ArmData collect(const std::vector<SubjectRecord>& data, int arm) {
  ArmData a;
  std::int64_t max_y = 0;
  for (const auto& s : data) {
    if (s.arm != arm) continue;
    if (!(s.follow_up > 0.0) || s.events < 0) throw DomainError("subjects need positive follow-up and non-negative counts");
    a.t.push_back(s.follow_up);
    a.y.push_back(static_cast<double>(s.events));
    a.sum_y += static_cast<double>(s.events);
    a.sum_t += s.follow_up;
    max_y = std::max(max_y, s.events);
  }
  if (a.t.empty()) throw BoundaryError("an arm has no subjects");
  if (a.sum_y == 0.0) throw BoundaryError("an arm has no events");
  a.exceed.assign(static_cast<std::size_t>(max_y), 0.0);
  for (double y : a.y) {
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(y); ++k) a.exceed[static_cast<std::size_t>(k)] += 1.0;
  }
  return a;
}

struct ArmDerivatives {
  double s_g = 0.0;   // d/dgamma
  double h_gg = 0.0;
  double h_gk = 0.0;
  double s_k = 0.0;   // d/dkappa
  double h_kk = 0.0;
  double info = 0.0;  // sum mu / (1 + kappa mu)
};

ArmDerivatives derivatives(const ArmData& a, double gamma, double kappa) {
  ArmDerivatives d;
  for (std::size_t k = 0; k < a.exceed.size(); ++k) {
    const double kk = static_cast<double>(k);
    const double q = 1.0 / (1.0 + kk * kappa);
    d.s_k += a.exceed[k] * kk * q;
    d.h_kk -= a.exceed[k] * kk * kk * q * q;
  }
  const double lambda = std::exp(gamma);
  for (std::size_t j = 0; j < a.t.size(); ++j) {
    const double y = a.y[j];
    const double mu = lambda * a.t[j];
    const double x = kappa * mu;
    const double q = 1.0 / (1.0 + x);
    d.s_g += (y - mu) * q;
    d.h_gg -= mu * (1.0 + kappa * y) * q * q;
    d.h_gk -= (y - mu) * mu * q * q;
    d.s_k += mu * mu * score_tail(x) - y * mu * q;
    d.h_kk += mu * mu * mu * curvature_tail(x) + y * mu * mu * q * q;
    d.info += mu * q;
  }
  return d;
}

// Newton on gamma for fixed kappa; the log-likelihood is concave in gamma.
double solve_gamma(const ArmData& a, double kappa, double gamma) {
  for (int it = 0; it < 100; ++it) {
    const double lambda = std::exp(gamma);
    double s = 0.0;
    double h = 0.0;
    for (std::size_t j = 0; j < a.t.size(); ++j) {
      const double mu = lambda * a.t[j];
      const double q = 1.0 / (1.0 + kappa * mu);
      s += (a.y[j] - mu) * q;
      h += mu * (1.0 + kappa * a.y[j]) * q * q;
    }
    const double step = std::clamp(s / h, -1.0, 1.0);
    gamma += step;
    if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(gamma))) break;
  }
  return gamma;
}

struct JointFit {
  std::vector<double> gamma;
  double kappa = 0.0;
  bool converged = false;
  bool fallback = false;
  int iterations = 0;
};

struct Profile {
  double score = 0.0;      // profile d/dkappa
  double curvature = 0.0;  // profile d2/dkappa2
  double grad_norm = 0.0;  // full gradient at (gamma(kappa), kappa)
};

Profile profile_at(const std::vector<const ArmData*>& arms, double kappa, std::vector<double>& gamma) {
  Profile p;
  double g2 = 0.0;
  for (std::size_t g = 0; g < arms.size(); ++g) {
    gamma[g] = solve_gamma(*arms[g], kappa, gamma[g]);
    const auto d = derivatives(*arms[g], gamma[g], kappa);
    p.score += d.s_k;
    p.curvature += d.h_kk - d.h_gk * d.h_gk / d.h_gg;
    g2 += d.s_g * d.s_g;
  }
  p.grad_norm = std::sqrt(g2 + p.score * p.score);
  return p;
}

// Common-dispersion fit over the given arms: outer safeguarded Newton on
// u = log kappa for the profile likelihood, bracketed by the score sign.
JointFit fit_joint(const std::vector<const ArmData*>& arms, const FitOptions& opts) {
  JointFit f;
  std::vector<double> poisson(arms.size());
  for (std::size_t g = 0; g < arms.size(); ++g) poisson[g] = std::log(arms[g]->sum_y / arms[g]->sum_t);

  f.gamma = poisson;
  const Profile at_floor = profile_at(arms, opts.kappa_floor, f.gamma);
  if (at_floor.score <= 0.0) {
    f.gamma = poisson;
    f.kappa = 0.0;
    f.converged = true;
    f.fallback = true;
    return f;
  }

  // Moment start: sum[(y - mu)^2 - y] / sum mu^2 at the Poisson fit.
  double num = 0.0;
  double den = 0.0;
  for (std::size_t g = 0; g < arms.size(); ++g) {
    const double lambda = std::exp(poisson[g]);
    for (std::size_t j = 0; j < arms[g]->t.size(); ++j) {
      const double mu = lambda * arms[g]->t[j];
      const double r = arms[g]->y[j] - mu;
      num += r * r - arms[g]->y[j];
      den += mu * mu;
    }
  }
  const double kappa_start = std::clamp(num / den, 1e-3, 1e3);

  const double u_max = std::log(1e8);
  double lo = std::log(opts.kappa_floor);
  double hi = std::numeric_limits<double>::infinity();
  double u = std::log(kappa_start);
  f.gamma = poisson;
  for (f.iterations = 1; f.iterations <= opts.max_iterations; ++f.iterations) {
    const double kappa = std::exp(u);
    const Profile p = profile_at(arms, kappa, f.gamma);
    f.kappa = kappa;
    if (p.grad_norm < opts.grad_tol) {
      f.converged = true;
      return f;
    }
    if (p.score > 0.0) {
      lo = u;
    } else {
      hi = u;
    }
    const double g = kappa * p.score;
    const double h = kappa * kappa * p.curvature + g;
    double next = h < 0.0 ? u - g / h : std::numeric_limits<double>::quiet_NaN();
    if (std::isinf(hi)) {
      // Still climbing: take Newton if it moves up, but by at most 2 in log kappa.
      if (!(next > u)) next = u + 1.0;
      next = std::min(next, u + 2.0);
      if (next > u_max) return f;  // kappa diverges
    } else if (!(next > lo && next < hi)) {
      next = 0.5 * (lo + hi);
    }
    if (std::abs(next - u) <= 1e-15 * std::max(1.0, std::abs(u))) {
      // No representable progress left; accept if the gradient is at rounding level.
      f.converged = p.grad_norm < 1e3 * opts.grad_tol;
      return f;
    }
    u = next;
  }
  return f;
}

}  // namespace

double nb_log_likelihood(std::int64_t y, double t, double lambda, double kappa) {
  if (y < 0 || !(t > 0.0) || !(lambda > 0.0) || !(kappa >= 0.0)) throw DomainError("nb_log_likelihood: invalid arguments");
  const double mu = lambda * t;
  const double yd = static_cast<double>(y);
  if (kappa == 0.0) return yd * std::log(mu) - mu;
  double ll = 0.0;
  for (std::int64_t k = 0; k < y; ++k) ll += std::log1p(static_cast<double>(k) * kappa);
  const double x = kappa * mu;
  return ll + yd * std::log(mu) - yd * std::log1p(x) - mu * log1p_ratio(x);
}

FitResult fit_nb(const std::vector<SubjectRecord>& data, DispersionMode mode, const FitOptions& opts) {
  const ArmData a0 = collect(data, 0);
  const ArmData a1 = collect(data, 1);
  const std::array<const ArmData*, 2> arms{&a0, &a1};
  FitResult r;
  if (mode == DispersionMode::Common) {
    const auto f = fit_joint({&a0, &a1}, opts);
    r.gamma_hat = {f.gamma[0], f.gamma[1]};
    r.kappa_hat = {f.kappa, f.kappa};
    r.converged = f.converged;
    r.poisson_fallback = f.fallback;
    r.iterations = f.iterations;
  } else {
    r.converged = true;
    for (int g = 0; g < 2; ++g) {
      const auto f = fit_joint({arms[g]}, opts);
      r.gamma_hat[g] = f.gamma[0];
      r.kappa_hat[g] = f.kappa;
      r.converged = r.converged && f.converged;
      r.poisson_fallback = r.poisson_fallback || f.fallback;
      r.iterations += f.iterations;
    }
  }
  for (int g = 0; g < 2; ++g) {
    r.var_gamma[g] = 1.0 / derivatives(*arms[g], r.gamma_hat[g], r.kappa_hat[g]).info;
  }
  r.var_beta = r.var_gamma[0] + r.var_gamma[1];
  return r;
}

FitResult fit_quasi_poisson(const std::vector<SubjectRecord>& data) {
  const ArmData a0 = collect(data, 0);
  const ArmData a1 = collect(data, 1);
  const std::array<const ArmData*, 2> arms{&a0, &a1};
  const double n = static_cast<double>(a0.t.size() + a1.t.size());
  if (n - 2.0 <= 0.0) throw DomainError("quasi-Poisson fit needs more than two subjects");
  FitResult r;
  double pearson = 0.0;
  for (int g = 0; g < 2; ++g) {
    const double lambda = arms[g]->sum_y / arms[g]->sum_t;
    r.gamma_hat[g] = std::log(lambda);
    for (std::size_t j = 0; j < arms[g]->t.size(); ++j) {
      const double mu = lambda * arms[g]->t[j];
      const double res = arms[g]->y[j] - mu;
      pearson += res * res / mu;
    }
  }
  r.phi = pearson / (n - 2.0);
  for (int g = 0; g < 2; ++g) r.var_gamma[g] = r.phi / arms[g]->sum_y;
  r.var_beta = r.var_gamma[0] + r.var_gamma[1];
  r.converged = true;
  return r;
}

WaldInterval wald_interval(const FitResult& fit, Metric metric, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  const double z = normal_quantile(1.0 - alpha / 2.0);
  WaldInterval ci;
  if (metric == Metric::RateRatio) {
    const double beta = fit.gamma_hat[1] - fit.gamma_hat[0];
    const double se = std::sqrt(fit.var_beta);
    ci.estimate = std::exp(beta);
    ci.lower = std::exp(beta - z * se);
    ci.upper = std::exp(beta + z * se);
  } else {
    const double l0 = std::exp(fit.gamma_hat[0]);
    const double l1 = std::exp(fit.gamma_hat[1]);
    const double se = std::sqrt(l0 * l0 * fit.var_gamma[0] + l1 * l1 * fit.var_gamma[1]);
    ci.estimate = l1 - l0;
    ci.lower = ci.estimate - z * se;
    ci.upper = ci.estimate + z * se;
  }
  return ci;
}

bool decide(const WaldInterval& ci, const Hypothesis& h) {
  if (h.kind == HypothesisKind::Equivalence) return ci.lower > h.margin_lower && ci.upper < h.margin_upper;
  const double margin = h.one_sided_margin();
  return h.direction == Direction::LowerIsBetter ? ci.upper < margin : ci.lower > margin;
}

bool decide(const FitResult& fit, const Hypothesis& hypothesis, double alpha) {
  return decide(wald_interval(fit, hypothesis.metric, alpha), hypothesis);
}

Rng replication_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

std::vector<SubjectRecord> simulate_trial(const TrialSpec& spec, std::int64_t n, const std::array<double, 2>& truth,
                                          Rng& rng) {
  const auto sizes = split_total(n, spec.arms[0].allocation);
  std::vector<SubjectRecord> data;
  data.reserve(static_cast<std::size_t>(n));
  for (int g = 0; g < 2; ++g) {
    ArmSpec arm = spec.arms[g];
    arm.lambda = truth[g];
    for (std::int64_t j = 0; j < sizes[g]; ++j) data.push_back(sample_subject(spec.design, arm, g, rng));
  }
  return data;
}

SimReport monte_carlo(const TrialSpec& spec, std::int64_t n, const std::array<double, 2>& truth,
                      const MonteCarloOptions& opts) {
  if (opts.replications < 1) throw ValidationError("replications must be at least 1");
  if (n < 2) throw ValidationError("a simulated trial needs at least 2 subjects");
  if (opts.workers < 1) throw ValidationError("workers must be at least 1");
  if (!(truth[0] > 0.0 && truth[1] > 0.0)) throw ValidationError("true rates must be positive");
  spec.design.validate();

  enum : std::uint8_t { kAccept = 0, kReject = 1, kFailure = 2, kFallback = 4 };
  std::vector<std::uint8_t> outcome(static_cast<std::size_t>(opts.replications), 0);
  std::atomic<std::int64_t> next{0};
  constexpr std::int64_t kChunk = 16;

  auto work = [&]() {
    for (;;) {
      const std::int64_t begin = next.fetch_add(kChunk);
      if (begin >= opts.replications) return;
      const std::int64_t end = std::min(begin + kChunk, opts.replications);
      for (std::int64_t rep = begin; rep < end; ++rep) {
        Rng rng = replication_rng(opts.seed, static_cast<std::uint64_t>(rep));
        const auto data = simulate_trial(spec, n, truth, rng);
        std::uint8_t result = kFailure;
        try {
          FitResult fit;
          switch (opts.model) {
            case AnalysisModel::NegBinCommon: fit = fit_nb(data, DispersionMode::Common, opts.fit); break;
            case AnalysisModel::NegBinPerArm: fit = fit_nb(data, DispersionMode::PerArm, opts.fit); break;
            case AnalysisModel::QuasiPoisson: fit = fit_quasi_poisson(data); break;
          }
          if (fit.converged) {
            result = decide(fit, spec.hypothesis, spec.alpha) ? kReject : kAccept;
            if (fit.poisson_fallback) result |= kFallback;
          }
        } catch (const Error&) {
          result = kFailure;
        }
        outcome[static_cast<std::size_t>(rep)] = result;
      }
    }
  };

  const int workers = static_cast<int>(std::min<std::int64_t>(opts.workers, opts.replications));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  SimReport report;
  report.replications = opts.replications;
  report.seed = opts.seed;
  for (const auto o : outcome) {
    if (o & kFailure) {
      ++report.fit_failures;
      continue;
    }
    if (o & kReject) ++report.rejections;
    if (o & kFallback) ++report.poisson_fallbacks;
  }
  const std::int64_t used = report.replications - report.fit_failures;
  if (used > 0) {
    report.rejection_rate = static_cast<double>(report.rejections) / static_cast<double>(used);
    report.mc_se = std::sqrt(report.rejection_rate * (1.0 - report.rejection_rate) / static_cast<double>(used));
  }
  return report;
}

}  // namespace nbsize
