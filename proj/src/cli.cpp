#include "nbsize/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "nbsize/summary.hpp"
#include "nbsize/tables.hpp"

namespace nbsize::cli {

namespace {

using nlohmann::json;

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string fixed(double x, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  return buf;
}

std::string percent(double p) { return fixed(100.0 * p, 2); }

[[noreturn]] void fail(int code, std::string message) { throw ConfigError{code, std::move(message)}; }

bool needs_trial(Command c) { return c == Command::Size || c == Command::Power || c == Command::Simulate; }

ArmSpec arm_from(double lambda, double kappa, double allocation, double hazard) {
  return ArmSpec{lambda, kappa, allocation, hazard};
}

}  // namespace

RunConfig validate(Command command, const RawOptions& raw) {
  RunConfig cfg;
  cfg.command = command;
  cfg.raw = raw;

  const std::string format = lower(raw.format);
  if (format == "human") {
    cfg.format = OutputFormat::Human;
  } else if (format == "jsonl") {
    cfg.format = OutputFormat::JsonLines;
  } else if (format == "csv") {
    cfg.format = OutputFormat::Csv;
  } else {
    fail(kUsage, "Error: format should be human, jsonl or csv");
  }

  if (!needs_trial(command)) return cfg;

  const std::string metric = lower(raw.metric);
  const std::string type = lower(raw.type);
  if (metric != "ratio" && metric != "diff") fail(kBadMetric, "Metric should be equal to RATIO or DIFF");
  if (type != "sup" && type != "ni" && type != "equi") fail(kBadType, "Type should be equal to SUP, NI or EQUI");
  if (!raw.lambda0 || !raw.lambda1) fail(kBadInput, "Error: lambda0 and lambda1 are required");
  if ((raw.droprate0 && raw.dropout_prop0) || (raw.droprate1 && raw.dropout_prop1)) {
    fail(kDropoutConflict, "Error: give either a dropout hazard or a dropout proportion for each arm, not both");
  }

  const double lambda0 = *raw.lambda0;
  const double lambda1 = *raw.lambda1;
  const double kappa0 = raw.kappa0;
  const double kappa1 = raw.kappa1.value_or(kappa0);
  if (raw.dropout_horizon && !(*raw.dropout_horizon > 0.0)) {
    fail(kNegativeParameter, "Error: dropout horizon must be positive");
  }
  const double horizon = raw.dropout_horizon.value_or(raw.tau_c);
  for (const auto& prop : {raw.dropout_prop0, raw.dropout_prop1}) {
    if (prop && !(*prop >= 0.0 && *prop < 1.0)) fail(kNegativeParameter, "Error: dropout proportions must lie in [0, 1)");
  }
  if (!(horizon > 0.0)) fail(kNegativeParameter, "Error: droprate0/droprate1,lambda0/lambda1,kappa0/kappa1,tauc shall be non-negative or positive");
  const double drop0 = raw.dropout_prop0 ? dropout_proportion_to_hazard(*raw.dropout_prop0, horizon) : raw.droprate0.value_or(0.0);
  double drop1 = drop0;
  if (raw.dropout_prop1) {
    drop1 = dropout_proportion_to_hazard(*raw.dropout_prop1, horizon);
  } else if (raw.droprate1) {
    drop1 = *raw.droprate1;
  }

  if (drop0 < 0.0 || drop1 < 0.0 || !(lambda0 > 0.0) || !(lambda1 > 0.0) || kappa0 < 0.0 || kappa1 < 0.0 ||
      !(raw.tau_c > 0.0)) {
    fail(kNegativeParameter, "Error: droprate0/droprate1,lambda0/lambda1,kappa0/kappa1,tauc shall be non-negative or positive");
  }
  if (raw.design != 1 && raw.design != 2) fail(kBadDesign, "Error: design should be equal to 1 or 2");
  const bool has_power = raw.power.has_value();
  const bool has_ntot = raw.ntot.has_value();
  if ((has_power && !(*raw.power > 0.0 && *raw.power < 1.0)) || (has_ntot && *raw.ntot <= 0) || has_power == has_ntot) {
    fail(kPowerXorNtot, "Error: there should be either 0<power<1, ntot=. OR ntot>0 & power=.");
  }
  if (raw.design == 2 && !(raw.tau_a > 0.0)) fail(kBadTaua, "Error: taua must be >0 in design 2");
  if (!(raw.p0 > 0.0 && raw.p0 < 1.0)) {
    fail(kBadAllocation, "Error: p0 the proprotion of subject in control arm must be between 0 and 1");
  }

  const Metric m = metric == "ratio" ? Metric::RateRatio : Metric::RateDifference;
  Hypothesis h;
  if (type == "sup") {
    if (lambda0 == lambda1) fail(kSuperiorityEqualRates, "Error: lambda0 & lambda1 should be different in a superiority trial");
    h = Hypothesis::superiority(m, lambda1 < lambda0 ? Direction::LowerIsBetter : Direction::HigherIsBetter);
  } else if (type == "equi") {
    if (m == Metric::RateDifference) {
      const std::optional<double> mdl = raw.mdl ? raw.mdl : (raw.mdu ? std::optional<double>(-*raw.mdu) : std::nullopt);
      const double diff = lambda1 - lambda0;
      if (!raw.mdu || !mdl || diff >= *raw.mdu || diff <= *mdl) {
        fail(kEquivalenceDiffMargin, "Error: Equivalence DIFF margin must satisfy Mdl< lambda1-lambda0<Mdu, Mdu^=.");
      }
      h = Hypothesis::equivalence(m, *mdl, *raw.mdu);
    } else {
      const bool ok_upper = raw.mru && *raw.mru > 0.0;
      const double mru = ok_upper ? *raw.mru : 0.0;
      const double mrl = raw.mrl ? *raw.mrl : (ok_upper ? 1.0 / mru : 0.0);
      const double ratio = lambda1 / lambda0;
      if (!ok_upper || !(mrl > 0.0) || ratio >= mru || ratio <= mrl) {
        fail(kEquivalenceRatioMargin, "Error: Equivalence RATIO margin must satisfy Mrl< lambda1/lambda0<Mru, Mru^=.");
      }
      h = Hypothesis::equivalence(m, mrl, mru);
    }
  } else if (m == Metric::RateRatio) {
    if (!raw.mr0 || !(*raw.mr0 > 0.0) || lambda1 / lambda0 == *raw.mr0) {
      fail(kNiRatioMargin, "Error: NI RATIO Margin must satisfy Mr0>0 & lambda1/lambda0^= Mr0");
    }
    const double ratio = lambda1 / lambda0;
    if ((*raw.mr0 > 1.0 && ratio > *raw.mr0) || (*raw.mr0 < 1.0 && ratio < *raw.mr0)) {
      fail(kNiRatioMargin, "Error: NI RATIO margin needs lambda1/lambda0<Mr0 when Mr0>1 and lambda1/lambda0>Mr0 when Mr0<1");
    }
    h = Hypothesis::non_inferiority(m, *raw.mr0);
  } else {
    if (!raw.md0 || lambda1 - lambda0 == *raw.md0) {
      fail(kNiDiffMargin, "Error: NI DIFF margin must satisfy MD0^=. and lambda1-lambda0^= Md0");
    }
    const double diff = lambda1 - lambda0;
    if ((*raw.md0 > 0.0 && diff > *raw.md0) || (*raw.md0 < 0.0 && diff < *raw.md0)) {
      fail(kNiDiffMargin, "Error: NI DIFF margin needs lambda1-lambda0<Md0 when Md0>0 and lambda1-lambda0>Md0 when Md0<0");
    }
    h = Hypothesis::non_inferiority(m, *raw.md0);
  }

  cfg.trial.design = raw.design == 1 ? FollowUpDesign::fixed(raw.tau_c)
                                     : FollowUpDesign::staggered(raw.tau_a, raw.tau_c, raw.eta);
  cfg.trial.arms[0] = arm_from(lambda0, kappa0, raw.p0, drop0);
  cfg.trial.arms[1] = arm_from(lambda1, kappa1, 1.0 - raw.p0, drop1);
  cfg.trial.hypothesis = h;
  if (!(raw.alpha > 0.0 && raw.alpha < 1.0)) fail(kBadInput, "Error: alpha must be between 0 and 1");
  cfg.trial.alpha = raw.alpha;
  cfg.target_power = raw.power;
  cfg.ntot = raw.ntot;

  const std::string rounding = lower(raw.rounding);
  if (rounding == "total") {
    cfg.rounding = Rounding::Total;
  } else if (rounding == "per-arm") {
    cfg.rounding = Rounding::PerArm;
  } else {
    fail(kUsage, "Error: rounding should be total or per-arm");
  }

  if (command == Command::Simulate) {
    if (raw.reps < 1) fail(kBadInput, "Error: reps must be at least 1");
    if (raw.workers < 1) fail(kBadInput, "Error: workers must be at least 1");
    cfg.mc.replications = raw.reps;
    cfg.mc.seed = raw.seed;
    cfg.mc.workers = raw.workers;
    const std::string model = lower(raw.model);
    if (model == "auto") {
      cfg.mc.model = kappa0 == kappa1 ? AnalysisModel::NegBinCommon : AnalysisModel::NegBinPerArm;
    } else if (model == "nb") {
      cfg.mc.model = AnalysisModel::NegBinCommon;
    } else if (model == "nb-per-arm") {
      cfg.mc.model = AnalysisModel::NegBinPerArm;
    } else if (model == "qp") {
      cfg.mc.model = AnalysisModel::QuasiPoisson;
    } else {
      fail(kUsage, "Error: model should be auto, nb, nb-per-arm or qp");
    }
    cfg.under_null = raw.under_null;
  }
  return cfg;
}

namespace {

json info_json(const TrialInfo& t) {
  json arms = json::array();
  for (int g = 0; g < 2; ++g) {
    arms.push_back({{"d", t.info[g].d},
                    {"d_lower", t.info[g].d_lower},
                    {"d_upper", t.info[g].d_upper},
                    {"mean_t", t.moments[g].mean_t},
                    {"mean_t2", t.moments[g].mean_t2}});
  }
  return arms;
}

void print_info(std::ostream& out, const TrialInfo& t) {
  const char* names[2] = {"control", "active"};
  for (int g = 0; g < 2; ++g) {
    out << "d dl du E(t) E(t*t) in " << names[g] << " arm: " << fixed(t.info[g].d, 6) << ' '
        << fixed(t.info[g].d_lower, 6) << ' ' << fixed(t.info[g].d_upper, 6) << ' ' << fixed(t.moments[g].mean_t, 6)
        << ' ' << fixed(t.moments[g].mean_t2, 6) << '\n';
  }
}

int run_size(const RunConfig& cfg, std::ostream& out) {
  const auto t = trial_info(cfg.trial);
  SizingOptions opts;
  opts.rounding = cfg.rounding;
  const auto r = size_trial(cfg.trial, *cfg.target_power, opts);
  switch (cfg.format) {
    case OutputFormat::Human:
      print_info(out, t);
      out << "required size before rounding: " << fixed(r.n_raw, 4) << '\n'
          << "rounded size: " << r.n << " (control " << r.per_arm[0] << ", active " << r.per_arm[1] << ")\n"
          << "size bounds: " << r.n_lower << ' ' << r.n_upper << '\n';
      if (r.n_zhu) out << "mean follow-up comparator: " << *r.n_zhu << '\n';
      out << "nominal power at " << r.n << ": " << percent(r.nominal_power_at_n) << "%\n";
      break;
    case OutputFormat::JsonLines: {
      json j{{"command", "size"},
             {"n_raw", r.n_raw},
             {"n", r.n},
             {"n_lower", r.n_lower},
             {"n_upper", r.n_upper},
             {"n_zhu", r.n_zhu ? json(*r.n_zhu) : json(nullptr)},
             {"nominal_power_at_n", r.nominal_power_at_n},
             {"n_control", r.per_arm[0]},
             {"n_active", r.per_arm[1]},
             {"arms", info_json(t)}};
      out << j.dump() << '\n';
      break;
    }
    case OutputFormat::Csv:
      out << "n_raw,n,n_lower,n_upper,n_zhu,nominal_power_pct,n_control,n_active\n"
          << fixed(r.n_raw, 4) << ',' << r.n << ',' << r.n_lower << ',' << r.n_upper << ','
          << (r.n_zhu ? std::to_string(*r.n_zhu) : std::string()) << ',' << percent(r.nominal_power_at_n) << ','
          << r.per_arm[0] << ',' << r.per_arm[1] << '\n';
      break;
  }
  return kOk;
}

int run_power(const RunConfig& cfg, std::ostream& out) {
  const auto t = trial_info(cfg.trial);
  const double n = static_cast<double>(*cfg.ntot);
  const double p = power_at(cfg.trial, n);
  switch (cfg.format) {
    case OutputFormat::Human:
      print_info(out, t);
      out << "nominal power at " << *cfg.ntot << ": " << percent(p) << "%\n";
      break;
    case OutputFormat::JsonLines:
      out << json{{"command", "power"}, {"ntot", *cfg.ntot}, {"nominal_power", p}, {"arms", info_json(t)}}.dump()
          << '\n';
      break;
    case OutputFormat::Csv:
      out << "ntot,nominal_power_pct\n" << *cfg.ntot << ',' << percent(p) << '\n';
      break;
  }
  return kOk;
}

std::array<double, 2> null_truth(const TrialSpec& spec) {
  const double l0 = spec.arms[0].lambda;
  const auto& h = spec.hypothesis;
  const bool ratio = h.metric == Metric::RateRatio;
  const double margin = h.kind == HypothesisKind::Equivalence ? h.margin_upper : h.one_sided_margin();
  const double l1 = ratio ? l0 * margin : l0 + margin;
  if (!(l1 > 0.0)) throw DomainError("the null configuration has a non-positive rate");
  return {l0, l1};
}

int run_simulate(const RunConfig& cfg, std::ostream& out) {
  std::int64_t n = 0;
  if (cfg.ntot) {
    n = *cfg.ntot;
  } else {
    SizingOptions opts;
    opts.rounding = cfg.rounding;
    n = size_trial(cfg.trial, *cfg.target_power, opts).n;
  }
  const auto truth = cfg.under_null ? null_truth(cfg.trial)
                                    : std::array<double, 2>{cfg.trial.arms[0].lambda, cfg.trial.arms[1].lambda};
  const auto rep = monte_carlo(cfg.trial, n, truth, cfg.mc);
  switch (cfg.format) {
    case OutputFormat::Human:
      out << "simulated trials: " << rep.replications << " of size " << n << " (lambda0 " << truth[0] << ", lambda1 "
          << truth[1] << ")\n"
          << "rejection rate: " << percent(rep.rejection_rate) << "% (MC se " << percent(rep.mc_se) << "%)\n"
          << "fit failures: " << rep.fit_failures << ", Poisson refits: " << rep.poisson_fallbacks << '\n'
          << "seed: " << rep.seed << '\n';
      break;
    case OutputFormat::JsonLines:
      out << json{{"command", "simulate"},
                  {"n", n},
                  {"lambda0", truth[0]},
                  {"lambda1", truth[1]},
                  {"replications", rep.replications},
                  {"rejections", rep.rejections},
                  {"rejection_rate", rep.rejection_rate},
                  {"mc_se", rep.mc_se},
                  {"fit_failures", rep.fit_failures},
                  {"poisson_fallbacks", rep.poisson_fallbacks},
                  {"seed", rep.seed}}
                 .dump()
          << '\n';
      break;
    case OutputFormat::Csv:
      out << "n,lambda0,lambda1,replications,rejections,rejection_rate_pct,mc_se_pct,fit_failures,poisson_fallbacks,seed\n"
          << n << ',' << truth[0] << ',' << truth[1] << ',' << rep.replications << ',' << rep.rejections << ','
          << percent(rep.rejection_rate) << ',' << percent(rep.mc_se) << ',' << rep.fit_failures << ','
          << rep.poisson_fallbacks << ',' << rep.seed << '\n';
      break;
  }
  return kOk;
}

PublishedArmSummary published_arm(const RawOptions& raw, int g) {
  const auto& n = g == 0 ? raw.n0 : raw.n1;
  const auto& events = g == 0 ? raw.events0 : raw.events1;
  const auto& tbar = g == 0 ? raw.tbar0 : raw.tbar1;
  const auto& tmax = g == 0 ? raw.tmax0 : raw.tmax1;
  if (!n || !events || !tbar) fail(kBadInput, "Error: arm summaries need n, mean events and mean follow-up");
  PublishedArmSummary a;
  a.n = *n;
  a.mean_events = *events;
  a.mean_followup = *tbar;
  a.max_followup = tmax.value_or(*tbar);
  return a;
}

int run_backcalc(const RunConfig& cfg, std::ostream& out) {
  const auto& raw = cfg.raw;
  json record{{"command", "backcalc"}};
  std::vector<std::pair<std::string, std::string>> lines;

  auto add_interval = [&](const std::string& key, const KappaInterval& k) {
    record[key] = {{"lower", k.lower}, {"upper", k.upper}, {"clipped", k.clipped}};
    lines.emplace_back(key, fixed(k.lower, 4) + " to " + fixed(k.upper, 4) + (k.clipped ? " (clipped at 0)" : ""));
  };
  auto add_estimate = [&](const std::string& key, const KappaEstimate& k) {
    record[key] = {{"kappa", k.kappa}, {"underdispersed", k.underdispersed}};
    lines.emplace_back(key, fixed(k.kappa, 4) + (k.underdispersed ? " (phi < 1)" : ""));
  };

  if (raw.rate_ci_low || raw.rate_ci_high) {
    if (!raw.rate_ci_low || !raw.rate_ci_high) fail(kBadInput, "Error: rate CI needs both bounds");
    auto arm = published_arm(raw, 0);
    arm.rate_ci = std::make_pair(*raw.rate_ci_low, *raw.rate_ci_high);
    add_interval("kappa_from_rate_ci", kappa_from_rate_ci(arm, raw.alpha));
  }
  std::optional<std::array<PublishedArmSummary, 2>> arms;
  if (raw.ratio_ci_low || raw.ratio_ci_high) {
    if (!raw.ratio_ci_low || !raw.ratio_ci_high) fail(kBadInput, "Error: ratio CI needs both bounds");
    arms = std::array<PublishedArmSummary, 2>{published_arm(raw, 0), published_arm(raw, 1)};
    const double v = log_scale_variance_from_ci(*raw.ratio_ci_low, *raw.ratio_ci_high, raw.alpha);
    record["log_ratio_variance"] = v;
    lines.emplace_back("log_ratio_variance", fixed(v, 6));
    add_interval("kappa_from_ratio_ci", kappa_from_log_ratio_variance(*arms, v));
  }
  if (raw.phi) {
    double mean_events = 0.0;
    if (raw.mean_events) {
      mean_events = *raw.mean_events;
    } else if (raw.n0 && raw.n1 && raw.events0 && raw.events1) {
      mean_events = overall_mean_events({published_arm(raw, 0), published_arm(raw, 1)});
    } else {
      fail(kBadInput, "Error: quasi-Poisson back-calculation needs --mean-events or both arm summaries");
    }
    record["mean_events"] = mean_events;
    add_estimate("kappa_from_quasi_poisson", kappa_from_quasi_poisson(*raw.phi, mean_events));
    if (raw.mean_rate) add_estimate("kappa_rate_divisor", kappa_from_quasi_poisson_rate_divisor(*raw.phi, *raw.mean_rate));
  }
  if (lines.empty()) fail(kBadInput, "Error: backcalc needs a rate CI, a ratio CI or phi");

  switch (cfg.format) {
    case OutputFormat::Human:
      for (const auto& [k, v] : lines) out << k << ": " << v << '\n';
      break;
    case OutputFormat::JsonLines:
      out << record.dump() << '\n';
      break;
    case OutputFormat::Csv:
      out << "quantity,value\n";
      for (const auto& [k, v] : lines) out << k << ",\"" << v << "\"\n";
      break;
  }
  return kOk;
}

int run_tables(const RunConfig& cfg, std::ostream& out) {
  std::vector<TableId> ids;
  if (cfg.raw.which == "all") {
    ids = all_tables();
  } else if (auto id = parse_table_id(cfg.raw.which)) {
    ids.push_back(*id);
  } else {
    fail(kBadInput, "Error: --which should be all, typeI-design1, typeI-design2, ni-design1, ni-design2, hetero or equiv");
  }
  bool header = true;
  for (auto id : ids) {
    const auto rows = compute_table(id);
    if (cfg.format == OutputFormat::JsonLines) {
      for (const auto& r : rows) {
        json j{{"table", table_name(id)},
               {"design", r.design == DesignKind::FixedDuration ? 1 : 2},
               {"lambda0", r.lambda0},
               {"exp_beta", r.rate_ratio},
               {"lambda1", r.lambda1},
               {"kappa0", r.kappa0},
               {"kappa1", r.kappa1},
               {"mr", r.margin_ratio},
               {"n_zr", r.n_zr ? json(*r.n_zr) : json(nullptr)},
               {"n_rl", r.n_rl},
               {"n_r", r.n_r},
               {"n_ru", r.n_ru},
               {"md", r.margin_diff},
               {"n_dl", r.n_dl},
               {"n_d", r.n_d},
               {"n_du", r.n_du}};
        out << j.dump() << '\n';
      }
    } else {
      write_table_csv(out, id, rows, header);
      header = false;
    }
  }
  return kOk;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    switch (cfg.command) {
      case Command::Size: return cfg.target_power ? run_size(cfg, out) : run_power(cfg, out);
      case Command::Power: return cfg.ntot ? run_power(cfg, out) : run_size(cfg, out);
      case Command::Simulate: return run_simulate(cfg, out);
      case Command::Backcalc: return run_backcalc(cfg, out);
      case Command::Tables: return run_tables(cfg, out);
    }
  } catch (const ConfigError& e) {
    err << e.message << '\n';
    return e.code;
  } catch (const std::exception& e) {
    err << "Error: " << e.what() << '\n';
    return kComputation;
  }
  return kOk;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Power and sample size for comparing negative binomial event rates"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file; command-line flags take precedence");

  RawOptions raw;
  app.add_option("--design", raw.design, "1: fixed treatment duration, 2: staggered accrual");
  app.add_option("--tauc", raw.tau_c, "treatment duration (design 1) or follow-up after accrual (design 2)");
  app.add_option("--taua", raw.tau_a, "accrual period (design 2)");
  app.add_option("--eta", raw.eta, "entry density shape, 0 for uniform entry");
  app.add_option("--lambda0", raw.lambda0, "event rate, control arm");
  app.add_option("--lambda1", raw.lambda1, "event rate, active arm");
  app.add_option("--kappa0", raw.kappa0, "dispersion, control arm");
  app.add_option("--kappa1", raw.kappa1, "dispersion, active arm (default kappa0)");
  app.add_option("--droprate0", raw.droprate0, "exponential dropout hazard, control arm");
  app.add_option("--droprate1", raw.droprate1, "exponential dropout hazard, active arm (default droprate0)");
  app.add_option("--dropout-prop0", raw.dropout_prop0, "dropout proportion by the horizon, control arm");
  app.add_option("--dropout-prop1", raw.dropout_prop1, "dropout proportion by the horizon, active arm");
  app.add_option("--dropout-horizon", raw.dropout_horizon, "time at which dropout proportions apply (default tauc)");
  app.add_option("--p0", raw.p0, "fraction randomized to control");
  app.add_option("--alpha", raw.alpha, "two-sided level of the confidence interval");
  app.add_option("--power", raw.power, "target power");
  app.add_option("--ntot", raw.ntot, "total sample size");
  app.add_option("--type", raw.type, "sup, ni or equi");
  app.add_option("--metric", raw.metric, "ratio or diff");
  app.add_option("--mr0", raw.mr0, "NI margin on the rate ratio");
  app.add_option("--mru", raw.mru, "upper equivalence margin on the rate ratio");
  app.add_option("--mrl", raw.mrl, "lower equivalence margin on the rate ratio (default 1/mru)");
  app.add_option("--md0", raw.md0, "NI margin on the rate difference");
  app.add_option("--mdu", raw.mdu, "upper equivalence margin on the rate difference");
  app.add_option("--mdl", raw.mdl, "lower equivalence margin on the rate difference (default -mdu)");
  app.add_option("--rounding", raw.rounding, "total or per-arm");
  app.add_option("--format", raw.format, "human, jsonl or csv");

  auto* size = app.add_subcommand("size", "sample size with bounds");
  auto* power = app.add_subcommand("power", "nominal power at --ntot");
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo rejection rate of the Wald test");
  simulate->add_option("--reps", raw.reps, "replications");
  simulate->add_option("--seed", raw.seed, "master seed");
  simulate->add_option("--workers", raw.workers, "threads");
  simulate->add_option("--model", raw.model, "auto, nb, nb-per-arm or qp");
  simulate->add_flag("--under-null", raw.under_null, "simulate at the null margin instead of lambda1");
  auto* backcalc = app.add_subcommand("backcalc", "dispersion from published summaries");
  backcalc->add_option("--n0", raw.n0);
  backcalc->add_option("--n1", raw.n1);
  backcalc->add_option("--events0", raw.events0, "mean events per subject, control");
  backcalc->add_option("--events1", raw.events1, "mean events per subject, active");
  backcalc->add_option("--tbar0", raw.tbar0, "mean follow-up, control");
  backcalc->add_option("--tbar1", raw.tbar1, "mean follow-up, active");
  backcalc->add_option("--tmax0", raw.tmax0, "maximum follow-up, control");
  backcalc->add_option("--tmax1", raw.tmax1, "maximum follow-up, active");
  backcalc->add_option("--ratio-ci-low", raw.ratio_ci_low);
  backcalc->add_option("--ratio-ci-high", raw.ratio_ci_high);
  backcalc->add_option("--rate-ci-low", raw.rate_ci_low, "control-arm rate CI");
  backcalc->add_option("--rate-ci-high", raw.rate_ci_high);
  backcalc->add_option("--phi", raw.phi, "quasi-Poisson dispersion");
  backcalc->add_option("--mean-events", raw.mean_events, "overall mean events per subject");
  backcalc->add_option("--mean-rate", raw.mean_rate, "overall event rate, for the rate-divisor variant");
  auto* tables = app.add_subcommand("tables", "regenerate the reference sizing grids as CSV");
  tables->add_option("--which", raw.which, "all, typeI-design1, typeI-design2, ni-design1, ni-design2, hetero, equiv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  Command command = Command::Size;
  if (*power) command = Command::Power;
  if (*simulate) command = Command::Simulate;
  if (*backcalc) command = Command::Backcalc;
  if (*tables) command = Command::Tables;
  (void)size;

  RunConfig cfg;
  try {
    cfg = validate(command, raw);
  } catch (const ConfigError& e) {
    err << e.message << '\n';
    return e.code;
  } catch (const std::exception& e) {
    err << "Error: " << e.what() << '\n';
    return kBadInput;
  }
  return run(cfg, out, err);
}

}  // namespace nbsize::cli
