#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nbsize/sim.hpp"
#include "nbsize/sizing.hpp"

namespace nbsize::cli {

/// Exit statuses. Each input rule has its own code so scripts can tell them apart.
enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kBadMetric = 10,
  kBadType = 11,
  kNegativeParameter = 12,
  kBadDesign = 13,
  kPowerXorNtot = 14,
  kBadTaua = 15,
  kBadAllocation = 16,
  kSuperiorityEqualRates = 17,
  kEquivalenceDiffMargin = 18,
  kEquivalenceRatioMargin = 19,
  kNiRatioMargin = 20,
  kNiDiffMargin = 21,
  kDropoutConflict = 22,
  kBadInput = 23,
  kComputation = 30,
};

enum class Command { Size, Power, Simulate, Backcalc, Tables };
enum class OutputFormat { Human, JsonLines, Csv };

/// Raw option values as given on the command line or in the config file.
struct RawOptions {
  int design = 1;
  double tau_c = 1.0;
  double tau_a = 0.0;
  double eta = 0.0;
  std::optional<double> lambda0, lambda1;
  double kappa0 = 0.0;
  std::optional<double> kappa1;
  std::optional<double> droprate0, droprate1;
  std::optional<double> dropout_prop0, dropout_prop1;
  std::optional<double> dropout_horizon;  ///< time at which the proportions apply, default tau_c
  double p0 = 0.5;
  double alpha = 0.05;
  std::optional<double> power;
  std::optional<std::int64_t> ntot;
  std::string type = "ni";
  std::string metric = "ratio";
  std::optional<double> mr0, mru, mrl, md0, mdu, mdl;
  std::string rounding = "total";
  std::string format = "human";

  // simulate
  std::int64_t reps = 10000;
  std::uint64_t seed = 20240601;
  int workers = 1;
  std::string model = "auto";  ///< auto | nb | nb-per-arm | qp
  bool under_null = false;

  // tables
  std::string which = "all";

  // backcalc
  std::optional<std::int64_t> n0, n1;
  std::optional<double> events0, events1, tbar0, tbar1, tmax0, tmax1;
  std::optional<double> ratio_ci_low, ratio_ci_high, rate_ci_low, rate_ci_high;
  std::optional<double> phi, mean_events, mean_rate;
};

/// Validated configuration ready to run.
struct RunConfig {
  Command command = Command::Size;
  TrialSpec trial;
  std::optional<double> target_power;
  std::optional<std::int64_t> ntot;
  Rounding rounding = Rounding::Total;
  OutputFormat format = OutputFormat::Human;
  MonteCarloOptions mc;
  bool under_null = false;
  RawOptions raw;
};

/// Thrown by validate() with the exit code of the violated rule.
struct ConfigError {
  int code;
  std::string message;
};

/// Applies defaults (kappa1 <- kappa0, droprate1 <- droprate0, Mrl <- 1/Mru,
/// Mdl <- -Mdu) and checks the input rules in a fixed order.
RunConfig validate(Command command, const RawOptions& raw);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full entry point: parse, validate, run. Returns the exit status.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nbsize::cli
