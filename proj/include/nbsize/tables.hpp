#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "nbsize/sizing.hpp"

namespace nbsize {

/// Reference grids of sizing scenarios, regenerated by `nbsize tables`.
enum class TableId {
  TypeIDesign1,   ///< null-scenario sizes, fixed duration
  TypeIDesign2,   ///< null-scenario sizes, staggered accrual
  NiDesign1,      ///< NI sizes with bounds and comparator, fixed duration
  NiDesign2,      ///< same, staggered accrual
  Heterogeneous,  ///< arm-specific dispersion, fixed duration
  Equivalence,    ///< both designs
};

struct TableRow {
  TableId table = TableId::NiDesign1;
  DesignKind design = DesignKind::FixedDuration;
  double lambda0 = 0.0;
  double rate_ratio = 1.0;  ///< exp(beta) used for sizing
  double lambda1 = 0.0;
  double kappa0 = 0.0;
  double kappa1 = 0.0;
  double margin_ratio = 1.0;  ///< M_r0, or M_ru for equivalence
  std::optional<std::int64_t> n_zr;
  std::int64_t n_rl = 0, n_r = 0, n_ru = 0;
  double margin_diff = 0.0;  ///< M_d0, or M_du for equivalence
  std::int64_t n_dl = 0, n_d = 0, n_du = 0;
};

/// 25% dropout by year 2 for the fixed-duration scenarios.
FollowUpDesign table_design(DesignKind kind);
double table_dropout_hazard(DesignKind kind);

/// Trial used by a table row, on the requested metric. For equivalence the
/// margins are 1/M and M (ratio) or -M_d and M_d (difference).
TrialSpec table_trial(const TableRow& row, Metric metric);

std::vector<TableRow> compute_table(TableId id);

std::string table_name(TableId id);
std::optional<TableId> parse_table_id(std::string_view name);
std::vector<TableId> all_tables();

/// CSV with a header row; the first column names the table.
void write_table_csv(std::ostream& out, TableId id, const std::vector<TableRow>& rows, bool header = true);

}  // namespace nbsize
