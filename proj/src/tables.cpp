#include "nbsize/tables.hpp"

#include <cmath>
#include <cstdio>

namespace nbsize {

namespace {

const std::array<double, 5> kRatios = {0.65, 0.80, 0.95, 1.00, 1.05};
const std::array<double, 2> kMargins = {1.2, 1.3};
// (lambda0, kappa) pairs shared by the one-sided grids.
const std::array<std::array<double, 2>, 2> kRateDispersion = {{{0.6, 1.0}, {0.9, 1.5}}};

double round_to(double x, int digits) {
  const double scale = std::pow(10.0, digits);
  return std::round(x * scale) / scale;
}

TableRow base_row(TableId id, DesignKind design, double lambda0, double ratio, double lambda1, double kappa0,
                  double kappa1, double margin) {
  TableRow r;
  r.table = id;
  r.design = design;
  r.lambda0 = lambda0;
  r.rate_ratio = ratio;
  r.lambda1 = lambda1;
  r.kappa0 = kappa0;
  r.kappa1 = kappa1;
  r.margin_ratio = margin;
  r.margin_diff = translate_margin(margin, lambda0, lambda1);
  return r;
}

void fill_sizes(TableRow& r, bool with_comparator) {
  const auto ratio = size_trial(table_trial(r, Metric::RateRatio), 0.8);
  const auto diff = size_trial(table_trial(r, Metric::RateDifference), 0.8);
  if (with_comparator) r.n_zr = ratio.n_zhu;
  r.n_rl = ratio.n_lower;
  r.n_r = ratio.n;
  r.n_ru = ratio.n_upper;
  r.n_dl = diff.n_lower;
  r.n_d = diff.n;
  r.n_du = diff.n_upper;
}

std::vector<TableRow> one_sided_grid(TableId id, DesignKind design, bool with_comparator) {
  std::vector<TableRow> rows;
  for (const auto& [lambda0, kappa] : kRateDispersion) {
    for (double margin : kMargins) {
      for (double ratio : kRatios) {
        auto r = base_row(id, design, lambda0, ratio, lambda0 * ratio, kappa, kappa, margin);
        fill_sizes(r, with_comparator);
        rows.push_back(r);
      }
    }
  }
  return rows;
}

std::vector<TableRow> heterogeneous_grid() {
  const std::array<std::array<double, 2>, 4> kappas = {{{2.0, 1.0}, {1.0, 2.0}, {2.0, 0.5}, {0.5, 2.0}}};
  std::vector<TableRow> rows;
  for (double ratio : {0.8, 0.9, 1.0}) {
    for (double lambda0 : {0.6, 1.0}) {
      for (const auto& [k0, k1] : kappas) {
        auto r = base_row(TableId::Heterogeneous, DesignKind::FixedDuration, lambda0, ratio,
                          round_to(lambda0 * ratio, 2), k0, k1, 1.3);
        fill_sizes(r, false);
        rows.push_back(r);
      }
    }
  }
  return rows;
}

std::vector<TableRow> equivalence_grid() {
  // (lambda0, exp(beta), kappa) per design.
  struct Scenario {
    DesignKind design;
    double lambda0, ratio, kappa;
  };
  const std::array<Scenario, 8> scenarios = {{
      {DesignKind::FixedDuration, 0.6, 1.00, 1.0},
      {DesignKind::FixedDuration, 0.6, 1.05, 1.0},
      {DesignKind::FixedDuration, 0.9, 1.00, 1.5},
      {DesignKind::FixedDuration, 0.9, 1.05, 1.5},
      {DesignKind::StaggeredAccrual, 0.6, 1.00, 1.0},
      {DesignKind::StaggeredAccrual, 0.6, 1.05, 1.0},
      {DesignKind::StaggeredAccrual, 1.0, 1.00, 1.5},
      {DesignKind::StaggeredAccrual, 0.9, 1.05, 1.5},
  }};
  std::vector<TableRow> rows;
  for (const auto& s : scenarios) {
    auto r = base_row(TableId::Equivalence, s.design, s.lambda0, s.ratio, s.lambda0 * s.ratio, s.kappa, s.kappa, 1.3);
    fill_sizes(r, true);
    rows.push_back(r);
  }
  return rows;
}

std::string fmt(double x, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  return buf;
}

}  // namespace

double table_dropout_hazard(DesignKind kind) {
  return kind == DesignKind::FixedDuration ? dropout_proportion_to_hazard(0.25, 2.0) : 0.2;
}

FollowUpDesign table_design(DesignKind kind) {
  return kind == DesignKind::FixedDuration ? FollowUpDesign::fixed(2.0) : FollowUpDesign::staggered(2.0, 2.0, 0.0);
}

TrialSpec table_trial(const TableRow& row, Metric metric) {
  TrialSpec spec;
  spec.design = table_design(row.design);
  const double hazard = table_dropout_hazard(row.design);
  spec.arms[0] = ArmSpec{row.lambda0, row.kappa0, 0.5, hazard};
  spec.arms[1] = ArmSpec{row.lambda1, row.kappa1, 0.5, hazard};
  const bool ratio = metric == Metric::RateRatio;
  if (row.table == TableId::Equivalence) {
    spec.hypothesis = ratio ? Hypothesis::equivalence(metric, 1.0 / row.margin_ratio, row.margin_ratio)
                            : Hypothesis::equivalence(metric, -row.margin_diff, row.margin_diff);
  } else {
    spec.hypothesis = Hypothesis::non_inferiority(metric, ratio ? row.margin_ratio : row.margin_diff);
  }
  return spec;
}

std::vector<TableRow> compute_table(TableId id) {
  switch (id) {
    case TableId::TypeIDesign1: return one_sided_grid(id, DesignKind::FixedDuration, false);
    case TableId::TypeIDesign2: return one_sided_grid(id, DesignKind::StaggeredAccrual, false);
    case TableId::NiDesign1: return one_sided_grid(id, DesignKind::FixedDuration, true);
    case TableId::NiDesign2: return one_sided_grid(id, DesignKind::StaggeredAccrual, true);
    case TableId::Heterogeneous: return heterogeneous_grid();
    case TableId::Equivalence: return equivalence_grid();
  }
  return {};
}

std::string table_name(TableId id) {
  switch (id) {
    case TableId::TypeIDesign1: return "typeI-design1";
    case TableId::TypeIDesign2: return "typeI-design2";
    case TableId::NiDesign1: return "ni-design1";
    case TableId::NiDesign2: return "ni-design2";
    case TableId::Heterogeneous: return "hetero";
    case TableId::Equivalence: return "equiv";
  }
  return "";
}

std::optional<TableId> parse_table_id(std::string_view name) {
  for (auto id : all_tables()) {
    if (table_name(id) == name) return id;
  }
  return std::nullopt;
}

std::vector<TableId> all_tables() {
  return {TableId::TypeIDesign1, TableId::TypeIDesign2, TableId::NiDesign1,
          TableId::NiDesign2,    TableId::Heterogeneous, TableId::Equivalence};
}

void write_table_csv(std::ostream& out, TableId id, const std::vector<TableRow>& rows, bool header) {
  if (header) {
    out << "table,design,lambda0,exp_beta,lambda1,kappa0,kappa1,mr,n_zr,n_rl,n_r,n_ru,md,n_dl,n_d,n_du\n";
  }
  const bool bounds = id != TableId::TypeIDesign1 && id != TableId::TypeIDesign2;
  for (const auto& r : rows) {
    out << table_name(id) << ',' << (r.design == DesignKind::FixedDuration ? 1 : 2) << ',' << fmt(r.lambda0, 2) << ','
        << fmt(r.rate_ratio, 2) << ',' << fmt(r.lambda1, 4) << ',' << fmt(r.kappa0, 1) << ',' << fmt(r.kappa1, 1) << ','
        << fmt(r.margin_ratio, 1) << ',';
    if (r.n_zr) out << *r.n_zr;
    out << ',';
    if (bounds) out << r.n_rl;
    out << ',' << r.n_r << ',';
    if (bounds) out << r.n_ru;
    out << ',' << fmt(r.margin_diff, 4) << ',';
    if (bounds) out << r.n_dl;
    out << ',' << r.n_d << ',';
    if (bounds) out << r.n_du;
    out << '\n';
  }
}

}  // namespace nbsize
