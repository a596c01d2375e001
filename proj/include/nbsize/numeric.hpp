#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <queue>
#include <vector>

#include "nbsize/error.hpp"

namespace nbsize {

/// Standard normal CDF, accurate to ~1e-16 absolute.
double normal_cdf(double x);

/// Standard normal quantile; throws DomainError unless 0 < p < 1.
double normal_quantile(double p);

/// Tolerances for adaptive quadrature. An interval is accepted when the
/// summed error estimate is below max(abs_tol, rel_tol * |integral|).
struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdivisions = 200;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int subdivisions = 0;
};

namespace detail {

// 15-point Kronrod nodes on [-1, 1] (non-negative half) with the embedded
// 7-point Gauss weights on the odd-indexed nodes.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

template <class F>
Segment gauss_kronrod_15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod (G7/K15) quadrature of f on [a, b]. The interval
/// with the largest error estimate is bisected until the tolerance is met.
/// Throws AccuracyError (with the best estimate) after max_subdivisions.
template <class F>
QuadratureResult integrate_detailed(F&& f, double a, double b, const QuadratureSpec& spec = {}) {
  if (!(spec.abs_tol > 0.0) || spec.rel_tol < 0.0 || spec.max_subdivisions < 1) {
    throw DomainError("integrate: invalid quadrature tolerances");
  }
  if (!(a <= b)) throw DomainError("integrate: requires a <= b");
  if (a == b) return {};

  std::priority_queue<detail::Segment> work;
  const auto first = detail::gauss_kronrod_15(f, a, b);
  work.push(first);
  double total = first.value;
  double error = first.error;
  int subdivisions = 1;

  while (error > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    if (subdivisions >= spec.max_subdivisions) {
      throw AccuracyError("integrate: tolerance not reached", total, error);
    }
    const auto worst = work.top();
    work.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const auto left = detail::gauss_kronrod_15(f, worst.a, mid);
    const auto right = detail::gauss_kronrod_15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    work.push(left);
    work.push(right);
    ++subdivisions;
  }
  // Resum to shed the drift of the running updates.
  total = 0.0;
  error = 0.0;
  while (!work.empty()) {
    total += work.top().value;
    error += work.top().error;
    work.pop();
  }
  return {total, error, subdivisions};
}

template <class F>
double integrate(F&& f, double a, double b, const QuadratureSpec& spec = {}) {
  return integrate_detailed(std::forward<F>(f), a, b, spec).value;
}

/// Bisection for a sign change of g on [lo, hi]. Stops once the bracket is
/// narrower than tol and returns the endpoint on the side where g has the
/// sign of g(hi), so monotone "first crossing" searches get a feasible point.
double find_root_bisect(const std::function<double(double)>& g, double lo, double hi, double tol);

/// The root (-b - sqrt(b^2 - 4ac)) / (2a), evaluated without cancellation.
double solve_quadratic_lower_root(double a, double b, double c);

}  // namespace nbsize
