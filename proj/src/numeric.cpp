#include "nbsize/numeric.hpp"

#include <cmath>
#include <numbers>

namespace nbsize {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

namespace {

// Wichura (1988), algorithm AS 241 (PPND16), relative accuracy ~1e-16.
double ppnd16(double p) {
  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2509.0809287301226727 * r + 33430.575583588128105) * r + 67265.770927008700853) * r +
                45921.953931549871457) * r + 13731.693765509461125) * r + 1971.5909503065514427) * r +
             133.14166789178437745) * r + 3.387132872796366608) /
           (((((((5226.495278852545925 * r + 28729.085735721942674) * r + 39307.89580009271061) * r +
                21213.794301586595867) * r + 5394.1960214247511077) * r + 687.1870074920579083) * r +
             42.313330701600911252) * r + 1.0);
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double value;
  if (r <= 5.0) {
    r -= 1.6;
    value = (((((((7.7454501427834140764e-4 * r + 0.0227238449892691845833) * r + 0.24178072517745061177) * r +
                 1.27045825245236838258) * r + 3.64784832476320460504) * r + 5.7694972214606914055) * r +
              4.6303378461565452959) * r + 1.42343711074968357734) /
            (((((((1.05075007164441684324e-9 * r + 5.475938084995344946e-4) * r + 0.0151986665636164571966) * r +
                 0.14810397642748007459) * r + 0.68976733498510000455) * r + 1.6763848301838038494) * r +
              2.05319162663775882187) * r + 1.0);
  } else {
    r -= 5.0;
    value = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r + 0.0012426609473880784386) * r +
                 0.026532189526576123093) * r + 0.29656057182850489123) * r + 1.7848265399172913358) * r +
              5.4637849111641143699) * r + 6.6579046435011037772) /
            (((((((2.04426310338993978564e-15 * r + 1.4215117583164458887e-7) * r + 1.8463183175100546818e-5) * r +
                 7.868691311456132591e-4) * r + 0.0148753612908506148525) * r + 0.13692988092273580531) * r +
              0.59983220655588793769) * r + 1.0);
  }
  return q < 0.0 ? -value : value;
}

}  // namespace

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("normal_quantile: p must lie in (0, 1)");
  double x = ppnd16(p);
  // One Newton step against the erfc-based CDF.
  const double density = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
  if (density > 0.0) {
    // Phi(x) - p, taken from the tail that keeps full precision.
    const double residual = p < 0.5 ? normal_cdf(x) - p : (1.0 - p) - normal_cdf(-x);
    x -= residual / density;
  }
  return x;
}

double find_root_bisect(const std::function<double(double)>& g, double lo, double hi, double tol) {
  if (!(lo <= hi) || !(tol > 0.0)) throw DomainError("find_root_bisect: need lo <= hi and tol > 0");
  const double g_lo = g(lo);
  const double g_hi = g(hi);
  if (g_lo == 0.0) return lo;
  if (g_hi == 0.0) return hi;
  if (std::signbit(g_lo) == std::signbit(g_hi)) throw BracketError("find_root_bisect: no sign change on [lo, hi]");
  const bool hi_negative = std::signbit(g_hi);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double g_mid = g(mid);
    if (g_mid == 0.0) return mid;
    if (std::signbit(g_mid) == hi_negative) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double solve_quadratic_lower_root(double a, double b, double c) {
  if (a == 0.0) throw DomainError("solve_quadratic_lower_root: leading coefficient is zero");
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) throw DomainError("solve_quadratic_lower_root: negative discriminant");
  const double root_disc = std::sqrt(disc);
  if (b >= 0.0) return (-b - root_disc) / (2.0 * a);
  // -b - sqrt(disc) cancels when b < 0; use the product of the roots instead.
  const double other = -b + root_disc;
  return other == 0.0 ? 0.0 : 2.0 * c / other;
}

}  // namespace nbsize
