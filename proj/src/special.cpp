#include "grunbaum/special.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace grunbaum {

namespace {
constexpr double kInvSqrt2Pi = 0.3989422804014326779399461;  // 1/sqrt(2*pi)
constexpr double kSqrt2 = 1.4142135623730950488016887;
constexpr double kInvE = 0.3678794411714423215955238;        // 1/e
}  // namespace

double normal_pdf(double x) {
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double normal_cdf(double x) {
  // erfc is evaluated at a nonnegative argument on the side that matters, so
  // the small tail is produced directly rather than as 1 - (something near 1).
  if (x <= 0.0) return 0.5 * std::erfc(-x / kSqrt2);
  return 1.0 - 0.5 * std::erfc(x / kSqrt2);
}

namespace {

// Rational approximation from Wichura's ALGORITHM AS 241 (PPND16 variant):
// minimax rationals on three ranges of q = t - 1/2 resp. r = sqrt(-log(min(t,
// 1-t))).  Gives ~16 significant digits on its own; we still polish below.
double as241_seed(double t) {
  const double q = t - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                 6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
               1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
             1.3314166789178437745e+2) * r + 3.3871328727963666080e+0) /
           (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                 3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
               5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
             4.2313330701600911252e+1) * r + 1.0);
  }
  double u = (q < 0.0) ? t : 1.0 - t;
  double r = std::sqrt(-std::log(u));
  double x;
  if (r <= 5.0) {
    r -= 1.6;
    x = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
            3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
          4.63033784615654529590e+0) * r + 1.42343711074968357734e+0) /
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
            6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
          2.05319162663775882187e+0) * r + 1.0);
  } else {
    r -= 5.0;
    x = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
            2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
          5.46378491116411436990e+0) * r + 6.65790464350110377720e+0) /
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
              1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
            1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
          5.99832206555887937690e-1) * r + 1.0);
  }
  return (q < 0.0) ? -x : x;
}

}  // namespace

double normal_quantile(double t) {
  if (!(t > 0.0 && t < 1.0)) {
    throw std::domain_error("normal_quantile: argument must lie in (0,1), got " +
                            std::to_string(t));
  }
  double x = as241_seed(t);
  // Two Halley steps against our own normal_cdf make the quantile and the CDF
  // mutually consistent at the ~1e-15 level.  Skip when the density underflows
  // (|x| ~ 38): the seed is already at full double accuracy out there.
  for (int iter = 0; iter < 2; ++iter) {
    const double pdf = normal_pdf(x);
    if (pdf < 1e-290) break;
    const double u = (normal_cdf(x) - t) / pdf;
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

double gaussian_isoperimetric(double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::domain_error("gaussian_isoperimetric: argument must lie in [0,1]");
  }
  if (t == 0.0 || t == 1.0) return 0.0;
  return normal_pdf(normal_quantile(t));
}

double lambert_w0(double x) {
  const double kBranch = -kInvE;
  if (x < kBranch) {
    // Tolerate a few ulps of slop at the branch point itself.
    if (x > kBranch - 1e-15 * (1.0 + std::fabs(kBranch))) return -1.0;
    throw std::domain_error("lambert_w0: argument below -1/e");
  }
  if (x == 0.0) return 0.0;

  // Within a hair of the branch point the series in p = sqrt(2(1 + e*x)) is
  // already accurate to ~1e-12, and the Halley iteration below would divide
  // by w + 1 ~ 0, so return the series value directly.
  if (x <= kBranch + 1e-6) {
    const double q = 2.0 * (1.0 + std::exp(1.0) * x);
    const double p = std::sqrt(q > 0.0 ? q : 0.0);
    return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)));
  }

  double w;
  if (x < -0.3235) {
    // Branch-point series in p = sqrt(2(1 + e*x)); see Corless et al. (1996),
    // "On the Lambert W function", eq. (4.22).
    const double q = 2.0 * (1.0 + std::exp(1.0) * x);
    const double p = std::sqrt(q > 0.0 ? q : 0.0);
    w = -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)));
  } else if (x < 0.3) {
    // Maclaurin series about 0 (radius of convergence 1/e).
    w = x * (1.0 + x * (-1.0 + x * (1.5 + x * (-8.0 / 3.0))));
  } else if (x < 3.0) {
    // Winitzki's closed-form approximation, good to a few percent here;
    // the asymptotic guess would degenerate as log(x) crosses 0.
    const double l = std::log1p(x);
    w = l * (1.0 - std::log1p(l) / (2.0 + l));
  } else {
    // Asymptotic W ~ log x - log log x + log log x / log x.
    const double l = std::log(x);
    const double ll = std::log(l);
    w = l - ll + ll / l;
  }

  // Halley iteration on f(w) = w*e^w - x.
  for (int iter = 0; iter < 32; ++iter) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    if (denom == 0.0) break;
    const double step = f / denom;
    w -= step;
    if (w <= -1.0) w = -1.0 + 1e-9;  // stay on the principal branch
    if (std::fabs(step) <= 1e-16 * (1.0 + std::fabs(w))) break;
  }
  return w;
}

}  // namespace grunbaum
