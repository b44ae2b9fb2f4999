#include "grunbaum/fconcave.hpp"

#include <cmath>
#include <stdexcept>

#include "grunbaum/quadrature.hpp"
#include "grunbaum/special.hpp"

namespace grunbaum {

BoundSpec log_transform() {
  BoundSpec s;
  s.F = [](double r) { return std::log(r); };
  s.F_inverse = [](double u) { return std::exp(u); };
  s.F_primitive = [](double t) { return t * std::log(t) - t; };
  s.increasing = true;
  s.name = "log";
  return s;
}

BoundSpec power_transform(double p) {
  if (p == 0.0) {
    throw std::invalid_argument("power_transform: exponent 0 is the log transform");
  }
  BoundSpec s;
  s.F = [p](double r) { return std::pow(r, p); };
  s.F_inverse = [p](double u) { return std::pow(u, 1.0 / p); };
  if (p > -1.0) {
    s.F_primitive = [p](double t) { return std::pow(t, p + 1.0) / (p + 1.0); };
  }
  s.increasing = p > 0.0;
  s.name = "power";
  return s;
}

BoundSpec identity_transform() {
  BoundSpec s;
  s.F = [](double r) { return r; };
  s.F_inverse = [](double u) { return u; };
  s.F_primitive = [](double t) { return 0.5 * t * t; };
  s.increasing = true;
  s.name = "identity";
  return s;
}

BoundSpec gaussian_quantile_transform() {
  BoundSpec s;
  // Profile masses carry quadrature-level roundoff, so a probability
  // measure's total can land just outside [0,1]; evaluate the transform just
  // inside the open interval instead of rejecting the argument.
  s.F = [](double r) {
    return normal_quantile(std::min(std::max(r, 1e-300), 1.0 - 1e-16));
  };
  s.F_inverse = [](double u) { return normal_cdf(u); };
  // int_0^t Phi^{-1}(r) dr = -phi(Phi^{-1}(t)) = -I(t).
  s.F_primitive = [](double t) {
    return -gaussian_isoperimetric(std::min(std::max(t, 0.0), 1.0));
  };
  s.increasing = true;
  s.name = "gaussian-quantile";
  return s;
}

double f_concave_bound(const BoundSpec& spec, double t) {
  if (!(t > 0.0)) throw std::domain_error("f_concave_bound: total mass must be positive");
  if (!spec.F || !spec.F_inverse) {
    throw std::invalid_argument("f_concave_bound: transform lacks F or F_inverse");
  }
  double avg;
  if (spec.F_primitive) {
    avg = spec.F_primitive(t) / t;
  } else {
    // No closed-form primitive: integrate F on [eps, t] for shrinking eps and
    // require the tail contributions to settle (integrability probe at 0).
    double prev = 0.0, cur = 0.0, prev_step = 0.0;
    bool settled = false;
    for (int k = 0; k < 5; ++k) {
      const double eps = t * std::pow(10.0, -3.0 * (k + 1));
      cur = integrate_value(spec.F, eps, t);
      if (k > 0) {
        const double step = std::fabs(cur - prev);
        if (step <= std::max(1e-10 * std::fabs(cur), 1e-13)) {
          settled = true;
          break;
        }
        if (k > 1 && step > 0.9 * prev_step) break;  // not shrinking: diverging
        prev_step = step;
      }
      prev = cur;
    }
    if (!settled) {
      throw std::domain_error(
          "f_concave_bound: transform is not integrable at 0 (no bound exists)");
    }
    avg = cur / t;
  }
  return spec.F_inverse(avg);
}

double classic_grunbaum_bound(int n) {
  if (n < 1) throw std::domain_error("classic_grunbaum_bound: dimension must be >= 1");
  const double x = static_cast<double>(n);
  return std::pow(x / (x + 1.0), x);
}

double ehrhard_grunbaum_bound(double t) {
  if (!(t > 0.0 && t <= 1.0)) {
    throw std::domain_error("ehrhard_grunbaum_bound: total mass must lie in (0,1]");
  }
  return normal_cdf(-gaussian_isoperimetric(t) / t);
}

CutCheck verify_f_concave_cut(const CutProfile& profile, const BoundSpec& spec,
                              int grid_points) {
  if (!profile.mass_at || !(profile.r_lo < profile.r_hi) || !(profile.total > 0.0)) {
    throw std::invalid_argument("verify_f_concave_cut: malformed profile");
  }
  const double t = profile.total;
  const double top = profile.mass_at(profile.r_hi);
  if (std::fabs(top - t) > 1e-6 * t) {
    throw std::invalid_argument(
        "verify_f_concave_cut: profile does not reach the declared total");
  }
  CutCheck out;
  out.total = t;
  // g = r_hi - (1/t) int m(r) dr  (integration by parts of int r dm).
  const double area = integrate_value(profile.mass_at, profile.r_lo, profile.r_hi);
  out.barycenter = profile.r_hi - area / t;
  out.measured = profile.mass_at(out.barycenter);
  out.bound = f_concave_bound(spec, t);
  out.gap = out.measured - out.bound;

  // Sample F o m away from the zero edge, where the transform may blow up.
  // The affinity score uses only the bulk samples: near either mass extreme a
  // steep transform (e.g. the normal quantile) amplifies quadrature-level
  // profile noise by orders of magnitude, which would mask a genuinely affine
  // transformed profile.
  std::vector<double> rs, fs, ra, fa;
  for (int i = 0; i < grid_points; ++i) {
    const double r = profile.r_lo +
                     (profile.r_hi - profile.r_lo) * (i + 0.5) / grid_points;
    const double m = profile.mass_at(r);
    if (m <= 1e-7 * t) continue;
    const double v = spec.F(std::min(m, t));
    if (!std::isfinite(v)) continue;
    rs.push_back(r);
    fs.push_back(v);
    if (m >= 1e-3 * t && m <= (1.0 - 1e-3) * t) {
      ra.push_back(r);
      fa.push_back(v);
    }
  }
  out.shape = check_concave(rs, fs, 1e-8);
  out.shape_ok = out.shape.passed;
  out.affinity = affinity_score(ra.size() >= 8 ? ra : rs,
                                ra.size() >= 8 ? fa : fs);
  out.equality = std::fabs(out.gap) <= 1e-7 * std::max(1.0, t) &&
                 out.affinity <= 1e-6;
  return out;
}

CdfCutCheck verify_cdf_grunbaum(const Measure1D& mu, double a, double b) {
  CdfCutCheck out;
  const double mass = mu.total_mass();
  out.total = mu.interval_mass(a, b);
  if (out.total <= 1e-12 * mass) {
    throw std::domain_error("verify_cdf_grunbaum: interval carries no mass");
  }
  out.barycenter = mu.truncated_barycenter(a, b);
  out.measured = mu.interval_mass(a, out.barycenter);
  out.quantile_integral = mu.quantile_integral(out.total);
  out.quantile_integral_direct = mu.quantile_integral_direct(out.total);
  out.route_delta =
      std::fabs(out.quantile_integral - out.quantile_integral_direct);
  out.bound = mu.cdf(out.quantile_integral / out.total);
  out.gap = out.measured - out.bound;

  // Shortcut g_full - Q(t)(1-t), meaningful for probability measures only.
  // Recorded for auditing; it disagrees with the quantile integral in general
  // and is never used in the bound.
  if (std::fabs(mass - 1.0) <= 1e-9 && out.total < mass * (1.0 - 1e-9)) {
    const double g_full = mu.quantile_integral(mass) / mass;
    const double shortcut = g_full - mu.quantile(out.total) * (1.0 - out.total);
    out.shortcut_delta = std::fabs(out.quantile_integral - shortcut);
  }

  // Equality analysis: the shift profile r -> Q(F(r) - F(a)) must be affine.
  const double fa = mu.cdf(a);
  const double avail = mass - fa;
  const int n = 129;
  std::vector<double> rs, fs;
  rs.reserve(n);
  fs.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double u = fa + avail * (i + 0.5) / n;
    rs.push_back(mu.quantile(u));
    fs.push_back(mu.quantile(u - fa));
  }
  out.affinity = affinity_score(rs, fs);
  out.equality = std::fabs(out.gap) <= 1e-7 * std::max(1.0, mass) &&
                 out.affinity <= 1e-6;
  return out;
}

}  // namespace grunbaum
