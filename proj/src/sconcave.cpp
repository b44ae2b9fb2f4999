#include "grunbaum/sconcave.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace grunbaum {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double p_from_s(double s, int n) {
  if (n < 1) throw std::domain_error("p_from_s: dimension must be >= 1");
  const double limit = 1.0 / n;
  if (s > limit) {
    throw std::domain_error("p_from_s: s-concavity beyond 1/n is impossible on R^n");
  }
  if (s == limit) return kInf;
  return s / (1.0 - n * s);
}

double s_from_p(double p, int n) {
  if (n < 1) throw std::domain_error("s_from_p: dimension must be >= 1");
  if (std::isinf(p) && p > 0) return 1.0 / n;
  if (!(p > -1.0 / n)) {
    throw std::domain_error("s_from_p: p must exceed -1/n");
  }
  return p / (1.0 + n * p);
}

double s_grunbaum_bound(double s) {
  if (!(s > -1.0 && s <= 1.0)) {
    throw std::domain_error(
        "s_grunbaum_bound: defined for s in (-1, 1]; no universal constant exists for s <= -1");
  }
  if (s == 0.0) return std::exp(-1.0);
  return std::pow(1.0 / (1.0 + s), 1.0 / s);
}

double c_np_bound(int n, double p) {
  if (n < 1) throw std::domain_error("c_np_bound: dimension must be >= 1");
  if (std::isinf(p) && p > 0) return std::pow(n / (n + 1.0), n);
  if (p == 0.0) return std::exp(-1.0);
  if (!(p > -1.0 / (n + 1.0))) {
    throw std::domain_error("c_np_bound: requires p > -1/(n+1)");
  }
  const double np1 = n * p + 1.0;
  const double mp1 = (n + 1.0) * p + 1.0;
  return std::pow(np1 / mp1, np1 / p);
}

Extremal1D extremal_density_1d(double s, double r1, double a) {
  if (!(a > 0.0)) throw std::invalid_argument("extremal_density_1d: profile parameter a must be positive");
  if (!(s > -1.0 && s <= 1.0)) {
    throw std::domain_error("extremal_density_1d: s must lie in (-1, 1]");
  }
  Extremal1D e;
  e.s = s;
  e.r1 = r1;
  e.a = a;
  if (s > 0.0) {
    // Linear ramp m(r) = (r-r0)/(r1-r0) raised to 1/s - 1 on [r0, r1].
    e.regime = ExtremalRegime::cone;
    const double h = 1.0 / a;
    e.r0 = r1 - h;
    const double q = 1.0 / s - 1.0;
    const double r0 = e.r0;
    Density1D d;
    d.psi = [r0, h, q](double r) {
      const double m = (r - r0) / h;
      if (m <= 0.0 || m > 1.0) return 0.0;
      return std::pow(m, q);
    };
    d.lo = e.r0;
    d.hi = r1;
    d.mass_hint = h * s;
    d.name = "extremal-cone";
    e.density = std::move(d);
    e.mass = h * s;
    e.barycenter = e.r0 + h / (1.0 + s);
    e.cut_fraction = std::pow(1.0 / (1.0 + s), 1.0 / s);
  } else if (s == 0.0) {
    // Exponential profile e^{a(r-r1)} on (-inf, r1].
    e.regime = ExtremalRegime::cylinder;
    Density1D d;
    d.psi = [a, r1](double r) {
      return r <= r1 ? std::exp(a * (r - r1)) : 0.0;
    };
    d.lo = -kInf;
    d.hi = r1;
    d.lower_tail = TailEnvelope{TailEnvelope::Kind::exponential, 1.0, a, r1};
    d.mass_hint = 1.0 / a;
    d.name = "extremal-cylinder";
    e.density = std::move(d);
    e.mass = 1.0 / a;
    e.barycenter = r1 - 1.0 / a;
    e.cut_fraction = std::exp(-1.0);
  } else {
    // Widening power profile m(r) = (R-r)/(R-r1), R = r1 + 1/a, raised to
    // 1/s - 1 on (-inf, r1].  Integrability needs s > -1 (checked above),
    // which also keeps the first moment finite.
    e.regime = ExtremalRegime::expanding;
    e.R = r1 + 1.0 / a;
    const double R = e.R;
    const double w = R - r1;  // = 1/a
    const double q = 1.0 / s - 1.0;  // < -2
    Density1D d;
    d.psi = [R, w, q, r1](double r) {
      if (r > r1) return 0.0;
      return std::pow((R - r) / w, q);
    };
    d.lo = -kInf;
    d.hi = r1;
    d.lower_tail =
        TailEnvelope{TailEnvelope::Kind::polynomial, std::pow(w, -q), -q, R};
    d.mass_hint = w * (-s);
    d.name = "extremal-expanding";
    e.density = std::move(d);
    e.mass = w * (-s);
    e.barycenter = R - w / (1.0 + s);
    e.cut_fraction = std::pow(1.0 / (1.0 + s), 1.0 / s);
  }
  return e;
}

CounterexampleMeasure counterexample_measure(double p, double k) {
  if (!(p > -1.0 && p <= -0.5)) {
    throw std::domain_error(
        "counterexample_measure: family is defined for p in (-1, -1/2] (s <= -1)");
  }
  if (!(k > 1.0)) throw std::domain_error("counterexample_measure: k must exceed 1");
  CounterexampleMeasure c;
  c.p = p;
  c.k = k;
  const double kappa = 1.0 / k;
  const double edge = 1.0 - kappa;
  Density1D d;
  d.psi = [p, edge](double u) {
    if (u < 0.0 || u > edge) return 0.0;
    return std::pow(1.0 - u, 1.0 / p);
  };
  d.lo = 0.0;
  d.hi = edge;
  d.name = "no-bound-family";

  double mean_dist;  // B = average of (1-u)
  if (p == -0.5) {
    // The exponent (2p+1)/p vanishes here; the first moment integral turns
    // logarithmic, so this member needs its own closed forms.
    c.mass = k - 1.0;
    mean_dist = std::log(k) / (k - 1.0);
    c.left_mass = 1.0 / std::log(k) - 1.0 / (k - 1.0);
  } else {
    const double e1 = (p + 1.0) / p;        // exponent of the mass integral
    const double e2 = (2.0 * p + 1.0) / p;  // exponent of the moment integral
    const double mass_core = 1.0 - std::pow(kappa, e1);
    c.mass = (p / (p + 1.0)) * mass_core;
    mean_dist = ((p + 1.0) / (2.0 * p + 1.0)) *
                (1.0 - std::pow(kappa, e2)) / mass_core;
    c.left_mass = (1.0 - std::pow(mean_dist, e1)) / mass_core;
  }
  c.barycenter = 1.0 - mean_dist;
  d.mass_hint = c.mass;
  c.density = std::move(d);
  return c;
}

NoBoundReport verify_no_bound(double p, const std::vector<double>& ks) {
  NoBoundReport rep;
  rep.p = p;
  double prev_left = kInf;
  rep.strictly_decreasing = true;
  for (double k : ks) {
    CounterexampleMeasure c = counterexample_measure(p, k);
    Measure1D mu(c.density);
    const double g_quad =
        mu.truncated_barycenter(mu.support_lo(), mu.support_hi());
    const double left_quad = mu.cdf(g_quad) / mu.total_mass();
    CounterexampleRow row;
    row.k = k;
    row.barycenter = c.barycenter;
    row.left_mass = c.left_mass;
    const double d_mass = std::fabs(mu.total_mass() - c.mass) / c.mass;
    const double d_bary =
        std::fabs(g_quad - c.barycenter) / std::max(1.0, std::fabs(c.barycenter));
    const double d_left = std::fabs(left_quad - c.left_mass) /
                          std::max(1e-6, c.left_mass);
    row.closed_form_delta = std::max({d_mass, d_bary, d_left});
    if (!(row.left_mass < prev_left)) rep.strictly_decreasing = false;
    prev_left = row.left_mass;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace grunbaum
