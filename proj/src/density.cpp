#include "grunbaum/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "grunbaum/special.hpp"

namespace grunbaum {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

// --- TailEnvelope -----------------------------------------------------------

double TailEnvelope::bound(double d) const {
  if (d < 0.0) d = 0.0;
  switch (kind) {
    case Kind::exponential:
      return scale * std::exp(-rate * d);
    case Kind::polynomial:
      return d > 0.0 ? scale * std::pow(d, -rate) : kInf;
    case Kind::gaussian:
      return scale * std::exp(-rate * d * d);
  }
  return kInf;
}

double TailEnvelope::mass_beyond(double d) const {
  if (d < 0.0) d = 0.0;
  switch (kind) {
    case Kind::exponential:
      return scale / rate * std::exp(-rate * d);
    case Kind::polynomial:
      if (rate <= 1.0 || d <= 0.0) return kInf;
      return scale * std::pow(d, 1.0 - rate) / (rate - 1.0);
    case Kind::gaussian: {
      const double full = 0.5 * std::sqrt(std::numbers::pi / rate);
      if (d <= 0.0) return scale * full;
      // Mills-style bound: int_d^inf e^{-c t^2} dt <= e^{-c d^2} / (2 c d).
      const double mills = std::exp(-rate * d * d) / (2.0 * rate * d);
      return scale * std::min(full, mills);
    }
  }
  return kInf;
}

bool TailEnvelope::moment_controlled() const {
  return kind != Kind::polynomial || rate > 2.0;
}

double TailEnvelope::moment_beyond(double d) const {
  if (!moment_controlled()) {
    throw std::domain_error(
        "tail envelope does not control the first moment (polynomial power <= 2)");
  }
  if (d < 0.0) d = 0.0;
  switch (kind) {
    case Kind::exponential:
      return scale * std::exp(-rate * d) * (d / rate + 1.0 / (rate * rate));
    case Kind::polynomial:
      if (d <= 0.0) return kInf;
      return scale * std::pow(d, 2.0 - rate) / (rate - 2.0);
    case Kind::gaussian:
      return scale * std::exp(-rate * d * d) / (2.0 * rate);
  }
  return kInf;
}

// --- Measure1D --------------------------------------------------------------

namespace {

// Smallest doubling distance at which both the envelope's tail mass and (when
// controlled) its tail first moment drop below the targets.
double horizon_distance(const TailEnvelope& e, double mass_target,
                        double moment_target) {
  double d = 1.0;
  for (int i = 0; i < 400; ++i) {
    const bool mass_ok = e.mass_beyond(d) <= mass_target;
    const bool mom_ok =
        !e.moment_controlled() || e.moment_beyond(d) <= moment_target;
    if (mass_ok && mom_ok) return d;
    d *= 1.4;
  }
  throw std::runtime_error("tail envelope decays too slowly to truncate");
}

void check_domination(const std::function<double(double)>& psi,
                      const TailEnvelope& env, double from, double to,
                      bool leftward) {
  // Samples the outer tail (log-spaced distances) and rejects envelopes that
  // fail to dominate the density there.
  const double d0 = std::max((to - from) / 64.0, 1e-8);
  const double d1 = to - from;
  if (!(d1 > d0)) return;
  const double ratio = std::pow(d1 / d0, 1.0 / 23.0);
  double d = d0;
  for (int i = 0; i < 24; ++i, d *= ratio) {
    const double r = leftward ? env.anchor - d : env.anchor + d;
    const double p = psi(r);
    const double b = env.bound(d);
    if (p > b * (1.0 + 1e-9) + 1e-300) {
      throw std::invalid_argument(
          "tail envelope does not dominate the density at sampled tail points");
    }
  }
}

}  // namespace

Measure1D::Measure1D(Density1D d) : d_(std::move(d)) {
  if (!d_.psi) throw std::invalid_argument("density evaluator is empty");
  if (!(d_.lo < d_.hi)) {
    throw std::invalid_argument("density support requires lo < hi");
  }
  const bool lo_inf = std::isinf(d_.lo);
  const bool hi_inf = std::isinf(d_.hi);
  if (lo_inf && !d_.lower_tail) {
    throw std::invalid_argument("support unbounded below requires a lower tail envelope");
  }
  if (hi_inf && !d_.upper_tail) {
    throw std::invalid_argument("support unbounded above requires a upper tail envelope");
  }
  if (lo_inf && !d_.lower_tail->moment_controlled()) moment_ok_ = false;
  if (hi_inf && !d_.upper_tail->moment_controlled()) moment_ok_ = false;

  // Choose the finite window, integrate, and re-check the certified tail mass
  // against the actual mass; widen and repeat if the first guess was coarse.
  double mass_scale = d_.mass_hint > 0.0 ? d_.mass_hint : 1.0;
  for (int pass = 0; pass < 4; ++pass) {
    const double mass_target = 1e-13 * mass_scale;
    const double moment_target = 1e-13 * mass_scale;
    tlo_ = d_.lo;
    thi_ = d_.hi;
    if (lo_inf) {
      tlo_ = d_.lower_tail->anchor -
             horizon_distance(*d_.lower_tail, mass_target, moment_target);
    }
    if (hi_inf) {
      thi_ = d_.upper_tail->anchor +
             horizon_distance(*d_.upper_tail, mass_target, moment_target);
    }
    if (!(tlo_ < thi_)) {
      throw std::invalid_argument("tail envelopes leave an empty window");
    }

    // Panel decomposition by recursive bisection; per-panel budget scales with
    // panel width so singular edges get localised instead of poisoning the
    // whole interval.
    knots_.assign(1, tlo_);
    cum_.assign(1, 0.0);
    const double width = thi_ - tlo_;
    struct Seg { double a, b; int depth; double val, err; };
    auto shoot = [this](double a, double b, int depth) {
      QuadOptions one;
      one.max_panels = 1;
      one.rel_tol = 0.0;
      one.abs_tol = kInf;  // single shot; we judge the error ourselves
      QuadResult r = integrate(d_.psi, a, b, one);
      return Seg{a, b, depth, r.value, r.error};
    };
    // Seed the bisection with panels graded geometrically toward any
    // unbounded side: a single Gauss panel across a window spanning many
    // orders of magnitude samples only the far, empty region and returns a
    // deceptively small error estimate, so the mass near the anchor would
    // otherwise never be seen.
    std::vector<double> seeds{tlo_, thi_};
    auto grade_side = [&](double anchor, double edge) {
      const double sign = edge >= anchor ? 1.0 : -1.0;
      for (double dist = std::fabs(edge - anchor) / 4.0; dist > 1.0;
           dist /= 4.0) {
        const double r = anchor + sign * dist;
        if (r > tlo_ && r < thi_) seeds.push_back(r);
      }
    };
    if (lo_inf) grade_side(d_.lower_tail->anchor, tlo_);
    if (hi_inf) grade_side(d_.upper_tail->anchor, thi_);
    for (double bp : d_.breakpoints) {
      if (bp > tlo_ && bp < thi_) seeds.push_back(bp);
    }
    std::sort(seeds.begin(), seeds.end());
    std::vector<Seg> stack;
    for (std::size_t si = 0; si + 1 < seeds.size(); ++si) {
      if (seeds[si + 1] > seeds[si]) stack.push_back(shoot(seeds[si], seeds[si + 1], 0));
    }
    // Budget scale from the seeded panels themselves: one adaptive pass over
    // the whole window could be deceived by the same wide-window sampling the
    // seeding guards against, or poisoned into inf by an integrable edge
    // singularity, and either way the budget would be nonsense.
    double scale_est = 0.0;
    for (const Seg& s : stack) scale_est += std::fabs(s.val);
    const double tol_total = std::max(4e-12 * scale_est, 1e-15 * mass_scale);
    std::vector<std::pair<double, double>> leaves;  // (a, integral over [a,b])
    while (!stack.empty()) {
      Seg s = stack.back();
      stack.pop_back();
      // Width share of the global budget, plus a per-panel relative term so
      // near-anchor panels of very wide windows are not starved into
      // unbounded splitting: the sum over panels stays ~4e-12 of the mass.
      const double budget = tol_total * (s.b - s.a) / width +
                            4e-12 * std::fabs(s.val);
      const double mid = 0.5 * (s.a + s.b);
      // Integrable edge singularities (e.g. inverse-square-root endpoints)
      // converge slowly here, so allow deep splits and stop only when the
      // midpoint is no longer representable strictly inside the segment.
      if (s.err <= budget || s.depth >= 60 || mid <= s.a || mid >= s.b) {
        leaves.emplace_back(s.a, s.val);
        continue;
      }
      Seg l = shoot(s.a, mid, s.depth + 1);
      Seg r = shoot(mid, s.b, s.depth + 1);
      // If subdividing leaves the error estimate essentially unchanged while
      // the value estimate stays consistent, the estimate is dominated by
      // evaluation noise (e.g. cancellation near a singular edge), not by
      // quadrature truncation; splitting further would multiply panels
      // without gaining accuracy.  Both conditions matter: an unresolved
      // boundary layer also stagnates the error estimate for a while, but it
      // moves the value under subdivision, and a genuine integrable
      // singularity keeps shrinking the estimate (by ~1/sqrt(2) per split for
      // an inverse-square-root edge).
      if (l.err + r.err >= 0.9 * s.err &&
          std::fabs(s.val - (l.val + r.val)) <=
              1e-5 * (std::fabs(l.val) + std::fabs(r.val)) + tol_total) {
        leaves.emplace_back(s.a, s.val);
        continue;
      }
      stack.push_back(r);
      stack.push_back(l);
      if (leaves.size() + stack.size() > 40000) {
        throw std::runtime_error("density CDF cache failed to converge");
      }
    }
    std::sort(leaves.begin(), leaves.end());
    double acc = 0.0;
    for (std::size_t li = 0; li < leaves.size(); ++li) {
      acc += leaves[li].second;
      knots_.push_back(li + 1 < leaves.size() ? leaves[li + 1].first : thi_);
      cum_.push_back(acc);
    }
    mass_ = acc;
    if (!(mass_ > 0.0)) throw std::invalid_argument("density has zero mass");

    double tail_bound = 0.0;
    if (lo_inf) tail_bound += d_.lower_tail->mass_beyond(d_.lower_tail->anchor - tlo_);
    if (hi_inf) tail_bound += d_.upper_tail->mass_beyond(thi_ - d_.upper_tail->anchor);
    if (tail_bound <= 1e-12 * mass_) break;
    mass_scale = mass_;  // window was sized for the wrong scale; go again
  }

  if (lo_inf) check_domination(d_.psi, *d_.lower_tail, tlo_, d_.lower_tail->anchor, true);
  if (hi_inf) check_domination(d_.psi, *d_.upper_tail, d_.upper_tail->anchor, thi_, false);

  if (d_.mass_hint > 0.0 &&
      std::fabs(mass_ - d_.mass_hint) > 1e-9 * d_.mass_hint) {
    throw std::runtime_error("integrated mass disagrees with the declared total: got " +
                             std::to_string(mass_) + ", declared " +
                             std::to_string(d_.mass_hint));
  }
}

double Measure1D::psi(double r) const {
  if (r < d_.lo || r > d_.hi) return 0.0;
  return d_.psi(r);
}

double Measure1D::partial(double a, double b) const {
  QuadOptions opt;
  opt.rel_tol = 1e-11;
  opt.abs_tol = 1e-14 * (1.0 + mass_);
  opt.max_panels = 400;
  return integrate(d_.psi, a, b, opt).value;
}

double Measure1D::cdf(double r) const {
  if (r <= tlo_) return 0.0;
  if (r >= thi_) return mass_;
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), r);
  const std::size_t i = static_cast<std::size_t>(it - knots_.begin()) - 1;
  double v = cum_[i] + partial(knots_[i], r);
  // Clamp into the panel's range so the cached prefix keeps cdf monotone.
  return std::clamp(v, cum_[i], cum_[i + 1]);
}

double Measure1D::quantile(double t) const {
  if (!(t > 0.0 && t < mass_)) {
    throw std::domain_error("quantile: argument must lie in (0, total_mass)");
  }
  const auto it = std::lower_bound(cum_.begin(), cum_.end(), t);
  std::size_t j = static_cast<std::size_t>(it - cum_.begin());
  if (j == 0) j = 1;
  double lo = knots_[j - 1], hi = knots_[j];
  const double base = cum_[j - 1];
  // Bisection with a secant nudge; no smoothness assumptions on psi.
  const double xtol = 1e-12 * std::max({1.0, std::fabs(lo), std::fabs(hi)});
  double flo = base - t;               // cdf(lo) - t <= 0
  double fhi = cum_[j] - t;            // >= 0
  for (int iter = 0; iter < 200 && (hi - lo) > xtol; ++iter) {
    double mid;
    if (iter % 2 == 1 && fhi > flo) {
      mid = lo - flo * (hi - lo) / (fhi - flo);  // secant
      const double margin = 0.125 * (hi - lo);
      mid = std::clamp(mid, lo + margin, hi - margin);
    } else {
      mid = 0.5 * (lo + hi);
    }
    const double fm = base + partial(knots_[j - 1], mid) - t;
    if (fm < 0.0) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
    if (std::fabs(fm) <= 1e-15 * mass_) return mid;
  }
  return 0.5 * (lo + hi);
}

double Measure1D::interval_mass(double a, double b) const {
  if (std::isnan(a) || std::isnan(b)) {
    throw std::invalid_argument("interval_mass: NaN endpoint");
  }
  if (!(a < b)) return 0.0;
  return std::max(0.0, cdf(b) - cdf(a));
}

double Measure1D::truncated_barycenter(double a, double b) const {
  if (!(a < b)) throw std::domain_error("truncated_barycenter: empty interval");
  if ((a < tlo_ && std::isinf(d_.lo)) || (b > thi_ && std::isinf(d_.hi))) {
    if (!moment_ok_) {
      throw std::domain_error(
          "truncated_barycenter: tail envelope does not control the first moment");
    }
  }
  const double ca = std::max(a, tlo_);
  const double cb = std::min(b, thi_);
  const double m = interval_mass(a, b);
  if (m <= 1e-13 * mass_) {
    throw std::domain_error("truncated_barycenter: interval carries no mass");
  }
  return moment_over(ca, cb) / m;
}

double Measure1D::moment_over(double a, double b) const {
  // Integrate r*psi panel by panel: the cached panels are graded toward any
  // unbounded side, so each piece has moderate dynamic range, whereas a
  // single adaptive pass over a window spanning many orders of magnitude can
  // sample only empty territory and converge on a spurious zero.
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
    const double pa = std::max(a, knots_[i]);
    const double pb = std::min(b, knots_[i + 1]);
    if (!(pb > pa)) continue;
    QuadOptions opt;
    opt.abs_tol = 1e-14 * mass_;
    opt.rel_tol = 1e-11;
    acc += integrate([this](double r) { return r * d_.psi(r); }, pa, pb, opt).value;
  }
  return acc;
}

double Measure1D::quantile_integral(double t) const {
  if (!(t > 0.0 && t <= mass_ * (1.0 + 1e-12))) {
    throw std::domain_error("quantile_integral: argument must lie in (0, total_mass]");
  }
  if (std::isinf(d_.lo) && !d_.lower_tail->moment_controlled()) {
    throw std::domain_error(
        "quantile_integral: lower tail envelope does not control the first moment");
  }
  const double upper =
      (t >= mass_ * (1.0 - 1e-12)) ? thi_ : quantile(t);
  return moment_over(tlo_, upper);
}

double Measure1D::quantile_integral_direct(double t) const {
  if (!(t > 0.0 && t <= mass_ * (1.0 + 1e-12))) {
    throw std::domain_error(
        "quantile_integral_direct: argument must lie in (0, total_mass]");
  }
  const double cap = mass_ * (1.0 - 1e-15);
  const double eps = std::max(1e-15 * mass_, std::min(1e-12 * mass_, 1e-9 * t));
  auto q = [this, cap](double x) { return quantile(std::min(x, cap)); };
  QuadOptions opt;
  opt.rel_tol = 1e-9;
  opt.abs_tol = 1e-12 * (1.0 + std::fabs(tlo_) + std::fabs(thi_));
  opt.max_panels = 800;
  return integrate(q, eps, std::min(t, cap), opt).value;
}

std::vector<double> Measure1D::equal_mass_grid(int n) const {
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    xs.push_back(quantile(mass_ * (i + 0.5) / n));
  }
  return xs;
}

MeasureTable Measure1D::tabulate(int n) const {
  MeasureTable t;
  t.total_mass = mass_;
  for (int i = 0; i <= n; ++i) {
    const double r = tlo_ + (thi_ - tlo_) * i / n;
    t.r.push_back(r);
    t.cdf.push_back(cdf(r));
  }
  return t;
}

// --- structural tests -------------------------------------------------------

ShapeVerdict is_convex_measure(const Measure1D& mu, double tol, int grid_points) {
  const auto xs = mu.equal_mass_grid(grid_points);
  std::vector<double> hs;
  hs.reserve(xs.size());
  for (double x : xs) {
    const double p = mu.psi(x);
    hs.push_back(p > 0.0 ? 1.0 / p : 1e300);
  }
  return check_convex(xs, hs, tol);
}

HalfspaceProfile halfspace_concavity_profile(const Measure1D& mu, double a,
                                             int grid_points) {
  const double fa = mu.cdf(a);
  const double mass = mu.total_mass();
  const double avail = mass - fa;
  if (avail <= 1e-12 * mass) {
    throw std::domain_error("halfspace_concavity_profile: no mass beyond the threshold");
  }
  HalfspaceProfile out;
  out.r_lo = std::max(a, mu.window_lo());
  out.r_hi = mu.support_hi();
  out.f = [&mu, fa, mass](double r) {
    double u = mu.cdf(r) - fa;
    u = std::clamp(u, 1e-14 * mass, mass * (1.0 - 1e-14));
    return mu.quantile(u);
  };
  std::vector<double> rs, fs;
  rs.reserve(static_cast<std::size_t>(grid_points));
  fs.reserve(static_cast<std::size_t>(grid_points));
  for (int i = 0; i < grid_points; ++i) {
    const double u = fa + avail * (i + 0.5) / grid_points;
    rs.push_back(mu.quantile(u));
    fs.push_back(mu.quantile(u - fa));
  }
  out.concavity = check_concave(rs, fs, 1e-8);
  return out;
}

std::function<double(double)> iso_profile(const Measure1D& mu) {
  return [&mu](double t) { return mu.psi(mu.quantile(t)); };
}

// --- factories --------------------------------------------------------------

Density1D uniform_density(double a, double b) {
  if (!(a < b)) throw std::invalid_argument("uniform_density: requires a < b");
  Density1D d;
  d.psi = [a, b](double r) { return (r >= a && r <= b) ? 1.0 : 0.0; };
  d.lo = a;
  d.hi = b;
  d.mass_hint = b - a;
  d.name = "uniform";
  return d;
}

Density1D exponential_density(double rate, double origin) {
  if (!(rate > 0.0)) throw std::invalid_argument("exponential_density: rate must be positive");
  Density1D d;
  d.psi = [rate, origin](double r) {
    return r >= origin ? rate * std::exp(-rate * (r - origin)) : 0.0;
  };
  d.lo = origin;
  d.hi = kInf;
  d.upper_tail = TailEnvelope{TailEnvelope::Kind::exponential, rate, rate, origin};
  d.mass_hint = 1.0;
  d.name = "exponential";
  return d;
}

Density1D gaussian_density(double mean, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_density: sigma must be positive");
  Density1D d;
  d.psi = [mean, sigma](double r) {
    return normal_pdf((r - mean) / sigma) / sigma;
  };
  d.lo = -kInf;
  d.hi = kInf;
  const TailEnvelope env{TailEnvelope::Kind::gaussian,
                         normal_pdf(0.0) / sigma,
                         0.5 / (sigma * sigma), mean};
  d.lower_tail = env;
  d.upper_tail = env;
  d.mass_hint = 1.0;
  d.name = "gaussian";
  return d;
}

Density1D truncated_gaussian_density(double mean, double sigma, double cut_lo,
                                     double cut_hi) {
  if (!(sigma > 0.0)) throw std::invalid_argument("truncated_gaussian_density: sigma must be positive");
  if (!(cut_lo < cut_hi)) throw std::invalid_argument("truncated_gaussian_density: requires cut_lo < cut_hi");
  Density1D d;
  d.psi = [mean, sigma, cut_lo, cut_hi](double r) {
    if (r < cut_lo || r > cut_hi) return 0.0;
    return normal_pdf((r - mean) / sigma) / sigma;
  };
  d.lo = cut_lo;
  d.hi = cut_hi;
  const TailEnvelope env{TailEnvelope::Kind::gaussian,
                         normal_pdf(0.0) / sigma,
                         0.5 / (sigma * sigma), mean};
  if (std::isinf(cut_lo)) d.lower_tail = env;
  if (std::isinf(cut_hi)) d.upper_tail = env;
  d.mass_hint = normal_cdf((cut_hi - mean) / sigma) - normal_cdf((cut_lo - mean) / sigma);
  d.name = "truncated-gaussian";
  return d;
}

Density1D power_density(double base, double exponent, double a, double b) {
  if (!(a < b)) throw std::invalid_argument("power_density: requires a < b");
  if (base > a && base < b) {
    throw std::invalid_argument("power_density: base point must not lie inside the support");
  }
  const bool lo_inf = std::isinf(a);
  const bool hi_inf = std::isinf(b);
  if (lo_inf && hi_inf) {
    throw std::invalid_argument("power_density: doubly unbounded support is not integrable");
  }
  if ((lo_inf || hi_inf) && !(exponent < -1.0)) {
    throw std::invalid_argument("power_density: unbounded support requires exponent < -1");
  }
  if (!lo_inf && !hi_inf && (base == a || base == b) && !(exponent > -1.0)) {
    throw std::invalid_argument("power_density: exponent <= -1 is not integrable at the base point");
  }
  Density1D d;
  d.psi = [base, exponent, a, b](double r) {
    if (r < a || r > b) return 0.0;
    const double dist = std::fabs(r - base);
    if (dist == 0.0) return exponent > 0.0 ? 0.0 : (exponent == 0.0 ? 1.0 : kInf);
    return std::pow(dist, exponent);
  };
  d.lo = a;
  d.hi = b;
  if (lo_inf) d.lower_tail = TailEnvelope{TailEnvelope::Kind::polynomial, 1.0, -exponent, base};
  if (hi_inf) d.upper_tail = TailEnvelope{TailEnvelope::Kind::polynomial, 1.0, -exponent, base};
  const double d_near = std::min(std::fabs(a - base), std::fabs(b - base));
  const double d_far = std::max(std::fabs(a - base), std::fabs(b - base));
  if (exponent == -1.0) {
    d.mass_hint = std::log(d_far / d_near);
  } else {
    const double hi_pow = std::isinf(d_far) ? 0.0 : std::pow(d_far, exponent + 1.0);
    const double lo_pow = d_near == 0.0 ? 0.0 : std::pow(d_near, exponent + 1.0);
    d.mass_hint = (hi_pow - lo_pow) / (exponent + 1.0);
  }
  d.name = "power";
  return d;
}

Density1D table_density(const std::vector<double>& r,
                        const std::vector<double>& psi) {
  if (r.size() != psi.size() || r.size() < 2) {
    throw std::invalid_argument("table_density: need matching r/psi arrays with >= 2 rows");
  }
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i > 0 && !(r[i] > r[i - 1])) {
      throw std::invalid_argument("table_density: abscissae must be strictly increasing");
    }
    if (!(psi[i] > 0.0)) {
      throw std::invalid_argument("table_density: values must be positive (log interpolation)");
    }
  }
  const std::size_t n = r.size();
  std::vector<double> slope(n - 1);
  double mass = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double dx = r[i + 1] - r[i];
    slope[i] = std::log(psi[i + 1] / psi[i]) / dx;
    // Exact integral of the exponential segment.
    mass += (std::fabs(slope[i]) < 1e-14)
                ? psi[i] * dx
                : psi[i] * (std::exp(slope[i] * dx) - 1.0) / slope[i];
  }
  Density1D d;
  d.psi = [r, psi, slope](double x) {
    if (x < r.front() || x > r.back()) return 0.0;
    const auto it = std::upper_bound(r.begin(), r.end(), x);
    std::size_t i = static_cast<std::size_t>(it - r.begin());
    if (i == 0) i = 1;
    if (i >= r.size()) i = r.size() - 1;
    return psi[i - 1] * std::exp(slope[i - 1] * (x - r[i - 1]));
  };
  d.lo = r.front();
  d.hi = r.back();
  d.mass_hint = mass;
  d.breakpoints.assign(r.begin() + 1, r.end() - 1);
  d.name = "table";
  return d;
}

Density1D normalize_to_probability(const Density1D& d) {
  double mass = d.mass_hint;
  if (!(mass > 0.0)) mass = Measure1D(d).total_mass();
  Density1D out = d;
  const auto base = d.psi;
  out.psi = [base, mass](double r) { return base(r) / mass; };
  if (out.lower_tail) out.lower_tail->scale /= mass;
  if (out.upper_tail) out.upper_tail->scale /= mass;
  out.mass_hint = 1.0;
  out.name = d.name + "-normalized";
  return out;
}

}  // namespace grunbaum
