// One-dimensional measures: factories, CDF/quantile machinery, tail
// envelopes, quantile integrals (two routes), and structural probes.
// Reference numbers computed independently with 40-digit arithmetic.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "grunbaum/density.hpp"
#include "grunbaum/special.hpp"

using namespace grunbaum;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("uniform measure") {
  Measure1D mu(uniform_density(0, 1));
  CHECK(mu.total_mass() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(mu.cdf(0.25) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(mu.quantile(0.25) == doctest::Approx(0.25).epsilon(1e-11));
  CHECK(mu.truncated_barycenter(0, 1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(mu.interval_mass(0.2, 0.7) == doctest::Approx(0.5).epsilon(1e-12));
  const auto grid = mu.equal_mass_grid(4);
  REQUIRE(grid.size() == 4);
  CHECK(grid[0] == doctest::Approx(0.125).epsilon(1e-10));
  CHECK(grid[3] == doctest::Approx(0.875).epsilon(1e-10));
}

TEST_CASE("exponential measure") {
  Measure1D mu(exponential_density(1.0));
  CHECK(mu.total_mass() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(mu.cdf(1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-10));
  CHECK(mu.quantile(0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-9));
  CHECK(mu.truncated_barycenter(0, kInf) == doctest::Approx(1.0).epsilon(1e-9));
  // Shifted origin and different rate.
  Measure1D nu(exponential_density(2.0, -1.0));
  CHECK(nu.total_mass() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(nu.truncated_barycenter(-1, kInf) ==
        doctest::Approx(-0.5).epsilon(1e-9));
}

TEST_CASE("gaussian measure matches the special functions") {
  Measure1D mu(gaussian_density());
  CHECK(mu.total_mass() == doctest::Approx(1.0).epsilon(1e-11));
  for (int i = -30; i <= 30; ++i) {
    const double x = 0.2 * i;
    CHECK(mu.cdf(x) == doctest::Approx(normal_cdf(x)).epsilon(1e-10));
  }
  for (int i = 1; i < 20; ++i) {
    const double t = i / 20.0;
    CHECK(mu.quantile(t) ==
          doctest::Approx(normal_quantile(t)).epsilon(1e-8));
  }
  Measure1D wide(gaussian_density(0.0, 2.0));
  CHECK(wide.cdf(1.0) == doctest::Approx(normal_cdf(0.5)).epsilon(1e-10));
  CHECK(wide.truncated_barycenter(-kInf, kInf) ==
        doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("truncated gaussian") {
  // Base N(1, 3^2) restricted to [-2, 4]: one sigma both sides.
  Measure1D raw(truncated_gaussian_density(1.0, 3.0, -2.0, 4.0));
  CHECK(raw.total_mass() ==
        doctest::Approx(0.682689492137085897).epsilon(1e-10));
  Measure1D mu(normalize_to_probability(truncated_gaussian_density(1.0, 3.0, -2.0, 4.0)));
  CHECK(mu.total_mass() == doctest::Approx(1.0).epsilon(1e-11));
  // Symmetric truncation about the mean: barycenter is the mean exactly.
  CHECK(mu.truncated_barycenter(-2, 4) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(mu.cdf(2.0) ==
        doctest::Approx(0.691241642535813089).epsilon(1e-9));
  CHECK(mu.quantile(0.25) ==
        doctest::Approx(-0.325311640059743863).epsilon(1e-8));
}

TEST_CASE("power densities") {
  // r^2 on [0,1].
  Measure1D sq(power_density(0.0, 2.0, 0.0, 1.0));
  CHECK(sq.total_mass() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  // r^{-3} on [1, inf).
  Measure1D heavy(power_density(0.0, -3.0, 1.0, kInf));
  CHECK(heavy.total_mass() == doctest::Approx(0.5).epsilon(1e-10));
  // Integrable edge singularity r^{-1/2} on (0, 1].
  Measure1D edge(power_density(0.0, -0.5, 0.0, 1.0));
  CHECK(edge.total_mass() == doctest::Approx(2.0).epsilon(1e-6));

  // Validation: base point inside the open support.
  CHECK_THROWS_AS(power_density(0.5, 2.0, 0.0, 1.0), std::invalid_argument);
  // Unbounded side needs an integrable power.
  CHECK_THROWS_AS(power_density(0.0, -1.0, 1.0, kInf), std::invalid_argument);
  // Touching endpoint needs exponent > -1.
  CHECK_THROWS_AS(power_density(0.0, -1.5, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("table density is piecewise exponential") {
  // Log-linear through (0,1), (1,e) is exactly e^r on [0,1].
  Measure1D mu(table_density({0.0, 1.0}, {1.0, std::exp(1.0)}));
  CHECK(mu.total_mass() ==
        doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-11));
  CHECK(mu.psi(0.5) == doctest::Approx(std::exp(0.5)).epsilon(1e-12));
  CHECK_THROWS_AS(table_density({0.0, 1.0}, {1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(table_density({1.0, 0.0}, {1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("construction guards") {
  // A wrong declared total is rejected.
  Density1D d = uniform_density(0, 1);
  d.mass_hint = 1.1;
  CHECK_THROWS_AS(Measure1D{d}, std::runtime_error);

  // Infinite support requires an envelope...
  Density1D no_env;
  no_env.psi = [](double r) { return std::exp(-r); };
  no_env.lo = 0.0;
  no_env.hi = kInf;
  CHECK_THROWS_AS(Measure1D{no_env}, std::invalid_argument);

  // ...and the envelope must actually dominate.
  Density1D bad_env = no_env;
  bad_env.upper_tail =
      TailEnvelope{TailEnvelope::Kind::exponential, 0.1, 1.0, 0.0};
  CHECK_THROWS_AS(Measure1D{bad_env}, std::invalid_argument);

  CHECK_THROWS_AS(uniform_density(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("quantile integral routes agree") {
  Measure1D exp1(exponential_density(1.0));
  Measure1D gauss(gaussian_density());
  for (double t : {0.05, 0.2, 0.5, 0.8, 0.95}) {
    CHECK(std::fabs(exp1.quantile_integral(t) -
                    exp1.quantile_integral_direct(t)) <= 1e-7);
    CHECK(std::fabs(gauss.quantile_integral(t) -
                    gauss.quantile_integral_direct(t)) <= 1e-7);
  }
  // Frozen values for the Gaussian: int_0^t Q(q) dq.
  CHECK(gauss.quantile_integral(0.5) ==
        doctest::Approx(-0.398942280401432678).epsilon(1e-9));
  CHECK(gauss.quantile_integral(0.1) ==
        doctest::Approx(-0.175498331932486807).epsilon(1e-9));
  CHECK(gauss.quantile_integral(0.9) ==
        doctest::Approx(-0.175498331932486807).epsilon(1e-9));
  // Exponential: int_0^t Q = t + (1-t) ln(1-t).
  const double t = 0.3;
  CHECK(exp1.quantile_integral(t) ==
        doctest::Approx(t + (1 - t) * std::log1p(-t)).epsilon(1e-9));
}

TEST_CASE("convex measure probe") {
  CHECK(is_convex_measure(Measure1D(gaussian_density())).passed);
  CHECK(is_convex_measure(Measure1D(exponential_density(1.0))).passed);
  CHECK(is_convex_measure(Measure1D(uniform_density(0, 1))).passed);
  // A bimodal profile: 1/psi has an interior peak, so it is not convex.
  Measure1D bimodal(table_density({0.0, 0.5, 1.0}, {10.0, 1.0, 10.0}));
  CHECK_FALSE(is_convex_measure(bimodal).passed);
}

TEST_CASE("halfspace concavity profile for the gaussian") {
  Measure1D mu(gaussian_density());
  HalfspaceProfile hp = halfspace_concavity_profile(mu, -2.0);
  CHECK(hp.concavity.passed);
  // The profile fixes Q(F(r) - F(a)); spot check one value.
  const double r = 0.5;
  const double expect = normal_quantile(normal_cdf(r) - normal_cdf(-2.0));
  CHECK(hp.f(r) == doctest::Approx(expect).epsilon(1e-8));
}

TEST_CASE("tabulate snapshots are monotone") {
  Measure1D mu(exponential_density(0.7));
  MeasureTable tab = mu.tabulate(33);
  REQUIRE(tab.r.size() == tab.cdf.size());
  CHECK(tab.total_mass == doctest::Approx(1.0).epsilon(1e-9));
  for (std::size_t i = 1; i < tab.r.size(); ++i) {
    CHECK(tab.r[i] > tab.r[i - 1]);
    CHECK(tab.cdf[i] >= tab.cdf[i - 1]);
  }
}
