// One-dimensional Gaussian transport: maps, pushforwards, the pushforward
// identity, transport concavity, the transport cut bound, and the even-
// measure Gaussian fit.  Reference numbers computed independently with
// 40-digit arithmetic.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "grunbaum/density.hpp"
#include "grunbaum/special.hpp"
#include "grunbaum/transport.hpp"

using namespace grunbaum;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> sym_grid(double lo, double hi, int n) {
  std::vector<double> g;
  for (int i = 0; i <= n; ++i) g.push_back(lo + (hi - lo) * i / n);
  return g;
}
}  // namespace

TEST_CASE("linear maps") {
  TransportMap m = linear_map(2.0, 1.0);
  CHECK(m.forward(3.0) == doctest::Approx(7.0).epsilon(1e-15));
  CHECK(m.inverse(7.0) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(m.deriv(0.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(linear_map(0.0), std::invalid_argument);
  CHECK_THROWS_AS(linear_map(-1.0), std::invalid_argument);
}

TEST_CASE("the exponential-product map") {
  TransportMap m = lambert_map();
  CHECK(m.dom_lo == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(m.forward(1.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
  CHECK(m.inverse(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(m.deriv(1.0) == doctest::Approx(2.0 * std::exp(1.0)).epsilon(1e-12));
  for (double s : {-0.9, -0.5, 0.0, 0.7, 2.0, 4.0}) {
    CHECK(m.inverse(m.forward(s)) == doctest::Approx(s).epsilon(1e-12));
  }
  // Convex and increasing on its domain.
  double prev_f = m.forward(-1.0), prev_d = 0.0;
  for (int k = 0; k <= 40; ++k) {
    const double s = -1.0 + 5.0 * k / 40.0;
    const double f = m.forward(s), d = m.deriv(s);
    if (k > 0) {
      CHECK(f >= prev_f);
      CHECK(d >= prev_d - 1e-12);
    }
    prev_f = f;
    prev_d = d;
  }
}

TEST_CASE("tabulated maps interpolate monotonically") {
  std::vector<double> s, t;
  for (int k = 0; k <= 30; ++k) {
    const double x = -0.9 + 3.9 * k / 30.0;
    s.push_back(x);
    t.push_back(x * std::exp(x));
  }
  TransportMap m = table_map(s, t);
  // Exact at the nodes.
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(m.forward(s[i]) == doctest::Approx(t[i]).epsilon(1e-13));
    CHECK(m.inverse(t[i]) == doctest::Approx(s[i]).epsilon(1e-9));
  }
  // Monotone between the nodes.
  double prev = m.forward(s.front());
  for (int k = 1; k <= 200; ++k) {
    const double x = -0.9 + 3.9 * k / 200.0;
    const double f = m.forward(x);
    CHECK(f >= prev - 1e-12);
    prev = f;
  }
  // Close to the generating map mid-segment.
  CHECK(m.forward(1.234) ==
        doctest::Approx(1.234 * std::exp(1.234)).epsilon(1e-4));
  CHECK_THROWS_AS(table_map({0, 1}, {1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(table_map({0}, {1}), std::invalid_argument);
}

TEST_CASE("gaussian transport of a gaussian is linear") {
  Measure1D g1(gaussian_density());
  TransportMap t1 = transport_from_measure(g1);
  for (double s : {-2.0, -0.5, 0.0, 1.0, 2.5}) {
    CHECK(t1.forward(s) == doctest::Approx(s).epsilon(1e-9).scale(1.0));
  }
  Measure1D g2(gaussian_density(0.0, 2.0));
  TransportMap t2 = transport_from_measure(g2);
  for (double s : {-2.0, -0.5, 0.0, 1.0, 2.5}) {
    CHECK(t2.forward(s) == doctest::Approx(2.0 * s).epsilon(1e-8).scale(1.0));
  }
}

TEST_CASE("transport rejects super-probability mass") {
  Density1D d = uniform_density(0, 1);
  d.psi = [](double) { return 2.0; };
  d.mass_hint = 2.0;
  Measure1D mu(d);
  CHECK_THROWS_AS(transport_from_measure(mu), std::domain_error);
}

TEST_CASE("heavy-tailed target density: reference values") {
  Density1D d = lambert_density();
  CHECK(d.psi(-0.35) == doctest::Approx(2.22987964856263728).epsilon(1e-12));
  CHECK(d.psi(-0.2) == doctest::Approx(0.674781277193614261).epsilon(1e-12));
  CHECK(d.psi(0.0) ==
        doctest::Approx(0.39894228040143267794).epsilon(1e-12));
  CHECK(d.psi(0.5) == doctest::Approx(0.195163317490487867).epsilon(1e-12));
  CHECK(d.psi(1.0) == doctest::Approx(0.122927321391724157).epsilon(1e-12));
  CHECK(d.psi(std::exp(1.0)) ==
        doctest::Approx(0.0445080274579757409).epsilon(1e-12));
  CHECK(d.psi(10.0) == doctest::Approx(0.00552830540393338352).epsilon(1e-12));
  // Total mass: the upper Gaussian tail from -1 (edge singularity limits the
  // certified accuracy to ~1e-8).
  Measure1D mu(d);
  CHECK(mu.total_mass() ==
        doctest::Approx(0.841344746068542949).epsilon(1e-8));
}

TEST_CASE("pushforward identity holds for the closed-form pair") {
  Measure1D mu(lambert_density());
  const double res =
      monge_ampere_residual(mu, lambert_map(), sym_grid(-4, 4, 81));
  CHECK(res <= 1e-7);
  // Identity pair.
  Measure1D g(gaussian_density());
  CHECK(monge_ampere_residual(g, linear_map(1.0), sym_grid(-4, 4, 81)) <=
        1e-9);
}

TEST_CASE("pushforward densities from maps") {
  // Linear map with scale 2 pushes the gaussian to N(0, 4).
  Density1D p2 = measure_from_convex_map(linear_map(2.0));
  for (double t : {-3.0, -1.0, 0.0, 0.5, 2.0}) {
    CHECK(p2.psi(t) ==
          doctest::Approx(normal_pdf(t / 2.0) / 2.0).epsilon(1e-9));
  }
  Measure1D m2(p2);
  CHECK(m2.total_mass() == doctest::Approx(1.0).epsilon(1e-10));

  // The exponential-product map reproduces the closed-form density.
  Density1D pl = measure_from_convex_map(lambert_map());
  Density1D cl = lambert_density();
  for (double t : {0.05, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    CHECK(pl.psi(t) == doctest::Approx(cl.psi(t)).epsilon(1e-9));
  }
  CHECK(pl.lo == doctest::Approx(-std::exp(-1.0)).epsilon(1e-12));

  // A decreasing map is rejected.
  TransportMap bad = linear_map(1.0);
  bad.forward = [](double s) { return -s; };
  bad.inverse = [](double t) { return -t; };
  CHECK_THROWS_AS(measure_from_convex_map(bad), std::invalid_argument);
}

TEST_CASE("round trip: map -> density -> recovered map") {
  TransportMap orig = lambert_map();
  Measure1D mu(measure_from_convex_map(orig));
  TransportMap back = transport_from_measure(mu);
  for (double s : sym_grid(-0.9, 4.0, 50)) {
    const double t0 = orig.forward(s);
    const double t1 = back.forward(s);
    CHECK(std::fabs(t1 - t0) <= 1e-6 * std::max(1.0, std::fabs(t0)));
  }
  // Same round trip for the dilation.
  Measure1D m2(measure_from_convex_map(linear_map(2.0)));
  TransportMap b2 = transport_from_measure(m2);
  for (double s : sym_grid(-3.0, 3.0, 30)) {
    CHECK(std::fabs(b2.forward(s) - 2.0 * s) <=
          1e-6 * std::max(1.0, 2.0 * std::fabs(s)));
  }
}

TEST_CASE("transport concavity verdicts") {
  CHECK(is_gamma_transport_concave(Measure1D(gaussian_density())).concave);
  CHECK(is_gamma_transport_concave(Measure1D(gaussian_density(0.0, 2.0)))
            .concave);
  CHECK(is_gamma_transport_concave(Measure1D(exponential_density(1.0))).concave);
  TransportConcavity lam =
      is_gamma_transport_concave(Measure1D(lambert_density()));
  CHECK(lam.concave);
  CHECK(lam.mass == doctest::Approx(0.841344746068542949).epsilon(1e-7));
  // The even uniform is not transport concave (S-shaped quantile coupling).
  CHECK_FALSE(is_gamma_transport_concave(
                  Measure1D(normalize_to_probability(uniform_density(-1, 1))))
                  .concave);
}

TEST_CASE("transport cut bound") {
  // Gaussian, full window: the equality case.
  Measure1D g(gaussian_density());
  CutReport r = transport_grunbaum_verify(g, -kInf, kInf);
  CHECK(std::fabs(r.gap) <= 1e-8);
  CHECK(r.equality);
  CHECK(r.measure_class == "transport");

  // Interval grid over the transport-concave test set: never below the bound.
  std::vector<Measure1D> set;
  set.emplace_back(gaussian_density());
  set.emplace_back(measure_from_convex_map(linear_map(2.0)));
  set.emplace_back(exponential_density(1.0));
  set.emplace_back(lambert_density());
  const double qs[] = {0.1, 0.3, 0.6, 0.9};
  for (const Measure1D& mu : set) {
    for (double qa : qs) {
      for (double qb : qs) {
        if (qb <= qa) continue;
        const double a = mu.quantile(qa * mu.total_mass());
        const double b = mu.quantile(qb * mu.total_mass());
        CutReport rep = transport_grunbaum_verify(mu, a, b);
        CHECK(rep.gap >= -1e-7);
      }
    }
  }

  // Non-concave inputs are rejected.
  Measure1D uni(normalize_to_probability(uniform_density(-1, 1)));
  CHECK_THROWS_AS(transport_grunbaum_verify(uni, -1.0, 1.0),
                  std::invalid_argument);
  // Empty interval is rejected.
  CHECK_THROWS_AS(transport_grunbaum_verify(g, 1.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("even-measure gaussian fit") {
  GaussianFit f1 = even_transport_gaussian_test(Measure1D(gaussian_density()));
  CHECK(f1.accepted);
  CHECK(f1.sigma == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(f1.max_residual <= 1e-6);

  GaussianFit f2 =
      even_transport_gaussian_test(Measure1D(gaussian_density(0.0, 2.0)));
  CHECK(f2.accepted);
  CHECK(f2.sigma == doctest::Approx(2.0).epsilon(1e-6));

  GaussianFit fu = even_transport_gaussian_test(
      Measure1D(normalize_to_probability(uniform_density(-1, 1))));
  CHECK_FALSE(fu.accepted);
  CHECK(fu.max_residual > 1e-6);

  // Uncentred or uneven inputs are rejected outright.
  CHECK_THROWS_AS(
      even_transport_gaussian_test(Measure1D(exponential_density(1.0))),
      std::invalid_argument);
  CHECK_THROWS_AS(
      even_transport_gaussian_test(Measure1D(gaussian_density(0.5, 1.0))),
      std::invalid_argument);
}
