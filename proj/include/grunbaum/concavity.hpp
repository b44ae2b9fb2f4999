#pragma once

// Shared shape tests: discrete concavity/convexity on a point set, and an
// affinity score used by equality-case verdicts.
//
// A function is accepted as concave when, for every sampled triple
// x0 < x1 < x2, the value at x1 sits above the chord through (x0,f0),(x2,f2)
// up to tol * scale, where scale is the local magnitude max(|f0|,|f1|,|f2|).
// The worst triple is always reported so a failed verdict names a concrete
// counterexample certificate.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "grunbaum/rng.hpp"

namespace grunbaum {

struct TripleCertificate {
  double x0 = 0, x1 = 0, x2 = 0;
  double f0 = 0, f1 = 0, f2 = 0;
  double margin = 0;  // (f1 - chord)/scale; negative margin violates concavity
};

struct ShapeVerdict {
  bool passed = true;
  TripleCertificate worst;   // triple with the smallest margin
  double tolerance = 0;
  std::size_t triples_checked = 0;
};

namespace detail {

inline double triple_margin(double x0, double f0, double x1, double f1,
                            double x2, double f2) {
  const double lambda = (x1 - x0) / (x2 - x0);
  const double chord = (1.0 - lambda) * f0 + lambda * f2;
  const double scale =
      std::max({std::fabs(f0), std::fabs(f1), std::fabs(f2), 1e-300});
  return (f1 - chord) / scale;
}

}  // namespace detail

/// Concavity of f sampled at strictly increasing xs.  Checks all consecutive
/// triples plus `random_triples` arbitrary ones (seeded), so a violation
/// hiding between distant points is caught too.
inline ShapeVerdict check_concave(const std::vector<double>& xs,
                                  const std::vector<double>& fs,
                                  double tol = 1e-8,
                                  int random_triples = 64,
                                  std::uint64_t seed = 0x5eedc0de) {
  ShapeVerdict v;
  v.tolerance = tol;
  const std::size_t n = xs.size();
  if (n < 3) return v;
  double worst = 1e300;
  auto consider = [&](std::size_t i, std::size_t j, std::size_t k) {
    if (!(xs[i] < xs[j] && xs[j] < xs[k])) return;  // degenerate spacing
    const double m =
        detail::triple_margin(xs[i], fs[i], xs[j], fs[j], xs[k], fs[k]);
    ++v.triples_checked;
    if (m < worst) {
      worst = m;
      v.worst = {xs[i], xs[j], xs[k], fs[i], fs[j], fs[k], m};
    }
  };
  for (std::size_t i = 0; i + 2 < n; ++i) consider(i, i + 1, i + 2);
  RngStream rng(seed);
  for (int r = 0; r < random_triples; ++r) {
    std::size_t a = static_cast<std::size_t>(rng.uniform() * n);
    std::size_t b = static_cast<std::size_t>(rng.uniform() * n);
    std::size_t c = static_cast<std::size_t>(rng.uniform() * n);
    std::size_t i = std::min({a, b, c}), k = std::max({a, b, c});
    std::size_t j = a + b + c - i - k;
    if (i < j && j < k) consider(i, j, k);
  }
  v.passed = worst >= -tol;
  return v;
}

/// Convexity = concavity of -f; the certificate is reported in terms of f.
inline ShapeVerdict check_convex(const std::vector<double>& xs,
                                 const std::vector<double>& fs,
                                 double tol = 1e-8,
                                 int random_triples = 64,
                                 std::uint64_t seed = 0x5eedc0de) {
  std::vector<double> neg(fs.size());
  for (std::size_t i = 0; i < fs.size(); ++i) neg[i] = -fs[i];
  ShapeVerdict v = check_concave(xs, neg, tol, random_triples, seed);
  v.worst.f0 = -v.worst.f0;
  v.worst.f1 = -v.worst.f1;
  v.worst.f2 = -v.worst.f2;
  v.worst.margin = -v.worst.margin;  // sign convention: chord - f1 for convex
  return v;
}

/// How far the sampled values deviate from the straight line through the two
/// endpoint samples, relative to the sampled value range.  0 = exactly affine.
inline double affinity_score(const std::vector<double>& xs,
                             const std::vector<double>& fs) {
  const std::size_t n = xs.size();
  if (n < 3) return 0.0;
  const double x0 = xs.front(), x1 = xs.back();
  const double f0 = fs.front(), f1 = fs.back();
  double lo = fs[0], hi = fs[0];
  for (double f : fs) {
    lo = std::min(lo, f);
    hi = std::max(hi, f);
  }
  const double range = std::max(hi - lo, 1e-300);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lam = (xs[i] - x0) / (x1 - x0);
    const double line = (1.0 - lam) * f0 + lam * f1;
    worst = std::max(worst, std::fabs(fs[i] - line) / range);
  }
  return worst;
}

}  // namespace grunbaum
