// grunbaum-lab: barycenter cut bounds for uniform, Gaussian, s-concave, and
// Gaussian-transport measures — bound evaluation, verification runs, extremal
// constructions, no-bound counterexample sweeps, direction optimisation, and
// transport-map checks.  Machine output (CSV/JSON) goes to stdout or --out;
// diagnostics go to stderr.  Identical invocations produce byte-identical
// output.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "grunbaum/body.hpp"
#include "grunbaum/density.hpp"
#include "grunbaum/fconcave.hpp"
#include "grunbaum/json_io.hpp"
#include "grunbaum/report.hpp"
#include "grunbaum/sconcave.hpp"
#include "grunbaum/special.hpp"
#include "grunbaum/transport.hpp"

namespace {

using namespace grunbaum;

constexpr double kInvE = 0.3678794411714423215955238;  // 1/e

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;  // gap below -tol: numeric/model bug suspected
constexpr int kExitUsage = 2;

struct GlobalOpts {
  std::uint64_t seed = 20240817;
  std::uint64_t mc_samples = 10'000'000;
  double tol = 1e-9;
  std::string out_path;
  bool force = false;

  McOptions mc() const { return {seed, mc_samples}; }
};

// Writes to --out when given, stdout otherwise.
class OutputSink {
 public:
  explicit OutputSink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::invalid_argument("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

MeasureClass parse_body_class(const std::string& name) {
  if (name == "lebesgue") return MeasureClass::lebesgue;
  if (name == "gaussian") return MeasureClass::gaussian;
  if (name == "sconcave") return MeasureClass::sconcave;
  throw std::invalid_argument("unknown body measure class \"" + name + "\"");
}

VecN parse_direction(const std::string& text) {
  VecN u;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    size_t pos = 0;
    double v = std::stod(part, &pos);
    if (pos != part.size())
      throw std::invalid_argument("bad direction component \"" + part + "\"");
    u.push_back(v);
  }
  if (u.size() < 2 || u.size() > 3)
    throw std::invalid_argument("direction needs 2 or 3 comma-separated components");
  return u;
}

// Shared CSV emission + violation scan for CutReport batches.
int emit_reports(std::vector<CutReport> rows, const GlobalOpts& g) {
  // The configured seed is recorded in every row, including rows whose method
  // is deterministic, so reruns can be reproduced from the output alone.
  for (auto& r : rows) r.seed = g.seed;
  OutputSink sink(g.out_path);
  write_cut_reports_csv(sink.stream(), rows);
  int worst = kExitOk;
  for (const auto& r : rows) {
    if (r.gap < -g.tol) {
      std::cerr << "violation: body " << r.body_id << " gap " << format_g12(r.gap)
                << " below -" << format_g12(g.tol)
                << " — numeric/model bug suspected\n";
      worst = kExitViolation;
    }
  }
  return worst;
}

CutReport report_from_cdf_check(const CdfCutCheck& chk, const std::string& id,
                                const std::string& cls) {
  CutReport rep;
  rep.body_id = id;
  rep.measure_class = cls;
  rep.dim = 1;
  rep.direction = {1.0};
  rep.cut_offset = chk.barycenter;
  rep.total = chk.total;
  rep.measured = chk.measured;
  rep.bound = chk.bound;
  rep.gap = chk.gap;
  rep.equality = chk.equality;
  rep.method = "cdf-quadrature";
  rep.affinity = chk.affinity;
  return rep;
}

// --- bound -------------------------------------------------------------------

struct BoundArgs {
  std::string cls;
  int n = 2;
  double t = 0.5;
  double s = 0.5;
  double p = 1.0;
  bool has_p = false;
};

int run_bound(const BoundArgs& a, const GlobalOpts& g) {
  double value = 0;
  if (a.cls == "lebesgue") {
    if (a.n < 1) throw std::invalid_argument("--n must be a positive dimension");
    value = a.has_p ? c_np_bound(a.n, a.p) : classic_grunbaum_bound(a.n);
  } else if (a.cls == "gaussian") {
    if (!(a.t > 0.0 && a.t <= 1.0))
      throw std::invalid_argument("--t must lie in (0, 1]");
    value = ehrhard_grunbaum_bound(a.t);
  } else if (a.cls == "sconcave") {
    value = s_grunbaum_bound(a.s);
  } else {
    throw std::invalid_argument("unknown bound class \"" + a.cls + "\"");
  }
  OutputSink sink(g.out_path);
  sink.stream() << format_g12(value) << "\n";
  return kExitOk;
}

// --- verify ------------------------------------------------------------------

struct VerifyArgs {
  std::string input;
  std::string cls = "lebesgue";
  double s = 0.5;
  std::string direction;
  int directions = 64;
  double a = -std::numeric_limits<double>::infinity();
  double b = std::numeric_limits<double>::infinity();
};

int run_verify(const VerifyArgs& a, const GlobalOpts& g) {
  std::vector<CutReport> rows;
  if (a.cls == "cdf" || a.cls == "transport") {
    Density1D d = density_from_file(a.input);
    Measure1D mu(d);
    double lo = std::isinf(a.a) ? mu.support_lo() : a.a;
    double hi = std::isinf(a.b) ? mu.support_hi() : a.b;
    if (a.cls == "cdf") {
      rows.push_back(report_from_cdf_check(verify_cdf_grunbaum(mu, lo, hi),
                                           d.name, "cdf"));
    } else {
      rows.push_back(transport_grunbaum_verify(mu, lo, hi));
    }
    return emit_reports(rows, g);
  }
  WeightedBody w;
  w.body = body_from_file(a.input);
  w.cls = parse_body_class(a.cls);
  w.s = a.s;
  w.id = w.body.id.empty() ? "body" : w.body.id;
  if (!a.direction.empty()) {
    rows.push_back(grunbaum_verify(w, parse_direction(a.direction), g.mc()));
  } else {
    rows = direction_sweep(w, a.directions, g.mc());
  }
  return emit_reports(rows, g);
}

// --- extremal ----------------------------------------------------------------

struct ExtremalArgs {
  double s = 0.5;
  int n = 2;
  double r1 = 1.0;
  double a = 1.0;
  double face_lo = -0.5;
  double face_hi = 0.5;
};

std::string json_num(double v) { return format_g12(v); }

int run_extremal(const ExtremalArgs& a, const GlobalOpts& g) {
  if (!(a.s > -1.0)) {
    std::cerr << "s <= -1: no sharp barycenter-cut bound exists for this class "
                 "(only the trivial bound; see the counterexample subcommand)\n";
    return kExitUsage;
  }
  std::ostringstream doc;
  CutReport rep;
  if (a.n == 1) {
    Extremal1D ex = extremal_density_1d(a.s, a.r1, a.a);
    Measure1D mu(ex.density);
    CdfCutCheck chk = verify_cdf_grunbaum(mu, mu.support_lo(), mu.support_hi());
    rep = report_from_cdf_check(chk, ex.density.name, "sconcave");
    const char* regime = ex.regime == ExtremalRegime::cone       ? "cone"
                         : ex.regime == ExtremalRegime::cylinder ? "cylinder"
                                                                 : "expanding";
    doc << "{\n  \"body\": {\"kind\": \"density\", \"regime\": \"" << regime
        << "\", \"s\": " << json_num(a.s) << ", \"r1\": " << json_num(a.r1)
        << ", \"a\": " << json_num(a.a) << "},\n";
  } else {
    ExtremalBodySpec spec;
    spec.s = a.s;
    spec.n = a.n;
    spec.r1 = a.r1;
    spec.a = a.a;
    spec.face_lo = a.face_lo;
    spec.face_hi = a.face_hi;
    WeightedBody wb = extremal_body_nd(spec);
    rep = grunbaum_verify(wb, wb.structure->u, g.mc());
    const char* regime =
        wb.structure->regime == ExtremalRegime::cone       ? "cone"
        : wb.structure->regime == ExtremalRegime::cylinder ? "cylinder"
                                                           : "expanding";
    doc << "{\n  \"body\": {\"kind\": \"polytope-fiber\", \"id\": \"" << wb.id
        << "\", \"regime\": \"" << regime << "\", \"dim\": " << a.n
        << ", \"s\": " << json_num(a.s) << ",\n    \"vertices\": [";
    for (std::size_t i = 0; i < wb.body.vertices.size(); ++i) {
      if (i) doc << ", ";
      doc << "[";
      for (std::size_t j = 0; j < wb.body.vertices[i].size(); ++j) {
        if (j) doc << ", ";
        doc << json_num(wb.body.vertices[i][j]);
      }
      doc << "]";
    }
    doc << "],\n    \"rays\": [";
    for (std::size_t i = 0; i < wb.body.rays.size(); ++i) {
      if (i) doc << ", ";
      doc << "[";
      for (std::size_t j = 0; j < wb.body.rays[i].size(); ++j) {
        if (j) doc << ", ";
        doc << json_num(wb.body.rays[i][j]);
      }
      doc << "]";
    }
    doc << "]},\n";
  }
  doc << "  \"report\": {\"body_id\": \"" << rep.body_id << "\", \"class\": \""
      << rep.measure_class << "\", \"measured\": " << json_num(rep.measured)
      << ", \"bound\": " << json_num(rep.bound)
      << ", \"gap\": " << json_num(rep.gap)
      << ", \"equality\": " << (rep.equality ? "true" : "false")
      << ", \"method\": \"" << rep.method << "\"}\n}\n";
  OutputSink sink(g.out_path);
  sink.stream() << doc.str();
  return rep.gap < -g.tol ? kExitViolation : kExitOk;
}

// --- counterexample ----------------------------------------------------------

struct CounterArgs {
  double p = -0.5;
  std::vector<double> ks;
};

int run_counterexample(const CounterArgs& a, const GlobalOpts& g) {
  if (!(a.p > -1.0 && a.p <= -0.5))
    throw std::invalid_argument("--p must lie in (-1, -1/2]");
  std::vector<double> ks = a.ks;
  if (ks.empty()) ks = {1e1, 1e2, 1e3, 1e4, 1e5, 1e6};
  NoBoundReport rep = verify_no_bound(a.p, ks);
  OutputSink sink(g.out_path);
  sink.stream() << "k,g,left_mass,closed_form_delta\n";
  double worst_delta = 0;
  for (const auto& row : rep.rows) {
    worst_delta = std::max(worst_delta, row.closed_form_delta);
    sink.stream() << format_g12(row.k) << "," << format_g12(row.barycenter)
                  << "," << format_g12(row.left_mass) << ","
                  << format_g12(row.closed_form_delta) << "\n";
  }
  if (!rep.strictly_decreasing) {
    std::cerr << "left-mass sequence is not strictly decreasing — "
                 "numeric/model bug suspected\n";
    return kExitViolation;
  }
  if (worst_delta > 1e-8) {
    std::cerr << "quadrature disagrees with the closed form by "
              << format_g12(worst_delta) << " — numeric/model bug suspected\n";
    return kExitViolation;
  }
  return kExitOk;
}

// --- sweep -------------------------------------------------------------------

struct SweepArgs {
  double start = 0.01;
  double stop = 1.0;
  double step = 0.01;
  std::vector<double> s_list{0.5, 0.0, -0.5};
};

int run_sweep(const SweepArgs& a, const GlobalOpts& g) {
  if (!(a.step > 0) || !(a.stop >= a.start))
    throw std::invalid_argument("bad sweep grid");
  OutputSink sink(g.out_path);
  sink.stream() << "t,gaussian_bound,t_over_e";
  for (double s : a.s_list) sink.stream() << ",s_bound(" << format_g12(s) << ")";
  sink.stream() << "\n";
  bool ok = true;
  const int steps = static_cast<int>((a.stop - a.start) / a.step + 1.5);
  for (int i = 0; i < steps; ++i) {
    const double t = a.start + i * a.step;
    if (t > a.stop + 1e-12) break;
    const double gb = ehrhard_grunbaum_bound(t);
    const double te = t * kInvE;
    if (gb < te - g.tol) ok = false;
    sink.stream() << format_g12(t) << "," << format_g12(gb) << ","
                  << format_g12(te);
    for (double s : a.s_list) sink.stream() << "," << format_g12(s_grunbaum_bound(s));
    sink.stream() << "\n";
  }
  if (!ok) {
    std::cerr << "Gaussian bound dipped below t/e — numeric/model bug suspected\n";
    return kExitViolation;
  }
  return kExitOk;
}

// --- optimize-direction ------------------------------------------------------

struct OptArgs {
  std::string input;
  std::string cls = "lebesgue";
  double s = 0.5;
  int starts = 32;
  std::uint64_t search_seed = 7;
};

int run_optimize(const OptArgs& a, const GlobalOpts& g) {
  WeightedBody w;
  w.body = body_from_file(a.input);
  w.cls = parse_body_class(a.cls);
  w.s = a.s;
  w.id = w.body.id.empty() ? "body" : w.body.id;
  DirectionSearch ds = min_cut_direction(w, a.starts, a.search_seed, g.mc());
  std::vector<CutReport> rows;
  int k = 0;
  for (const auto& [dir, value] : ds.starts) {
    CutReport r;
    r.body_id = w.id + "-start-" + std::to_string(k++);
    r.measure_class = measure_class_name(w.cls);
    r.dim = w.body.dim;
    r.direction = dir;
    r.total = ds.best_report.total;
    r.measured = value;
    r.bound = ds.best_report.bound;
    r.gap = value - ds.best_report.bound;
    r.method = "nm-start";
    rows.push_back(r);
  }
  rows.push_back(ds.best_report);
  std::cerr << "best direction:";
  for (double c : ds.best_direction) std::cerr << " " << format_g12(c);
  std::cerr << "\nvalue: " << format_g12(ds.best_value)
            << "\ngap: " << format_g12(ds.best_report.gap) << " ("
            << ds.evaluations << " objective evaluations)\n";
  return emit_reports(rows, g);
}

// --- transport ---------------------------------------------------------------

struct TransportArgs {
  std::string check;
  std::string input;
  std::string map;
  double a = -std::numeric_limits<double>::infinity();
  double b = std::numeric_limits<double>::infinity();
};

TransportMap load_map(const TransportArgs& a) {
  if (a.map.empty()) return lambert_map();
  return transport_from_file(a.map);
}

Density1D load_density_or_lambert(const TransportArgs& a) {
  if (a.input.empty()) return lambert_density();
  return density_from_file(a.input);
}

int run_transport(const TransportArgs& a, const GlobalOpts& g) {
  OutputSink sink(g.out_path);
  if (a.check == "roundtrip") {
    TransportMap map = load_map(a);
    Density1D push = measure_from_convex_map(map);
    Measure1D mu(push);
    TransportMap back = transport_from_measure(mu);
    double worst = 0;
    for (int k = -80; k <= 80; ++k) {
      const double s = 0.05 * k;
      if (!(s > map.dom_lo && s < map.dom_hi)) continue;
      const double t0 = map.forward(s);
      const double t1 = back.forward(s);
      worst = std::max(worst,
                       std::abs(t1 - t0) / std::max(1.0, std::abs(t0)));
    }
    sink.stream() << "max_roundtrip_error\n" << format_g12(worst) << "\n";
    if (worst > 1e-6) {
      std::cerr << "transport round trip drifted — numeric/model bug suspected\n";
      return kExitViolation;
    }
    return kExitOk;
  }
  if (a.check == "monge-ampere") {
    TransportMap map = load_map(a);
    Measure1D mu(load_density_or_lambert(a));
    std::vector<double> grid;
    for (int k = -80; k <= 80; ++k) grid.push_back(0.05 * k);
    const double res = monge_ampere_residual(mu, map, grid);
    sink.stream() << "monge_ampere_residual\n" << format_g12(res) << "\n";
    if (res > 1e-7) {
      std::cerr << "pushforward identity residual too large — "
                   "numeric/model bug suspected\n";
      return kExitViolation;
    }
    return kExitOk;
  }
  if (a.check == "concavity") {
    Measure1D mu(load_density_or_lambert(a));
    TransportConcavity c = is_gamma_transport_concave(mu);
    sink.stream() << "concave,mass,worst_margin\n"
                  << (c.concave ? "true" : "false") << ","
                  << format_g12(c.mass) << ","
                  << format_g12(c.verdict.worst.margin) << "\n";
    return kExitOk;
  }
  if (a.check == "verify") {
    Density1D d = load_density_or_lambert(a);
    Measure1D mu(d);
    double lo = std::isinf(a.a) ? mu.support_lo() : a.a;
    double hi = std::isinf(a.b) ? mu.support_hi() : a.b;
    std::vector<CutReport> rows{transport_grunbaum_verify(mu, lo, hi)};
    for (auto& r : rows) r.seed = g.seed;
    write_cut_reports_csv(sink.stream(), rows);
    return rows.front().gap < -g.tol ? kExitViolation : kExitOk;
  }
  if (a.check == "even-test") {
    if (a.input.empty())
      throw std::invalid_argument("--check even-test needs --input");
    Measure1D mu(density_from_file(a.input));
    GaussianFit fit = even_transport_gaussian_test(mu);
    sink.stream() << "accepted,sigma,max_residual\n"
                  << (fit.accepted ? "true" : "false") << ","
                  << format_g12(fit.sigma) << ","
                  << format_g12(fit.max_residual) << "\n";
    return kExitOk;
  }
  throw std::invalid_argument("unknown --check \"" + a.check + "\"");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "grunbaum-lab: sharp barycenter-cut lower bounds and their verification"};
  app.require_subcommand(1);
  // Let the global flags (--seed, --out, ...) appear after the subcommand too.
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--seed", g.seed, "RNG seed recorded in all outputs");
  app.add_option("--mc-samples", g.mc_samples, "Monte Carlo sample count");
  app.add_option("--tol", g.tol, "violation tolerance for gap checks");
  app.add_option("--out", g.out_path, "write machine output to this file");
  app.add_flag("--force", g.force,
               "allow tolerance overrides to loosen equality verdicts");

  BoundArgs ba;
  auto* bound = app.add_subcommand("bound", "print a sharp cut bound");
  bound->add_option("--class", ba.cls, "lebesgue | gaussian | sconcave")
      ->required();
  bound->add_option("--n", ba.n, "dimension (lebesgue)");
  bound->add_option("--t", ba.t, "total Gaussian mass in (0,1] (gaussian)");
  bound->add_option("--s", ba.s, "concavity parameter in (-1,1] (sconcave)");
  bound->add_option("--p", ba.p, "density concavity exponent (lebesgue, dimensional form)")
      ->each([&ba](const std::string&) { ba.has_p = true; });

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "verify cut bounds for a fixture");
  verify->add_option("--input", va.input, "JSON fixture path")->required();
  verify->add_option("--class", va.cls,
                     "lebesgue | gaussian | sconcave | cdf | transport");
  verify->add_option("--s", va.s, "concavity parameter (sconcave)");
  verify->add_option("--direction", va.direction,
                     "single direction \"x,y[,z]\" (default: a direction net)");
  verify->add_option("--directions", va.directions,
                     "size of the direction net when no --direction is given");
  verify->add_option("--a", va.a, "interval start (cdf/transport classes)");
  verify->add_option("--b", va.b, "interval end (cdf/transport classes)");

  ExtremalArgs ea;
  auto* extremal =
      app.add_subcommand("extremal", "construct and verify an equality-case body");
  extremal->add_option("--s", ea.s, "concavity parameter in (-1, 1/n]")->required();
  extremal->add_option("--n", ea.n, "dimension (1, 2, or 3)");
  extremal->add_option("--r1", ea.r1, "top-face level");
  extremal->add_option("--a", ea.a, "profile rate parameter");
  extremal->add_option("--face-lo", ea.face_lo, "face interval start (n = 2)");
  extremal->add_option("--face-hi", ea.face_hi, "face interval end (n = 2)");

  CounterArgs ca;
  auto* counter = app.add_subcommand(
      "counterexample", "sweep the no-bound family toward vanishing cut mass");
  counter->add_option("--p", ca.p, "exponent in (-1, -1/2]")->required();
  counter->add_option("--k", ca.ks, "truncation levels (default 10^1..10^6)");

  SweepArgs sa;
  auto* sweep =
      app.add_subcommand("sweep", "tabulate bound curves over a mass grid");
  sweep->add_option("--grid-start", sa.start, "first t value");
  sweep->add_option("--grid-stop", sa.stop, "last t value");
  sweep->add_option("--grid-step", sa.step, "grid step");
  sweep->add_option("--s-list", sa.s_list, "s values for the s-bound columns");

  OptArgs oa;
  auto* opt = app.add_subcommand("optimize-direction",
                                 "find the direction minimising the cut fraction");
  opt->add_option("--input", oa.input, "JSON body fixture")->required();
  opt->add_option("--class", oa.cls, "lebesgue | gaussian | sconcave");
  opt->add_option("--s", oa.s, "concavity parameter (sconcave)");
  opt->add_option("--starts", oa.starts, "number of multistart restarts");
  opt->add_option("--search-seed", oa.search_seed, "restart jitter seed");

  TransportArgs ta;
  auto* transport =
      app.add_subcommand("transport", "transport-map checks and verification");
  transport
      ->add_option("--check", ta.check,
                   "roundtrip | monge-ampere | concavity | verify | even-test")
      ->required();
  transport->add_option("--input", ta.input,
                        "density JSON (default: the Lambert pushforward)");
  transport->add_option("--map", ta.map,
                        "transport JSON (default: the Lambert map)");
  transport->add_option("--a", ta.a, "interval start (verify)");
  transport->add_option("--b", ta.b, "interval end (verify)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (bound->parsed()) return run_bound(ba, g);
    if (verify->parsed()) return run_verify(va, g);
    if (extremal->parsed()) return run_extremal(ea, g);
    if (counter->parsed()) return run_counterexample(ca, g);
    if (sweep->parsed()) return run_sweep(sa, g);
    if (opt->parsed()) return run_optimize(oa, g);
    if (transport->parsed()) return run_transport(ta, g);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitViolation;
  }
  return kExitUsage;
}
