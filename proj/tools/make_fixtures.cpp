// Writes the JSON fixtures used by the test suite and the CLI examples into
// the directory given as argv[1].  Every fixture is deterministic.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "json.hpp"

namespace {

using nlohmann::json;

void write(const std::filesystem::path& dir, const std::string& name,
           const json& doc) {
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + name);
  out << doc.dump(2) << "\n";
}

json poly(const std::string& id, std::initializer_list<std::initializer_list<double>> vs) {
  json j;
  j["id"] = id;
  j["vertices"] = json::array();
  for (const auto& v : vs) j["vertices"].push_back(v);
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make-fixtures <output-dir>\n";
    return 2;
  }
  const std::filesystem::path dir(argv[1]);
  std::filesystem::create_directories(dir);

  // Bodies.
  write(dir, "triangle.json", poly("triangle", {{0, 0}, {1, 0}, {0, 1}}));
  write(dir, "square.json", poly("square", {{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
  write(dir, "simplex3.json",
        poly("simplex3", {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));

  {
    json j;
    j["id"] = "halfspace-x1";
    j["vertices"] = {{0.0, 0.0}};
    j["rays"] = {{-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
    write(dir, "halfspace.json", j);
  }

  {
    json j;
    j["id"] = "disk256";
    j["vertices"] = json::array();
    const int n = 256;
    for (int k = 0; k < n; ++k) {
      const double th = 2.0 * 3.14159265358979323846 * k / n;
      j["vertices"].push_back({std::cos(th), std::sin(th)});
    }
    write(dir, "disk256.json", j);
  }

  {
    // Four-dimensional input: the geometry kernels cover dimensions 2 and 3,
    // so loading this must fail cleanly (used by the CLI error-path tests).
    json j;
    j["id"] = "hypercube4";
    j["vertices"] = json::array();
    for (int m = 0; m < 16; ++m)
      j["vertices"].push_back(
          {double(m & 1), double((m >> 1) & 1), double((m >> 2) & 1),
           double((m >> 3) & 1)});
    write(dir, "dim4.json", j);
  }

  // Densities.
  write(dir, "exp1.json",
        json{{"kind", "exponential"}, {"rate", 1.0}, {"name", "exp1"}});
  write(dir, "truncgauss.json",
        json{{"kind", "truncated-gaussian"},
             {"mean", 1.0},
             {"sigma", 3.0},
             {"lo", -2.0},
             {"hi", 4.0},
             {"normalize", true},
             {"name", "tgauss-1-3"}});
  write(dir, "even-uniform.json",
        json{{"kind", "uniform"}, {"a", -1.0}, {"b", 1.0},
             {"normalize", true}, {"name", "even-uniform"}});
  write(dir, "gauss-sigma1.json",
        json{{"kind", "gaussian"}, {"mean", 0.0}, {"sigma", 1.0}, {"name", "gauss-sigma1"}});
  write(dir, "gauss-sigma2.json",
        json{{"kind", "gaussian"}, {"mean", 0.0}, {"sigma", 2.0}, {"name", "gauss-sigma2"}});

  // Transport maps.
  write(dir, "linear2.json", json{{"kind", "linear"}, {"scale", 2.0}});
  {
    json j;
    j["kind"] = "table";
    j["s"] = json::array();
    j["t"] = json::array();
    for (int k = 0; k <= 60; ++k) {
      const double s = -0.9 + 0.065 * k;  // [-0.9, 3.0]
      j["s"].push_back(s);
      j["t"].push_back(s * std::exp(s));
    }
    write(dir, "table-lambert.json", j);
  }

  {
    std::ofstream bad(dir / "malformed.json", std::ios::binary);
    bad << "{ this is not json\n";
  }

  std::cout << "fixtures written to " << dir.string() << "\n";
  return 0;
}
