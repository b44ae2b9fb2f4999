#include "grunbaum/json_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace grunbaum {
namespace {

using nlohmann::json;

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
}

double number_or_inf(const json& v, const char* what) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw std::invalid_argument(std::string(what) +
                              " must be a number, \"inf\", or \"-inf\"");
}

double require_number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw std::invalid_argument(std::string("missing numeric field \"") + key +
                                "\"");
  return j.at(key).get<double>();
}

double number_or(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number())
    throw std::invalid_argument(std::string("field \"") + key +
                                "\" must be a number");
  return j.at(key).get<double>();
}

std::vector<double> number_list(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array())
    throw std::invalid_argument(std::string("missing array field \"") + key +
                                "\"");
  std::vector<double> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number())
      throw std::invalid_argument(std::string("array \"") + key +
                                  "\" must contain numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<VecN> point_list(const json& j, const char* key, bool required) {
  std::vector<VecN> out;
  if (!j.contains(key)) {
    if (required)
      throw std::invalid_argument(std::string("missing array field \"") + key +
                                  "\"");
    return out;
  }
  if (!j.at(key).is_array())
    throw std::invalid_argument(std::string("field \"") + key +
                                "\" must be an array of points");
  for (const auto& p : j.at(key)) {
    if (!p.is_array() || p.empty())
      throw std::invalid_argument(std::string("each entry of \"") + key +
                                  "\" must be a coordinate array");
    VecN v;
    for (const auto& c : p) {
      if (!c.is_number())
        throw std::invalid_argument("coordinates must be numbers");
      v.push_back(c.get<double>());
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::string kind_of(const json& j) {
  if (!j.contains("kind") || !j.at("kind").is_string())
    throw std::invalid_argument("missing string field \"kind\"");
  return j.at("kind").get<std::string>();
}

}  // namespace

ConvexBody body_from_json(const std::string& text) {
  json j = parse(text);
  ConvexBody body;
  body.vertices = point_list(j, "vertices", true);
  if (body.vertices.empty())
    throw std::invalid_argument("body needs at least one vertex");
  body.dim = static_cast<int>(body.vertices.front().size());
  if (body.dim < 2 || body.dim > 3)
    throw std::invalid_argument("bodies are supported in dimensions 2 and 3");
  for (const auto& v : body.vertices)
    if (static_cast<int>(v.size()) != body.dim)
      throw std::invalid_argument("inconsistent vertex dimensions");
  body.rays = point_list(j, "rays", false);
  for (const auto& r : body.rays)
    if (static_cast<int>(r.size()) != body.dim)
      throw std::invalid_argument("inconsistent ray dimensions");
  if (j.contains("id")) {
    if (!j.at("id").is_string())
      throw std::invalid_argument("field \"id\" must be a string");
    body.id = j.at("id").get<std::string>();
  }
  return body;
}

Density1D density_from_json(const std::string& text) {
  json j = parse(text);
  const std::string kind = kind_of(j);
  Density1D d;
  if (kind == "uniform") {
    d = uniform_density(require_number(j, "a"), require_number(j, "b"));
  } else if (kind == "exponential") {
    d = exponential_density(require_number(j, "rate"),
                            number_or(j, "origin", 0.0));
  } else if (kind == "gaussian") {
    d = gaussian_density(number_or(j, "mean", 0.0), number_or(j, "sigma", 1.0));
  } else if (kind == "truncated-gaussian") {
    d = truncated_gaussian_density(
        require_number(j, "mean"), require_number(j, "sigma"),
        require_number(j, "lo"), require_number(j, "hi"));
  } else if (kind == "power") {
    if (!j.contains("a") || !j.contains("b"))
      throw std::invalid_argument("power density needs fields \"a\" and \"b\"");
    d = power_density(require_number(j, "base"), require_number(j, "exponent"),
                      number_or_inf(j.at("a"), "a"),
                      number_or_inf(j.at("b"), "b"));
  } else if (kind == "table") {
    d = table_density(number_list(j, "r"), number_list(j, "psi"));
  } else {
    throw std::invalid_argument("unknown density kind \"" + kind + "\"");
  }
  if (j.contains("normalize") && j.at("normalize").is_boolean() &&
      j.at("normalize").get<bool>()) {
    d = normalize_to_probability(d);
  }
  if (j.contains("name") && j.at("name").is_string())
    d.name = j.at("name").get<std::string>();
  return d;
}

TransportMap transport_from_json(const std::string& text) {
  json j = parse(text);
  const std::string kind = kind_of(j);
  if (kind == "linear")
    return linear_map(require_number(j, "scale"), number_or(j, "shift", 0.0));
  if (kind == "lambert") return lambert_map();
  if (kind == "table")
    return table_map(number_list(j, "s"), number_list(j, "t"));
  throw std::invalid_argument("unknown transport kind \"" + kind + "\"");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ConvexBody body_from_file(const std::string& path) {
  return body_from_json(read_text_file(path));
}

Density1D density_from_file(const std::string& path) {
  return density_from_json(read_text_file(path));
}

TransportMap transport_from_file(const std::string& path) {
  return transport_from_json(read_text_file(path));
}

}  // namespace grunbaum
