#pragma once

// JSON fixture loading: bodies (V-representation with optional rays),
// one-dimensional density specs, and transport map specs.  Infinite support
// endpoints are spelled "inf" / "-inf".  All loaders throw
// std::invalid_argument with a readable message on malformed input.

#include <string>

#include "grunbaum/body.hpp"
#include "grunbaum/density.hpp"
#include "grunbaum/transport.hpp"

namespace grunbaum {

/// {"id": "...", "vertices": [[x,y],...], "rays": [[x,y],...]?}
/// The dimension (2 or 3) is inferred from the first vertex.
ConvexBody body_from_json(const std::string& text);

/// {"kind": "uniform"|"exponential"|"gaussian"|"truncated-gaussian"|
///          "power"|"table", ...params, "normalize": bool?}
///   uniform:            a, b
///   exponential:        rate, origin?
///   gaussian:           mean?, sigma?
///   truncated-gaussian: mean, sigma, lo, hi
///   power:              base, exponent, a, b   (psi = |r-base|^exponent)
///   table:              r: [...], psi: [...]
Density1D density_from_json(const std::string& text);

/// {"kind": "linear"|"lambert"|"table", ...params}
///   linear:  scale, shift?
///   lambert: (no parameters)
///   table:   s: [...], t: [...]
TransportMap transport_from_json(const std::string& text);

std::string read_text_file(const std::string& path);

ConvexBody body_from_file(const std::string& path);
Density1D density_from_file(const std::string& path);
TransportMap transport_from_file(const std::string& path);

}  // namespace grunbaum
