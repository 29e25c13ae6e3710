#pragma once

#include <string>

#include <json.hpp>

#include "billiard/geometry.hpp"

namespace billiard::geom {

// Domain file schema:
//   {"type":"ellipse","a":2.0,"b":1.0}
//   {"type":"support_fourier","a0":1.0,"harmonics":[{"k":2,"cos":0.01,"sin":0.0}]}
Domain domain_from_json(const nlohmann::json& j);
nlohmann::json domain_to_json(const Domain& d);
Domain load_domain_file(const std::string& path);

}  // namespace billiard::geom
