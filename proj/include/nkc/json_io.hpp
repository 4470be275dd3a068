#pragma once

#include <string>

#include "json.hpp"
#include "nkc/quiver.hpp"

namespace nkc {

using json = nlohmann::json;

json quiver_to_json(const BoundQuiver& q);
// Throws QuiverError(Parse) on malformed documents; does not check gentleness.
BoundQuiver quiver_from_json(const json& j);
BoundQuiver quiver_from_text(const std::string& text);
BoundQuiver read_quiver_file(const std::string& path);

}  // namespace nkc
