#pragma once

#include "heunkit/polynomial.hpp"

#include <json.hpp>

#include <string>

namespace heunkit {

using Json = nlohmann::ordered_json;

/// Deterministic rendering: insertion-ordered keys, two-space indent, doubles as %.17g.
std::string dump_json(const Json& value);

/// {"re": .., "im": ..}
Json complex_json(cplx z);

} // namespace heunkit
