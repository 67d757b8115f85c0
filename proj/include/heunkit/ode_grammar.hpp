#pragma once

#include "heunkit/ode.hpp"

#include <string>
#include <string_view>

namespace heunkit::odekit {

/// Complex literal: "1.5", "-2i", "i", "0.3+0i", "1e-3-2.5e1i". Throws MalformedComplex.
cplx parse_complex(std::string_view text);
/// Round-trippable literal in the same syntax, 17 significant digits.
std::string format_complex(cplx z);

/// Parses `ode p_num=[..] p_den=[..] q_num=[..] q_den=[..]`.
/// Whitespace is ignored; omitted denominators default to [1]. Errors carry the
/// character offset of the offending token in the original text.
LinearODE parse_ode(std::string_view text);
std::string format_ode(const LinearODE& ode);

} // namespace heunkit::odekit
