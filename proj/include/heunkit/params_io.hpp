#pragma once

#include "heunkit/heun.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace heunkit::params_io {

/// `head key=value key=value ...`, whitespace separated. Values may not contain spaces.
struct KeyValueLine {
    std::string head;
    std::vector<std::pair<std::string, std::string>> fields;
    std::vector<std::size_t> positions; ///< offset of each field in the source text
};

/// Throws ParseError naming the offending position.
KeyValueLine parse_key_value_line(std::string_view text, std::string_view expected_head);

/// `heun a=.. b=.. c=.. d=.. e=.. f=.. q=..`; all seven keys required.
heun::GeneralHeunParams parse_heun_params(std::string_view text);
std::string format_heun_params(const heun::GeneralHeunParams& p);

/// `cform kind=<kind> <name>=..` with exactly the names of that kind.
heun::ConfluentFormParams parse_confluent_params(std::string_view text);
std::string format_confluent_params(const heun::ConfluentFormParams& cf);

} // namespace heunkit::params_io
