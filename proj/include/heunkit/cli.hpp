#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace heunkit::cli {

enum class Format { json, csv, text };

struct Command {
    std::string verb; ///< classify, heun-eval, mathieu-table, scenario or connect
    std::map<std::string, std::string> options;
    std::optional<std::string> input;  ///< file read by classify and scenario
    std::optional<std::string> output; ///< standard output when absent
    Format format = Format::json;
    double tol = 1e-10;
};

/// argv without the program name. HEUNKIT_TOL replaces the default tolerance; --tol
/// replaces both. Throws UnknownVerb, MissingOption, MalformedComplex or InvalidArgument.
Command parse_args(const std::vector<std::string>& args);

/// Usage text for the verb, or the overview when verb is empty or unknown.
std::string usage(const std::string& verb = {});

struct Result {
    int status = 0;     ///< 0 success, 1 domain error or failed scenario check, 2 usage error
    std::string output; ///< artifact, already written to cmd.output when that is set
    std::string diagnostics;
};

Result run(const Command& cmd);

/// parse_args + run with the exit-code mapping; prints the artifact and diagnostics.
int main(int argc, char** argv);

} // namespace heunkit::cli
