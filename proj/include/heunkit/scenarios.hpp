#pragma once

#include "heunkit/engine.hpp"
#include "heunkit/json_text.hpp"
#include "heunkit/mathieu.hpp"
#include "heunkit/ode.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace heunkit::scenarios {

using odekit::LinearODE;
using odekit::SingularPoint;

/// Equation whose coefficients are trigonometric or hyperbolic in the working variable.
struct TrigODE {
    std::string label;
    std::string variable;
    std::function<cplx(cplx)> p;
    std::function<cplx(cplx)> q;
    double period = 0.0;         ///< 0 when not periodic
    std::string parity;          ///< symmetry of the coefficients, e.g. "even"
    std::vector<cplx> poles;     ///< coefficient poles near the working domain

    engine::CoefficientField field() const { return {p, q, poles}; }
};

struct OdeEntry {
    std::string label;
    std::string variable;
    std::string form;                    ///< human-readable equation
    std::optional<LinearODE> rational;   ///< absent for equations held only as TrigODE
    std::string algebraization;          ///< substitution used before classifying, if any
    std::vector<SingularPoint> singularities;
};

struct ResidualEntry {
    std::string label;
    double value = 0.0;
    std::optional<double> bound; ///< informational when absent
    bool pass() const { return !bound || value <= *bound; }
};

struct Claim {
    std::string claim;
    std::string quote; ///< verbatim source statement the claim checks
    bool pass = false;
    std::string detail;
};

struct ScenarioReport {
    std::string id;
    std::vector<std::pair<std::string, cplx>> inputs;
    std::vector<std::pair<std::string, std::string>> settings;
    std::vector<OdeEntry> odes;
    std::vector<ResidualEntry> residuals;
    std::vector<Claim> claims;
    std::vector<std::string> degenerations;
    std::vector<std::string> notes;
    Json data = Json::object();

    bool all_pass() const;
    const Claim* find_claim(const std::string& claim) const;
    const ResidualEntry* find_residual(const std::string& label) const;
    const OdeEntry* find_ode(const std::string& label) const;
};

Json to_json(const ScenarioReport& report);
std::string to_text(const ScenarioReport& report);

// ---------------------------------------------------------------------------

/// Elliptic-coordinate Helmholtz separation with h^2 = a^2 k^2 / 4; the angular factor is
/// the periodic Mathieu function of the given order and parity.
ScenarioReport helmholtz_elliptic(double a, double k, int n = 2, mathieu::Parity parity = mathieu::Parity::even);

/// Parabolic-coordinate Stark separation; beta2 = 1 - beta1.
ScenarioReport stark_separation(cplx E, cplx F, cplx m, cplx beta1);

/// Prolate-spheroidal separation of the hydrogen molecule ion.
ScenarioReport h2plus_separation(cplx lambda, cplx kappa, cplx mu, cplx m);

/// Angular equation S'' - (a^2 k^2 / 2 cos 2 Theta - n) S = 0 with n quantised.
ScenarioReport nutku_angular(double a, double k, int n, mathieu::Parity parity = mathieu::Parity::even,
                             double phi = 0.0);

struct NutkuRadialOptions {
    /// Read the bracket as a^2/2 k^2 cosh 2x + Lambda^2 sinh 2x instead of a^2/2 (k^2 cosh 2x + Lambda^2 sinh 2x).
    bool printed_grouping = false;
    /// Keep +n as printed instead of the -n that follows from separating the product ansatz.
    bool printed_sign = false;
};

/// Radial equation R'' - [A cosh 2x + B sinh 2x] R - n R = 0 with n the angular separation
/// constant; reduced to a Mathieu equation at argument i (x + b). Throws DegenerateShift when |A| = |B|.
ScenarioReport nutku_radial(double a, double k, double Lambda, int n, mathieu::Parity parity = mathieu::Parity::even,
                            NutkuRadialOptions options = {});

/// Radial operator in u = (a^2 + r^2) / (2 a^2), divided by 4.
ScenarioReport eguchi_hanson_radial(cplx k, cplx a, cplx m, cplx lambda);

/// g'' + cot(theta) g' + [(2 m n cos theta - m^2 - n^2) / sin^2 theta + lambda / 4] g = 0 and the
/// closed-form hypergeometric candidate. Throws ParameterPole when 1 - n - m or 1 + n + m is a
/// non-positive integer.
ScenarioReport eguchi_hanson_angular(cplx lambda, cplx m, cplx n);

/// Boundary Dirac equation in Theta = theta - phi - i x0 and in u = exp(2 i Theta).
ScenarioReport boundary_dirac_equation(double a, double k, double x0, double phi = 0.0);

// ---------------------------------------------------------------------------

/// `scenario id=<id> key=value ...`; values use the complex literal grammar except the
/// keys parity (even|odd) and the boolean flags printed_grouping / printed_sign.
struct ScenarioConfig {
    std::string id;
    std::map<std::string, std::string> values;
};

/// Throws ParseError.
ScenarioConfig parse_scenario_config(std::string_view text);
std::string format_scenario_config(const ScenarioConfig& config);

/// Dispatch on config.id with per-scenario defaults for omitted keys. Throws UnknownKind or InvalidArgument.
ScenarioReport run_scenario(const ScenarioConfig& config);

/// Scenario ids in canonical order.
const std::vector<std::string>& scenario_ids();

/// The example parameter point used for each scenario by the regression suite.
ScenarioConfig default_config(const std::string& id);

} // namespace heunkit::scenarios
