#include "support.hpp"

#include "heunkit/ode_grammar.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace heunkit::scenarios::detail {

OdeEntry classified(std::string label, std::string variable, std::string form, const LinearODE& ode,
                    std::string algebraization)
{
    OdeEntry e;
    e.label = std::move(label);
    e.variable = std::move(variable);
    e.form = std::move(form);
    e.rational = ode;
    e.algebraization = std::move(algebraization);
    e.singularities = odekit::classify_singularities(ode);
    return e;
}

const SingularPoint* point_at(const std::vector<SingularPoint>& pts, const Location& loc)
{
    for (const auto& sp : pts)
        if (sp.location.infinite == loc.infinite &&
            (loc.infinite || std::abs(sp.location.z - loc.z) <= 1e-9 * std::max(1.0, std::abs(loc.z))))
            return &sp;
    return nullptr;
}

bool signature_is(const std::vector<SingularPoint>& pts, const std::vector<heun::SignatureEntry>& want)
{
    const auto nontrivial = std::count_if(pts.begin(), pts.end(), [](const auto& sp) { return sp.kind != PointKind::ordinary; });
    if (static_cast<std::size_t>(nontrivial) != want.size())
        return false;
    return std::all_of(want.begin(), want.end(), [&](const auto& w) {
        const auto* sp = point_at(pts, w.location);
        return sp && sp->kind == w.kind;
    });
}

std::string signature_text(const std::vector<SingularPoint>& pts)
{
    std::string out = "{";
    bool first = true;
    for (const auto& sp : pts) {
        if (sp.kind == PointKind::ordinary)
            continue;
        out += (first ? "" : ", ") + odekit::to_string(sp.location) + ": " + std::string(odekit::to_string(sp.kind));
        first = false;
    }
    return out + "}";
}

Jet series_jet(const heun::LocalSeries& s, cplx z)
{
    const cplx x = z - s.center;
    const cplx rho = s.exponent;
    cplx S{}, T{}, U{};
    for (std::size_t k = s.coeffs.size(); k-- > 0;) {
        const cplx e = static_cast<double>(k) + rho;
        S = S * x + s.coeffs[k];
        T = T * x + e * s.coeffs[k];
        U = U * x + e * (e - 1.0) * s.coeffs[k];
    }
    const cplx xr = std::exp(rho * std::log(x));
    return {xr * S, xr * T / x, xr * U / (x * x)};
}

cplx central_diff(const std::function<cplx(cplx)>& g, cplx x, double h)
{
    return (-g(x + 2.0 * h) + 8.0 * g(x + h) - 8.0 * g(x - h) + g(x - 2.0 * h)) / (12.0 * h);
}

cplx central_second_diff(const std::function<cplx(cplx)>& f, cplx x, double h)
{
    return (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) - f(x - 2.0 * h)) / (12.0 * h * h);
}

double relative_residual(cplx r, std::initializer_list<cplx> terms)
{
    double scale = 1.0;
    for (cplx t : terms)
        scale = std::max(scale, std::abs(t));
    return std::abs(r) / scale;
}

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

std::string fmt(cplx z) { return odekit::format_complex(z); }

} // namespace heunkit::scenarios::detail
