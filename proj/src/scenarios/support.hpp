#pragma once

#include "heunkit/heun.hpp"
#include "heunkit/scenarios.hpp"

#include <functional>
#include <string>
#include <vector>

namespace heunkit::scenarios::detail {

using odekit::Location;
using odekit::PointKind;

OdeEntry classified(std::string label, std::string variable, std::string form, const LinearODE& ode,
                    std::string algebraization = {});

/// Non-ordinary points equal the expected list exactly (order-insensitive).
bool signature_is(const std::vector<SingularPoint>& pts, const std::vector<heun::SignatureEntry>& want);
std::string signature_text(const std::vector<SingularPoint>& pts);
const SingularPoint* point_at(const std::vector<SingularPoint>& pts, const Location& loc);

inline heun::SignatureEntry reg(cplx z) { return {Location::at(z), PointKind::regular}; }
inline heun::SignatureEntry irr(cplx z) { return {Location::at(z), PointKind::irregular}; }
inline heun::SignatureEntry reg_inf() { return {Location::infinity(), PointKind::regular}; }
inline heun::SignatureEntry irr_inf() { return {Location::infinity(), PointKind::irregular}; }

struct Jet {
    cplx w, dw, d2w;
};

/// Value and first two derivatives of a Frobenius series (term-wise).
Jet series_jet(const heun::LocalSeries& s, cplx z);

/// Fourth-order central difference of a derivative: (d/dx) g at x.
cplx central_diff(const std::function<cplx(cplx)>& g, cplx x, double h = 1e-3);
/// Fourth-order central second difference of values.
cplx central_second_diff(const std::function<cplx(cplx)>& f, cplx x, double h = 1e-3);

/// |r| / max(1, |terms|...) for a residual built from the listed terms.
double relative_residual(cplx r, std::initializer_list<cplx> terms);

std::string fmt(double v);
std::string fmt(cplx z);

} // namespace heunkit::scenarios::detail
