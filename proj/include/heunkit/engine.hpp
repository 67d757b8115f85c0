#pragma once

#include "heunkit/heun.hpp"
#include "heunkit/ode.hpp"

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace heunkit::engine {

using odekit::LinearODE;

/// Polyline in the complex plane.
struct ComplexPath {
    std::vector<cplx> vertices;
};

/// Closed regular polygon with n vertices on |z - center| = radius, starting at angle phase.
ComplexPath circle_path(cplx center, double radius, int n, double phase = 0.0);

struct SolutionState {
    cplx z;
    cplx w;
    cplx dw;
};

/// Coefficients of w'' + p w' + q w = 0 given pointwise, plus the singular points the path
/// must keep clear of. Lets non-rational (trigonometric) equations share the integrator.
struct CoefficientField {
    std::function<cplx(cplx)> p;
    std::function<cplx(cplx)> q;
    std::vector<cplx> singular_points;

    static CoefficientField from(const LinearODE& ode);
};

/// Throws SingularityTooClose if any segment comes within 1e-3 x (distance from a singular
/// point to its nearest neighbour) of that point. An isolated point uses spacing 1.
void check_clearance(const CoefficientField& field, const ComplexPath& path);

/// States at every accepted step, first and last included.
struct Trace {
    ComplexPath path;
    std::vector<SolutionState> states;
    const SolutionState& final() const { return states.back(); }
};

inline constexpr double kDefaultTol = 1e-10;

/// Runge-Kutta-Fehlberg 7(8) along each segment with atol = rtol = tol. init.z must be the
/// first vertex. Throws SingularityTooClose or StepUnderflow.
Trace integrate_trace(const CoefficientField& field, SolutionState init, const ComplexPath& path,
                      double tol = kDefaultTol);
SolutionState integrate_path(const CoefficientField& field, SolutionState init, const ComplexPath& path,
                             double tol = kDefaultTol);
SolutionState integrate_path(const LinearODE& ode, SolutionState init, const ComplexPath& path,
                             double tol = kDefaultTol);

/// z_re,z_im,w_re,w_im,dw_re,dw_im with a header row.
std::string trace_csv(const Trace& trace);

/// integral of p along the polyline.
cplx integrate_coefficient(const std::function<cplx(cplx)>& p, const ComplexPath& path);

/// |W(z1) - W(z0) exp(-int p)| / |W(z0)| between the first and last states of two traces
/// integrated along the same path. Throws DegenerateSystem if |W(z0)| < 1e-12.
double wronskian_abel_check(const CoefficientField& field, const Trace& s1, const Trace& s2);
double wronskian_abel_check(const LinearODE& ode, const Trace& s1, const Trace& s2);

/// Row i expresses the i-th from-basis solution in the to-basis:
///     u_i = entries[i][0] v_1 + entries[i][1] v_2.
struct ConnectionMatrix {
    std::array<std::array<cplx, 2>, 2> entries{};
    cplx from_point; ///< where the from-series was evaluated
    cplx to_point;   ///< where the to-series was evaluated
    double condition = 1.0;
    double abel_deviation = 0.0;

    ConnectionMatrix operator*(const ConnectionMatrix& o) const;
};

/// Point at half the series radius from center, aimed at target and rotated by pi/6 to the
/// side farther from the principal branch cut (ties go to positive imaginary part).
cplx matching_point(cplx center, double radius, cplx target);

/// Integrates both from-basis solutions from matching_point(from) through the waypoints to
/// matching_point(to) and solves the 2x2 system against the to-basis there. The path is
/// integrated at tol / 100 so the entries themselves land within tol.
/// Throws LogarithmicCase, SingularityTooClose or IllConditioned (condition > 1e8).
ConnectionMatrix connection_matrix(const heun::GeneralHeunParams& params, heun::Center from, heun::Center to,
                                   const ComplexPath& waypoints, double tol = kDefaultTol);

} // namespace heunkit::engine
