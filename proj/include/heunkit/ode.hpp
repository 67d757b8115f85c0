#pragma once

#include "heunkit/rational.hpp"

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace heunkit::odekit {

/// w'' + p(z) w' + q(z) w = 0 with rational p and q.
struct LinearODE {
    RationalFunction p;
    RationalFunction q;

    /// Finite singular points: union of the poles of p and q.
    std::vector<cplx> finite_singularities() const;
    /// The same equation in t = 1/z, so that z = infinity sits at t = 0.
    LinearODE at_infinity() const;
    /// The same equation in x = z - z0.
    LinearODE shifted(cplx z0) const;
};

/// Build from the polynomial form A(z) w'' + B(z) w' + C(z) w = 0.
LinearODE from_polynomial_form(const Polynomial& a2, const Polynomial& a1, const Polynomial& a0);

/// A point of the Riemann sphere.
struct Location {
    bool infinite = false;
    cplx z{};

    static Location at(cplx z) { return {false, z}; }
    static Location infinity() { return {true, {}}; }
    friend bool operator==(const Location&, const Location&) = default;
};

std::string to_string(const Location& loc);

enum class PointKind { ordinary, regular, irregular };

std::string_view to_string(PointKind kind);

/// Non-negative rational Poincare rank, kept as num/den with den in {1, 2}.
struct Rank {
    int num = 0;
    int den = 1;
    double value() const { return static_cast<double>(num) / den; }
    friend bool operator==(const Rank&, const Rank&) = default;
};

std::string to_string(const Rank& r);

struct IndicialRoots {
    cplx first;  ///< larger real part
    cplx second;
    bool logarithmic = false; ///< roots differ by an integer (including zero)
};

struct SingularPoint {
    Location location;
    PointKind kind = PointKind::ordinary;
    std::optional<IndicialRoots> exponents; ///< present exactly for regular points
    Rank rank;
};

/// Every finite singular point, then the point at infinity (always reported).
std::vector<SingularPoint> classify_singularities(const LinearODE& ode);

/// Classification of a single location; ordinary points come back as PointKind::ordinary.
SingularPoint classify_point(const LinearODE& ode, const Location& loc);

/// Roots of rho(rho-1) + p_{-1} rho + q_{-2} = 0; throws NotRegular unless loc is a regular singular point.
IndicialRoots indicial_exponents(const LinearODE& ode, const Location& loc);

struct ResidualSample {
    cplx z, w, dw, d2w;
};

/// max over samples of |w'' + p w' + q w| / max(1, |w''|, |p w'|, |q w|).
double ode_residual(const LinearODE& ode, std::span<const ResidualSample> samples);

} // namespace heunkit::odekit
