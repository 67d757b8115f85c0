#pragma once

#include "heunkit/polynomial.hpp"

#include <vector>

namespace heunkit::odekit {

/// Tolerance for deciding that a point is a pole (relative to coefficient size).
inline constexpr double kPoleTol = 1e-10;
/// Tolerance for matching roots of numerator and denominator during reduction.
inline constexpr double kGcdTol = 1e-9;

struct Pole {
    cplx location;
    int order;
};

/// num/den kept in reduced form with a monic denominator.
class RationalFunction {
public:
    /// The constant 0.
    RationalFunction();
    /// Throws ZeroDenominator if den is identically zero; cancels common roots.
    RationalFunction(Polynomial num, Polynomial den);
    RationalFunction(const Polynomial& poly); // NOLINT(google-explicit-constructor)

    static RationalFunction constant(cplx c);

    const Polynomial& num() const noexcept { return num_; }
    const Polynomial& den() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_.is_zero(); }

    cplx operator()(cplx z) const;

    /// Distinct finite poles with their orders.
    std::vector<Pole> poles() const;
    /// Order of the pole at z0 (0 when z0 is not a pole).
    int pole_order(cplx z0) const;
    /// Coefficient of (z - z0)^(-k) in the Laurent expansion, for k >= pole order.
    cplx laurent_coeff(cplx z0, int k) const;

    /// The function t -> r(1/t), as a rational function of t.
    RationalFunction at_inverse() const;
    /// The function x -> r(x + z0).
    RationalFunction shifted(cplx z0) const;

    RationalFunction operator-() const;
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);

private:
    struct Unreduced {};
    RationalFunction(Polynomial num, Polynomial den, Unreduced);
    void reduce();

    Polynomial num_;
    Polynomial den_;
};

/// make_rational: build from coefficient lists (ascending degree).
RationalFunction make_rational(const std::vector<cplx>& num_coeffs, const std::vector<cplx>& den_coeffs);

/// Cluster the roots of a polynomial into distinct locations with multiplicities.
std::vector<Pole> root_clusters(const Polynomial& p);

} // namespace heunkit::odekit
