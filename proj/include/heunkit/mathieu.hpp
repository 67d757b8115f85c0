#pragma once

#include "heunkit/error.hpp"
#include "heunkit/polynomial.hpp"

#include <string>
#include <vector>

namespace heunkit::mathieu {

/// Convention throughout:
///
///     y'' + (a - 2 q cos 2 theta) y = 0.
///
/// The (b, h^2) form y'' + (b - h^2 cos^2 theta) y = 0 is the same equation with
/// h^2 = 4 q and b = a + 2 q = a + h^2 / 2; to_trigonometric_form is the only place that
/// converts between the two.
struct TrigonometricForm {
    cplx b;
    cplx h2;
};
TrigonometricForm to_trigonometric_form(cplx a, cplx q);

enum class Parity { even, odd };
std::string to_string(Parity p);
/// Throws InvalidArgument.
Parity parity_from_string(const std::string& s);

struct MathieuParams {
    int n = 0;
    cplx q;
    Parity parity = Parity::even;

    /// Throws InvalidArgument for n < 0 or an odd function of order 0.
    void validate() const;
};

/// One cosine (even) or sine (odd) mode of the normalised Fourier series.
struct FourierTerm {
    int frequency;
    cplx coeff;
};

struct CharacteristicValue {
    MathieuParams params;
    cplx value;        ///< a_n(q) for even, b_n(q) for odd functions
    int truncation = 0;
    bool converged = false;
    /// Scaled so that the integral of S^2 over [0, 2 pi] is pi; the coefficient of the mode
    /// that survives at q = 0 has positive real part.
    std::vector<FourierTerm> series;
};

/// Tridiagonal Fourier-mode matrix eigenvalue. Real q: in-module QL iteration. Complex q:
/// Newton on the truncated determinant, continued from Re q along the imaginary direction.
/// The truncation starts at max(16, n/2 + 10) and doubles until the value moves by at most
/// 1e-12 (relative); NonConvergence past 2048.
CharacteristicValue characteristic_value(int n, cplx q, Parity parity);
CharacteristicValue characteristic_value(const MathieuParams& params);

struct MathieuValue {
    cplx w;
    cplx dw;
};

/// Largest |Im theta| at which the Fourier series is summed (cosh growth of the modes).
inline constexpr double kMaxImaginaryPart = 20.0;

/// Se(n, q, theta) or So(n, q, theta) and its theta-derivative. Complex theta is allowed up
/// to kMaxImaginaryPart. Throws NonConverged or OverflowGuard.
MathieuValue angular_mathieu(const CharacteristicValue& cv, cplx theta);

/// S(i x) and its x-derivative: solves -M'' + (b - h^2 cosh^2 x) M = 0.
MathieuValue modified_mathieu(const CharacteristicValue& cv, double x);

/// Solutions of y'' + (a - 2 q cos 2 zeta) y = 0 for arbitrary a, by integration along the
/// straight segment from 0: the even one has y(0) = 1, y'(0) = 0, the odd one y(0) = 0, y'(0) = 1.
MathieuValue mathieu_c(cplx a, cplx q, cplx z, double tol = 1e-12);
MathieuValue mathieu_s(cplx a, cplx q, cplx z, double tol = 1e-12);

/// Gram matrix of the angular functions with n <= n_max: even orders 0..n_max first, then
/// odd orders 1..n_max. Entries by adaptive Gauss-Kronrod quadrature over [0, 2 pi].
struct GramMatrix {
    std::vector<MathieuParams> basis;
    std::vector<std::vector<double>> entries;
};
GramMatrix orthogonality_matrix(double q, int n_max);

/// n,parity,q_re,q_im,value_re,value_im,truncation
std::string characteristic_table_csv(const std::vector<CharacteristicValue>& rows);

} // namespace heunkit::mathieu
