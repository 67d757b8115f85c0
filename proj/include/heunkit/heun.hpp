#pragma once

#include "heunkit/ode.hpp"

#include <limits>
#include <map>
#include <string>
#include <vector>

namespace heunkit::heun {

using odekit::LinearODE;

/// Parameters of the general Heun equation
///
///     w'' + [c/z + d/(z-1) + e/(z-f)] w' + (a b z - q) / (z (z-1) (z-f)) w = 0
///
/// subject to a + b + 1 = c + d + e. The accessory parameter q enters with the sign
/// that makes the exponents at infinity equal to a and b.
struct GeneralHeunParams {
    cplx a, b, c, d, e, f, q;

    /// Throws FuchsViolation or CollidingSingularities.
    void validate() const;
};

inline constexpr double kFuchsTol = 1e-12;

LinearODE general_heun(const GeneralHeunParams& params);

enum class Center { zero, one, f };
enum class Branch { first, second };

cplx center_location(const GeneralHeunParams& params, Center center);
std::string to_string(Center c);
std::string to_string(Branch b);

/// Frobenius solution (z - center)^exponent * sum_k coeffs[k] (z - center)^k with coeffs[0] = 1.
struct LocalSeries {
    cplx center;
    cplx exponent;
    std::vector<cplx> coeffs;
    double radius = std::numeric_limits<double>::infinity();
    /// |h_{N-1} / h_N|, a noisy ratio-test estimate kept for diagnostics only.
    double ratio_radius = std::numeric_limits<double>::infinity();
};

struct LocalValue {
    cplx w;
    cplx dw;
    double tail; ///< |h_N| |z - center|^N
};

/// Heun series about 0, 1 or f.
///
/// Writing x = z - z0 and multiplying the equation by z (z-1) (z-f) gives
/// polynomial coefficients
///
///     x (al1 + al2 x + x^2) w'' + (be0 + be1 x + (c+d+e) x^2) w' + (ga0 + a b x) w = 0,
///
/// so w = x^rho sum h_k x^k obeys the three-term recurrence
///
///     (k+1+rho) (al1 (k+rho) + be0)             h_{k+1}
///   + [al2 (k+rho)(k+rho-1) + be1 (k+rho) + ga0] h_k
///   + (k-1+rho+a) (k-1+rho+b)                   h_{k-1} = 0,
///
/// where the last factorisation uses the Fuchs relation. Per center:
///
///   z0 = 0: al1 = f,       al2 = -(1+f), be0 = c f,       be1 = -(c(1+f) + d f + e),     ga0 = -q
///   z0 = 1: al1 = 1-f,     al2 = 2-f,    be0 = d (1-f),   be1 = c(1-f) + d(2-f) + e,     ga0 = a b - q
///   z0 = f: al1 = f(f-1),  al2 = 2f-1,   be0 = e f (f-1), be1 = c(f-1) + d f + e(2f-1),  ga0 = a b f - q
///
/// The first branch has rho = 0, the second rho = 1 - (c, d, e). The radius is the exact
/// distance to the nearest other finite singular point.
LocalSeries heun_series(const GeneralHeunParams& params, Center center, Branch branch, int terms = 60);

/// Largest per-coefficient relative residual when the series is put back into its recurrence.
double heun_recurrence_residual(const GeneralHeunParams& params, Center center, const LocalSeries& series);

/// Series value and derivative; throws OutsideRadius unless |z - center| < radius.
LocalValue eval_local(const LocalSeries& series, cplx z);

/// eval_local with automatic doubling of the truncation from 60 terms until the tail
/// drops below 1e-12 (TruncationFailure past 4096 terms).
LocalValue heun_eval(const GeneralHeunParams& params, Center center, Branch branch, cplx z);

/// Generic Frobenius series of any rational ODE about a regular singular (or ordinary) point.
/// The radius is the distance to the nearest other finite singular point.
LocalSeries frobenius_series(const LinearODE& ode, cplx z0, cplx exponent, int terms);

// ---------------------------------------------------------------------------
// confluent forms

enum class ConfluentKind {
    symmetric_confluent,
    two_center_coulomb,
    spheroidal,
    algebraic_mathieu,
    double_confluent,
    biconfluent,
    anharmonic,
    triconfluent,
};

std::string to_string(ConfluentKind kind);
/// Throws UnknownKind.
ConfluentKind confluent_kind_from_string(const std::string& name);
/// Parameter names each kind expects, in canonical order.
const std::vector<std::string>& confluent_param_names(ConfluentKind kind);

struct ConfluentFormParams {
    ConfluentKind kind;
    std::map<std::string, cplx> params;

    /// Throws InvalidArgument unless params holds exactly the names for kind, all finite.
    void validate() const;
    cplx at(const std::string& name) const { return params.at(name); }
};

/// One entry of the expected singularity signature of a confluent form.
struct SignatureEntry {
    odekit::Location location;
    odekit::PointKind kind;
};

/// Transcribes the printed equation for the kind into w'' + p w' + q w = 0.
/// The self-adjoint forms expand d/dz((z^2-1) w') = (z^2-1) w'' + 2 z w'; the double
/// confluent form expands D = z d/dz and groups its last bracket as
/// (B_{-1} - alpha_{-1}/2)/z. The biconfluent first-derivative term is read as z w'.
LinearODE build_confluent_form(const ConfluentFormParams& cf);

/// Expected classification per kind (generic parameters).
std::vector<SignatureEntry> expected_signature(ConfluentKind kind);

/// Mathieu form reached from the double confluent equation with alpha_1 = alpha_{-1} = alpha,
/// B_1 = B_{-1} = 0. With z = e^{i theta} and w = exp(-i alpha sin theta) y(theta):
///
///     y'' + (a - 2 q cos 2 theta) y = 0,   a = -B_0,  q = -alpha^2 / 4,
///
/// equivalently y'' + (b - h^2 cos^2 theta) y = 0 with b = a + 2q and h^2 = 4q.
struct MathieuReduction {
    cplx alpha;
    cplx a;
    cplx q;
    cplx b;
    cplx h2;
};

/// Throws NotReducible unless |alpha_1 - alpha_{-1}| <= 1e-12 and B_1 = B_{-1} = 0.
MathieuReduction double_confluent_to_mathieu(const ConfluentFormParams& cf);

/// w(r) = r^{1/2} V(r^2 / s) maps the anharmonic equation onto the biconfluent form with
/// s = (4/eta)^{1/4} (principal root),
///     A0 = -1/16 - nu/4,  A1 = E s / 4,  A2 = -mu s^2 / 4,  A3 = -lambda s^3 / 4.
struct AnharmonicReduction {
    ConfluentFormParams biconfluent;
    cplx scale; ///< s in z = r^2 / s
    std::string description;
};

/// Throws DegenerateReduction when eta = 0.
AnharmonicReduction anharmonic_to_biconfluent(cplx E, cplx nu, cplx mu, cplx lambda, cplx eta);

} // namespace heunkit::heun
