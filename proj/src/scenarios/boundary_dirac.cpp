#include "heunkit/scenarios.hpp"

#include "heunkit/error.hpp"
#include "support.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace heunkit::scenarios {

using namespace detail;
using odekit::Polynomial;

namespace {

constexpr double pi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};
constexpr int kSamples = 64;         // Theta samples over one period of theta
constexpr int kArcSubdivision = 8;   // u-polygon vertices per Theta sample (128 per loop)
constexpr double kTol = 1e-12;

// -f'' - tan(Theta) f' + (ak)^2/2 [cos 2 Theta cosh 2 x0 - i sin 2 Theta sinh 2 x0 + cosh 2 x0] f = 0, made monic
engine::CoefficientField theta_field(double coupling, double x0)
{
    engine::CoefficientField f;
    f.p = [](cplx t) { return std::tan(t); };
    f.q = [coupling, x0](cplx t) {
        return -coupling / 2.0 *
               (std::cos(2.0 * t) * std::cosh(2.0 * x0) - I * std::sin(2.0 * t) * std::sinh(2.0 * x0) + std::cosh(2.0 * x0));
    };
    for (int j = -2; j <= 5; ++j)
        f.singular_points.push_back(pi / 2.0 + j * pi);
    return f;
}

// 4u(u+1)[u f'' + f'] - 2u(u-1) f' + (ak)^2/2 (u+1)[(u e^{-2x0} + e^{2x0}/u)/2 + cosh 2x0] f = 0, times u
LinearODE derived_u_form(double coupling, double x0)
{
    const Polynomial up1{1.0, 1.0};
    return odekit::from_polynomial_form(
        Polynomial::monomial(4.0, 3) * up1, Polynomial{0.0, 0.0, 6.0, 2.0},
        up1 * Polynomial{std::exp(2.0 * x0) / 2.0, std::cosh(2.0 * x0), std::exp(-2.0 * x0) / 2.0} * (coupling / 2.0));
}

// Same operator with the printed -2 i u (u - 1) and the exponential pair without the 1/2
LinearODE printed_u_form(double coupling, double x0)
{
    const Polynomial up1{1.0, 1.0};
    return odekit::from_polynomial_form(
        Polynomial::monomial(4.0, 3) * up1, Polynomial{0.0, 0.0, 4.0 + 2.0 * I, 4.0 - 2.0 * I},
        up1 * Polynomial{std::exp(2.0 * x0), std::cosh(2.0 * x0), std::exp(-2.0 * x0)} * (coupling / 2.0));
}

// u = exp(2 i Theta): f_u = f_Theta / (2 i u)
engine::SolutionState to_u(const engine::SolutionState& s)
{
    const cplx u = std::exp(2.0 * I * s.z);
    return {u, s.w, s.dw / (2.0 * I * u)};
}

engine::SolutionState to_theta(const engine::SolutionState& s, cplx theta)
{
    return {theta, s.w, s.dw * 2.0 * I * s.z};
}

struct Transport {
    std::vector<engine::SolutionState> theta; // states at the Theta samples
    std::vector<engine::SolutionState> u;     // states at the matching u samples
};

std::vector<cplx> theta_samples(double shift, double phi)
{
    std::vector<cplx> out;
    for (int j = 0; j <= kSamples; ++j)
        out.push_back(-phi + 2.0 * pi * j / kSamples - I * shift);
    return out;
}

// Arc from exp(2 i a) to exp(2 i b) for Theta on the horizontal line, as a polygon
engine::ComplexPath u_arc(cplx a, cplx b)
{
    engine::ComplexPath p;
    for (int k = 0; k <= kArcSubdivision; ++k)
        p.vertices.push_back(std::exp(2.0 * I * (a + (b - a) * (double(k) / kArcSubdivision))));
    return p;
}

Transport transport(const engine::CoefficientField& theta_eq, const LinearODE& u_eq, const std::vector<cplx>& thetas,
                    engine::SolutionState init)
{
    Transport t;
    t.theta.push_back(init);
    t.u.push_back(to_u(init));
    const auto u_field = engine::CoefficientField::from(u_eq);
    for (std::size_t j = 1; j < thetas.size(); ++j) {
        t.theta.push_back(engine::integrate_path(theta_eq, t.theta.back(), {{thetas[j - 1], thetas[j]}}, kTol));
        t.u.push_back(engine::integrate_path(u_field, t.u.back(), u_arc(thetas[j - 1], thetas[j]), kTol));
    }
    return t;
}

double transport_mismatch(const Transport& t)
{
    double worst = 0;
    for (std::size_t j = 0; j < t.theta.size(); ++j) {
        const auto back = to_theta(t.u[j], t.theta[j].z);
        const double scale = std::max({1.0, std::abs(t.theta[j].w), std::abs(t.theta[j].dw)});
        worst = std::max(worst, std::max(std::abs(back.w - t.theta[j].w), std::abs(back.dw - t.theta[j].dw)) / scale);
    }
    return worst;
}

std::array<cplx, 2> eigenvalues(const std::array<std::array<cplx, 2>, 2>& m)
{
    const cplx tr = m[0][0] + m[1][1];
    const cplx det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    const cplx disc = std::sqrt(tr * tr - 4.0 * det);
    return {(tr + disc) / 2.0, (tr - disc) / 2.0};
}

} // namespace

ScenarioReport boundary_dirac_equation(double a, double k, double x0, double phi)
{
    if (!(a > 0.0) || !(k >= 0.0) || !(x0 >= 0.0))
        throw Error(ErrorKind::InvalidArgument, "need a > 0, k >= 0 and x0 >= 0");
    ScenarioReport r;
    r.id = "boundary-dirac";
    r.inputs = {{"a", a}, {"k", k}, {"x0", x0}, {"phi", phi}};
    const double coupling = a * a * k * k;

    r.odes.push_back({"theta", "Theta",
                      "-f'' - tan(Theta) f' + (ak)^2/2 [cos 2 Theta cosh 2 x0 - i sin 2 Theta sinh 2 x0 + cosh 2 x0] f = 0",
                      std::nullopt, {}, {}});
    const LinearODE derived = derived_u_form(coupling, x0);
    const LinearODE printed = printed_u_form(coupling, x0);
    r.odes.push_back(classified("u-derived", "u",
                                "4u(u+1)[u f'' + f'] - 2u(u-1) f' + (ak)^2/2 (u+1)[(u e^{-2x0} + e^{2x0}/u)/2 + cosh 2x0] f = 0",
                                derived, "u = exp(2 i Theta)"));
    r.odes.push_back(classified("u-printed", "u",
                                "4(u+1)u[u f'' + f'] - 2i u(u-1) f' + (ak)^2/2 (u+1)[u e^{-2x0} + e^{2x0}/u + cosh 2x0] f = 0",
                                printed, "u = exp(2 i Theta), as printed"));

    const std::vector<heun::SignatureEntry> want = {irr(0.0), reg(-1.0), irr_inf()};
    if (coupling != 0.0) {
        const bool ok = signature_is(r.odes[1].singularities, want) && signature_is(r.odes[2].singularities, want);
        r.claims.push_back({"the u-equation has signature {0: irregular, -1: regular, inf: irregular}",
                            "This equation has irregular singularities at $u=0$ and $\\infty $ and a regular singularity at $u=-1$.",
                            ok, "derived " + signature_text(r.odes[1].singularities) + ", printed " +
                                    signature_text(r.odes[2].singularities)});
    } else {
        r.degenerations.push_back("a k = 0: f'' + tan(Theta) f' = 0, solved by f = sin Theta; u-equation " +
                                  signature_text(r.odes[1].singularities));
    }
    if (const auto* m1 = point_at(r.odes[1].singularities, Location::at(-1.0)); m1 && m1->exponents)
        r.data["exponents_at_minus_one"] = Json::array({complex_json(m1->exponents->first), complex_json(m1->exponents->second)});

    // Horizontal Theta line; it must keep clear of the tan poles on the real axis
    double shift = x0;
    if (x0 < 0.1) {
        shift = 0.1;
        r.notes.push_back("x0 < 0.1: the Theta line is moved to Im Theta = -0.1 to clear the poles of tan");
    }
    const auto thetas = theta_samples(shift, phi);
    const auto field = theta_field(coupling, x0);

    const Transport t1 = transport(field, derived, thetas, {thetas[0], 1.0, 0.0});
    const Transport t2 = transport(field, derived, thetas, {thetas[0], 0.0, 1.0});
    const double mismatch = std::max(transport_mismatch(t1), transport_mismatch(t2));
    r.residuals.push_back({"Theta and u integrations at 65 matching points", mismatch, 1e-6});

    // u -> Theta round trip: map the u end state back and integrate the Theta equation in reverse
    double round_trip = 0;
    for (const auto* t : {&t1, &t2}) {
        engine::ComplexPath back;
        for (auto it = thetas.rbegin(); it != thetas.rend(); ++it)
            back.vertices.push_back(*it);
        const auto end = engine::integrate_path(field, to_theta(t->u.back(), thetas.back()), back, kTol);
        const auto& start = t->theta.front();
        round_trip = std::max(round_trip, std::max(std::abs(end.w - start.w), std::abs(end.dw - start.dw)));
    }
    r.residuals.push_back({"Theta -> u -> Theta round trip", round_trip, 1e-8});

    const Transport tp = transport(field, printed, thetas, {thetas[0], 0.0, 1.0});
    r.residuals.push_back({"printed u-form against the Theta equation", transport_mismatch(tp), std::nullopt});

    // One loop of u around 0 and -1 is half a period in Theta
    const std::size_t half = kSamples / 2;
    std::array<std::array<cplx, 2>, 2> loop{};
    loop[0] = {t1.u[half].w, t2.u[half].w};
    loop[1] = {t1.u[half].dw, t2.u[half].dw};
    const cplx u0 = t1.u[0].z;
    std::array<std::array<cplx, 2>, 2> monodromy{};
    // columns are the images of (1, 0) and (0, 1/(2 i u0)) in (f, f_u); rescale to the unit basis
    const cplx scale = 2.0 * I * u0;
    monodromy[0] = {loop[0][0], loop[0][1] * scale};
    monodromy[1] = {loop[1][0], loop[1][1] * scale};
    const auto ev = eigenvalues(monodromy);
    const cplx det = monodromy[0][0] * monodromy[1][1] - monodromy[0][1] * monodromy[1][0];
    r.residuals.push_back({"monodromy determinant against exp(-loop integral of p) = -1", std::abs(det + 1.0), 1e-8});
    r.data["monodromy"] = Json::array({Json::array({complex_json(monodromy[0][0]), complex_json(monodromy[0][1])}),
                                       Json::array({complex_json(monodromy[1][0]), complex_json(monodromy[1][1])})});
    r.data["monodromy_eigenvalues"] = Json::array({complex_json(ev[0]), complex_json(ev[1])});
    r.data["u_loop_radius"] = std::exp(2.0 * shift);

    // Zero-coupling limit: f = sin Theta
    {
        const auto free = theta_field(0.0, x0);
        double worst = 0;
        engine::SolutionState s{thetas[0], std::sin(thetas[0]), std::cos(thetas[0])};
        for (std::size_t j = 1; j < thetas.size(); ++j) {
            s = engine::integrate_path(free, s, {{thetas[j - 1], thetas[j]}}, kTol);
            worst = std::max(worst, std::abs(s.w - std::sin(thetas[j])) / std::max(1.0, std::abs(std::sin(thetas[j]))));
        }
        r.residuals.push_back({"a k = 0: integrated solution against sin Theta", worst, 1e-10});
    }

    r.notes.push_back("the printed u-form carries -2 i u (u - 1) where the substitution gives -2 u (u - 1), and omits the 1/2 on "
                      "u e^{-2x0} + e^{2x0}/u; transport uses the derived form, classification is checked on both");
    return r;
}

} // namespace heunkit::scenarios
