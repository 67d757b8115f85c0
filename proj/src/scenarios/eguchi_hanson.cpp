#include "heunkit/scenarios.hpp"

#include "heunkit/error.hpp"
#include "heunkit/hypergeometric.hpp"
#include "support.hpp"

#include <cmath>
#include <utility>

namespace heunkit::scenarios {

using namespace detail;
using odekit::Polynomial;

namespace {

// Eighth-order central differences: the closed form has steep prefactors near the ends of the
// sample range and the Gauss series near z = 1 carries ~1e-14 relative noise, so a
// fourth-order stencil cannot reach the residual bound at any step.
constexpr double kStep = 1e-2;

template <class F>
std::pair<cplx, cplx> derivatives8(const F& f, double x)
{
    static constexpr double d1[] = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
    static constexpr double d2[] = {8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0, -1.0 / 560.0};
    const cplx f0 = f(x);
    cplx first{}, second = -205.0 / 72.0 * f0;
    for (int j = 1; j <= 4; ++j) {
        const cplx fp = f(x + j * kStep), fm = f(x - j * kStep);
        first += d1[j - 1] * (fp - fm);
        second += d2[j - 1] * (fp + fm);
    }
    return {first / kStep, second / (kStep * kStep)};
}

double frobenius_residual(const LinearODE& ode, cplx center, cplx exponent, std::initializer_list<cplx> points)
{
    const auto s = heun::frobenius_series(ode, center, exponent, 120);
    double worst = 0;
    for (cplx z : points) {
        const auto j = series_jet(s, z);
        worst = std::max(worst, odekit::ode_residual(ode, std::vector<odekit::ResidualSample>{{z, j.w, j.dw, j.d2w}}));
    }
    return worst;
}

} // namespace

ScenarioReport eguchi_hanson_radial(cplx k, cplx a, cplx m, cplx lambda)
{
    if (!(a.real() > 0.0) || a.imag() != 0.0)
        throw Error(ErrorKind::InvalidArgument, "need real a > 0");
    ScenarioReport r;
    r.id = "eguchi-hanson-radial";
    r.inputs = {{"k", k}, {"a", a}, {"m", m}, {"lambda", lambda}};

    // w'' + (1/(u-1) + 1/u) w' + (k^2 a^2 / 4 (1/(u-1) + 1/u) + m^2 / (4 u^2 (1-u)^2)) w = 0, times u^2 (u-1)^2
    const Polynomial uu1{0.0, -1.0, 1.0};     // u (u - 1)
    const Polynomial sum{-1.0, 2.0};          // 2u - 1
    const cplx coupling = k * k * a * a / 4.0;
    const LinearODE radial = odekit::from_polynomial_form(uu1 * uu1, uu1 * sum, uu1 * sum * coupling + Polynomial{m * m / 4.0});
    r.odes.push_back(classified("radial", "u",
                                "w'' + (1/(u-1) + 1/u) w' + (k^2 a^2/4 (1/(u-1) + 1/u) + m^2/(4 u^2 (1-u)^2)) w = 0",
                                radial, "u = (a^2 + r^2) / (2 a^2), operator divided by 4"));

    // Gauss equation at generic parameters for the contrast
    const cplx ga = 0.3, gb = 0.7, gc = 1.2;
    const LinearODE gauss = odekit::from_polynomial_form(Polynomial{0.0, 1.0, -1.0}, Polynomial{gc, -(ga + gb + 1.0)},
                                                         Polynomial{-ga * gb});
    r.odes.push_back(classified("hypergeometric", "z", "z (1-z) w'' + (c - (a+b+1) z) w' - a b w = 0 at (0.3, 0.7, 1.2)", gauss));

    const auto& pts = r.odes[0].singularities;
    if (coupling != cplx{}) {
        r.claims.push_back({"the radial operator has the confluent Heun signature {0: regular, 1: regular, inf: irregular}",
                            "This operator has two regular singularities at zero and one, and an irregular singularity at infinity, the singularity structure of the confluent Heun equation.",
                            signature_is(pts, {reg(0.0), reg(1.0), irr_inf()}), signature_text(pts)});
        const bool gauss_ok = signature_is(r.odes[1].singularities, {reg(0.0), reg(1.0), reg_inf()});
        r.claims.push_back({"the Gauss equation has three regular points instead, so the signatures differ",
                            "This is different from the hypergeometric equation, which has regular singularities at zero, one and infinity.",
                            gauss_ok && !signature_is(pts, {reg(0.0), reg(1.0), reg_inf()}),
                            signature_text(r.odes[1].singularities)});
    } else {
        const auto* inf = point_at(pts, Location::infinity());
        r.degenerations.push_back("k a = 0: infinity is " + std::string(odekit::to_string(inf ? inf->kind : PointKind::ordinary)) +
                                  ", the operator is hypergeometric");
    }

    Json exps = Json::object();
    for (cplx c : {cplx(0.0), cplx(1.0)}) {
        const auto* sp = point_at(pts, Location::at(c));
        if (!sp || !sp->exponents)
            continue;
        exps[c == 0.0 ? "0" : "1"] = Json::array({complex_json(sp->exponents->first), complex_json(sp->exponents->second)});
    }
    r.data["exponents"] = exps;

    const auto* zero = point_at(pts, Location::at(0.0));
    if (zero && zero->exponents) {
        const cplx e1 = zero->exponents->first, e2 = zero->exponents->second;
        const std::initializer_list<cplx> samples = {cplx(0.5), cplx(0.1, 0.45), cplx(-0.4, -0.2)};
        r.residuals.push_back({"Frobenius solution at 0, exponent " + fmt(e1), frobenius_residual(radial, 0.0, e1, samples), 1e-10});
        if (zero->exponents->logarithmic) {
            r.degenerations.push_back("exponents at 0 differ by an integer (" + fmt(e1) + ", " + fmt(e2) +
                                      "): second solution is logarithmic");
        } else {
            r.residuals.push_back({"Frobenius solution at 0, exponent " + fmt(e2), frobenius_residual(radial, 0.0, e2, samples), 1e-10});
        }
    }
    if (m == cplx{})
        r.degenerations.push_back("m = 0: the double-pole terms vanish");
    r.notes.push_back("lambda does not enter the printed radial operator; it is carried for reference only");
    return r;
}

ScenarioReport eguchi_hanson_angular(cplx lambda, cplx m, cplx n)
{
    for (cplx c : {1.0 - n - m, 1.0 + n + m})
        if (reference::is_pole_parameter(c))
            throw Error(ErrorKind::ParameterPole, "hypergeometric lower parameter " + fmt(c) + " is a non-positive integer");
    ScenarioReport r;
    r.id = "eguchi-hanson-angular";
    r.inputs = {{"lambda", lambda}, {"m", m}, {"n", n}};

    auto cot_coeff = [](cplx t) { return std::cos(t) / std::sin(t); };
    auto potential = [&](cplx t) {
        const cplx s = std::sin(t);
        return (2.0 * m * n * std::cos(t) - m * m - n * n) / (s * s) + lambda / 4.0;
    };
    r.odes.push_back({"angular", "theta",
                      "g'' + cot(theta) g' + ((2 m n cos theta - m^2 - n^2) / sin^2 theta + lambda/4) g = 0",
                      std::nullopt, {}, {}});

    // t = cos theta: (1 - t^2)^2 g'' - 2 t (1 - t^2) g' + (lambda/4 (1 - t^2) + 2 m n t - m^2 - n^2) g = 0
    const Polynomial w{1.0, 0.0, -1.0};
    const LinearODE algebraic = odekit::from_polynomial_form(
        w * w, Polynomial{0.0, -2.0} * w, w * (lambda / 4.0) + Polynomial{-m * m - n * n, 2.0 * m * n});
    r.odes.push_back(classified("angular-algebraic", "t",
                                "(1-t^2) g'' - 2 t g' + (lambda/4 + (2 m n t - m^2 - n^2)/(1-t^2)) g = 0", algebraic,
                                "t = cos theta"));

    // Closed form exactly as printed, both branches separately
    const cplx s = std::sqrt(lambda + 1.0);
    auto branch = [&](int which, cplx th) -> cplx {
        const cplx c = std::cos(th);
        const cplx x = c / 2.0 - 0.5;
        const cplx y = 2.0 * c + 2.0;
        const cplx z = c / 2.0 + 0.5;
        const cplx pre = std::sqrt(2.0 - 2.0 * c) * std::pow(x, m / 2.0) * std::pow(x, -n / 2.0) / std::sin(th);
        if (which == 0)
            return pre * std::pow(y, 0.5 - n / 2.0 - m / 2.0) *
                   reference::gauss_2f1(-n + s / 2.0 + 0.5, -n - s / 2.0 + 0.5, 1.0 - n - m, z);
        return pre * std::pow(y, 0.5 + n / 2.0 + m / 2.0) *
               reference::gauss_2f1(m + s / 2.0 + 0.5, m - s / 2.0 + 0.5, 1.0 + n + m, z);
    };
    auto candidate = [&](cplx th) { return branch(0, th) + branch(1, th); };

    double worst = 0;
    for (int i = 0; i < 12; ++i) {
        const double th = 0.3 + 2.5 * i / 11.0;
        const cplx g = candidate(th);
        const auto [d1, d2] = derivatives8(candidate, th);
        const cplx res = d2 + cot_coeff(th) * d1 + potential(th) * g;
        worst = std::max(worst, relative_residual(res, {d2, cot_coeff(th) * d1, potential(th) * g}));
    }
    r.residuals.push_back({"printed closed form on theta in [0.3, 2.8]", worst, 1e-8});
    const bool structural = signature_is(r.odes[1].singularities, {reg(-1.0), reg(1.0), reg_inf()});
    r.claims.push_back({"the angular equation in cos theta is of Gauss type and the printed closed form solves it",
                        "The angular solution is in terms of hypergeometric functions.", structural && worst <= 1e-8,
                        signature_text(r.odes[1].singularities) + ", closed-form residual " + fmt(worst)});

    const double mid = std::acos(0.0);
    auto b0 = [&](cplx t) { return branch(0, t); };
    auto b1 = [&](cplx t) { return branch(1, t); };
    const cplx wr = b0(mid) * derivatives8(b1, mid).first - derivatives8(b0, mid).first * b1(mid);
    r.residuals.push_back({"|Wronskian| of the two printed branches at pi/2", std::abs(wr), std::nullopt});
    r.data["branch_wronskian"] = complex_json(wr);
    Json samples = Json::array();
    for (double th : {0.5, 1.0, 1.5, 2.0, 2.5})
        samples.push_back({{"theta", th}, {"g", complex_json(candidate(th))}});
    r.data["closed_form_samples"] = samples;
    r.data["sqrt_lambda_plus_1"] = complex_json(s);
    if (n + m == cplx{})
        r.degenerations.push_back("n + m = 0: the two printed branches coincide and span only one solution");
    if (m == cplx{} && n == cplx{})
        r.degenerations.push_back("m = n = 0: Legendre equation in cos theta, candidate is 4 P_nu(-cos theta) with (2 nu + 1)^2 = lambda + 1");
    return r;
}

} // namespace heunkit::scenarios
