#include "heunkit/scenarios.hpp"

#include "heunkit/error.hpp"
#include "support.hpp"

#include <cmath>
#include <numbers>

namespace heunkit::scenarios {

using namespace detail;
using odekit::Polynomial;

namespace {

constexpr double pi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};

// S_uu + S_u/u + (q (u^2 + 1) - a u) / (4 u^3) S = 0, from u = exp(2 i Theta)
LinearODE algebraic_angular(cplx a, cplx q)
{
    return odekit::from_polynomial_form(Polynomial::monomial(4.0, 3), Polynomial::monomial(4.0, 2),
                                        Polynomial{q, -a, q});
}

mathieu::MathieuValue periodic_solution(cplx a, double q, mathieu::Parity parity, cplx z)
{
    return parity == mathieu::Parity::even ? mathieu::mathieu_c(a, q, z) : mathieu::mathieu_s(a, q, z);
}

double periodicity_defect(cplx a, double q, mathieu::Parity parity)
{
    const auto start = periodic_solution(a, q, parity, 0.0);
    const auto end = periodic_solution(a, q, parity, 2.0 * pi);
    return std::abs(end.w - start.w) + std::abs(end.dw - start.dw);
}

void double_confluent_claim(ScenarioReport& r, const OdeEntry& algebraic)
{
    const bool ok = signature_is(algebraic.singularities, {irr(0.0), irr_inf()});
    r.claims.push_back({"the Mathieu equation in u = exp(2 i Theta) has the double-confluent signature {0: irregular, inf: irregular}",
                        "Mathieu function is a related but much more studied function with singularity structure sme as the double confluent Heun equation.",
                        ok, signature_text(algebraic.singularities)});
}

} // namespace

ScenarioReport nutku_angular(double a, double k, int n, mathieu::Parity parity, double phi)
{
    if (!(a > 0.0) || !(k >= 0.0))
        throw Error(ErrorKind::InvalidArgument, "need a > 0 and k >= 0");
    ScenarioReport r;
    r.id = "nutku-angular";
    r.inputs = {{"a", a}, {"k", k}, {"n", double(n)}, {"phi", phi}};
    r.settings = {{"parity", mathieu::to_string(parity)}};

    const double q = a * a * k * k / 4.0;
    const auto cv = mathieu::characteristic_value(n, q, parity);
    const cplx sep = cv.value;

    r.odes.push_back({"angular", "Theta", "S'' - (a^2 k^2 / 2 cos 2 Theta - n) S = 0, Theta = theta - phi", std::nullopt, {}, {}});
    r.odes.push_back(classified("angular-algebraic", "u", "S_uu + S_u/u - (n u - q (u^2 + 1)) / (4 u^3) S = 0",
                                algebraic_angular(sep, q), "u = exp(2 i Theta)"));

    double worst = 0;
    for (int j = 0; j < 24; ++j) {
        const double th = 2.0 * pi * j / 24.0;
        const auto s = mathieu::angular_mathieu(cv, th);
        const cplx spp = central_diff([&](cplx x) { return mathieu::angular_mathieu(cv, x).dw; }, th);
        const cplx pot = (2.0 * q * std::cos(2.0 * th) - sep) * s.w;
        worst = std::max(worst, relative_residual(spp - pot, {spp, pot}));
    }
    const double bound = 1e-8;
    r.residuals.push_back({"angular equation on 24 points", worst, bound});
    r.claims.push_back({"the angular equation is solved by the periodic Mathieu function with q = a^2 k^2 / 4",
                        "This equation is of the Mathieu type and the solution can be written immediately.",
                        worst <= bound, "residual " + fmt(worst)});

    const double quantised = periodicity_defect(sep, q, parity);
    const double shifted = periodicity_defect(sep + 0.1, q, parity);
    r.residuals.push_back({"2 pi periodicity defect at the characteristic value", quantised, 1e-8});
    r.residuals.push_back({"2 pi periodicity defect at the characteristic value + 0.1", shifted, std::nullopt});
    r.claims.push_back({"periodicity forces the separation constant onto the characteristic values",
                        "This fact forces $n$, the separation constant, to take discrete values.",
                        quantised <= 1e-8 && shifted > 1e-4,
                        "defect " + fmt(quantised) + " at n, " + fmt(shifted) + " at n + 0.1"});

    const int n_max = std::max(4, n);
    const auto gram = mathieu::orthogonality_matrix(q, n_max);
    double off = 0, diag = 0;
    for (std::size_t i = 0; i < gram.entries.size(); ++i)
        for (std::size_t j = 0; j < gram.entries.size(); ++j) {
            if (i == j)
                diag = std::max(diag, std::abs(gram.entries[i][j] - pi));
            else
                off = std::max(off, std::abs(gram.entries[i][j]));
        }
    r.residuals.push_back({"largest off-diagonal Gram entry over [0, 2 pi]", off, 1e-10});
    r.residuals.push_back({"largest diagonal Gram deviation from pi", diag, 1e-10});
    r.claims.push_back({"angular functions with different orders are orthogonal over [0, 2 pi]",
                        "It is known that the angular Mathieu functions satisfy an orthogonality relation such that functions with different $n$ values are perpendicular to each other.",
                        off <= 1e-10, "orders up to " + std::to_string(n_max) + ", off-diagonal " + fmt(off)});

    double_confluent_claim(r, r.odes[1]);
    if (k == 0.0)
        r.degenerations.push_back("k = 0: q = 0, S is trigonometric and n = order^2");

    r.data["q"] = q;
    r.data["separation_constant"] = complex_json(sep);
    r.data["truncation"] = cv.truncation;
    return r;
}

ScenarioReport nutku_radial(double a, double k, double Lambda, int n, mathieu::Parity parity, NutkuRadialOptions options)
{
    if (!(a > 0.0) || !(k >= 0.0))
        throw Error(ErrorKind::InvalidArgument, "need a > 0 and k >= 0");
    ScenarioReport r;
    r.id = "nutku-radial";
    r.inputs = {{"a", a}, {"k", k}, {"Lambda", Lambda}, {"n", double(n)}};
    r.settings = {{"parity", mathieu::to_string(parity)},
                  {"printed_grouping", options.printed_grouping ? "true" : "false"},
                  {"printed_sign", options.printed_sign ? "true" : "false"}};

    const double q_angular = a * a * k * k / 4.0;
    const auto cv = mathieu::characteristic_value(n, q_angular, parity);
    const cplx sep = cv.value;
    const double sign = options.printed_sign ? 1.0 : -1.0;

    // R'' - [A cosh 2x + B sinh 2x] R + sign n R = 0
    const double A = a * a * k * k / 2.0;
    const double B = options.printed_grouping ? Lambda * Lambda : a * a * Lambda * Lambda / 2.0;
    if (std::abs(std::abs(A) - std::abs(B)) <= 1e-14 * std::max(std::abs(A), 1.0))
        throw Error(ErrorKind::DegenerateShift, "|A| = |B|: A cosh 2x + B sinh 2x is a pure exponential");
    // A cosh 2x + B sinh 2x = C cosh 2(x + shift); with zeta = i (x + shift) this is
    // Y'' + (-sign n + C cos 2 zeta) Y = 0
    // C is taken from the shift rather than from sqrt(A^2 - B^2) so that C cosh 2b = A and
    // C sinh 2b = B hold on the same branch when |B| > |A|.
    const cplx shift = A == 0.0 ? cplx(0.0, pi / 4.0) : 0.5 * std::atanh(cplx(B / A));
    const cplx C = std::abs(A) >= std::abs(B) ? A / std::cosh(2.0 * shift) : B / std::sinh(2.0 * shift);
    const cplx a_m = -sign * sep;
    const cplx q_m = -C / 2.0;

    r.odes.push_back({"radial", "x", std::string("R'' - [A cosh 2x + B sinh 2x] R ") + (options.printed_sign ? "+" : "-") +
                                          " n R = 0",
                      std::nullopt, {}, {}});
    // v = exp(2x): R_vv + R_v/v - ((A + B) v^2 / 2 - sign n v + (A - B)/2) / (4 v^3) R = 0
    r.odes.push_back(classified("radial-algebraic", "v",
                                std::string("R_vv + R_v/v - ((A+B) v^2/2 ") + (options.printed_sign ? "-" : "+") +
                                    " n v + (A-B)/2) / (4 v^3) R = 0",
                                odekit::from_polynomial_form(Polynomial::monomial(4.0, 3), Polynomial::monomial(4.0, 2),
                                                             Polynomial{-(A - B) / 2.0, sign * sep, -(A + B) / 2.0}),
                                "v = exp(2x)"));
    r.odes.push_back(classified("mathieu-algebraic", "u", "Y_uu + Y_u/u - (a u - q (u^2 + 1)) / (4 u^3) Y = 0",
                                algebraic_angular(a_m, q_m), "u = exp(2 i zeta)"));

    // Radial solution through the shifted Mathieu function; dR/dx = i Y'(zeta)
    auto Y = [&](cplx zeta) {
        return parity == mathieu::Parity::even ? mathieu::mathieu_c(a_m, q_m, zeta) : mathieu::mathieu_s(a_m, q_m, zeta);
    };
    auto R = [&](cplx x) { return Y(I * (x + shift)).w; };
    auto dR = [&](cplx x) { return I * Y(I * (x + shift)).dw; };

    double worst_r = 0;
    for (int i = 0; i <= 10; ++i) {
        const double x = 0.2 * i;
        const cplx rpp = central_diff(dR, x);
        const cplx pot = (A * std::cosh(2 * x) + B * std::sinh(2 * x)) * R(x);
        worst_r = std::max(worst_r, relative_residual(rpp - pot + sign * sep * R(x), {rpp, pot, sep * R(x)}));
    }
    const double radial_bound = Lambda == 0.0 ? 1e-8 : 1e-6;
    r.residuals.push_back({"radial equation via Mathieu at i (x + b) on [0, 2]", worst_r, radial_bound});

    // Product with the angular factor against the separable field equation
    double worst_pde = 0;
    for (int i = 0; i < 6; ++i) {
        const double x = 0.15 * (i + 1);
        const cplx rv = R(x);
        const cplx rpp = central_diff(dR, x);
        for (int j = 0; j < 8; ++j) {
            const double th = 2.0 * pi * j / 8.0 + 0.1;
            const auto s = mathieu::angular_mathieu(cv, th);
            const cplx spp = central_diff([&](cplx t) { return mathieu::angular_mathieu(cv, t).dw; }, th);
            const cplx pot = a * a / 2.0 * (k * k * (-std::cos(2 * th) - std::cosh(2 * x)) - Lambda * Lambda * std::sinh(2 * x));
            const cplx res = rpp * s.w + rv * spp + pot * rv * s.w;
            worst_pde = std::max(worst_pde, relative_residual(res, {rpp * s.w, rv * spp, pot * rv * s.w}));
        }
    }
    const bool derived = !options.printed_grouping && !options.printed_sign;
    r.residuals.push_back({"R S against the field equation", worst_pde, derived ? std::optional<double>(1e-6) : std::nullopt});
    r.claims.push_back({"the radial equation is of double-confluent type and reduces to a Mathieu equation at i (x + b)",
                        "This solution is of the double confluent form", worst_r <= radial_bound &&
                            signature_is(r.odes[1].singularities, {irr(0.0), irr_inf()}),
                        "v-form " + signature_text(r.odes[1].singularities) + ", Mathieu residual " + fmt(worst_r)});
    double_confluent_claim(r, r.odes[2]);

    if (Lambda == 0.0 && !options.printed_sign) {
        // R(x) started from the angular data at pi/2 must equal S(pi/2 + i x)
        const auto s0 = mathieu::angular_mathieu(cv, pi / 2.0);
        double worst = 0;
        for (int i = 0; i < 10; ++i) {
            const double x = 0.1 * (i + 1);
            const cplx y = s0.w * mathieu::mathieu_c(a_m, q_m, I * x).w + s0.dw * mathieu::mathieu_s(a_m, q_m, I * x).w;
            const cplx want = mathieu::angular_mathieu(cv, pi / 2.0 + I * x).w;
            worst = std::max(worst, std::abs(y - want) / std::max(1.0, std::abs(want)));
        }
        r.residuals.push_back({"Lambda = 0: R(x) against S(pi/2 + i x)", worst, 1e-8});
        r.degenerations.push_back("Lambda = 0: b = 0 and the radial factor is the angular function continued to pi/2 + i x");
    }
    if (!derived)
        r.notes.push_back("printed reading selected: the product R S is not expected to solve the field equation");

    r.data["A"] = A;
    r.data["B"] = B;
    r.data["C"] = complex_json(C);
    r.data["b"] = complex_json(shift);
    r.data["A6"] = complex_json(q_m);
    r.data["mathieu_a"] = complex_json(a_m);
    r.data["separation_constant"] = complex_json(sep);
    return r;
}

} // namespace heunkit::scenarios
