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

// p = 1/u, q = (h2 u^2 + (2 h2 - 4 b) u + h2) / (16 u^3): both the angular equation in u = e^{2 i theta}
// and the radial one in v = e^{2 mu} land here.
LinearODE exponential_mathieu_form(cplx b, cplx h2)
{
    return odekit::from_polynomial_form(Polynomial::monomial(16.0, 3), Polynomial::monomial(16.0, 2),
                                        Polynomial{h2, 2.0 * h2 - 4.0 * b, h2});
}

} // namespace

ScenarioReport helmholtz_elliptic(double a, double k, int n, mathieu::Parity parity)
{
    if (!(a > 0.0) || !(k >= 0.0))
        throw Error(ErrorKind::InvalidArgument, "need a > 0 and k >= 0");
    ScenarioReport r;
    r.id = "helmholtz-elliptic";
    r.inputs = {{"a", a}, {"k", k}, {"n", double(n)}};
    r.settings = {{"parity", mathieu::to_string(parity)}};

    const double h2 = a * a * k * k / 4.0;
    const double q = h2 / 4.0;
    const auto cv = mathieu::characteristic_value(n, q, parity);
    const cplx b = mathieu::to_trigonometric_form(cv.value, q).b;

    r.odes.push_back({"angular", "theta", "H'' + (b - h^2 cos^2 theta) H = 0", std::nullopt, {}, {}});
    r.odes.push_back({"radial", "mu", "-M'' + (b - h^2 cosh^2 mu) M = 0", std::nullopt, {}, {}});
    r.odes.push_back(classified("angular-algebraic", "u", "H_uu + H_u/u - (4 b u - h^2 (u+1)^2) / (16 u^3) H = 0",
                                exponential_mathieu_form(b, h2), "u = exp(2 i theta); also v = exp(2 mu) for the radial equation"));

    auto H = [&](cplx t) { return mathieu::angular_mathieu(cv, t); };
    auto M = [&](cplx m) { return mathieu::modified_mathieu(cv, m.real()); };

    double worst_h = 0, worst_m = 0, worst_2d = 0, worst_split = 0;
    for (int i = 0; i < 20; ++i) {
        const double mu = 0.1 * (i + 0.5);
        const auto mv = M(mu);
        const cplx m2 = central_diff([&](cplx x) { return M(x).dw; }, mu);
        const cplx rm = -m2 + (b - h2 * std::cosh(mu) * std::cosh(mu)) * mv.w;
        worst_m = std::max(worst_m, relative_residual(rm, {m2, (b - h2 * std::cosh(mu) * std::cosh(mu)) * mv.w}));
        for (int j = 0; j < 20; ++j) {
            const double th = 2.0 * pi * j / 20.0;
            const auto hv = H(th);
            const cplx hpp = central_diff([&](cplx x) { return H(x).dw; }, th);
            const cplx rh = hpp + (b - h2 * std::cos(th) * std::cos(th)) * hv.w;
            if (i == 0)
                worst_h = std::max(worst_h, relative_residual(rh, {hpp, (b - h2 * std::cos(th) * std::cos(th)) * hv.w}));
            const cplx coupling = h2 * (std::cosh(mu) * std::cosh(mu) - std::cos(th) * std::cos(th));
            const cplx r2 = hv.w * m2 + mv.w * hpp + coupling * hv.w * mv.w;
            worst_2d = std::max(worst_2d, relative_residual(r2, {hv.w * m2, mv.w * hpp, coupling * hv.w * mv.w}));
            const double split = std::abs(hv.w) * std::abs(rm) + std::abs(mv.w) * std::abs(rh);
            worst_split = std::max(worst_split, std::abs(r2) / (10.0 * split + 1e-300));
        }
    }
    const double bound = k == 0.0 ? 1e-10 : 1e-6;
    r.residuals.push_back({"angular", worst_h, bound});
    r.residuals.push_back({"radial", worst_m, bound});
    r.residuals.push_back({"product 20x20 grid", worst_2d, bound});
    r.residuals.push_back({"product / (10 x separated residuals)", worst_split, 1.0});

    const bool ok = worst_h <= bound && worst_m <= bound && worst_2d <= bound;
    r.claims.push_back({"separates into an angular and a radial equation",
                        "which separates into two equations", worst_2d <= bound,
                        "H(theta) M(mu) solves the elliptic-coordinate equation on a 20x20 grid"});
    r.claims.push_back({"solutions are Mathieu and modified Mathieu functions",
                        "The solutions to these two equations can be represented as Mathieu and modified Mathieu functions.",
                        ok, "angular factor is the periodic Mathieu function, radial factor the same series at i mu"});
    if (k == 0.0)
        r.degenerations.push_back("k = 0: Laplace limit, H = trigonometric and M = hyperbolic modes");

    r.data["q"] = q;
    r.data["h2"] = h2;
    r.data["characteristic_value"] = complex_json(cv.value);
    r.data["b"] = complex_json(b);
    r.data["truncation"] = cv.truncation;
    return r;
}

ScenarioReport stark_separation(cplx E, cplx F, cplx m, cplx beta1)
{
    ScenarioReport r;
    r.id = "stark";
    const cplx beta2 = 1.0 - beta1;
    r.inputs = {{"E", E}, {"F", F}, {"m", m}, {"beta1", beta1}};

    // xi^2 V'' + (E/2 xi^2 + beta xi + F/4 xi^3 + (1 - m^2)/4) V = 0
    auto separated = [&](cplx beta) {
        return odekit::from_polynomial_form(Polynomial::monomial(1.0, 2), Polynomial{},
                                            Polynomial{(1.0 - m * m) / 4.0, beta, E / 2.0, F / 4.0});
    };
    r.odes.push_back(classified("xi", "xi", "V'' + (E/2 + beta1/xi + F xi/4 + (1-m^2)/(4 xi^2)) V = 0", separated(beta1)));
    r.odes.push_back(classified("eta", "eta", "U'' + (E/2 + beta2/eta + F eta/4 + (1-m^2)/(4 eta^2)) U = 0", separated(beta2)));

    // xi = s^2: V_ss - V_s/s + (2 E s^2 + 4 beta + F s^4 + (1 - m^2)/s^2) V = 0
    const LinearODE substituted = odekit::from_polynomial_form(
        Polynomial::monomial(1.0, 2), Polynomial::monomial(-1.0, 1),
        Polynomial{1.0 - m * m, 0.0, 4.0 * beta1, 0.0, 2.0 * E, 0.0, F});
    r.odes.push_back(classified("xi-quadratic", "s",
                                "V_ss - V_s/s + (2 E s^2 + 4 beta1 + F s^4 + (1-m^2)/s^2) V = 0", substituted,
                                "xi = s^2"));

    const std::vector<heun::SignatureEntry> bicon = {reg(0.0), irr_inf()};
    const bool xi_ok = signature_is(r.odes[0].singularities, bicon);
    const bool eta_ok = signature_is(r.odes[1].singularities, bicon);
    r.claims.push_back({"both separated equations have the biconfluent signature {0: regular, inf: irregular}",
                        "We note that these equations are of the biconfluent Heun form.", xi_ok && eta_ok,
                        "xi " + signature_text(r.odes[0].singularities) + ", eta " +
                            signature_text(r.odes[1].singularities)});

    const auto* inf_before = point_at(r.odes[0].singularities, Location::infinity());
    const auto* inf_after = point_at(r.odes[2].singularities, Location::infinity());
    const auto bicon_form = heun::build_confluent_form(
        {heun::ConfluentKind::biconfluent, {{"A0", 1.0}, {"A1", 1.0}, {"A2", 1.0}, {"A3", 1.0}}});
    const auto* inf_bicon = point_at(odekit::classify_singularities(bicon_form), Location::infinity());
    const bool signature_match = signature_is(r.odes[2].singularities, bicon);
    const bool rank_match = inf_after && inf_bicon && inf_after->rank == inf_bicon->rank;
    r.data["rank_at_infinity"] = inf_before ? odekit::to_string(inf_before->rank) : "0";
    r.data["rank_after_substitution"] = inf_after ? odekit::to_string(inf_after->rank) : "0";
    r.data["biconfluent_rank"] = odekit::to_string(inf_bicon->rank);
    r.data["substituted_signature_match"] = signature_match;
    r.data["substituted_rank_match"] = rank_match;
    r.data["beta2"] = complex_json(beta2);
    if (const auto* zero = point_at(r.odes[0].singularities, Location::at(0.0)); zero && zero->exponents)
        r.data["exponents_at_zero"] = Json::array({complex_json(zero->exponents->first),
                                                   complex_json(zero->exponents->second)});
    if (!rank_match)
        r.notes.push_back("after xi = s^2 the rank at infinity is " + r.data["rank_after_substitution"].get<std::string>() +
                          ", the biconfluent form has " + r.data["biconfluent_rank"].get<std::string>() +
                          "; only the singularity signature carries over");

    if (F == cplx{})
        r.degenerations.push_back("F = 0: Coulomb form, rank at infinity " +
                                  r.data["rank_at_infinity"].get<std::string>());
    if (std::abs(1.0 - m * m) == 0.0)
        r.degenerations.push_back("m^2 = 1: the 1/xi^2 term vanishes, exponents at 0 are {0, 1}");

    // Frobenius solution about xi = 0 for the larger exponent
    const auto* zero = point_at(r.odes[0].singularities, Location::at(0.0));
    if (zero && zero->exponents) {
        const auto s = heun::frobenius_series(*r.odes[0].rational, 0.0, zero->exponents->first, 80);
        double worst = 0;
        for (cplx z : {cplx(0.3), cplx(0.5, 0.2), cplx(-0.4, 0.1)}) {
            const auto j = series_jet(s, z);
            worst = std::max(worst, odekit::ode_residual(*r.odes[0].rational,
                                                         std::vector<odekit::ResidualSample>{{z, j.w, j.dw, j.d2w}}));
        }
        r.residuals.push_back({"xi Frobenius solution at 0", worst, 1e-10});
    }
    return r;
}

ScenarioReport h2plus_separation(cplx lambda, cplx kappa, cplx mu, cplx m)
{
    ScenarioReport r;
    r.id = "h2plus";
    r.inputs = {{"lambda", lambda}, {"kappa", kappa}, {"mu", mu}, {"m", m}};

    // (1 - x^2) V'' - 2 x V' + (lambda^2 x^2 - kappa x + mu - m^2 / (1 - x^2)) V = 0, times (1 - x^2)
    auto spheroidal = [&](cplx kap) {
        const Polynomial w{1.0, 0.0, -1.0};
        const Polynomial bracket{mu, -kap, lambda * lambda};
        return odekit::from_polynomial_form(w * w, Polynomial{0.0, -2.0} * w, bracket * w - Polynomial{m * m});
    };
    const LinearODE xi = spheroidal(kappa);
    const LinearODE eta = spheroidal(0.0);
    r.odes.push_back(classified("xi", "xi", "((1-xi^2) V')' + (lambda^2 xi^2 - kappa xi - m^2/(1-xi^2) + mu) V = 0", xi));
    r.odes.push_back(classified("eta", "eta", "((1-eta^2) U')' + (lambda^2 eta^2 - m^2/(1-eta^2) + mu) U = 0", eta));

    const LinearODE xi_flat = spheroidal(0.0);
    const bool same = xi_flat.p.num() == eta.p.num() && xi_flat.p.den() == eta.p.den() &&
                      xi_flat.q.num() == eta.q.num() && xi_flat.q.den() == eta.q.den();
    r.residuals.push_back({"eta equation minus xi equation at kappa = 0", same ? 0.0 : 1.0, 0.0});

    const std::vector<heun::SignatureEntry> confluent = {reg(-1.0), reg(1.0), irr_inf()};
    if (lambda != cplx{}) {
        const bool ok = signature_is(r.odes[0].singularities, confluent) && signature_is(r.odes[1].singularities, confluent);
        r.claims.push_back({"both equations have the confluent Heun signature {-1: regular, 1: regular, inf: irregular}",
                            "Both equations are of the confluent Heun type.", ok,
                            "xi " + signature_text(r.odes[0].singularities) + ", eta " +
                                signature_text(r.odes[1].singularities)});
    } else {
        for (const auto& o : r.odes) {
            const auto* inf = point_at(o.singularities, Location::infinity());
            r.degenerations.push_back("lambda = 0: " + o.label + " equation has infinity " +
                                      std::string(odekit::to_string(inf->kind)) +
                                      (inf->kind == PointKind::irregular ? " (rank " + odekit::to_string(inf->rank) + ")" : ""));
        }
    }
    if (kappa == cplx{})
        r.degenerations.push_back("kappa = 0: the xi equation coincides with the eta equation");

    // Frobenius solution about xi = 1
    const auto* one = point_at(r.odes[0].singularities, Location::at(1.0));
    if (one && one->exponents) {
        const auto s = heun::frobenius_series(xi, 1.0, one->exponents->first, 120);
        double worst = 0;
        for (cplx z : {cplx(1.5), cplx(0.6, 0.3), cplx(1.2, -0.5)}) {
            const auto j = series_jet(s, z);
            worst = std::max(worst, odekit::ode_residual(xi, std::vector<odekit::ResidualSample>{{z, j.w, j.dw, j.d2w}}));
        }
        r.residuals.push_back({"xi Frobenius solution at 1", worst, 1e-10});
    }
    return r;
}

} // namespace heunkit::scenarios
