#include "heunkit/heun.hpp"

#include "heunkit/error.hpp"
#include "heunkit/ode_grammar.hpp"

#include <algorithm>
#include <cmath>

namespace heunkit::heun {

using odekit::Polynomial;
using odekit::RationalFunction;

namespace {

bool is_integer(cplx z, double tol = 1e-12)
{
    return std::abs(z.imag()) <= tol && std::abs(z.real() - std::round(z.real())) <= tol;
}

struct LocalCoefficients {
    cplx al1, al2, be0, be1, ga0;
};

LocalCoefficients local_coefficients(const GeneralHeunParams& p, Center center)
{
    const cplx a = p.a, b = p.b, c = p.c, d = p.d, e = p.e, f = p.f, q = p.q;
    switch (center) {
    case Center::zero:
        return {f, -(1.0 + f), c * f, -(c * (1.0 + f) + d * f + e), -q};
    case Center::one:
        return {1.0 - f, 2.0 - f, d * (1.0 - f), c * (1.0 - f) + d * (2.0 - f) + e, a * b - q};
    case Center::f:
        return {f * (f - 1.0), 2.0 * f - 1.0, e * f * (f - 1.0), c * (f - 1.0) + d * f + e * (2.0 * f - 1.0),
                a * b * f - q};
    }
    return {};
}

cplx branch_exponent(const GeneralHeunParams& p, Center center, Branch branch)
{
    if (branch == Branch::first)
        return 0.0;
    switch (center) {
    case Center::zero: return 1.0 - p.c;
    case Center::one: return 1.0 - p.d;
    case Center::f: return 1.0 - p.e;
    }
    return 0.0;
}

double nearest_other(const GeneralHeunParams& p, Center center)
{
    const cplx z0 = center_location(p, center);
    double r = std::numeric_limits<double>::infinity();
    for (Center other : {Center::zero, Center::one, Center::f})
        if (other != center)
            r = std::min(r, std::abs(center_location(p, other) - z0));
    return r;
}

} // namespace

void GeneralHeunParams::validate() const
{
    if (std::abs(a + b + 1.0 - (c + d + e)) > kFuchsTol)
        throw Error(ErrorKind::FuchsViolation, "a + b + 1 != c + d + e");
    if (std::abs(f) <= odekit::kPoleTol || std::abs(f - 1.0) <= odekit::kPoleTol)
        throw Error(ErrorKind::CollidingSingularities, "f coincides with 0 or 1");
}

LinearODE general_heun(const GeneralHeunParams& params)
{
    params.validate();
    const Polynomial z{0.0, 1.0};
    const Polynomial zm1{-1.0, 1.0};
    const Polynomial zmf{-params.f, 1.0};
    const Polynomial a2 = z * zm1 * zmf;
    const Polynomial a1 = params.c * zm1 * zmf + params.d * z * zmf + params.e * z * zm1;
    const Polynomial a0{-params.q, params.a * params.b};
    return odekit::from_polynomial_form(a2, a1, a0);
}

cplx center_location(const GeneralHeunParams& params, Center center)
{
    switch (center) {
    case Center::zero: return 0.0;
    case Center::one: return 1.0;
    case Center::f: return params.f;
    }
    return 0.0;
}

std::string to_string(Center c)
{
    switch (c) {
    case Center::zero: return "0";
    case Center::one: return "1";
    case Center::f: return "f";
    }
    return "?";
}

std::string to_string(Branch b) { return b == Branch::first ? "first" : "second"; }

LocalSeries heun_series(const GeneralHeunParams& params, Center center, Branch branch, int terms)
{
    params.validate();
    if (terms < 1)
        throw Error(ErrorKind::InvalidArgument, "series needs at least one term");
    const cplx rho = branch_exponent(params, center, branch);
    if (branch == Branch::second && is_integer(rho, 1e-9))
        throw Error(ErrorKind::LogarithmicCase, "indicial exponents at " + to_string(center) + " differ by an integer");

    const auto [al1, al2, be0, be1, ga0] = local_coefficients(params, center);
    LocalSeries s;
    s.center = center_location(params, center);
    s.exponent = rho;
    s.radius = nearest_other(params, center);
    s.coeffs.assign(static_cast<std::size_t>(terms) + 1, cplx{});
    s.coeffs[0] = 1.0;
    for (int k = 0; k < terms; ++k) {
        const cplx n = static_cast<double>(k) + rho;
        const cplx lead = (n + 1.0) * (al1 * n + be0);
        if (std::abs(lead) <= 1e-13 * (std::abs(n + 1.0) * (std::abs(al1 * n) + std::abs(be0)) + 1e-300))
            throw Error(ErrorKind::LogarithmicCase, "recurrence breaks down at k = " + std::to_string(k + 1));
        cplx rhs = -(al2 * n * (n - 1.0) + be1 * n + ga0) * s.coeffs[static_cast<std::size_t>(k)];
        if (k >= 1)
            rhs -= (n - 1.0 + params.a) * (n - 1.0 + params.b) * s.coeffs[static_cast<std::size_t>(k - 1)];
        s.coeffs[static_cast<std::size_t>(k + 1)] = rhs / lead;
    }
    const cplx last = s.coeffs.back();
    if (terms >= 2 && last != cplx{})
        s.ratio_radius = std::abs(s.coeffs[s.coeffs.size() - 2] / last);
    return s;
}

double heun_recurrence_residual(const GeneralHeunParams& params, Center center, const LocalSeries& series)
{
    const auto [al1, al2, be0, be1, ga0] = local_coefficients(params, center);
    const cplx rho = series.exponent;
    const auto& h = series.coeffs;
    double worst = 0.0;
    for (std::size_t k = 0; k + 1 < h.size(); ++k) {
        const cplx n = static_cast<double>(k) + rho;
        const cplx t1 = (n + 1.0) * (al1 * n + be0) * h[k + 1];
        const cplx t2 = (al2 * n * (n - 1.0) + be1 * n + ga0) * h[k];
        const cplx t3 = k >= 1 ? (n - 1.0 + params.a) * (n - 1.0 + params.b) * h[k - 1] : cplx{};
        const double scale = std::abs(t1) + std::abs(t2) + std::abs(t3);
        if (scale > 0.0)
            worst = std::max(worst, std::abs(t1 + t2 + t3) / scale);
    }
    return worst;
}

LocalValue eval_local(const LocalSeries& series, cplx z)
{
    const cplx x = z - series.center;
    const double ax = std::abs(x);
    if (!(ax < series.radius))
        throw Error(ErrorKind::OutsideRadius, "|z - center| = " + std::to_string(ax) +
                                                  " is not below the radius " + std::to_string(series.radius));
    const auto& h = series.coeffs;
    const cplx rho = series.exponent;
    // Horner for S = sum h_k x^k and T = sum (k + rho) h_k x^k
    cplx S{}, T{};
    for (std::size_t k = h.size(); k-- > 0;) {
        S = S * x + h[k];
        T = T * x + (static_cast<double>(k) + rho) * h[k];
    }
    const double tail = std::abs(h.back()) * std::pow(ax, static_cast<double>(h.size() - 1));
    if (rho == cplx{}) {
        // T / x without dividing by zero: sum_{k>=1} k h_k x^{k-1}
        cplx dS{};
        for (std::size_t k = h.size(); k-- > 1;)
            dS = dS * x + static_cast<double>(k) * h[k];
        return {S, dS, tail};
    }
    if (x == cplx{})
        throw Error(ErrorKind::InvalidArgument, "non-analytic branch evaluated at its center");
    const cplx xr = std::exp(rho * std::log(x));
    return {xr * S, xr * T / x, tail};
}

LocalValue heun_eval(const GeneralHeunParams& params, Center center, Branch branch, cplx z)
{
    for (int terms = 60; terms <= 4096; terms *= 2) {
        const LocalSeries s = heun_series(params, center, branch, terms);
        const LocalValue v = eval_local(s, z);
        cplx S{};
        const cplx x = z - s.center;
        for (std::size_t k = s.coeffs.size(); k-- > 0;)
            S = S * x + s.coeffs[k];
        if (v.tail < 1e-12 * std::max(1.0, std::abs(S)))
            return v;
    }
    throw Error(ErrorKind::TruncationFailure, "series tail still above 1e-12 at 4096 terms");
}

LocalSeries frobenius_series(const LinearODE& ode, cplx z0, cplx exponent, int terms)
{
    // polynomial form A2 w'' + A1 w' + A0 w = 0 in x = z - z0
    const Polynomial A2(Polynomial(ode.p.den() * ode.q.den()).taylor_coeffs(z0));
    const Polynomial A1(Polynomial(ode.p.num() * ode.q.den()).taylor_coeffs(z0));
    const Polynomial A0(Polynomial(ode.q.num() * ode.p.den()).taylor_coeffs(z0));
    int m = 0;
    while (m <= A2.degree() && std::abs(A2.coeff(m)) <= odekit::kPoleTol * A2.scale_at(0.0))
        ++m;
    const int J = std::max({A2.degree() - m, A1.degree() - m + 1, A0.degree() - m + 2, 0});
    auto g = [&](int j, cplx n) {
        return A2.coeff(m + j) * n * (n - 1.0) + A1.coeff(m - 1 + j) * n + A0.coeff(m - 2 + j);
    };

    LocalSeries s;
    s.center = z0;
    s.exponent = exponent;
    for (cplx sing : ode.finite_singularities())
        if (std::abs(sing - z0) > 1e-9 * std::max(1.0, std::abs(z0)))
            s.radius = std::min(s.radius, std::abs(sing - z0));
    s.coeffs.assign(static_cast<std::size_t>(terms) + 1, cplx{});
    s.coeffs[0] = 1.0;
    const double g0_scale = std::abs(A2.coeff(m)) + std::abs(A1.coeff(m - 1)) + 1e-300;
    for (int k = 1; k <= terms; ++k) {
        const cplx n = static_cast<double>(k) + exponent;
        const cplx lead = g(0, n);
        if (std::abs(lead) <= 1e-12 * g0_scale * std::max(1.0, std::norm(n)))
            throw Error(ErrorKind::LogarithmicCase, "indicial polynomial vanishes at shift " + std::to_string(k));
        cplx acc{};
        for (int j = 1; j <= std::min(J, k); ++j)
            acc += g(j, n - static_cast<double>(j)) * s.coeffs[static_cast<std::size_t>(k - j)];
        s.coeffs[static_cast<std::size_t>(k)] = -acc / lead;
    }
    if (terms >= 2 && s.coeffs.back() != cplx{})
        s.ratio_radius = std::abs(s.coeffs[s.coeffs.size() - 2] / s.coeffs.back());
    return s;
}

// ---------------------------------------------------------------------------
// confluent forms

namespace {

struct KindInfo {
    ConfluentKind kind;
    const char* name;
    std::vector<std::string> params;
};

const std::vector<KindInfo>& kind_table()
{
    static const std::vector<KindInfo> table = {
        {ConfluentKind::symmetric_confluent, "symmetric-confluent", {"p", "beta", "lambda", "m", "s"}},
        {ConfluentKind::two_center_coulomb, "two-center-coulomb", {"p", "beta", "lambda", "m"}},
        {ConfluentKind::spheroidal, "spheroidal", {"p", "lambda", "m"}},
        {ConfluentKind::algebraic_mathieu, "algebraic-mathieu", {"p", "lambda"}},
        {ConfluentKind::double_confluent, "double-confluent", {"alpha1", "alpham1", "B1", "B0", "Bm1"}},
        {ConfluentKind::biconfluent, "biconfluent", {"A0", "A1", "A2", "A3"}},
        {ConfluentKind::anharmonic, "anharmonic", {"E", "nu", "mu", "lambda", "eta"}},
        {ConfluentKind::triconfluent, "triconfluent", {"A0", "A1", "A2"}},
    };
    return table;
}

const KindInfo& info(ConfluentKind kind)
{
    for (const auto& k : kind_table())
        if (k.kind == kind)
            return k;
    throw Error(ErrorKind::UnknownKind, "unknown confluent kind");
}

// (z^2-1) w'' + 2 z w' + [-p^2 (z^2-1) + 2 p beta z - lambda - (m^2 + s^2 + 2 m s z)/(z^2-1)] w = 0
LinearODE self_adjoint_form(cplx p, cplx beta, cplx lambda, cplx m, cplx s)
{
    const Polynomial zz1{-1.0, 0.0, 1.0};
    const Polynomial bracket{p * p - lambda, 2.0 * p * beta, -p * p};
    const Polynomial a0 = bracket * zz1 - Polynomial{m * m + s * s, 2.0 * m * s};
    return odekit::from_polynomial_form(zz1 * zz1, Polynomial{0.0, 2.0} * zz1, a0);
}

} // namespace

std::string to_string(ConfluentKind kind) { return info(kind).name; }

ConfluentKind confluent_kind_from_string(const std::string& name)
{
    for (const auto& k : kind_table())
        if (name == k.name)
            return k.kind;
    throw Error(ErrorKind::UnknownKind, "unknown confluent kind '" + name + "'");
}

const std::vector<std::string>& confluent_param_names(ConfluentKind kind) { return info(kind).params; }

void ConfluentFormParams::validate() const
{
    const auto& names = confluent_param_names(kind);
    for (const auto& n : names) {
        auto it = params.find(n);
        if (it == params.end())
            throw Error(ErrorKind::InvalidArgument, to_string(kind) + " needs parameter '" + n + "'");
        if (!std::isfinite(it->second.real()) || !std::isfinite(it->second.imag()))
            throw Error(ErrorKind::InvalidArgument, "parameter '" + n + "' is not finite");
    }
    for (const auto& [n, v] : params)
        if (std::find(names.begin(), names.end(), n) == names.end())
            throw Error(ErrorKind::InvalidArgument, to_string(kind) + " takes no parameter '" + n + "'");
}

LinearODE build_confluent_form(const ConfluentFormParams& cf)
{
    cf.validate();
    switch (cf.kind) {
    case ConfluentKind::symmetric_confluent:
        return self_adjoint_form(cf.at("p"), cf.at("beta"), cf.at("lambda"), cf.at("m"), cf.at("s"));
    case ConfluentKind::two_center_coulomb:
        return self_adjoint_form(cf.at("p"), cf.at("beta"), cf.at("lambda"), cf.at("m"), 0.0);
    case ConfluentKind::spheroidal:
        return self_adjoint_form(cf.at("p"), 0.0, cf.at("lambda"), cf.at("m"), 0.0);
    case ConfluentKind::algebraic_mathieu:
        return self_adjoint_form(cf.at("p"), 0.0, cf.at("lambda"), 0.5, 0.0);
    case ConfluentKind::double_confluent: {
        // D^2 w = z^2 w'' + z w'; multiplied through by z
        const cplx a1 = cf.at("alpha1"), am1 = cf.at("alpham1");
        const Polynomial a2 = Polynomial::monomial(1.0, 3);
        const Polynomial a1p{0.0, am1, 1.0, a1};
        const Polynomial a0{cf.at("Bm1") - am1 / 2.0, cf.at("B0") + a1 * am1 / 2.0, cf.at("B1") + a1 / 2.0};
        return odekit::from_polynomial_form(a2, a1p, a0);
    }
    case ConfluentKind::biconfluent:
        return odekit::from_polynomial_form(Polynomial::monomial(1.0, 2), Polynomial::monomial(1.0, 1),
                                            Polynomial{cf.at("A0"), cf.at("A1"), cf.at("A2"), cf.at("A3"), -1.0});
    case ConfluentKind::anharmonic:
        // r^2 w'' + (E r^2 - nu - mu r^4 - lambda r^6 - eta r^8) w = 0
        return odekit::from_polynomial_form(
            Polynomial::monomial(1.0, 2), Polynomial{},
            Polynomial{-cf.at("nu"), 0.0, cf.at("E"), 0.0, -cf.at("mu"), 0.0, -cf.at("lambda"), 0.0, -cf.at("eta")});
    case ConfluentKind::triconfluent:
        return odekit::from_polynomial_form(Polynomial::constant(1.0), Polynomial{},
                                            Polynomial{cf.at("A0"), cf.at("A1"), cf.at("A2"), 0.0, -2.25});
    }
    throw Error(ErrorKind::UnknownKind, "unknown confluent kind");
}

std::vector<SignatureEntry> expected_signature(ConfluentKind kind)
{
    using odekit::Location;
    using odekit::PointKind;
    switch (kind) {
    case ConfluentKind::symmetric_confluent:
    case ConfluentKind::two_center_coulomb:
    case ConfluentKind::spheroidal:
    case ConfluentKind::algebraic_mathieu:
        return {{Location::at(-1.0), PointKind::regular},
                {Location::at(1.0), PointKind::regular},
                {Location::infinity(), PointKind::irregular}};
    case ConfluentKind::double_confluent:
        return {{Location::at(0.0), PointKind::irregular}, {Location::infinity(), PointKind::irregular}};
    case ConfluentKind::biconfluent:
    case ConfluentKind::anharmonic:
        return {{Location::at(0.0), PointKind::regular}, {Location::infinity(), PointKind::irregular}};
    case ConfluentKind::triconfluent:
        return {{Location::infinity(), PointKind::irregular}};
    }
    return {};
}

MathieuReduction double_confluent_to_mathieu(const ConfluentFormParams& cf)
{
    if (cf.kind != ConfluentKind::double_confluent)
        throw Error(ErrorKind::NotReducible, "only the double confluent form reduces to Mathieu");
    cf.validate();
    const cplx a1 = cf.at("alpha1"), am1 = cf.at("alpham1");
    if (std::abs(a1 - am1) > 1e-12)
        throw Error(ErrorKind::NotReducible, "alpha1 and alpham1 differ");
    if (cf.at("B1") != cplx{} || cf.at("Bm1") != cplx{})
        throw Error(ErrorKind::NotReducible, "B1 and Bm1 must vanish");
    MathieuReduction r;
    r.alpha = 0.5 * (a1 + am1);
    r.a = -cf.at("B0");
    r.q = -r.alpha * r.alpha / 4.0;
    r.b = r.a + 2.0 * r.q;
    r.h2 = 4.0 * r.q;
    return r;
}

AnharmonicReduction anharmonic_to_biconfluent(cplx E, cplx nu, cplx mu, cplx lambda, cplx eta)
{
    if (eta == cplx{})
        throw Error(ErrorKind::DegenerateReduction, "eta = 0 leaves no quartic term to normalise");
    const cplx s = std::pow(4.0 / eta, 0.25);
    AnharmonicReduction r;
    r.scale = s;
    r.biconfluent.kind = ConfluentKind::biconfluent;
    r.biconfluent.params = {
        {"A0", -1.0 / 16.0 - nu / 4.0},
        {"A1", E * s / 4.0},
        {"A2", -mu * s * s / 4.0},
        {"A3", -lambda * s * s * s / 4.0},
    };
    r.description = "w(r) = r^(1/2) V(z), z = r^2 / s, s = (4/eta)^(1/4) = " + odekit::format_complex(s);
    return r;
}

} // namespace heunkit::heun
