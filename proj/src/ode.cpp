#include "heunkit/ode.hpp"

#include "heunkit/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace heunkit::odekit {

namespace {

cplx clean(cplx z)
{
    auto c = [](double v) {
        if (std::abs(v) < 1e-14)
            return 0.0;
        const double r = std::round(v);
        return std::abs(v - r) < 1e-13 * std::max(1.0, std::abs(r)) ? r : v;
    };
    return {c(z.real()), c(z.imag())};
}

bool near_integer(cplx d)
{
    return std::abs(d.imag()) <= 1e-9 && std::abs(d.real() - std::round(d.real())) <= 1e-9;
}

} // namespace

std::vector<cplx> LinearODE::finite_singularities() const
{
    std::vector<cplx> out;
    auto add = [&](const std::vector<Pole>& ps) {
        for (const auto& pole : ps) {
            const bool seen = std::any_of(out.begin(), out.end(), [&](cplx z) {
                return std::abs(z - pole.location) <= 1e-8 * std::max(1.0, std::abs(z));
            });
            if (!seen)
                out.push_back(pole.location);
        }
    };
    add(p.poles());
    add(q.poles());
    std::sort(out.begin(), out.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return out;
}

LinearODE LinearODE::at_infinity() const
{
    const RationalFunction two_over_t(Polynomial{2.0}, Polynomial{0.0, 1.0});
    const RationalFunction inv_t2(Polynomial{1.0}, Polynomial::monomial(1.0, 2));
    const RationalFunction inv_t4(Polynomial{1.0}, Polynomial::monomial(1.0, 4));
    return {two_over_t - p.at_inverse() * inv_t2, q.at_inverse() * inv_t4};
}

LinearODE LinearODE::shifted(cplx z0) const { return {p.shifted(z0), q.shifted(z0)}; }

LinearODE from_polynomial_form(const Polynomial& a2, const Polynomial& a1, const Polynomial& a0)
{
    return {RationalFunction(a1, a2), RationalFunction(a0, a2)};
}

std::string to_string(const Location& loc)
{
    if (loc.infinite)
        return "inf";
    std::ostringstream os;
    os.precision(17);
    os << loc.z.real();
    if (loc.z.imag() != 0.0)
        os << (loc.z.imag() < 0 ? "-" : "+") << std::abs(loc.z.imag()) << "i";
    return os.str();
}

std::string_view to_string(PointKind kind)
{
    switch (kind) {
    case PointKind::ordinary: return "ordinary";
    case PointKind::regular: return "regular";
    case PointKind::irregular: return "irregular";
    }
    return "?";
}

std::string to_string(const Rank& r)
{
    return r.den == 1 ? std::to_string(r.num) : std::to_string(r.num) + "/" + std::to_string(r.den);
}

SingularPoint classify_point(const LinearODE& ode, const Location& loc)
{
    const LinearODE local = loc.infinite ? ode.at_infinity() : ode;
    const cplx z = loc.infinite ? cplx{} : loc.z;
    const int P = local.p.pole_order(z);
    const int Q = local.q.pole_order(z);

    SingularPoint sp;
    sp.location = loc;
    if (P == 0 && Q == 0) {
        sp.kind = PointKind::ordinary;
        return sp;
    }
    if (P <= 1 && Q <= 2) {
        sp.kind = PointKind::regular;
        const cplx pm1 = P == 1 ? local.p.laurent_coeff(z, 1) : cplx{};
        const cplx qm2 = Q == 2 ? local.q.laurent_coeff(z, 2) : cplx{};
        // rho^2 + (p_{-1} - 1) rho + q_{-2} = 0
        const cplx b = pm1 - 1.0;
        const cplx disc = std::sqrt(b * b - 4.0 * qm2);
        cplx r1 = clean((-b + disc) / 2.0);
        cplx r2 = clean((-b - disc) / 2.0);
        const bool swap = std::abs(r1.real() - r2.real()) <= 1e-14 * std::max(1.0, std::abs(r1))
                              ? r1.imag() < r2.imag()
                              : r1.real() < r2.real();
        if (swap)
            std::swap(r1, r2);
        sp.exponents = IndicialRoots{r1, r2, near_integer(r1 - r2)};
        return sp;
    }
    sp.kind = PointKind::irregular;
    const int twice = std::max(2 * P - 2, Q - 2);
    sp.rank = twice % 2 == 0 ? Rank{twice / 2, 1} : Rank{twice, 2};
    return sp;
}

std::vector<SingularPoint> classify_singularities(const LinearODE& ode)
{
    std::vector<SingularPoint> out;
    for (cplx z : ode.finite_singularities())
        out.push_back(classify_point(ode, Location::at(z)));
    out.push_back(classify_point(ode, Location::infinity()));
    return out;
}

IndicialRoots indicial_exponents(const LinearODE& ode, const Location& loc)
{
    const SingularPoint sp = classify_point(ode, loc);
    if (sp.kind != PointKind::regular)
        throw Error(ErrorKind::NotRegular,
                    "point " + to_string(loc) + " is " + std::string(to_string(sp.kind)));
    return *sp.exponents;
}

double ode_residual(const LinearODE& ode, std::span<const ResidualSample> samples)
{
    const auto sing = ode.finite_singularities();
    double worst = 0.0;
    for (const auto& s : samples) {
        for (cplx pole : sing)
            if (std::abs(s.z - pole) <= kPoleTol * std::max(1.0, std::abs(pole)))
                throw Error(ErrorKind::PoleAtSample, "sample at " + to_string(Location::at(s.z)));
        const cplx pw = ode.p(s.z) * s.dw;
        const cplx qw = ode.q(s.z) * s.w;
        const double scale = std::max({1.0, std::abs(s.d2w), std::abs(pw), std::abs(qw)});
        worst = std::max(worst, std::abs(s.d2w + pw + qw) / scale);
    }
    return worst;
}

} // namespace heunkit::odekit
