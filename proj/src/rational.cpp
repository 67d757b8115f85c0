#include "heunkit/rational.hpp"

#include "heunkit/error.hpp"

#include <algorithm>
#include <cmath>

namespace heunkit::odekit {

namespace {

double snap_component(double v, double scale)
{
    if (std::abs(v) <= 1e-14 * scale)
        return 0.0;
    const double r = std::round(v);
    if (std::abs(v - r) <= 1e-13 * std::max(1.0, std::abs(r)))
        return r;
    return v;
}

cplx snap(cplx z)
{
    const double s = std::max(1.0, std::abs(z));
    return {snap_component(z.real(), s), snap_component(z.imag(), s)};
}

} // namespace

std::vector<Pole> root_clusters(const Polynomial& p)
{
    std::vector<Pole> out;
    if (p.degree() < 1)
        return out;
    std::vector<cplx> rs = p.roots();
    std::vector<bool> used(rs.size(), false);
    for (std::size_t i = 0; i < rs.size(); ++i) {
        if (used[i])
            continue;
        std::vector<std::size_t> members{i};
        used[i] = true;
        const double radius = 2e-2 * std::max(1.0, std::abs(rs[i]));
        for (std::size_t j = i + 1; j < rs.size(); ++j) {
            if (!used[j] && std::abs(rs[j] - rs[i]) <= radius) {
                members.push_back(j);
                used[j] = true;
            }
        }
        cplx centre{};
        for (auto m : members)
            centre += rs[m];
        centre /= static_cast<double>(members.size());
        const int claimed = static_cast<int>(members.size());
        if (claimed > 1) {
            // a root of multiplicity m is a simple root of the (m-1)-th derivative
            Polynomial d = p;
            for (int k = 1; k < claimed; ++k)
                d = d.derivative();
            const Polynomial dd = d.derivative();
            for (int it = 0; it < 8; ++it) {
                const cplx den = dd(centre);
                if (den == cplx{})
                    break;
                centre -= d(centre) / den;
            }
        }
        if (claimed == 1 || p.root_multiplicity(centre, kPoleTol) >= claimed) {
            out.push_back({snap(centre), claimed});
        } else {
            for (auto m : members)
                out.push_back({snap(rs[m]), 1});
        }
    }
    std::sort(out.begin(), out.end(), [](const Pole& a, const Pole& b) {
        if (a.location.real() != b.location.real())
            return a.location.real() < b.location.real();
        return a.location.imag() < b.location.imag();
    });
    return out;
}

RationalFunction::RationalFunction() : num_(), den_(Polynomial::constant(1.0)) {}

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den))
{
    reduce();
}

RationalFunction::RationalFunction(Polynomial num, Polynomial den, Unreduced)
    : num_(std::move(num)), den_(std::move(den))
{
}

RationalFunction::RationalFunction(const Polynomial& poly) : num_(poly), den_(Polynomial::constant(1.0)) {}

RationalFunction RationalFunction::constant(cplx c) { return RationalFunction(Polynomial::constant(c)); }

void RationalFunction::reduce()
{
    if (den_.is_zero())
        throw Error(ErrorKind::ZeroDenominator, "denominator is identically zero");
    if (num_.is_zero()) {
        den_ = Polynomial::constant(1.0);
        return;
    }
    for (const Pole& c : root_clusters(den_)) {
        const int k = std::min(c.order, num_.root_multiplicity(c.location, kGcdTol));
        for (int i = 0; i < k; ++i) {
            num_ = num_.deflate(c.location);
            den_ = den_.deflate(c.location);
        }
    }
    const cplx lead = den_.leading();
    num_ *= 1.0 / lead;
    den_ *= 1.0 / lead;
}

cplx RationalFunction::operator()(cplx z) const { return num_(z) / den_(z); }

std::vector<Pole> RationalFunction::poles() const { return root_clusters(den_); }

int RationalFunction::pole_order(cplx z0) const
{
    if (num_.is_zero())
        return 0;
    return den_.root_multiplicity(z0, kPoleTol);
}

cplx RationalFunction::laurent_coeff(cplx z0, int k) const
{
    const int ord = pole_order(z0);
    if (k > ord || num_.is_zero())
        return {};
    if (k < ord)
        throw Error(ErrorKind::InvalidArgument, "only the leading Laurent coefficient is available");
    const auto dt = den_.taylor_coeffs(z0);
    return num_(z0) / dt[static_cast<std::size_t>(ord)];
}

RationalFunction RationalFunction::at_inverse() const
{
    if (num_.is_zero())
        return {};
    const int n = num_.degree();
    const int d = den_.degree();
    Polynomial rn = num_.reversed(n);
    Polynomial rd = den_.reversed(d);
    if (d >= n)
        rn *= Polynomial::monomial(1.0, d - n);
    else
        rd *= Polynomial::monomial(1.0, n - d);
    return RationalFunction(std::move(rn), std::move(rd));
}

RationalFunction RationalFunction::shifted(cplx z0) const
{
    return RationalFunction(Polynomial(num_.taylor_coeffs(z0)), Polynomial(den_.taylor_coeffs(z0)));
}

RationalFunction RationalFunction::operator-() const { return RationalFunction(-num_, den_, Unreduced{}); }

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b)
{
    if (a.den_ == b.den_)
        return RationalFunction((a.num_ + b.num_).trimmed(1e-14), a.den_);
    return RationalFunction((a.num_ * b.den_ + b.num_ * a.den_).trimmed(1e-14), a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b)
{
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b)
{
    if (b.is_zero())
        throw Error(ErrorKind::ZeroDenominator, "division by the zero function");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

RationalFunction make_rational(const std::vector<cplx>& num_coeffs, const std::vector<cplx>& den_coeffs)
{
    return RationalFunction(Polynomial(num_coeffs), Polynomial(den_coeffs));
}

} // namespace heunkit::odekit
