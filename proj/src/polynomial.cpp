#include "heunkit/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace heunkit::odekit {

Polynomial::Polynomial(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

Polynomial::Polynomial(std::initializer_list<cplx> coeffs) : coeffs_(coeffs) { normalize(); }

void Polynomial::normalize()
{
    while (!coeffs_.empty() && coeffs_.back() == cplx{})
        coeffs_.pop_back();
}

Polynomial Polynomial::constant(cplx c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(cplx c, int degree)
{
    std::vector<cplx> v(static_cast<std::size_t>(degree) + 1);
    v.back() = c;
    return Polynomial(std::move(v));
}

Polynomial Polynomial::linear_power(cplx root, int power)
{
    Polynomial out = constant(1.0);
    const Polynomial lin({-root, 1.0});
    for (int i = 0; i < power; ++i)
        out *= lin;
    return out;
}

Polynomial Polynomial::from_roots(const std::vector<cplx>& roots, cplx leading)
{
    Polynomial out = constant(leading);
    for (cplx r : roots)
        out *= Polynomial({-r, 1.0});
    return out;
}

cplx Polynomial::coeff(int i) const noexcept
{
    if (i < 0 || i > degree())
        return {};
    return coeffs_[static_cast<std::size_t>(i)];
}

cplx Polynomial::operator()(cplx z) const noexcept
{
    cplx acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * z + *it;
    return acc;
}

Polynomial Polynomial::derivative() const
{
    if (degree() < 1)
        return {};
    std::vector<cplx> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        d[i - 1] = coeffs_[i] * static_cast<double>(i);
    return Polynomial(std::move(d));
}

double Polynomial::scale_at(cplx z) const noexcept
{
    const double r = std::max(1.0, std::abs(z));
    double s = 0.0, rp = 1.0;
    for (const cplx& c : coeffs_) {
        s += std::abs(c) * rp;
        rp *= r;
    }
    return s;
}

std::vector<cplx> Polynomial::taylor_coeffs(cplx z0) const
{
    // repeated synthetic division by (z - z0); each remainder is the next coefficient
    std::vector<cplx> work = coeffs_;
    std::vector<cplx> out;
    out.reserve(work.size());
    while (!work.empty()) {
        for (std::size_t i = work.size() - 1; i-- > 0;)
            work[i] += work[i + 1] * z0;
        out.push_back(work.front());
        work.erase(work.begin());
    }
    return out;
}

int Polynomial::root_multiplicity(cplx z0, double tol) const
{
    if (is_zero())
        return 0;
    const auto t = taylor_coeffs(z0);
    const double s = scale_at(z0);
    int m = 0;
    while (m < static_cast<int>(t.size()) - 1 && std::abs(t[static_cast<std::size_t>(m)]) <= tol * s)
        ++m;
    return m;
}

Polynomial Polynomial::reversed(int n) const
{
    std::vector<cplx> r(static_cast<std::size_t>(std::max(n, 0)) + 1);
    for (int i = 0; i <= degree() && i <= n; ++i)
        r[static_cast<std::size_t>(n - i)] = coeffs_[static_cast<std::size_t>(i)];
    return Polynomial(std::move(r));
}

Polynomial Polynomial::trimmed(double rel_tol) const
{
    double mx = 0.0;
    for (const cplx& c : coeffs_)
        mx = std::max(mx, std::abs(c));
    std::vector<cplx> v = coeffs_;
    while (!v.empty() && std::abs(v.back()) <= rel_tol * mx)
        v.pop_back();
    return Polynomial(std::move(v));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& divisor) const
{
    const int dn = divisor.degree();
    if (dn < 0 || degree() < dn)
        return {Polynomial{}, *this};
    std::vector<cplx> rem = coeffs_;
    std::vector<cplx> quo(static_cast<std::size_t>(degree() - dn) + 1);
    const cplx lead = divisor.leading();
    for (int k = degree() - dn; k >= 0; --k) {
        const cplx f = rem[static_cast<std::size_t>(k + dn)] / lead;
        quo[static_cast<std::size_t>(k)] = f;
        for (int i = 0; i <= dn; ++i)
            rem[static_cast<std::size_t>(k + i)] -= f * divisor.coeffs_[static_cast<std::size_t>(i)];
    }
    rem.resize(static_cast<std::size_t>(dn));
    return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

Polynomial Polynomial::deflate(cplx root) const
{
    if (degree() < 1)
        return {};
    std::vector<cplx> q(coeffs_.size() - 1);
    cplx acc{};
    for (std::size_t i = coeffs_.size(); i-- > 1;) {
        acc = acc * root + coeffs_[i];
        q[i - 1] = acc;
    }
    return Polynomial(std::move(q));
}

std::vector<cplx> Polynomial::roots() const
{
    std::vector<cplx> out;
    if (degree() < 1)
        return out;
    // exact zeros at the origin first
    std::size_t lo = 0;
    while (coeffs_[lo] == cplx{}) {
        out.emplace_back(0.0);
        ++lo;
    }
    std::vector<cplx> a(coeffs_.begin() + static_cast<std::ptrdiff_t>(lo), coeffs_.end());
    const int n = static_cast<int>(a.size()) - 1;
    if (n < 1)
        return out;
    for (auto& c : a)
        c /= a.back();
    const Polynomial p(a);
    const Polynomial dp = p.derivative();

    double radius = 0.0;
    for (int i = 0; i < n; ++i)
        radius = std::max(radius, std::pow(std::abs(a[static_cast<std::size_t>(i)]), 1.0 / (n - i)));
    radius = std::max(radius, 1e-3);

    std::vector<cplx> z(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        z[static_cast<std::size_t>(i)] = std::polar(radius, 2.0 * std::numbers::pi * (i + 0.25) / n + 0.4);

    for (int iter = 0; iter < 2000; ++iter) {
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            cplx& zi = z[static_cast<std::size_t>(i)];
            const cplx pv = p(zi);
            if (pv == cplx{})
                continue;
            const cplx ratio = pv / dp(zi);
            cplx sum{};
            for (int j = 0; j < n; ++j)
                if (j != i)
                    sum += 1.0 / (zi - z[static_cast<std::size_t>(j)]);
            const cplx w = ratio / (1.0 - ratio * sum);
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
                continue;
            zi -= w;
            worst = std::max(worst, std::abs(w) / std::max(1.0, std::abs(zi)));
        }
        if (worst < 1e-16)
            break;
    }
    out.insert(out.end(), z.begin(), z.end());
    return out;
}

Polynomial Polynomial::operator-() const
{
    Polynomial r = *this;
    for (auto& c : r.coeffs_)
        c = -c;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o)
{
    if (o.coeffs_.size() > coeffs_.size())
        coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
        coeffs_[i] += o.coeffs_[i];
    normalize();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o)
{
    if (o.coeffs_.size() > coeffs_.size())
        coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
        coeffs_[i] -= o.coeffs_[i];
    normalize();
    return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o)
{
    if (is_zero() || o.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    std::vector<cplx> r(coeffs_.size() + o.coeffs_.size() - 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
            r[i + j] += coeffs_[i] * o.coeffs_[j];
    coeffs_ = std::move(r);
    normalize();
    return *this;
}

Polynomial& Polynomial::operator*=(cplx s)
{
    for (auto& c : coeffs_)
        c *= s;
    normalize();
    return *this;
}

} // namespace heunkit::odekit
