#include "heunkit/mathieu.hpp"

#include "heunkit/engine.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace heunkit::mathieu {

namespace {

// ce_{2m}, ce_{2m+1}, se_{2m+1}, se_{2m+2}
enum class Block { even_even, even_odd, odd_odd, odd_even };

struct Selection {
    Block block;
    int index; ///< position in the ascending eigenvalue list
};

Selection select(const MathieuParams& p)
{
    if (p.parity == Parity::even)
        return p.n % 2 == 0 ? Selection{Block::even_even, p.n / 2} : Selection{Block::even_odd, (p.n - 1) / 2};
    return p.n % 2 == 1 ? Selection{Block::odd_odd, (p.n - 1) / 2} : Selection{Block::odd_even, p.n / 2 - 1};
}

int frequency(Block b, int k)
{
    switch (b) {
    case Block::even_even: return 2 * k;
    case Block::even_odd:
    case Block::odd_odd: return 2 * k + 1;
    case Block::odd_even: return 2 * k + 2;
    }
    return 0;
}

struct Tridiagonal {
    std::vector<cplx> diag;
    std::vector<cplx> off; ///< off[k] couples modes k and k+1
};

// Symmetric form of the mode recurrences. For ce_{2m} the constant mode is carried as
// sqrt(2) A_0 so that the matrix stays symmetric.
Tridiagonal mode_matrix(Block b, cplx q, int size)
{
    Tridiagonal t;
    t.diag.resize(size);
    t.off.assign(size - 1, q);
    for (int k = 0; k < size; ++k) {
        const double f = frequency(b, k);
        t.diag[k] = f * f;
    }
    switch (b) {
    case Block::even_even: t.off[0] = std::sqrt(2.0) * q; break;
    case Block::even_odd: t.diag[0] += q; break;
    case Block::odd_odd: t.diag[0] -= q; break;
    case Block::odd_even: break;
    }
    return t;
}

// Eigenvalues of a real symmetric tridiagonal matrix by QL with implicit shifts.
std::vector<double> tql_eigenvalues(std::vector<double> d, std::vector<double> e)
{
    const int n = static_cast<int>(d.size());
    e.push_back(0.0);
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd)
                    break;
            }
            if (m != l) {
                if (++iter > 60)
                    throw Error(ErrorKind::NonConvergence, "QL iteration did not converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if (r == 0.0 && i >= l)
                    continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    std::sort(d.begin(), d.end());
    return d;
}

// Newton on det(T - a I) through the LDL^T pivots: f'/f = sum d_k' / d_k.
cplx newton_eigenvalue(const Tridiagonal& t, cplx a)
{
    const std::size_t n = t.diag.size();
    for (int it = 0; it < 60; ++it) {
        cplx piv = t.diag[0] - a, dpiv = -1.0;
        cplx logd = dpiv / piv;
        for (std::size_t k = 1; k < n; ++k) {
            if (piv == cplx{})
                piv = 1e-300;
            const cplx o2 = t.off[k - 1] * t.off[k - 1];
            const cplx next = t.diag[k] - a - o2 / piv;
            const cplx dnext = -1.0 + o2 * dpiv / (piv * piv);
            piv = next;
            dpiv = dnext;
            logd += dpiv / piv;
        }
        const cplx step = -1.0 / logd;
        a += step;
        if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(a)))
            return a;
    }
    throw Error(ErrorKind::NonConvergence, "Newton refinement of the characteristic value stalled");
}

cplx eigenvalue_at(Block b, int index, cplx q, int size)
{
    const auto real_matrix = mode_matrix(b, q.real(), size);
    std::vector<double> d(size), e(size - 1);
    for (int k = 0; k < size; ++k)
        d[k] = real_matrix.diag[k].real();
    for (int k = 0; k + 1 < size; ++k)
        e[k] = real_matrix.off[k].real();
    cplx a = tql_eigenvalues(d, e)[static_cast<std::size_t>(index)];
    if (q.imag() == 0.0)
        return a;
    constexpr int steps = 32;
    for (int s = 1; s <= steps; ++s) {
        const cplx qs{q.real(), q.imag() * s / steps};
        a = newton_eigenvalue(mode_matrix(b, qs, size), a);
    }
    return a;
}

// (T - a I) x = rhs by Gaussian elimination with partial pivoting on the band.
std::vector<cplx> solve_shifted(const Tridiagonal& t, cplx a, std::vector<cplx> rhs)
{
    const std::size_t n = t.diag.size();
    std::vector<cplx> dl(t.off), d(n), du(t.off), du2(n, cplx{});
    for (std::size_t k = 0; k < n; ++k)
        d[k] = t.diag[k] - a;
    const double tiny = 1e-300;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (std::abs(d[k]) >= std::abs(dl[k])) {
            if (d[k] == cplx{})
                d[k] = tiny;
            const cplx m = dl[k] / d[k];
            d[k + 1] -= m * du[k];
            rhs[k + 1] -= m * rhs[k];
            dl[k] = 0.0;
        } else {
            const cplx m = d[k] / dl[k];
            std::swap(rhs[k], rhs[k + 1]);
            rhs[k + 1] -= m * rhs[k];
            d[k] = dl[k];
            const cplx tmp = d[k + 1];
            d[k + 1] = du[k] - m * tmp;
            du[k] = tmp;
            if (k + 2 < n) {
                du2[k] = du[k + 1];
                du[k + 1] = -m * du2[k];
            }
        }
    }
    if (d[n - 1] == cplx{})
        d[n - 1] = tiny;
    std::vector<cplx> x(n);
    for (std::size_t k = n; k-- > 0;) {
        cplx s = rhs[k];
        if (k + 1 < n)
            s -= du[k] * x[k + 1];
        if (k + 2 < n)
            s -= du2[k] * x[k + 2];
        x[k] = s / d[k];
    }
    return x;
}

std::vector<FourierTerm> eigenvector(Block b, int index, cplx q, cplx a, int size)
{
    const auto t = mode_matrix(b, q, size);
    std::vector<cplx> x(static_cast<std::size_t>(size), 1.0);
    for (int it = 0; it < 4; ++it) {
        x = solve_shifted(t, a, x);
        double big = 0;
        for (cplx v : x)
            big = std::max(big, std::abs(v));
        for (cplx& v : x)
            v /= big;
    }
    // unconjugated unit norm gives integral S^2 = pi
    cplx norm2{};
    for (cplx v : x)
        norm2 += v * v;
    cplx scale = 1.0 / std::sqrt(norm2);
    if ((x[static_cast<std::size_t>(index)] * scale).real() < 0.0)
        scale = -scale;
    std::vector<FourierTerm> out;
    for (int k = 0; k < size; ++k) {
        cplx c = x[static_cast<std::size_t>(k)] * scale;
        if (b == Block::even_even && k == 0)
            c /= std::sqrt(2.0);
        out.push_back({frequency(b, k), c});
    }
    return out;
}

} // namespace

TrigonometricForm to_trigonometric_form(cplx a, cplx q) { return {a + 2.0 * q, 4.0 * q}; }

std::string to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

Parity parity_from_string(const std::string& s)
{
    if (s == "even")
        return Parity::even;
    if (s == "odd")
        return Parity::odd;
    throw Error(ErrorKind::InvalidArgument, "parity must be even or odd, got '" + s + "'");
}

void MathieuParams::validate() const
{
    if (n < 0)
        throw Error(ErrorKind::InvalidArgument, "order must be non-negative");
    if (parity == Parity::odd && n == 0)
        throw Error(ErrorKind::InvalidArgument, "odd Mathieu functions start at order 1");
    if (!std::isfinite(q.real()) || !std::isfinite(q.imag()))
        throw Error(ErrorKind::InvalidArgument, "q is not finite");
}

CharacteristicValue characteristic_value(const MathieuParams& params)
{
    params.validate();
    const auto sel = select(params);
    int size = std::max(16, params.n / 2 + 10);
    cplx prev = eigenvalue_at(sel.block, sel.index, params.q, size);
    for (;;) {
        if (size * 2 > 2048)
            throw Error(ErrorKind::NonConvergence,
                        "characteristic value still moving at truncation " + std::to_string(size));
        const int next = size * 2;
        const cplx value = eigenvalue_at(sel.block, sel.index, params.q, next);
        const bool settled = std::abs(value - prev) <= 1e-12 * std::max(1.0, std::abs(value));
        size = next;
        prev = value;
        if (settled)
            break;
    }
    CharacteristicValue cv;
    cv.params = params;
    cv.value = prev;
    cv.truncation = size;
    cv.converged = true;
    cv.series = eigenvector(sel.block, sel.index, params.q, prev, size);
    return cv;
}

CharacteristicValue characteristic_value(int n, cplx q, Parity parity)
{
    return characteristic_value(MathieuParams{n, q, parity});
}

MathieuValue angular_mathieu(const CharacteristicValue& cv, cplx theta)
{
    if (!cv.converged)
        throw Error(ErrorKind::NonConverged, "characteristic value was not converged");
    if (std::abs(theta.imag()) > kMaxImaginaryPart)
        throw Error(ErrorKind::OverflowGuard, "|Im theta| exceeds " + std::to_string(kMaxImaginaryPart));
    cplx w{}, dw{};
    const bool even = cv.params.parity == Parity::even;
    for (const auto& [f, c] : cv.series) {
        if (c == cplx{})
            continue;
        const cplx arg = static_cast<double>(f) * theta;
        if (even) {
            w += c * std::cos(arg);
            dw -= c * static_cast<double>(f) * std::sin(arg);
        } else {
            w += c * std::sin(arg);
            dw += c * static_cast<double>(f) * std::cos(arg);
        }
    }
    if (!std::isfinite(std::abs(w)) || !std::isfinite(std::abs(dw)))
        throw Error(ErrorKind::OverflowGuard, "Fourier series overflowed");
    return {w, dw};
}

MathieuValue modified_mathieu(const CharacteristicValue& cv, double x)
{
    const auto v = angular_mathieu(cv, cplx(0.0, x));
    return {v.w, cplx(0.0, 1.0) * v.dw};
}

namespace {

MathieuValue integrate_general(cplx a, cplx q, cplx z, double tol, cplx w0, cplx dw0)
{
    if (z == cplx{})
        return {w0, dw0};
    engine::CoefficientField field{[](cplx) { return cplx{}; },
                                   [a, q](cplx s) { return a - 2.0 * q * std::cos(2.0 * s); },
                                   {}};
    const auto end = engine::integrate_path(field, {0.0, w0, dw0}, {{0.0, z}}, tol);
    return {end.w, end.dw};
}

} // namespace

MathieuValue mathieu_c(cplx a, cplx q, cplx z, double tol) { return integrate_general(a, q, z, tol, 1.0, 0.0); }
MathieuValue mathieu_s(cplx a, cplx q, cplx z, double tol) { return integrate_general(a, q, z, tol, 0.0, 1.0); }

GramMatrix orthogonality_matrix(double q, int n_max)
{
    if (n_max < 0)
        throw Error(ErrorKind::InvalidArgument, "n_max must be non-negative");
    GramMatrix g;
    std::vector<CharacteristicValue> cvs;
    for (int n = 0; n <= n_max; ++n)
        cvs.push_back(characteristic_value(n, q, Parity::even));
    for (int n = 1; n <= n_max; ++n)
        cvs.push_back(characteristic_value(n, q, Parity::odd));
    for (const auto& cv : cvs)
        g.basis.push_back(cv.params);
    const std::size_t m = cvs.size();
    g.entries.assign(m, std::vector<double>(m, 0.0));
    using boost::math::quadrature::gauss_kronrod;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            const double v = gauss_kronrod<double, 61>::integrate(
                [&](double t) { return (angular_mathieu(cvs[i], t).w * angular_mathieu(cvs[j], t).w).real(); },
                0.0, 2.0 * std::numbers::pi, 15, 1e-14);
            g.entries[i][j] = g.entries[j][i] = v;
        }
    return g;
}

std::string characteristic_table_csv(const std::vector<CharacteristicValue>& rows)
{
    std::ostringstream os;
    os.precision(17);
    os << "n,parity,q_re,q_im,value_re,value_im,truncation\n";
    for (const auto& r : rows)
        os << r.params.n << ',' << to_string(r.params.parity) << ',' << r.params.q.real() << ',' << r.params.q.imag()
           << ',' << r.value.real() << ',' << r.value.imag() << ',' << r.truncation << '\n';
    return os.str();
}

} // namespace heunkit::mathieu
