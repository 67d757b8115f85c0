#include "heunkit/engine.hpp"

#include "heunkit/error.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace heunkit::engine {

namespace odeint = boost::numeric::odeint;

namespace {

using State = std::array<double, 4>; // Re w, Im w, Re w', Im w'

constexpr double kClearanceFactor = 1e-3;
constexpr double kMinStep = 1e-13;
constexpr long kMaxSteps = 2'000'000;
// local tolerance for connection paths; the global error grows to about 10x the local one
constexpr double kConnectionTolFactor = 1e-2;

double segment_distance(cplx a, cplx b, cplx s)
{
    const cplx d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0.0)
        return std::abs(s - a);
    const double t = std::clamp(((s - a) * std::conj(d)).real() / len2, 0.0, 1.0);
    return std::abs(a + t * d - s);
}

std::string point_text(cplx z)
{
    std::ostringstream os;
    os << '(' << z.real() << ", " << z.imag() << ')';
    return os.str();
}

} // namespace

ComplexPath circle_path(cplx center, double radius, int n, double phase)
{
    ComplexPath path;
    for (int k = 0; k <= n; ++k)
        path.vertices.push_back(center + std::polar(radius, phase + 2.0 * std::numbers::pi * (k % n) / n));
    return path;
}

CoefficientField CoefficientField::from(const LinearODE& ode)
{
    return {[p = ode.p](cplx z) { return p(z); }, [q = ode.q](cplx z) { return q(z); }, ode.finite_singularities()};
}

void check_clearance(const CoefficientField& field, const ComplexPath& path)
{
    const auto& sing = field.singular_points;
    for (std::size_t i = 0; i < sing.size(); ++i) {
        double spacing = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < sing.size(); ++j)
            if (j != i)
                spacing = std::min(spacing, std::abs(sing[j] - sing[i]));
        if (!std::isfinite(spacing))
            spacing = 1.0;
        const double clear = kClearanceFactor * spacing;
        const auto& v = path.vertices;
        for (std::size_t k = 0; k < v.size(); ++k) {
            const double dist = k + 1 < v.size() ? segment_distance(v[k], v[k + 1], sing[i]) : std::abs(v[k] - sing[i]);
            if (dist < clear)
                throw Error(ErrorKind::SingularityTooClose,
                            "path passes within " + std::to_string(dist) + " of the singular point " +
                                point_text(sing[i]));
        }
    }
}

Trace integrate_trace(const CoefficientField& field, SolutionState init, const ComplexPath& path, double tol)
{
    if (path.vertices.empty())
        throw Error(ErrorKind::InvalidArgument, "empty path");
    if (std::abs(init.z - path.vertices.front()) > 1e-14 * std::max(1.0, std::abs(init.z)))
        throw Error(ErrorKind::InvalidArgument, "initial state is not at the first vertex");
    if (!(tol > 0.0))
        throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
    check_clearance(field, path);

    Trace trace;
    trace.path = path;
    init.z = path.vertices.front();
    trace.states.push_back(init);

    auto stepper = odeint::make_controlled(tol, tol, odeint::runge_kutta_fehlberg78<State>());
    State x{init.w.real(), init.w.imag(), init.dw.real(), init.dw.imag()};
    for (std::size_t k = 0; k + 1 < path.vertices.size(); ++k) {
        const cplx za = path.vertices[k];
        const cplx delta = path.vertices[k + 1] - za;
        if (delta == cplx{})
            continue;
        auto rhs = [&](const State& s, State& ds, double t) {
            const cplx z = za + t * delta;
            const cplx w{s[0], s[1]}, dw{s[2], s[3]};
            const cplx d1 = delta * dw;
            const cplx d2 = -delta * (field.p(z) * dw + field.q(z) * w);
            ds = {d1.real(), d1.imag(), d2.real(), d2.imag()};
        };
        double t = 0.0, dt = 1e-2;
        long steps = 0;
        while (t < 1.0) {
            dt = std::min(dt, 1.0 - t);
            const double t_before = t;
            if (stepper.try_step(rhs, x, t, dt) == odeint::success) {
                if (t == t_before)
                    throw Error(ErrorKind::StepUnderflow, "no progress on segment " + std::to_string(k));
                if (1.0 - t < 1e-15)
                    t = 1.0;
                trace.states.push_back({t == 1.0 ? path.vertices[k + 1] : za + t * delta, {x[0], x[1]}, {x[2], x[3]}});
            } else if (dt < kMinStep) {
                throw Error(ErrorKind::StepUnderflow,
                            "step size underflow near " + point_text(za + t * delta));
            }
            if (++steps > kMaxSteps)
                throw Error(ErrorKind::StepUnderflow, "step budget exhausted on segment " + std::to_string(k));
            for (double v : x)
                if (!std::isfinite(v))
                    throw Error(ErrorKind::StepUnderflow, "solution overflowed near " + point_text(za + t * delta));
        }
    }
    return trace;
}

SolutionState integrate_path(const CoefficientField& field, SolutionState init, const ComplexPath& path, double tol)
{
    return integrate_trace(field, init, path, tol).final();
}

SolutionState integrate_path(const LinearODE& ode, SolutionState init, const ComplexPath& path, double tol)
{
    return integrate_path(CoefficientField::from(ode), init, path, tol);
}

std::string trace_csv(const Trace& trace)
{
    std::ostringstream os;
    os.precision(17);
    os << "z_re,z_im,w_re,w_im,dw_re,dw_im\n";
    for (const auto& s : trace.states)
        os << s.z.real() << ',' << s.z.imag() << ',' << s.w.real() << ',' << s.w.imag() << ',' << s.dw.real() << ','
           << s.dw.imag() << '\n';
    return os.str();
}

cplx integrate_coefficient(const std::function<cplx(cplx)>& p, const ComplexPath& path)
{
    using boost::math::quadrature::gauss_kronrod;
    cplx total{};
    for (std::size_t k = 0; k + 1 < path.vertices.size(); ++k) {
        const cplx za = path.vertices[k];
        const cplx delta = path.vertices[k + 1] - za;
        if (delta == cplx{})
            continue;
        auto part = [&](bool imag) {
            return gauss_kronrod<double, 61>::integrate(
                [&](double t) {
                    const cplx v = p(za + t * delta) * delta;
                    return imag ? v.imag() : v.real();
                },
                0.0, 1.0, 15, 1e-14);
        };
        total += cplx(part(false), part(true));
    }
    return total;
}

double wronskian_abel_check(const CoefficientField& field, const Trace& s1, const Trace& s2)
{
    const auto& a0 = s1.states.front();
    const auto& b0 = s2.states.front();
    const auto& a1 = s1.final();
    const auto& b1 = s2.final();
    if (std::abs(a0.z - b0.z) > 1e-12 || std::abs(a1.z - b1.z) > 1e-12)
        throw Error(ErrorKind::InvalidArgument, "traces do not share endpoints");
    const cplx w0 = a0.w * b0.dw - a0.dw * b0.w;
    if (std::abs(w0) < 1e-12)
        throw Error(ErrorKind::DegenerateSystem, "initial Wronskian vanishes");
    const cplx w1 = a1.w * b1.dw - a1.dw * b1.w;
    return std::abs(w1 - w0 * std::exp(-integrate_coefficient(field.p, s1.path))) / std::abs(w0);
}

double wronskian_abel_check(const LinearODE& ode, const Trace& s1, const Trace& s2)
{
    return wronskian_abel_check(CoefficientField::from(ode), s1, s2);
}

ConnectionMatrix ConnectionMatrix::operator*(const ConnectionMatrix& o) const
{
    ConnectionMatrix r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r.entries[i][j] = entries[i][0] * o.entries[0][j] + entries[i][1] * o.entries[1][j];
    r.from_point = from_point;
    r.to_point = o.to_point;
    r.condition = std::max(condition, o.condition);
    r.abel_deviation = std::max(abel_deviation, o.abel_deviation);
    return r;
}

cplx matching_point(cplx center, double radius, cplx target)
{
    const double base = std::arg(target - center);
    const double rot = std::numbers::pi / 6.0;
    const cplx up = std::polar(0.5 * radius, base + rot);
    const cplx down = std::polar(0.5 * radius, base - rot);
    // distance of the direction from the cut along angle pi
    auto cut_gap = [](cplx d) { return std::numbers::pi - std::abs(std::arg(d)); };
    const double gu = cut_gap(up), gd = cut_gap(down);
    if (std::abs(gu - gd) < 1e-12)
        return center + (up.imag() >= down.imag() ? up : down);
    return center + (gu > gd ? up : down);
}

namespace {

double condition_2x2(const std::array<std::array<cplx, 2>, 2>& m)
{
    // singular values from the eigenvalues of M^H M
    double fro2 = 0;
    for (const auto& row : m)
        for (cplx v : row)
            fro2 += std::norm(v);
    const double det = std::abs(m[0][0] * m[1][1] - m[0][1] * m[1][0]);
    const double disc = std::sqrt(std::max(0.0, fro2 * fro2 - 4.0 * det * det));
    const double smax = std::sqrt(0.5 * (fro2 + disc));
    const double smin2 = 0.5 * (fro2 - disc);
    const double smin = smin2 > 0 ? det / smax : 0.0;
    return smin > 0 ? smax / smin : std::numeric_limits<double>::infinity();
}

} // namespace

ConnectionMatrix connection_matrix(const heun::GeneralHeunParams& params, heun::Center from, heun::Center to,
                                   const ComplexPath& waypoints, double tol)
{
    using heun::Branch;
    params.validate();
    const auto from_first = heun::heun_series(params, from, Branch::first, 4);
    heun::heun_series(params, from, Branch::second, 4);
    ConnectionMatrix result;
    if (from == to) {
        result.entries = {{{1.0, 0.0}, {0.0, 1.0}}};
        result.from_point = result.to_point = from_first.center;
        return result;
    }
    const auto to_first = heun::heun_series(params, to, Branch::first, 4);
    heun::heun_series(params, to, Branch::second, 4);

    const cplx zf = from_first.center, zt = to_first.center;
    const cplx aim_from = waypoints.vertices.empty() ? zt : waypoints.vertices.front();
    const cplx aim_to = waypoints.vertices.empty() ? zf : waypoints.vertices.back();
    ComplexPath path;
    path.vertices.push_back(matching_point(zf, from_first.radius, aim_from));
    for (cplx v : waypoints.vertices)
        path.vertices.push_back(v);
    path.vertices.push_back(matching_point(zt, to_first.radius, aim_to));
    result.from_point = path.vertices.front();
    result.to_point = path.vertices.back();

    const auto field = CoefficientField::from(heun::general_heun(params));
    check_clearance(field, path);
    std::array<Trace, 2> traces;
    for (int i = 0; i < 2; ++i) {
        const auto v = heun::heun_eval(params, from, i == 0 ? Branch::first : Branch::second, result.from_point);
        traces[i] = integrate_trace(field, {result.from_point, v.w, v.dw}, path, std::max(tol * kConnectionTolFactor, 1e-14));
    }
    result.abel_deviation = wronskian_abel_check(field, traces[0], traces[1]);

    const auto v1 = heun::heun_eval(params, to, Branch::first, result.to_point);
    const auto v2 = heun::heun_eval(params, to, Branch::second, result.to_point);
    const std::array<std::array<cplx, 2>, 2> m = {{{v1.w, v2.w}, {v1.dw, v2.dw}}};
    result.condition = condition_2x2(m);
    if (!(result.condition <= 1e8))
        throw Error(ErrorKind::IllConditioned,
                    "to-basis matrix has condition number " + std::to_string(result.condition));
    const cplx det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    for (int i = 0; i < 2; ++i) {
        const cplx u = traces[i].final().w, du = traces[i].final().dw;
        result.entries[i][0] = (u * m[1][1] - m[0][1] * du) / det;
        result.entries[i][1] = (m[0][0] * du - m[1][0] * u) / det;
    }
    return result;
}

} // namespace heunkit::engine
