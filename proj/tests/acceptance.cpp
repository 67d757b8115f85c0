// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "heunkit/engine.hpp"
#include "heunkit/error.hpp"
#include "heunkit/heun.hpp"
#include "heunkit/hypergeometric.hpp"
#include "heunkit/mathieu.hpp"
#include "heunkit/scenarios.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace heunkit;
using heun::Branch;
using heun::Center;
using heun::GeneralHeunParams;
using odekit::Location;
using odekit::Polynomial;
using odekit::PointKind;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Draw {
    std::mt19937_64 rng;
    explicit Draw(unsigned long long seed) : rng(seed) {}
    double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
    cplx complex(double lo, double hi) { return {real(lo, hi), real(lo, hi)}; }
};

std::string sci(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", x);
    return buf;
}

using Signature = std::vector<std::pair<Location, PointKind>>;

bool signature_is(const std::vector<odekit::SingularPoint>& pts, const Signature& want)
{
    const auto n = std::count_if(pts.begin(), pts.end(), [](const auto& sp) { return sp.kind != PointKind::ordinary; });
    if (static_cast<std::size_t>(n) != want.size())
        return false;
    return std::all_of(want.begin(), want.end(), [&](const auto& w) {
        return std::any_of(pts.begin(), pts.end(), [&](const auto& sp) {
            return sp.location.infinite == w.first.infinite && std::abs(sp.location.z - w.first.z) < 1e-9 &&
                   sp.kind == w.second;
        });
    });
}

// ---------------------------------------------------------------------------

Outcome classification_corpus()
{
    const auto R = PointKind::regular;
    const auto I = PointKind::irregular;
    const Location inf = Location::infinity();
    auto at = [](cplx z) { return Location::at(z); };
    std::vector<std::tuple<std::string, odekit::LinearODE, Signature>> corpus;

    corpus.push_back({"w'' = 0", {odekit::RationalFunction(), odekit::RationalFunction()}, {{inf, R}}});
    corpus.push_back({"w'' + k^2 w = 0", {odekit::RationalFunction(), odekit::RationalFunction::constant(2.25)}, {{inf, I}}});
    corpus.push_back({"z w'' + (1 + a) w' = 0", odekit::from_polynomial_form(Polynomial{0.0, 1.0}, Polynomial{1.7}, Polynomial{}),
                      {{at(0.0), R}, {inf, R}}});
    const cplx a = 0.3, b = 1.2, c = 0.7;
    corpus.push_back({"hypergeometric",
                      odekit::from_polynomial_form(Polynomial{0.0, 1.0, -1.0}, Polynomial{c, -(1.0 + a + b)}, Polynomial{-a * b}),
                      {{at(0.0), R}, {at(1.0), R}, {inf, R}}});
    corpus.push_back({"confluent hypergeometric",
                      odekit::from_polynomial_form(Polynomial{0.0, 1.0}, Polynomial{0.6, -1.0}, Polynomial{-0.4}),
                      {{at(0.0), R}, {inf, I}}});
    const GeneralHeunParams hp{0.3, 0.5, 0.7, 0.6, 0.5, 2.5, 0.2};
    corpus.push_back({"general Heun", heun::general_heun(hp), {{at(0.0), R}, {at(1.0), R}, {at(2.5), R}, {inf, R}}});

    const std::vector<heun::ConfluentKind> kinds = {
        heun::ConfluentKind::symmetric_confluent, heun::ConfluentKind::two_center_coulomb, heun::ConfluentKind::spheroidal,
        heun::ConfluentKind::algebraic_mathieu,   heun::ConfluentKind::double_confluent,   heun::ConfluentKind::biconfluent,
        heun::ConfluentKind::anharmonic,          heun::ConfluentKind::triconfluent};
    for (auto kind : kinds) {
        heun::ConfluentFormParams cf{kind, {}};
        int j = 0;
        for (const auto& name : heun::confluent_param_names(kind))
            cf.params[name] = cplx(0.37 + 0.29 * j, 0.11 - 0.07 * j), ++j;
        Signature want;
        for (const auto& e : heun::expected_signature(kind))
            want.push_back({e.location, e.kind});
        corpus.push_back({heun::to_string(kind), heun::build_confluent_form(cf), want});
    }

    const auto eh = scenarios::eguchi_hanson_radial(1.0, 1.0, 1.0, 2.0);
    corpus.push_back({"Eguchi-Hanson radial", *eh.find_ode("radial")->rational, {{at(0.0), R}, {at(1.0), R}, {inf, I}}});
    const auto bd = scenarios::boundary_dirac_equation(1.0, 1.0, 0.3, 0.0);
    for (const char* label : {"u-derived", "u-printed"})
        corpus.push_back({std::string("boundary Dirac ") + label, *bd.find_ode(label)->rational,
                          {{at(0.0), I}, {at(-1.0), R}, {inf, I}}});

    Outcome out;
    int matched = 0;
    for (const auto& [name, ode, want] : corpus) {
        if (signature_is(odekit::classify_singularities(ode), want))
            ++matched;
        else {
            out.pass = false;
            out.detail += " mismatch: " + name + ";";
        }
    }
    out.detail = std::to_string(matched) + "/" + std::to_string(corpus.size()) + " equations match" + out.detail;
    return out;
}

Outcome fuchs_gate()
{
    Draw d(1001);
    int rejected = 0, accepted = 0;
    for (int i = 0; i < 1000; ++i) {
        GeneralHeunParams p{d.complex(-2, 2), d.complex(-2, 2), d.complex(-2, 2), d.complex(-2, 2), 0.0, d.complex(1.5, 4), d.complex(-1, 1)};
        const double gap = std::exp(d.real(std::log(1e-11), 0.0));
        p.e = p.a + p.b + 1.0 - p.c - p.d + std::polar(gap, d.real(-3.1, 3.1));
        try {
            heun::general_heun(p);
        } catch (const Error& e) {
            rejected += e.kind() == ErrorKind::FuchsViolation;
        }
    }
    for (int i = 0; i < 1000; ++i) {
        GeneralHeunParams p{d.complex(-2, 2), d.complex(-2, 2), d.complex(-2, 2), d.complex(-2, 2), 0.0, d.complex(1.5, 4), d.complex(-1, 1)};
        p.e = p.a + p.b + 1.0 - p.c - p.d;
        const auto pts = odekit::classify_singularities(heun::general_heun(p));
        accepted += signature_is(pts, {{Location::at(0.0), PointKind::regular},
                                       {Location::at(1.0), PointKind::regular},
                                       {Location::at(p.f), PointKind::regular},
                                       {Location::infinity(), PointKind::regular}});
    }
    return {rejected == 1000 && accepted == 1000,
            std::to_string(rejected) + "/1000 violating draws rejected, " + std::to_string(accepted) +
                "/1000 admissible draws with four regular points"};
}

Outcome hypergeometric_degeneration()
{
    Draw d(1002);
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        GeneralHeunParams p;
        p.a = d.complex(-2, 2);
        p.b = d.complex(-2, 2);
        do {
            p.c = d.complex(-3, 3);
        } while (reference::is_pole_parameter(p.c) || std::abs(p.c.imag()) < 0.05);
        p.e = 0.0;
        p.d = p.a + p.b + 1.0 - p.c;
        p.f = std::polar(d.real(1.5, 4.0), d.real(-3.1, 3.1));
        p.q = p.a * p.b * p.f;
        const auto s = heun::heun_series(p, Center::zero, Branch::first, 60);
        cplx g = 1.0;
        for (int k = 0; k <= 60; ++k) {
            worst = std::max(worst, std::abs(s.coeffs[k] - g) / std::max(std::abs(g), 1e-300));
            g *= (p.a + double(k)) * (p.b + double(k)) / ((p.c + double(k)) * (k + 1.0));
        }
    }
    return {worst <= 1e-13, "worst relative coefficient error " + sci(worst) + " over 100 draws, k <= 60 (bound 1e-13)"};
}

GeneralHeunParams random_heun(Draw& d, double f_lo, double f_hi, bool real_f)
{
    GeneralHeunParams p;
    p.a = d.complex(-1, 1);
    p.b = d.complex(-1, 1);
    p.c = d.complex(-1, 1);
    p.d = d.complex(-1, 1);
    p.e = p.a + p.b + 1.0 - p.c - p.d;
    p.f = real_f ? cplx(d.real(f_lo, f_hi)) : std::polar(d.real(f_lo, f_hi), d.real(-3.1, 3.1));
    p.q = d.complex(-1, 1);
    return p;
}

bool non_integer(cplx x) { return std::abs(x.imag()) > 0.05 || std::abs(x.real() - std::round(x.real())) > 0.05; }

Outcome series_vs_integration()
{
    Draw d(1004);
    double worst_value = 0, worst_abel = 0;
    int sets = 0;
    while (sets < 50) {
        const auto p = random_heun(d, 1.5, 6.0, false);
        if (!non_integer(p.c))
            continue;
        ++sets;
        const auto ode = heun::general_heun(p);
        const auto field = engine::CoefficientField::from(ode);
        const double radius = heun::heun_series(p, Center::zero, Branch::first, 2).radius;
        // a radial path keeps the second branch off its principal cut
        const double angle = d.real(-2.5, 2.5);
        const cplx za = std::polar(0.05 * radius, angle);
        const cplx zb = std::polar(0.5 * radius, angle);
        const engine::ComplexPath path{{za, zb}};
        std::vector<engine::Trace> traces;
        for (auto branch : {Branch::first, Branch::second}) {
            const auto va = heun::heun_eval(p, Center::zero, branch, za);
            const auto vb = heun::heun_eval(p, Center::zero, branch, zb);
            traces.push_back(engine::integrate_trace(field, {za, va.w, va.dw}, path, 1e-12));
            const auto& end = traces.back().final();
            const double scale = std::max(1.0, std::abs(vb.w));
            worst_value = std::max(worst_value, std::abs(end.w - vb.w) / scale);
        }
        worst_abel = std::max(worst_abel, engine::wronskian_abel_check(ode, traces[0], traces[1]));
    }
    return {worst_value <= 1e-8 && worst_abel <= 1e-8,
            "50 sets: series vs integration " + sci(worst_value) + " (bound 1e-8), Abel deviation " + sci(worst_abel) +
                " (bound 1e-8)"};
}

// Dense oracle on the unsymmetrised Fourier-coefficient recurrences
double dense_value(int n, double q, mathieu::Parity parity)
{
    const bool even = parity == mathieu::Parity::even;
    const int first = even ? n % 2 : (n % 2 == 1 ? 1 : 2);
    const int size = 120;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size, size);
    for (int k = 0; k < size; ++k) {
        const int f = first + 2 * k;
        m(k, k) = double(f * f);
        if (k > 0)
            m(k, k - 1) = q;
        if (k + 1 < size)
            m(k, k + 1) = q;
    }
    if (first == 0)
        m(1, 0) = 2.0 * q;
    if (first == 1)
        m(0, 0) += even ? q : -q;
    const Eigen::VectorXcd ev = Eigen::EigenSolver<Eigen::MatrixXd>(m, false).eigenvalues();
    std::vector<double> re;
    for (int i = 0; i < ev.size(); ++i)
        re.push_back(ev(i).real());
    std::sort(re.begin(), re.end());
    return re[even ? n / 2 : (n % 2 == 1 ? (n - 1) / 2 : n / 2 - 1)];
}

Outcome mathieu_suite()
{
    using mathieu::Parity;
    double worst_zero = 0, worst_dense = 0, worst_gram = 0, worst_residual = 0;
    for (int n = 0; n <= 8; ++n)
        for (auto parity : {Parity::even, Parity::odd}) {
            if (parity == Parity::odd && n == 0)
                continue;
            worst_zero = std::max(worst_zero, std::abs(mathieu::characteristic_value(n, 0.0, parity).value - double(n * n)));
            for (double q : {0.5, 1.0, 2.0, 5.0}) {
                const cplx v = mathieu::characteristic_value(n, q, parity).value;
                worst_dense = std::max(worst_dense, std::abs(v - dense_value(n, q, parity)));
            }
        }
    for (double q : {0.5, 1.0, 2.0, 5.0}) {
        const auto g = mathieu::orthogonality_matrix(q, 8);
        for (std::size_t i = 0; i < g.entries.size(); ++i)
            for (std::size_t j = 0; j < g.entries.size(); ++j)
                if (i != j)
                    worst_gram = std::max(worst_gram, std::abs(g.entries[i][j]));
    }
    for (int n : {0, 1, 3}) {
        const auto ang = scenarios::nutku_angular(1.0, 2.0, n, n == 0 ? Parity::even : Parity::odd);
        worst_residual = std::max(worst_residual, ang.find_residual("angular equation on 24 points")->value);
        const auto helm = scenarios::helmholtz_elliptic(2.0, 1.0, n + 1, Parity::even);
        worst_residual = std::max({worst_residual, helm.find_residual("angular")->value, helm.find_residual("radial")->value});
    }
    const bool ok = worst_zero <= 1e-12 && worst_dense <= 1e-10 && worst_gram <= 1e-9 && worst_residual <= 1e-7;
    return {ok, "q = 0 " + sci(worst_zero) + " (1e-12), dense oracle " + sci(worst_dense) + " (1e-10), Gram " +
                    sci(worst_gram) + " (1e-9), equation residuals " + sci(worst_residual) + " (1e-7)"};
}

Outcome scenario_claims()
{
    using mathieu::Parity;
    Outcome out;
    int claims = 0, checks = 0;
    auto fail = [&](const std::string& why) {
        out.pass = false;
        out.detail += " " + why + ";";
    };
    auto claims_pass = [&](const scenarios::ScenarioReport& r) {
        for (const auto& c : r.claims) {
            ++claims;
            if (!c.pass || c.quote.empty())
                fail(r.id + ": " + c.claim);
        }
        for (const auto& e : r.residuals) {
            ++checks;
            if (!e.pass())
                fail(r.id + ": " + e.label + " = " + sci(e.value));
        }
    };
    auto bounded = [&](const scenarios::ScenarioReport& r, const std::string& label, double bound) {
        const auto* e = r.find_residual(label);
        ++checks;
        if (!e || e->value > bound)
            fail(r.id + ": " + label + (e ? " = " + sci(e->value) : " missing"));
    };
    auto has_degeneration = [&](const scenarios::ScenarioReport& r) {
        ++checks;
        if (r.degenerations.empty())
            fail(r.id + ": degeneration not recorded");
    };

    claims_pass(scenarios::stark_separation(-0.5, 0.01, 0.0, 0.5));
    has_degeneration(scenarios::stark_separation(-0.5, 0.0, 0.0, 0.5));
    has_degeneration(scenarios::stark_separation(-0.5, 0.01, 1.0, 0.5));

    claims_pass(scenarios::h2plus_separation(1.3, 0.7, -2.1, 0.5));
    const auto flat = scenarios::h2plus_separation(1.3, 0.0, -2.1, 0.5);
    claims_pass(flat);
    has_degeneration(flat);
    has_degeneration(scenarios::h2plus_separation(0.0, 0.7, -2.1, 0.0));

    const auto ang = scenarios::nutku_angular(1.0, 2.0, 0, Parity::even);
    claims_pass(ang);
    bounded(ang, "angular equation on 24 points", 1e-8);
    bounded(ang, "largest off-diagonal Gram entry over [0, 2 pi]", 1e-9);
    has_degeneration(scenarios::nutku_angular(1.0, 0.0, 2, Parity::even));

    const auto rad = scenarios::nutku_radial(1.0, 2.0, 0.5, 0, Parity::even);
    claims_pass(rad);
    bounded(rad, "radial equation via Mathieu at i (x + b) on [0, 2]", 1e-6);
    const auto rad0 = scenarios::nutku_radial(1.0, 2.0, 0.0, 0, Parity::even);
    claims_pass(rad0);
    bounded(rad0, "radial equation via Mathieu at i (x + b) on [0, 2]", 1e-8);
    ++checks;
    try {
        scenarios::nutku_radial(1.0, 2.0, 2.0, 0);
        fail("nutku-radial: |A| = |B| accepted");
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::DegenerateShift)
            fail("nutku-radial: wrong error for |A| = |B|");
    }

    claims_pass(scenarios::eguchi_hanson_radial(1.0, 1.0, 1.0, 2.0));
    const auto eh0 = scenarios::eguchi_hanson_radial(1.0, 1.0, 0.0, 2.0);
    claims_pass(eh0);
    has_degeneration(eh0);

    const auto bd = scenarios::boundary_dirac_equation(1.0, 1.0, 0.3, 0.0);
    claims_pass(bd);
    bounded(bd, "Theta and u integrations at 65 matching points", 1e-6);
    bounded(bd, "Theta -> u -> Theta round trip", 1e-8);
    bounded(bd, "a k = 0: integrated solution against sin Theta", 1e-10);

    out.detail = std::to_string(claims) + " quoted claims and " + std::to_string(checks) + " checks" +
                 (out.pass ? " pass" : ", failures:" + out.detail);
    return out;
}

Outcome connection_composition()
{
    const double tol = engine::kDefaultTol;
    Draw d(1007);
    double worst_compose = 0, worst_loop = 0, worst_monodromy = 0;
    int sets = 0;
    while (sets < 20) {
        const auto p = random_heun(d, 1.5, 10.0, true);
        if (!non_integer(p.c) || !non_integer(p.d) || !non_integer(p.e))
            continue;
        ++sets;
        const auto c01 = engine::connection_matrix(p, Center::zero, Center::one, {}, tol);
        const auto c1f = engine::connection_matrix(p, Center::one, Center::f, {}, tol);
        const auto c0f = engine::connection_matrix(p, Center::zero, Center::f, {{cplx(1.0, 0.3)}}, tol);
        const auto prod = c01 * c1f;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                worst_compose = std::max(worst_compose, std::abs(prod.entries[i][j] - c0f.entries[i][j]) /
                                                            std::max(1.0, std::abs(c0f.entries[i][j])));

        const auto field = engine::CoefficientField::from(heun::general_heun(p));
        const auto loop = engine::circle_path(cplx(0.5, 0.5), 0.2, 24);
        const engine::SolutionState start{loop.vertices.front(), d.complex(-1, 1), d.complex(-1, 1)};
        const auto end = engine::integrate_path(field, start, loop, tol);
        const double scale = std::max({1.0, std::abs(start.w), std::abs(start.dw)});
        worst_loop = std::max(worst_loop, std::max(std::abs(end.w - start.w), std::abs(end.dw - start.dw)) / scale);

        // once around z = 0: the first branch is single-valued, the second picks up exp(2 pi i (1 - c))
        const auto around = engine::circle_path(0.0, 0.5, 24, 0.3);
        const cplx z0 = around.vertices.front();
        const cplx phase = std::exp(cplx(0.0, 2.0 * std::acos(-1.0)) * (1.0 - p.c));
        for (auto [branch, factor] : {std::pair{Branch::first, cplx(1.0)}, std::pair{Branch::second, phase}}) {
            const auto v = heun::heun_eval(p, Center::zero, branch, z0);
            const auto back = engine::integrate_path(field, {z0, v.w, v.dw}, around, tol * 1e-2);
            const double s = std::max({1.0, std::abs(v.w), std::abs(v.dw)}) * std::max(1.0, std::abs(factor));
            worst_monodromy = std::max(worst_monodromy,
                                       std::max(std::abs(back.w - factor * v.w), std::abs(back.dw - factor * v.dw)) / s);
        }
    }
    const double bound = 10 * tol;
    return {worst_compose <= bound && worst_loop <= bound && worst_monodromy <= bound,
            "20 sets, f in [1.5, 10]: composition " + sci(worst_compose) + ", contractible loop " + sci(worst_loop) +
                ", loop around 0 " + sci(worst_monodromy) + " (bound " +
                sci(bound) + ")"};
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome cli_determinism()
{
    const std::filesystem::path dir = std::filesystem::temp_directory_path() / "heunkit_acceptance";
    std::filesystem::create_directories(dir);
    const std::filesystem::path golden = HEUNKIT_GOLDEN_DIR;
    std::vector<std::string> runs;
    for (int i = 0; i < 2; ++i) {
        const auto out = dir / ("suite" + std::to_string(i) + ".json");
        std::filesystem::remove(out);
        const std::string cmd = std::string("\"") + HEUNKIT_TOOL + "\" scenario --all --output \"" + out.string() + "\"";
        if (std::system(cmd.c_str()) != 0)
            return {false, "tool run " + std::to_string(i + 1) + " failed"};
        runs.push_back(slurp(out));
    }
    int per_id = 0;
    for (const auto& id : scenarios::scenario_ids()) {
        const auto out = dir / (id + ".json");
        const std::string cmd = std::string("\"") + HEUNKIT_TOOL + "\" scenario --id " + id + " --output \"" + out.string() + "\"";
        per_id += std::system(cmd.c_str()) == 0 && slurp(out) == slurp(golden / (id + ".json"));
    }
    const bool same = runs[0] == runs[1];
    const bool golden_ok = runs[0] == slurp(golden / "suite.json");
    return {same && golden_ok && per_id == int(scenarios::scenario_ids().size()),
            std::string("two suite runs ") + (same ? "identical" : "differ") + ", suite golden " + (golden_ok ? "matches" : "differs") +
                ", " + std::to_string(per_id) + "/" + std::to_string(scenarios::scenario_ids().size()) + " scenario goldens match"};
}

} // namespace

int main()
{
    struct Criterion {
        int id;
        double limit_seconds;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, 1.0, classification_corpus},   {2, 5.0, fuchs_gate},        {3, 5.0, hypergeometric_degeneration},
        {4, 60.0, series_vs_integration},  {5, 30.0, mathieu_suite},    {6, 120.0, scenario_claims},
        {7, 60.0, connection_composition}, {8, 120.0, cli_determinism},
    };
    bool all = true;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("threw ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs <= c.limit_seconds;
        const bool pass = o.pass && in_time;
        all = all && pass;
        std::printf("criterion %d: %s  %s; %.2f s (limit %.0f s)%s\n", c.id, pass ? "PASS" : "FAIL", o.detail.c_str(), secs,
                    c.limit_seconds, in_time ? "" : " over time");
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
