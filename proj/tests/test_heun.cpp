#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "test_support.hpp"

#include "heunkit/heun.hpp"
#include "heunkit/hypergeometric.hpp"

#include <numbers>

using namespace heunkit;
using namespace heunkit::heun;
using odekit::Location;
using odekit::PointKind;
using testing::Draw;
using testing::kind_of;
using testing::rel;

namespace {

GeneralHeunParams random_heun(Draw& d)
{
    GeneralHeunParams p;
    p.a = d.complex(-2, 2);
    p.b = d.complex(-2, 2);
    p.c = d.complex(-2, 2);
    p.d = d.complex(-2, 2);
    p.e = p.a + p.b + 1.0 - p.c - p.d;
    p.f = d.polar(1.5, 4.0);
    p.q = d.complex(-2, 2);
    return p;
}

// Pochhammer-ratio coefficients of 2F1(a,b;c;z).
std::vector<cplx> gauss_coeffs(cplx a, cplx b, cplx c, int n)
{
    std::vector<cplx> out{1.0};
    for (int k = 0; k < n; ++k)
        out.push_back(out.back() * (a + double(k)) * (b + double(k)) / ((c + double(k)) * double(k + 1)));
    return out;
}

bool signature_matches(const LinearODE& ode, const std::vector<SignatureEntry>& want)
{
    const auto got = testing::nontrivial(ode);
    if (got.size() != want.size())
        return false;
    for (const auto& w : want) {
        const bool hit = std::any_of(got.begin(), got.end(), [&](const auto& sp) {
            return sp.location.infinite == w.location.infinite && std::abs(sp.location.z - w.location.z) < 1e-9 &&
                   sp.kind == w.kind;
        });
        if (!hit)
            return false;
    }
    return true;
}

} // namespace

TEST_CASE("general Heun with unit exponents has four regular points")
{
    const GeneralHeunParams p{1, 1, 1, 1, 1, 2, 0};
    const auto pts = testing::nontrivial(general_heun(p));
    REQUIRE(pts.size() == 4);
    CHECK(pts[0].location.z == cplx(0.0));
    CHECK(pts[1].location.z == cplx(1.0));
    CHECK(pts[2].location.z == cplx(2.0));
    CHECK(pts[3].location.infinite);
    for (const auto& sp : pts)
        CHECK(sp.kind == PointKind::regular);
}

TEST_CASE("parameter gate")
{
    CHECK(kind_of([] { general_heun({1, 1, 1, 1, 1.5, 2, 0}); }) == ErrorKind::FuchsViolation);
    CHECK(kind_of([] { general_heun({1, 1, 1, 1, 1, 1, 0}); }) == ErrorKind::CollidingSingularities);
    CHECK(kind_of([] { general_heun({1, 1, 1, 1, 1, 0, 0}); }) == ErrorKind::CollidingSingularities);
    CHECK(kind_of([] { heun_series({1, 1, 1, 1, 1.5, 2, 0}, Center::zero, Branch::first); }) ==
          ErrorKind::FuchsViolation);
}

TEST_CASE("Fuchs-admissible draws always give four regular points")
{
    Draw d(11);
    for (int i = 0; i < 1000; ++i) {
        const auto p = random_heun(d);
        const auto pts = testing::nontrivial(general_heun(p));
        REQUIRE(pts.size() == 4);
        for (const auto& sp : pts)
            REQUIRE(sp.kind == PointKind::regular);
    }
}

TEST_CASE("exponents at each center and at infinity")
{
    Draw d(5);
    for (int i = 0; i < 50; ++i) {
        const auto p = random_heun(d);
        const auto ode = general_heun(p);
        auto check_pair = [](odekit::IndicialRoots r, cplx x, cplx y) {
            const bool direct = std::abs(r.first - x) < 1e-7 && std::abs(r.second - y) < 1e-7;
            const bool swapped = std::abs(r.first - y) < 1e-7 && std::abs(r.second - x) < 1e-7;
            CHECK((direct || swapped));
        };
        check_pair(odekit::indicial_exponents(ode, Location::at(0.0)), 0.0, 1.0 - p.c);
        check_pair(odekit::indicial_exponents(ode, Location::at(1.0)), 0.0, 1.0 - p.d);
        check_pair(odekit::indicial_exponents(ode, Location::at(p.f)), 0.0, 1.0 - p.e);
        check_pair(odekit::indicial_exponents(ode, Location::infinity()), p.a, p.b);

        // Fuchs: the six exponents sum to 2
        cplx sum{};
        for (const auto& sp : testing::nontrivial(ode))
            sum += sp.exponents->first + sp.exponents->second;
        CHECK(std::abs(sum - 2.0) < 1e-8);

        for (Center c : {Center::zero, Center::one, Center::f}) {
            CHECK(heun_series(p, c, Branch::first, 4).exponent == cplx(0.0));
        }
        CHECK(heun_series(p, Center::zero, Branch::second, 4).exponent == 1.0 - p.c);
        CHECK(heun_series(p, Center::one, Branch::second, 4).exponent == 1.0 - p.d);
        CHECK(heun_series(p, Center::f, Branch::second, 4).exponent == 1.0 - p.e);
    }
}

TEST_CASE("classification is translation invariant")
{
    Draw d(8);
    for (int i = 0; i < 30; ++i) {
        const auto p = random_heun(d);
        const cplx shift = d.complex(-3, 3);
        const auto base = testing::nontrivial(general_heun(p));
        const auto moved = testing::nontrivial(general_heun(p).shifted(shift));
        REQUIRE(base.size() == moved.size());
        for (const auto& sp : base) {
            if (sp.location.infinite)
                continue;
            const bool hit = std::any_of(moved.begin(), moved.end(), [&](const auto& m) {
                return !m.location.infinite && std::abs(m.location.z + shift - sp.location.z) < 1e-8 &&
                       m.kind == sp.kind;
            });
            CHECK(hit);
        }
    }
}

TEST_CASE("zero forcing gives the constant series")
{
    const GeneralHeunParams p{0, 0.7, 1.3, 0.2, 0.7 + 1.0 - 1.3 - 0.2, 2.5, 0};
    const auto s = heun_series(p, Center::zero, Branch::first);
    CHECK(s.coeffs.size() == 61);
    CHECK(s.coeffs[0] == cplx(1.0));
    for (std::size_t k = 1; k < s.coeffs.size(); ++k)
        CHECK(s.coeffs[k] == cplx(0.0));
    const auto v = eval_local(s, 0.3);
    CHECK(v.w == cplx(1.0));
    CHECK(v.dw == cplx(0.0));
}

TEST_CASE("e = 0, q = abf degenerates to the Gauss series")
{
    Draw d(21);
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
        p.f = d.polar(1.5, 4.0);
        p.q = p.a * p.b * p.f;
        const auto s = heun_series(p, Center::zero, Branch::first, 60);
        const auto g = gauss_coeffs(p.a, p.b, p.c, 60);
        for (int k = 0; k <= 60; ++k) {
            const double scale = std::max(std::abs(g[k]), 1e-300);
            worst = std::max(worst, std::abs(s.coeffs[k] - g[k]) / scale);
        }
        const auto v = eval_local(s, 0.25);
        CHECK(rel(v.w, reference::gauss_2f1(p.a, p.b, p.c, 0.25)) <= 1e-10);
    }
    CHECK(worst <= 1e-13);
}

TEST_CASE("recurrence re-substitution residual")
{
    Draw d(3);
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        const auto p = random_heun(d);
        for (Center c : {Center::zero, Center::one, Center::f})
            for (Branch b : {Branch::first, Branch::second}) {
                LocalSeries s;
                try {
                    s = heun_series(p, c, b, 60);
                } catch (const Error& e) {
                    CHECK(e.kind() == ErrorKind::LogarithmicCase);
                    continue;
                }
                worst = std::max(worst, heun_recurrence_residual(p, c, s));
            }
    }
    CHECK(worst <= 1e-13);
}

TEST_CASE("heun series agrees with the generic Frobenius construction")
{
    Draw d(4);
    for (int i = 0; i < 30; ++i) {
        const auto p = random_heun(d);
        const auto ode = general_heun(p);
        for (Center c : {Center::zero, Center::one, Center::f}) {
            const auto s = heun_series(p, c, Branch::second, 30);
            const auto g = frobenius_series(ode, s.center, s.exponent, 30);
            for (int k = 0; k <= 30; ++k)
                CHECK(std::abs(s.coeffs[k] - g.coeffs[k]) <= 1e-9 * std::max(1.0, std::abs(g.coeffs[k])));
        }
    }
}

TEST_CASE("local evaluation solves the equation inside the disk")
{
    Draw d(6);
    for (int i = 0; i < 30; ++i) {
        const auto p = random_heun(d);
        const auto ode = general_heun(p);
        for (Center c : {Center::zero, Center::one, Center::f}) {
            const auto s0 = heun_series(p, c, Branch::first, 4);
            const cplx z = s0.center + std::polar(0.5 * s0.radius, d.real(-3, 3));
            const auto v = heun_eval(p, c, Branch::first, z);
            // second derivative from the equation; residual checked through nearby differences
            const double h = 1e-4 * s0.radius;
            const auto vp = heun_eval(p, c, Branch::first, z + h);
            const auto vm = heun_eval(p, c, Branch::first, z - h);
            const cplx d2 = (vp.dw - vm.dw) / (2.0 * h);
            const cplx dw_fd = (vp.w - vm.w) / (2.0 * h);
            CHECK(rel(dw_fd, v.dw) < 1e-6);
            CHECK(odekit::ode_residual(ode, std::vector<odekit::ResidualSample>{{z, v.w, v.dw, d2}}) < 1e-6);
        }
    }
}

TEST_CASE("eval_local radius and branch guards")
{
    const GeneralHeunParams p{0.5, 0.5, 1.0, 0.5, 0.5, 2.0, 0.1};
    const auto s = heun_series(p, Center::zero, Branch::first);
    CHECK(s.radius == doctest::Approx(1.0));
    CHECK(kind_of([&] { eval_local(s, 1.0); }) == ErrorKind::OutsideRadius);
    CHECK(kind_of([&] { eval_local(s, cplx(0, 1.2)); }) == ErrorKind::OutsideRadius);
    CHECK(heun_series(p, Center::f, Branch::first).radius == doctest::Approx(1.0));
    // c = 1 gives a double exponent at 0
    CHECK(kind_of([&] { heun_series(p, Center::zero, Branch::second); }) == ErrorKind::LogarithmicCase);
}

TEST_CASE("confluent kinds and parameter names")
{
    for (auto k : {ConfluentKind::symmetric_confluent, ConfluentKind::two_center_coulomb, ConfluentKind::spheroidal,
                   ConfluentKind::algebraic_mathieu, ConfluentKind::double_confluent, ConfluentKind::biconfluent,
                   ConfluentKind::anharmonic, ConfluentKind::triconfluent})
        CHECK(confluent_kind_from_string(to_string(k)) == k);
    CHECK(kind_of([] { confluent_kind_from_string("quadconfluent"); }) == ErrorKind::UnknownKind);
    ConfluentFormParams cf{ConfluentKind::biconfluent, {{"A0", 1.0}, {"A1", 1.0}, {"A2", 1.0}}};
    CHECK(kind_of([&] { build_confluent_form(cf); }) == ErrorKind::InvalidArgument);
    cf.params["A3"] = 1.0;
    cf.params["A4"] = 1.0;
    CHECK(kind_of([&] { build_confluent_form(cf); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("confluent forms match their signature tables")
{
    Draw d(9);
    for (int i = 0; i < 20; ++i) {
        for (auto k : {ConfluentKind::symmetric_confluent, ConfluentKind::two_center_coulomb,
                       ConfluentKind::spheroidal, ConfluentKind::algebraic_mathieu, ConfluentKind::double_confluent,
                       ConfluentKind::biconfluent, ConfluentKind::anharmonic, ConfluentKind::triconfluent}) {
            ConfluentFormParams cf{k, {}};
            for (const auto& n : confluent_param_names(k))
                cf.params[n] = d.complex(0.2, 2.0);
            INFO(to_string(k));
            CHECK(signature_matches(build_confluent_form(cf), expected_signature(k)));
        }
    }
}

TEST_CASE("spheroidal form coefficients")
{
    const cplx p = 0.8, lambda = 1.7, m = 0.6;
    const auto ode = build_confluent_form({ConfluentKind::spheroidal, {{"p", p}, {"lambda", lambda}, {"m", m}}});
    for (cplx z : {cplx(0.3, 0.1), cplx(2.0, -1.0), cplx(-0.5, 0.4)}) {
        const cplx z21 = z * z - 1.0;
        CHECK(rel(ode.p(z), 2.0 * z / z21) < 1e-13);
        CHECK(rel(ode.q(z), (-p * p * z21 - lambda - m * m / z21) / z21) < 1e-13);
    }
    const auto pts = testing::nontrivial(ode);
    REQUIRE(pts.size() == 3);
    CHECK(pts[0].location.z == cplx(-1.0));
    CHECK(pts[1].location.z == cplx(1.0));
    CHECK(pts[2].kind == PointKind::irregular);
}

TEST_CASE("algebraic Mathieu is spheroidal with m = 1/2")
{
    Draw d(10);
    for (int i = 0; i < 10; ++i) {
        const cplx p = d.complex(-2, 2), lambda = d.complex(-2, 2);
        const auto am = build_confluent_form({ConfluentKind::algebraic_mathieu, {{"p", p}, {"lambda", lambda}}});
        const auto sph =
            build_confluent_form({ConfluentKind::spheroidal, {{"p", p}, {"lambda", lambda}, {"m", 0.5}}});
        CHECK(am.p.num() == sph.p.num());
        CHECK(am.p.den() == sph.p.den());
        CHECK(am.q.num() == sph.q.num());
        CHECK(am.q.den() == sph.q.den());
    }
}

TEST_CASE("biconfluent form reads the first-derivative term as z w'")
{
    const auto ode =
        build_confluent_form({ConfluentKind::biconfluent, {{"A0", 0.3}, {"A1", -1.0}, {"A2", 0.5}, {"A3", 2.0}}});
    const cplx z{0.7, -0.2};
    CHECK(rel(ode.p(z), 1.0 / z) < 1e-14);
    CHECK(rel(ode.q(z), (0.3 - z + 0.5 * z * z + 2.0 * z * z * z - z * z * z * z) / (z * z)) < 1e-13);
    const auto pts = testing::nontrivial(ode);
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].kind == PointKind::regular);
    CHECK(pts[1].kind == PointKind::irregular);
    CHECK(pts[1].rank == odekit::Rank{2, 1});
}

TEST_CASE("double confluent reduction to Mathieu")
{
    auto dc = [](cplx alpha, cplx b0, cplx b1 = 0.0, cplx bm1 = 0.0) {
        return ConfluentFormParams{ConfluentKind::double_confluent,
                                   {{"alpha1", alpha}, {"alpham1", alpha}, {"B1", b1}, {"B0", b0}, {"Bm1", bm1}}};
    };

    const auto harmonic = double_confluent_to_mathieu(dc(0.0, 2.5));
    CHECK(harmonic.h2 == cplx(0.0));
    CHECK(harmonic.b == cplx(-2.5));
    CHECK(kind_of([&] { double_confluent_to_mathieu(dc(1.0, 0.5, 1.0)); }) == ErrorKind::NotReducible);
    auto skew = dc(1.0, 0.5);
    skew.params["alpham1"] = 1.1;
    CHECK(kind_of([&] { double_confluent_to_mathieu(skew); }) == ErrorKind::NotReducible);

    // Any Mathieu jet (y, y', y'') carried through z = e^{i theta}, w = exp(-i alpha sin theta) y
    // must solve the double confluent equation at that point.
    Draw d(12);
    double worst = 0;
    for (int i = 0; i < 40; ++i) {
        const cplx alpha = d.complex(-2, 2), b0 = d.complex(-3, 3);
        const auto cf = dc(alpha, b0);
        const auto m = double_confluent_to_mathieu(cf);
        const auto ode = build_confluent_form(cf);
        const cplx theta = d.complex(-1.5, 1.5);
        const cplx y = d.complex(-1, 1), y1 = d.complex(-1, 1);
        const cplx y2 = -(m.a - 2.0 * m.q * std::cos(2.0 * theta)) * y;
        CHECK(rel(y2, -(m.b - m.h2 * std::cos(theta) * std::cos(theta)) * y) < 1e-12);
        const cplx I{0, 1};
        const cplx g = std::exp(-I * alpha * std::sin(theta));
        const cplx g1 = -I * alpha * std::cos(theta) * g;
        const cplx g2 = (I * alpha * std::sin(theta) - alpha * alpha * std::cos(theta) * std::cos(theta)) * g;
        const cplx w = g * y, wt = g1 * y + g * y1, wtt = g2 * y + 2.0 * g1 * y1 + g * y2;
        const cplx z = std::exp(I * theta);
        const cplx wz = wt / (I * z);
        const cplx wzz = -(wtt + z * wz) / (z * z);
        worst = std::max(worst, odekit::ode_residual(ode, std::vector<odekit::ResidualSample>{{z, w, wz, wzz}}));
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("anharmonic reduction to biconfluent")
{
    CHECK(kind_of([] { anharmonic_to_biconfluent(1.0, 0.0, 1.0, 0.0, 0.0); }) == ErrorKind::DegenerateReduction);

    Draw d(13);
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
        const cplx E = d.complex(-2, 2), nu = d.complex(-2, 2), mu = d.complex(-2, 2), lambda = d.complex(-2, 2);
        const cplx eta = d.polar(0.2, 3.0);
        const auto red = anharmonic_to_biconfluent(E, nu, mu, lambda, eta);
        const auto bi = build_confluent_form(red.biconfluent);
        const auto an = build_confluent_form({ConfluentKind::anharmonic,
                                              {{"E", E}, {"nu", nu}, {"mu", mu}, {"lambda", lambda}, {"eta", eta}}});
        CHECK(signature_matches(bi, expected_signature(ConfluentKind::biconfluent)));
        const cplx s = red.scale;
        CHECK(rel(eta * s * s * s * s, 4.0) < 1e-13);

        const cplx r = d.complex(0.3, 1.5);
        const cplx t = r * r / s;
        // biconfluent jet -> anharmonic jet
        const cplx V = d.complex(-1, 1), V1 = d.complex(-1, 1);
        const cplx V2 = -(bi.p(t) * V1 + bi.q(t) * V);
        const cplx sq = std::sqrt(r);
        const cplx w = sq * V;
        const cplx w1 = 0.5 / sq * V + sq * (2.0 * r / s) * V1;
        const cplx w2 = -0.25 / (r * sq) * V + (4.0 / s) * sq * V1 + (4.0 / (s * s)) * r * r * sq * V2;
        worst = std::max(worst, odekit::ode_residual(an, std::vector<odekit::ResidualSample>{{r, w, w1, w2}}));
        // anharmonic jet -> biconfluent jet
        const cplx u = d.complex(-1, 1), u1 = d.complex(-1, 1);
        const cplx u2 = -an.q(r) * u;
        const cplx Vb = u / sq;
        const cplx dVdr = u1 / sq - 0.5 * u / (r * sq);
        const cplx d2Vdr2 = u2 / sq - u1 / (r * sq) + 0.75 * u / (r * r * sq);
        const cplx dt = 2.0 * r / s;
        const cplx Vt = dVdr / dt;
        const cplx Vtt = (d2Vdr2 - (2.0 / s) * Vt) / (dt * dt);
        worst = std::max(worst, odekit::ode_residual(bi, std::vector<odekit::ResidualSample>{{t, Vb, Vt, Vtt}}));
    }
    CHECK(worst <= 1e-8);
}
