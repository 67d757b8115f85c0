#include "heunkit/scenarios.hpp"

#include "support.hpp"

#include <algorithm>
#include <sstream>

namespace heunkit::scenarios {

bool ScenarioReport::all_pass() const
{
    return std::all_of(claims.begin(), claims.end(), [](const Claim& c) { return c.pass; }) &&
           std::all_of(residuals.begin(), residuals.end(), [](const ResidualEntry& r) { return r.pass(); });
}

const Claim* ScenarioReport::find_claim(const std::string& claim) const
{
    for (const auto& c : claims)
        if (c.claim == claim)
            return &c;
    return nullptr;
}

const ResidualEntry* ScenarioReport::find_residual(const std::string& label) const
{
    for (const auto& r : residuals)
        if (r.label == label)
            return &r;
    return nullptr;
}

const OdeEntry* ScenarioReport::find_ode(const std::string& label) const
{
    for (const auto& o : odes)
        if (o.label == label)
            return &o;
    return nullptr;
}

namespace {

Json point_json(const SingularPoint& sp)
{
    Json j;
    j["location"] = odekit::to_string(sp.location);
    j["kind"] = std::string(odekit::to_string(sp.kind));
    if (sp.kind == odekit::PointKind::irregular)
        j["rank"] = odekit::to_string(sp.rank);
    if (sp.exponents) {
        j["exponents"] = Json::array({complex_json(sp.exponents->first), complex_json(sp.exponents->second)});
        j["logarithmic"] = sp.exponents->logarithmic;
    }
    return j;
}

} // namespace

Json to_json(const ScenarioReport& r)
{
    Json j;
    j["schema"] = 1;
    j["scenario"] = r.id;
    Json inputs = Json::object();
    for (const auto& [k, v] : r.inputs)
        inputs[k] = v.imag() == 0.0 ? Json(v.real()) : complex_json(v);
    j["inputs"] = inputs;
    Json settings = Json::object();
    for (const auto& [k, v] : r.settings)
        settings[k] = v;
    j["settings"] = settings;
    Json odes = Json::array();
    for (const auto& o : r.odes) {
        Json e;
        e["label"] = o.label;
        e["variable"] = o.variable;
        e["form"] = o.form;
        if (!o.algebraization.empty())
            e["algebraization"] = o.algebraization;
        if (o.rational) {
            Json pts = Json::array();
            for (const auto& sp : o.singularities)
                if (sp.kind != odekit::PointKind::ordinary)
                    pts.push_back(point_json(sp));
            e["singularities"] = pts;
        }
        odes.push_back(e);
    }
    j["odes"] = odes;
    Json res = Json::array();
    for (const auto& x : r.residuals) {
        Json e;
        e["label"] = x.label;
        e["value"] = x.value;
        if (x.bound) {
            e["bound"] = *x.bound;
            e["pass"] = x.pass();
        }
        res.push_back(e);
    }
    j["residuals"] = res;
    Json claims = Json::array();
    for (const auto& c : r.claims)
        claims.push_back(Json{{"claim", c.claim}, {"quote", c.quote}, {"pass", c.pass}, {"detail", c.detail}});
    j["claims"] = claims;
    j["degenerations"] = r.degenerations;
    j["notes"] = r.notes;
    j["data"] = r.data;
    j["pass"] = r.all_pass();
    return j;
}

std::string to_text(const ScenarioReport& r)
{
    std::ostringstream os;
    os << "scenario " << r.id << (r.all_pass() ? " PASS" : " FAIL") << '\n';
    for (const auto& [k, v] : r.inputs)
        os << "  input " << k << " = " << detail::fmt(v) << '\n';
    for (const auto& [k, v] : r.settings)
        os << "  setting " << k << " = " << v << '\n';
    for (const auto& o : r.odes) {
        os << "  ode " << o.label << " [" << o.variable << "]: " << o.form << '\n';
        if (!o.algebraization.empty())
            os << "    via " << o.algebraization << '\n';
        if (o.rational)
            os << "    singularities " << detail::signature_text(o.singularities) << '\n';
    }
    for (const auto& x : r.residuals) {
        os << "  residual " << x.label << " = " << detail::fmt(x.value);
        if (x.bound)
            os << " (bound " << detail::fmt(*x.bound) << (x.pass() ? ", pass)" : ", FAIL)");
        os << '\n';
    }
    for (const auto& c : r.claims)
        os << "  claim [" << (c.pass ? "pass" : "FAIL") << "] " << c.claim << "\n    \"" << c.quote << "\"\n"
           << (c.detail.empty() ? "" : "    " + c.detail + "\n");
    for (const auto& d : r.degenerations)
        os << "  degeneration: " << d << '\n';
    for (const auto& n : r.notes)
        os << "  note: " << n << '\n';
    return os.str();
}

} // namespace heunkit::scenarios
