#include "heunkit/scenarios.hpp"

#include "heunkit/error.hpp"
#include "heunkit/ode_grammar.hpp"
#include "heunkit/params_io.hpp"

#include <algorithm>
#include <cmath>

namespace heunkit::scenarios {

namespace {

struct ScenarioDefaults {
    std::string id;
    std::vector<std::pair<std::string, std::string>> defaults;
};

const std::vector<ScenarioDefaults>& scenario_table()
{
    static const std::vector<ScenarioDefaults> all = {
        {"helmholtz-elliptic", {{"a", "2"}, {"k", "1"}, {"n", "2"}, {"parity", "even"}}},
        {"stark", {{"E", "-0.5"}, {"F", "0.01"}, {"m", "0"}, {"beta1", "0.5"}}},
        {"h2plus", {{"lambda", "1.3"}, {"kappa", "0.7"}, {"mu", "-2.1"}, {"m", "0.5"}}},
        {"nutku-angular", {{"a", "1"}, {"k", "2"}, {"n", "0"}, {"parity", "even"}, {"phi", "0"}}},
        {"nutku-radial",
         {{"a", "1"}, {"k", "2"}, {"Lambda", "0.5"}, {"n", "0"}, {"parity", "even"}, {"printed_grouping", "false"},
          {"printed_sign", "false"}}},
        {"eguchi-hanson-radial", {{"k", "1"}, {"a", "1"}, {"m", "1"}, {"lambda", "2"}}},
        {"eguchi-hanson-angular", {{"lambda", "2.5"}, {"m", "0.3"}, {"n", "0.45"}}},
        {"boundary-dirac", {{"a", "1"}, {"k", "1"}, {"x0", "0.3"}, {"phi", "0"}}},
    };
    return all;
}

const ScenarioDefaults* find_defaults(const std::string& id)
{
    for (const auto& s : scenario_table())
        if (s.id == id)
            return &s;
    return nullptr;
}

bool is_flag(const std::string& key) { return key == "printed_grouping" || key == "printed_sign"; }

// Throws the underlying error kind; callers attach positions.
void check_value(const std::string& key, const std::string& value)
{
    if (key == "parity")
        mathieu::parity_from_string(value);
    else if (is_flag(key)) {
        if (value != "true" && value != "false")
            throw Error(ErrorKind::InvalidArgument, key + " must be true or false");
    } else
        odekit::parse_complex(value);
}

class Reader {
public:
    Reader(const ScenarioConfig& c, const ScenarioDefaults& s) : config_(c), defaults_(s) {}

    std::string raw(const std::string& key) const
    {
        if (auto it = config_.values.find(key); it != config_.values.end())
            return it->second;
        for (const auto& [k, v] : defaults_.defaults)
            if (k == key)
                return v;
        throw Error(ErrorKind::InvalidArgument, "no key '" + key + "' for scenario " + defaults_.id);
    }
    cplx complex(const std::string& key) const { return odekit::parse_complex(raw(key)); }
    double real(const std::string& key) const
    {
        const cplx z = complex(key);
        if (z.imag() != 0.0)
            throw Error(ErrorKind::InvalidArgument, key + " must be real");
        return z.real();
    }
    int integer(const std::string& key) const
    {
        const double x = real(key);
        if (x != std::round(x) || x < 0.0)
            throw Error(ErrorKind::InvalidArgument, key + " must be a non-negative integer");
        return static_cast<int>(x);
    }
    mathieu::Parity parity() const { return mathieu::parity_from_string(raw("parity")); }
    bool flag(const std::string& key) const { return raw(key) == "true"; }

private:
    const ScenarioConfig& config_;
    const ScenarioDefaults& defaults_;
};

} // namespace

const std::vector<std::string>& scenario_ids()
{
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> out;
        for (const auto& s : scenario_table())
            out.push_back(s.id);
        return out;
    }();
    return ids;
}

ScenarioConfig default_config(const std::string& id)
{
    const ScenarioDefaults* entry = find_defaults(id);
    if (!entry)
        throw Error(ErrorKind::UnknownKind, "unknown scenario '" + id + "'");
    ScenarioConfig c{id, {}};
    for (const auto& [k, v] : entry->defaults)
        c.values[k] = v;
    return c;
}

ScenarioConfig parse_scenario_config(std::string_view text)
{
    const auto line = params_io::parse_key_value_line(text, "scenario");
    ScenarioConfig c;
    auto fail = [&](std::size_t pos, const std::string& msg) {
        return Error(ErrorKind::ParseError, "at position " + std::to_string(pos) + ": " + msg);
    };
    for (std::size_t i = 0; i < line.fields.size(); ++i) {
        const auto& [key, value] = line.fields[i];
        if (key == "id") {
            c.id = value;
            continue;
        }
        if (c.values.count(key))
            throw fail(line.positions[i], "duplicate key '" + key + "'");
        try {
            check_value(key, value);
        } catch (const Error& e) {
            throw fail(line.positions[i], e.what());
        }
        c.values[key] = value;
    }
    if (c.id.empty())
        throw fail(text.size(), "missing id");
    if (const ScenarioDefaults* entry = find_defaults(c.id))
        for (std::size_t i = 0; i < line.fields.size(); ++i) {
            const auto& key = line.fields[i].first;
            const bool known = key == "id" || std::any_of(entry->defaults.begin(), entry->defaults.end(),
                                                          [&](const auto& d) { return d.first == key; });
            if (!known)
                throw fail(line.positions[i] - key.size() - 1, "unknown key '" + key + "' for scenario " + c.id);
        }
    return c;
}

std::string format_scenario_config(const ScenarioConfig& config)
{
    std::string out = "scenario id=" + config.id;
    for (const auto& [k, v] : config.values)
        out += " " + k + "=" + v;
    return out;
}

ScenarioReport run_scenario(const ScenarioConfig& config)
{
    const ScenarioDefaults* entry = find_defaults(config.id);
    if (!entry)
        throw Error(ErrorKind::UnknownKind, "unknown scenario '" + config.id + "'");
    for (const auto& [k, v] : config.values) {
        if (std::none_of(entry->defaults.begin(), entry->defaults.end(), [&](const auto& d) { return d.first == k; }))
            throw Error(ErrorKind::InvalidArgument, "unknown key '" + k + "' for scenario " + config.id);
    }
    const Reader in(config, *entry);
    const std::string& id = config.id;
    if (id == "helmholtz-elliptic")
        return helmholtz_elliptic(in.real("a"), in.real("k"), in.integer("n"), in.parity());
    if (id == "stark")
        return stark_separation(in.complex("E"), in.complex("F"), in.complex("m"), in.complex("beta1"));
    if (id == "h2plus")
        return h2plus_separation(in.complex("lambda"), in.complex("kappa"), in.complex("mu"), in.complex("m"));
    if (id == "nutku-angular")
        return nutku_angular(in.real("a"), in.real("k"), in.integer("n"), in.parity(), in.real("phi"));
    if (id == "nutku-radial")
        return nutku_radial(in.real("a"), in.real("k"), in.real("Lambda"), in.integer("n"), in.parity(),
                            {in.flag("printed_grouping"), in.flag("printed_sign")});
    if (id == "eguchi-hanson-radial")
        return eguchi_hanson_radial(in.complex("k"), in.complex("a"), in.complex("m"), in.complex("lambda"));
    if (id == "eguchi-hanson-angular")
        return eguchi_hanson_angular(in.complex("lambda"), in.complex("m"), in.complex("n"));
    return boundary_dirac_equation(in.real("a"), in.real("k"), in.real("x0"), in.real("phi"));
}

} // namespace heunkit::scenarios
