#include "heunkit/cli.hpp"

#include "heunkit/engine.hpp"
#include "heunkit/error.hpp"
#include "heunkit/heun.hpp"
#include "heunkit/json_text.hpp"
#include "heunkit/mathieu.hpp"
#include "heunkit/ode_grammar.hpp"
#include "heunkit/params_io.hpp"
#include "heunkit/scenarios.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace heunkit::cli {

namespace {

const std::vector<std::string> kVerbs = {"classify", "heun-eval", "mathieu-table", "scenario", "connect"};
const std::vector<std::string> kHeunKeys = {"a", "b", "c", "d", "e", "f", "q"};

std::string num(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s)
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream in(s);
    for (std::string item; std::getline(in, item, sep);)
        out.push_back(item);
    return out;
}

cplx complex_option(const std::string& name, const std::string& value)
{
    try {
        return odekit::parse_complex(value);
    } catch (const Error& e) {
        const std::string what = e.what();
        throw Error(ErrorKind::MalformedComplex, "--" + name + ": " + what.substr(what.find(": ") + 2));
    }
}

double parse_tol(const std::string& where, const std::string& text)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || !(v > 0.0) || !std::isfinite(v))
        throw Error(ErrorKind::InvalidArgument, where + ": '" + text + "' is not a positive tolerance");
    return v;
}

heun::Center parse_center(const std::string& name, const std::string& s)
{
    if (s == "0")
        return heun::Center::zero;
    if (s == "1")
        return heun::Center::one;
    if (s == "f")
        return heun::Center::f;
    throw Error(ErrorKind::InvalidArgument, "--" + name + " must be 0, 1 or f");
}

heun::GeneralHeunParams heun_from(const Command& cmd)
{
    auto get = [&](const std::string& k) { return complex_option(k, cmd.options.at(k)); };
    return {get("a"), get("b"), get("c"), get("d"), get("e"), get("f"), get("q")};
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// First line that is neither blank nor a # comment
std::string first_statement(const std::string& text)
{
    for (auto line : split(text, '\n')) {
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        if (line.find_first_not_of(" \t\r") != std::string::npos)
            return line.substr(0, line.find_last_not_of(" \t\r") + 1);
    }
    throw Error(ErrorKind::ParseError, "at position 0: empty input");
}

// -- classify ----------------------------------------------------------------

odekit::LinearODE ode_from_text(const std::string& line)
{
    const std::string head = line.substr(line.find_first_not_of(" \t"), std::string::npos);
    if (head.rfind("ode", 0) == 0)
        return odekit::parse_ode(line);
    if (head.rfind("heun", 0) == 0)
        return heun::general_heun(params_io::parse_heun_params(line));
    if (head.rfind("cform", 0) == 0)
        return heun::build_confluent_form(params_io::parse_confluent_params(line));
    throw Error(ErrorKind::ParseError, "at position 0: expected 'ode', 'heun' or 'cform'");
}

std::string classify(const Command& cmd)
{
    const auto ode = ode_from_text(first_statement(read_file(*cmd.input)));
    const auto points = odekit::classify_singularities(ode);
    std::string out;
    switch (cmd.format) {
    case Format::json: {
        Json pts = Json::array();
        for (const auto& sp : points) {
            Json p = {{"location", odekit::to_string(sp.location)}, {"kind", std::string(odekit::to_string(sp.kind))}};
            if (sp.kind == odekit::PointKind::irregular)
                p["rank"] = odekit::to_string(sp.rank);
            if (sp.exponents) {
                p["exponents"] = Json::array({complex_json(sp.exponents->first), complex_json(sp.exponents->second)});
                p["logarithmic"] = sp.exponents->logarithmic;
            }
            pts.push_back(p);
        }
        return dump_json({{"schema", 1}, {"ode", odekit::format_ode(ode)}, {"singularities", pts}});
    }
    case Format::csv:
        out = "location,kind,rank,exponent1_re,exponent1_im,exponent2_re,exponent2_im,logarithmic\n";
        for (const auto& sp : points) {
            out += csv_field(odekit::to_string(sp.location)) + "," + std::string(odekit::to_string(sp.kind)) + "," +
                   odekit::to_string(sp.rank);
            if (sp.exponents)
                out += "," + num(sp.exponents->first.real()) + "," + num(sp.exponents->first.imag()) + "," +
                       num(sp.exponents->second.real()) + "," + num(sp.exponents->second.imag()) + "," +
                       (sp.exponents->logarithmic ? "true" : "false");
            else
                out += ",,,,,";
            out += "\n";
        }
        return out;
    case Format::text:
        out = odekit::format_ode(ode) + "\n";
        for (const auto& sp : points) {
            out += odekit::to_string(sp.location) + ": " + std::string(odekit::to_string(sp.kind));
            if (sp.kind == odekit::PointKind::irregular)
                out += ", rank " + odekit::to_string(sp.rank);
            if (sp.exponents)
                out += ", exponents " + odekit::format_complex(sp.exponents->first) + ", " +
                       odekit::format_complex(sp.exponents->second) + (sp.exponents->logarithmic ? " (logarithmic)" : "");
            out += "\n";
        }
        return out;
    }
    return out;
}

// -- heun-eval ---------------------------------------------------------------

std::string heun_eval(const Command& cmd)
{
    const auto params = heun_from(cmd);
    params.validate();
    const auto center = parse_center("center", cmd.options.at("center"));
    const std::string& branch_name = cmd.options.at("branch");
    if (branch_name != "first" && branch_name != "second")
        throw Error(ErrorKind::InvalidArgument, "--branch must be first or second");
    const auto branch = branch_name == "first" ? heun::Branch::first : heun::Branch::second;
    const cplx z = complex_option("z", cmd.options.at("z"));
    const auto v = heun::heun_eval(params, center, branch, z);
    switch (cmd.format) {
    case Format::json:
        return dump_json({{"schema", 1},
                          {"params", params_io::format_heun_params(params)},
                          {"center", heun::to_string(center)},
                          {"branch", heun::to_string(branch)},
                          {"z", complex_json(z)},
                          {"w", complex_json(v.w)},
                          {"dw", complex_json(v.dw)},
                          {"tail", v.tail}});
    case Format::csv:
        return "z_re,z_im,w_re,w_im,dw_re,dw_im,tail\n" + num(z.real()) + "," + num(z.imag()) + "," + num(v.w.real()) +
               "," + num(v.w.imag()) + "," + num(v.dw.real()) + "," + num(v.dw.imag()) + "," + num(v.tail) + "\n";
    case Format::text:
        return "w = " + odekit::format_complex(v.w) + "\nw' = " + odekit::format_complex(v.dw) + "\ntail = " + num(v.tail) +
               "\n";
    }
    return {};
}

// -- mathieu-table -----------------------------------------------------------

std::string mathieu_table(const Command& cmd)
{
    std::vector<cplx> qs;
    for (const auto& item : split(cmd.options.at("q"), ','))
        qs.push_back(complex_option("q", item));
    const std::string& n_text = cmd.options.at("n-max");
    std::size_t used = 0;
    int n_max = -1;
    try {
        n_max = std::stoi(n_text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != n_text.size() || n_max < 0)
        throw Error(ErrorKind::InvalidArgument, "--n-max must be a non-negative integer");
    const std::string& which = cmd.options.at("parity");
    if (which != "even" && which != "odd" && which != "both")
        throw Error(ErrorKind::InvalidArgument, "--parity must be even, odd or both");

    std::vector<mathieu::CharacteristicValue> rows;
    for (cplx q : qs)
        for (int n = 0; n <= n_max; ++n) {
            if (which != "odd")
                rows.push_back(mathieu::characteristic_value(n, q, mathieu::Parity::even));
            if (which != "even" && n > 0)
                rows.push_back(mathieu::characteristic_value(n, q, mathieu::Parity::odd));
        }
    if (cmd.format != Format::json)
        return mathieu::characteristic_table_csv(rows);
    Json out = Json::array();
    for (const auto& r : rows)
        out.push_back({{"n", r.params.n},
                       {"parity", mathieu::to_string(r.params.parity)},
                       {"q", complex_json(r.params.q)},
                       {"value", complex_json(r.value)},
                       {"truncation", r.truncation}});
    return dump_json({{"schema", 1}, {"rows", out}});
}

// -- scenario ----------------------------------------------------------------

std::string scenario_csv(const std::vector<scenarios::ScenarioReport>& reports)
{
    std::string out = "scenario,kind,label,value,bound,pass\n";
    for (const auto& r : reports) {
        for (const auto& e : r.residuals)
            out += r.id + ",residual," + csv_field(e.label) + "," + num(e.value) + "," + (e.bound ? num(*e.bound) : "") + "," +
                   (e.pass() ? "true" : "false") + "\n";
        for (const auto& c : r.claims)
            out += r.id + ",claim," + csv_field(c.claim) + ",,," + (c.pass ? "true" : "false") + "\n";
    }
    return out;
}

std::string failures(const scenarios::ScenarioReport& r)
{
    std::string out;
    for (const auto& c : r.claims)
        if (!c.pass)
            out += r.id + ": claim failed: " + c.claim + "\n  \"" + c.quote + "\"\n  " + c.detail + "\n";
    for (const auto& e : r.residuals)
        if (!e.pass())
            out += r.id + ": residual '" + e.label + "' = " + num(e.value) + " exceeds " + num(*e.bound) + "\n";
    return out;
}

Result scenario(const Command& cmd)
{
    std::vector<scenarios::ScenarioConfig> configs;
    if (cmd.options.count("all")) {
        for (const auto& id : scenarios::scenario_ids())
            configs.push_back(scenarios::default_config(id));
    } else if (cmd.input) {
        configs.push_back(scenarios::parse_scenario_config(first_statement(read_file(*cmd.input))));
    } else {
        configs.push_back({cmd.options.at("id"), {}});
    }
    std::vector<scenarios::ScenarioReport> reports;
    Result res;
    for (const auto& c : configs) {
        reports.push_back(scenarios::run_scenario(c));
        res.diagnostics += failures(reports.back());
    }
    res.status = res.diagnostics.empty() ? 0 : 1;
    switch (cmd.format) {
    case Format::json:
        if (reports.size() == 1) {
            res.output = dump_json(scenarios::to_json(reports.front()));
        } else {
            Json all = Json::array();
            for (const auto& r : reports)
                all.push_back(scenarios::to_json(r));
            res.output = dump_json({{"schema", 1}, {"scenarios", all}});
        }
        break;
    case Format::csv:
        res.output = scenario_csv(reports);
        break;
    case Format::text:
        for (const auto& r : reports)
            res.output += scenarios::to_text(r) + (reports.size() > 1 ? "\n" : "");
        break;
    }
    return res;
}

// -- connect -----------------------------------------------------------------

std::string connect(const Command& cmd)
{
    const auto params = heun_from(cmd);
    const auto from = parse_center("from", cmd.options.at("from"));
    const auto to = parse_center("to", cmd.options.at("to"));
    engine::ComplexPath via;
    if (auto it = cmd.options.find("via"); it != cmd.options.end() && !it->second.empty())
        for (const auto& item : split(it->second, ';'))
            via.vertices.push_back(complex_option("via", item));
    const auto m = engine::connection_matrix(params, from, to, via, cmd.tol);
    switch (cmd.format) {
    case Format::json: {
        Json rows = Json::array();
        for (const auto& row : m.entries)
            rows.push_back(Json::array({complex_json(row[0]), complex_json(row[1])}));
        return dump_json({{"schema", 1},
                          {"params", params_io::format_heun_params(params)},
                          {"from", heun::to_string(from)},
                          {"to", heun::to_string(to)},
                          {"entries", rows},
                          {"from_point", complex_json(m.from_point)},
                          {"to_point", complex_json(m.to_point)},
                          {"condition", m.condition},
                          {"abel_deviation", m.abel_deviation}});
    }
    case Format::csv: {
        std::string out = "row,col,re,im\n";
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                out += std::to_string(i) + "," + std::to_string(j) + "," + num(m.entries[i][j].real()) + "," +
                       num(m.entries[i][j].imag()) + "\n";
        return out;
    }
    case Format::text: {
        std::string out;
        for (const auto& row : m.entries)
            out += odekit::format_complex(row[0]) + "  " + odekit::format_complex(row[1]) + "\n";
        return out + "condition " + num(m.condition) + ", Abel deviation " + num(m.abel_deviation) + "\n";
    }
    }
    return {};
}

bool is_usage(ErrorKind k)
{
    return k == ErrorKind::UnknownVerb || k == ErrorKind::MissingOption || k == ErrorKind::MalformedComplex;
}

} // namespace

Command parse_args(const std::vector<std::string>& args)
{
    if (args.empty())
        throw Error(ErrorKind::MissingOption, "no verb given; expected one of classify, heun-eval, mathieu-table, scenario, connect");
    Command cmd;
    cmd.verb = args.front();
    if (std::find(kVerbs.begin(), kVerbs.end(), cmd.verb) == kVerbs.end())
        throw Error(ErrorKind::UnknownVerb, "'" + cmd.verb + "'");

    CLI::App app{cmd.verb, cmd.verb};
    app.set_help_flag();
    std::map<std::string, std::string> values;
    std::string format = "json", output, tol, input;
    bool all = false;
    app.add_option("--format", format);
    app.add_option("--output", output);
    app.add_option("--tol", tol);

    auto required = [&](const std::string& name) { app.add_option("--" + name, values[name])->required(); };
    auto optional = [&](const std::string& name, const std::string& fallback) {
        values[name] = fallback;
        app.add_option("--" + name, values[name]);
    };
    if (cmd.verb == "classify") {
        app.add_option("--ode", input)->required();
    } else if (cmd.verb == "heun-eval") {
        for (const auto& k : kHeunKeys)
            required(k);
        required("z");
        optional("center", "0");
        optional("branch", "first");
    } else if (cmd.verb == "mathieu-table") {
        required("q");
        optional("n-max", "5");
        optional("parity", "both");
    } else if (cmd.verb == "scenario") {
        app.add_option("--config", input);
        app.add_option("--id", values["id"]);
        app.add_flag("--all", all);
    } else {
        for (const auto& k : kHeunKeys)
            required(k);
        required("from");
        required("to");
        optional("via", "");
    }

    std::vector<std::string> rest(args.begin() + 1, args.end());
    std::reverse(rest.begin(), rest.end()); // CLI11 consumes a reversed vector
    try {
        app.parse(rest);
    } catch (const CLI::RequiredError& e) {
        throw Error(ErrorKind::MissingOption, e.what());
    } catch (const CLI::ParseError& e) {
        throw Error(ErrorKind::InvalidArgument, e.what());
    }

    if (cmd.verb == "scenario") {
        const int chosen = int(!input.empty()) + int(!values["id"].empty()) + int(all);
        if (chosen == 0)
            throw Error(ErrorKind::MissingOption, "scenario needs --config, --id or --all");
        if (chosen > 1)
            throw Error(ErrorKind::InvalidArgument, "--config, --id and --all are exclusive");
        if (values["id"].empty())
            values.erase("id");
        if (all)
            values["all"] = "true";
    }
    for (const auto& k : {"a", "b", "c", "d", "e", "f", "q", "z"})
        if (auto it = values.find(k); it != values.end() && !(cmd.verb == "mathieu-table" && it->first == "q"))
            complex_option(k, it->second);
    if (cmd.verb == "mathieu-table")
        for (const auto& item : split(values["q"], ','))
            complex_option("q", item);
    if (auto it = values.find("via"); it != values.end() && !it->second.empty())
        for (const auto& item : split(it->second, ';'))
            complex_option("via", item);

    if (format == "json")
        cmd.format = Format::json;
    else if (format == "csv")
        cmd.format = Format::csv;
    else if (format == "text")
        cmd.format = Format::text;
    else
        throw Error(ErrorKind::InvalidArgument, "--format must be json, csv or text");

    if (const char* env = std::getenv("HEUNKIT_TOL"); env && *env)
        cmd.tol = parse_tol("HEUNKIT_TOL", env);
    if (!tol.empty())
        cmd.tol = parse_tol("--tol", tol);
    if (!input.empty())
        cmd.input = input;
    if (!output.empty())
        cmd.output = output;
    cmd.options = std::move(values);
    return cmd;
}

std::string usage(const std::string& verb)
{
    static const std::map<std::string, std::string> text = {
        {"classify", "heunkit classify --ode FILE [--format json|csv|text]\n"
                     "  FILE holds one 'ode ...', 'heun ...' or 'cform ...' line.\n"},
        {"heun-eval", "heunkit heun-eval --a A --b B --c C --d D --e E --f F --q Q --z Z\n"
                      "                  [--center 0|1|f] [--branch first|second] [--format json|csv|text]\n"},
        {"mathieu-table", "heunkit mathieu-table --q Q1,Q2,... [--n-max N] [--parity even|odd|both] [--format json|csv]\n"},
        {"scenario", "heunkit scenario (--config FILE | --id ID | --all) [--format json|csv|text]\n"
                     "  FILE holds one 'scenario id=ID key=value ...' line.\n"},
        {"connect", "heunkit connect --a A ... --q Q --from 0|1|f --to 0|1|f [--via Z1;Z2;...] [--tol T]\n"},
    };
    if (auto it = text.find(verb); it != text.end())
        return "usage: " + it->second;
    std::string out = "usage: heunkit VERB [options] [--output FILE] [--tol T]\n\nverbs:\n";
    for (const auto& v : kVerbs)
        out += "  " + text.at(v);
    return out + "\nHEUNKIT_TOL sets the default integration tolerance (1e-10).\n"
                 "Exit status: 0 success, 1 domain error or failed check, 2 usage error.\n";
}

Result run(const Command& cmd)
{
    Result res;
    try {
        if (cmd.verb == "classify")
            res.output = classify(cmd);
        else if (cmd.verb == "heun-eval")
            res.output = heun_eval(cmd);
        else if (cmd.verb == "mathieu-table")
            res.output = mathieu_table(cmd);
        else if (cmd.verb == "scenario")
            res = scenario(cmd);
        else if (cmd.verb == "connect")
            res.output = connect(cmd);
        else
            return {2, {}, std::string(error_name(ErrorKind::UnknownVerb)) + ": '" + cmd.verb + "'\n"};
    } catch (const Error& e) {
        return {is_usage(e.kind()) ? 2 : 1, {}, std::string(e.what()) + "\n"};
    } catch (const std::runtime_error& e) {
        return {2, {}, std::string(e.what()) + "\n"};
    }
    if (cmd.output) {
        std::ofstream out(*cmd.output, std::ios::binary);
        if (!(out << res.output))
            return {2, res.output, "cannot write '" + *cmd.output + "'\n"};
    }
    return res;
}

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    const bool help = std::any_of(args.begin(), args.end(), [](const auto& a) { return a == "--help" || a == "-h"; });
    if (help || (!args.empty() && args.front() == "help")) {
        std::cout << usage(args.empty() || args.front() == "help" ? (args.size() > 1 ? args[1] : "") : args.front());
        return 0;
    }
    Command cmd;
    try {
        cmd = parse_args(args);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n" << usage(args.empty() ? "" : args.front());
        return 2;
    }
    const Result res = run(cmd);
    if (!cmd.output)
        std::cout << res.output;
    std::cerr << res.diagnostics;
    return res.status;
}

} // namespace heunkit::cli
