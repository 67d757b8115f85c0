#include "heunkit/params_io.hpp"

#include "heunkit/error.hpp"
#include "heunkit/ode_grammar.hpp"

#include <cctype>
#include <map>

namespace heunkit::params_io {

namespace {

Error parse_error(std::size_t pos, const std::string& msg)
{
    return Error(ErrorKind::ParseError, "at position " + std::to_string(pos) + ": " + msg);
}

cplx field_value(const KeyValueLine& line, std::size_t i)
{
    try {
        return odekit::parse_complex(line.fields[i].second);
    } catch (const Error& e) {
        throw parse_error(line.positions[i], e.what());
    }
}

} // namespace

KeyValueLine parse_key_value_line(std::string_view text, std::string_view expected_head)
{
    KeyValueLine line;
    std::size_t i = 0;
    auto skip_space = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
    };
    auto token = [&] {
        const std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
        return std::pair{start, std::string(text.substr(start, i - start))};
    };
    skip_space();
    auto [head_pos, head] = token();
    if (head != expected_head)
        throw parse_error(head_pos, "expected keyword '" + std::string(expected_head) + "'");
    line.head = head;
    for (skip_space(); i < text.size(); skip_space()) {
        auto [pos, tok] = token();
        const auto eq = tok.find('=');
        if (eq == std::string::npos || eq == 0)
            throw parse_error(pos, "expected key=value, got '" + tok + "'");
        if (eq + 1 == tok.size())
            throw parse_error(pos + eq + 1, "missing value for '" + tok.substr(0, eq) + "'");
        const std::string key = tok.substr(0, eq);
        for (const auto& [k, v] : line.fields)
            if (k == key)
                throw parse_error(pos, "duplicate key '" + key + "'");
        line.fields.emplace_back(key, tok.substr(eq + 1));
        line.positions.push_back(pos + eq + 1);
    }
    return line;
}

heun::GeneralHeunParams parse_heun_params(std::string_view text)
{
    const auto line = parse_key_value_line(text, "heun");
    std::map<std::string, cplx> v;
    for (std::size_t i = 0; i < line.fields.size(); ++i) {
        const auto& key = line.fields[i].first;
        if (key.size() != 1 || std::string_view("abcdefq").find(key[0]) == std::string_view::npos)
            throw parse_error(line.positions[i] - key.size() - 1, "unknown key '" + key + "'");
        v[key] = field_value(line, i);
    }
    for (const char* k : {"a", "b", "c", "d", "e", "f", "q"})
        if (!v.count(k))
            throw parse_error(text.size(), std::string("missing key '") + k + "'");
    return {v["a"], v["b"], v["c"], v["d"], v["e"], v["f"], v["q"]};
}

std::string format_heun_params(const heun::GeneralHeunParams& p)
{
    using odekit::format_complex;
    return "heun a=" + format_complex(p.a) + " b=" + format_complex(p.b) + " c=" + format_complex(p.c) +
           " d=" + format_complex(p.d) + " e=" + format_complex(p.e) + " f=" + format_complex(p.f) +
           " q=" + format_complex(p.q);
}

heun::ConfluentFormParams parse_confluent_params(std::string_view text)
{
    const auto line = parse_key_value_line(text, "cform");
    heun::ConfluentFormParams cf{};
    bool have_kind = false;
    for (std::size_t i = 0; i < line.fields.size(); ++i) {
        const auto& [key, value] = line.fields[i];
        if (key == "kind") {
            cf.kind = heun::confluent_kind_from_string(value);
            have_kind = true;
        } else {
            cf.params[key] = field_value(line, i);
        }
    }
    if (!have_kind)
        throw parse_error(text.size(), "missing key 'kind'");
    cf.validate();
    return cf;
}

std::string format_confluent_params(const heun::ConfluentFormParams& cf)
{
    std::string out = "cform kind=" + heun::to_string(cf.kind);
    for (const auto& name : heun::confluent_param_names(cf.kind))
        out += " " + name + "=" + odekit::format_complex(cf.at(name));
    return out;
}

} // namespace heunkit::params_io
