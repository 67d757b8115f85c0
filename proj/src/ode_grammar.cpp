#include "heunkit/ode_grammar.hpp"

#include "heunkit/error.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <regex>
#include <sstream>

namespace heunkit::odekit {

namespace {

double to_double(const std::string& s)
{
    double v = 0.0;
    const char* first = s.data();
    if (!s.empty() && s.front() == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw Error(ErrorKind::MalformedComplex, "bad number '" + s + "'");
    return v;
}

std::string fmt_double(double v)
{
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

} // namespace

cplx parse_complex(std::string_view text)
{
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            s.push_back(ch);
    static const std::string num = R"((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)";
    static const std::regex re_full("^([+-]?" + num + ")?(?:([+-])(" + num + ")?i)?$");
    static const std::regex re_imag("^([+-]?)(" + num + ")?i$");
    std::smatch m;
    if (s.empty())
        throw Error(ErrorKind::MalformedComplex, "empty complex literal");
    if (std::regex_match(s, m, re_imag)) {
        const double mag = m[2].matched ? to_double(m[2].str()) : 1.0;
        return {0.0, m[1].str() == "-" ? -mag : mag};
    }
    if (std::regex_match(s, m, re_full) && (m[1].matched || m[2].matched)) {
        const double re = m[1].matched ? to_double(m[1].str()) : 0.0;
        double im = 0.0;
        if (m[2].matched) {
            im = m[3].matched ? to_double(m[3].str()) : 1.0;
            if (m[2].str() == "-")
                im = -im;
        }
        return {re, im};
    }
    throw Error(ErrorKind::MalformedComplex, "cannot parse '" + std::string(text) + "' as a complex number");
}

std::string format_complex(cplx z)
{
    std::string out = fmt_double(z.real());
    if (z.imag() != 0.0 || std::signbit(z.imag())) {
        const std::string im = fmt_double(z.imag());
        out += (im.front() == '-' ? "" : "+") + im + "i";
    }
    return out;
}

LinearODE parse_ode(std::string_view text)
{
    // strip whitespace but remember where every kept character came from
    std::string s;
    std::vector<std::size_t> origin;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (!std::isspace(static_cast<unsigned char>(text[i]))) {
            s.push_back(text[i]);
            origin.push_back(i);
        }
    }
    std::size_t pos = 0;
    auto where = [&](std::size_t k) { return k < origin.size() ? origin[k] : text.size(); };
    auto fail = [&](std::size_t k, const std::string& msg) -> Error {
        return Error(ErrorKind::ParseError, "at position " + std::to_string(where(k)) + ": " + msg);
    };

    if (s.compare(0, 3, "ode") != 0)
        throw fail(0, "expected keyword 'ode'");
    pos = 3;

    std::map<std::string, std::vector<cplx>> fields;
    while (pos < s.size()) {
        const std::size_t key_start = pos;
        const std::size_t eq = s.find('=', pos);
        if (eq == std::string::npos)
            throw fail(pos, "expected key=[...]");
        const std::string key = s.substr(pos, eq - pos);
        if (key != "p_num" && key != "p_den" && key != "q_num" && key != "q_den")
            throw fail(key_start, "unknown key '" + key + "'");
        if (fields.count(key))
            throw fail(key_start, "duplicate key '" + key + "'");
        pos = eq + 1;
        if (pos >= s.size() || s[pos] != '[')
            throw fail(pos, "expected '['");
        const std::size_t close = s.find(']', pos);
        if (close == std::string::npos)
            throw fail(pos, "unterminated list");
        std::vector<cplx> values;
        std::size_t item = pos + 1;
        while (item < close) {
            std::size_t comma = s.find(',', item);
            if (comma == std::string::npos || comma > close)
                comma = close;
            try {
                values.push_back(parse_complex(s.substr(item, comma - item)));
            } catch (const Error& e) {
                throw fail(item, e.what());
            }
            item = comma + 1;
        }
        if (values.empty())
            throw fail(pos, "empty coefficient list");
        fields[key] = std::move(values);
        pos = close + 1;
    }
    for (const char* req : {"p_num", "q_num"})
        if (!fields.count(req))
            throw fail(s.size(), std::string("missing ") + req);
    auto den = [&](const char* k) { return fields.count(k) ? fields[k] : std::vector<cplx>{1.0}; };
    try {
        return {make_rational(fields["p_num"], den("p_den")), make_rational(fields["q_num"], den("q_den"))};
    } catch (const Error& e) {
        throw fail(0, e.what());
    }
}

std::string format_ode(const LinearODE& ode)
{
    auto list = [](const Polynomial& p) {
        std::string out = "[";
        if (p.is_zero())
            out += "0";
        for (std::size_t i = 0; i < p.coeffs().size(); ++i)
            out += (i ? "," : "") + format_complex(p.coeffs()[i]);
        return out + "]";
    };
    return "ode p_num=" + list(ode.p.num()) + " p_den=" + list(ode.p.den()) + " q_num=" + list(ode.q.num()) +
           " q_den=" + list(ode.q.den());
}

} // namespace heunkit::odekit
