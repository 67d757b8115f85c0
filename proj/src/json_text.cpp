#include "heunkit/json_text.hpp"

#include <cmath>
#include <cstdio>

namespace heunkit {

namespace {

void write(std::string& out, const Json& v, int depth)
{
    const std::string pad(static_cast<std::size_t>(2 * depth + 2), ' ');
    const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
    switch (v.type()) {
    case Json::value_t::object: {
        if (v.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = v.begin(); it != v.end(); ++it) {
            if (!first)
                out += ",\n";
            first = false;
            out += pad + Json(it.key()).dump() + ": ";
            write(out, it.value(), depth + 1);
        }
        out += "\n" + close_pad + "}";
        return;
    }
    case Json::value_t::array: {
        if (v.empty()) {
            out += "[]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i)
                out += ",\n";
            out += pad;
            write(out, v[i], depth + 1);
        }
        out += "\n" + close_pad + "]";
        return;
    }
    case Json::value_t::number_float: {
        const double d = v.get<double>();
        if (!std::isfinite(d)) {
            out += "null";
            return;
        }
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", d);
        out += buf;
        return;
    }
    default:
        out += v.dump();
    }
}

} // namespace

std::string dump_json(const Json& value)
{
    std::string out;
    write(out, value, 0);
    out += '\n';
    return out;
}

Json complex_json(cplx z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

} // namespace heunkit
