#include "ffec/report_json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace ffec {

namespace {

void append_number(std::string& out, double v) {
    if (!std::isfinite(v)) {
        out += "null";
        return;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s = buf;
    // Keep the float typing visible through a round trip.
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    out += s;
}

void dump_rec(const Json& j, std::string& out, bool pretty, int depth) {
    const std::string pad = pretty ? std::string(2 * size_t(depth + 1), ' ') : "";
    const std::string close_pad = pretty ? std::string(2 * size_t(depth), ' ') : "";
    const char* nl = pretty ? "\n" : "";
    const char* sep = pretty ? ": " : ":";

    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{";
            out += nl;
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) {
                    out += ",";
                    out += nl;
                }
                first = false;
                out += pad;
                out += Json(it.key()).dump();
                out += sep;
                dump_rec(it.value(), out, pretty, depth + 1);
            }
            out += nl;
            out += close_pad;
            out += "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[";
            out += nl;
            bool first = true;
            for (const auto& v : j) {
                if (!first) {
                    out += ",";
                    out += nl;
                }
                first = false;
                out += pad;
                dump_rec(v, out, pretty, depth + 1);
            }
            out += nl;
            out += close_pad;
            out += "]";
            return;
        }
        case Json::value_t::number_float:
            append_number(out, j.get<double>());
            return;
        default:
            // Integers, strings, booleans, null: nlohmann's spelling is
            // already canonical.
            out += j.dump();
            return;
    }
}

}  // namespace

std::string dump_canonical(const Json& j, bool pretty) {
    std::string out;
    dump_rec(j, out, pretty, 0);
    return out;
}

Json report_header(const std::string& kind) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = kind;
    return j;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace ffec
