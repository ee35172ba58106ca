#pragma once
// JSON/CSV export of solver results and phase-space tables. Both
// formats render numbers through the same 12-significant-digit
// formatter so they agree digit for digit.

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>

#include "bounds.hpp"

namespace qbell {

using nlohmann::json;
using nlohmann::ordered_json;

inline std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// Numbers go into JSON re-parsed from their 12-digit rendering so the
// serialized text matches the CSV rendering exactly.
inline json num12(double v) { return json::parse(fmt12(v)); }

inline ordered_json to_json(const LhvResult& r, int d) {
    ordered_json j;
    j["d"] = d;
    j["method"] = r.method;
    j["bound"] = num12(r.bound);
    j["strategy"] = {{"alpha", r.alpha}, {"beta", r.beta}};
    j["restarts"] = r.restarts;
    j["seed"] = r.seed;
    j["wall_ms"] = num12(r.wall_ms);
    return j;
}

inline ordered_json to_json(const PhaseSpaceTable& t) {
    ordered_json j;
    j["d"] = t.d;
    j["n"] = t.n;
    j["kind"] = t.kind == TableKind::wigner ? "wigner" : "characteristic";
    auto vals = ordered_json::array();
    for (auto& v : t.values) vals.push_back({num12(v.real()), num12(v.imag())});
    j["values"] = std::move(vals);
    return j;
}

// RFC-4180: quote fields containing commas, quotes, or line breaks;
// double embedded quotes.
inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_field(fields[i]);
    }
    return out + "\r\n";
}

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << text;
    if (!f) throw std::runtime_error("write failed: " + path);
}

} // namespace qbell
