#pragma once

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include "errors.hpp"

namespace seelab {

using json = nlohmann::ordered_json;

/// Round to 12 significant digits so serialized reports are stable across
/// platforms and match the documented precision.  The value is formatted and
/// re-parsed: the stored double then prints as the 12-digit form.
inline double sig12(double v) {
    if (!std::isfinite(v)) return v;
    const std::string s = fmt::format("{:.12g}", v);
    return std::strtod(s.c_str(), nullptr);
}

/// JSON value carrying 12 significant digits; non-finite maps to null.
inline json jnum(double v) {
    if (!std::isfinite(v)) return nullptr;
    return sig12(v);
}

inline json jnum_array(const std::vector<double>& xs) {
    json a = json::array();
    for (double x : xs) a.push_back(jnum(x));
    return a;
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path));
    out << text;
    if (!out) throw IoError(fmt::format("write to '{}' failed", path));
}

inline void write_json_file(const std::string& path, const json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

/// CSV cell at the same 12-significant-digit precision as the JSON reports.
inline std::string csv_num(double v) { return fmt::format("{:.12g}", v); }

} // namespace seelab
