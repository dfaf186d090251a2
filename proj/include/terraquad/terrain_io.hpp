#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "terraquad/terrain.hpp"

namespace terraquad {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Readable input that does not parse as a terrain.
class FormatError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Shortest decimal string that parses back to exactly d.
inline std::string format_double(double d) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, d);
    return std::string(buf, res.ptr);
}

inline std::vector<Point> parse_json_vertices(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array())
        throw FormatError("JSON terrain needs a \"vertices\" array");
    std::vector<Point> pts;
    for (const auto& v : j["vertices"]) {
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
            throw FormatError("each vertex must be [x, y]");
        pts.push_back({v[0].get<double>(), v[1].get<double>()});
    }
    return pts;
}

inline std::vector<Point> parse_text_vertices(const std::string& text) {
    std::istringstream in(text);
    long long n = 0;
    if (!(in >> n) || n < 0) throw FormatError("text terrain must start with a vertex count");
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) {
        std::string xs, ys;
        if (!(in >> xs >> ys)) throw FormatError("text terrain truncated at vertex " + std::to_string(i));
        Point p;
        auto rx = std::from_chars(xs.data(), xs.data() + xs.size(), p.x);
        auto ry = std::from_chars(ys.data(), ys.data() + ys.size(), p.y);
        if (rx.ec != std::errc{} || ry.ec != std::errc{} || rx.ptr != xs.data() + xs.size() ||
            ry.ptr != ys.data() + ys.size())
            throw FormatError("bad number at vertex " + std::to_string(i));
        pts.push_back(p);
    }
    return pts;
}

/// Accepts either format; JSON is recognised by a leading '{'.
inline std::vector<Point> parse_vertices(const std::string& text) {
    auto pos = text.find_first_not_of(" \t\r\n");
    if (pos != std::string::npos && text[pos] == '{') return parse_json_vertices(text);
    return parse_text_vertices(text);
}

inline std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot write " + path);
    f << content;
    if (!f) throw IoError("write failed for " + path);
}

inline std::string vertices_to_json(const std::vector<Point>& pts) {
    std::string s = "{\"vertices\": [";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) s += ", ";
        s += "[" + format_double(pts[i].x) + ", " + format_double(pts[i].y) + "]";
    }
    s += "]}\n";
    return s;
}

inline std::string vertices_to_text(const std::vector<Point>& pts) {
    std::string s = std::to_string(pts.size()) + "\n";
    for (const Point& p : pts) s += format_double(p.x) + " " + format_double(p.y) + "\n";
    return s;
}

inline Terrain load_terrain(const std::string& path, Tolerance tol = {}) {
    return validate(parse_vertices(read_file(path)), tol);
}

}  // namespace terraquad
