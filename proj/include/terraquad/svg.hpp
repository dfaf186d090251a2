#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>

#include "terraquad/quad_solver.hpp"
#include "terraquad/terrain.hpp"
#include "terraquad/terrain_io.hpp"

namespace terraquad {

struct SvgOverlay {
    std::optional<Quad> quad;
    std::array<EdgeKind, 3> kinds{EdgeKind::EXTREMAL, EdgeKind::EXTREMAL, EdgeKind::EXTREMAL};
    std::optional<Rect> rect;
    std::string title;
};

inline std::string xml_escape(const std::string& in) {
    std::string out;
    for (char c : in) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

/// Static SVG: filled terrain, then the quad edges (stroke style by edge
/// kind, labelled) and the rectangle.
inline std::string render_svg(const Terrain& t, const SvgOverlay& o, double width_px = 800.0) {
    const double pad = 20.0;
    const double w = t.width();
    const double h = std::max(t.max_height(), 1e-12);
    const double s = (width_px - 2 * pad) / w;
    const double height_px = h * s + 2 * pad + 20.0;
    auto X = [&](double x) { return format_double(pad + (x - t.x_min()) * s); };
    auto Y = [&](double y) { return format_double(height_px - pad - y * s); };
    auto pt = [&](Point p) { return X(p.x) + "," + Y(p.y); };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_double(width_px) << "\" height=\""
       << format_double(height_px) << "\" viewBox=\"0 0 " << format_double(width_px) << " " << format_double(height_px)
       << "\">\n";
    if (!o.title.empty()) os << "  <title>" << xml_escape(o.title) << "</title>\n";
    os << "  <polygon class=\"terrain\" fill=\"#d9cbb0\" stroke=\"#6b5b3e\" stroke-width=\"1\" points=\"";
    for (const Point& p : t.vertices()) os << pt(p) << " ";
    os << "\"/>\n";
    if (o.rect) {
        os << "  <rect class=\"rect\" fill=\"#4f86c6\" fill-opacity=\"0.35\" stroke=\"#1f4e8c\" stroke-width=\"1.5\" x=\""
           << X(o.rect->x0) << "\" y=\"" << Y(o.rect->h) << "\" width=\"" << format_double((o.rect->x1 - o.rect->x0) * s)
           << "\" height=\"" << format_double(o.rect->h * s) << "\"/>\n";
    }
    if (o.quad) {
        const Quad& q = *o.quad;
        os << "  <polygon class=\"quad\" fill=\"#c64f4f\" fill-opacity=\"0.3\" stroke=\"none\" points=\"" << pt(q.alpha)
           << " " << pt(q.beta) << " " << pt(q.gamma) << " " << pt(q.delta) << "\"/>\n";
        const std::array<std::pair<Point, Point>, 3> sides{{{q.alpha, q.beta}, {q.beta, q.gamma}, {q.gamma, q.delta}}};
        const char* names[3] = {"left", "top", "right"};
        for (int i = 0; i < 3; ++i) {
            const bool bal = o.kinds[i] == EdgeKind::BALANCED;
            os << "  <line class=\"edge " << names[i] << " " << to_string(o.kinds[i]) << "\" x1=\"" << X(sides[i].first.x)
               << "\" y1=\"" << Y(sides[i].first.y) << "\" x2=\"" << X(sides[i].second.x) << "\" y2=\""
               << Y(sides[i].second.y) << "\" stroke=\"" << (bal ? "#2b8a3e" : "#8c1f1f") << "\" stroke-width=\"2.5\""
               << (bal ? " stroke-dasharray=\"8 4\"" : "") << "/>\n";
            Point m = midpoint(sides[i].first, sides[i].second);
            os << "  <text x=\"" << X(m.x) << "\" y=\"" << Y(m.y) << "\" font-size=\"11\" font-family=\"sans-serif\">"
               << names[i] << ": " << to_string(o.kinds[i]) << "</text>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace terraquad
