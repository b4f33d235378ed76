#include "ysys/svg_render.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace ysys {

namespace {

constexpr double kSize = 640.0;
constexpr double kCenter = kSize / 2.0;
constexpr double kRadius = 280.0;
const double kPi = std::acos(-1.0);

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", x);
    return buf;
}

struct Point {
    double x, y;
};

/** Doubled boundary coordinate d (vertex v is d = 2v) on the circle. */
Point at_doubled(long d, long r, double radius) {
    const double ang = kPi / 2.0 - kPi * static_cast<double>(d) /
                                       static_cast<double>(r);
    return {kCenter + radius * std::cos(ang),
            kCenter - radius * std::sin(ang)};
}

void line(std::ostringstream& os, Point a, Point b, const std::string& attrs) {
    os << "  <line x1=\"" << fmt(a.x) << "\" y1=\"" << fmt(a.y) << "\" x2=\""
       << fmt(b.x) << "\" y2=\"" << fmt(b.y) << "\" " << attrs << "/>\n";
}

void circle(std::ostringstream& os, Point c, double rad,
            const std::string& attrs) {
    os << "  <circle cx=\"" << fmt(c.x) << "\" cy=\"" << fmt(c.y)
       << "\" r=\"" << fmt(rad) << "\" " << attrs << "/>\n";
}

}  // namespace

std::string render_svg(const LabeledTriangulation& g,
                       const ContinuedFractionTable& t) {
    const long r = g.r();
    const Point center{kCenter, kCenter};
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize
       << "\" height=\"" << kSize << "\" viewBox=\"0 0 " << kSize << " "
       << kSize << "\">\n";
    os << "  <title>time-zero triangulation of the "
       << (g.punctured() ? "punctured " : "") << r << "-gon</title>\n";
    os << "  <rect width=\"" << kSize << "\" height=\"" << kSize
       << "\" fill=\"white\"/>\n";
    circle(os, center, kRadius,
           "fill=\"none\" stroke=\"#999999\" stroke-width=\"1\"");

    // Arcs, in label order.
    for (int k = 0; k < g.size(); ++k) {
        const TaggedArc a = g.arc(k);
        if (a.kind == TaggedArc::Kind::chord) {
            line(os, at_doubled(2 * a.from, r, kRadius),
                 at_doubled(2 * a.to, r, kRadius),
                 "class=\"arc\" stroke=\"#1f6feb\" stroke-width=\"1.2\"");
        } else {
            line(os, at_doubled(2 * a.base, r, kRadius), center,
                 "class=\"arc\" stroke=\"#1f6feb\" stroke-width=\"1.2\"");
            if (a.notched)
                circle(os,
                       at_doubled(2 * a.base, r, kRadius * 0.12), 4.0,
                       "class=\"notch\" fill=\"none\" stroke=\"#1f6feb\""
                       " stroke-width=\"1.2\"");
        }
    }

    // The two schedule axes with their endpoint marks.
    for (const long u : {0L, -1L}) {
        const Axis ax = axis_of_time(t, u);
        const long e1 = ax.anchor;
        const long e2 = (ax.anchor + r) % (2 * r);
        const Point p1 = at_doubled(e1, r, kRadius);
        const Point p2 = at_doubled(e2, r, kRadius);
        const bool even = (u == 0);
        const std::string color = even ? "#cc3333" : "#338833";
        line(os, p1, p2,
             std::string("id=\"axis-") + (even ? "0" : "1") + "\" stroke=\"" +
                 color + "\" stroke-width=\"1\" stroke-dasharray=\"" +
                 (even ? "8 4" : "2 4") + "\"");
        for (const Point& p : {p1, p2}) {
            if (even) {
                circle(os, p, 6.0,
                       "class=\"axis-mark-circle\" fill=\"none\" stroke=\"" +
                           color + "\" stroke-width=\"1.4\"");
            } else {
                const double d = 4.5;
                line(os, {p.x - d, p.y - d}, {p.x + d, p.y + d},
                     "class=\"axis-mark-cross\" stroke=\"" + color +
                         "\" stroke-width=\"1.4\"");
                line(os, {p.x - d, p.y + d}, {p.x + d, p.y - d},
                     "class=\"axis-mark-cross\" stroke=\"" + color +
                         "\" stroke-width=\"1.4\"");
            }
        }
    }

    // Vertices and their ids.
    const double font = (r > 60) ? 7.0 : 11.0;
    for (long v = 0; v < r; ++v) {
        circle(os, at_doubled(2 * v, r, kRadius), 2.2, "fill=\"#000000\"");
        const Point lp = at_doubled(2 * v, r, kRadius + 14.0);
        os << "  <text x=\"" << fmt(lp.x) << "\" y=\"" << fmt(lp.y)
           << "\" font-size=\"" << fmt(font)
           << "\" text-anchor=\"middle\" dominant-baseline=\"middle\">" << v
           << "</text>\n";
    }

    if (g.punctured())
        circle(os, center, 3.5, "class=\"puncture\" fill=\"#000000\"");

    os << "</svg>\n";
    return os.str();
}

}  // namespace ysys
