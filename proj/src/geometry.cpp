#include "ripscover/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "ripscover/error.hpp"

namespace ripscover {

double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
double norm(Point2 a) { return std::hypot(a.x, a.y); }
double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

double segment_distance(Point2 p, Point2 a, Point2 b) {
    const Point2 ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0) return distance(p, a);
    const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return distance(p, a + t * ab);
}

ConvexPolygon::ConvexPolygon(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
    const std::size_t n = vertices_.size();
    if (n < 3) throw InvalidScenario("polygon needs at least 3 vertices");
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 a = vertices_[i];
        const Point2 b = vertices_[(i + 1) % n];
        const Point2 c = vertices_[(i + 2) % n];
        if (a == b) throw InvalidScenario("polygon has repeated vertices");
        if (cross(b - a, c - b) <= 0.0)
            throw InvalidScenario("polygon must be strictly convex and counterclockwise");
    }
}

ConvexPolygon ConvexPolygon::square(double side) { return rectangle(side, side); }

ConvexPolygon ConvexPolygon::rectangle(double width, double height) {
    if (!(width > 0.0) || !(height > 0.0)) throw InvalidScenario("rectangle sides must be positive");
    return ConvexPolygon({{0.0, 0.0}, {width, 0.0}, {width, height}, {0.0, height}});
}

bool ConvexPolygon::contains(Point2 p) const {
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 a = vertices_[i];
        const Point2 b = vertices_[(i + 1) % n];
        const Point2 e = b - a;
        // signed distance to the edge line, positive inside
        if (cross(e, p - a) / norm(e) < -kGeomTol) return false;
    }
    return true;
}

double ConvexPolygon::boundary_distance(Point2 p) const {
    double best = std::numeric_limits<double>::infinity();
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i)
        best = std::min(best, segment_distance(p, vertices_[i], vertices_[(i + 1) % n]));
    return best;
}

double ConvexPolygon::inradius() const {
    // Maximise r subject to (inward normal_i . p) - r >= c_i. The optimum sits
    // where three constraints are tight; polygons here are small, so try all triples.
    const std::size_t n = vertices_.size();
    struct Line {
        double nx, ny, c;  // nx*x + ny*y >= c + r
    };
    std::vector<Line> lines;
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 a = vertices_[i];
        const Point2 e = vertices_[(i + 1) % n] - a;
        const double len = norm(e);
        const double nx = -e.y / len;
        const double ny = e.x / len;
        lines.push_back({nx, ny, nx * a.x + ny * a.y});
    }
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                // rows: nx*x + ny*y - r = c
                const std::array<std::array<double, 4>, 3> m0{{{lines[i].nx, lines[i].ny, -1.0, lines[i].c},
                                                              {lines[j].nx, lines[j].ny, -1.0, lines[j].c},
                                                              {lines[k].nx, lines[k].ny, -1.0, lines[k].c}}};
                auto m = m0;
                bool singular = false;
                for (int col = 0; col < 3 && !singular; ++col) {
                    int piv = col;
                    for (int r = col + 1; r < 3; ++r)
                        if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
                    if (std::abs(m[piv][col]) < 1e-12) {
                        singular = true;
                        break;
                    }
                    std::swap(m[piv], m[col]);
                    for (int r = 0; r < 3; ++r) {
                        if (r == col) continue;
                        const double f = m[r][col] / m[col][col];
                        for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
                    }
                }
                if (singular) continue;
                const double x = m[0][3] / m[0][0];
                const double y = m[1][3] / m[1][1];
                const double r = m[2][3] / m[2][2];
                if (r < best) continue;
                bool feasible = true;
                for (const Line& l : lines)
                    if (l.nx * x + l.ny * y - r < l.c - 1e-9) {
                        feasible = false;
                        break;
                    }
                if (feasible) best = r;
            }
    return best;
}

double ConvexPolygon::area() const {
    double a = 0.0;
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) a += cross(vertices_[i], vertices_[(i + 1) % n]);
    return 0.5 * a;
}

double ConvexPolygon::perimeter() const {
    double p = 0.0;
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) p += distance(vertices_[i], vertices_[(i + 1) % n]);
    return p;
}

ConvexPolygon::Box ConvexPolygon::bounding_box() const {
    Box b{vertices_[0].x, vertices_[0].y, vertices_[0].x, vertices_[0].y};
    for (const Point2& v : vertices_) {
        b.xmin = std::min(b.xmin, v.x);
        b.ymin = std::min(b.ymin, v.y);
        b.xmax = std::max(b.xmax, v.x);
        b.ymax = std::max(b.ymax, v.y);
    }
    return b;
}

ConvexPolygon ConvexPolygon::inset(double delta) const {
    if (!(delta >= 0.0) || delta >= inradius()) throw InvalidArgument("inset distance must be below the inradius");
    const std::size_t n = vertices_.size();
    std::vector<Point2> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        // intersect the shifted lines of edges (i-1, i) and (i, i+1)
        const Point2 a0 = vertices_[(i + n - 1) % n];
        const Point2 a1 = vertices_[i];
        const Point2 b1 = vertices_[(i + 1) % n];
        const Point2 e0 = a1 - a0;
        const Point2 e1 = b1 - a1;
        const Point2 n0 = (1.0 / norm(e0)) * Point2{-e0.y, e0.x};
        const Point2 n1 = (1.0 / norm(e1)) * Point2{-e1.y, e1.x};
        const Point2 p0 = a0 + delta * n0;
        const Point2 p1 = a1 + delta * n1;
        const double t = cross(p1 - p0, e1) / cross(e0, e1);
        out.push_back(p0 + t * e0);
    }
    // shrinking can merge vertices when delta is close to the inradius
    std::vector<Point2> cleaned;
    for (const Point2& p : out)
        if (cleaned.empty() || distance(cleaned.back(), p) > 1e-12) cleaned.push_back(p);
    if (cleaned.size() > 1 && distance(cleaned.front(), cleaned.back()) <= 1e-12) cleaned.pop_back();
    return ConvexPolygon(std::move(cleaned));
}

Point2 ConvexPolygon::point_at_arclength(double t) const {
    const std::size_t n = vertices_.size();
    const double per = perimeter();
    t = std::fmod(t, per);
    if (t < 0) t += per;
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 a = vertices_[i];
        const Point2 b = vertices_[(i + 1) % n];
        const double len = distance(a, b);
        if (t <= len) return a + (t / len) * (b - a);
        t -= len;
    }
    return vertices_[0];
}

}  // namespace ripscover
