#pragma once

#include <span>
#include <vector>

namespace ripscover {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }

double dot(Point2 a, Point2 b);
double cross(Point2 a, Point2 b);
double norm(Point2 a);
double distance(Point2 a, Point2 b);
double segment_distance(Point2 p, Point2 a, Point2 b);

/// Convex polygon with counterclockwise vertices. Construction rejects
/// clockwise, degenerate or non-convex input.
class ConvexPolygon {
public:
    explicit ConvexPolygon(std::vector<Point2> vertices);

    static ConvexPolygon square(double side);
    static ConvexPolygon rectangle(double width, double height);

    std::span<const Point2> vertices() const { return vertices_; }
    std::size_t edge_count() const { return vertices_.size(); }

    /// Boundary inclusive, up to kGeomTol.
    bool contains(Point2 p) const;
    /// Euclidean distance to the boundary: min over edge segments.
    double boundary_distance(Point2 p) const;
    /// Radius of the largest inscribed disk.
    double inradius() const;
    double area() const;
    double perimeter() const;

    struct Box {
        double xmin, ymin, xmax, ymax;
    };
    Box bounding_box() const;

    /// The polygon shrunk by `delta` (edges moved inward). Requires delta < inradius().
    ConvexPolygon inset(double delta) const;

    /// Point at arc length `t` along the boundary, starting at vertex 0.
    Point2 point_at_arclength(double t) const;

private:
    std::vector<Point2> vertices_;
};

/// Absolute slack used for closed geometric inequalities on coordinates.
inline constexpr double kGeomTol = 1e-12;

}  // namespace ripscover
