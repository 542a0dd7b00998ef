#include "ripscover/render.hpp"

#include <cstdio>
#include <sstream>

namespace ripscover {

namespace {

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    return buf;
}

}  // namespace

std::string render_svg(const Scenario& s, const std::optional<Perturbation>& p, const std::optional<Chain>& cycle,
                       const std::vector<Point2>& cycle_positions, const RenderOptions& o) {
    const auto box = s.domain().bounding_box();
    const double margin = s.radii().r_c;
    const double k = o.pixels_per_unit;
    const double width = (box.xmax - box.xmin + 2 * margin) * k;
    const double height = (box.ymax - box.ymin + 2 * margin) * k;
    auto X = [&](double x) { return num((x - box.xmin + margin) * k); };
    auto Y = [&](double y) { return num((box.ymax - y + margin) * k); };
    const auto& pts = s.sensors();
    const std::vector<bool> fence = fence_mask(s);

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
       << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    os << "<g id=\"domain\"><polygon fill=\"#f4f4f4\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
    for (const Point2& v : s.domain().vertices()) os << X(v.x) << "," << Y(v.y) << " ";
    os << "\"/></g>\n";

    if (o.balls) {
        os << "<g id=\"balls\" fill=\"#4a90d9\" fill-opacity=\"0.12\" stroke=\"none\">\n";
        for (const Point2& q : pts)
            os << "<circle cx=\"" << X(q.x) << "\" cy=\"" << Y(q.y) << "\" r=\"" << num(s.radii().r_c * k) << "\"/>\n";
        os << "</g>\n";
    }

    if (o.edges) {
        os << "<g id=\"edges\" stroke=\"#999999\" stroke-width=\"0.6\">\n";
        const double rs = s.radii().r_s;
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j)
                if (distance(pts[i], pts[j]) <= rs)
                    os << "<line x1=\"" << X(pts[i].x) << "\" y1=\"" << Y(pts[i].y) << "\" x2=\"" << X(pts[j].x)
                       << "\" y2=\"" << Y(pts[j].y) << "\"/>\n";
        os << "</g>\n";
    }

    if (cycle) {
        os << "<g id=\"cycle\" fill=\"#e8603c\" fill-opacity=\"0.35\" stroke=\"#c0392b\" stroke-width=\"0.8\">\n";
        for (const auto& [id, c] : cycle->terms) {
            os << "<polygon points=\"";
            for (int v : cycle->complex->vertices(id)) {
                const Point2 q = cycle_positions[static_cast<std::size_t>(v)];
                os << X(q.x) << "," << Y(q.y) << " ";
            }
            os << "\"/>\n";
        }
        os << "</g>\n";
    }

    os << "<g id=\"sensors\">\n";
    for (std::size_t i = 0; i < pts.size(); ++i)
        os << "<circle cx=\"" << X(pts[i].x) << "\" cy=\"" << Y(pts[i].y) << "\" r=\"2.5\" fill=\""
           << (fence[i] ? "#2e8b57" : "black") << "\"/>\n";
    os << "</g>\n";

    if (p) {
        os << "<g id=\"perturbation\" stroke=\"#8e44ad\" stroke-width=\"1\">\n";
        for (std::size_t i = 0; i < pts.size() && i < p->targets.size(); ++i) {
            const Point2 t = p->targets[i];
            if (t.x == pts[i].x && t.y == pts[i].y) continue;
            os << "<line x1=\"" << X(pts[i].x) << "\" y1=\"" << Y(pts[i].y) << "\" x2=\"" << X(t.x) << "\" y2=\""
               << Y(t.y) << "\"/>\n";
            os << "<circle cx=\"" << X(t.x) << "\" cy=\"" << Y(t.y) << "\" r=\"1.5\" fill=\"#8e44ad\"/>\n";
        }
        os << "</g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace ripscover
