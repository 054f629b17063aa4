#include "srgbode/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace srgbode {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Cross-product tolerance for hull collinearity in Klein coordinates
// (coordinates are bounded by 1, so this is an area scale).
constexpr double kCollinearEps = 1e-13;

// Map a closed-upper-half-plane point (or the ideal point at infinity) to
// the Klein disk: Cayley transform to the Poincare disk followed by the
// Poincare -> Klein change of model. Hyperbolic geodesics become straight
// chords, so the hyperbolic convex hull is the Euclidean hull there.
struct KleinPoint {
    double x = 0.0;
    double y = 0.0;
    Complex z{0.0, 0.0};
    bool at_infinity = false;
};

KleinPoint to_klein(Complex z, bool at_infinity) {
    if (at_infinity) return {1.0, 0.0, Complex(0.0, 0.0), true};
    const Complex i(0.0, 1.0);
    const Complex w = (z - i) / (z + i);
    const double s = 2.0 / (1.0 + std::norm(w));
    return {s * w.real(), s * w.imag(), z, false};
}

double cross(const KleinPoint& o, const KleinPoint& a, const KleinPoint& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Monotone-chain convex hull in Klein coordinates; returns extreme points
// in counter-clockwise order. Collinear interior points are dropped (they
// stay inside the hull, and inversion preserves that).
std::vector<KleinPoint> klein_hull(std::vector<KleinPoint> pts) {
    std::sort(pts.begin(), pts.end(), [](const KleinPoint& a, const KleinPoint& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const KleinPoint& a, const KleinPoint& b) {
                              return a.x == b.x && a.y == b.y;
                          }),
              pts.end());
    const size_t n = pts.size();
    if (n <= 2) return pts;

    std::vector<KleinPoint> hull(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) {  // lower chain
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= kCollinearEps) --k;
        hull[k++] = pts[i];
    }
    for (size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper chain
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= kCollinearEps) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);  // last point equals the first
    return hull;
}

// Geodesic arc between two hull vertices (upper half-plane data).
bool make_arc(const HyperbolicRegion::Vertex& a, const HyperbolicRegion::Vertex& b,
              GeodesicArc& out) {
    if (a.at_infinity && b.at_infinity) return false;
    if (a.at_infinity || b.at_infinity) {
        const auto& f = a.at_infinity ? b : a;
        out.kind = GeodesicArc::Kind::VerticalRay;
        out.x = f.z.real();
        out.y_lo = f.z.imag();
        out.y_hi = kInf;
        return true;
    }
    const double ax = a.z.real(), ay = a.z.imag();
    const double bx = b.z.real(), by = b.z.imag();
    const double scale = 1.0 + std::max({std::abs(ax), std::abs(bx), ay, by});
    if (std::abs(ax - bx) <= 1e-12 * scale) {
        if (std::abs(ay - by) <= 1e-15 * scale) return false;  // coincident
        out.kind = GeodesicArc::Kind::VerticalSegment;
        out.x = 0.5 * (ax + bx);
        out.y_lo = std::min(ay, by);
        out.y_hi = std::max(ay, by);
        return true;
    }
    // circle centered on the real axis through both points
    const double m = (std::norm(b.z) - std::norm(a.z)) / (2.0 * (bx - ax));
    out.kind = GeodesicArc::Kind::Circular;
    out.center = m;
    out.radius = 0.5 * (std::abs(a.z - m) + std::abs(b.z - m));
    double ta = std::atan2(ay, ax - m);
    double tb = std::atan2(by, bx - m);
    out.th_lo = std::min(ta, tb);
    out.th_hi = std::max(ta, tb);
    return true;
}

std::vector<GeodesicArc> build_boundary(const std::vector<HyperbolicRegion::Vertex>& v) {
    std::vector<GeodesicArc> arcs;
    const size_t n = v.size();
    if (n < 2) return arcs;
    const size_t edges = (n == 2) ? 1 : n;  // open chain vs closed polygon
    for (size_t i = 0; i < edges; ++i) {
        GeodesicArc arc;
        if (make_arc(v[i], v[(i + 1) % n], arc)) arcs.push_back(arc);
    }
    return arcs;
}

HyperbolicRegion hull_of(const std::vector<KleinPoint>& klein_pts) {
    const auto hull = klein_hull(klein_pts);
    std::vector<HyperbolicRegion::Vertex> vertices;
    vertices.reserve(hull.size());
    for (const auto& p : hull) vertices.push_back({p.z, p.at_infinity});
    auto boundary = build_boundary(vertices);
    return HyperbolicRegion(std::move(vertices), std::move(boundary));
}

double dist_point_arc(Complex p, const GeodesicArc& arc) {
    switch (arc.kind) {
        case GeodesicArc::Kind::VerticalSegment:
        case GeodesicArc::Kind::VerticalRay: {
            const double dx = p.real() - arc.x;
            double dy = 0.0;
            if (p.imag() < arc.y_lo)
                dy = arc.y_lo - p.imag();
            else if (arc.kind == GeodesicArc::Kind::VerticalSegment && p.imag() > arc.y_hi)
                dy = p.imag() - arc.y_hi;
            return std::hypot(dx, dy);
        }
        case GeodesicArc::Kind::Circular: {
            const Complex v = p - arc.center;
            const double r = std::abs(v);
            if (r == 0.0) return arc.radius;
            const double th = std::atan2(v.imag(), v.real());
            if (th >= arc.th_lo && th <= arc.th_hi) return std::abs(r - arc.radius);
            const Complex e1 = arc.center + arc.radius * std::polar(1.0, arc.th_lo);
            const Complex e2 = arc.center + arc.radius * std::polar(1.0, arc.th_hi);
            return std::min(std::abs(p - e1), std::abs(p - e2));
        }
    }
    return kInf;
}

Complex upper_rep(Complex z) { return z.imag() < 0.0 ? std::conj(z) : z; }

double dist_to_boundary(const HyperbolicRegion& region, Complex p) {
    double best = kInf;
    if (region.boundary().empty()) {
        for (const auto& v : region.vertices())
            if (!v.at_infinity) best = std::min(best, std::abs(p - v.z));
        return best;
    }
    for (const auto& arc : region.boundary()) best = std::min(best, dist_point_arc(p, arc));
    return best;
}

}  // namespace

IntervalDisk disk_from_interval(double alpha, double beta) {
    if (!(alpha <= beta)) throw std::invalid_argument("disk_from_interval: alpha > beta");
    return IntervalDisk{alpha, beta};
}

IntervalDisk scaled_negated_disk(const IntervalDisk& disk, double tau) {
    return IntervalDisk{-tau * disk.beta, -tau * disk.alpha};
}

HyperbolicRegion::HyperbolicRegion(std::vector<Vertex> vertices, std::vector<GeodesicArc> boundary)
    : vertices_(std::move(vertices)), boundary_(std::move(boundary)) {
    klein_.reserve(vertices_.size());
    for (const auto& v : vertices_) {
        const auto k = to_klein(v.z, v.at_infinity);
        klein_.push_back({k.x, k.y});
        if (v.at_infinity) unbounded_ = true;
    }
}

HyperbolicRegion hco(const std::vector<Complex>& points) {
    return hco_with_infinity(points, false);
}

HyperbolicRegion hco_with_infinity(const std::vector<Complex>& points, bool include_infinity) {
    if (points.empty() && !include_infinity)
        throw std::invalid_argument("hco: empty point set");
    std::vector<KleinPoint> kp;
    kp.reserve(points.size() + 1);
    for (Complex z : points) kp.push_back(to_klein(upper_rep(z), false));
    if (include_infinity) kp.push_back(to_klein(Complex(0, 0), true));
    return hull_of(kp);
}

HyperbolicRegion invert_region(const HyperbolicRegion& region) {
    std::vector<Complex> finite;
    bool at_inf = false;
    for (const auto& v : region.vertices()) {
        if (v.at_infinity) {
            finite.push_back(Complex(0.0, 0.0));
            continue;
        }
        const Complex w = Complex(1.0, 0.0) / std::conj(v.z);
        if (std::isfinite(w.real()) && std::isfinite(w.imag()))
            finite.push_back(w);
        else
            at_inf = true;
    }
    return hco_with_infinity(finite, at_inf);
}

bool contains(const HyperbolicRegion& region, Complex z, double tol) {
    if (region.vertices().empty()) return false;
    const Complex p = upper_rep(z);
    if (dist_to_boundary(region, p) <= tol) return true;
    if (region.vertices().size() < 3) return false;
    const auto k = to_klein(p, false);
    const auto& poly = region.klein_;
    const size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        const auto& a = poly[i];
        const auto& b = poly[(i + 1) % n];
        const double c = (b[0] - a[0]) * (k.y - a[1]) - (b[1] - a[1]) * (k.x - a[0]);
        if (c < -1e-12) return false;  // CCW polygon: inside iff left of all edges
    }
    return true;
}

double dist_point_region(const HyperbolicRegion& region, Complex p) {
    const Complex q = upper_rep(p);
    if (contains(region, q, 0.0)) return 0.0;
    return dist_to_boundary(region, q);
}

double dist_region_disk(const HyperbolicRegion& region, const IntervalDisk& disk) {
    const double d = dist_point_region(region, Complex(disk.center(), 0.0));
    return std::max(0.0, d - disk.radius());
}

double brute_force_dist(const HyperbolicRegion& region, const IntervalDisk& disk, int n) {
    if (n < 100) throw std::invalid_argument("brute_force_dist: n < 100");
    const double c = disk.center();
    const double rho = disk.radius();
    auto point_dist = [&](Complex s) { return std::max(0.0, std::abs(s - c) - rho); };

    double best = kInf;
    const auto& arcs = region.boundary();
    if (arcs.empty()) {
        for (const auto& v : region.vertices())
            if (!v.at_infinity) best = std::min(best, point_dist(v.z));
        return best;
    }
    const int per_arc = std::max(2, n / static_cast<int>(arcs.size()));
    for (const auto& arc : arcs) {
        for (int i = 0; i < per_arc; ++i) {
            const double t = static_cast<double>(i) / (per_arc - 1);
            Complex s;
            switch (arc.kind) {
                case GeodesicArc::Kind::VerticalSegment:
                    s = Complex(arc.x, arc.y_lo + t * (arc.y_hi - arc.y_lo));
                    break;
                case GeodesicArc::Kind::VerticalRay: {
                    // distance to a real-centered disk grows with height, so a
                    // finite cap above the base loses nothing
                    const double cap = arc.y_lo + 2.0 * (1.0 + rho + std::abs(arc.x - c));
                    s = Complex(arc.x, arc.y_lo + t * (cap - arc.y_lo));
                    break;
                }
                case GeodesicArc::Kind::Circular:
                    s = arc.center +
                        arc.radius * std::polar(1.0, arc.th_lo + t * (arc.th_hi - arc.th_lo));
                    break;
            }
            best = std::min(best, point_dist(s));
        }
    }
    return best;
}

}  // namespace srgbode
