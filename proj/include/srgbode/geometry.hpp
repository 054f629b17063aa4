#pragma once

#include <array>
#include <complex>
#include <vector>

namespace srgbode {

using Complex = std::complex<double>;

/// Disk in the complex plane centered on the real axis, meeting it in
/// [alpha, beta]. Degenerates to a point when alpha == beta.
struct IntervalDisk {
    double alpha = 0.0;
    double beta = 0.0;

    double center() const { return 0.5 * (alpha + beta); }
    double radius() const { return 0.5 * (beta - alpha); }
};

IntervalDisk disk_from_interval(double alpha, double beta);

/// D_{[alpha,beta]} -> D_{[-tau*beta, -tau*alpha]}.
IntervalDisk scaled_negated_disk(const IntervalDisk& disk, double tau);

/// One piece of a region boundary. Geodesics of the upper half-plane are
/// vertical lines and circles centered on the real axis, so every boundary
/// arc is one of the kinds below. Angles are measured from the circle
/// center and lie in [0, pi] (upper half only).
struct GeodesicArc {
    enum class Kind { VerticalSegment, VerticalRay, Circular };
    Kind kind = Kind::VerticalSegment;
    // vertical pieces
    double x = 0.0;
    double y_lo = 0.0;
    double y_hi = 0.0;  // ignored for rays
    // circular pieces
    double center = 0.0;
    double radius = 0.0;
    double th_lo = 0.0;
    double th_hi = 0.0;
};

/// Hyperbolically convex region of the closed upper half-plane, mirrored
/// implicitly across the real axis (regions of interest are conjugate
/// symmetric). Vertices are the extreme points of the hull; points on the
/// real axis and the point at infinity are ideal vertices. The stored
/// boundary walks consecutive vertices with geodesic arcs.
class HyperbolicRegion {
public:
    struct Vertex {
        Complex z{0.0, 0.0};
        bool at_infinity = false;
    };

    HyperbolicRegion() = default;
    HyperbolicRegion(std::vector<Vertex> vertices, std::vector<GeodesicArc> boundary);

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<GeodesicArc>& boundary() const { return boundary_; }
    bool unbounded() const { return unbounded_; }
    /// True when the region has no 2-dimensional interior (point or single
    /// geodesic arc).
    bool degenerate() const { return vertices_.size() < 3; }

private:
    std::vector<Vertex> vertices_;
    std::vector<GeodesicArc> boundary_;
    std::vector<std::array<double, 2>> klein_;  // cached hull polygon, CCW
    bool unbounded_ = false;

    friend bool contains(const HyperbolicRegion&, Complex, double);
};

/// Hyperbolic convex hull of a finite point set. Points with negative
/// imaginary part are reflected to the upper half-plane first (conjugate
/// symmetry of the mirrored region).
HyperbolicRegion hco(const std::vector<Complex>& points);

/// Hull of finite points plus, optionally, the ideal point at infinity
/// (vertical rays). Needed for inverses of regions containing 0.
HyperbolicRegion hco_with_infinity(const std::vector<Complex>& points, bool include_infinity);

/// Image of the region under z -> 1/z. On upper-half-plane representatives
/// this acts as z -> 1/conj(z), a hyperbolic isometry, so the image is the
/// hull of the inverted vertices. A vertex at 0 maps to infinity and makes
/// the image unbounded.
HyperbolicRegion invert_region(const HyperbolicRegion& region);

/// Membership test for the mirrored region, boundary included.
bool contains(const HyperbolicRegion& region, Complex z, double tol = 1e-9);

/// Euclidean distance from a point to the mirrored region (0 if inside).
double dist_point_region(const HyperbolicRegion& region, Complex p);

/// Euclidean set distance between the mirrored region and an interval disk:
/// max(0, dist(disk center, region) - radius). Exact point-to-arc and
/// point-to-segment projections; 0 when the sets intersect.
double dist_region_disk(const HyperbolicRegion& region, const IntervalDisk& disk);

/// Sampling upper bound on dist_region_disk: minimum over n region boundary
/// samples of the exact point-to-disk distance. Converges from above as n
/// grows; the disk side is evaluated in closed form (the limit of sampling
/// the filled disk densely), keeping the estimate independent of the arc
/// projection formulas above.
double brute_force_dist(const HyperbolicRegion& region, const IntervalDisk& disk, int n);

}  // namespace srgbode
