#pragma once

// Integral convex bodies in the plane: points, segments and polygons with
// lattice vertices, together with the exact primitives the rest of the
// library is built on (hulls, Minkowski sums and differences, support
// functions, lattice point enumeration).

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tropfactor/integer.hpp"

namespace tropfactor {

struct Point {
    Int x = 0;
    Int y = 0;

    friend auto operator<=>(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {checked_add(a.x, b.x), checked_add(a.y, b.y)}; }
inline Point operator-(Point a, Point b) { return {checked_sub(a.x, b.x), checked_sub(a.y, b.y)}; }
inline Point operator-(Point a) { return {checked_neg(a.x), checked_neg(a.y)}; }
inline Point operator*(Int k, Point a) { return {checked_mul(k, a.x), checked_mul(k, a.y)}; }
inline Point& operator+=(Point& a, Point b) { return a = a + b; }
inline Point& operator-=(Point& a, Point b) { return a = a - b; }

inline Int cross(Point a, Point b) { return checked_sub(checked_mul(a.x, b.y), checked_mul(a.y, b.x)); }
inline Int dot(Point a, Point b) { return checked_add(checked_mul(a.x, b.x), checked_mul(a.y, b.y)); }
inline Int norm2(Point a) { return dot(a, a); }

inline std::ostream& operator<<(std::ostream& os, Point p) { return os << '(' << p.x << ',' << p.y << ')'; }

/// Sign of cross(b - a, c - a): +1 for a left turn, -1 for a right turn, 0 when collinear.
inline int orientation(Point a, Point b, Point c) { return sign(cross(b - a, c - a)); }

/// A primitive integer direction, used to probe support functions.
class Direction {
public:
    Direction(Int dx, Int dy) {
        if (dx == 0 && dy == 0) throw Error("zero direction");
        Int g = gcd(dx, dy);
        dx_ = dx / g;
        dy_ = dy / g;
    }

    Int dx() const { return dx_; }
    Int dy() const { return dy_; }
    Point vector() const { return {dx_, dy_}; }

    friend auto operator<=>(const Direction&, const Direction&) = default;

private:
    Int dx_;
    Int dy_;
};

enum class BodyKind { point, segment, polygon };

inline const char* to_string(BodyKind k) {
    switch (k) {
        case BodyKind::point: return "point";
        case BodyKind::segment: return "segment";
        case BodyKind::polygon: return "polygon";
    }
    return "?";
}

class Body;
Body convex_hull(std::span<const Point> points);

/// Integral convex body stored by its vertex list: counter-clockwise,
/// starting at the lexicographically smallest vertex, no repeated or
/// collinear vertices. Two bodies are equal iff their vertex lists are.
class Body {
public:
    static Body point(Point p) { return Body(std::vector<Point>{p}); }

    static Body segment(Point a, Point b) {
        if (a == b) throw Error("degenerate segment");
        return a < b ? Body({a, b}) : Body({b, a});
    }

    /// Builds a body from a claimed vertex list in any order. Every listed
    /// point must be a vertex of the hull of the list.
    static Body from_vertices(std::span<const Point> vertices);

    const std::vector<Point>& vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    const Point& operator[](std::size_t i) const { return vertices_[i]; }

    BodyKind kind() const {
        switch (vertices_.size()) {
            case 1: return BodyKind::point;
            case 2: return BodyKind::segment;
            default: return BodyKind::polygon;
        }
    }
    bool is_point() const { return vertices_.size() == 1; }
    bool is_segment() const { return vertices_.size() == 2; }
    bool is_polygon() const { return vertices_.size() >= 3; }

    Body translated(Point v) const {
        std::vector<Point> out;
        out.reserve(vertices_.size());
        for (Point p : vertices_) out.push_back(p + v);
        return Body(std::move(out));
    }

    /// k-fold dilation about the origin; k = 0 collapses to the origin.
    Body dilated(Int k) const {
        if (k < 0) throw Error("negative dilation");
        if (k == 0) return point({0, 0});
        std::vector<Point> out;
        out.reserve(vertices_.size());
        for (Point p : vertices_) out.push_back(k * p);
        return Body(std::move(out));
    }

    /// Edge vectors in counter-clockwise order (a segment has two, a point none).
    std::vector<Point> edges() const {
        std::vector<Point> out;
        if (vertices_.size() < 2) return out;
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            out.push_back(vertices_[(i + 1) % vertices_.size()] - vertices_[i]);
        }
        return out;
    }

    friend bool operator==(const Body&, const Body&) = default;

private:
    friend Body convex_hull(std::span<const Point>);
    explicit Body(std::vector<Point> canonical) : vertices_(std::move(canonical)) {}

    std::vector<Point> vertices_;
};

inline std::ostream& operator<<(std::ostream& os, const Body& b) {
    os << '{';
    for (std::size_t i = 0; i < b.size(); ++i) os << (i ? "," : "") << b[i];
    return os << '}';
}

/// Andrew's monotone chain; strict turns only, so collinear points are dropped.
inline Body convex_hull(std::span<const Point> points) {
    if (points.empty()) throw Error("empty point set");
    std::vector<Point> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2) return Body(std::move(pts));

    std::vector<Point> hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && orientation(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && orientation(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return Body(std::move(hull));
}

inline Body convex_hull(std::initializer_list<Point> points) {
    return convex_hull(std::span<const Point>(points.begin(), points.size()));
}

inline Body Body::from_vertices(std::span<const Point> vertices) {
    Body hull = convex_hull(vertices);
    std::vector<Point> given(vertices.begin(), vertices.end());
    std::sort(given.begin(), given.end());
    std::vector<Point> hv = hull.vertices();
    std::sort(hv.begin(), hv.end());
    if (given != hv) throw Error("non-convex vertex list");
    return hull;
}

inline Int twice_area(const Body& a) {
    if (!a.is_polygon()) return 0;
    Int s = 0;
    const auto& v = a.vertices();
    for (std::size_t i = 0; i < v.size(); ++i) s = checked_add(s, cross(v[i], v[(i + 1) % v.size()]));
    return s;
}

/// max over vertices of <v, p> for an arbitrary (not necessarily primitive) vector v.
inline Int support_at(const Body& a, Point v) {
    Int best = dot(a[0], v);
    for (std::size_t i = 1; i < a.size(); ++i) best = std::max(best, dot(a[i], v));
    return best;
}

inline Int support(const Body& a, const Direction& d) { return support_at(a, d.vector()); }

inline bool contains(const Body& a, Point p) {
    switch (a.kind()) {
        case BodyKind::point:
            return a[0] == p;
        case BodyKind::segment:
            return orientation(a[0], a[1], p) == 0 && std::min(a[0].x, a[1].x) <= p.x &&
                   p.x <= std::max(a[0].x, a[1].x) && std::min(a[0].y, a[1].y) <= p.y &&
                   p.y <= std::max(a[0].y, a[1].y);
        case BodyKind::polygon:
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (orientation(a[i], a[(i + 1) % a.size()], p) < 0) return false;
            }
            return true;
    }
    return false;
}

/// Points and segments are all boundary.
inline bool on_boundary(const Body& a, Point p) {
    if (!a.is_polygon()) return contains(a, p);
    if (!contains(a, p)) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (orientation(a[i], a[(i + 1) % a.size()], p) == 0) return true;
    }
    return false;
}

inline bool strictly_inside(const Body& a, Point p) { return a.is_polygon() && contains(a, p) && !on_boundary(a, p); }

/// Upper bound on enumerated lattice points; larger bodies are rejected.
constexpr Int kMaxLatticePoints = Int{1} << 24;

/// All lattice points of the body in lexicographic order.
inline std::vector<Point> lattice_points(const Body& a) {
    std::vector<Point> out;
    if (a.is_point()) return {a[0]};
    if (a.is_segment()) {
        Point d = a[1] - a[0];
        Int g = gcd(d.x, d.y);
        if (g >= kMaxLatticePoints) throw Error("too many lattice points");
        Point step{d.x / g, d.y / g};
        for (Int i = 0; i <= g; ++i) out.push_back(a[0] + i * step);
        return out;  // a[0] < a[1], so already lexicographic
    }
    Int xmin = a[0].x, xmax = a[0].x, ymin = a[0].y, ymax = a[0].y;
    for (Point p : a.vertices()) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    Int cells = checked_mul(checked_add(checked_sub(xmax, xmin), 1), checked_add(checked_sub(ymax, ymin), 1));
    if (cells > kMaxLatticePoints) throw Error("too many lattice points");
    for (Int x = xmin; x <= xmax; ++x) {
        for (Int y = ymin; y <= ymax; ++y) {
            if (contains(a, {x, y})) out.push_back({x, y});
        }
    }
    return out;
}

inline bool is_prime_segment(Point p, Point q) {
    if (p == q) throw Error("degenerate segment");
    return gcd(q.x - p.x, q.y - p.y) == 1;
}

/// Minkowski sum by all pairwise vertex sums followed by a hull.
inline Body minkowski_sum(const Body& a, const Body& b) {
    std::vector<Point> sums;
    sums.reserve(a.size() * b.size());
    for (Point p : a.vertices()) {
        for (Point q : b.vertices()) sums.push_back(p + q);
    }
    return convex_hull(sums);
}

namespace detail {

// Angular order of edge vectors for a counter-clockwise walk that starts at
// the lexicographically smallest vertex: angles in (-90deg, 270deg].
inline int edge_half(Point d) { return (d.x > 0 || (d.x == 0 && d.y > 0)) ? 0 : 1; }

inline bool edge_angle_less(Point a, Point b) {
    int ha = edge_half(a), hb = edge_half(b);
    if (ha != hb) return ha < hb;
    return cross(a, b) > 0;
}

inline Point lex_min_vertex(const Body& b) { return b[0]; }

// Closes a walk from `start` along angle-sorted edges into a canonical body.
inline Body walk_edges(Point start, std::vector<Point> edges) {
    std::stable_sort(edges.begin(), edges.end(), edge_angle_less);
    std::vector<Point> pts{start};
    Point cur = start;
    for (Point e : edges) {
        cur += e;
        pts.push_back(cur);
    }
    return convex_hull(pts);
}

}  // namespace detail

/// Minkowski sum of many bodies at once by merging their edge sequences.
inline Body minkowski_sum_all(std::span<const Body> bodies) {
    Point start{0, 0};
    std::vector<Point> edges;
    for (const Body& b : bodies) {
        start += detail::lex_min_vertex(b);
        auto e = b.edges();
        edges.insert(edges.end(), e.begin(), e.end());
    }
    return detail::walk_edges(start, std::move(edges));
}

/// The body C with C + b = a, if one exists.
///
/// Edges of a sum are the union of the summands' edges, so C's edges are
/// a's edge multiset minus b's (per primitive direction, by lattice length).
/// The candidate is always confirmed by recomputing C + b.
inline std::optional<Body> minkowski_diff(const Body& a, const Body& b) {
    auto edge_lengths = [](const Body& body) {
        std::map<Direction, Int> out;
        for (Point e : body.edges()) {
            Int g = gcd(e.x, e.y);
            Int& len = out[Direction(e.x, e.y)];
            len = checked_add(len, g);
        }
        return out;
    };
    auto ea = edge_lengths(a);
    for (const auto& [dir, len] : edge_lengths(b)) {
        auto it = ea.find(dir);
        if (it == ea.end() || it->second < len) return std::nullopt;
        it->second -= len;
    }
    std::vector<Point> edges;
    for (const auto& [dir, len] : ea) {
        if (len > 0) edges.push_back(len * dir.vector());
    }
    Body candidate = detail::walk_edges(detail::lex_min_vertex(a) - detail::lex_min_vertex(b), std::move(edges));
    if (minkowski_sum(candidate, b) != a) return std::nullopt;
    return candidate;
}

}  // namespace tropfactor
