#pragma once

// Cutting relations and partitions of integral polygons.
//
// A partition of conv(P) by a point set P is a list of cells (subsets of
// P) whose hulls tile conv(P) and meet face to face. Faces are taken with
// respect to each cell's own points, so a cell edge carrying an extra point
// of the cell counts as two boundary segments. The partition relation
//   conv(P) = sum cells - sum dividing segments + sum interior points
// turns a partition into a signed Minkowski expression.

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tropfactor/lattice.hpp"
#include "tropfactor/signed_algebra.hpp"

namespace tropfactor {

/// Unordered pair of point indices, stored with first < second.
struct IndexPair {
    std::size_t first = 0;
    std::size_t second = 0;

    IndexPair() = default;
    IndexPair(std::size_t a, std::size_t b) : first(std::min(a, b)), second(std::max(a, b)) {}

    friend auto operator<=>(const IndexPair&, const IndexPair&) = default;
};

/// Raised when a point/cell configuration is not a partition. condition()
/// is the index (1-4) of the violated defining condition, 0 for malformed input.
class PartitionError : public Error {
public:
    PartitionError(int condition, const std::string& what)
        : Error("invalid partition (condition " + std::to_string(condition) + "): " + what), condition_(condition) {}

    int condition() const { return condition_; }

private:
    int condition_;
};

namespace detail {

struct BoundaryWalk {
    Body hull;
    std::vector<std::size_t> boundary;  // CCW from the lexicographically smallest vertex
    std::vector<std::size_t> interior;  // ascending index order
};

// Orders the members of `subset` lying on the boundary of their hull.
inline BoundaryWalk walk_boundary(const std::vector<Point>& points, const std::vector<std::size_t>& subset) {
    std::vector<Point> coords;
    coords.reserve(subset.size());
    for (std::size_t i : subset) coords.push_back(points[i]);
    BoundaryWalk out{convex_hull(coords), {}, {}};
    const Body& h = out.hull;

    std::vector<bool> on_b(subset.size(), false);
    if (h.is_polygon()) {
        for (std::size_t e = 0; e < h.size(); ++e) {
            Point u = h[e], w = h[(e + 1) % h.size()];
            std::vector<std::pair<Int, std::size_t>> edge_pts;
            for (std::size_t k = 0; k < subset.size(); ++k) {
                Point p = points[subset[k]];
                if (p != w && contains(Body::segment(u, w), p)) {
                    edge_pts.emplace_back(dot(p - u, w - u), k);
                    on_b[k] = true;
                }
            }
            std::sort(edge_pts.begin(), edge_pts.end());
            for (const auto& ep : edge_pts) out.boundary.push_back(subset[ep.second]);
        }
    } else {
        for (std::size_t k = 0; k < subset.size(); ++k) on_b[k] = true;
        std::vector<std::size_t> sorted = subset;
        std::sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
        out.boundary = sorted;
    }
    for (std::size_t k = 0; k < subset.size(); ++k) {
        if (!on_b[k]) out.interior.push_back(subset[k]);
    }
    std::sort(out.interior.begin(), out.interior.end());
    return out;
}

inline std::vector<IndexPair> boundary_segments_of(const std::vector<std::size_t>& boundary) {
    std::vector<IndexPair> out;
    for (std::size_t i = 0; i < boundary.size(); ++i) out.emplace_back(boundary[i], boundary[(i + 1) % boundary.size()]);
    std::sort(out.begin(), out.end());
    return out;
}

struct Box {
    Int xmin, xmax, ymin, ymax;
};

inline Box bounding_box(const Body& b) {
    Box box{b[0].x, b[0].x, b[0].y, b[0].y};
    for (Point p : b.vertices()) {
        box.xmin = std::min(box.xmin, p.x);
        box.xmax = std::max(box.xmax, p.x);
        box.ymin = std::min(box.ymin, p.y);
        box.ymax = std::max(box.ymax, p.y);
    }
    return box;
}

}  // namespace detail

class Partition {
public:
    /// Validates the configuration and derives b(P), int(P), e(P) and the
    /// dividing segments. Throws PartitionError on any violated condition.
    static Partition build(std::vector<Point> points, std::vector<std::vector<std::size_t>> cells) {
        Partition part;
        part.points_ = std::move(points);
        part.cells_ = std::move(cells);
        part.validate_and_derive();
        return part;
    }

    const std::vector<Point>& points() const { return points_; }
    const std::vector<std::vector<std::size_t>>& cells() const { return cells_; }
    const std::vector<std::size_t>& boundary() const { return boundary_; }
    const std::vector<std::size_t>& interior() const { return interior_; }
    const std::vector<IndexPair>& boundary_segments() const { return boundary_segments_; }
    const std::vector<IndexPair>& dividing_segments() const { return dividing_; }
    const std::vector<Body>& cell_bodies() const { return cell_bodies_; }
    const Body& body() const { return body_; }

    Body segment_body(const IndexPair& s) const { return Body::segment(points_[s.first], points_[s.second]); }

private:
    Partition() : body_(Body::point({0, 0})) {}

    std::size_t index_of(Point p) const {
        auto it = index_.find(p);
        return it == index_.end() ? points_.size() : it->second;
    }

    void validate_and_derive() {
        for (std::size_t i = 0; i < points_.size(); ++i) {
            if (!index_.emplace(points_[i], i).second) throw PartitionError(0, "duplicate point");
        }
        if (cells_.empty()) throw PartitionError(0, "no cells");
        std::vector<std::size_t> all(points_.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        if (all.empty()) throw PartitionError(0, "empty point set");
        auto whole = detail::walk_boundary(points_, all);
        if (!whole.hull.is_polygon()) throw PartitionError(0, "point set does not span a polygon");
        body_ = whole.hull;
        boundary_ = whole.boundary;
        interior_ = whole.interior;
        boundary_segments_ = detail::boundary_segments_of(boundary_);

        std::vector<detail::BoundaryWalk> walks;
        std::vector<std::set<IndexPair>> cell_edges;
        std::vector<std::set<std::size_t>> cell_bpts;
        std::vector<bool> covered(points_.size(), false);
        for (auto& cell : cells_) {
            for (std::size_t i : cell) {
                if (i >= points_.size()) throw PartitionError(0, "cell index out of range");
            }
            std::sort(cell.begin(), cell.end());
            if (std::adjacent_find(cell.begin(), cell.end()) != cell.end()) throw PartitionError(0, "repeated index in cell");
            if (cell.empty()) throw PartitionError(2, "empty cell");
            walks.push_back(detail::walk_boundary(points_, cell));
            for (std::size_t i : walks.back().boundary) covered[i] = true;
            auto segs = detail::boundary_segments_of(walks.back().boundary);
            cell_edges.emplace_back(segs.begin(), segs.end());
            cell_bpts.emplace_back(walks.back().boundary.begin(), walks.back().boundary.end());
        }
        for (std::size_t i = 0; i < points_.size(); ++i) {
            if (!covered[i]) throw PartitionError(1, "point " + std::to_string(i) + " is on no cell boundary");
        }
        for (const auto& w : walks) {
            if (!w.hull.is_polygon()) throw PartitionError(2, "cell with fewer than three vertices");
            cell_bodies_.push_back(w.hull);
        }

        std::vector<detail::Box> boxes;
        for (const auto& b : cell_bodies_) boxes.push_back(detail::bounding_box(b));
        std::vector<std::size_t> order(cells_.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return boxes[a].xmin < boxes[b].xmin; });
        for (std::size_t oi = 0; oi < order.size(); ++oi) {
            std::size_t i = order[oi];
            for (std::size_t oj = oi + 1; oj < order.size(); ++oj) {
                std::size_t j = order[oj];
                if (boxes[j].xmin > boxes[i].xmax) break;
                if (boxes[j].ymin > boxes[i].ymax || boxes[i].ymin > boxes[j].ymax) continue;
                check_face(i, j, cell_edges, cell_bpts);
            }
        }

        Int area = 0;
        for (const auto& b : cell_bodies_) area = checked_add(area, twice_area(b));
        if (area != twice_area(body_)) throw PartitionError(3, "cells do not cover the hull");

        std::set<IndexPair> outer(boundary_segments_.begin(), boundary_segments_.end());
        std::set<IndexPair> div;
        for (const auto& edges : cell_edges) {
            for (const auto& e : edges) {
                if (!outer.count(e)) div.insert(e);
            }
        }
        dividing_.assign(div.begin(), div.end());
    }

    // Cells i and j must meet in nothing, a shared boundary point, or a
    // shared boundary segment of both.
    void check_face(std::size_t i, std::size_t j, const std::vector<std::set<IndexPair>>& edges,
                    const std::vector<std::set<std::size_t>>& bpts) const {
        const Body& a = cell_bodies_[i];
        const Body& b = cell_bodies_[j];
        auto fail = [&](const std::string& why) {
            throw PartitionError(4, "cells " + std::to_string(i) + " and " + std::to_string(j) + " " + why);
        };
        auto try_separate = [&](const Body& inner, const Body& outer) -> bool {
            for (std::size_t e = 0; e < inner.size(); ++e) {
                Point u = inner[e], w = inner[(e + 1) % inner.size()];
                bool separates = true;
                std::vector<Point> on_line;
                for (Point p : outer.vertices()) {
                    int o = orientation(u, w, p);
                    if (o > 0) {
                        separates = false;
                        break;
                    }
                    if (o == 0) on_line.push_back(p);
                }
                if (!separates) continue;
                if (on_line.empty()) return true;
                Point d = w - u;
                Int len = dot(d, d);
                std::vector<std::pair<Int, Point>> cands{{0, u}, {len, w}};
                Int bmin = dot(on_line[0] - u, d), bmax = bmin;
                for (Point p : on_line) {
                    Int t = dot(p - u, d);
                    bmin = std::min(bmin, t);
                    bmax = std::max(bmax, t);
                    cands.emplace_back(t, p);
                }
                Int lo = std::max<Int>(0, bmin), hi = std::min(len, bmax);
                if (lo > hi) return true;
                auto at = [&](Int t) {
                    for (const auto& c : cands) {
                        if (c.first == t) return c.second;
                    }
                    return Point{};
                };
                std::size_t pi = index_of(at(lo));
                if (lo == hi) {
                    if (pi == points_.size() || !bpts[i].count(pi) || !bpts[j].count(pi)) fail("touch outside their point sets");
                    return true;
                }
                std::size_t qi = index_of(at(hi));
                IndexPair seg(pi, qi);
                if (pi == points_.size() || qi == points_.size() || !edges[i].count(seg) || !edges[j].count(seg)) {
                    fail("share a segment that is not a boundary segment of both");
                }
                return true;
            }
            return false;
        };
        if (try_separate(a, b) || try_separate(b, a)) return;
        fail("overlap");
    }

    std::vector<Point> points_;
    std::vector<std::vector<std::size_t>> cells_;
    std::map<Point, std::size_t> index_;
    Body body_;
    std::vector<std::size_t> boundary_;
    std::vector<std::size_t> interior_;
    std::vector<IndexPair> boundary_segments_;
    std::vector<IndexPair> dividing_;
    std::vector<Body> cell_bodies_;
};

/// seg(p1,p2) = seg(p1,p3) + seg(p3,p2) - p3 for p3 strictly between.
inline SignedExpression cut_segment(Point p1, Point p2, Point p3) {
    if (p1 == p2) throw Error("degenerate segment");
    if (p3 == p1 || p3 == p2 || !contains(Body::segment(p1, p2), p3)) {
        throw Error("not an interior point of the segment");
    }
    return {{+1, Body::segment(p1, p3)}, {+1, Body::segment(p3, p2)}, {-1, Body::point(p3)}};
}

/// poly = P1 + P2 - seg(l1,l2) where the lattice chord l1-l2 splits poly into P1 and P2.
inline SignedExpression cut_polygon(const Body& poly, Point l1, Point l2) {
    if (!poly.is_polygon()) throw Error("cut_polygon needs a polygon");
    if (l1 == l2) throw Error("degenerate chord");
    if (!on_boundary(poly, l1) || !on_boundary(poly, l2)) throw Error("chord endpoints must lie on the boundary");
    std::vector<Point> left{l1, l2}, right{l1, l2};
    for (Point v : poly.vertices()) {
        int o = orientation(l1, l2, v);
        if (o > 0) left.push_back(v);
        if (o < 0) right.push_back(v);
    }
    if (left.size() == 2 || right.size() == 2) throw Error("not a separating chord");
    return {{+1, convex_hull(left)}, {+1, convex_hull(right)}, {-1, Body::segment(l1, l2)}};
}

/// Star subdivision of a triangle from a strictly interior lattice point.
inline SignedExpression star_subdivide_triangle(const Body& t, Point p4) {
    if (t.size() != 3) throw Error("star subdivision needs a triangle");
    if (!contains(t, p4)) throw Error("point outside the triangle");
    if (on_boundary(t, p4)) throw Error("point on boundary");
    Point p1 = t[0], p2 = t[1], p3 = t[2];
    return {{+1, convex_hull({p1, p2, p4})}, {+1, convex_hull({p2, p3, p4})}, {+1, convex_hull({p1, p3, p4})},
            {-1, Body::segment(p1, p4)},     {-1, Body::segment(p2, p4)},     {-1, Body::segment(p3, p4)},
            {+1, Body::point(p4)}};
}

struct PointClassification {
    std::vector<Point> boundary;  // CCW from the lexicographically smallest vertex
    std::vector<Point> interior;  // lexicographic
};

inline PointClassification classify_points(const Body& poly) {
    PointClassification out;
    auto pts = lattice_points(poly);
    if (!poly.is_polygon()) {
        out.boundary = std::move(pts);
        return out;
    }
    std::vector<std::size_t> all(pts.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    auto walk = detail::walk_boundary(pts, all);
    for (std::size_t i : walk.boundary) out.boundary.push_back(pts[i]);
    for (std::size_t i : walk.interior) out.interior.push_back(pts[i]);
    return out;
}

/// Placing triangulation over every lattice point of the polygon.
///
/// Points are inserted in lexicographic order; each new point lies outside
/// the hull built so far and is joined to every hull edge strictly visible
/// from it. The hull keeps collinear boundary points, so no cell ever
/// contains a lattice point other than its vertices, and by Pick each cell
/// has twice_area 1.
inline Partition unimodular_triangulation(const Body& poly) {
    if (!poly.is_polygon()) throw Error("triangulation needs a polygon");
    std::vector<Point> pts = lattice_points(poly);
    std::vector<std::vector<std::size_t>> cells;

    std::size_t k = 2;
    while (orientation(pts[0], pts[1], pts[k]) == 0) ++k;
    std::vector<std::size_t> hull;
    for (std::size_t j = 0; j + 1 < k; ++j) cells.push_back({j, j + 1, k});
    if (orientation(pts[0], pts[1], pts[k]) > 0) {
        for (std::size_t j = 0; j < k; ++j) hull.push_back(j);
    } else {
        for (std::size_t j = k; j-- > 0;) hull.push_back(j);
    }
    hull.push_back(k);

    for (std::size_t m = k + 1; m < pts.size(); ++m) {
        const Point p = pts[m];
        const std::size_t n = hull.size();
        std::vector<bool> vis(n);
        for (std::size_t i = 0; i < n; ++i) vis[i] = orientation(pts[hull[i]], pts[hull[(i + 1) % n]], p) < 0;
        std::size_t s = 0;
        while (!(vis[s] && !vis[(s + n - 1) % n])) ++s;
        std::size_t e = s;
        while (vis[(e + 1) % n]) e = (e + 1) % n;
        std::vector<std::size_t> next{m};
        for (std::size_t i = (e + 1) % n;; i = (i + 1) % n) {
            next.push_back(hull[i]);
            if (i == s) break;
        }
        for (std::size_t i = s;; i = (i + 1) % n) {
            cells.push_back({hull[i], hull[(i + 1) % n], m});
            if (i == e) break;
        }
        hull = std::move(next);
    }
    return Partition::build(std::move(pts), std::move(cells));
}

/// conv(P) = sum of cell hulls - sum of dividing segments + sum of interior points.
inline SignedExpression partition_relation(const Partition& part) {
    SignedExpression out;
    for (const Body& c : part.cell_bodies()) out.push_back({+1, c});
    for (const IndexPair& d : part.dividing_segments()) out.push_back({-1, part.segment_body(d)});
    for (std::size_t i : part.interior()) out.push_back({+1, Body::point(part.points()[i])});
    return out;
}

}  // namespace tropfactor
