#pragma once

// Signed Minkowski expressions and the normal form
//   t + kx*Ix + ky*Iy + sum_T kT*T
// over unit segments and unit triangles, plus the oracles that check a
// claimed identity body = expression exactly.

#include <array>
#include <map>
#include <span>
#include <variant>
#include <vector>

#include "tropfactor/lattice.hpp"

namespace tropfactor {

struct SignedTerm {
    int sign = +1;  // +1 or -1
    Body body;
};

/// Ordered list of signed bodies; the order is presentational only.
using SignedExpression = std::vector<SignedTerm>;

/// A minimum triangle (twice_area 1) with non-negative coordinates touching
/// both axes. Vertices are kept in lexicographic order, which doubles as
/// the canonical map key.
class UnitTriangle {
public:
    /// Throws if the three points do not form a unit triangle.
    UnitTriangle(Point a, Point b, Point c) : v_{a, b, c} {
        std::sort(v_.begin(), v_.end());
        Int tw = cross(v_[1] - v_[0], v_[2] - v_[0]);
        if (tw != 1 && tw != -1) throw Error("not a minimum triangle");
        Int minx = std::min({v_[0].x, v_[1].x, v_[2].x});
        Int miny = std::min({v_[0].y, v_[1].y, v_[2].y});
        if (minx != 0 || miny != 0) throw Error("unit triangle must touch both axes at non-negative coordinates");
    }

    const std::array<Point, 3>& vertices() const { return v_; }
    Body body() const { return convex_hull(std::span<const Point>(v_)); }

    friend auto operator<=>(const UnitTriangle&, const UnitTriangle&) = default;

private:
    std::array<Point, 3> v_;
};

inline std::ostream& operator<<(std::ostream& os, const UnitTriangle& t) {
    return os << "T{" << t.vertices()[0] << ',' << t.vertices()[1] << ',' << t.vertices()[2] << '}';
}

struct UnitX {
    friend auto operator<=>(const UnitX&, const UnitX&) = default;
};
struct UnitY {
    friend auto operator<=>(const UnitY&, const UnitY&) = default;
};

using CanonicalAtom = std::variant<UnitX, UnitY, UnitTriangle>;

inline Body atom_body(const CanonicalAtom& atom) {
    struct Visitor {
        Body operator()(UnitX) const { return Body::segment({0, 0}, {1, 0}); }
        Body operator()(UnitY) const { return Body::segment({0, 0}, {0, 1}); }
        Body operator()(const UnitTriangle& t) const { return t.body(); }
    };
    return std::visit(Visitor{}, atom);
}

struct NormalizedTerm {
    CanonicalAtom atom;
    Point shift;
};

/// Splits a translated unit segment or minimum triangle into its canonical
/// atom and the translation (min x, min y) of its vertices.
inline NormalizedTerm normalize_term(const Body& body) {
    Point shift = body[0];
    for (Point p : body.vertices()) {
        shift.x = std::min(shift.x, p.x);
        shift.y = std::min(shift.y, p.y);
    }
    if (body.is_segment()) {
        Point d = body[1] - body[0];
        if (d == Point{1, 0}) return {UnitX{}, shift};
        if (d == Point{0, 1}) return {UnitY{}, shift};
    } else if (body.size() == 3 && twice_area(body) == 1) {
        return {UnitTriangle(body[0] - shift, body[1] - shift, body[2] - shift), shift};
    }
    throw Error("not an atomic body");
}

/// Coefficient form of a signed decomposition. No zero coefficient is stored.
struct NormalForm {
    Point t{0, 0};
    Int kx = 0;
    Int ky = 0;
    std::map<UnitTriangle, Int> triangles;

    void add_atom(const CanonicalAtom& atom, Int k) {
        if (std::holds_alternative<UnitX>(atom)) {
            kx = checked_add(kx, k);
        } else if (std::holds_alternative<UnitY>(atom)) {
            ky = checked_add(ky, k);
        } else {
            const auto& tri = std::get<UnitTriangle>(atom);
            Int& c = triangles[tri];
            c = checked_add(c, k);
            if (c == 0) triangles.erase(tri);
        }
    }

    /// Adds k copies of a translated atom (its shift contributes k times to t).
    void add_term(const NormalizedTerm& term, Int k) {
        add_atom(term.atom, k);
        t += k * term.shift;
    }

    bool is_zero() const { return t == Point{0, 0} && kx == 0 && ky == 0 && triangles.empty(); }

    friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

inline NormalForm operator+(NormalForm a, const NormalForm& b) {
    a.t += b.t;
    a.kx = checked_add(a.kx, b.kx);
    a.ky = checked_add(a.ky, b.ky);
    for (const auto& [tri, k] : b.triangles) a.add_atom(tri, k);
    return a;
}

inline NormalForm operator*(Int k, NormalForm a) {
    if (k == 0) return {};
    a.t = k * a.t;
    a.kx = checked_mul(k, a.kx);
    a.ky = checked_mul(k, a.ky);
    for (auto& [tri, c] : a.triangles) c = checked_mul(k, c);
    return a;
}

inline NormalForm operator-(NormalForm a) { return Int{-1} * std::move(a); }
inline NormalForm operator-(NormalForm a, const NormalForm& b) { return std::move(a) + (-b); }
inline NormalForm& operator+=(NormalForm& a, const NormalForm& b) { return a = std::move(a) + b; }
inline NormalForm& operator-=(NormalForm& a, const NormalForm& b) { return a = std::move(a) - b; }

inline NormalForm translation_form(Point t) {
    NormalForm nf;
    nf.t = t;
    return nf;
}

inline Int max_abs_coefficient(const NormalForm& nf) {
    Int m = std::max(checked_abs(nf.kx), checked_abs(nf.ky));
    for (const auto& [tri, k] : nf.triangles) m = std::max(m, checked_abs(k));
    return m;
}

/// Expands to a signed expression: the translation point, then each atom
/// dilated by |k| and signed by sign(k).
inline SignedExpression expand(const NormalForm& nf) {
    SignedExpression out;
    out.push_back({+1, Body::point(nf.t)});
    auto push = [&](const Body& atom, Int k) {
        if (k > 0) out.push_back({+1, atom.dilated(k)});
        if (k < 0) out.push_back({-1, atom.dilated(checked_neg(k))});
    };
    push(atom_body(UnitX{}), nf.kx);
    push(atom_body(UnitY{}), nf.ky);
    for (const auto& [tri, k] : nf.triangles) push(tri.body(), k);
    return out;
}

/// Exact check of target = rhs. Negative terms are moved to the target side,
/// so only Minkowski sums are ever formed.
inline bool verify_identity(const Body& target, const SignedExpression& rhs) {
    std::vector<Body> left{target};
    std::vector<Body> right;
    for (const auto& term : rhs) (term.sign > 0 ? right : left).push_back(term.body);
    if (right.empty()) return false;
    return minkowski_sum_all(left) == minkowski_sum_all(right);
}

inline bool verify_identity(const Body& target, const NormalForm& nf) { return verify_identity(target, expand(nf)); }

/// The sixteen primitive directions with |dx|, |dy| <= 2.
inline std::vector<Direction> standard_directions() {
    std::vector<Direction> out;
    for (Int dx = -2; dx <= 2; ++dx) {
        for (Int dy = -2; dy <= 2; ++dy) {
            if ((dx != 0 || dy != 0) && gcd(dx, dy) == 1) out.emplace_back(dx, dy);
        }
    }
    return out;
}

/// Necessary condition for target = rhs: support functions balance in
/// every probed direction. Passing does not imply the identity.
inline bool support_check(const Body& target, const SignedExpression& rhs, std::span<const Direction> dirs) {
    if (dirs.empty()) throw Error("support_check needs at least one direction");
    for (const Direction& d : dirs) {
        Int left = support(target, d);
        Int right = 0;
        for (const auto& term : rhs) {
            Int h = support(term.body, d);
            if (term.sign > 0) {
                right = checked_add(right, h);
            } else {
                left = checked_add(left, h);
            }
        }
        if (left != right) return false;
    }
    return true;
}

/// Same check evaluated on coefficients directly, without dilating atoms.
inline bool support_check(const Body& target, const NormalForm& nf, std::span<const Direction> dirs) {
    if (dirs.empty()) throw Error("support_check needs at least one direction");
    static const Body ix = atom_body(UnitX{});
    static const Body iy = atom_body(UnitY{});
    for (const Direction& d : dirs) {
        Int rhs = dot(nf.t, d.vector());
        rhs = checked_add(rhs, checked_mul(nf.kx, support(ix, d)));
        rhs = checked_add(rhs, checked_mul(nf.ky, support(iy, d)));
        for (const auto& [tri, k] : nf.triangles) rhs = checked_add(rhs, checked_mul(k, support(tri.body(), d)));
        if (rhs != support(target, d)) return false;
    }
    return true;
}

}  // namespace tropfactor
