#pragma once

// Decomposition of integral segments into unit segments and unit
// triangles by descent on prime vectors.
//
// For a prime vector p that is not an axis unit vector we pick a mate q
// with cross(p, q) = 1 and r = p - q both strictly shorter than p. Then
//   seg(o,p) = tri(o,p,q) + tri(o,p,r) - seg(o,q) - seg(o,r)
// and both triangles are minimum. Repeating on q and r ends at the four
// axis unit vectors.

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "tropfactor/lattice.hpp"
#include "tropfactor/signed_algebra.hpp"

namespace tropfactor {

/// Integer vector with coprime coordinates.
class PrimeVector {
public:
    PrimeVector(Int a, Int b) : a_(a), b_(b) {
        if (a == 0 && b == 0) throw Error("zero vector");
        if (gcd(a, b) != 1) throw Error("not prime");
    }
    explicit PrimeVector(Point p) : PrimeVector(p.x, p.y) {}

    Int a() const { return a_; }
    Int b() const { return b_; }
    Point point() const { return {a_, b_}; }
    bool is_unit() const { return checked_abs(a_) + checked_abs(b_) == 1; }

    friend auto operator<=>(const PrimeVector&, const PrimeVector&) = default;

private:
    Int a_;
    Int b_;
};

struct DescentStep {
    PrimeVector p;
    PrimeVector q;
    PrimeVector r;
};

namespace detail {

struct ExtendedGcd {
    Int g, u, v;  // a*u + b*v = g
};

inline ExtendedGcd extended_gcd(Int a, Int b) {
    Int old_r = a, r = b, old_u = 1, u = 0, old_v = 0, v = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int t = checked_sub(old_r, checked_mul(q, r));
        old_r = r;
        r = t;
        t = checked_sub(old_u, checked_mul(q, u));
        old_u = u;
        u = t;
        t = checked_sub(old_v, checked_mul(q, v));
        old_v = v;
        v = t;
    }
    if (old_r < 0) return {checked_neg(old_r), checked_neg(old_u), checked_neg(old_v)};
    return {old_r, old_u, old_v};
}

}  // namespace detail

/// The mate of p: cross(p, q) = 1 and q.p in [1, |p|^2 - 1], which forces
/// |q| < |p| and |p - q| < |p|.
inline DescentStep find_mate(const PrimeVector& p) {
    if (p.is_unit()) throw Error("base case");
    const Int a = p.a(), b = p.b();
    auto eg = detail::extended_gcd(a, b);
    if (eg.g != 1) throw Error("not prime");
    // a*u + b*v = 1, so q0 = (-v, u) has cross(p, q0) = 1.
    Point q{checked_neg(eg.v), eg.u};
    const Int n2 = norm2(p.point());
    const Int s = dot(q, p.point());
    const Int m = checked_neg(floor_div(s, n2));
    q += m * p.point();
    const Int window = dot(q, p.point());
    if (window <= 0 || window >= n2) throw Error("mate window violated");  // impossible for |p| > 1
    Point r = p.point() - q;
    return {p, PrimeVector(q), PrimeVector(r)};
}

/// Normal form of one of the four axis unit vectors.
inline NormalForm unit_vector_form(const PrimeVector& p) {
    NormalForm nf;
    if (p.point() == Point{1, 0}) {
        nf.kx = 1;
    } else if (p.point() == Point{0, 1}) {
        nf.ky = 1;
    } else if (p.point() == Point{-1, 0}) {
        nf.t = {-1, 0};
        nf.kx = 1;
    } else if (p.point() == Point{0, -1}) {
        nf.t = {0, -1};
        nf.ky = 1;
    } else {
        throw Error("not a unit vector");
    }
    return nf;
}

/// Normal form of tri(o, p, q) + tri(o, p, r) for one descent step.
inline NormalForm step_triangles(const DescentStep& step) {
    const Point o{0, 0};
    NormalForm nf;
    nf.add_term(normalize_term(convex_hull({o, step.p.point(), step.q.point()})), 1);
    nf.add_term(normalize_term(convex_hull({o, step.p.point(), step.r.point()})), 1);
    return nf;
}

/// The descent DAG below one prime vector: every vector reached, keyed by
/// itself, with its mate step (absent for axis unit vectors).
class DescentGraph {
public:
    explicit DescentGraph(const PrimeVector& root) : root_(root) {
        std::vector<PrimeVector> stack{root};
        while (!stack.empty()) {
            PrimeVector v = stack.back();
            stack.pop_back();
            if (nodes_.count(v)) continue;
            if (v.is_unit()) {
                nodes_.emplace(v, std::nullopt);
                continue;
            }
            DescentStep step = find_mate(v);
            nodes_.emplace(v, step);
            stack.push_back(step.q);
            stack.push_back(step.r);
        }
    }

    const PrimeVector& root() const { return root_; }
    std::size_t size() const { return nodes_.size(); }
    const std::map<PrimeVector, std::optional<DescentStep>>& nodes() const { return nodes_; }

    /// Nodes ordered by decreasing length; every step goes to strictly shorter vectors.
    std::vector<PrimeVector> by_decreasing_length() const {
        std::vector<PrimeVector> out;
        for (const auto& [v, step] : nodes_) out.push_back(v);
        std::stable_sort(out.begin(), out.end(),
                         [](const PrimeVector& x, const PrimeVector& y) { return norm2(x.point()) > norm2(y.point()); });
        return out;
    }

    /// Longest chain of descent steps from the root to a unit vector.
    std::size_t depth() const {
        auto order = by_decreasing_length();
        std::map<PrimeVector, std::size_t> d;
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const auto& step = nodes_.at(*it);
            d[*it] = step ? 1 + std::max(d.at(step->q), d.at(step->r)) : 0;
        }
        return d.at(root_);
    }

    /// Sums the recursion NF(p) = tri + tri - NF(q) - NF(r) by pushing
    /// signed multiplicities down the DAG, longest vectors first.
    NormalForm normal_form() const {
        std::map<PrimeVector, Int> mult{{root_, 1}};
        NormalForm nf;
        for (const PrimeVector& v : by_decreasing_length()) {
            Int c = mult[v];
            if (c == 0) continue;
            const auto& step = nodes_.at(v);
            if (!step) {
                nf += c * unit_vector_form(v);
                continue;
            }
            nf += c * step_triangles(*step);
            mult[step->q] = checked_sub(mult[step->q], c);
            mult[step->r] = checked_sub(mult[step->r], c);
        }
        return nf;
    }

private:
    PrimeVector root_;
    std::map<PrimeVector, std::optional<DescentStep>> nodes_;
};

inline NormalForm decompose_prime(const PrimeVector& p) { return DescentGraph(p).normal_form(); }

/// Plain recursion without sharing. Exponential on Fibonacci-like inputs;
/// kept as the reference the memoized descent is tested against.
inline NormalForm decompose_prime_unshared(const PrimeVector& p) {
    if (p.is_unit()) return unit_vector_form(p);
    DescentStep step = find_mate(p);
    return step_triangles(step) - decompose_prime_unshared(step.q) - decompose_prime_unshared(step.r);
}

inline std::size_t descent_depth(const PrimeVector& p) { return DescentGraph(p).depth(); }

/// seg(p1,p2) = p1 + g * seg(o, u) with u = (p2 - p1) / g prime.
inline NormalForm decompose_segment(Point p1, Point p2) {
    if (p1 == p2) throw Error("degenerate");
    Point d = p2 - p1;
    Int g = gcd(d.x, d.y);
    return translation_form(p1) + g * decompose_prime(PrimeVector(d.x / g, d.y / g));
}

/// Thread-safe cache of prime-vector decompositions shared across calls.
class SegmentDecomposer {
public:
    NormalForm decompose_prime(const PrimeVector& p) {
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = cache_.find(p);
            if (it != cache_.end()) return it->second;
        }
        NormalForm nf = DescentGraph(p).normal_form();
        std::lock_guard<std::mutex> lock(mutex_);
        return cache_.emplace(p, std::move(nf)).first->second;
    }

    NormalForm decompose_segment(Point p1, Point p2) {
        if (p1 == p2) throw Error("degenerate");
        Point d = p2 - p1;
        Int g = gcd(d.x, d.y);
        return translation_form(p1) + g * decompose_prime(PrimeVector(d.x / g, d.y / g));
    }

    std::size_t cache_size() const {
        std::lock_guard<std::mutex> lock(mutex_);
        return cache_.size();
    }

private:
    mutable std::mutex mutex_;
    std::map<PrimeVector, NormalForm> cache_;
};

/// seg(o,p) + seg(o,q) + seg(o,p-q), which equals tri(o,p,q) + tri(o,p,p-q).
inline Body edges_to_hexagon(Point p, Point q) {
    const Point o{0, 0};
    Point r = p - q;
    if (p == o || q == o || r == o) throw Error("degenerate vectors");
    std::vector<Body> parts{Body::segment(o, p), Body::segment(o, q), Body::segment(o, r)};
    return minkowski_sum(minkowski_sum(parts[0], parts[1]), parts[2]);
}

}  // namespace tropfactor
