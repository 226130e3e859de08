#pragma once

// Max-plus functions max<P>(x, y) = max over (a,b) in P of a*x + b*y with
// integer coefficients, their algebra, and factorization through the
// Newton polygon decomposition.

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tropfactor/lattice.hpp"
#include "tropfactor/pipeline.hpp"
#include "tropfactor/signed_algebra.hpp"

namespace tropfactor {

/// max<P> for a finite nonempty coefficient set P (kept sorted, no duplicates).
class MaxPlusFunction {
public:
    explicit MaxPlusFunction(std::vector<Point> terms) : terms_(std::move(terms)) {
        if (terms_.empty()) throw Error("empty term set");
        std::sort(terms_.begin(), terms_.end());
        terms_.erase(std::unique(terms_.begin(), terms_.end()), terms_.end());
    }
    MaxPlusFunction(std::initializer_list<Point> terms) : MaxPlusFunction(std::vector<Point>(terms)) {}

    /// The constant function 0, i.e. max<{(0,0)}>.
    static MaxPlusFunction zero() { return MaxPlusFunction({Point{0, 0}}); }

    const std::vector<Point>& terms() const { return terms_; }

    friend bool operator==(const MaxPlusFunction&, const MaxPlusFunction&) = default;

private:
    std::vector<Point> terms_;
};

inline Int evaluate(const MaxPlusFunction& f, Int x, Int y) {
    Int best = dot(f.terms().front(), {x, y});
    for (Point p : f.terms()) best = std::max(best, dot(p, {x, y}));
    return best;
}

inline Body newton_polygon(const MaxPlusFunction& f) { return convex_hull(f.terms()); }

/// Drops every term that is not a vertex of the Newton polygon.
inline MaxPlusFunction simplify(const MaxPlusFunction& f) { return MaxPlusFunction(newton_polygon(f).vertices()); }

inline bool equivalent(const MaxPlusFunction& f, const MaxPlusFunction& g) { return newton_polygon(f) == newton_polygon(g); }

inline MaxPlusFunction combine_max(const MaxPlusFunction& f, const MaxPlusFunction& g) {
    std::vector<Point> terms = f.terms();
    terms.insert(terms.end(), g.terms().begin(), g.terms().end());
    return MaxPlusFunction(std::move(terms));
}

inline MaxPlusFunction combine_sum(const MaxPlusFunction& f, const MaxPlusFunction& g) {
    std::vector<Point> terms;
    terms.reserve(f.terms().size() * g.terms().size());
    for (Point p : f.terms()) {
        for (Point q : g.terms()) terms.push_back(p + q);
    }
    return MaxPlusFunction(std::move(terms));
}

/// Expression tree over linear terms with max, sum, negation and positive scaling.
class MaxPlusExpr {
public:
    enum class Kind { linear, max, sum, negate, scale };

    static MaxPlusExpr linear(Int a, Int b) {
        MaxPlusExpr e(Kind::linear);
        e.coeff_ = {a, b};
        return e;
    }
    static MaxPlusExpr max(std::vector<MaxPlusExpr> args) {
        if (args.empty()) throw Error("max of nothing");
        MaxPlusExpr e(Kind::max);
        e.children_ = std::move(args);
        return e;
    }
    static MaxPlusExpr sum(std::vector<MaxPlusExpr> args) {
        if (args.empty()) throw Error("sum of nothing");
        MaxPlusExpr e(Kind::sum);
        e.children_ = std::move(args);
        return e;
    }
    static MaxPlusExpr negate(MaxPlusExpr arg) {
        MaxPlusExpr e(Kind::negate);
        e.children_.push_back(std::move(arg));
        return e;
    }
    static MaxPlusExpr scale(Int k, MaxPlusExpr arg) {
        if (k <= 0) throw Error("positive scaling only");
        MaxPlusExpr e(Kind::scale);
        e.factor_ = k;
        e.children_.push_back(std::move(arg));
        return e;
    }
    static MaxPlusExpr from_function(const MaxPlusFunction& f) {
        std::vector<MaxPlusExpr> args;
        for (Point p : f.terms()) args.push_back(linear(p.x, p.y));
        return args.size() == 1 ? std::move(args.front()) : max(std::move(args));
    }

    Kind kind() const { return kind_; }
    Point coefficients() const { return coeff_; }
    Int factor() const { return factor_; }
    const std::vector<MaxPlusExpr>& children() const { return children_; }

private:
    explicit MaxPlusExpr(Kind k) : kind_(k) {}

    Kind kind_;
    Point coeff_{0, 0};
    Int factor_ = 1;
    std::vector<MaxPlusExpr> children_;
};

/// Direct evaluation of the tree, independent of flattening.
inline Int evaluate(const MaxPlusExpr& e, Int x, Int y) {
    switch (e.kind()) {
        case MaxPlusExpr::Kind::linear:
            return dot(e.coefficients(), {x, y});
        case MaxPlusExpr::Kind::max: {
            Int best = evaluate(e.children().front(), x, y);
            for (const auto& c : e.children()) best = std::max(best, evaluate(c, x, y));
            return best;
        }
        case MaxPlusExpr::Kind::sum: {
            Int total = 0;
            for (const auto& c : e.children()) total = checked_add(total, evaluate(c, x, y));
            return total;
        }
        case MaxPlusExpr::Kind::negate:
            return checked_neg(evaluate(e.children().front(), x, y));
        case MaxPlusExpr::Kind::scale:
            return checked_mul(e.factor(), evaluate(e.children().front(), x, y));
    }
    return 0;
}

/// e = plus - minus pointwise.
struct FlatDifference {
    MaxPlusFunction plus;
    MaxPlusFunction minus;
};

/// Rewrites any expression as a difference of two max<P> functions.
///
/// A max node over children P_i - M_i becomes
///   max_i(P_i + sum_{j != i} M_j) - sum_j M_j,
/// which for max(-max(a,b), c) gives max(0, a+c, b+c) - max(a,b).
/// Intermediate term sets are reduced to Newton polygon vertices.
inline FlatDifference flatten(const MaxPlusExpr& e) {
    switch (e.kind()) {
        case MaxPlusExpr::Kind::linear:
            return {MaxPlusFunction({e.coefficients()}), MaxPlusFunction::zero()};
        case MaxPlusExpr::Kind::sum: {
            FlatDifference acc{MaxPlusFunction::zero(), MaxPlusFunction::zero()};
            for (const auto& c : e.children()) {
                FlatDifference fc = flatten(c);
                acc.plus = simplify(combine_sum(acc.plus, fc.plus));
                acc.minus = simplify(combine_sum(acc.minus, fc.minus));
            }
            return acc;
        }
        case MaxPlusExpr::Kind::negate: {
            FlatDifference fc = flatten(e.children().front());
            return {fc.minus, fc.plus};
        }
        case MaxPlusExpr::Kind::scale: {
            FlatDifference fc = flatten(e.children().front());
            auto dilate = [k = e.factor()](const MaxPlusFunction& f) {
                std::vector<Point> terms;
                for (Point p : f.terms()) terms.push_back(k * p);
                return MaxPlusFunction(std::move(terms));
            };
            return {dilate(fc.plus), dilate(fc.minus)};
        }
        case MaxPlusExpr::Kind::max: {
            std::vector<FlatDifference> parts;
            for (const auto& c : e.children()) parts.push_back(flatten(c));
            const std::size_t n = parts.size();
            // prefix[i] = M_0 + ... + M_{i-1}, suffix[i] = M_i + ... + M_{n-1}
            std::vector<MaxPlusFunction> prefix(n + 1, MaxPlusFunction::zero()), suffix(n + 1, MaxPlusFunction::zero());
            for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = simplify(combine_sum(prefix[i], parts[i].minus));
            for (std::size_t i = n; i-- > 0;) suffix[i] = simplify(combine_sum(suffix[i + 1], parts[i].minus));
            std::vector<Point> plus;
            for (std::size_t i = 0; i < n; ++i) {
                MaxPlusFunction others = combine_sum(prefix[i], suffix[i + 1]);
                MaxPlusFunction shifted = combine_sum(parts[i].plus, others);
                plus.insert(plus.end(), shifted.terms().begin(), shifted.terms().end());
            }
            return {simplify(MaxPlusFunction(std::move(plus))), prefix[n]};
        }
    }
    throw Error("unknown expression node");
}

/// a0*x + b0*y + kx*max(0,x) + ky*max(0,y) + sum kT*max<v(T)>.
struct MaxPlusFactorization {
    Int a0 = 0;
    Int b0 = 0;
    Int kx = 0;
    Int ky = 0;
    std::map<UnitTriangle, Int> triangles;

    friend bool operator==(const MaxPlusFactorization&, const MaxPlusFactorization&) = default;
};

inline MaxPlusFactorization to_factorization(const NormalForm& nf) {
    return {nf.t.x, nf.t.y, nf.kx, nf.ky, nf.triangles};
}

inline NormalForm to_normal_form(const MaxPlusFactorization& f) {
    NormalForm nf;
    nf.t = {f.a0, f.b0};
    nf.kx = f.kx;
    nf.ky = f.ky;
    nf.triangles = f.triangles;
    return nf;
}

inline Int evaluate(const MaxPlusFactorization& f, Int x, Int y) {
    Int v = checked_add(checked_mul(f.a0, x), checked_mul(f.b0, y));
    v = checked_add(v, checked_mul(f.kx, std::max<Int>(0, x)));
    v = checked_add(v, checked_mul(f.ky, std::max<Int>(0, y)));
    for (const auto& [tri, k] : f.triangles) {
        Int m = dot(tri.vertices()[0], {x, y});
        for (Point p : tri.vertices()) m = std::max(m, dot(p, {x, y}));
        v = checked_add(v, checked_mul(k, m));
    }
    return v;
}

/// Factorization of max<P> from a decomposition of its Newton polygon.
inline MaxPlusFactorization factorize(const MaxPlusFunction& f, SegmentDecomposer* cache = nullptr) {
    return to_factorization(decompose(newton_polygon(f), VerifyMode::full, cache).normal_form);
}

/// Factorization of f - g; defined even when the Minkowski difference of
/// the Newton polygons does not exist.
inline MaxPlusFactorization factorize_difference(const MaxPlusFunction& f, const MaxPlusFunction& g,
                                                 SegmentDecomposer* cache = nullptr) {
    NormalForm a = decompose(newton_polygon(f), VerifyMode::full, cache).normal_form;
    NormalForm b = decompose(newton_polygon(g), VerifyMode::full, cache).normal_form;
    return to_factorization(a - b);
}

/// "0", "x", "-y", "2x+y", "x-3y".
inline std::string linear_to_string(Point c) {
    if (c == Point{0, 0}) return "0";
    std::string out;
    auto part = [&](Int k, const char* var) {
        if (k == 0) return;
        if (k < 0) {
            out += '-';
        } else if (!out.empty()) {
            out += '+';
        }
        Int m = checked_abs(k);
        if (m != 1) out += std::to_string(m);
        out += var;
    };
    part(c.x, "x");
    part(c.y, "y");
    return out;
}

inline std::string to_string(const MaxPlusFunction& f) {
    if (f.terms().size() == 1) return linear_to_string(f.terms().front());
    std::string out = "max(";
    for (std::size_t i = 0; i < f.terms().size(); ++i) out += (i ? "," : "") + linear_to_string(f.terms()[i]);
    return out + ")";
}

/// Canonical text such as "x - 2y + max(0,x) - 3*max(0,x,2x+y)"; reparses
/// with the expression grammar.
inline std::string to_expression_string(const MaxPlusFactorization& f) {
    std::vector<std::pair<Int, std::string>> pieces;  // (coefficient, unsigned body)
    if (f.a0 != 0) pieces.emplace_back(f.a0, "x");
    if (f.b0 != 0) pieces.emplace_back(f.b0, "y");
    if (f.kx != 0) pieces.emplace_back(f.kx, "max(0,x)");
    if (f.ky != 0) pieces.emplace_back(f.ky, "max(0,y)");
    for (const auto& [tri, k] : f.triangles) {
        const auto& v = tri.vertices();
        pieces.emplace_back(k, to_string(MaxPlusFunction({v[0], v[1], v[2]})));
    }
    if (pieces.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const auto& [k, body] = pieces[i];
        if (i == 0) {
            if (k < 0) out += '-';
        } else {
            out += k < 0 ? " - " : " + ";
        }
        Int m = checked_abs(k);
        const bool is_linear = body == "x" || body == "y";
        if (m != 1) out += std::to_string(m) + (is_linear ? "" : "*");
        out += body;
    }
    return out;
}

}  // namespace tropfactor
