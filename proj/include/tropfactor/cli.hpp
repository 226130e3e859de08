#pragma once

// Command-line front end. run() takes the argument vector (without the
// program name) and explicit streams, and returns the process exit code:
//   0 success, 1 verification failure, 2 input error.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "tropfactor/expression_parser.hpp"
#include "tropfactor/json_io.hpp"
#include "tropfactor/maxplus.hpp"
#include "tropfactor/pipeline.hpp"
#include "tropfactor/svg.hpp"

namespace tropfactor::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kInputError = 2 };

/// A failed check that is reported with exit code 1.
class VerificationFailure : public Error {
public:
    using Error::Error;
};

namespace detail {

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

/// "-" reads the input stream; an existing file path reads the file;
/// anything else is taken literally.
inline std::string read_source(const std::string& arg, std::istream& in) {
    if (arg == "-") return std::string(std::istreambuf_iterator<char>(in), {});
    std::error_code ec;
    if (arg.find_first_of("{,") == std::string::npos && std::filesystem::is_regular_file(arg, ec)) {
        std::ifstream f(arg);
        if (!f) throw Error("cannot read " + arg);
        return std::string(std::istreambuf_iterator<char>(f), {});
    }
    return arg;
}

/// "x,y x,y ..." (whitespace or ';' separated) into points.
inline std::vector<Point> parse_inline_points(const std::string& text) {
    std::string s = text;
    std::replace(s.begin(), s.end(), ';', ' ');
    std::istringstream is(s);
    std::vector<Point> out;
    std::string tok;
    while (is >> tok) {
        auto comma = tok.find(',');
        if (comma == std::string::npos) throw Error("expected x,y but got '" + tok + "'");
        try {
            std::size_t used1 = 0, used2 = 0;
            std::string xs = tok.substr(0, comma), ys = tok.substr(comma + 1);
            Int x = std::stoll(xs, &used1), y = std::stoll(ys, &used2);
            if (used1 != xs.size() || used2 != ys.size()) throw std::invalid_argument(tok);
            out.push_back({x, y});
        } catch (const std::logic_error&) {
            throw Error("expected x,y but got '" + tok + "'");
        }
    }
    if (out.empty()) throw Error("empty point set");
    return out;
}

inline Body parse_body(const std::string& text) {
    std::string t = trim(text);
    if (!t.empty() && t.front() == '{') return body_from_json(tropfactor::detail::parse_json_text(t));
    return convex_hull(parse_inline_points(t));
}

inline Body load_body(const std::string& arg, std::istream& in) { return parse_body(read_source(arg, in)); }

inline std::string body_text(const Body& b) {
    std::ostringstream os;
    os << to_string(b.kind());
    for (Point p : b.vertices()) os << ' ' << p;
    return os.str();
}

inline std::string term_list(const NormalForm& nf) {
    std::ostringstream os;
    os << "t " << nf.t << '\n';
    auto line = [&](Int k, const std::string& name) {
        if (k != 0) os << (k > 0 ? "+" : "") << k << ' ' << name << '\n';
    };
    line(nf.kx, "Ix");
    line(nf.ky, "Iy");
    for (const auto& [tri, k] : nf.triangles) {
        std::ostringstream name;
        name << tri;
        line(k, name.str());
    }
    return os.str();
}

inline VerifyMode parse_mode(const std::string& s) { return s == "support" ? VerifyMode::support : VerifyMode::full; }

inline std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("TROPFACTOR_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::logic_error&) {
            throw Error("TROPFACTOR_SEED is not an integer");
        }
    }
    return 1;
}

inline void write_file(const std::string& path, const std::string& content, std::ostream& out) {
    if (path == "-") {
        out << content;
        return;
    }
    std::ofstream f(path);
    if (!f) throw Error("cannot write " + path);
    f << content;
}

inline Point parse_point(const std::string& s) {
    auto pts = parse_inline_points(s);
    if (pts.size() != 1) throw Error("expected a single x,y");
    return pts.front();
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in) {
    CLI::App app{"tropfactor: signed Minkowski decompositions of integral polygons and factorization of max-plus functions"};
    app.footer(
        "Bodies: JSON {\"vertices\":[[x,y],...]} or {\"points\":[...]}, or inline \"x,y x,y ...\"; a file path; or - for stdin.\n"
        "Expressions: max(...), +, -, positive integer scaling k*(...), linear terms like 2x+y. Only the constant 0 is\n"
        "allowed: max-plus functions here carry no tropical coefficients.\n"
        "Exit codes: 0 success, 1 verification failure, 2 input error.");
    app.require_subcommand(1, 1);

    bool json = false, stats = false, terms = false;
    std::string input, input2, svg_path, mode = "full", batch, at, target, nf_src;
    std::optional<std::uint64_t> seed;
    std::size_t probes = 100;

    auto* hull = app.add_subcommand("hull", "Convex hull of a point set");
    hull->add_option("input", input, "points or body")->required();
    hull->add_flag("--json", json, "JSON output");

    auto* sum = app.add_subcommand("sum", "Minkowski sum of two bodies");
    sum->add_option("a", input, "first body")->required();
    sum->add_option("b", input2, "second body")->required();
    sum->add_flag("--json", json, "JSON output");

    auto* diff = app.add_subcommand("diff", "Minkowski difference a - b (exit 1 if it does not exist)");
    diff->add_option("a", input, "first body")->required();
    diff->add_option("b", input2, "second body")->required();
    diff->add_flag("--json", json, "JSON output");

    auto* dec = app.add_subcommand("decompose", "Decompose a body into unit segments and unit triangles");
    dec->add_option("input", input, "body");
    dec->add_flag("--json", json, "JSON report");
    dec->add_option("--svg", svg_path, "write an SVG figure (- for stdout)");
    dec->add_option("--verify", mode, "verification oracle")->check(CLI::IsMember({"support", "full"}));
    dec->add_flag("--stats", stats, "print statistics");
    dec->add_option("--batch", batch, "file with one body per line");

    auto* seg = app.add_subcommand("decompose-segment", "Decompose the segment \"x1,y1 x2,y2\"");
    seg->add_option("segment", input, "two endpoints")->required();
    seg->add_flag("--json", json, "NormalForm JSON");
    seg->add_flag("--terms", terms, "human-readable term list");

    auto* tri = app.add_subcommand("triangulate", "Unimodular triangulation of a polygon");
    tri->add_option("input", input, "polygon")->required();
    tri->add_flag("--json", json, "Partition JSON");
    tri->add_option("--svg", svg_path, "write an SVG figure (- for stdout)");

    auto* fac = app.add_subcommand("factorize", "Factorize a max-plus expression");
    fac->add_option("expr", input, "expression")->required();
    fac->add_flag("--json", json, "factorization JSON");
    fac->add_option("--probes", probes, "integer probes for the pointwise check");
    fac->add_option("--seed", seed, "probe seed (fallback: TROPFACTOR_SEED)");

    auto* ev = app.add_subcommand("eval", "Evaluate an expression at an integer point");
    ev->add_option("expr", input, "expression")->required();
    ev->add_option("--at", at, "x,y")->required();

    auto* ver = app.add_subcommand("verify", "Check that a normal form decomposes a body");
    ver->add_option("--target", target, "body")->required();
    ver->add_option("--nf", nf_src, "NormalForm JSON")->required();
    ver->add_option("--verify", mode, "verification oracle")->check(CLI::IsMember({"support", "full"}));

    auto* ren = app.add_subcommand("render", "Render the decomposition of a body as SVG");
    ren->add_option("input", input, "body")->required();
    ren->add_option("--svg", svg_path, "output path (default stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }

    try {
        if (hull->parsed()) {
            Body b = detail::load_body(input, in);
            out << (json ? to_json(b).dump() : detail::body_text(b)) << '\n';
        } else if (sum->parsed()) {
            Body b = minkowski_sum(detail::load_body(input, in), detail::load_body(input2, in));
            out << (json ? to_json(b).dump() : detail::body_text(b)) << '\n';
        } else if (diff->parsed()) {
            auto c = minkowski_diff(detail::load_body(input, in), detail::load_body(input2, in));
            if (!c) {
                out << (json ? "null" : "none") << '\n';
                err << "Minkowski difference does not exist\n";
                return kVerificationFailed;
            }
            out << (json ? to_json(*c).dump() : detail::body_text(*c)) << '\n';
        } else if (dec->parsed()) {
            const VerifyMode vm = detail::parse_mode(mode);
            if (!batch.empty()) {
                std::ifstream f(batch);
                if (!f) throw Error("cannot read " + batch);
                std::vector<Body> bodies;
                std::string line;
                while (std::getline(f, line)) {
                    if (!detail::trim(line).empty()) bodies.push_back(detail::parse_body(line));
                }
                SegmentDecomposer cache;
                const std::size_t workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
                std::vector<std::optional<DecompositionReport>> results(bodies.size());
                std::vector<std::string> failures(bodies.size());
                std::vector<std::future<void>> pool;
                for (std::size_t w = 0; w < workers; ++w) {
                    pool.push_back(std::async(std::launch::async, [&, w] {
                        for (std::size_t i = w; i < bodies.size(); i += workers) {
                            try {
                                results[i] = decompose(bodies[i], vm, &cache);
                            } catch (const Error& e) {
                                failures[i] = e.what();
                            }
                        }
                    }));
                }
                for (auto& fut : pool) fut.get();
                int code = kOk;
                for (std::size_t i = 0; i < bodies.size(); ++i) {
                    if (!results[i]) {
                        err << "line " << i + 1 << ": " << failures[i] << '\n';
                        code = kVerificationFailed;
                        continue;
                    }
                    out << (json ? to_json(*results[i]).dump()
                                 : to_expression_string(to_factorization(results[i]->normal_form)))
                        << '\n';
                }
                return code;
            }
            if (input.empty()) throw Error("decompose needs an input body or --batch");
            DecompositionReport r = decompose(detail::load_body(input, in), vm);
            if (json) {
                out << to_json(r).dump() << '\n';
            } else {
                out << detail::term_list(r.normal_form);
            }
            if (stats) {
                err << "cells " << r.cells << "\ndividing " << r.dividing << "\nmax_abs_coefficient "
                    << r.stats.max_abs_coefficient << "\ndistinct_triangles " << r.stats.distinct_triangles << '\n';
            }
            if (!svg_path.empty()) detail::write_file(svg_path, render_svg(r), out);
        } else if (seg->parsed()) {
            auto pts = detail::parse_inline_points(detail::read_source(input, in));
            if (pts.size() != 2) throw Error("a segment needs exactly two endpoints");
            if (pts[0] == pts[1]) throw Error("degenerate");
            NormalForm nf = decompose_segment(pts[0], pts[1]);
            if (!verify_identity(convex_hull(pts), nf)) throw VerificationFailure("segment decomposition failed verification");
            if (json || !terms) out << to_json(nf).dump() << '\n';
            if (terms) out << detail::term_list(nf);
        } else if (tri->parsed()) {
            Partition part = unimodular_triangulation(detail::load_body(input, in));
            if (json) {
                out << to_json(part).dump() << '\n';
            } else {
                out << "cells " << part.cells().size() << "\ndividing " << part.dividing_segments().size()
                    << "\ninterior " << part.interior().size() << '\n';
            }
            if (!svg_path.empty()) {
                DecompositionReport r{part.body(), {}, part.cells().size(), part.dividing_segments().size(), false, {}, part};
                detail::write_file(svg_path, render_svg(r), out);
            }
        } else if (fac->parsed()) {
            MaxPlusExpr e = parse_expression(detail::read_source(input, in));
            FlatDifference fd = flatten(e);
            MaxPlusFactorization f = fd.minus == MaxPlusFunction::zero() ? factorize(fd.plus)
                                                                         : factorize_difference(fd.plus, fd.minus);
            std::mt19937_64 rng(detail::resolve_seed(seed));
            std::uniform_int_distribution<Int> coord(-100, 100);
            for (std::size_t i = 0; i < probes; ++i) {
                Int x = coord(rng), y = coord(rng);
                if (evaluate(f, x, y) != evaluate(e, x, y)) {
                    throw VerificationFailure("factorization differs from the input at (" + std::to_string(x) + "," +
                                              std::to_string(y) + ")");
                }
            }
            out << (json ? to_json(f).dump() : to_expression_string(f)) << '\n';
        } else if (ev->parsed()) {
            MaxPlusExpr e = parse_expression(detail::read_source(input, in));
            Point p = detail::parse_point(at);
            out << evaluate(e, p.x, p.y) << '\n';
        } else if (ver->parsed()) {
            Body b = detail::load_body(target, in);
            NormalForm nf = normal_form_from_json(tropfactor::detail::parse_json_text(detail::read_source(nf_src, in)));
            bool ok = detail::parse_mode(mode) == VerifyMode::full ? verify_identity(b, nf)
                                                                   : support_check(b, nf, standard_directions());
            out << (ok ? "ok" : "mismatch") << '\n';
            return ok ? kOk : kVerificationFailed;
        } else if (ren->parsed()) {
            DecompositionReport r = decompose(detail::load_body(input, in));
            detail::write_file(svg_path.empty() ? "-" : svg_path, render_svg(r), out);
        }
    } catch (const VerificationFailure& e) {
        err << "verification failed: " << e.what() << '\n';
        return kVerificationFailed;
    } catch (const InvariantError& e) {
        err << "verification failed: " << e.what() << '\n';
        return kVerificationFailed;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kOk;
}

}  // namespace tropfactor::cli
