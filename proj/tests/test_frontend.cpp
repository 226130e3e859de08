#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "oracle.hpp"
#include "tropfactor/cli.hpp"
#include "tropfactor/tropfactor.hpp"

using namespace tropfactor;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run_cli(std::vector<std::string> args, const std::string& input = "") {
    std::ostringstream out, err;
    std::istringstream in(input);
    int code = cli::run(args, out, err, in);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
    auto p = std::filesystem::temp_directory_path() / ("tropfactor_test_" + name);
    std::ofstream(p) << content;
    return p;
}

bool pointwise_equal(const MaxPlusExpr& a, const MaxPlusExpr& b, std::mt19937_64& rng, int probes = 200) {
    std::uniform_int_distribution<Int> d(-100, 100);
    for (int i = 0; i < probes; ++i) {
        Int x = d(rng), y = d(rng);
        if (evaluate(a, x, y) != evaluate(b, x, y)) return false;
    }
    return true;
}

}  // namespace

// ---- parser ----

TEST(Parser, SimpleMax) {
    MaxPlusExpr e = parse_expression("max(0, 2x, y)");
    FlatDifference fd = flatten(e);
    EXPECT_EQ(fd.plus, MaxPlusFunction({{0, 0}, {2, 0}, {0, 1}}));
    EXPECT_EQ(fd.minus, MaxPlusFunction::zero());
    EXPECT_EQ(evaluate(e, 1, 3), 3);
}

TEST(Parser, LinearSugarAndScaling) {
    EXPECT_EQ(evaluate(parse_expression("2x"), 3, 5), 6);
    EXPECT_EQ(evaluate(parse_expression("2*x - 3y"), 3, 5), -9);
    EXPECT_EQ(evaluate(parse_expression("3*max(0,x)"), 2, 0), 6);
    EXPECT_EQ(evaluate(parse_expression("  x+y  "), 2, 5), 7);
    EXPECT_EQ(evaluate(parse_expression("-x"), 2, 5), -2);
    EXPECT_EQ(evaluate(parse_expression("(x)"), 4, 0), 4);
    EXPECT_EQ(evaluate(parse_expression("0"), 4, 0), 0);
}

TEST(Parser, DifferenceOfMaxes) {
    MaxPlusExpr e = parse_expression("max(0,x) + max(0,y) - max(0,x,y)");
    EXPECT_EQ(e.kind(), MaxPlusExpr::Kind::sum);
    for (Int x = -3; x <= 3; ++x)
        for (Int y = -3; y <= 3; ++y)
            EXPECT_EQ(evaluate(e, x, y), std::max<Int>(0, x) + std::max<Int>(0, y) - std::max<Int>({0, x, y}));
}

TEST(Parser, NestedNegation) {
    MaxPlusExpr e = parse_expression("max(-max(x, y), 2x+3y)");
    for (Int x = -4; x <= 4; ++x)
        for (Int y = -4; y <= 4; ++y) EXPECT_EQ(evaluate(e, x, y), std::max(-std::max(x, y), 2 * x + 3 * y));
}

TEST(Parser, RejectsNonzeroConstant) {
    try {
        parse_expression("max(0, x+1)");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("nonzero tropical coefficient unsupported"), std::string::npos);
        EXPECT_EQ(e.column(), 10u);
    }
    EXPECT_THROW(parse_expression("3"), ParseError);
}

TEST(Parser, SyntaxErrorsCarryColumn) {
    auto column = [](const char* src) -> std::size_t {
        try {
            parse_expression(src);
        } catch (const ParseError& e) {
            return e.column();
        }
        return 0;
    };
    EXPECT_EQ(column("max(0,x"), 8u);
    EXPECT_EQ(column("max(0,,x)"), 7u);
    EXPECT_EQ(column("x + z"), 5u);
    EXPECT_EQ(column("x y"), 3u);
    EXPECT_EQ(column(""), 1u);
    EXPECT_EQ(column("0*x"), 1u);
    EXPECT_EQ(column("mux(x)"), 1u);
    EXPECT_EQ(column("99999999999999999999x"), 1u);
}

TEST(Parser, FactorizationStringRoundTrips) {
    std::mt19937_64 rng(71);
    for (int iter = 0; iter < 60; ++iter) {
        MaxPlusFunction f(oracle::random_points(rng, -6, 6, 1 + iter % 8));
        MaxPlusFactorization fact = factorize(f);
        std::string text = to_expression_string(fact);
        MaxPlusExpr back = parse_expression(text);
        EXPECT_TRUE(pointwise_equal(back, MaxPlusExpr::from_function(f), rng)) << text;
    }
}

// ---- JSON ----

TEST(Json, BodyRoundTrip) {
    Body b = convex_hull({{0, 0}, {2, 0}, {2, 2}});
    EXPECT_EQ(to_json(b).dump(), R"({"vertices":[[0,0],[2,0],[2,2]]})");
    EXPECT_EQ(body_from_json(to_json(b)), b);
    EXPECT_EQ(body_from_json(Json::parse(R"({"points":[[0,0],[1,1],[2,2],[2,0]]})")), b);
    EXPECT_THROW(body_from_json(Json::parse(R"({"vertices":[[0,0],[1,0],[2,0]]})")), Error);
    EXPECT_THROW(body_from_json(Json::parse(R"({"vertices":[[0,0],[1]]})")), Error);
    EXPECT_THROW(body_from_json(Json::parse(R"({"vertices":[[0,0.5],[1,1]]})")), Error);
    EXPECT_THROW(body_from_json(Json::parse(R"({"v":[]})")), Error);
}

TEST(Json, NormalFormSchemaAndRoundTrip) {
    NormalForm nf;
    nf.add_atom(UnitTriangle({0, 0}, {1, 0}, {1, 1}), 2);
    EXPECT_EQ(to_json(nf).dump(), R"({"t":[0,0],"kx":0,"ky":0,"triangles":[{"v":[[0,0],[1,0],[1,1]],"k":2}]})");
    NormalForm seg = decompose_segment({-1, -1}, {1, 0});
    Json j = to_json(seg);
    EXPECT_EQ(normal_form_from_json(j), seg);
    EXPECT_EQ(to_json(normal_form_from_json(j)), j);
    EXPECT_THROW(normal_form_from_json(Json::parse(R"({"t":[0,0],"kx":0,"ky":0,"triangles":[{"v":[[0,0],[2,0],[1,1]],"k":1}]})")),
                 Error);
    EXPECT_THROW(normal_form_from_json(Json::parse(R"({"t":[0,0],"kx":0,"triangles":[]})")), Error);
}

TEST(Json, PartitionRoundTrip) {
    Partition p = unimodular_triangulation(convex_hull({{1, 0}, {0, 1}, {1, 3}, {4, 1}}));
    Json j = to_json(p);
    EXPECT_EQ(j.begin().key(), "points");
    Partition back = partition_from_json(j);
    EXPECT_EQ(to_json(back), j);
    Json bad = j;
    bad["interior"] = Json::array({0});
    EXPECT_THROW(partition_from_json(bad), Error);
}

TEST(Json, FunctionAndFactorizationRoundTrip) {
    MaxPlusFunction f({{0, 0}, {2, 0}, {0, 1}});
    EXPECT_EQ(to_json(f).dump(), R"({"terms":[[0,0],[0,1],[2,0]]})");
    EXPECT_EQ(function_from_json(to_json(f)), f);
    MaxPlusFactorization fact = factorize(f);
    EXPECT_EQ(factorization_from_json(to_json(fact)), fact);
    Json j = to_json(fact);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    EXPECT_EQ(keys, (std::vector<std::string>{"a0", "b0", "kx", "ky", "triangles"}));
}

TEST(Json, ReportKeysInFixedOrder) {
    auto r = decompose(convex_hull({{0, 0}, {2, 0}, {2, 2}}));
    Json j = to_json(r);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    EXPECT_EQ(keys, (std::vector<std::string>{"input", "normal_form", "cells", "dividing", "verified", "stats"}));
    EXPECT_EQ(j["stats"].dump(), R"({"max_abs_coefficient":2,"distinct_triangles":1})");
}

TEST(Json, MalformedText) {
    EXPECT_THROW(tropfactor::detail::parse_json_text("{\"vertices\": [[0,0]"), Error);
}

// ---- SVG ----

TEST(Svg, RightTriangleFigure) {
    std::string svg = render_svg(decompose(convex_hull({{0, 0}, {2, 0}, {2, 2}})));
    EXPECT_NE(svg.find("viewBox=\"0 0 "), std::string::npos);
    EXPECT_NE(svg.find("class=\"body\""), std::string::npos);
    // 3x3 lattice dots for the body plus 2x2 for the single atom
    std::size_t dots = 0;
    for (std::size_t pos = 0; (pos = svg.find("class=\"lattice\"", pos)) != std::string::npos; ++pos) ++dots;
    EXPECT_EQ(dots, 9u + 4u);
    std::size_t cells = 0;
    for (std::size_t pos = 0; (pos = svg.find("class=\"cell\"", pos)) != std::string::npos; ++pos) ++cells;
    EXPECT_EQ(cells, 4u);
    EXPECT_NE(svg.find("data-atom=\"T{(0,0),(1,0),(1,1)}\" data-k=\"2\""), std::string::npos);
    EXPECT_NE(svg.find("t=(0,0)"), std::string::npos);
}

TEST(Svg, QuadrilateralAtomRow) {
    std::string svg = render_svg(decompose(convex_hull({{1, 0}, {0, 1}, {1, 3}, {4, 1}})));
    std::size_t atoms = 0;
    for (std::size_t pos = 0; (pos = svg.find("class=\"atom\"", pos)) != std::string::npos; ++pos) ++atoms;
    EXPECT_EQ(atoms, 7u);
    EXPECT_NE(svg.find("data-atom=\"Iy\" data-k=\"-1\""), std::string::npos);
    EXPECT_NE(svg.find("data-atom=\"T{(0,2),(1,1),(3,0)}\" data-k=\"1\""), std::string::npos);
}

TEST(Svg, UnitScale) {
    // 1 lattice unit = 32 px: the body polygon of the right triangle spans 64 px
    std::string svg = render_svg(decompose(convex_hull({{0, 0}, {2, 0}, {2, 2}})));
    EXPECT_NE(svg.find("<polygon class=\"body\" points=\"16,80 80,80 80,16\"/>"), std::string::npos);
}

// ---- CLI ----

TEST(Cli, FactorizeJson) {
    auto r = run_cli({"factorize", "max(0,2x,y)", "--json"});
    EXPECT_EQ(r.code, 0) << r.err;
    MaxPlusFactorization f = factorization_from_json(Json::parse(r.out));
    EXPECT_EQ(f, factorize(MaxPlusFunction({{0, 0}, {2, 0}, {0, 1}})));
}

TEST(Cli, FactorizeTextReparses) {
    auto r = run_cli({"factorize", "max(0,x) + max(0,y) - max(0,x,y)"});
    EXPECT_EQ(r.code, 0) << r.err;
    std::mt19937_64 rng(72);
    EXPECT_TRUE(pointwise_equal(parse_expression(r.out), parse_expression("max(0,x) + max(0,y) - max(0,x,y)"), rng));
}

TEST(Cli, VerifyExample) {
    auto ok = run_cli({"verify", "--target", R"({"vertices":[[0,0],[2,0],[2,2]]})", "--nf",
                       R"({"t":[0,0],"kx":0,"ky":0,"triangles":[{"v":[[0,0],[1,0],[1,1]],"k":2}]})"});
    EXPECT_EQ(ok.code, 0) << ok.err;
    EXPECT_EQ(ok.out, "ok\n");
    auto bad = run_cli({"verify", "--target", R"({"vertices":[[0,0],[2,0],[2,2]]})", "--nf",
                        R"({"t":[0,0],"kx":0,"ky":0,"triangles":[{"v":[[0,0],[1,0],[1,1]],"k":1}]})"});
    EXPECT_EQ(bad.code, 1);
    auto support = run_cli({"verify", "--target", "0,0 2,0 2,2", "--verify", "support", "--nf",
                            R"({"t":[0,0],"kx":0,"ky":0,"triangles":[{"v":[[0,0],[1,0],[1,1]],"k":2}]})"});
    EXPECT_EQ(support.code, 0) << support.err;
}

TEST(Cli, Eval) {
    auto r = run_cli({"eval", "max(0,2x,y)", "--at", "1,3"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "3\n");
    EXPECT_EQ(run_cli({"eval", "max(0,2x,y)", "--at", "-2,-5"}).out, "0\n");
}

TEST(Cli, HullSumDiff) {
    EXPECT_EQ(run_cli({"hull", "0,0 1,1 2,2 2,0", "--json"}).out, "{\"vertices\":[[0,0],[2,0],[2,2]]}\n");
    EXPECT_EQ(run_cli({"hull", "0,0 2,0 2,2"}).out, "polygon (0,0) (2,0) (2,2)\n");
    EXPECT_EQ(run_cli({"sum", "0,0 1,0", "0,0 0,1", "--json"}).out, "{\"vertices\":[[0,0],[1,0],[1,1],[0,1]]}\n");
    auto d = run_cli({"diff", "0,0 1,0 1,1 0,1", "0,0 1,0"});
    EXPECT_EQ(d.code, 0);
    EXPECT_EQ(d.out, "segment (0,0) (0,1)\n");
    auto none = run_cli({"diff", "0,0 1,0 0,1", "0,0 1,1"});
    EXPECT_EQ(none.code, 1);
    EXPECT_EQ(none.out, "none\n");
}

TEST(Cli, DecomposeJsonAndStdin) {
    auto r = run_cli({"decompose", "-", "--json"}, R"({"vertices":[[0,0],[2,0],[2,2]]})");
    EXPECT_EQ(r.code, 0) << r.err;
    Json j = Json::parse(r.out);
    EXPECT_TRUE(j["verified"].get<bool>());
    EXPECT_EQ(normal_form_from_json(j["normal_form"]), decompose(convex_hull({{0, 0}, {2, 0}, {2, 2}})).normal_form);
    auto stats = run_cli({"decompose", "0,0 2,0 2,2", "--stats", "--verify", "support"});
    EXPECT_EQ(stats.code, 0);
    EXPECT_NE(stats.err.find("cells 4"), std::string::npos);
}

TEST(Cli, DecomposeFromFileAndSvg) {
    auto body = temp_file("body.json", R"({"points":[[1,0],[0,1],[1,3],[4,1]]})");
    auto svg = std::filesystem::temp_directory_path() / "tropfactor_test_out.svg";
    auto r = run_cli({"decompose", body.string(), "--svg", svg.string()});
    EXPECT_EQ(r.code, 0) << r.err;
    std::ifstream f(svg);
    std::string content((std::istreambuf_iterator<char>(f)), {});
    EXPECT_NE(content.find("<svg"), std::string::npos);
}

TEST(Cli, DecomposeSegment) {
    auto r = run_cli({"decompose-segment", "-1,-1 1,0"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(normal_form_from_json(Json::parse(r.out)), decompose_segment({-1, -1}, {1, 0}));
    auto terms = run_cli({"decompose-segment", "0,0 2,1", "--json", "--terms"});
    EXPECT_NE(terms.out.find("+1 Iy"), std::string::npos);
    EXPECT_EQ(run_cli({"decompose-segment", "1,1 1,1"}).code, 2);
    EXPECT_EQ(run_cli({"decompose-segment", "1,1"}).code, 2);
}

TEST(Cli, Triangulate) {
    auto r = run_cli({"triangulate", "1,0 0,1 1,3 4,1", "--json"});
    EXPECT_EQ(r.code, 0) << r.err;
    Partition p = partition_from_json(Json::parse(r.out));
    EXPECT_EQ(p.cells().size(), 12u);
    auto text = run_cli({"triangulate", "0,0 2,0 2,2", "--svg", "-"});
    EXPECT_NE(text.out.find("cells 4"), std::string::npos);
    EXPECT_NE(text.out.find("<svg"), std::string::npos);
}

TEST(Cli, Render) {
    auto r = run_cli({"render", "0,0 2,0 2,2"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("<svg", 0), 0u);
}

TEST(Cli, Batch) {
    auto file = temp_file("batch.txt", "0,0 2,0 2,2\n\n{\"vertices\":[[0,0],[3,0],[0,3]]}\n0,0 1,0\n1,0 0,1 1,3 4,1\n");
    auto r = run_cli({"decompose", "--batch", file.string(), "--json"});
    EXPECT_EQ(r.code, 0) << r.err;
    std::istringstream lines(r.out);
    std::string line;
    std::vector<Json> docs;
    while (std::getline(lines, line)) docs.push_back(Json::parse(line));
    ASSERT_EQ(docs.size(), 4u);
    EXPECT_EQ(body_from_json(docs[0]["input"]), convex_hull({{0, 0}, {2, 0}, {2, 2}}));
    EXPECT_EQ(body_from_json(docs[3]["input"]), convex_hull({{1, 0}, {0, 1}, {1, 3}, {4, 1}}));
    auto bad = temp_file("batch_bad.txt", "0,0 2,0\nnot a body\n");
    EXPECT_EQ(run_cli({"decompose", "--batch", bad.string()}).code, 2);
}

TEST(Cli, SeedMakesProbesReproducible) {
    auto a = run_cli({"factorize", "max(0,x,y) - max(0,2x+y)", "--seed", "7", "--probes", "50"});
    auto b = run_cli({"factorize", "max(0,x,y) - max(0,2x+y)", "--seed", "7", "--probes", "50"});
    EXPECT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    setenv("TROPFACTOR_SEED", "nonsense", 1);
    EXPECT_EQ(run_cli({"factorize", "max(0,x)"}).code, 2);
    setenv("TROPFACTOR_SEED", "9", 1);
    EXPECT_EQ(run_cli({"factorize", "max(0,x)"}).code, 0);
    unsetenv("TROPFACTOR_SEED");
}

TEST(Cli, ExitCodesForInputErrors) {
    EXPECT_EQ(run_cli({}).code, 2);
    EXPECT_EQ(run_cli({"bogus"}).code, 2);
    EXPECT_EQ(run_cli({"hull", "0,0", "--frobnicate"}).code, 2);
    EXPECT_EQ(run_cli({"hull", "a,b"}).code, 2);
    EXPECT_EQ(run_cli({"hull", "{\"vertices\":"}).code, 2);
    EXPECT_EQ(run_cli({"factorize", "max(0, x+1)"}).code, 2);
    EXPECT_EQ(run_cli({"eval", "max(0,x)", "--at", "1"}).code, 2);
    EXPECT_EQ(run_cli({"decompose", "0,0 1,0", "--verify", "maybe"}).code, 2);
    EXPECT_EQ(run_cli({"decompose"}).code, 2);
    EXPECT_EQ(run_cli({"triangulate", "0,0 3,0"}).code, 2);
    EXPECT_EQ(run_cli({"decompose", "--batch", "/nonexistent/file"}).code, 2);
    auto r = run_cli({"factorize", "max(0, x+1)"});
    EXPECT_NE(r.err.find("nonzero tropical coefficient unsupported"), std::string::npos);
}

TEST(Cli, HelpMentionsConstants) {
    auto r = run_cli({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("tropical coefficients"), std::string::npos);
}
