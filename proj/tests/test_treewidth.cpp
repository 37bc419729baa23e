#include <elpq/elp.hpp>
#include <elpq/error.hpp>
#include <elpq/parser.hpp>
#include <elpq/treewidth.hpp>

#include "support/oracle.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

using namespace elpq;

namespace {

Program scholarship() {
    std::ifstream     in(ELPQ_DATA_DIR "/scholarship.elp");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_program(ss.str());
}

PrimalGraph graph(std::size_t n, std::initializer_list<std::pair<std::size_t, std::size_t>> edges) {
    PrimalGraph g;
    for (std::size_t i = 0; i != n; ++i) g.vertices.push_back("v" + std::to_string(i));
    for (auto [a, b] : edges) g.edges.insert({std::min(a, b), std::max(a, b)});
    return g;
}

std::string text(const GroundProgram& g) { return serialize_program(g.toProgram()); }

} // namespace

TEST_CASE("primal graph", "[treewidth]") {
    auto g = primal_graph(parse_program("a :- b, not c. d :- knot e."), GraphMode::Ground);
    CHECK(g.vertices == std::vector<std::string>{"a", "b", "c", "d", "e"});
    CHECK(g.edges.size() == 4);
    CHECK(g.hasEdge(*g.find("a"), *g.find("c")));
    CHECK(g.hasEdge(*g.find("e"), *g.find("d")));
    CHECK_FALSE(g.hasEdge(*g.find("a"), *g.find("d")));

    auto p = primal_graph(scholarship(), GraphMode::Predicate);
    CHECK(p.vertices.size() == 5);
    CHECK(p.hasEdge(*p.find("interview"), *p.find("elig")));
    CHECK_FALSE(p.hasEdge(*p.find("interview"), *p.find("lowGPA")));

    CHECK_THROWS(primal_graph(parse_program("p(X) :- q(X)."), GraphMode::Ground));
}

TEST_CASE("decomposition widths", "[treewidth]") {
    auto path = graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    auto clique = graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    auto cycle  = graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
    for (auto h : {Heuristic::MinFill, Heuristic::MinDegree}) {
        auto tp = decompose(path, h);
        CHECK(is_tree_decomposition(path, tp));
        CHECK(tp.width() == 1);
        auto tc = decompose(clique, h);
        CHECK(is_tree_decomposition(clique, tc));
        CHECK(tc.width() == 3);
        CHECK(decompose(cycle, h).width() == 2);
    }
    auto empty = decompose(PrimalGraph{});
    CHECK(empty.size() == 1);
    CHECK(empty.width() == -1);
    CHECK(is_tree_decomposition(PrimalGraph{}, empty));
}

TEST_CASE("validator rejects broken decompositions", "[treewidth]") {
    auto       g = graph(3, {{0, 1}, {1, 2}});
    TreeDecomp td;
    td.vertices = g.vertices;
    td.bags     = {{0, 1}, {1, 2}};
    td.parent   = {TreeDecomp::npos, 0};
    CHECK(check_tree_decomposition(g, td).empty());

    auto missing   = td;
    missing.bags   = {{0, 1}, {1}};
    CHECK_FALSE(is_tree_decomposition(g, missing));

    auto uncovered = td;
    uncovered.bags = {{0, 1}, {2}};
    CHECK_FALSE(is_tree_decomposition(g, uncovered));

    auto split = td;
    split.bags   = {{0, 1}, {1, 2}, {0}};
    split.parent = {TreeDecomp::npos, 0, 1};
    CHECK_FALSE(is_tree_decomposition(g, split));

    auto cyclic   = td;
    cyclic.parent = {1, 0};
    CHECK_FALSE(is_tree_decomposition(g, cyclic));

    auto forest   = td;
    forest.parent = {TreeDecomp::npos, TreeDecomp::npos};
    CHECK_FALSE(is_tree_decomposition(g, forest));
}

TEST_CASE("nice decompositions", "[treewidth]") {
    auto g  = graph(6, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {3, 5}});
    auto td = decompose(g);
    auto n  = make_nice(td);
    CHECK(is_nice(n));
    CHECK(is_tree_decomposition(g, n));
    CHECK(n.width() == td.width());
    CHECK(n.bags[n.root].empty());
    for (std::size_t i = 0; i != n.size(); ++i) {
        auto t = node_type(n, i);
        CHECK(t != NodeType::Other);
        if (t == NodeType::Leaf) CHECK(n.bags[i].empty());
    }
    CHECK(canonical_form(make_nice(n)) == canonical_form(n));
    CHECK(std::string(to_string(NodeType::Join)) == "join");
}

TEST_CASE("nice decompositions of random graphs", "[treewidth][property]") {
    oracle::Rng rng(61);
    for (int i = 0; i != 100; ++i) {
        PrimalGraph g;
        std::size_t n = 1 + rng.below(9);
        for (std::size_t v = 0; v != n; ++v) g.vertices.push_back("v" + std::to_string(v));
        for (std::size_t a = 0; a != n; ++a)
            for (std::size_t b = a + 1; b != n; ++b)
                if (rng.chance(30)) g.edges.insert({a, b});
        for (auto h : {Heuristic::MinFill, Heuristic::MinDegree}) {
            auto td = decompose(g, h);
            REQUIRE(check_tree_decomposition(g, td).empty());
            auto nice = make_nice(td);
            CHECK(check_tree_decomposition(g, nice).empty());
            CHECK(is_nice(nice));
            CHECK(nice.width() == td.width());
            CHECK(canonical_form(make_nice(nice)) == canonical_form(nice));
        }
    }
}

TEST_CASE("bag grounding", "[treewidth]") {
    auto ex = scholarship();
    auto pg = primal_graph(ex, GraphMode::Predicate);
    auto td = decompose(pg);
    auto r  = bag_ground(ex, td);
    CHECK(text(r.program) == text(ground(ex)));
    CHECK(count_world_views(r.program) == 1);
    CHECK(r.ruleNode.size() == ex.rules.size());
    CHECK(is_tree_decomposition(primal_graph(r.program.toProgram(), GraphMode::Ground), r.decomposition));

    // A single bag holding every predicate grounds exactly like the plain grounder.
    TreeDecomp one;
    one.vertices = pg.vertices;
    one.bags     = {{}};
    for (std::size_t v = 0; v != pg.vertices.size(); ++v) one.bags[0].push_back(v);
    one.parent = {TreeDecomp::npos};
    CHECK(text(bag_ground(ex, one).program) == text(ground(ex)));

    TreeDecomp bad = one;
    bad.bags       = {{0}};
    CHECK_THROWS_AS(bag_ground(ex, bad), UncoveredRule);
}

TEST_CASE("bag grounding keeps width bounded on chains", "[treewidth]") {
    std::string prog = "p0(a). p0(b).\n";
    for (int i = 1; i != 6; ++i) prog += "p" + std::to_string(i) + "(X) :- p" + std::to_string(i - 1) + "(X).\n";
    auto p  = parse_program(prog);
    auto td = decompose(primal_graph(p, GraphMode::Predicate));
    CHECK(td.width() == 1);
    auto r = bag_ground(p, td);
    CHECK(r.decomposition.width() <= 2 * (td.width() + 1) - 1);
    CHECK(is_tree_decomposition(primal_graph(r.program.toProgram(), GraphMode::Ground), r.decomposition));
}

TEST_CASE("bag grounding equals grounding on random programs", "[treewidth][property]") {
    oracle::Rng rng(62);
    for (int i = 0; i != 100; ++i) {
        auto p  = oracle::random_safe_program(rng, 4, 5);
        INFO(serialize_program(p));
        auto td = decompose(primal_graph(p, GraphMode::Predicate), i % 2 ? Heuristic::MinDegree : Heuristic::MinFill);
        auto r  = bag_ground(p, td);
        auto g  = ground(p);
        CHECK(text(r.program) == text(g));
        CHECK(check_tree_decomposition(primal_graph(g.toProgram(), GraphMode::Ground), r.decomposition).empty());
        CHECK(text(bag_ground(p, td, {}, 3).program) == text(g));
        // Each ground bag holds at most d^a atoms per original predicate.
        double bound = std::pow(static_cast<double>(herbrand_universe(p).size()), static_cast<double>(p.maxArity()));
        for (std::size_t t = 0; t != td.size(); ++t)
            CHECK(static_cast<double>(r.decomposition.bags[t].size()) <= static_cast<double>(td.bags[t].size()) * bound);
    }
}

TEST_CASE("pace output", "[treewidth]") {
    auto td  = decompose(graph(3, {{0, 1}, {1, 2}}));
    auto out = to_pace(td);
    CHECK(out.rfind("s td " + std::to_string(td.size()) + " 2 3\n", 0) == 0);
    CHECK(out.find("\nb 1 ") != std::string::npos);
    CHECK(out.find("\nc 1 v0\n") != std::string::npos);
    CHECK(out.find("\nc 3 v2\n") != std::string::npos);
}
