#include <elpq/asp.hpp>
#include <elpq/error.hpp>
#include <elpq/grounder.hpp>
#include <elpq/parser.hpp>

#include "support/oracle.hpp"

#include <catch_amalgamated.hpp>

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

std::vector<std::set<std::string>> atomSets(const GroundProgram& g, const std::vector<Interpretation>& sets) {
    std::vector<std::set<std::string>> out;
    for (const auto& m : sets) {
        std::set<std::string> atoms;
        for (auto i = m.find_first(); i != Interpretation::npos; i = m.find_next(i)) {
            const auto& a = g.table().atom(static_cast<AtomId>(i));
            if (a.predicate != kDomainPredicate) atoms.insert(a.str());
        }
        out.push_back(std::move(atoms));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("herbrand universe", "[grounder]") {
    CHECK(herbrand_universe(parse_program("p(a). p(b).")) == std::vector<std::string>{"a", "b"});
    CHECK(herbrand_universe(parse_program("q(X) :- p(X).")) == std::vector<std::string>{"c0"});
    CHECK(herbrand_universe(scholarship()) == std::vector<std::string>{"mark", "maya", "mia"});
    Program declared = parse_program("p(a).");
    declared.declaredConstants = std::set<std::string>{"z"};
    CHECK(herbrand_universe(declared) == std::vector<std::string>{"a", "z"});
}

TEST_CASE("safety", "[grounder]") {
    CHECK(check_safety(parse_program("p(X) :- q(X).")).empty());
    CHECK(check_safety(parse_program("p(X) :- not q(X).")) == std::vector<std::size_t>{0});
    CHECK(check_safety(parse_program("p(X) :- knot q(X).")) == std::vector<std::size_t>{0});
    CHECK(check_safety(parse_program("p(X) :- r(X), knot q(X).")).empty());
    CHECK(check_safety(parse_program("p :- knot q(X).")) == std::vector<std::size_t>{0});
    CHECK(check_safety(parse_program("p :- knot q(X)."), SafetyMode::Standard).empty());
    CHECK(check_safety(scholarship()) == std::vector<std::size_t>{6});
}

TEST_CASE("domain rewrite", "[grounder]") {
    auto out = domain_rewrite(parse_program("p(a). p(X) :- not q(X)."));
    CHECK(serialize_program(out) == "dom(a).\np(a).\np(X) :- dom(X), not q(X).\n");
    CHECK(check_safety(out).empty());

    auto safe = parse_program("p(a). q(X) :- p(X).");
    CHECK(domain_rewrite(safe) == safe);
    CHECK(domain_rewrite(safe, true).rules.size() == 3);
    CHECK(domain_rewrite(Program{}) == Program{});

    CHECK(check_safety(domain_rewrite(scholarship())).empty());
    CHECK_THROWS_AS(reject_reserved_names(parse_program("dom(a).")), ReservedNameCollision);
}

TEST_CASE("ground", "[grounder]") {
    auto g = ground_rules(parse_program("q(1). q(2). p(X) :- q(X)."));
    CHECK(serialize_program(g) == "p(1) :- q(1).\np(2) :- q(2).\nq(1).\nq(2).\n");

    // 3 facts plus 4 schemas over 3 constants.
    auto ex = scholarship();
    CHECK(instantiation_count(ex, 3) == 15);
    auto gex = ground(ex);
    CHECK(gex.rules().size() == 15);
    CHECK(gex.atomCount() == 15);

    auto two = parse_program("p(a). p(b). p(c). r(X,Y) :- p(X), p(Y).");
    CHECK(ground_rules(two).rules.size() == 3 + 9);
    CHECK_THROWS_AS(ground(two, GroundOptions{5}), BudgetExceeded);
}

TEST_CASE("grounding is idempotent", "[grounder][property]") {
    oracle::Rng rng(21);
    for (int i = 0; i != 100; ++i) {
        auto p  = oracle::random_safe_program(rng, 4, 5);
        auto g1 = ground_rules(p);
        auto g2 = ground_rules(g1);
        CHECK(g1 == g2);
        // Size bound: at most one instance per substitution.
        CHECK(g1.rules.size() <= instantiation_count(p, herbrand_universe(p).size()));
    }
}

TEST_CASE("answer sets invariant under domain rewrite", "[grounder][property]") {
    oracle::Rng rng(22);
    int         checked = 0;
    for (int i = 0; i != 100; ++i) {
        auto p = oracle::random_safe_program(rng, 3, 3);
        for (auto& r : p.rules) r.bodyEpi.clear();
        auto plain     = ground(p);
        auto rewritten = ground(domain_rewrite(p, true));
        if (rewritten.atomCount() > 16) continue;
        CHECK(atomSets(plain, answer_sets(plain)) == atomSets(rewritten, answer_sets(rewritten)));
        ++checked;
    }
    CHECK(checked > 50);
}
