#include <elpq/asp.hpp>
#include <elpq/elp.hpp>
#include <elpq/error.hpp>
#include <elpq/parser.hpp>

#include "support/oracle.hpp"

#include <catch_amalgamated.hpp>

using namespace elpq;

namespace {

GroundProgram gp(const char* text) { return ground(parse_program(text)); }

Interpretation interp(const GroundProgram& g, std::initializer_list<const char*> atoms) {
    Interpretation m(g.atomCount());
    for (const auto* a : atoms) m.set(g.table().id(parse_program(std::string(a) + ".").rules[0].head[0]));
    return m;
}

std::vector<std::uint32_t> asMasks(const std::vector<Interpretation>& sets) {
    std::vector<std::uint32_t> out;
    for (const auto& m : sets) out.push_back(static_cast<std::uint32_t>(m.to_ulong()));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("satisfaction and answer-set check", "[asp]") {
    auto p = gp("a :- not a.");
    CHECK_FALSE(is_answer_set(p, interp(p, {"a"})));
    CHECK_FALSE(is_answer_set(p, interp(p, {})));
    CHECK(answer_sets(p).empty());

    auto d = gp("a v b.");
    CHECK(is_answer_set(d, interp(d, {"a"})));
    CHECK_FALSE(is_answer_set(d, interp(d, {"a", "b"})));
    CHECK(is_model(d, interp(d, {"a", "b"})));

    auto f = gp("a.");
    CHECK(is_answer_set(f, interp(f, {"a"})));

    auto e = gp("a :- knot b.");
    CHECK_THROWS_AS(satisfies(interp(e, {}), e.rules()[0]), EpistemicPresent);
    CHECK_THROWS_AS(answer_sets(e), EpistemicPresent);
}

TEST_CASE("answer set examples", "[asp]") {
    auto p  = gp("a v b. :- a.");
    auto as = answer_sets(p);
    REQUIRE(as.size() == 1);
    CHECK(to_string(as[0], p.table()) == "{b}");

    auto empty = answer_sets(GroundProgram{});
    REQUIRE(empty.size() == 1);
    CHECK(empty[0].none());

    auto choice = gp("a :- not b. b :- not a.");
    CHECK(answer_sets(choice).size() == 2);

    auto unfounded = gp("a :- b. b :- a.");
    REQUIRE(answer_sets(unfounded).size() == 1);
    CHECK(answer_sets(unfounded)[0].none());

    // Disjunctive program where minimality matters beyond support.
    auto sat = gp("a v b. a :- b. b :- a.");
    REQUIRE(answer_sets(sat).size() == 1);
    CHECK(to_string(answer_sets(sat)[0], sat.table()) == "{a, b}");
}

TEST_CASE("example reduct has two answer sets", "[asp]") {
    auto p = gp(R"(lowGPA(mark). highGPA(mia). lowGPA(maya) v highGPA(maya).
inelig(mark) :- lowGPA(mark). inelig(mia) :- lowGPA(mia). inelig(maya) :- lowGPA(maya).
elig(mark) :- highGPA(mark). elig(mia) :- highGPA(mia). elig(maya) :- highGPA(maya).
:- elig(mark), inelig(mark). :- elig(mia), inelig(mia). :- elig(maya), inelig(maya).
interview(maya) :- knot elig(maya), knot inelig(maya).
interview(mark) :- knot elig(mark), knot inelig(mark).
interview(mia) :- knot elig(mia), knot inelig(mia).)");
    EpistemicGuess g{inner_literals(p), {}};
    for (const auto& l : g.inner) {
        auto name = p.table().atom(l.atom).str();
        g.inI.push_back(name == "inelig(mark)" || name == "elig(mia)");
    }
    CHECK(answer_sets(epistemic_reduct(p, g)).size() == 2);
}

TEST_CASE("least model", "[asp]") {
    auto p = gp("a. b :- a.");
    CHECK(to_string(least_model(p), p.table()) == "{a, b}");
    CHECK_THROWS_AS(least_model(gp("a. :- a.")), ConstraintViolated);
    CHECK(least_model(gp("b :- a.")).none());
    CHECK_THROWS_AS(least_model(gp("a :- not b.")), WrongFragment);
    CHECK_THROWS_AS(least_model(gp("a v b.")), WrongFragment);
}

TEST_CASE("budget", "[asp]") {
    auto p = gp("a v b. c v d. e v f.");
    CHECK_THROWS_AS(answer_sets(p, AspOptions{4}), BudgetExceeded);
    CHECK_THROWS_AS(answer_sets_bruteforce(p, 4), BudgetExceeded);
    CHECK(answer_sets(p, AspOptions{6}).size() == 8);
}

TEST_CASE("search agrees with the definition", "[asp][property]") {
    oracle::Rng rng(31);
    for (int i = 0; i != 400; ++i) {
        auto p = ground(oracle::random_asp(rng, 1 + rng.below(7), 8, i % 2 == 0));
        INFO(serialize_program(p.toProgram()));
        auto fast = asMasks(answer_sets(p));
        auto ref  = oracle::answer_sets(oracle::plain_rules(p), p.atomCount());
        CHECK(fast == ref);
        CHECK(asMasks(answer_sets_bruteforce(p)) == ref);
        for (const auto& m : answer_sets(p)) CHECK(is_answer_set(p, m));
    }
}

TEST_CASE("positive constraint-free normal programs have one answer set", "[asp][property]") {
    oracle::Rng rng(32);
    for (int i = 0; i != 200; ++i) {
        auto prog = oracle::random_asp(rng, 6, 8, false);
        for (auto& r : prog.rules) r.bodyNeg.clear();
        prog.rules.erase(std::remove_if(prog.rules.begin(), prog.rules.end(), [](const Rule& r) { return r.head.empty(); }),
                         prog.rules.end());
        auto p  = ground(prog);
        auto as = answer_sets(p);
        REQUIRE(as.size() == 1);
        CHECK(as[0] == least_model(p));
    }
}

TEST_CASE("answer sets of positive programs form an antichain", "[asp][property]") {
    oracle::Rng rng(33);
    for (int i = 0; i != 200; ++i) {
        auto prog = oracle::random_asp(rng, 6, 8, true);
        for (auto& r : prog.rules) r.bodyNeg.clear();
        auto as = answer_sets(ground(prog));
        for (const auto& a : as)
            for (const auto& b : as)
                if (a != b) CHECK_FALSE(a.is_subset_of(b));
    }
}

TEST_CASE("larger disjunctive programs beyond brute force", "[asp]") {
    // 20 independent choices: 2^20 answer sets would be too many to list,
    // but a constraint chain keeps exactly one.
    std::string text;
    for (int i = 0; i != 40; ++i) {
        text += "a" + std::to_string(i) + " v b" + std::to_string(i) + ".\n";
        text += ":- b" + std::to_string(i) + ".\n";
    }
    auto as = answer_sets(gp(text.c_str()));
    REQUIRE(as.size() == 1);
    CHECK(as[0].count() == 40);
}
