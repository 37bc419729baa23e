#include <elpq/elp.hpp>
#include <elpq/error.hpp>
#include <elpq/parser.hpp>

#include "support/oracle.hpp"

#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

using namespace elpq;

namespace {

GroundProgram gp(const std::string& text) { return ground(parse_program(text)); }

GroundProgram scholarship() {
    std::ifstream     in(ELPQ_DATA_DIR "/scholarship.elp");
    std::stringstream ss;
    ss << in.rdbuf();
    return ground(parse_program(ss.str()));
}

EpistemicGuess guess(const GroundProgram& g, std::initializer_list<std::pair<const char*, bool>> in) {
    EpistemicGuess out{inner_literals(g), {}};
    out.inI.assign(out.inner.size(), false);
    for (auto [lit, value] : in) {
        bool        neg  = lit[0] == '-';
        std::string name = neg ? lit + 1 : lit;
        auto        id   = g.table().id(Atom{name});
        out.inI[static_cast<std::size_t>(std::find(out.inner.begin(), out.inner.end(), GroundLiteral{id, !neg}) - out.inner.begin())] = value;
    }
    return out;
}

std::string text(const GroundProgram& g) { return serialize_program(g.toProgram()); }

Interpretation interp(std::size_t n, std::initializer_list<std::size_t> bits) {
    Interpretation m(n);
    for (auto b : bits) m.set(b);
    return m;
}

} // namespace

TEST_CASE("epistemic reduct", "[elp]") {
    auto v = gp("v :- knot v.");
    CHECK(text(epistemic_reduct(v, guess(v, {{"v", false}}))) == "v.\n");
    CHECK(text(epistemic_reduct(v, guess(v, {{"v", true}}))) == "v :- not v.\n");

    auto k = gp("b :- K a. a.");
    CHECK(text(epistemic_reduct(k, guess(k, {{"a", true}}))) == "a.\nb :- a.\n");
    CHECK(text(epistemic_reduct(k, guess(k, {{"a", false}}))) == "a.\n");

    auto dn = gp("b :- knot -a. a.");
    CHECK(text(epistemic_reduct(dn, guess(dn, {{"-a", true}}))) == "a.\nb :- a.\n");
    auto kn = gp("b :- K -a. a.");
    CHECK(text(epistemic_reduct(kn, guess(kn, {{"-a", true}}))) == "a.\nb :- not a.\n");
    CHECK(epistemic_reduct(kn, guess(kn, {{"-a", true}})).epistemicFree());
}

TEST_CASE("derive_wvi", "[elp]") {
    // atoms a=0, b=1, c=2
    auto w = derive_wvi({interp(3, {0}), interp(3, {0, 1})}, 3);
    CHECK(w.literals == std::vector<GroundLiteral>{{0, true}, {2, false}});
    CHECK(derive_wvi({interp(1, {})}, 1).literals == std::vector<GroundLiteral>{{0, false}});
    CHECK(derive_wvi({interp(1, {0})}, 1).literals == std::vector<GroundLiteral>{{0, true}});
    CHECK_THROWS_AS(derive_wvi({}, 1), EmptyCollection);
}

TEST_CASE("check_compatibility", "[elp]") {
    CHECK(check_compatibility(WVI{{{0, true}}}, {interp(1, {0})}, 1));
    CHECK_FALSE(check_compatibility(WVI{}, {interp(1, {0})}, 1));
    CHECK_FALSE(check_compatibility(WVI{{{0, true}}}, {}, 1));
    CHECK_FALSE(check_compatibility(WVI{{{0, false}}}, {interp(1, {0})}, 1));
    CHECK(check_compatibility(WVI{}, {interp(1, {0}), interp(1, {})}, 1));
}

TEST_CASE("world view enumeration examples", "[elp]") {
    auto ex    = scholarship();
    auto views = enumerate_world_views(ex);
    REQUIRE(views.size() == 1);
    CHECK(views[0].witnessCount == 2);
    auto lits = views[0].wvi.strings(ex.table());
    CHECK(lits.size() == 11);
    for (const char* l : {"-interview(mark)", "lowGPA(mark)", "inelig(mark)", "-elig(mark)", "interview(maya)",
                          "-interview(mia)", "highGPA(mia)", "elig(mia)", "-inelig(mia)"})
        CHECK(std::find(lits.begin(), lits.end(), l) != lits.end());

    CHECK(enumerate_world_views(gp("v :- knot v.")).empty());

    auto none = enumerate_world_views(GroundProgram{});
    REQUIRE(none.size() == 1);
    CHECK(none[0].wvi.literals.empty());
    CHECK(none[0].witnessCount == 1);

    CHECK(count_world_views(ex) == 1);
    CHECK(count_world_views(gp("a :- knot b. b :- knot a.")) == 2);
    CHECK(count_world_views(gp(":- . a.")) == 0);
}

TEST_CASE("witnesses on demand", "[elp]") {
    auto p = gp("a v b.");
    CHECK_FALSE(enumerate_world_views(p)[0].witnesses);
    ElpOptions o;
    o.keepWitnesses = true;
    auto v          = enumerate_world_views(p, o);
    REQUIRE(v[0].witnesses);
    CHECK(v[0].witnesses->size() == 2);
}

TEST_CASE("guess budget", "[elp]") {
    std::string prog;
    for (int i = 0; i != 6; ++i) prog += "a" + std::to_string(i) + " :- knot b" + std::to_string(i) + ".\n";
    ElpOptions o;
    o.guessBudget = 5;
    CHECK_THROWS_AS(enumerate_world_views(gp(prog), o), BudgetExceeded);
    o.guessBudget = 6;
    CHECK(enumerate_world_views(gp(prog), o).size() == 1);
}

TEST_CASE("solve_nonneg", "[elp]") {
    auto p = gp("a. b :- K a.");
    auto w = solve_nonneg(p);
    REQUIRE(w);
    CHECK(w->wvi.strings(p.table()) == std::vector<std::string>{"a", "b"});
    CHECK_FALSE(solve_nonneg(gp("a. :- a.")));
    auto c = gp("c :- M c.");
    REQUIRE(solve_nonneg(c));
    CHECK(solve_nonneg(c)->wvi.strings(c.table()) == std::vector<std::string>{"-c"});
    CHECK_THROWS_AS(solve_nonneg(gp("a :- not b.")), WrongFragment);
    CHECK_THROWS_AS(solve_nonneg(gp("a :- knot b.")), WrongFragment);
}

TEST_CASE("guess enumeration agrees with the 3^n oracle", "[elp][property]") {
    oracle::Rng rng(41);
    for (int i = 0; i != 300; ++i) {
        auto g = ground(oracle::random_elp(rng, 1 + rng.below(4), 5, 3));
        INFO(text(g));
        EnumerationStats stats;
        auto             views = enumerate_world_views(g, {}, &stats);
        auto             ref   = oracle::world_views(g);
        REQUIRE(views.size() == ref.size());
        CHECK(stats.duplicates == 0);
        // Same WVIs, not only the same number.
        std::vector<std::vector<int>> got;
        for (const auto& v : views) {
            std::vector<int> w(g.atomCount(), 0);
            for (const auto& l : v.wvi.literals) w[l.atom] = l.positive ? 1 : -1;
            got.push_back(w);
        }
        std::sort(got.begin(), got.end());
        std::sort(ref.begin(), ref.end());
        CHECK(got == ref);
    }
}

TEST_CASE("accepted guesses match their world view", "[elp][property]") {
    oracle::Rng rng(42);
    for (int i = 0; i != 200; ++i) {
        auto g     = ground(oracle::random_elp(rng, 4, 5, 3));
        auto inner = inner_literals(g);
        for (const auto& v : enumerate_world_views(g)) {
            EpistemicGuess guess{inner, {}};
            for (const auto& l : inner) guess.inI.push_back(v.wvi.contains(l));
            CHECK(guess.isConsistent());
            CHECK(v.wvi.isConsistent());
            auto as = answer_sets(epistemic_reduct(g, guess));
            CHECK(as.size() == v.witnessCount);
            CHECK(derive_wvi(as, g.atomCount()) == v.wvi);
        }
    }
}

TEST_CASE("epistemic-free programs", "[elp][property]") {
    oracle::Rng rng(43);
    for (int i = 0; i != 200; ++i) {
        auto g     = ground(oracle::random_asp(rng, 5, 6, true));
        auto as    = answer_sets(g);
        auto views = enumerate_world_views(g);
        CHECK(views.size() == (as.empty() ? 0U : 1U));
        if (!as.empty()) CHECK(views[0].wvi == derive_wvi(as, g.atomCount()));
    }
}

TEST_CASE("count invariant under atom renaming", "[elp][property]") {
    oracle::Rng rng(44);
    for (int i = 0; i != 150; ++i) {
        auto p = oracle::random_elp(rng, 4, 5, 3);
        // Reverse the naming so that the atom order, and with it every id, changes.
        auto renamed = p;
        for (auto& r : renamed.rules) {
            auto flip = [](Atom& a) { a.predicate = "z" + std::string(1, static_cast<char>('9' - (a.predicate[1] - '0'))); };
            for (auto& a : r.head) flip(a);
            for (auto& a : r.bodyPos) flip(a);
            for (auto& a : r.bodyNeg) flip(a);
            for (auto& e : r.bodyEpi) flip(e.inner.atom);
            r.normalize();
        }
        CHECK(count_world_views(ground(p)) == count_world_views(ground(renamed)));
    }
}

TEST_CASE("solve_nonneg agrees with enumeration", "[elp][property]") {
    oracle::Rng rng(45);
    for (int i = 0; i != 150; ++i) {
        auto g = ground(oracle::random_nonneg(rng, 8, 8, 6));
        INFO(text(g));
        auto fast  = solve_nonneg(g);
        auto views = enumerate_world_views(g);
        CHECK(fast.has_value() == !views.empty());
        if (fast)
            CHECK(std::any_of(views.begin(), views.end(), [&](const WorldView& v) { return v.wvi == fast->wvi; }));
    }
}

TEST_CASE("results do not depend on the number of jobs", "[elp][concurrency]") {
    oracle::Rng rng(46);
    for (int i = 0; i != 60; ++i) {
        auto       g = ground(oracle::random_elp(rng, 4, 5, 3));
        ElpOptions one, many;
        many.jobs = 3;
        auto a    = enumerate_world_views(g, one);
        auto b    = enumerate_world_views(g, many);
        REQUIRE(a.size() == b.size());
        for (std::size_t j = 0; j != a.size(); ++j) {
            CHECK(a[j].wvi == b[j].wvi);
            CHECK(a[j].witnessCount == b[j].witnessCount);
        }
    }
}
