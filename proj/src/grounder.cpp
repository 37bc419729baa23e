#include <elpq/grounder.hpp>

#include <elpq/error.hpp>

#include <algorithm>
#include <limits>
#include <set>

namespace elpq {

AtomTable::AtomTable(std::vector<Atom> sortedAtoms) : atoms_(std::move(sortedAtoms)) {
    for (std::size_t i = 0; i != atoms_.size(); ++i) ids_.emplace(atoms_[i], static_cast<AtomId>(i));
}

GroundProgram GroundProgram::fromProgram(const Program& program) {
    if (!program.isGround()) throw NonGroundError("cannot compile a non-ground program");
    std::set<Atom> atoms;
    for (const auto& r : program.rules) r.forEachAtom([&](const Atom& a) { atoms.insert(a); });
    auto table = std::make_shared<AtomTable>(std::vector<Atom>(atoms.begin(), atoms.end()));

    std::vector<GroundRule> rules;
    rules.reserve(program.rules.size());
    auto ids = [&](const std::vector<Atom>& v) {
        std::vector<AtomId> out;
        out.reserve(v.size());
        for (const auto& a : v) out.push_back(table->id(a));
        std::sort(out.begin(), out.end());
        return out;
    };
    for (const auto& r : program.rules) {
        GroundRule g{ids(r.head), ids(r.bodyPos), ids(r.bodyNeg), {}};
        for (const auto& e : r.bodyEpi) g.epi.push_back({table->id(e.inner.atom), e.inner.positive, e.negatedOperator});
        std::sort(g.epi.begin(), g.epi.end());
        rules.push_back(std::move(g));
    }
    return {std::move(table), std::move(rules)};
}

Rule GroundProgram::toRule(const GroundRule& g) const {
    Rule r;
    for (auto id : g.head) r.head.push_back(table_->atom(id));
    for (auto id : g.pos) r.bodyPos.push_back(table_->atom(id));
    for (auto id : g.neg) r.bodyNeg.push_back(table_->atom(id));
    for (const auto& e : g.epi) r.bodyEpi.push_back({{table_->atom(e.atom), e.innerPositive}, e.negatedOperator});
    r.normalize();
    return r;
}

Program GroundProgram::toProgram() const {
    Program p;
    for (const auto& g : rules_) p.rules.push_back(toRule(g));
    return p;
}

bool GroundProgram::epistemicFree() const noexcept {
    return std::all_of(rules_.begin(), rules_.end(), [](const GroundRule& r) { return r.epi.empty(); });
}

bool GroundProgram::isNormal() const noexcept {
    return std::all_of(rules_.begin(), rules_.end(), [](const GroundRule& r) { return r.head.size() <= 1; });
}

bool GroundProgram::isPositive() const noexcept {
    return std::all_of(rules_.begin(), rules_.end(), [](const GroundRule& r) { return r.neg.empty(); });
}

std::vector<std::string> herbrand_universe(const Program& program) {
    std::set<std::string> hu;
    for (const auto& r : program.rules)
        r.forEachAtom([&](const Atom& a) {
            for (const auto& t : a.args)
                if (!t.isVariable()) hu.insert(t.name);
        });
    if (program.declaredConstants) hu.insert(program.declaredConstants->begin(), program.declaredConstants->end());
    if (hu.empty()) hu.insert(kEmptyUniverseConstant);
    return {hu.begin(), hu.end()};
}

namespace {

std::set<std::string> varsOf(const std::vector<Atom>& atoms) {
    std::set<std::string> out;
    for (const auto& a : atoms)
        for (const auto& t : a.args)
            if (t.isVariable()) out.insert(t.name);
    return out;
}

bool isSafe(const Rule& r, SafetyMode mode) {
    auto bound = varsOf(r.bodyPos);
    auto ok    = [&](const std::vector<Atom>& atoms) {
        for (const auto& v : varsOf(atoms))
            if (!bound.count(v)) return false;
        return true;
    };
    if (!ok(r.head) || !ok(r.bodyNeg)) return false;
    if (mode == SafetyMode::Strict) {
        std::vector<Atom> inner;
        for (const auto& e : r.bodyEpi) inner.push_back(e.inner.atom);
        if (!ok(inner)) return false;
    }
    return true;
}

std::size_t saturatingPow(std::size_t base, std::size_t exp) {
    std::size_t out = 1;
    for (std::size_t i = 0; i != exp; ++i) {
        if (base != 0 && out > std::numeric_limits<std::size_t>::max() / base) return std::numeric_limits<std::size_t>::max();
        out *= base;
    }
    return out;
}

Atom substitute(const Atom& a, const std::map<std::string, std::string>& sigma) {
    Atom out = a;
    for (auto& t : out.args)
        if (t.isVariable()) t = Term::constant(sigma.at(t.name));
    return out;
}

Rule substitute(const Rule& r, const std::map<std::string, std::string>& sigma) {
    Rule out;
    for (const auto& a : r.head) out.head.push_back(substitute(a, sigma));
    for (const auto& a : r.bodyPos) out.bodyPos.push_back(substitute(a, sigma));
    for (const auto& a : r.bodyNeg) out.bodyNeg.push_back(substitute(a, sigma));
    for (const auto& e : r.bodyEpi) out.bodyEpi.push_back({{substitute(e.inner.atom, sigma), e.inner.positive}, e.negatedOperator});
    out.normalize();
    return out;
}

} // namespace

std::vector<std::size_t> check_safety(const Program& program, SafetyMode mode) {
    std::vector<std::size_t> unsafe;
    for (std::size_t i = 0; i != program.rules.size(); ++i)
        if (!isSafe(program.rules[i], mode)) unsafe.push_back(i);
    return unsafe;
}

Program domain_rewrite(const Program& program, bool force) {
    if (!force && check_safety(program).empty()) return program;
    Program out;
    out.declaredConstants = program.declaredConstants;
    for (const auto& c : herbrand_universe(program)) out.add(Rule{{Atom{kDomainPredicate, {Term::constant(c)}}}, {}, {}, {}});
    for (const auto& r : program.rules) {
        Rule copy = r;
        for (const auto& v : r.variables()) copy.bodyPos.push_back(Atom{kDomainPredicate, {Term::variable(v)}});
        out.add(std::move(copy));
    }
    return out;
}

void reject_reserved_names(const Program& program) {
    if (program.predicates().count(kDomainPredicate))
        throw ReservedNameCollision(std::string("predicate '") + kDomainPredicate + "' is reserved");
}

std::size_t instantiation_count(const Program& program, std::size_t universeSize) {
    std::size_t total = 0;
    for (const auto& r : program.rules) {
        auto n = saturatingPow(universeSize, r.variables().size());
        total  = n > std::numeric_limits<std::size_t>::max() - total ? std::numeric_limits<std::size_t>::max() : total + n;
    }
    return total;
}

Program ground_rules(const Program& program, const GroundOptions& options) {
    const auto hu    = herbrand_universe(program);
    const auto count = instantiation_count(program, hu.size());
    if (count > options.ruleBudget)
        throw BudgetExceeded("grounding needs " + std::to_string(count) + " rule instances, budget is " +
                             std::to_string(options.ruleBudget));

    std::set<Rule> instances;
    for (const auto& r : program.rules) {
        const auto vars = r.variables();
        std::vector<std::size_t>           odometer(vars.size(), 0);
        std::map<std::string, std::string> sigma;
        for (;;) {
            for (std::size_t i = 0; i != vars.size(); ++i) sigma[vars[i]] = hu[odometer[i]];
            instances.insert(substitute(r, sigma));
            std::size_t pos = 0;
            while (pos != vars.size() && ++odometer[pos] == hu.size()) odometer[pos++] = 0;
            if (pos == vars.size()) break;
        }
    }
    Program out;
    out.rules.assign(instances.begin(), instances.end());
    return out;
}

GroundProgram ground(const Program& program, const GroundOptions& options) {
    return GroundProgram::fromProgram(ground_rules(program, options));
}

} // namespace elpq
