#pragma once

#include <elpq/model.hpp>

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace elpq {

using AtomId = std::uint32_t;

/// Epistemic element over a ground atom; same polarity conventions as EpiElement.
struct GroundEpi {
    AtomId atom            = 0;
    bool   innerPositive   = true;
    bool   negatedOperator = false;

    friend auto operator<=>(const GroundEpi&, const GroundEpi&) = default;
    friend bool operator==(const GroundEpi&, const GroundEpi&)  = default;
};

struct GroundRule {
    std::vector<AtomId>    head;
    std::vector<AtomId>    pos;
    std::vector<AtomId>    neg;
    std::vector<GroundEpi> epi;

    bool epistemicFree() const noexcept { return epi.empty(); }

    friend auto operator<=>(const GroundRule&, const GroundRule&) = default;
    friend bool operator==(const GroundRule&, const GroundRule&)  = default;
};

/// Bijection between ground atoms and dense ids. Ids follow the atom order.
class AtomTable {
public:
    AtomTable() = default;
    explicit AtomTable(std::vector<Atom> sortedAtoms);

    std::size_t size() const noexcept { return atoms_.size(); }
    const Atom& atom(AtomId id) const { return atoms_.at(id); }
    const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    /// Throws std::out_of_range for unknown atoms.
    AtomId id(const Atom& a) const { return ids_.at(a); }
    bool   contains(const Atom& a) const { return ids_.count(a) != 0; }

private:
    std::vector<Atom>        atoms_;
    std::map<Atom, AtomId>   ids_;
};

/// Ground program over a shared atom table. Programs derived from one another
/// (epistemic reducts, GL-reducts) keep the table of the original, so
/// interpretations stay comparable across them.
class GroundProgram {
public:
    GroundProgram() : table_(std::make_shared<AtomTable>()) {}
    GroundProgram(std::shared_ptr<const AtomTable> table, std::vector<GroundRule> rules)
        : table_(std::move(table)), rules_(std::move(rules)) {}

    /// Compiles a ground Program; the table covers exactly at(P).
    static GroundProgram fromProgram(const Program& program);

    const AtomTable&                   table() const noexcept { return *table_; }
    std::shared_ptr<const AtomTable>   sharedTable() const noexcept { return table_; }
    std::size_t                        atomCount() const noexcept { return table_->size(); }
    const std::vector<GroundRule>&     rules() const noexcept { return rules_; }

    GroundProgram withRules(std::vector<GroundRule> rules) const { return {table_, std::move(rules)}; }

    Program toProgram() const;
    Rule    toRule(const GroundRule& r) const;

    bool epistemicFree() const noexcept;
    bool isNormal() const noexcept;
    bool isPositive() const noexcept;

private:
    std::shared_ptr<const AtomTable> table_;
    std::vector<GroundRule>          rules_;
};

/// Constants of the program (plus declared ones); {c0} if there are none.
std::vector<std::string> herbrand_universe(const Program& program);

inline constexpr const char* kEmptyUniverseConstant = "c0";
inline constexpr const char* kDomainPredicate       = "dom";

enum class SafetyMode {
    Standard, // vars(H u B-) within vars(B+)
    Strict    // additionally vars of epistemic elements within vars(B+)
};

/// Indices of rules violating the safety condition.
std::vector<std::size_t> check_safety(const Program& program, SafetyMode mode = SafetyMode::Strict);

/// Adds dom(c) facts for every c in the Herbrand universe and dom(X) to the
/// body of every rule for each of its variables. A program that is already
/// safe is returned unchanged unless `force` is set.
Program domain_rewrite(const Program& program, bool force = false);

/// Rejects user programs using the reserved `dom` predicate.
void reject_reserved_names(const Program& program);

struct GroundOptions {
    std::size_t ruleBudget = 1'000'000;
};

/// Full instantiation over the Herbrand universe, duplicates removed, rules in
/// canonical (sorted) order. Throws BudgetExceeded when the number of
/// instances would exceed the budget.
Program ground_rules(const Program& program, const GroundOptions& options = {});

GroundProgram ground(const Program& program, const GroundOptions& options = {});

/// Instances the naive grounder creates before deduplication.
std::size_t instantiation_count(const Program& program, std::size_t universeSize);

} // namespace elpq
