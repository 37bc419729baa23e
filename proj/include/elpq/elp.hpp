#pragma once

#include <elpq/asp.hpp>
#include <elpq/grounder.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace elpq {

using Count = boost::multiprecision::cpp_int;

struct GroundLiteral {
    AtomId atom     = 0;
    bool   positive = true;

    GroundLiteral negated() const { return {atom, !positive}; }

    friend auto operator<=>(const GroundLiteral&, const GroundLiteral&) = default;
    friend bool operator==(const GroundLiteral&, const GroundLiteral&)  = default;
};

/// World-view interpretation: a consistent set of ground literals, sorted by
/// atom id. Atoms without a literal are the "possible" ones.
struct WVI {
    std::vector<GroundLiteral> literals;

    bool contains(GroundLiteral l) const;
    bool isConsistent() const;
    /// Literal strings in lexicographic order, e.g. "-elig(mark)".
    std::vector<std::string> strings(const AtomTable& table) const;
    std::string              str(const AtomTable& table) const;

    friend auto operator<=>(const WVI&, const WVI&) = default;
    friend bool operator==(const WVI&, const WVI&)  = default;
};

/// Decision per distinct inner literal of the program: true = in I.
struct EpistemicGuess {
    std::vector<GroundLiteral> inner;
    std::vector<bool>          inI;

    bool isConsistent() const;
    bool valueOf(GroundLiteral l) const;
};

struct WorldView {
    WVI                                        wvi;
    std::size_t                                witnessCount = 0;
    std::optional<std::vector<Interpretation>> witnesses;
};

struct ElpOptions {
    AspOptions  asp;
    /// Maximum number of distinct inner literals (the guess space is 2^m).
    std::size_t guessBudget    = 20;
    bool        keepWitnesses  = false;
    unsigned    jobs           = 1;
};

struct EnumerationStats {
    std::size_t guesses     = 0; // consistent guesses examined
    std::size_t accepted    = 0;
    std::size_t duplicates  = 0; // accepted guesses mapping to an already seen WVI
};

/// Distinct inner literals of all epistemic elements, sorted.
std::vector<GroundLiteral> inner_literals(const GroundProgram& program);

/// Replaces `knot l` by the default negation of l if l is guessed in I (with
/// double negation cancelling) and drops it otherwise; `K l` becomes l when l
/// is in I, otherwise the rule is deleted. The result is epistemic-free.
GroundProgram epistemic_reduct(const GroundProgram& program, const EpistemicGuess& guess);

/// a in I iff a is in every answer set, -a in I iff a is in none.
/// Throws EmptyCollection.
WVI derive_wvi(const std::vector<Interpretation>& answerSets, const std::vector<AtomId>& atoms);
WVI derive_wvi(const std::vector<Interpretation>& answerSets, std::size_t atomCount);

/// Conditions (i)-(iv) of compatibility of I with a set of interpretations.
bool check_compatibility(const WVI& wvi, const std::vector<Interpretation>& answerSets, const std::vector<AtomId>& atoms);
bool check_compatibility(const WVI& wvi, const std::vector<Interpretation>& answerSets, std::size_t atomCount);

/// Candidate world views via the 2^m guesses over inner literals, sorted by WVI.
/// Throws BudgetExceeded.
std::vector<WorldView> enumerate_world_views(const GroundProgram& program, const ElpOptions& options = {},
                                             EnumerationStats* stats = nullptr);

Count count_world_views(const GroundProgram& program, const ElpOptions& options = {});

/// Least-model procedure for the NonNeg fragment: K a and M a are replaced by
/// a. Returns the world view derived from the least model, or nullopt when a
/// constraint fires. Throws WrongFragment for programs outside the fragment.
std::optional<WorldView> solve_nonneg(const GroundProgram& program, LeastModelResult* details = nullptr);

} // namespace elpq
