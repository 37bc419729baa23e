#pragma once

#include <elpq/grounder.hpp>

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace elpq {

/// Set of atoms, one bit per id of the program's atom table.
using Interpretation = boost::dynamic_bitset<>;

Interpretation make_interpretation(const GroundProgram& program, const std::vector<AtomId>& atoms = {});
std::string    to_string(const Interpretation& m, const AtomTable& table);

/// (H u B-) meets M, or B+ is not contained in M. Throws EpistemicPresent.
bool satisfies(const Interpretation& m, const GroundRule& rule);
bool is_model(const GroundProgram& program, const Interpretation& m);

/// {H <- B+ | B- disjoint from M}; the result is positive.
GroundProgram gl_reduct(const GroundProgram& program, const Interpretation& m);

/// M is a subset-minimal model of the GL-reduct w.r.t. M.
bool is_answer_set(const GroundProgram& program, const Interpretation& m);

struct AspOptions {
    /// Maximum number of ground atoms handed to the search.
    std::size_t atomBudget = 256;
};

/// Callback gets each answer set; returning false stops the enumeration.
using AnswerSetSink = std::function<bool(const Interpretation&)>;

/// Enumerates answer sets by a backtracking search over supported models
/// (clause and support propagation), followed by a stability check: least
/// model of the reduct for normal programs, a search for a smaller model of
/// the reduct otherwise. Order is deterministic. Throws EpistemicPresent and
/// BudgetExceeded.
void enumerate_answer_sets(const GroundProgram& program, const AnswerSetSink& sink, const AspOptions& options = {});

/// All answer sets, sorted.
std::vector<Interpretation> answer_sets(const GroundProgram& program, const AspOptions& options = {});

/// Reference implementation: every subset of the atom table is tested against
/// the definition. Exponential; capped at `atomBudget` atoms (default 24).
std::vector<Interpretation> answer_sets_bruteforce(const GroundProgram& program, std::size_t atomBudget = 24);

struct LeastModelResult {
    Interpretation model;
    bool           constraintViolated = false;
    /// Rule evaluations performed by the fixpoint iteration.
    std::size_t    steps = 0;
};

/// Least fixpoint of the immediate consequence operator of a positive program
/// with at most one head atom per rule. Constraints are checked at the end.
/// Throws WrongFragment / EpistemicPresent on other programs.
LeastModelResult compute_least_model(const GroundProgram& program);

/// As compute_least_model, but throws ConstraintViolated.
Interpretation least_model(const GroundProgram& program);

} // namespace elpq
