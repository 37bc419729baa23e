#pragma once

#include <elpq/elp.hpp>
#include <elpq/model.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace elpq {

struct QbfLiteral {
    std::string var;
    bool        positive = true;

    friend auto operator<=>(const QbfLiteral&, const QbfLiteral&) = default;
    friend bool operator==(const QbfLiteral&, const QbfLiteral&)  = default;
};

using Clause = std::vector<QbfLiteral>;
/// Conjunction of clauses. The empty CNF is true; empty clauses are rejected.
using Cnf = std::vector<Clause>;

/// Counts assignments over X such that  (exists Y. phi) and not (exists Z. psi).
/// phi ranges over X u Y, psi over X u Z.
struct DiffQbf1 {
    std::vector<std::string> X, Y, Z;
    Cnf                      phi, psi;

    friend bool operator==(const DiffQbf1&, const DiffQbf1&) = default;
};

/// Counts assignments over X such that
///   (exists Y forall Z exists Q. phi) and not (exists U forall V exists W. psi)
/// with phi over X u Y u Z u Q and psi over X u U u V u W, clauses of width <= 3.
struct DiffQbf3 {
    std::vector<std::string> X, Y, Z, Q, U, V, W;
    Cnf                      phi, psi;

    friend bool operator==(const DiffQbf3&, const DiffQbf3&) = default;
};

/// Throws VariableOverlap, InvalidInstance (bad names, empty clauses,
/// undeclared variables) and, for DiffQbf3, ClauseWidthExceeded.
void validate(const DiffQbf1& inst);
void validate(const DiffQbf3& inst);

/// Text format:
///   blocks X: x1 x2 ; Y: y1 ; Z: ;
///   phi:
///   x1 -y1
///   psi:
///   -x2
/// One clause per line, `%` starts a comment. Missing blocks are empty.
DiffQbf1    parse_diff_qbf1(std::string_view text);
DiffQbf3    parse_diff_qbf3(std::string_view text);
std::string serialize_instance(const DiffQbf1& inst);
std::string serialize_instance(const DiffQbf3& inst);
std::string instance_hash(const DiffQbf1& inst);
std::string instance_hash(const DiffQbf3& inst);

/// Ground tight ELP whose world views correspond one-to-one to the counted
/// assignments over X.
Program encode_tight(const DiffQbf1& inst);

/// Non-ground disjunctive ELP over the universe {0,1} with predicate arity at
/// most 3, whose world views correspond one-to-one to the counted assignments.
Program encode_disj_nonground(const DiffQbf3& inst);

inline constexpr std::uint64_t kDefaultEvalBudget = std::uint64_t{1} << 22;

/// Brute-force evaluation of the counting problem. Throws BudgetExceeded when
/// the number of assignments visited in the worst case exceeds the budget.
Count eval_diff_count(const DiffQbf1& inst, std::uint64_t budget = kDefaultEvalBudget);
Count eval_diff_count(const DiffQbf3& inst, std::uint64_t budget = kDefaultEvalBudget);

struct Qbf1Shape {
    std::size_t x = 2, y = 2, z = 2;
    std::size_t phiClauses = 3, psiClauses = 2;
    std::size_t maxWidth   = 3;
};

struct Qbf3Shape {
    std::size_t x = 1, y = 1, z = 1, q = 1, u = 1, v = 0, w = 1;
    std::size_t phiClauses = 2, psiClauses = 2;
};

/// Reproducible pseudo-random instances; equal seeds give equal instances on
/// every platform.
DiffQbf1 random_diff_qbf1(std::uint64_t seed, const Qbf1Shape& shape = {});
DiffQbf3 random_diff_qbf3(std::uint64_t seed, const Qbf3Shape& shape = {});

} // namespace elpq
