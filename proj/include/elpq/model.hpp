#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace elpq {

enum class TermKind : unsigned char { Constant, Variable };

struct Term {
    TermKind    kind = TermKind::Constant;
    std::string name;

    static Term constant(std::string n) { return {TermKind::Constant, std::move(n)}; }
    static Term variable(std::string n) { return {TermKind::Variable, std::move(n)}; }

    bool isVariable() const noexcept { return kind == TermKind::Variable; }

    friend auto operator<=>(const Term&, const Term&) = default;
    friend bool operator==(const Term&, const Term&)  = default;
};

struct Atom {
    std::string       predicate;
    std::vector<Term> args;

    Atom() = default;
    explicit Atom(std::string pred, std::vector<Term> a = {}) : predicate(std::move(pred)), args(std::move(a)) {}

    std::size_t arity() const noexcept { return args.size(); }
    bool        isGround() const noexcept;
    std::string str() const;

    friend auto operator<=>(const Atom&, const Atom&) = default;
    friend bool operator==(const Atom&, const Atom&)  = default;
};

/// Atom or its classical negation. Classical negation is only legal as the
/// inner literal of an epistemic element.
struct Literal {
    Atom atom;
    bool positive = true;

    Literal negated() const { return {atom, !positive}; }
    std::string str() const { return positive ? atom.str() : "-" + atom.str(); }

    friend auto operator<=>(const Literal&, const Literal&) = default;
    friend bool operator==(const Literal&, const Literal&)  = default;
};

/// Canonical epistemic body element.
///   negatedOperator == false : `knot inner`
///   negatedOperator == true  : `not knot inner`, i.e. `K inner`
/// `M l` is stored as `knot -l`.
struct EpiElement {
    Literal inner;
    bool    negatedOperator = false;

    static EpiElement knot(Literal l) { return {std::move(l), false}; }
    static EpiElement K(Literal l) { return {std::move(l), true}; }
    static EpiElement M(Literal l) { return {l.negated(), false}; }

    std::string str() const { return (negatedOperator ? "K " : "knot ") + inner.str(); }

    friend auto operator<=>(const EpiElement&, const EpiElement&) = default;
    friend bool operator==(const EpiElement&, const EpiElement&)  = default;
};

struct Rule {
    std::vector<Atom>       head;
    std::vector<Atom>       bodyPos;
    std::vector<Atom>       bodyNeg;
    std::vector<EpiElement> bodyEpi;

    /// Sorts and deduplicates every component; all constructors of rules in
    /// this library go through it.
    Rule& normalize();

    bool isFact() const noexcept { return bodyPos.empty() && bodyNeg.empty() && bodyEpi.empty(); }
    bool isConstraint() const noexcept { return head.empty(); }
    bool isNormal() const noexcept { return head.size() <= 1; }
    bool isGround() const noexcept;

    /// Variables occurring anywhere in the rule, sorted.
    std::vector<std::string> variables() const;

    /// Calls f(atom) for every atom occurrence (head, bodies, epistemic inner atoms).
    template <class F>
    void forEachAtom(F&& f) const {
        for (const auto& a : head) f(a);
        for (const auto& a : bodyPos) f(a);
        for (const auto& a : bodyNeg) f(a);
        for (const auto& e : bodyEpi) f(e.inner.atom);
    }

    friend auto operator<=>(const Rule&, const Rule&) = default;
    friend bool operator==(const Rule&, const Rule&)  = default;
};

struct Program {
    std::vector<Rule>                    rules;
    std::optional<std::set<std::string>> declaredConstants;

    Program& add(Rule r) {
        rules.push_back(std::move(r.normalize()));
        return *this;
    }

    bool isGround() const noexcept;

    /// Predicate name -> arity over all occurrences (first occurrence wins).
    std::map<std::string, std::size_t> arities() const;
    std::set<std::string>              predicates() const;
    std::size_t                        maxArity() const;

    friend bool operator==(const Program&, const Program&) = default;
};

enum class ProgramClass { NonNeg, Tight, Normal, Disj };

const char* to_string(ProgramClass c) noexcept;

/// Directed graph over atom strings (ground mode) or predicate names.
class DependencyGraph {
public:
    std::size_t addVertex(const std::string& label);
    void        addEdge(const std::string& from, const std::string& to);

    const std::vector<std::string>&                       vertices() const noexcept { return labels_; }
    const std::set<std::pair<std::size_t, std::size_t>>& edges() const noexcept { return edges_; }
    bool hasEdge(const std::string& from, const std::string& to) const;
    std::optional<std::size_t> find(const std::string& label) const;

    /// Some directed cycle (self-loops included) as a vertex sequence, or nullopt.
    std::optional<std::vector<std::size_t>> findCycle() const;
    bool hasCycle() const { return findCycle().has_value(); }

private:
    std::vector<std::string>                      labels_;
    std::map<std::string, std::size_t>            index_;
    std::set<std::pair<std::size_t, std::size_t>> edges_;
};

/// Positive dependency graph with the epistemic extension: an element
/// `knot -a` or `K a` in the body of r adds (a, b) for every head atom b.
/// ground == true requires a ground program and uses atoms as vertices;
/// otherwise predicate names are the vertices.
DependencyGraph dependency_graph(const Program& program, bool ground);

/// Surface NonNeg condition: no default negation, no disjunction, and the
/// only epistemic elements are `K a` and `M a` over atoms.
bool is_nonneg_syntax(const Program& program);

/// Most restrictive class in the chain NonNeg < Tight < Normal < Disj; a
/// cyclic program is Normal even when its syntax is NonNeg. Ground programs
/// are checked on the atom graph, others on the predicate graph.
ProgramClass classify(const Program& program);

} // namespace elpq
