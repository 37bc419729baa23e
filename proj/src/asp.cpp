#include <elpq/asp.hpp>

#include <elpq/error.hpp>

#include <algorithm>
#include <cstdint>

namespace elpq {

Interpretation make_interpretation(const GroundProgram& program, const std::vector<AtomId>& atoms) {
    Interpretation m(program.atomCount());
    for (auto a : atoms) m.set(a);
    return m;
}

std::string to_string(const Interpretation& m, const AtomTable& table) {
    std::string out = "{";
    const char* sep = "";
    for (auto i = m.find_first(); i != Interpretation::npos; i = m.find_next(i)) {
        out += sep;
        out += table.atom(static_cast<AtomId>(i)).str();
        sep = ", ";
    }
    return out + "}";
}

bool satisfies(const Interpretation& m, const GroundRule& r) {
    if (!r.epi.empty()) throw EpistemicPresent();
    for (auto a : r.head)
        if (m.test(a)) return true;
    for (auto a : r.neg)
        if (m.test(a)) return true;
    for (auto a : r.pos)
        if (!m.test(a)) return true;
    return false;
}

bool is_model(const GroundProgram& program, const Interpretation& m) {
    return std::all_of(program.rules().begin(), program.rules().end(), [&](const GroundRule& r) { return satisfies(m, r); });
}

GroundProgram gl_reduct(const GroundProgram& program, const Interpretation& m) {
    std::vector<GroundRule> out;
    for (const auto& r : program.rules()) {
        if (!r.epi.empty()) throw EpistemicPresent();
        if (std::any_of(r.neg.begin(), r.neg.end(), [&](AtomId a) { return m.test(a); })) continue;
        out.push_back({r.head, r.pos, {}, {}});
    }
    return program.withRules(std::move(out));
}

LeastModelResult compute_least_model(const GroundProgram& program) {
    for (const auto& r : program.rules()) {
        if (!r.epi.empty()) throw EpistemicPresent();
        if (!r.neg.empty() || r.head.size() > 1) throw WrongFragment("least model requires a positive program without disjunction");
    }
    LeastModelResult res{Interpretation(program.atomCount())};
    auto bodyHolds = [&](const GroundRule& r) {
        return std::all_of(r.pos.begin(), r.pos.end(), [&](AtomId a) { return res.model.test(a); });
    };
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& r : program.rules()) {
            ++res.steps;
            if (r.head.empty() || res.model.test(r.head.front()) || !bodyHolds(r)) continue;
            res.model.set(r.head.front());
            changed = true;
        }
    }
    res.constraintViolated = std::any_of(program.rules().begin(), program.rules().end(),
                                         [&](const GroundRule& r) { return r.head.empty() && bodyHolds(r); });
    return res;
}

Interpretation least_model(const GroundProgram& program) {
    auto res = compute_least_model(program);
    if (res.constraintViolated) throw ConstraintViolated();
    return std::move(res.model);
}

namespace {

// ---------------------------------------------------------------------------
// Small DPLL used for the minimality check of disjunctive reducts.
// Literal encoding: +v+1 / -(v+1).
// ---------------------------------------------------------------------------
class ClauseSolver {
public:
    explicit ClauseSolver(std::size_t vars) : val_(vars, -1) {}

    void addClause(std::vector<int> c) { clauses_.push_back(std::move(c)); }

    bool solve() { return search(); }

private:
    int  value(int lit) const {
        int v = val_[static_cast<std::size_t>(std::abs(lit) - 1)];
        if (v < 0) return -1;
        return (lit > 0) == (v == 1) ? 1 : 0;
    }
    void assign(int lit, std::vector<std::size_t>& trail) {
        auto var  = static_cast<std::size_t>(std::abs(lit) - 1);
        val_[var] = lit > 0 ? 1 : 0;
        trail.push_back(var);
    }
    bool propagate(std::vector<std::size_t>& trail) {
        for (bool changed = true; changed;) {
            changed = false;
            for (const auto& c : clauses_) {
                int unassigned = 0, last = 0;
                bool sat       = false;
                for (int lit : c) {
                    int v = value(lit);
                    if (v == 1) {
                        sat = true;
                        break;
                    }
                    if (v < 0) {
                        ++unassigned;
                        last = lit;
                    }
                }
                if (sat) continue;
                if (unassigned == 0) return false;
                if (unassigned == 1) {
                    assign(last, trail);
                    changed = true;
                }
            }
        }
        return true;
    }
    bool search() {
        std::vector<std::size_t> trail;
        auto undo = [&] {
            for (auto v : trail) val_[v] = -1;
        };
        if (!propagate(trail)) {
            undo();
            return false;
        }
        auto it = std::find(val_.begin(), val_.end(), -1);
        if (it == val_.end()) return true;
        int var = static_cast<int>(it - val_.begin()) + 1;
        for (int lit : {-var, var}) {
            std::vector<std::size_t> branch;
            assign(lit, branch);
            if (search()) return true;
            for (auto v : branch) val_[v] = -1;
        }
        undo();
        return false;
    }

    std::vector<std::vector<int>> clauses_;
    std::vector<int>              val_;
};

/// True iff some N strictly inside M is a model of the reduct P^M.
bool hasSmallerModel(const GroundProgram& program, const Interpretation& m) {
    std::vector<AtomId> members;
    std::vector<int>    var(program.atomCount(), 0);
    for (auto i = m.find_first(); i != Interpretation::npos; i = m.find_next(i)) {
        var[i] = static_cast<int>(members.size()) + 1;
        members.push_back(static_cast<AtomId>(i));
    }
    if (members.empty()) return false;
    ClauseSolver solver(members.size());
    for (const auto& r : program.rules()) {
        if (std::any_of(r.neg.begin(), r.neg.end(), [&](AtomId a) { return m.test(a); })) continue;
        if (std::any_of(r.pos.begin(), r.pos.end(), [&](AtomId a) { return !m.test(a); })) continue;
        std::vector<int> clause;
        for (auto a : r.head)
            if (m.test(a)) clause.push_back(var[a]);
        for (auto a : r.pos) clause.push_back(-var[a]);
        solver.addClause(std::move(clause));
    }
    std::vector<int> someFalse;
    for (std::size_t i = 0; i != members.size(); ++i) someFalse.push_back(-static_cast<int>(i + 1));
    solver.addClause(std::move(someFalse));
    return solver.solve();
}

bool isStable(const GroundProgram& program, const Interpretation& m, bool normal) {
    if (!is_model(program, m)) return false;
    if (normal) {
        auto reduct = gl_reduct(program, m);
        std::vector<GroundRule> definite;
        for (const auto& r : reduct.rules())
            if (!r.head.empty()) definite.push_back(r);
        return compute_least_model(reduct.withRules(std::move(definite))).model == m;
    }
    return !hasSmallerModel(program, m);
}

// ---------------------------------------------------------------------------
// Backtracking search over supported models.
// ---------------------------------------------------------------------------
class AnswerSetSearch {
public:
    AnswerSetSearch(const GroundProgram& program, const AnswerSetSink& sink)
        : program_(program), sink_(sink), n_(program.atomCount()), val_(n_, kUnknown), headOf_(n_), occursIn_(n_),
          normal_(program.isNormal()) {
        const auto& rules = program.rules();
        for (std::size_t i = 0; i != rules.size(); ++i) {
            for (auto a : rules[i].head) headOf_[a].push_back(i);
            for (const auto* part : {&rules[i].head, &rules[i].pos, &rules[i].neg})
                for (auto a : *part) occursIn_[a].push_back(i);
        }
        for (auto& v : occursIn_) v.erase(std::unique(v.begin(), v.end()), v.end());
        queued_.assign(rules.size(), false);
    }

    void run() {
        for (AtomId a = 0; a != n_; ++a)
            if (headOf_[a].empty()) assign(a, kFalse);
        for (std::size_t i = 0; i != program_.rules().size(); ++i) enqueue(i);
        if (!propagate()) return;
        search();
    }

private:
    static constexpr std::int8_t kUnknown = -1, kFalse = 0, kTrue = 1;

    void assign(AtomId a, std::int8_t v) {
        val_[a] = v;
        trail_.push_back(a);
        for (auto r : occursIn_[a]) enqueue(r);
    }
    void enqueue(std::size_t r) {
        if (!queued_[r]) {
            queued_[r] = true;
            queue_.push_back(r);
        }
    }
    void clearQueue() {
        for (auto r : queue_) queued_[r] = false;
        queue_.clear();
    }
    void undoTo(std::size_t size) {
        while (trail_.size() > size) {
            val_[trail_.back()] = kUnknown;
            trail_.pop_back();
        }
    }

    // Rule r cannot support head atom `a` under the current partial assignment.
    bool blockedFor(const GroundRule& r, AtomId a) const {
        for (auto b : r.pos)
            if (val_[b] == kFalse) return true;
        for (auto b : r.neg)
            if (val_[b] == kTrue) return true;
        for (auto h : r.head)
            if (h != a && val_[h] == kTrue) return true;
        return false;
    }

    bool checkClause(const GroundRule& r) {
        // H v -B+ v B-
        int    unassigned = 0;
        AtomId last       = 0;
        std::int8_t want  = kTrue;
        for (auto h : r.head) {
            if (val_[h] == kTrue) return true;
            if (val_[h] == kUnknown) ++unassigned, last = h, want = kTrue;
        }
        for (auto b : r.pos) {
            if (val_[b] == kFalse) return true;
            if (val_[b] == kUnknown) ++unassigned, last = b, want = kFalse;
        }
        for (auto b : r.neg) {
            if (val_[b] == kTrue) return true;
            if (val_[b] == kUnknown) ++unassigned, last = b, want = kTrue;
        }
        if (unassigned == 0) return false;
        if (unassigned == 1) assign(last, want);
        return true;
    }

    bool checkSupport(AtomId a) {
        if (val_[a] == kFalse) return true;
        const GroundRule* only  = nullptr;
        std::size_t       count = 0;
        for (auto ri : headOf_[a]) {
            const auto& r = program_.rules()[ri];
            if (blockedFor(r, a)) continue;
            only = &r;
            if (++count > 1) break;
        }
        if (count == 0) {
            if (val_[a] == kTrue) return false;
            assign(a, kFalse);
            return true;
        }
        if (count == 1 && val_[a] == kTrue) {
            for (auto b : only->pos)
                if (val_[b] == kUnknown) assign(b, kTrue);
            for (auto b : only->neg)
                if (val_[b] == kUnknown) assign(b, kFalse);
            for (auto h : only->head)
                if (h != a && val_[h] == kUnknown) assign(h, kFalse);
        }
        return true;
    }

    bool propagate() {
        while (!queue_.empty()) {
            auto ri = queue_.back();
            queue_.pop_back();
            queued_[ri] = false;
            const auto& r = program_.rules()[ri];
            if (!checkClause(r)) return clearQueue(), false;
            for (auto h : r.head)
                if (!checkSupport(h)) return clearQueue(), false;
        }
        return true;
    }

    void search() {
        if (stop_) return;
        auto it = std::find(val_.begin(), val_.end(), kUnknown);
        if (it == val_.end()) {
            Interpretation m(n_);
            for (AtomId a = 0; a != n_; ++a)
                if (val_[a] == kTrue) m.set(a);
            if (isStable(program_, m, normal_) && !sink_(m)) stop_ = true;
            return;
        }
        auto atom = static_cast<AtomId>(it - val_.begin());
        auto mark = trail_.size();
        for (auto v : {kFalse, kTrue}) {
            assign(atom, v);
            if (propagate()) search();
            undoTo(mark);
            if (stop_) return;
        }
    }

    const GroundProgram&                  program_;
    const AnswerSetSink&                  sink_;
    std::size_t                           n_;
    std::vector<std::int8_t>              val_;
    std::vector<std::vector<std::size_t>> headOf_;
    std::vector<std::vector<std::size_t>> occursIn_;
    std::vector<AtomId>                   trail_;
    std::vector<std::size_t>              queue_;
    std::vector<bool>                     queued_;
    bool                                  normal_;
    bool                                  stop_ = false;
};

} // namespace

bool is_answer_set(const GroundProgram& program, const Interpretation& m) {
    if (!program.epistemicFree()) throw EpistemicPresent();
    return isStable(program, m, program.isNormal());
}

void enumerate_answer_sets(const GroundProgram& program, const AnswerSetSink& sink, const AspOptions& options) {
    if (!program.epistemicFree()) throw EpistemicPresent();
    if (program.atomCount() > options.atomBudget)
        throw BudgetExceeded("answer-set search over " + std::to_string(program.atomCount()) + " atoms, budget is " +
                             std::to_string(options.atomBudget));
    AnswerSetSearch(program, sink).run();
}

std::vector<Interpretation> answer_sets(const GroundProgram& program, const AspOptions& options) {
    std::vector<Interpretation> out;
    enumerate_answer_sets(program, [&](const Interpretation& m) { return out.push_back(m), true; }, options);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Interpretation> answer_sets_bruteforce(const GroundProgram& program, std::size_t atomBudget) {
    if (!program.epistemicFree()) throw EpistemicPresent();
    const std::size_t n = program.atomCount();
    if (n > atomBudget)
        throw BudgetExceeded("brute-force enumeration over " + std::to_string(n) + " atoms, budget is " + std::to_string(atomBudget));
    auto fromMask = [n](std::uint64_t mask) {
        Interpretation m(n);
        for (std::size_t i = 0; i != n; ++i)
            if (mask >> i & 1U) m.set(i);
        return m;
    };
    std::vector<Interpretation> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        auto m      = fromMask(mask);
        auto reduct = gl_reduct(program, m);
        if (!is_model(reduct, m)) continue;
        bool minimal = true;
        // proper submasks of mask
        for (std::uint64_t sub = (mask - 1) & mask; minimal && sub != mask; sub = (sub - 1) & mask) {
            if (is_model(reduct, fromMask(sub))) minimal = false;
            if (sub == 0) break;
        }
        if (minimal) out.push_back(std::move(m));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace elpq
