#include <elpq/elp.hpp>

#include <elpq/error.hpp>

#include <algorithm>
#include <exception>
#include <numeric>
#include <set>
#include <thread>

namespace elpq {

bool WVI::contains(GroundLiteral l) const { return std::binary_search(literals.begin(), literals.end(), l); }

bool WVI::isConsistent() const {
    for (std::size_t i = 1; i < literals.size(); ++i)
        if (literals[i].atom == literals[i - 1].atom) return false;
    return true;
}

std::vector<std::string> WVI::strings(const AtomTable& table) const {
    std::vector<std::string> out;
    out.reserve(literals.size());
    for (const auto& l : literals) out.push_back((l.positive ? "" : "-") + table.atom(l.atom).str());
    std::sort(out.begin(), out.end());
    return out;
}

std::string WVI::str(const AtomTable& table) const {
    std::string out = "{";
    const char* sep = "";
    for (const auto& s : strings(table)) {
        out += sep;
        out += s;
        sep = ", ";
    }
    return out + "}";
}

bool EpistemicGuess::isConsistent() const {
    for (std::size_t i = 0; i != inner.size(); ++i) {
        if (!inI[i] || !inner[i].positive) continue;
        auto it = std::lower_bound(inner.begin(), inner.end(), inner[i].negated());
        if (it != inner.end() && *it == inner[i].negated() && inI[static_cast<std::size_t>(it - inner.begin())]) return false;
    }
    return true;
}

bool EpistemicGuess::valueOf(GroundLiteral l) const {
    auto it = std::lower_bound(inner.begin(), inner.end(), l);
    if (it == inner.end() || *it != l) throw std::out_of_range("literal not part of the guess");
    return inI[static_cast<std::size_t>(it - inner.begin())];
}

std::vector<GroundLiteral> inner_literals(const GroundProgram& program) {
    std::set<GroundLiteral> out;
    for (const auto& r : program.rules())
        for (const auto& e : r.epi) out.insert({e.atom, e.innerPositive});
    return {out.begin(), out.end()};
}

GroundProgram epistemic_reduct(const GroundProgram& program, const EpistemicGuess& guess) {
    std::vector<GroundRule> out;
    out.reserve(program.rules().size());
    for (const auto& r : program.rules()) {
        GroundRule red{r.head, r.pos, r.neg, {}};
        bool       deleted = false;
        for (const auto& e : r.epi) {
            bool in = guess.valueOf({e.atom, e.innerPositive});
            if (!e.negatedOperator) {
                // knot l  ->  not l  |  top
                if (!in) continue;
                (e.innerPositive ? red.neg : red.pos).push_back(e.atom);
            } else {
                // not knot l  ->  l  |  bottom
                if (!in) {
                    deleted = true;
                    break;
                }
                (e.innerPositive ? red.pos : red.neg).push_back(e.atom);
            }
        }
        if (deleted) continue;
        for (auto* v : {&red.pos, &red.neg}) {
            std::sort(v->begin(), v->end());
            v->erase(std::unique(v->begin(), v->end()), v->end());
        }
        out.push_back(std::move(red));
    }
    return program.withRules(std::move(out));
}

namespace {
std::vector<AtomId> allAtoms(std::size_t n) {
    std::vector<AtomId> ids(n);
    std::iota(ids.begin(), ids.end(), AtomId{0});
    return ids;
}
} // namespace

WVI derive_wvi(const std::vector<Interpretation>& answerSets, const std::vector<AtomId>& atoms) {
    if (answerSets.empty()) throw EmptyCollection();
    WVI out;
    for (auto a : atoms) {
        bool all = true, none = true;
        for (const auto& m : answerSets) {
            bool in = a < m.size() && m.test(a);
            all     = all && in;
            none    = none && !in;
        }
        if (all) out.literals.push_back({a, true});
        else if (none) out.literals.push_back({a, false});
    }
    std::sort(out.literals.begin(), out.literals.end());
    return out;
}

WVI derive_wvi(const std::vector<Interpretation>& answerSets, std::size_t atomCount) {
    return derive_wvi(answerSets, allAtoms(atomCount));
}

bool check_compatibility(const WVI& wvi, const std::vector<Interpretation>& answerSets, const std::vector<AtomId>& atoms) {
    if (answerSets.empty()) return false; // (i)
    auto in = [](const Interpretation& m, AtomId a) { return a < m.size() && m.test(a); };
    for (auto a : atoms) {
        bool pos = wvi.contains({a, true}), neg = wvi.contains({a, false});
        if (pos && neg) return false;
        if (pos && !std::all_of(answerSets.begin(), answerSets.end(), [&](const auto& m) { return in(m, a); })) return false; // (ii)
        if (neg && std::any_of(answerSets.begin(), answerSets.end(), [&](const auto& m) { return in(m, a); })) return false;  // (iii)
        if (!pos && !neg) {                                                                                                  // (iv)
            bool some = std::any_of(answerSets.begin(), answerSets.end(), [&](const auto& m) { return in(m, a); });
            bool miss = std::any_of(answerSets.begin(), answerSets.end(), [&](const auto& m) { return !in(m, a); });
            if (!some || !miss) return false;
        }
    }
    return true;
}

bool check_compatibility(const WVI& wvi, const std::vector<Interpretation>& answerSets, std::size_t atomCount) {
    return check_compatibility(wvi, answerSets, allAtoms(atomCount));
}

namespace {

struct GuessOutcome {
    std::uint64_t mask;
    WorldView     view;
};

std::optional<WorldView> evaluateGuess(const GroundProgram& program, const EpistemicGuess& guess, const ElpOptions& options) {
    auto reduct = epistemic_reduct(program, guess);

    // Literals guessed in I must hold in every answer set; reject early otherwise.
    std::vector<GroundLiteral> required;
    for (std::size_t i = 0; i != guess.inner.size(); ++i)
        if (guess.inI[i]) required.push_back(guess.inner[i]);

    std::vector<Interpretation> answerSets;
    bool                        rejected = false;
    enumerate_answer_sets(
        reduct,
        [&](const Interpretation& m) {
            for (const auto& l : required)
                if (m.test(l.atom) != l.positive) return !(rejected = true);
            answerSets.push_back(m);
            return true;
        },
        options.asp);
    if (rejected || answerSets.empty()) return std::nullopt;

    WVI wvi = derive_wvi(answerSets, program.atomCount());
    for (std::size_t i = 0; i != guess.inner.size(); ++i)
        if (wvi.contains(guess.inner[i]) != guess.inI[i]) return std::nullopt;
    if (!check_compatibility(wvi, answerSets, program.atomCount())) return std::nullopt;

    std::sort(answerSets.begin(), answerSets.end());
    WorldView view{std::move(wvi), answerSets.size(), std::nullopt};
    if (options.keepWitnesses) view.witnesses = std::move(answerSets);
    return view;
}

void runRange(const GroundProgram& program, const std::vector<GroundLiteral>& inner, const ElpOptions& options,
              std::uint64_t begin, std::uint64_t end, std::vector<GuessOutcome>& out, std::size_t& guesses) {
    EpistemicGuess guess{inner, std::vector<bool>(inner.size())};
    for (std::uint64_t mask = begin; mask != end; ++mask) {
        for (std::size_t i = 0; i != inner.size(); ++i) guess.inI[i] = (mask >> i) & 1U;
        if (!guess.isConsistent()) continue;
        ++guesses;
        if (auto view = evaluateGuess(program, guess, options)) out.push_back({mask, std::move(*view)});
    }
}

} // namespace

std::vector<WorldView> enumerate_world_views(const GroundProgram& program, const ElpOptions& options, EnumerationStats* stats) {
    const auto inner = inner_literals(program);
    if (inner.size() > options.guessBudget || inner.size() >= 63)
        throw BudgetExceeded(std::to_string(inner.size()) + " epistemic inner literals, guess budget is " +
                             std::to_string(options.guessBudget));
    const std::uint64_t total = std::uint64_t{1} << inner.size();

    const unsigned jobs = std::max(1U, std::min<unsigned>(options.jobs, static_cast<unsigned>(std::min<std::uint64_t>(total, 64))));
    std::vector<std::vector<GuessOutcome>> parts(jobs);
    std::vector<std::size_t>               guesses(jobs, 0);
    if (jobs == 1) {
        runRange(program, inner, options, 0, total, parts[0], guesses[0]);
    } else {
        std::vector<std::exception_ptr> errors(jobs);
        std::vector<std::thread>        workers;
        for (unsigned j = 0; j != jobs; ++j) {
            std::uint64_t b = total * j / jobs, e = total * (j + 1) / jobs;
            workers.emplace_back([&, j, b, e] {
                try {
                    runRange(program, inner, options, b, e, parts[j], guesses[j]);
                } catch (...) {
                    errors[j] = std::current_exception();
                }
            });
        }
        for (auto& w : workers) w.join();
        for (auto& err : errors)
            if (err) std::rethrow_exception(err);
    }

    EnumerationStats local;
    std::vector<WorldView> views;
    std::set<WVI>          seen;
    for (std::size_t j = 0; j != parts.size(); ++j) {
        local.guesses += guesses[j];
        for (auto& o : parts[j]) {
            ++local.accepted;
            if (!seen.insert(o.view.wvi).second) {
                ++local.duplicates;
                continue;
            }
            views.push_back(std::move(o.view));
        }
    }
    std::sort(views.begin(), views.end(), [](const WorldView& a, const WorldView& b) { return a.wvi < b.wvi; });
    if (stats) *stats = local;
    return views;
}

Count count_world_views(const GroundProgram& program, const ElpOptions& options) {
    return Count(enumerate_world_views(program, options).size());
}

std::optional<WorldView> solve_nonneg(const GroundProgram& program, LeastModelResult* details) {
    if (!is_nonneg_syntax(program.toProgram())) throw WrongFragment("program is not in the NonNeg fragment");
    std::vector<GroundRule> horn;
    horn.reserve(program.rules().size());
    for (const auto& r : program.rules()) {
        GroundRule h{r.head, r.pos, {}, {}};
        for (const auto& e : r.epi) h.pos.push_back(e.atom);
        std::sort(h.pos.begin(), h.pos.end());
        h.pos.erase(std::unique(h.pos.begin(), h.pos.end()), h.pos.end());
        horn.push_back(std::move(h));
    }
    auto res = compute_least_model(program.withRules(std::move(horn)));
    if (details) *details = res;
    if (res.constraintViolated) return std::nullopt;
    std::vector<Interpretation> family{res.model};
    return WorldView{derive_wvi(family, program.atomCount()), 1, std::nullopt};
}

} // namespace elpq
