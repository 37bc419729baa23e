#include <elpq/model.hpp>

#include <elpq/error.hpp>

#include <algorithm>

namespace elpq {

namespace {
template <class T>
void sortUnique(std::vector<T>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}
} // namespace

bool Atom::isGround() const noexcept {
    return std::none_of(args.begin(), args.end(), [](const Term& t) { return t.isVariable(); });
}

std::string Atom::str() const {
    std::string out = predicate;
    if (!args.empty()) {
        out += '(';
        for (std::size_t i = 0; i != args.size(); ++i) {
            if (i) out += ',';
            out += args[i].name;
        }
        out += ')';
    }
    return out;
}

Rule& Rule::normalize() {
    sortUnique(head);
    sortUnique(bodyPos);
    sortUnique(bodyNeg);
    sortUnique(bodyEpi);
    return *this;
}

bool Rule::isGround() const noexcept {
    bool ground = true;
    forEachAtom([&](const Atom& a) { ground = ground && a.isGround(); });
    return ground;
}

std::vector<std::string> Rule::variables() const {
    std::vector<std::string> vars;
    forEachAtom([&](const Atom& a) {
        for (const auto& t : a.args)
            if (t.isVariable()) vars.push_back(t.name);
    });
    sortUnique(vars);
    return vars;
}

bool Program::isGround() const noexcept {
    return std::all_of(rules.begin(), rules.end(), [](const Rule& r) { return r.isGround(); });
}

std::map<std::string, std::size_t> Program::arities() const {
    std::map<std::string, std::size_t> out;
    for (const auto& r : rules)
        r.forEachAtom([&](const Atom& a) { out.emplace(a.predicate, a.arity()); });
    return out;
}

std::set<std::string> Program::predicates() const {
    std::set<std::string> out;
    for (const auto& [p, n] : arities()) out.insert(p);
    return out;
}

std::size_t Program::maxArity() const {
    std::size_t m = 0;
    for (const auto& [p, n] : arities()) m = std::max(m, n);
    return m;
}

const char* to_string(ProgramClass c) noexcept {
    switch (c) {
        case ProgramClass::NonNeg: return "NonNeg";
        case ProgramClass::Tight: return "Tight";
        case ProgramClass::Normal: return "Normal";
        case ProgramClass::Disj: return "Disj";
    }
    return "?";
}

std::size_t DependencyGraph::addVertex(const std::string& label) {
    auto [it, inserted] = index_.emplace(label, labels_.size());
    if (inserted) labels_.push_back(label);
    return it->second;
}

void DependencyGraph::addEdge(const std::string& from, const std::string& to) {
    auto f = addVertex(from);
    auto t = addVertex(to);
    edges_.emplace(f, t);
}

std::optional<std::size_t> DependencyGraph::find(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

bool DependencyGraph::hasEdge(const std::string& from, const std::string& to) const {
    auto f = find(from), t = find(to);
    return f && t && edges_.count({*f, *t}) != 0;
}

std::optional<std::vector<std::size_t>> DependencyGraph::findCycle() const {
    const std::size_t n = labels_.size();
    std::vector<std::vector<std::size_t>> succ(n);
    for (auto [f, t] : edges_) succ[f].push_back(t);

    // iterative three-colour DFS
    enum : unsigned char { White, Grey, Black };
    std::vector<unsigned char> colour(n, White);
    std::vector<std::size_t>   parent(n, n);
    for (std::size_t root = 0; root != n; ++root) {
        if (colour[root] != White) continue;
        std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
        colour[root] = Grey;
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            if (next == succ[v].size()) {
                colour[v] = Black;
                stack.pop_back();
                continue;
            }
            std::size_t w = succ[v][next++];
            if (colour[w] == Grey) {
                std::vector<std::size_t> cycle{w};
                for (std::size_t u = v; u != w; u = parent[u]) cycle.push_back(u);
                std::reverse(cycle.begin() + 1, cycle.end());
                return cycle;
            }
            if (colour[w] == White) {
                colour[w] = Grey;
                parent[w] = v;
                stack.emplace_back(w, 0);
            }
        }
    }
    return std::nullopt;
}

DependencyGraph dependency_graph(const Program& program, bool ground) {
    if (ground && !program.isGround()) throw NonGroundError("dependency graph over atoms requires a ground program");
    auto label = [ground](const Atom& a) { return ground ? a.str() : a.predicate; };
    DependencyGraph g;
    for (const auto& r : program.rules) {
        for (const auto& h : r.head) g.addVertex(label(h));
        for (const auto& b : r.bodyPos) g.addVertex(label(b));
        for (const auto& h : r.head) {
            for (const auto& b : r.bodyPos) g.addEdge(label(b), label(h));
            for (const auto& e : r.bodyEpi) {
                // `knot -a` (= M a) and `not knot a` (= K a)
                bool edge = e.negatedOperator ? e.inner.positive : !e.inner.positive;
                if (edge) g.addEdge(label(e.inner.atom), label(h));
            }
        }
    }
    return g;
}

bool is_nonneg_syntax(const Program& program) {
    for (const auto& r : program.rules) {
        if (r.head.size() > 1 || !r.bodyNeg.empty()) return false;
        for (const auto& e : r.bodyEpi) {
            bool isK = e.negatedOperator && e.inner.positive;
            bool isM = !e.negatedOperator && !e.inner.positive;
            if (!isK && !isM) return false;
        }
    }
    return true;
}

ProgramClass classify(const Program& program) {
    bool normal = std::all_of(program.rules.begin(), program.rules.end(), [](const Rule& r) { return r.isNormal(); });
    if (!normal) return ProgramClass::Disj;
    if (dependency_graph(program, program.isGround()).hasCycle()) return ProgramClass::Normal;
    return is_nonneg_syntax(program) ? ProgramClass::NonNeg : ProgramClass::Tight;
}

} // namespace elpq
