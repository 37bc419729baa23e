#include <elpq/treewidth.hpp>

#include <elpq/error.hpp>

#include <algorithm>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

namespace elpq {

std::optional<std::size_t> PrimalGraph::find(const std::string& label) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), label);
    if (it == vertices.end() || *it != label) return std::nullopt;
    return static_cast<std::size_t>(it - vertices.begin());
}

std::vector<std::set<std::size_t>> PrimalGraph::adjacency() const {
    std::vector<std::set<std::size_t>> adj(vertices.size());
    for (auto [a, b] : edges) {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    return adj;
}

bool PrimalGraph::hasEdge(std::size_t a, std::size_t b) const {
    return edges.count({std::min(a, b), std::max(a, b)}) != 0;
}

PrimalGraph primal_graph(const Program& program, GraphMode mode) {
    if (mode == GraphMode::Ground && !program.isGround()) throw NonGroundError("ground primal graph of a non-ground program");
    auto label = [&](const Atom& a) { return mode == GraphMode::Ground ? a.str() : a.predicate; };

    std::set<std::string> all;
    for (const auto& r : program.rules) r.forEachAtom([&](const Atom& a) { all.insert(label(a)); });
    PrimalGraph g;
    g.vertices.assign(all.begin(), all.end());
    for (const auto& r : program.rules) {
        std::set<std::size_t> ids;
        r.forEachAtom([&](const Atom& a) { ids.insert(*g.find(label(a))); });
        for (auto i = ids.begin(); i != ids.end(); ++i)
            for (auto j = std::next(i); j != ids.end(); ++j) g.edges.insert({*i, *j});
    }
    return g;
}

long TreeDecomp::width() const {
    std::size_t m = 0;
    for (const auto& b : bags) m = std::max(m, b.size());
    return static_cast<long>(m) - 1;
}

std::vector<std::vector<std::size_t>> TreeDecomp::children() const {
    std::vector<std::vector<std::size_t>> ch(bags.size());
    for (std::size_t t = 0; t != parent.size(); ++t)
        if (parent[t] != npos) ch[parent[t]].push_back(t);
    return ch;
}

std::vector<std::size_t> TreeDecomp::preorder() const {
    std::vector<std::size_t> order;
    if (bags.empty()) return order;
    auto                     ch = children();
    std::vector<std::size_t> stack{root};
    while (!stack.empty()) {
        auto t = stack.back();
        stack.pop_back();
        order.push_back(t);
        for (auto it = ch[t].rbegin(); it != ch[t].rend(); ++it) stack.push_back(*it);
    }
    return order;
}

std::vector<std::string> TreeDecomp::bagLabels(std::size_t node) const {
    std::vector<std::string> out;
    for (auto v : bags[node]) out.push_back(vertices[v]);
    return out;
}

std::string check_tree_decomposition(const PrimalGraph& g, const TreeDecomp& td) {
    const std::size_t n = td.size();
    if (n == 0) return "no nodes";
    if (td.parent.size() != n) return "parent array size mismatch";
    if (td.root >= n || td.parent[td.root] != TreeDecomp::npos) return "root has a parent";
    for (std::size_t t = 0; t != n; ++t)
        if (t != td.root && td.parent[t] >= n) return "node " + std::to_string(t) + " has no parent";
    if (td.preorder().size() != n) return "nodes not connected to the root";

    // Map graph vertices onto decomposition vertex ids.
    std::vector<std::size_t> toTd(g.vertices.size());
    for (std::size_t v = 0; v != g.vertices.size(); ++v) {
        auto it = std::find(td.vertices.begin(), td.vertices.end(), g.vertices[v]);
        if (it == td.vertices.end()) return "vertex " + g.vertices[v] + " missing";
        toTd[v] = static_cast<std::size_t>(it - td.vertices.begin());
    }
    auto inBag = [&](std::size_t t, std::size_t v) { return std::binary_search(td.bags[t].begin(), td.bags[t].end(), v); };

    for (std::size_t v = 0; v != g.vertices.size(); ++v) {
        bool covered = false;
        for (std::size_t t = 0; t != n && !covered; ++t) covered = inBag(t, toTd[v]);
        if (!covered) return "vertex " + g.vertices[v] + " in no bag";
    }
    for (auto [a, b] : g.edges) {
        bool covered = false;
        for (std::size_t t = 0; t != n && !covered; ++t) covered = inBag(t, toTd[a]) && inBag(t, toTd[b]);
        if (!covered) return "edge {" + g.vertices[a] + "," + g.vertices[b] + "} in no bag";
    }
    // Occurrences of a vertex are connected iff exactly one occurrence has a
    // parent outside the occurrence set.
    for (std::size_t v = 0; v != td.vertices.size(); ++v) {
        std::size_t tops = 0;
        for (std::size_t t = 0; t != n; ++t)
            if (inBag(t, v) && (td.parent[t] == TreeDecomp::npos || !inBag(td.parent[t], v))) ++tops;
        if (tops > 1) return "occurrences of " + td.vertices[v] + " are not connected";
    }
    return {};
}

bool is_tree_decomposition(const PrimalGraph& g, const TreeDecomp& td) { return check_tree_decomposition(g, td).empty(); }

TreeDecomp decompose(const PrimalGraph& g, Heuristic heuristic) {
    const std::size_t n = g.vertices.size();
    TreeDecomp        td;
    td.vertices = g.vertices;
    if (n == 0) {
        td.bags.push_back({});
        td.parent.push_back(TreeDecomp::npos);
        return td;
    }

    auto                     adj = g.adjacency();
    std::vector<bool>        gone(n, false);
    std::vector<std::size_t> position(n);
    std::vector<std::size_t> order;
    auto fill = [&](std::size_t v) {
        std::size_t missing = 0;
        for (auto a = adj[v].begin(); a != adj[v].end(); ++a)
            for (auto b = std::next(a); b != adj[v].end(); ++b)
                if (!adj[*a].count(*b)) ++missing;
        return missing;
    };
    for (std::size_t step = 0; step != n; ++step) {
        std::size_t best = n, bestScore = std::numeric_limits<std::size_t>::max();
        for (std::size_t v = 0; v != n; ++v) {
            if (gone[v]) continue;
            std::size_t score = heuristic == Heuristic::MinFill ? fill(v) : adj[v].size();
            if (score < bestScore) best = v, bestScore = score;
        }
        std::vector<std::size_t> bag(adj[best].begin(), adj[best].end());
        bag.push_back(best);
        std::sort(bag.begin(), bag.end());
        td.bags.push_back(std::move(bag));
        for (auto a : adj[best])
            for (auto b : adj[best])
                if (a != b) adj[a].insert(b);
        for (auto a : adj[best]) adj[a].erase(best);
        adj[best].clear();
        gone[best]     = true;
        position[best] = step;
        order.push_back(best);
    }
    // Node i belongs to order[i]; its parent is the node of the earliest
    // eliminated remaining neighbour.
    td.parent.assign(n, TreeDecomp::npos);
    td.root = n - 1;
    for (std::size_t i = 0; i != n; ++i) {
        std::size_t p = TreeDecomp::npos;
        for (auto v : td.bags[i])
            if (v != order[i] && (p == TreeDecomp::npos || position[v] < p)) p = position[v];
        td.parent[i] = p;
    }
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (td.parent[i] == TreeDecomp::npos) td.parent[i] = td.root;
    return td;
}

const char* to_string(NodeType t) noexcept {
    switch (t) {
    case NodeType::Leaf: return "leaf";
    case NodeType::Introduce: return "introduce";
    case NodeType::Remove: return "remove";
    case NodeType::Join: return "join";
    case NodeType::Other: return "other";
    }
    return "?";
}

NodeType node_type(const TreeDecomp& td, std::size_t node) {
    std::vector<std::size_t> ch;
    for (std::size_t t = 0; t != td.size(); ++t)
        if (td.parent[t] == node) ch.push_back(t);
    const auto& bag = td.bags[node];
    if (ch.empty()) return bag.empty() ? NodeType::Leaf : NodeType::Other;
    if (ch.size() == 2) return td.bags[ch[0]] == bag && td.bags[ch[1]] == bag ? NodeType::Join : NodeType::Other;
    if (ch.size() != 1) return NodeType::Other;
    const auto& c = td.bags[ch[0]];
    if (bag.size() == c.size() + 1 && std::includes(bag.begin(), bag.end(), c.begin(), c.end())) return NodeType::Introduce;
    if (c.size() == bag.size() + 1 && std::includes(c.begin(), c.end(), bag.begin(), bag.end())) return NodeType::Remove;
    return NodeType::Other;
}

bool is_nice(const TreeDecomp& td) {
    if (td.size() == 0 || !td.bags[td.root].empty()) return false;
    for (std::size_t t = 0; t != td.size(); ++t)
        if (node_type(td, t) == NodeType::Other) return false;
    return true;
}

TreeDecomp make_nice(const TreeDecomp& td) {
    TreeDecomp out;
    out.vertices = td.vertices;
    auto node = [&](std::vector<std::size_t> bag, std::vector<std::size_t> kids) {
        std::size_t id = out.bags.size();
        out.bags.push_back(std::move(bag));
        out.parent.push_back(TreeDecomp::npos);
        for (auto k : kids) out.parent[k] = id;
        return id;
    };
    // Chain of removes then introduces leading from `from` (with bag `have`) to `want`.
    auto bridge = [&](std::size_t from, std::vector<std::size_t> have, const std::vector<std::size_t>& want) {
        for (auto v : std::vector<std::size_t>(have))
            if (!std::binary_search(want.begin(), want.end(), v)) {
                have.erase(std::find(have.begin(), have.end(), v));
                from = node(have, {from});
            }
        for (auto v : want)
            if (!std::binary_search(have.begin(), have.end(), v)) {
                have.insert(std::upper_bound(have.begin(), have.end(), v), v);
                from = node(have, {from});
            }
        return from;
    };

    const auto ch = td.children();
    std::function<std::size_t(std::size_t)> build = [&](std::size_t t) -> std::size_t {
        const auto& bag = td.bags[t];
        std::vector<std::size_t> tops;
        for (auto c : ch[t]) tops.push_back(bridge(build(c), td.bags[c], bag));
        if (tops.empty()) return bridge(node({}, {}), {}, bag);
        std::size_t acc = tops[0];
        for (std::size_t i = 1; i != tops.size(); ++i) acc = node(bag, {acc, tops[i]});
        return acc;
    };
    std::size_t top = build(td.root);
    out.root        = bridge(top, td.bags[td.root], {});
    return out;
}

std::string canonical_form(const TreeDecomp& td) {
    const auto ch = td.children();
    std::function<std::string(std::size_t)> render = [&](std::size_t t) {
        std::string s = "[";
        for (auto l : td.bagLabels(t)) s += l + ",";
        s += "]";
        std::vector<std::string> kids;
        for (auto c : ch[t]) kids.push_back(render(c));
        std::sort(kids.begin(), kids.end());
        s += "(";
        for (const auto& k : kids) s += k;
        return s + ")";
    };
    return td.size() ? render(td.root) : "";
}

BagGroundResult bag_ground(const Program& program, const TreeDecomp& td, const GroundOptions& options, unsigned jobs) {
    const auto order = td.preorder();
    auto       inBag = [&](std::size_t t, const std::string& pred) {
        for (auto v : td.bags[t])
            if (td.vertices[v] == pred) return true;
        return false;
    };

    const auto            hu = herbrand_universe(program);
    std::vector<Program>  bagPrograms(td.size());
    for (auto& p : bagPrograms) p.declaredConstants = std::set<std::string>(hu.begin(), hu.end());
    std::vector<std::size_t> ruleNode;
    for (const auto& r : program.rules) {
        std::set<std::string> preds;
        r.forEachAtom([&](const Atom& a) { preds.insert(a.predicate); });
        auto it = std::find_if(order.begin(), order.end(), [&](std::size_t t) {
            return std::all_of(preds.begin(), preds.end(), [&](const std::string& p) { return inBag(t, p); });
        });
        if (it == order.end()) throw UncoveredRule("no bag covers the predicates of rule: " + std::to_string(ruleNode.size() + 1));
        ruleNode.push_back(*it);
        bagPrograms[*it].rules.push_back(r);
    }

    std::vector<Program>            groundBags(td.size());
    std::vector<std::exception_ptr> errors(std::max(1U, jobs));
    auto                            worker = [&](std::size_t w, std::size_t stride) {
        try {
            for (std::size_t t = w; t < td.size(); t += stride)
                if (!bagPrograms[t].rules.empty()) groundBags[t] = ground_rules(bagPrograms[t], options);
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (errors.size() == 1) {
        worker(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w != errors.size(); ++w) pool.emplace_back(worker, w, errors.size());
        for (auto& th : pool) th.join();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    std::set<Rule> all;
    for (const auto& g : groundBags) all.insert(g.rules.begin(), g.rules.end());
    Program grounded;
    grounded.rules.assign(all.begin(), all.end());
    auto gp = GroundProgram::fromProgram(grounded);

    TreeDecomp out;
    out.parent = td.parent;
    out.root   = td.root;
    for (const auto& a : gp.table().atoms()) out.vertices.push_back(a.str());
    out.bags.resize(td.size());
    for (std::size_t t = 0; t != td.size(); ++t)
        for (std::size_t id = 0; id != gp.atomCount(); ++id)
            if (inBag(t, gp.table().atom(static_cast<AtomId>(id)).predicate)) out.bags[t].push_back(id);
    return {std::move(gp), std::move(out), std::move(ruleNode)};
}

std::string to_pace(const TreeDecomp& td) {
    std::ostringstream os;
    os << "s td " << td.size() << ' ' << td.width() + 1 << ' ' << td.vertices.size() << '\n';
    for (std::size_t t = 0; t != td.size(); ++t) {
        os << "b " << t + 1;
        for (auto v : td.bags[t]) os << ' ' << v + 1;
        os << '\n';
    }
    for (std::size_t t = 0; t != td.size(); ++t)
        if (td.parent[t] != TreeDecomp::npos) os << td.parent[t] + 1 << ' ' << t + 1 << '\n';
    for (std::size_t v = 0; v != td.vertices.size(); ++v) os << "c " << v + 1 << ' ' << td.vertices[v] << '\n';
    return os.str();
}

} // namespace elpq
