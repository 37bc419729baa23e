#pragma once

#include <elpq/grounder.hpp>
#include <elpq/model.hpp>

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace elpq {

enum class GraphMode { Ground, Predicate };

/// Undirected graph with sorted string labels; edges stored as (i, j), i < j.
struct PrimalGraph {
    std::vector<std::string>                      vertices;
    std::set<std::pair<std::size_t, std::size_t>> edges;

    std::optional<std::size_t>            find(const std::string& label) const;
    std::vector<std::set<std::size_t>>    adjacency() const;
    bool                                  hasEdge(std::size_t a, std::size_t b) const;
};

/// {x, y} is an edge iff x != y occur together in some rule (epistemic inner
/// atoms included). Ground mode requires a ground program.
PrimalGraph primal_graph(const Program& program, GraphMode mode);

/// Rooted tree of bags over a fixed vertex list.
struct TreeDecomp {
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::vector<std::string>              vertices;
    std::vector<std::vector<std::size_t>> bags;   // sorted vertex ids
    std::vector<std::size_t>              parent; // npos for the root
    std::size_t                           root = 0;

    std::size_t                           size() const noexcept { return bags.size(); }
    /// Largest bag size minus one; -1 when every bag is empty.
    long                                  width() const;
    std::vector<std::vector<std::size_t>> children() const;
    /// Nodes in root-first depth-first order, children by increasing id.
    std::vector<std::size_t>              preorder() const;
    std::vector<std::string>              bagLabels(std::size_t node) const;
};

/// Empty string when `td` is a tree decomposition of `g`, otherwise a
/// description of the first violated condition.
std::string check_tree_decomposition(const PrimalGraph& g, const TreeDecomp& td);
bool        is_tree_decomposition(const PrimalGraph& g, const TreeDecomp& td);

enum class Heuristic { MinFill, MinDegree };

/// Elimination-ordering decomposition; ties are broken by vertex id.
TreeDecomp decompose(const PrimalGraph& g, Heuristic heuristic = Heuristic::MinFill);

enum class NodeType { Leaf, Introduce, Remove, Join, Other };
const char* to_string(NodeType t) noexcept;
NodeType    node_type(const TreeDecomp& td, std::size_t node);
bool        is_nice(const TreeDecomp& td);

/// Binary tree with leaf/introduce/remove/join nodes only, empty leaf and
/// root bags, same width. Applying it to a nice decomposition changes nothing
/// but node numbering.
TreeDecomp make_nice(const TreeDecomp& td);

/// Node-numbering independent rendering, used to compare decompositions.
std::string canonical_form(const TreeDecomp& td);

struct BagGroundResult {
    GroundProgram            program;
    TreeDecomp               decomposition; // over the ground atoms
    std::vector<std::size_t> ruleNode;      // node each input rule was assigned to
};

/// Grounds the rules assigned to each bag (first covering bag in preorder)
/// over the Herbrand universe of the whole program. The ground decomposition
/// keeps the tree and puts into each bag every ground atom whose predicate is
/// in the original bag. Bags are grounded by `jobs` threads; the result does
/// not depend on it. Throws UncoveredRule.
BagGroundResult bag_ground(const Program& program, const TreeDecomp& td, const GroundOptions& options = {}, unsigned jobs = 1);

/// PACE-style text: `s td` header, `b` lines, tree edges, then `c` lines
/// naming the vertices.
std::string to_pace(const TreeDecomp& td);

} // namespace elpq
