#pragma once

// k-decision trees: an unlabeled root, attribute-labeled inner nodes with
// value-labeled outgoing edges, and decision-labeled terminals.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mvd/table.hpp"

namespace mvd {

using NodeId = std::size_t;

enum class NodeKind { root, inner, terminal };

struct Edge {
    Value value = 0;  // ignored on root edges
    NodeId target = 0;
};

struct Node {
    NodeKind kind = NodeKind::root;
    std::string attribute;  // inner nodes
    Decision decision = 0;  // terminal nodes
    std::vector<Edge> edges;
};

class DecisionTree {
public:
    // A tree holding only its root. Attach children before use.
    DecisionTree();
    // root -> terminal(d)
    static DecisionTree leaf(Decision d);

    NodeId root() const { return 0; }
    const Node& node(NodeId id) const { return nodes_[id]; }
    std::size_t size() const { return nodes_.size(); }

    // `value` is ignored when parent is the root.
    NodeId add_inner(NodeId parent, Value value, std::string attribute);
    NodeId add_terminal(NodeId parent, Value value, Decision decision);
    // Copies `sub` (its root edges become edges of parent labeled `value`).
    void graft(NodeId parent, Value value, const DecisionTree& sub);

    // Attributes of inner nodes, in first-visit depth-first order, deduplicated.
    std::vector<std::string> attributes() const;

    // Structural problems: fewer than two nodes, inner nodes without edges,
    // terminals with edges.
    std::vector<std::string> structural_problems() const;

    bool operator==(const DecisionTree& o) const;

private:
    NodeId add_node(NodeId parent, Value value, Node n);

    std::vector<Node> nodes_;
};

struct PathEntry {
    CanonicalWord word;  // pi(tau), canonicalized
    Decision decision = 0;
    std::size_t raw_length = 0;  // inner nodes on the path before canonicalization
};

// Depth-first, edges in stored order.
std::vector<PathEntry> complete_paths(const DecisionTree& g);

enum class TreeMode { deterministic, nondeterministic };

struct Violation {
    std::string kind;     // "attribute", "root out-degree", "duplicate edge label", "uncovered row", "unsound path", "structure"
    std::string message;  // names the path or row
};

// Checks a tree against a nonempty table. Reports every violation found.
// Throws InvalidArgument for a table without rows.
std::vector<Violation> validate_tree(const DecisionTree& g, const DecisionTable& t, TreeMode mode);

enum class TreeFormat { dot, structured };

// Nodes are numbered in depth-first preorder, so output is stable.
std::string export_tree(const DecisionTree& g, TreeFormat format);
// Reads the structured form back. Throws FormatError.
DecisionTree import_tree(std::string_view structured);

}  // namespace mvd
