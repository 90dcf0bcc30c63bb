#include "mvd/tree.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mvd/errors.hpp"

namespace mvd {

using nlohmann::json;

DecisionTree::DecisionTree() { nodes_.push_back(Node{NodeKind::root, {}, 0, {}}); }

DecisionTree DecisionTree::leaf(Decision d) {
    DecisionTree t;
    t.add_terminal(t.root(), 0, d);
    return t;
}

NodeId DecisionTree::add_node(NodeId parent, Value value, Node n) {
    if (parent >= nodes_.size()) throw InvalidArgument("no such parent node");
    if (nodes_[parent].kind == NodeKind::terminal) throw InvalidArgument("terminal nodes have no children");
    const NodeId id = nodes_.size();
    nodes_.push_back(std::move(n));
    nodes_[parent].edges.push_back(Edge{nodes_[parent].kind == NodeKind::root ? 0 : value, id});
    return id;
}

NodeId DecisionTree::add_inner(NodeId parent, Value value, std::string attribute) {
    if (attribute.empty()) throw InvalidArgument("inner nodes need an attribute");
    return add_node(parent, value, Node{NodeKind::inner, std::move(attribute), 0, {}});
}

NodeId DecisionTree::add_terminal(NodeId parent, Value value, Decision decision) {
    return add_node(parent, value, Node{NodeKind::terminal, {}, decision, {}});
}

void DecisionTree::graft(NodeId parent, Value value, const DecisionTree& sub) {
    std::function<void(NodeId, NodeId, Value)> copy = [&](NodeId src, NodeId dst_parent, Value v) {
        const Node& n = sub.node(src);
        NodeId id = n.kind == NodeKind::terminal ? add_terminal(dst_parent, v, n.decision)
                                                 : add_inner(dst_parent, v, n.attribute);
        for (const auto& e : n.edges) copy(e.target, id, e.value);
    };
    for (const auto& e : sub.node(sub.root()).edges) copy(e.target, parent, value);
}

std::vector<std::string> DecisionTree::attributes() const {
    std::vector<std::string> out;
    std::set<std::string> seen;
    std::function<void(NodeId)> visit = [&](NodeId id) {
        const Node& n = nodes_[id];
        if (n.kind == NodeKind::inner && seen.insert(n.attribute).second) out.push_back(n.attribute);
        for (const auto& e : n.edges) visit(e.target);
    };
    visit(root());
    return out;
}

std::vector<std::string> DecisionTree::structural_problems() const {
    std::vector<std::string> out;
    if (nodes_.size() < 2) out.push_back("a decision tree has at least two nodes");
    for (NodeId id = 0; id < nodes_.size(); ++id) {
        const Node& n = nodes_[id];
        if (n.kind == NodeKind::root && id != 0) out.push_back("node " + std::to_string(id) + " is a second root");
        if (n.kind == NodeKind::inner && n.edges.empty())
            out.push_back("inner node " + std::to_string(id) + " (" + n.attribute + ") has no outgoing edges");
        if (n.kind == NodeKind::terminal && !n.edges.empty())
            out.push_back("terminal node " + std::to_string(id) + " has outgoing edges");
    }
    if (!nodes_.empty() && nodes_[0].edges.empty() && nodes_.size() >= 2) out.push_back("the root has no outgoing edges");
    return out;
}

bool DecisionTree::operator==(const DecisionTree& o) const {
    std::function<bool(NodeId, NodeId)> same = [&](NodeId a, NodeId b) {
        const Node& x = nodes_[a];
        const Node& y = o.nodes_[b];
        if (x.kind != y.kind || x.edges.size() != y.edges.size()) return false;
        if (x.kind == NodeKind::inner && x.attribute != y.attribute) return false;
        if (x.kind == NodeKind::terminal && x.decision != y.decision) return false;
        for (std::size_t i = 0; i < x.edges.size(); ++i) {
            if (x.kind == NodeKind::inner && x.edges[i].value != y.edges[i].value) return false;
            if (!same(x.edges[i].target, y.edges[i].target)) return false;
        }
        return true;
    };
    return same(root(), o.root());
}

std::vector<PathEntry> complete_paths(const DecisionTree& g) {
    std::vector<PathEntry> out;
    std::vector<Letter> word;
    std::function<void(NodeId)> visit = [&](NodeId id) {
        const Node& n = g.node(id);
        if (n.kind == NodeKind::terminal) {
            out.push_back(PathEntry{Assignment::canonicalize(word), n.decision, word.size()});
            return;
        }
        for (const auto& e : n.edges) {
            if (n.kind == NodeKind::inner) word.push_back(Letter{n.attribute, e.value});
            visit(e.target);
            if (n.kind == NodeKind::inner) word.pop_back();
        }
    };
    visit(g.root());
    return out;
}

namespace {

std::string path_name(const PathEntry& p) {
    std::ostringstream os;
    os << "path " << (p.word.annihilates ? "[contradictory] " : "") << p.word.assignment.to_string() << " -> "
       << p.decision;
    return os.str();
}

std::string row_name(const DecisionTable& t, std::size_t r) {
    std::ostringstream os;
    os << "row " << r << " (";
    for (std::size_t c = 0; c < t.columns(); ++c) os << (c ? " " : "") << t.at(r, c);
    os << ')';
    return os.str();
}

}  // namespace

std::vector<Violation> validate_tree(const DecisionTree& g, const DecisionTable& t, TreeMode mode) {
    if (t.is_empty()) throw InvalidArgument("no tree is defined for the empty table");
    std::vector<Violation> out;

    for (auto& p : g.structural_problems()) out.push_back({"structure", p});

    std::set<std::string> unknown;
    for (const auto& a : g.attributes()) {
        if (!t.column_of(a)) {
            unknown.insert(a);
            out.push_back({"attribute", "attribute '" + a + "' is not a column of the table"});
        }
    }

    if (mode == TreeMode::deterministic) {
        const auto& root = g.node(g.root());
        if (root.edges.size() != 1)
            out.push_back({"root out-degree",
                           "root has " + std::to_string(root.edges.size()) + " outgoing edges, expected exactly 1"});
        for (NodeId id = 0; id < g.size(); ++id) {
            const Node& n = g.node(id);
            if (n.kind != NodeKind::inner) continue;
            std::set<Value> labels;
            for (const auto& e : n.edges) {
                if (!labels.insert(e.value).second)
                    out.push_back({"duplicate edge label", "node " + std::to_string(id) + " (" + n.attribute +
                                                               ") has two edges labeled " + std::to_string(e.value)});
            }
        }
    }

    const auto paths = complete_paths(g);
    RowSet covered(t.rows());
    for (const auto& p : paths) {
        bool known = true;
        for (const auto& l : p.word.assignment)
            if (unknown.count(l.attribute)) known = false;
        if (!known || p.word.annihilates) continue;
        RowSet rows = t.matching(p.word.assignment);
        covered |= rows;
        if (rows.none()) continue;
        bool common = true;
        rows.for_each([&](std::size_t r) {
            const auto& ds = t.decisions(r);
            if (!std::binary_search(ds.begin(), ds.end(), p.decision)) common = false;
        });
        if (!common)
            out.push_back({"unsound path", path_name(p) + ": decision is not common for the reached subtable"});
    }
    for (std::size_t r = 0; r < t.rows(); ++r)
        if (!covered.test(r)) out.push_back({"uncovered row", row_name(t, r) + " is reached by no complete path"});
    return out;
}

namespace {

std::string escape_dot(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

json node_to_json(const DecisionTree& g, NodeId id) {
    const Node& n = g.node(id);
    json j;
    switch (n.kind) {
        case NodeKind::root: j["kind"] = "root"; break;
        case NodeKind::inner:
            j["kind"] = "inner";
            j["attr"] = n.attribute;
            break;
        case NodeKind::terminal:
            j["kind"] = "terminal";
            j["decision"] = n.decision;
            return j;
    }
    json edges = json::array();
    for (const auto& e : n.edges) {
        json je;
        if (n.kind == NodeKind::inner) je["value"] = e.value;
        je["node"] = node_to_json(g, e.target);
        edges.push_back(std::move(je));
    }
    j["edges"] = std::move(edges);
    return j;
}

}  // namespace

std::string export_tree(const DecisionTree& g, TreeFormat format) {
    if (format == TreeFormat::structured) {
        json j{{"schema", 1}, {"tree", node_to_json(g, g.root())}};
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "digraph tree {\n";
    std::size_t counter = 0;
    std::function<std::size_t(NodeId)> visit = [&](NodeId id) -> std::size_t {
        const std::size_t me = counter++;
        const Node& n = g.node(id);
        switch (n.kind) {
            case NodeKind::root: os << "  n" << me << " [shape=point];\n"; break;
            case NodeKind::inner: os << "  n" << me << " [label=\"" << escape_dot(n.attribute) << "\"];\n"; break;
            case NodeKind::terminal: os << "  n" << me << " [shape=box, label=\"" << n.decision << "\"];\n"; break;
        }
        for (const auto& e : n.edges) {
            const std::size_t child = visit(e.target);
            os << "  n" << me << " -> n" << child;
            if (n.kind == NodeKind::inner) os << " [label=\"" << e.value << "\"]";
            os << ";\n";
        }
        return me;
    };
    visit(g.root());
    os << "}\n";
    return os.str();
}

DecisionTree import_tree(std::string_view structured) {
    json j;
    try {
        j = json::parse(structured);
    } catch (const json::exception& e) {
        throw FormatError(std::string("tree: ") + e.what());
    }
    DecisionTree g;
    std::function<void(const json&, NodeId)> read_edges = [&](const json& node, NodeId id) {
        if (!node.contains("edges")) return;
        const bool from_root = id == g.root();
        for (const auto& e : node.at("edges")) {
            const json& child = e.at("node");
            const Value v = from_root ? 0 : e.at("value").get<Value>();
            const std::string kind = child.at("kind").get<std::string>();
            if (kind == "terminal") {
                g.add_terminal(id, v, child.at("decision").get<Decision>());
            } else if (kind == "inner") {
                NodeId c = g.add_inner(id, v, child.at("attr").get<std::string>());
                read_edges(child, c);
            } else {
                throw FormatError("tree: unexpected node kind '" + kind + "'");
            }
        }
    };
    try {
        const json& root = j.contains("tree") ? j.at("tree") : j;
        if (root.at("kind").get<std::string>() != "root") throw FormatError("tree: top node must be the root");
        read_edges(root, g.root());
    } catch (const json::exception& e) {
        throw FormatError(std::string("tree: ") + e.what());
    }
    return g;
}

}  // namespace mvd
