#pragma once

#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "canonical.hpp"
#include "graph.hpp"

namespace goim {

// Graphviz export: one record per live node, dashed cluster per box, the
// token edge (when given) drawn bold red.
inline std::string to_dot(const Graph& g,
                          std::optional<std::pair<EdgeId, TokenDir>> token = {}) {
    std::ostringstream os;
    os << "digraph G {\n  rankdir=BT;\n  node [shape=circle, fontsize=10];\n";

    std::vector<std::vector<NodeId>> by_box(g.boxes.size());
    std::vector<NodeId> top;
    for (NodeId n = 0; n < g.nodes.size(); n++) {
        if (!g.nodes[n].alive) continue;
        if (g.nodes[n].box == kTopLevel)
            top.push_back(n);
        else
            by_box[static_cast<size_t>(g.nodes[n].box)].push_back(n);
    }

    auto label = [&](NodeId n) {
        const Node& nd = g.nodes[n];
        std::string k;
        switch (nd.kind) {
            case NodeKind::Ax: k = "ax"; break;
            case NodeKind::Cut: k = "cut"; break;
            case NodeKind::Tensor: k = "&otimes;"; break;
            case NodeKind::Par: k = "&#8523;"; break;
            case NodeKind::Bang: k = "!"; break;
            case NodeKind::WhyNot: k = "?"; break;
            case NodeKind::Der: k = "D"; break;
            case NodeKind::Con: k = "C" + std::to_string(nd.bunch.size()); break;
        }
        return k + "&middot;" + std::to_string(nd.name);
    };

    std::function<void(BoxId, int)> emit_box = [&](BoxId b, int depth) {
        std::string pad(static_cast<size_t>(depth) * 2, ' ');
        os << pad << "subgraph cluster_" << b << " {\n"
           << pad << "  style=dashed;\n";
        for (NodeId n : by_box[static_cast<size_t>(b)])
            os << pad << "  n" << n << " [label=<" << label(n) << ">];\n";
        for (size_t bi = 0; bi < g.boxes.size(); bi++)
            if (g.boxes[bi].alive && g.boxes[bi].parent == b) emit_box(static_cast<BoxId>(bi), depth + 1);
        os << pad << "}\n";
    };

    for (NodeId n : top) os << "  n" << n << " [label=<" << label(n) << ">];\n";
    for (size_t bi = 0; bi < g.boxes.size(); bi++)
        if (g.boxes[bi].alive && g.boxes[bi].parent == kTopLevel)
            emit_box(static_cast<BoxId>(bi), 1);

    int opens = 0;
    for (EdgeId e = 0; e < g.edges.size(); e++) {
        const Edge& ed = g.edges[e];
        if (!ed.alive) continue;
        std::string from = ed.src.dangling() ? ("open" + std::to_string(opens++)) : ("n" + std::to_string(ed.src.node));
        std::string to = ed.dst.dangling() ? ("open" + std::to_string(opens++)) : ("n" + std::to_string(ed.dst.node));
        if (ed.src.dangling() || ed.dst.dangling())
            os << "  " << (ed.src.dangling() ? from : to) << " [shape=point];\n";
        os << "  " << from << " -> " << to;
        std::string attrs;
        if (token && token->first == e)
            attrs += "color=red, penwidth=2.5, label=\"" +
                     std::string(token->second == TokenDir::Down ? "v" : "^") + "\"";
        if (ed.has_ann) {
            if (!attrs.empty()) attrs += ", ";
            attrs += "fontsize=8, headlabel=\"" + label_of(ed.ann) + "\"";
        }
        if (!attrs.empty()) os << " [" << attrs << "]";
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace goim
