#pragma once

#include <string>

#include "trackstat/crush.hpp"

namespace trackstat {

// Genus-labelled pieces joined along the crushed component classes; hanging
// half-edges mark the punctures the surface already had.
struct LabeledGraph {
    struct Edge {
        int u, v;
        long long label;
    };
    std::vector<int> vertex_labels;
    std::vector<Edge> edges;
    std::vector<std::vector<long long>> half_edges;  // per-vertex stub labels

    bool has_half_edges() const;
};

LabeledGraph partition_graph(const CrushResult& cr);

// attach all hanging half-edges to one dummy vertex labelled -1; graphs
// without half-edges are returned unchanged
LabeledGraph complete(LabeledGraph g);

// closed-surface reduction: forget the hanging half-edges entirely
LabeledGraph drop_half_edges(LabeledGraph g);

// lexicographically minimal (vertex labels, flattened upper-triangular cell
// multisets) over all vertex orderings, serialized in the fixed text form
// "([l1, l2], [{a,b}, {}, ...])"
std::string canonical_name(const LabeledGraph& g);

}  // namespace trackstat
