#include "trackstat/partition_graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace trackstat {

bool LabeledGraph::has_half_edges() const {
    for (const auto& h : half_edges)
        if (!h.empty()) return true;
    return false;
}

LabeledGraph partition_graph(const CrushResult& cr) {
    LabeledGraph g;
    g.vertex_labels.reserve(cr.pieces.size());
    g.half_edges.resize(cr.pieces.size());
    for (std::size_t i = 0; i < cr.pieces.size(); ++i) {
        g.vertex_labels.push_back(cr.pieces[i].genus);
        for (long long tag : cr.pieces[i].punctures)
            if (tag < kScarBase) g.half_edges[i].push_back(0);
    }
    for (std::size_t j = 0; j < cr.scars.size(); ++j) {
        int u = cr.piece_of(cr.scars[j][0]);
        int v = cr.piece_of(cr.scars[j][1]);
        g.edges.push_back({u, v, cr.multiplicities[j]});
    }
    return g;
}

LabeledGraph complete(LabeledGraph g) {
    if (!g.has_half_edges()) return g;
    int dummy = static_cast<int>(g.vertex_labels.size());
    g.vertex_labels.push_back(-1);
    for (int v = 0; v < dummy; ++v)
        for (long long lbl : g.half_edges[v]) g.edges.push_back({v, dummy, lbl});
    g.half_edges.assign(g.vertex_labels.size(), {});
    return g;
}

LabeledGraph drop_half_edges(LabeledGraph g) {
    g.half_edges.assign(g.vertex_labels.size(), {});
    return g;
}

namespace {

using Cells = std::vector<std::vector<long long>>;

// multisets as ascending sequences, lexicographic, shorter-prefix smaller
int compare_cells(const Cells& a, const Cells& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return -1;
        if (b[i] < a[i]) return 1;
    }
    return 0;
}

Cells cells_for_order(const LabeledGraph& g, const std::vector<int>& order) {
    const int n = static_cast<int>(order.size());
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[order[i]] = i;
    Cells cells(static_cast<std::size_t>(n) * (n + 1) / 2);
    auto cell_index = [n](int i, int j) {
        // row-major upper triangle: (i,j) with i <= j
        return static_cast<std::size_t>(i) * n - static_cast<std::size_t>(i) * (i - 1) / 2 +
               (j - i);
    };
    for (const auto& e : g.edges) {
        int i = pos[e.u], j = pos[e.v];
        if (i > j) std::swap(i, j);
        cells[cell_index(i, j)].push_back(e.label);
    }
    for (auto& c : cells) std::sort(c.begin(), c.end());
    return cells;
}

}  // namespace

std::string canonical_name(const LabeledGraph& g) {
    if (g.has_half_edges())
        throw SurfaceError("canonical_name: complete the graph (or drop half-edges) first");
    const int n = static_cast<int>(g.vertex_labels.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (g.vertex_labels[a] != g.vertex_labels[b])
            return g.vertex_labels[a] < g.vertex_labels[b];
        return a < b;  // ascending within buckets so the odometer starts clean
    });
    // the sorted label list is forced; minimize cells over orderings that
    // permute only within equal-label buckets
    std::vector<int> best_order = order;
    Cells best = cells_for_order(g, order);
    std::vector<std::pair<int, int>> buckets;  // [begin, end)
    {
        int i = 0;
        while (i < n) {
            int j = i;
            while (j < n && g.vertex_labels[order[j]] == g.vertex_labels[order[i]]) ++j;
            buckets.emplace_back(i, j);
            i = j;
        }
    }
    std::vector<int> cur = order;
    // odometer over per-bucket permutations
    while (true) {
        int b = static_cast<int>(buckets.size()) - 1;
        while (b >= 0 &&
               !std::next_permutation(cur.begin() + buckets[b].first, cur.begin() + buckets[b].second))
            --b;
        if (b < 0) break;
        for (std::size_t k = b + 1; k < buckets.size(); ++k)
            std::sort(cur.begin() + buckets[k].first, cur.begin() + buckets[k].second);
        Cells c = cells_for_order(g, cur);
        if (compare_cells(c, best) < 0) {
            best = c;
            best_order = cur;
        }
    }

    std::ostringstream os;
    os << "([";
    for (int i = 0; i < n; ++i) {
        if (i) os << ", ";
        os << g.vertex_labels[best_order[i]];
    }
    os << "], [";
    for (std::size_t k = 0; k < best.size(); ++k) {
        if (k) os << ", ";
        os << '{';
        for (std::size_t t = 0; t < best[k].size(); ++t) {
            if (t) os << ',';
            os << best[k][t];
        }
        os << '}';
    }
    os << "])";
    return os.str();
}

}  // namespace trackstat
