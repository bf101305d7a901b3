// Searches corner selections on the standard triangulations for train
// tracks that carry a full-dimension family of essential multicurves, admit
// the chain-ordered sampler, and exhibit the expected curve types at small
// length bounds. Writes the winners as track files.

#include <algorithm>
#include <array>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "trackstat/classify.hpp"
#include "trackstat/crush.hpp"
#include "trackstat/experiment.hpp"
#include "trackstat/rng.hpp"
#include "trackstat/sampler.hpp"
#include "trackstat/surfaces.hpp"
#include "trackstat/track.hpp"

using namespace trackstat;

namespace {

struct ArcGraph {
    int num_nodes = 0;
    std::vector<std::array<int, 2>> ends;  // per branch, node ids or -1
};

ArcGraph arc_graph(const TrainTrack& track) {
    auto rows = track.switch_rows();
    ArcGraph g;
    g.num_nodes = static_cast<int>(rows.size());
    g.ends.assign(track.num_branches(), {-1, -1});
    for (int s = 0; s < g.num_nodes; ++s)
        for (int i = 0; i < track.num_branches(); ++i) {
            if (rows[s][i] == 0) continue;
            if (g.ends[i][0] < 0) g.ends[i][0] = s;
            else g.ends[i][1] = s;
        }
    return g;
}

// order branches so that at most two switches are ever half-processed;
// returns empty when no such order is found
std::vector<int> find_chain_order(const TrainTrack& track) {
    ArcGraph g = arc_graph(track);
    const int k = g.num_nodes;
    const int m = track.num_branches();
    // DFS over node orders keeping the open boundary at most 2
    std::vector<int> node_pos(k, -1), node_order;
    std::vector<std::vector<int>> node_arcs(k);
    for (int i = 0; i < m; ++i)
        for (int e = 0; e < 2; ++e)
            if (g.ends[i][e] >= 0) node_arcs[g.ends[i][e]].push_back(i);

    std::vector<int> best;
    std::function<bool(int)> dfs = [&](int depth) {
        if (depth == k) return true;
        for (int n = 0; n < k; ++n) {
            if (node_pos[n] >= 0) continue;
            node_pos[n] = depth;
            node_order.push_back(n);
            // boundary: placed nodes with arcs to unplaced nodes
            std::set<int> boundary;
            for (int i = 0; i < m; ++i) {
                auto [a, b] = g.ends[i];
                if (a < 0) continue;
                bool pa = node_pos[a] >= 0, pb = node_pos[b] >= 0;
                if (pa != pb) boundary.insert(pa ? a : b);
            }
            if (boundary.size() <= 2 && dfs(depth + 1)) return true;
            node_pos[n] = -1;
            node_order.pop_back();
        }
        return false;
    };
    if (k > 0 && !dfs(0)) return {};

    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        auto key = [&](int br) {
            auto [a, b] = g.ends[br];
            if (a < 0) return std::pair<int, int>(1 << 20, br);
            int pa = node_pos[a], pb = node_pos[b];
            return std::pair<int, int>(std::max(pa, pb), std::min(pa, pb));
        };
        return key(i) < key(j);
    });
    return order;
}

struct Quality {
    bool ok = false;
    std::string reason;
    long long points = 0;
    std::map<std::string, long long> names;
};

// enumerate every carried multicurve with length at most L0 and classify it
Quality enumerate_quality(const TrainTrack& track, long long L0, bool closed, bool check_pieces,
                          long long cap) {
    Quality q;
    TrackSampler sampler(track, L0);
    if (!sampler.fast()) {
        q.reason = "sampler did not compile";
        return q;
    }
    if (sampler.total() == 0) {
        q.reason = "no carried multicurves";
        return q;
    }
    if (sampler.total() > cap) {
        q.reason = "too many points to enumerate";
        return q;
    }
    long long n = sampler.total().convert_to<long long>();
    q.points = n;
    std::vector<BigInt> idx(n);
    for (long long i = 0; i < n; ++i) idx[i] = i;
    auto all = sampler.extract(idx);
    ClassifyOptions opts;
    opts.closed = closed;
    for (long long i = 0; i < n; ++i) {
        Multicurve m;
        try {
            m = track.to_multicurve(all[i]);
            if (check_pieces) {
                ShortForm sf = shorten(track.tri(), m);
                CrushResult cr = crush(sf);
                for (const auto& piece : cr.pieces) {
                    int originals = 0, scars = 0;
                    for (long long t : piece.punctures) (t < kScarBase ? originals : scars)++;
                    if (piece.genus == 0 && originals == 1 && scars == 2 &&
                        piece.punctures.size() == 3) {
                        q.reason = "degenerate piece: puncture pinched between strands";
                        return q;
                    }
                }
            }
            Classification c = classify(track.tri(), m, opts);
            ++q.names[c.name];
        } catch (const std::exception& ex) {
            q.reason = std::string("classification failed: ") + ex.what();
            return q;
        }
    }
    q.ok = true;
    return q;
}

struct Target {
    std::string label;
    int target_dim;
    bool closed;
    std::vector<std::string> required_names;
    long long L0;
    long long cap;
};

void search(const Triangulation& T, const Target& target, std::uint64_t seed, long long tries,
            const std::string& out_path, const std::string& tri_name) {
    Rng rng(seed);
    const int corners = T.num_slots();
    std::vector<int> pool(corners);
    std::iota(pool.begin(), pool.end(), 0);

    long long tested = 0, dim_ok = 0, chain_ok = 0;
    for (long long attempt = 0; attempt < tries; ++attempt) {
        int m = static_cast<int>(rng.uniform_u64(corners - 5)) + 6;
        // random subset of size m
        std::vector<int> perm = pool;
        for (int i = corners - 1; i > 0; --i)
            std::swap(perm[i], perm[rng.uniform_u64(static_cast<std::uint64_t>(i) + 1)]);
        std::vector<int> subset(perm.begin(), perm.begin() + m);
        std::sort(subset.begin(), subset.end());
        ++tested;
        try {
            TrainTrack track(T, subset);
            if (track.carried_dimension() != target.target_dim) continue;
            if (track.carried_dimension_check(target.closed) != true) continue;
            ++dim_ok;
            auto order = find_chain_order(track);
            if (order.empty()) continue;
            std::vector<int> ordered;
            for (int i : order) ordered.push_back(subset[i]);
            TrainTrack chained(T, ordered);
            {
                TrackSampler probe(chained, 2 * m);
                if (!probe.fast()) continue;
                if (probe.total() == 0) continue;
            }
            ++chain_ok;
            Quality q = enumerate_quality(chained, target.L0, target.closed, target.closed,
                                          target.cap);
            if (!q.ok) {
                std::cout << "candidate m=" << m << " rejected: " << q.reason << "\n";
                continue;
            }
            bool all_found = true;
            for (const auto& need : target.required_names)
                if (!q.names.count(need)) {
                    all_found = false;
                    std::cout << "candidate m=" << m << " missing " << need << "\n";
                    break;
                }
            if (!all_found) continue;
            std::cout << "FOUND " << target.label << " m=" << m << " points(L0=" << target.L0
                      << ")=" << q.points << " corners:";
            for (int c : ordered) std::cout << ' ' << c;
            std::cout << "\n";
            for (const auto& [name, count] : q.names)
                std::cout << "  " << count << "  " << name << "\n";
            if (!out_path.empty()) {
                chained.save(out_path, tri_name);
                std::cout << "wrote " << out_path << "\n";
            }
            return;
        } catch (const TrackError&) {
            continue;
        } catch (const SurfaceError&) {
            continue;
        }
    }
    std::cout << "no track found for " << target.label << " (tested " << tested << ", dim ok "
              << dim_ok << ", chain ok " << chain_ok << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: track_search s12|s06|s2closed|s21full [seed] [tries] [out.trk]\n";
        return 2;
    }
    std::string mode = argv[1];
    std::uint64_t seed = argc > 2 ? std::stoull(argv[2]) : 7;
    long long tries = argc > 3 ? std::stoll(argv[3]) : 20000;
    std::string out = argc > 4 ? argv[4] : "";

    const std::string sep12 = "([-1, 0, 1], [{}, {0,0}, {}, {}, {1}, {}])";
    const std::string nonsep12 = "([-1, 0], [{}, {0,0}, {1}])";
    const std::string g33 = "([-1, 0, 0], [{}, {0,0,0}, {0,0,0}, {}, {1}, {}])";
    const std::string g24 = "([-1, 0, 0], [{}, {0,0}, {0,0,0,0}, {}, {1}, {}])";
    const std::string t1 = "([0], [{1,1}])";
    const std::string t2 = "([1], [{1}])";
    const std::string t3 = "([0, 0], [{1}, {1}, {1}])";
    const std::string t4 = "([0, 0], [{}, {1,1,1}, {}])";
    const std::string t5 = "([0, 1], [{1}, {1}, {}])";
    const std::string t6 = "([1, 1], [{}, {1}, {}])";

    if (mode == "s12") {
        search(twice_punctured_torus(), {"S_{1,2} dim 4", 4, false, {sep12, nonsep12}, 24, 300000},
               seed, tries, out, "s1_2.tri");
    } else if (mode == "s06") {
        search(six_punctured_sphere(), {"S_{0,6} dim 6", 6, false, {g33, g24}, 20, 300000}, seed,
               tries, out, "s0_6.tri");
    } else if (mode == "s2closed") {
        search(genus_two_once_punctured(),
               {"S_2 closed dim 6", 6, true, {t1, t2, t3, t4, t5, t6}, 26, 300000}, seed, tries,
               out, "s2_1.tri");
    } else if (mode == "s21full") {
        search(genus_two_once_punctured(), {"S_{2,1} dim 8", 8, false, {}, 18, 300000}, seed,
               tries, out, "s2_1.tri");
    } else {
        std::cerr << "unknown mode\n";
        return 2;
    }
    return 0;
}
