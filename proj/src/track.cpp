#include "trackstat/track.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace trackstat {

TrainTrack::TrainTrack(Triangulation tri, std::vector<int> corners)
    : tri_(std::move(tri)), corners_(std::move(corners)) {
    if (corners_.empty()) throw TrackError("track has no branches");
    std::set<int> seen;
    for (int c : corners_) {
        if (c < 0 || c >= tri_.num_slots()) throw TrackError("corner index out of range");
        if (!seen.insert(c).second) throw TrackError("corner selected twice");
    }
    // an edge met by the track on one side only forces weight zero against
    // the positivity of the other side's branches
    for (int e = 0; e < tri_.num_edges(); ++e) {
        auto slots = tri_.slots_of_edge(e);
        int side[2] = {0, 0};
        for (int k = 0; k < 2; ++k) {
            int t = slots[k] / 3, s = slots[k] % 3;
            for (int c : corners_)
                if (c == 3 * t + (s + 1) % 3 || c == 3 * t + (s + 2) % 3) ++side[k];
        }
        if ((side[0] == 0) != (side[1] == 0))
            throw TrackError("edge " + std::to_string(e) +
                             " has a gate on one side only; switch conditions are infeasible");
    }
}

std::vector<std::vector<int>> TrainTrack::switch_rows() const {
    std::vector<std::vector<int>> rows;
    int m = num_branches();
    for (int e = 0; e < tri_.num_edges(); ++e) {
        auto slots = tri_.slots_of_edge(e);
        std::vector<int> row(m, 0);
        bool active = false;
        for (int i = 0; i < m; ++i) {
            int t = corners_[i] / 3, c = corners_[i] % 3;
            int adj1 = 3 * t + (c + 1) % 3, adj2 = 3 * t + (c + 2) % 3;
            int coef = 0;
            if (adj1 == slots[0] || adj2 == slots[0]) ++coef;
            if (adj1 == slots[1] || adj2 == slots[1]) --coef;
            if (coef != 0) {
                row[i] = coef;
                active = true;
            }
        }
        if (active) rows.push_back(std::move(row));
    }
    return rows;
}

Polytope TrainTrack::carrying_polytope() const {
    int m = num_branches();
    Polytope P(m);
    for (const auto& row : switch_rows()) {
        std::vector<BigInt> a(row.begin(), row.end());
        P.add(LinearConstraint::eq(std::move(a), 0));
    }
    for (int i = 0; i < m; ++i) {
        std::vector<BigInt> a(m, 0);
        a[i] = 1;
        P.add(LinearConstraint::ge(std::move(a), 1));
    }
    return P;
}

Polytope TrainTrack::length_polytope(long long length_bound) const {
    Polytope P = carrying_polytope();
    std::vector<BigInt> a(num_branches(), 1);
    P.add(LinearConstraint::le(std::move(a), length_bound));
    return P;
}

Multicurve TrainTrack::to_multicurve(const std::vector<long long>& weights) const {
    if (static_cast<int>(weights.size()) != num_branches())
        throw TrackError("weight vector length differs from branch count");
    for (long long x : weights)
        if (x < 1) throw TrackError("carried weights must be fully positive");
    Multicurve out;
    out.w.assign(tri_.num_edges(), 0);
    for (int e = 0; e < tri_.num_edges(); ++e) {
        auto slots = tri_.slots_of_edge(e);
        long long side[2] = {0, 0};
        for (int i = 0; i < num_branches(); ++i) {
            int t = corners_[i] / 3, c = corners_[i] % 3;
            int adj1 = 3 * t + (c + 1) % 3, adj2 = 3 * t + (c + 2) % 3;
            for (int k = 0; k < 2; ++k)
                if (adj1 == slots[k] || adj2 == slots[k]) side[k] += weights[i];
        }
        if (side[0] != side[1]) throw TrackError("switch condition violated");
        out.w[e] = side[0];
    }
    std::string why;
    if (!valid_multicurve(tri_, out, &why))
        throw TrackError("carried weights give an invalid multicurve: " + why);
    return out;
}

std::vector<long long> TrainTrack::carried_weights(const Multicurve& m) const {
    std::vector<long long> out;
    out.reserve(corners_.size());
    for (int c : corners_) out.push_back(corner_weight(tri_, m, c));
    return out;
}

int TrainTrack::carried_dimension() const {
    auto rows = switch_rows();
    int m = num_branches();
    // fraction-free elimination over the integers
    std::vector<std::vector<long long>> a;
    for (const auto& r : rows) a.emplace_back(r.begin(), r.end());
    int rank = 0;
    for (int col = 0; col < m && rank < static_cast<int>(a.size()); ++col) {
        int piv = -1;
        for (int r = rank; r < static_cast<int>(a.size()); ++r)
            if (a[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[rank], a[piv]);
        for (int r = rank + 1; r < static_cast<int>(a.size()); ++r) {
            if (a[r][col] == 0) continue;
            long long p = a[rank][col], q = a[r][col];
            long long g = std::gcd(p, q);
            long long mp = q / g, mq = p / g;
            for (int j = col; j < m; ++j) a[r][j] = a[r][j] * mq - a[rank][j] * mp;
        }
        ++rank;
    }
    return m - rank;
}

bool TrainTrack::carried_dimension_check(bool closed) const {
    auto eu = tri_.euler_data();
    if (eu.size() != 1) throw TrackError("track base must be connected");
    int g = eu[0].genus;
    int n = closed ? 0 : eu[0].punctures;
    return carried_dimension() == 6 * g - 6 + 2 * n;
}

TrainTrack TrainTrack::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw TrackError("cannot open track file: " + path);
    std::string line, tri_ref;
    std::vector<int> corners;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        if (head == "triangulation") {
            if (!(ls >> tri_ref)) throw TrackError("track file: missing triangulation path");
        } else if (head == "corners:") {
            int c;
            while (ls >> c) corners.push_back(c);
        } else {
            throw TrackError("track file: unknown directive " + head);
        }
    }
    if (tri_ref.empty()) throw TrackError("track file: no triangulation reference");
    std::filesystem::path tp = std::filesystem::path(path).parent_path() / tri_ref;
    std::ifstream tin(tp);
    if (!tin) throw TrackError("cannot open triangulation file: " + tp.string());
    std::stringstream buf;
    buf << tin.rdbuf();
    Triangulation tri = Triangulation::parse(buf.str());
    return TrainTrack(std::move(tri), std::move(corners));
}

void TrainTrack::save(const std::string& path, const std::string& tri_path) const {
    std::ofstream out(path);
    if (!out) throw TrackError("cannot write track file: " + path);
    out << "triangulation " << tri_path << "\n";
    out << "corners:";
    for (int c : corners_) out << ' ' << c;
    out << "\n";
}

}  // namespace trackstat
