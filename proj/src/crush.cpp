#include "trackstat/crush.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>

namespace trackstat {

int CrushResult::piece_of(long long tag) const {
    for (std::size_t i = 0; i < pieces.size(); ++i)
        for (long long t : pieces[i].punctures)
            if (t == tag) return static_cast<int>(i);
    throw SurfaceError("crush: puncture tag not found in any piece");
}

namespace {

struct Work {
    Triangulation tri;
    Multicurve total;
    std::vector<Multicurve> cls;      // remaining class coordinates
    std::vector<long long> mult;      // their multiplicities
    std::vector<int> orig;            // index into CrushResult::scars
};

long long flip_delta(const Triangulation& T, const Multicurve& m, int e) {
    auto slots = T.slots_of_edge(e);
    int t1 = slots[0] / 3, s1 = slots[0] % 3;
    int t2 = slots[1] / 3, s2 = slots[1] % 3;
    long long wa = m.w[T.edge_of_slot(3 * t1 + (s1 + 1) % 3)];
    long long wb = m.w[T.edge_of_slot(3 * t1 + (s1 + 2) % 3)];
    long long wc = m.w[T.edge_of_slot(3 * t2 + (s2 + 1) % 3)];
    long long wd = m.w[T.edge_of_slot(3 * t2 + (s2 + 2) % 3)];
    return std::max(wa + wc, wb + wd) - 2 * m.w[e];
}

std::uint64_t state_hash(const Triangulation& T, const Multicurve& m) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t x) {
        h ^= x;
        h *= 1099511628211ULL;
    };
    for (int s = 0; s < T.num_slots(); ++s) mix(static_cast<std::uint64_t>(T.partner(s)));
    for (long long x : m.w) mix(static_cast<std::uint64_t>(x));
    return h;
}

// apply one flip to the whole work state, transporting every class
void apply_flip(Work& w, int e) {
    Triangulation nt = flip(w.tri, e);
    Multicurve ntotal = flip(w.tri, e, w.total).second;
    std::vector<Multicurve> ncls;
    ncls.reserve(w.cls.size());
    for (const auto& c : w.cls) ncls.push_back(flip(w.tri, e, c).second);
    w.tri = std::move(nt);
    w.total = std::move(ntotal);
    w.cls = std::move(ncls);
}

// vertex id whose link matches, else -1
int matches_vertex_link(const Triangulation& T, const Multicurve& c) {
    for (int v = 0; v < T.num_vertices(); ++v)
        if (vertex_link(T, v).w == c.w) return v;
    return -1;
}

// witness edges for a component: edges with an identical link component,
// both sides in distinct triangles, and no other strand crossing them
std::vector<int> crushable_witnesses(const Work& w, const Multicurve& c) {
    std::vector<int> out;
    for (int e = 0; e < w.tri.num_edges(); ++e) {
        if (w.total.w[e] != 0) continue;
        if (!w.tri.flippable(e)) continue;  // folded edges need a flip first
        Multicurve link = edge_link(w.tri, e);
        if (link.zero()) continue;
        std::string why;
        if (!valid_multicurve(w.tri, link, &why)) continue;
        ComponentList comps = trace_components(w.tri, link);
        for (const auto& lc : comps.coords)
            if (lc.w == c.w) {
                out.push_back(e);
                break;
            }
    }
    return out;
}

struct SurgeryOut {
    Triangulation tri;
    std::vector<int> edge_map;  // old edge -> new edge or -1
    long long near_tag, far_tag;
};

// cut along a component parallel to edge e and cone both circles; the total
// weight on e must be zero (no other class crosses it)
SurgeryOut crush_at_edge(const Triangulation& T, const Multicurve& comp, int e, long long near_tag,
                         long long far_tag) {
    auto ends = T.edge_vertices(e);
    auto slots = T.slots_of_edge(e);
    int t1 = slots[0] / 3, t2 = slots[1] / 3;
    if (t1 == t2) throw SurfaceError("crush: folded witness edge");
    const int S = T.num_slots();
    const bool loop = ends[0] == ends[1];

    std::vector<int> dead_tri;
    std::vector<int> ports;                       // slots removed with their triangles
    std::vector<std::pair<int, int>> port_pairs;  // zip identifications
    int tstar = -1;
    if (loop) {
        // side selection: the extracted triangle is the one the component
        // hugs, i.e. whose corner opposite e it crosses
        int s1 = slots[0] % 3, s2 = slots[1] % 3;
        if (corner_weight(T, comp, 3 * t1 + s1) >= 1) tstar = t1;
        else if (corner_weight(T, comp, 3 * t2 + s2) >= 1) tstar = t2;
        else throw SurfaceError("crush: component does not meet either side of its edge");
        int ss = (tstar == t1) ? s1 : s2;
        int f = 3 * tstar + (ss + 1) % 3, g = 3 * tstar + (ss + 2) % 3;
        ports = {f, g};
        port_pairs = {{f, g}};
    } else {
        int s1 = slots[0] % 3, s2 = slots[1] % 3;
        dead_tri = {t1, t2};
        int f1 = 3 * t1 + (s1 + 1) % 3, g1 = 3 * t1 + (s1 + 2) % 3;
        int f2 = 3 * t2 + (s2 + 1) % 3, g2 = 3 * t2 + (s2 + 2) % 3;
        ports = {f1, g1, f2, g2};
        port_pairs = {{f1, g1}, {f2, g2}};
    }
    auto is_port = [&](int s) { return std::find(ports.begin(), ports.end(), s) != ports.end(); };
    auto pair_of = [&](int s) {
        for (auto [a, b] : port_pairs) {
            if (a == s) return b;
            if (b == s) return a;
        }
        throw SurfaceError("crush: not a port");
    };

    std::vector<int> glued(T.num_slots());
    std::vector<int> edge_of(T.num_slots());
    for (int s = 0; s < S; ++s) {
        glued[s] = T.partner(s);
        edge_of[s] = T.edge_of_slot(s);
    }
    std::vector<int> edge_map(T.num_edges());
    std::iota(edge_map.begin(), edge_map.end(), 0);

    // rewire strands across the removed material, merging the edges met
    std::set<int> done_ports;
    const int port_budget = 2 * static_cast<int>(ports.size()) + 2;
    for (auto [a, b] : port_pairs) {
        if (done_ports.count(a)) continue;
        std::vector<int> touched{edge_of[a], edge_of[b]};
        std::vector<int> chain_ports{a, b};
        int X = glued[a], Y = glued[b];
        int guard = 0;
        while (is_port(X)) {
            if (++guard > port_budget) throw SurfaceError("crush: chain closed on itself");
            chain_ports.push_back(X);
            chain_ports.push_back(pair_of(X));
            touched.push_back(edge_of[X]);
            touched.push_back(edge_of[pair_of(X)]);
            X = glued[pair_of(X)];
        }
        while (is_port(Y)) {
            if (++guard > port_budget) throw SurfaceError("crush: chain closed on itself");
            chain_ports.push_back(Y);
            chain_ports.push_back(pair_of(Y));
            touched.push_back(edge_of[Y]);
            touched.push_back(edge_of[pair_of(Y)]);
            Y = glued[pair_of(Y)];
        }
        if (X == Y) throw SurfaceError("crush: degenerate chain (closed off piece)");
        touched.push_back(edge_of[X]);
        touched.push_back(edge_of[Y]);
        for (int p : chain_ports) done_ports.insert(p);
        glued[X] = Y;
        glued[Y] = X;
        int rep = edge_of[X];
        edge_of[Y] = rep;
        for (int t : touched) edge_map[t] = rep;
    }
    // relabel every slot through the merge map
    for (int s = 0; s < S; ++s)
        if (edge_of[s] >= 0) edge_of[s] = edge_map[edge_of[s]];

    long long old_u = T.vertex_tags()[ends[0]];
    long long old_v = T.vertex_tags()[ends[1]];

    Triangulation out;
    std::vector<int> corner_map(S, -1);  // old corner -> new corner
    std::vector<int> tc_corners;         // cone triangle corners in new ids

    if (loop) {
        // transmute t* into the cone triangle: e keeps its slot, the other
        // two sides become the folded new edge, reusing the freed edge id
        int ss = (tstar == t1) ? slots[0] % 3 : slots[1] % 3;
        int se = 3 * tstar + ss;
        int f = 3 * tstar + (ss + 1) % 3, g = 3 * tstar + (ss + 2) % 3;
        int fe = T.edge_of_slot(f), ge = T.edge_of_slot(g);
        if (fe == ge) throw SurfaceError("crush: witness side is a folded cone");
        // the chain merged ge into fe; reuse ge for the new folded edge,
        // which carries nothing (edge_map still routes old ge weights to fe)
        glued[f] = g;
        glued[g] = f;
        edge_of[f] = edge_of[g] = ge;
        for (int s = 0; s < S; ++s) corner_map[s] = s;
        tc_corners = {se, f, g};  // apex = corner ss (the se corner index)
        out = Triangulation(std::move(glued), std::move(edge_of));
    } else {
        // drop the two extracted triangles and compact
        std::vector<bool> tri_dead(T.num_triangles(), false);
        for (int t : dead_tri) tri_dead[t] = true;
        std::vector<int> new_tri(T.num_triangles(), -1);
        int nt = 0;
        for (int t = 0; t < T.num_triangles(); ++t)
            if (!tri_dead[t]) new_tri[t] = nt++;
        if (nt == 0) throw SurfaceError("crush: nothing left");
        std::vector<int> slot_map(S, -1);
        for (int s = 0; s < S; ++s)
            if (!tri_dead[s / 3]) slot_map[s] = 3 * new_tri[s / 3] + s % 3;
        // e vanishes entirely
        edge_map[T.edge_of_slot(slots[0])] = -1;
        // compact edge ids
        std::vector<int> edge_compact(T.num_edges(), -1);
        int ne = 0;
        for (int eid = 0; eid < T.num_edges(); ++eid) {
            if (edge_map[eid] != eid) continue;  // merged away or dead
            bool used = false;
            for (int s = 0; s < S; ++s)
                if (slot_map[s] >= 0 && edge_of[s] == eid) {
                    used = true;
                    break;
                }
            if (used) edge_compact[eid] = ne++;
        }
        for (int eid = 0; eid < T.num_edges(); ++eid) {
            if (edge_map[eid] < 0) continue;
            edge_map[eid] = edge_compact[edge_map[eid]];
        }
        std::vector<int> nglued(3 * nt), nedge(3 * nt);
        for (int s = 0; s < S; ++s) {
            if (slot_map[s] < 0) continue;
            if (slot_map[glued[s]] < 0) throw SurfaceError("crush: dangling gluing");
            nglued[slot_map[s]] = slot_map[glued[s]];
            nedge[slot_map[s]] = edge_compact[edge_of[s]];
            corner_map[s] = slot_map[s];
        }
        out = Triangulation(std::move(nglued), std::move(nedge));
    }

    // puncture tags: the far scar is the orbit rebuilt from the remnants of
    // the cut vertex (or vertices); the cone apex is the near scar
    std::vector<long long> tags(out.num_vertices(), -2);
    std::vector<bool> is_far(out.num_vertices(), false);
    std::vector<bool> near_base(out.num_vertices(), false);
    if (loop) {
        int apex = corner_map[tc_corners[0]];
        // the apex corner of the cone triangle is the one opposite its
        // e-slot; tc_corners[0] stored se whose corner index equals the slot
        tags[out.vertex_of_corner(apex)] = near_tag;
        for (int k = 1; k <= 2; ++k) near_base[out.vertex_of_corner(corner_map[tc_corners[k]])] = true;
    }
    for (int c = 0; c < T.num_slots(); ++c) {
        if (corner_map[c] < 0) continue;
        if (loop && (c / 3 == tstar)) continue;  // cone triangle corners handled above
        int old_vert = T.vertex_of_corner(c);
        int nv = out.vertex_of_corner(corner_map[c]);
        if (old_vert == ends[0] || old_vert == ends[1]) {
            if (loop) {
                if (!near_base[nv] && tags[nv] == -2) is_far[nv] = true;
            } else {
                is_far[nv] = true;
            }
        } else {
            long long t = T.vertex_tags()[old_vert];
            if (tags[nv] == -2 || tags[nv] == t) tags[nv] = t;
            else throw SurfaceError("crush: inconsistent tag inheritance");
        }
    }
    // base corners of the cone triangle inherit the cut vertex
    if (loop)
        for (int k = 1; k <= 2; ++k) {
            int nv = out.vertex_of_corner(corner_map[tc_corners[k]]);
            if (tags[nv] == -2) tags[nv] = old_u;
        }
    int far_count = 0;
    for (int v = 0; v < out.num_vertices(); ++v) {
        if (is_far[v] && tags[v] == -2) {
            tags[v] = far_tag;
            ++far_count;
        }
    }
    if (far_count != 1) throw SurfaceError("crush: far scar not uniquely identified");
    for (int v = 0; v < out.num_vertices(); ++v)
        if (tags[v] == -2) throw SurfaceError("crush: untagged puncture");
    out.set_vertex_tags(std::move(tags));

    SurgeryOut so;
    so.tri = std::move(out);
    so.edge_map = std::move(edge_map);
    so.near_tag = near_tag;
    so.far_tag = far_tag;
    (void)old_v;
    return so;
}

Multicurve remap_coords(const Multicurve& m, const std::vector<int>& edge_map, int new_edges,
                        const char* what) {
    Multicurve out;
    out.w.assign(new_edges, 0);
    std::vector<bool> set(new_edges, false);
    for (std::size_t e = 0; e < edge_map.size(); ++e) {
        int ne = edge_map[e];
        if (ne < 0) {
            if (m.w[e] != 0) throw SurfaceError(std::string("crush: weight lost on ") + what);
            continue;
        }
        if (set[ne] && out.w[ne] != m.w[e])
            throw SurfaceError(std::string("crush: merged edges disagree on ") + what);
        out.w[ne] = m.w[e];
        set[ne] = true;
    }
    return out;
}

}  // namespace

CrushResult crush(const ShortForm& sf) {
    CrushResult res;
    const std::size_t k = sf.components.size();
    res.scars.resize(k, {-1, -1});
    res.multiplicities.resize(k);
    for (std::size_t j = 0; j < k; ++j) res.multiplicities[j] = sf.components[j].multiplicity;

    const auto base_euler = sf.tri.euler_data();
    int base_chi = 0;
    for (const auto& d : base_euler) base_chi += d.chi;

    Work w;
    w.tri = sf.tri;
    w.total = sf.coords;
    for (std::size_t j = 0; j < k; ++j) {
        w.cls.push_back(sf.components[j].coords);
        w.mult.push_back(sf.components[j].multiplicity);
        w.orig.push_back(static_cast<int>(j));
    }

    long long next_scar = kScarBase;
    long long moves = 0;
    const long long move_budget = 1'000'000;
    std::unordered_set<std::uint64_t> plateau_seen;

    while (!w.cls.empty()) {
        bool progressed = false;
        // components now parallel to a puncture split off a one-holed
        // annulus: retag the puncture, no surgery needed
        for (std::size_t j = 0; j < w.cls.size() && !progressed; ++j) {
            int v = matches_vertex_link(w.tri, w.cls[j]);
            if (v < 0) continue;
            long long near_tag = next_scar++;
            long long far_tag = next_scar++;
            CrushPiece piece;
            piece.genus = 0;
            piece.punctures = {w.tri.vertex_tags()[v], near_tag};
            res.pieces.push_back(std::move(piece));
            auto tags = w.tri.vertex_tags();
            tags[v] = far_tag;
            w.tri.set_vertex_tags(std::move(tags));
            res.scars[w.orig[j]] = {near_tag, far_tag};
            for (int eidx = 0; eidx < w.tri.num_edges(); ++eidx)
                w.total.w[eidx] -= w.mult[j] * w.cls[j].w[eidx];
            w.cls.erase(w.cls.begin() + j);
            w.mult.erase(w.mult.begin() + j);
            w.orig.erase(w.orig.begin() + j);
            progressed = true;
        }
        if (progressed) {
            plateau_seen.clear();
            continue;
        }
        for (std::size_t j = 0; j < w.cls.size() && !progressed; ++j) {
            auto witnesses = crushable_witnesses(w, w.cls[j]);
            if (witnesses.empty()) continue;
            long long near_tag = next_scar++;
            long long far_tag = next_scar++;
            auto ends = w.tri.edge_vertices(witnesses[0]);
            bool loop = ends[0] == ends[1];
            SurgeryOut so = crush_at_edge(w.tri, w.cls[j], witnesses[0], near_tag, far_tag);
            if (!loop) {
                CrushPiece piece;
                piece.genus = 0;
                piece.punctures = {w.tri.vertex_tags()[ends[0]], w.tri.vertex_tags()[ends[1]],
                                   near_tag};
                res.pieces.push_back(std::move(piece));
            }
            res.scars[w.orig[j]] = {near_tag, far_tag};
            int ne = so.tri.num_edges();
            Multicurve nt_total;
            nt_total.w.assign(ne, 0);
            {
                // remove the crushed class before transferring
                Multicurve rest = w.total;
                for (int eidx = 0; eidx < w.tri.num_edges(); ++eidx)
                    rest.w[eidx] -= w.mult[j] * w.cls[j].w[eidx];
                nt_total = remap_coords(rest, so.edge_map, ne, "total");
            }
            std::vector<Multicurve> ncls;
            std::vector<long long> nmult;
            std::vector<int> norig;
            for (std::size_t i = 0; i < w.cls.size(); ++i) {
                if (i == j) continue;
                ncls.push_back(remap_coords(w.cls[i], so.edge_map, ne, "class"));
                nmult.push_back(w.mult[i]);
                norig.push_back(w.orig[i]);
            }
            w.tri = std::move(so.tri);
            w.total = std::move(nt_total);
            w.cls = std::move(ncls);
            w.mult = std::move(nmult);
            w.orig = std::move(norig);
            progressed = true;
        }
        if (progressed) {
            plateau_seen.clear();
            continue;
        }
        // no class is directly crushable: move toward a crushable position
        if (++moves > move_budget) throw BudgetError("crush: move budget exhausted");
        int best = -1;
        long long best_delta = 0;
        for (int e = 0; e < w.tri.num_edges(); ++e) {
            if (!w.tri.flippable(e)) continue;
            long long d = flip_delta(w.tri, w.total, e);
            if (d < best_delta) {
                best_delta = d;
                best = e;
            }
        }
        if (best >= 0) {
            apply_flip(w, best);
            plateau_seen.clear();
            continue;
        }
        // level walk
        plateau_seen.insert(state_hash(w.tri, w.total));
        bool stepped = false;
        for (int e = 0; e < w.tri.num_edges() && !stepped; ++e) {
            if (!w.tri.flippable(e)) continue;
            if (flip_delta(w.tri, w.total, e) != 0) continue;
            Work trial = w;
            apply_flip(trial, e);
            if (plateau_seen.insert(state_hash(trial.tri, trial.total)).second) {
                w = std::move(trial);
                stepped = true;
            }
        }
        if (!stepped) throw BudgetError("crush: stuck with no admissible move");
    }

    // collect the surviving triangulated pieces
    auto comps = w.tri.components();
    auto eu = w.tri.euler_data();
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
        CrushPiece piece;
        piece.genus = eu[ci].genus;
        std::set<int> verts;
        for (int t : comps[ci])
            for (int c = 0; c < 3; ++c) verts.insert(w.tri.vertex_of_corner(3 * t + c));
        for (int v : verts) piece.punctures.push_back(w.tri.vertex_tags()[v]);
        std::sort(piece.punctures.begin(), piece.punctures.end());
        res.pieces.push_back(std::move(piece));
    }
    res.triangulated.push_back(std::move(w.tri));

    int total_chi = 0;
    for (const auto& p : res.pieces) total_chi += p.chi();
    if (total_chi != base_chi) throw SurfaceError("crush: Euler characteristic not conserved");
    return res;
}

}  // namespace trackstat
