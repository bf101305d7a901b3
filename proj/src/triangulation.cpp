#include "trackstat/triangulation.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace trackstat {

Triangulation::Triangulation(std::vector<int> glued) : glued_(std::move(glued)) {
    const int n = static_cast<int>(glued_.size());
    edge_of_.assign(n, -1);
    int next = 0;
    for (int s = 0; s < n; ++s) {
        if (edge_of_[s] >= 0) continue;
        if (glued_[s] < 0 || glued_[s] >= n) throw SurfaceError("triangulation: bad gluing");
        edge_of_[s] = next;
        edge_of_[glued_[s]] = next;
        ++next;
    }
    rebuild();
    vertex_tags_.resize(num_vertices_);
    std::iota(vertex_tags_.begin(), vertex_tags_.end(), 0);
}

Triangulation::Triangulation(std::vector<int> glued, std::vector<int> edge_of)
    : glued_(std::move(glued)), edge_of_(std::move(edge_of)) {
    rebuild();
    vertex_tags_.resize(num_vertices_);
    std::iota(vertex_tags_.begin(), vertex_tags_.end(), 0);
}

void Triangulation::rebuild() {
    const int n = static_cast<int>(glued_.size());
    if (n == 0 || n % 3 != 0) throw SurfaceError("triangulation: slot count not a multiple of 3");
    if (static_cast<int>(edge_of_.size()) != n) throw SurfaceError("triangulation: edge map size");
    for (int s = 0; s < n; ++s) {
        if (glued_[s] < 0 || glued_[s] >= n || glued_[s] == s || glued_[glued_[s]] != s)
            throw SurfaceError("triangulation: gluing is not a fixed-point-free involution");
        if (edge_of_[s] != edge_of_[glued_[s]])
            throw SurfaceError("triangulation: edge ids disagree across a gluing");
    }
    int E = n / 2;
    edge_slots_.assign(E, {-1, -1});
    for (int s = 0; s < n; ++s) {
        int e = edge_of_[s];
        if (e < 0 || e >= E) throw SurfaceError("triangulation: edge id out of range");
        if (edge_slots_[e][0] < 0) edge_slots_[e][0] = s;
        else if (edge_slots_[e][1] < 0) edge_slots_[e][1] = s;
        else throw SurfaceError("triangulation: edge id used more than twice");
    }
    for (int e = 0; e < E; ++e)
        if (edge_slots_[e][1] < 0) throw SurfaceError("triangulation: edge id used once");
    // vertex orbits: from corner (t,c), cross slot (t,c+1), land on its
    // partner (t',s'), arrive at corner (t',s'+1)
    corner_vertex_.assign(n, -1);
    num_vertices_ = 0;
    for (int c0 = 0; c0 < n; ++c0) {
        if (corner_vertex_[c0] >= 0) continue;
        int v = num_vertices_++;
        int c = c0;
        do {
            corner_vertex_[c] = v;
            c = next_corner(c);
        } while (c != c0);
    }
}

int Triangulation::next_corner(int corner) const {
    int t = corner / 3, c = corner % 3;
    int q = glued_[3 * t + (c + 1) % 3];
    return 3 * (q / 3) + (q % 3 + 1) % 3;
}

std::array<int, 2> Triangulation::edge_vertices(int e) const {
    int s = edge_slots_[e][0];
    int t = s / 3, k = s % 3;
    return {corner_vertex_[3 * t + (k + 1) % 3], corner_vertex_[3 * t + (k + 2) % 3]};
}

bool Triangulation::flippable(int e) const {
    return edge_slots_[e][0] / 3 != edge_slots_[e][1] / 3;
}

void Triangulation::set_vertex_tags(std::vector<long long> tags) {
    if (static_cast<int>(tags.size()) != num_vertices_)
        throw SurfaceError("vertex tag count mismatch");
    vertex_tags_ = std::move(tags);
}

std::vector<std::vector<int>> Triangulation::components() const {
    int F = num_triangles();
    std::vector<int> comp(F, -1);
    std::vector<std::vector<int>> out;
    for (int t0 = 0; t0 < F; ++t0) {
        if (comp[t0] >= 0) continue;
        int id = static_cast<int>(out.size());
        out.emplace_back();
        std::vector<int> stack{t0};
        comp[t0] = id;
        while (!stack.empty()) {
            int t = stack.back();
            stack.pop_back();
            out[id].push_back(t);
            for (int s = 0; s < 3; ++s) {
                int u = glued_[3 * t + s] / 3;
                if (comp[u] < 0) {
                    comp[u] = id;
                    stack.push_back(u);
                }
            }
        }
    }
    for (auto& c : out) std::sort(c.begin(), c.end());
    return out;
}

std::vector<Triangulation::EulerData> Triangulation::euler_data() const {
    std::vector<EulerData> out;
    for (const auto& tris : components()) {
        std::vector<bool> in_comp(num_triangles(), false);
        for (int t : tris) in_comp[t] = true;
        int F = static_cast<int>(tris.size());
        int E = 0;
        for (const auto& es : edge_slots_)
            if (in_comp[es[0] / 3]) ++E;
        std::vector<bool> seen_vertex(num_vertices_, false);
        int V = 0;
        for (int t : tris)
            for (int c = 0; c < 3; ++c) {
                int v = corner_vertex_[3 * t + c];
                if (!seen_vertex[v]) {
                    seen_vertex[v] = true;
                    ++V;
                }
            }
        int closed_chi = V - E + F;  // the complex closes the punctures
        if ((2 - closed_chi) % 2 != 0 || closed_chi > 2)
            throw SurfaceError("euler_data: non-integral or negative genus");
        EulerData d;
        d.vertices = V;
        d.edges = E;
        d.faces = F;
        d.genus = (2 - closed_chi) / 2;
        d.punctures = V;
        d.chi = F - E;  // = 2 - 2g - V
        out.push_back(d);
    }
    return out;
}

// --------------------------- text form -------------------------------------

Triangulation Triangulation::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int g = -1, n = -1;
    std::vector<std::array<int, 3>> rows;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "surface") {
            if (!(ls >> g >> n) || g < 0 || n <= 0) throw SurfaceError("bad surface header");
            continue;
        }
        std::array<int, 3> row;
        row[0] = std::stoi(first);
        if (!(ls >> row[1] >> row[2])) throw SurfaceError("triangle line needs three labels");
        rows.push_back(row);
    }
    if (g < 0) throw SurfaceError("missing surface header");
    if (rows.empty()) throw SurfaceError("no triangles");
    std::map<int, int> pos_slot, neg_slot;
    for (int t = 0; t < static_cast<int>(rows.size()); ++t) {
        for (int s = 0; s < 3; ++s) {
            int lbl = rows[t][s];
            if (lbl == 0) throw SurfaceError("edge labels are signed and nonzero");
            auto& side = lbl > 0 ? pos_slot : neg_slot;
            int key = std::abs(lbl);
            if (side.count(key)) throw SurfaceError("inconsistent gluing: label reused with same sign");
            side[key] = 3 * t + s;
        }
    }
    if (pos_slot.size() != neg_slot.size() || pos_slot.size() != rows.size() * 3 / 2)
        throw SurfaceError("inconsistent gluing: labels must appear once with each sign");
    std::vector<int> glued(rows.size() * 3, -1);
    for (const auto& [key, s] : pos_slot) {
        auto it = neg_slot.find(key);
        if (it == neg_slot.end()) throw SurfaceError("inconsistent gluing: unmatched label");
        glued[s] = it->second;
        glued[it->second] = s;
    }
    Triangulation T(std::move(glued));
    auto eu = T.euler_data();
    if (eu.size() != 1) throw SurfaceError("triangulation is not connected");
    if (eu[0].genus != g || eu[0].punctures != n)
        throw SurfaceError("surface header does not match the gluing");
    return T;
}

std::string Triangulation::serialize() const {
    auto eu = euler_data();
    std::ostringstream os;
    if (eu.size() == 1) os << "surface " << eu[0].genus << ' ' << eu[0].punctures << '\n';
    std::vector<bool> seen(num_edges(), false);
    for (int t = 0; t < num_triangles(); ++t) {
        for (int s = 0; s < 3; ++s) {
            int e = edge_of_[3 * t + s];
            int lbl = e + 1;
            if (seen[e]) lbl = -lbl;
            seen[e] = true;
            os << lbl << (s == 2 ? '\n' : ' ');
        }
    }
    return os.str();
}

// --------------------------- multicurves -----------------------------------

long long Multicurve::total() const {
    long long s = 0;
    for (long long x : w) s += x;
    return s;
}

bool Multicurve::zero() const {
    for (long long x : w)
        if (x != 0) return false;
    return true;
}

long long side_weight(const Triangulation& T, const Multicurve& m, int slot) {
    return m.w[T.edge_of_slot(slot)];
}

long long corner_weight(const Triangulation& T, const Multicurve& m, int corner) {
    int t = corner / 3, c = corner % 3;
    long long a = side_weight(T, m, 3 * t + c);
    long long b = side_weight(T, m, 3 * t + (c + 1) % 3);
    long long cc = side_weight(T, m, 3 * t + (c + 2) % 3);
    long long num = b + cc - a;
    if (num < 0 || num % 2 != 0) throw SurfaceError("invalid multicurve coordinates at a corner");
    return num / 2;
}

bool valid_multicurve(const Triangulation& T, const Multicurve& m, std::string* why) {
    if (static_cast<int>(m.w.size()) != T.num_edges()) {
        if (why) *why = "coordinate count differs from edge count";
        return false;
    }
    for (long long x : m.w)
        if (x < 0) {
            if (why) *why = "negative edge weight";
            return false;
        }
    if (m.zero()) {
        if (why) *why = "identically zero";
        return false;
    }
    for (int t = 0; t < T.num_triangles(); ++t) {
        long long a = side_weight(T, m, 3 * t), b = side_weight(T, m, 3 * t + 1),
                  c = side_weight(T, m, 3 * t + 2);
        if ((a + b + c) % 2 != 0) {
            if (why) *why = "odd triangle total";
            return false;
        }
        if (a > b + c || b > a + c || c > a + b) {
            if (why) *why = "triangle inequality violated";
            return false;
        }
    }
    return true;
}

Triangulation flip(const Triangulation& T, int e) {
    auto slots = T.slots_of_edge(e);
    if (slots[0] / 3 == slots[1] / 3) throw SurfaceError("unflippable edge (self-glued quadrilateral)");
    int t1 = slots[0] / 3, s1 = slots[0] % 3;
    int t2 = slots[1] / 3, s2 = slots[1] % 3;
    int a = 3 * t1 + (s1 + 1) % 3, b = 3 * t1 + (s1 + 2) % 3;
    int c = 3 * t2 + (s2 + 1) % 3, d = 3 * t2 + (s2 + 2) % 3;
    // new slot roles: t1 -> (b, c, e'), t2 -> (d, a, e')
    std::vector<int> remap(T.num_slots());
    std::iota(remap.begin(), remap.end(), 0);
    remap[a] = 3 * t2 + 1;
    remap[b] = 3 * t1 + 0;
    remap[c] = 3 * t1 + 1;
    remap[d] = 3 * t2 + 0;
    remap[slots[0]] = 3 * t1 + 2;
    remap[slots[1]] = 3 * t2 + 2;
    std::vector<int> glued(T.num_slots());
    std::vector<int> edge_of(T.num_slots());
    for (int s = 0; s < T.num_slots(); ++s) {
        glued[remap[s]] = remap[T.partner(s)];
        edge_of[remap[s]] = T.edge_of_slot(s);
    }
    Triangulation out(std::move(glued), std::move(edge_of));

    // transport puncture tags: quad corners move, everything else stays put
    std::vector<int> new_corner_to_old(T.num_slots());
    std::iota(new_corner_to_old.begin(), new_corner_to_old.end(), 0);
    int oX = 3 * t1 + s1, oQ = 3 * t1 + (s1 + 1) % 3, oP = 3 * t1 + (s1 + 2) % 3;
    int oY = 3 * t2 + s2;
    new_corner_to_old[3 * t1 + 0] = oY;  // corner between c and e'
    new_corner_to_old[3 * t1 + 1] = oX;
    new_corner_to_old[3 * t1 + 2] = oQ;
    new_corner_to_old[3 * t2 + 0] = oX;
    new_corner_to_old[3 * t2 + 1] = oY;
    new_corner_to_old[3 * t2 + 2] = oP;
    std::vector<long long> tags(out.num_vertices());
    for (int c = 0; c < out.num_slots(); ++c)
        tags[out.vertex_of_corner(c)] = T.vertex_tags()[T.vertex_of_corner(new_corner_to_old[c])];
    out.set_vertex_tags(std::move(tags));
    return out;
}

std::pair<Triangulation, Multicurve> flip(const Triangulation& T, int e, const Multicurve& m) {
    auto slots = T.slots_of_edge(e);
    if (slots[0] / 3 == slots[1] / 3) throw SurfaceError("unflippable edge (self-glued quadrilateral)");
    int t1 = slots[0] / 3, s1 = slots[0] % 3;
    int t2 = slots[1] / 3, s2 = slots[1] % 3;
    long long wa = m.w[T.edge_of_slot(3 * t1 + (s1 + 1) % 3)];
    long long wb = m.w[T.edge_of_slot(3 * t1 + (s1 + 2) % 3)];
    long long wc = m.w[T.edge_of_slot(3 * t2 + (s2 + 1) % 3)];
    long long wd = m.w[T.edge_of_slot(3 * t2 + (s2 + 2) % 3)];
    Triangulation nt = flip(T, e);
    // edge ids are preserved by the slot remap, including e as the new diagonal
    Multicurve nm = m;
    nm.w[e] = std::max(wa + wc, wb + wd) - m.w[e];
    return {std::move(nt), std::move(nm)};
}

Multicurve edge_link(const Triangulation& T, int e) {
    auto ends = T.edge_vertices(e);
    Multicurve out;
    out.w.assign(T.num_edges(), 0);
    for (int f = 0; f < T.num_edges(); ++f) {
        if (f == e) continue;
        auto fe = T.edge_vertices(f);
        long long cnt = 0;
        for (int k = 0; k < 2; ++k)
            if (fe[k] == ends[0] || fe[k] == ends[1]) ++cnt;
        out.w[f] = cnt;
    }
    return out;
}

Multicurve vertex_link(const Triangulation& T, int v) {
    Multicurve out;
    out.w.assign(T.num_edges(), 0);
    for (int f = 0; f < T.num_edges(); ++f) {
        auto fe = T.edge_vertices(f);
        out.w[f] = (fe[0] == v ? 1 : 0) + (fe[1] == v ? 1 : 0);
    }
    return out;
}

long long ComponentList::num_components() const {
    long long n = 0;
    for (long long m : multiplicity) n += m;
    return n;
}

ComponentList trace_components(const Triangulation& T, const Multicurve& m) {
    std::string why;
    if (!valid_multicurve(T, m, &why)) throw SurfaceError("trace: invalid multicurve: " + why);
    // strand views: (slot, pos) with pos in [0, w(edge)); crossing the edge
    // maps (slot, pos) to (partner, w-1-pos)
    std::vector<long long> offset(T.num_slots() + 1, 0);
    for (int s = 0; s < T.num_slots(); ++s)
        offset[s + 1] = offset[s] + m.w[T.edge_of_slot(s)];
    std::vector<bool> visited(static_cast<std::size_t>(offset.back()), false);
    auto vid = [&](int slot, long long pos) { return offset[slot] + pos; };

    ComponentList out;
    std::vector<long long> cw(T.num_edges());
    for (int s0 = 0; s0 < T.num_slots(); ++s0) {
        long long w0 = m.w[T.edge_of_slot(s0)];
        for (long long p0 = 0; p0 < w0; ++p0) {
            if (visited[vid(s0, p0)]) continue;
            std::fill(cw.begin(), cw.end(), 0);
            int slot = s0;
            long long pos = p0;
            do {
                // mark both views of this strand and count the crossing
                long long w = m.w[T.edge_of_slot(slot)];
                int mate = T.partner(slot);
                visited[vid(slot, pos)] = true;
                visited[vid(mate, w - 1 - pos)] = true;
                ++cw[T.edge_of_slot(slot)];
                // transit the triangle of `slot`
                int t = slot / 3, s = slot % 3;
                long long x_start = corner_weight(T, m, 3 * t + (s + 1) % 3);
                int exit_slot;
                long long exit_pos;
                if (pos < x_start) {
                    // corner s+1, arc index pos
                    exit_slot = 3 * t + (s + 2) % 3;
                    exit_pos = m.w[T.edge_of_slot(exit_slot)] - 1 - pos;
                } else {
                    // corner s+2, arc index w-1-pos
                    long long j = w - 1 - pos;
                    exit_slot = 3 * t + (s + 1) % 3;
                    exit_pos = j;
                }
                // cross the exit edge
                long long we = m.w[T.edge_of_slot(exit_slot)];
                slot = T.partner(exit_slot);
                pos = we - 1 - exit_pos;
            } while (!(slot == s0 && pos == p0));
            Multicurve comp;
            comp.w = cw;
            bool found = false;
            for (std::size_t k = 0; k < out.coords.size(); ++k) {
                if (out.coords[k].w == comp.w) {
                    ++out.multiplicity[k];
                    found = true;
                    break;
                }
            }
            if (!found) {
                out.coords.push_back(std::move(comp));
                out.multiplicity.push_back(1);
            }
        }
    }
    return out;
}

bool is_peripheral(const Triangulation& T, const Multicurve& component) {
    for (int v = 0; v < T.num_vertices(); ++v)
        if (vertex_link(T, v).w == component.w) return true;
    return false;
}

}  // namespace trackstat
