#include "trackstat/shorten.hpp"

#include <deque>
#include <unordered_set>

namespace trackstat {

long long num_components(const ShortForm& sf) {
    long long n = 0;
    for (const auto& c : sf.components) n += c.multiplicity;
    return n;
}

bool is_primitive(const ShortForm& sf) {
    for (const auto& c : sf.components)
        if (c.multiplicity != 1) return false;
    return true;
}

std::vector<std::pair<int, Multicurve>> parallel_candidates(const Triangulation& T) {
    std::vector<std::pair<int, Multicurve>> out;
    for (int e = 0; e < T.num_edges(); ++e) {
        Multicurve link = edge_link(T, e);
        if (link.zero()) continue;
        std::string why;
        if (!valid_multicurve(T, link, &why)) continue;
        ComponentList comps = trace_components(T, link);
        for (const auto& c : comps.coords) {
            if (is_peripheral(T, c)) continue;
            out.emplace_back(e, c);
        }
    }
    return out;
}

std::optional<ShortForm> detect_short(const Triangulation& T, const Multicurve& m,
                                      bool allow_peripheral) {
    ComponentList comps = trace_components(T, m);
    std::vector<int> peripheral_at(comps.coords.size(), -1);
    for (std::size_t k = 0; k < comps.coords.size(); ++k) {
        for (int v = 0; v < T.num_vertices(); ++v)
            if (vertex_link(T, v).w == comps.coords[k].w) {
                peripheral_at[k] = v;
                break;
            }
        if (peripheral_at[k] >= 0 && !allow_peripheral)
            throw EssentialityError("multicurve has a puncture-parallel component");
    }
    auto candidates = parallel_candidates(T);
    ShortForm sf;
    sf.tri = T;
    sf.coords = m;
    for (std::size_t k = 0; k < comps.coords.size(); ++k) {
        ShortComponent sc;
        sc.coords = comps.coords[k];
        sc.multiplicity = comps.multiplicity[k];
        if (peripheral_at[k] >= 0) {
            sc.vertex = peripheral_at[k];
        } else {
            int witness = -1;
            for (const auto& [e, lc] : candidates) {
                if (lc.w != comps.coords[k].w) continue;
                witness = e;
                // prefer an edge whose two sides lie in distinct triangles;
                // the crush surgery is direct there
                if (T.flippable(e)) break;
            }
            if (witness < 0) return std::nullopt;
            sc.edge = witness;
        }
        sf.components.push_back(std::move(sc));
    }
    return sf;
}

namespace {

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
    for (int s = 0; s < T.num_slots(); ++s) {
        mix(static_cast<std::uint64_t>(T.partner(s)));
        mix(static_cast<std::uint64_t>(T.edge_of_slot(s)) << 32);
    }
    for (long long x : m.w) mix(static_cast<std::uint64_t>(x));
    return h;
}

// best strictly-decreasing flip, ties to the lowest edge label
int best_flip(const Triangulation& T, const Multicurve& m) {
    int best = -1;
    long long best_delta = 0;
    for (int e = 0; e < T.num_edges(); ++e) {
        if (!T.flippable(e)) continue;
        long long d = flip_delta(T, m, e);
        if (d < best_delta) {
            best_delta = d;
            best = e;
        }
    }
    return best;
}

}  // namespace

ShortForm shorten(Triangulation T, Multicurve m, const ShortenOptions& opts) {
    std::string why;
    if (!valid_multicurve(T, m, &why)) throw SurfaceError("shorten: invalid multicurve: " + why);

    long long moves = 0;
    long long since_check = 0;
    if (auto sf = detect_short(T, m)) {
        sf->moves = 0;
        return *sf;
    }
    while (true) {
        if (moves > opts.move_budget) throw BudgetError("shorten: move budget exhausted");
        int e = best_flip(T, m);
        if (e >= 0) {
            auto [nt, nm] = flip(T, e, m);
            T = std::move(nt);
            m = std::move(nm);
            ++moves;
            if (++since_check >= 256) {
                since_check = 0;
                if (auto sf = detect_short(T, m)) {
                    sf->moves = moves;
                    return *sf;
                }
            }
            continue;
        }
        // no strictly decreasing flip: short, or a plateau to walk across
        if (auto sf = detect_short(T, m)) {
            sf->moves = moves;
            return *sf;
        }
        std::unordered_set<std::uint64_t> seen;
        std::deque<std::pair<Triangulation, Multicurve>> queue;
        seen.insert(state_hash(T, m));
        queue.emplace_back(T, m);
        bool advanced = false;
        while (!queue.empty()) {
            if (moves > opts.move_budget) throw BudgetError("shorten: move budget exhausted");
            if (static_cast<int>(seen.size()) > opts.plateau_cap)
                throw BudgetError("shorten: plateau exploration cap exceeded");
            auto [ct, cm] = std::move(queue.front());
            queue.pop_front();
            for (int f = 0; f < ct.num_edges(); ++f) {
                if (!ct.flippable(f)) continue;
                if (flip_delta(ct, cm, f) != 0) continue;
                auto [nt, nm] = flip(ct, f, cm);
                ++moves;
                std::uint64_t h = state_hash(nt, nm);
                if (!seen.insert(h).second) continue;
                if (auto sf = detect_short(nt, nm)) {
                    sf->moves = moves;
                    return *sf;
                }
                if (best_flip(nt, nm) >= 0) {
                    T = std::move(nt);
                    m = std::move(nm);
                    advanced = true;
                    break;
                }
                queue.emplace_back(std::move(nt), std::move(nm));
            }
            if (advanced) break;
        }
        if (!advanced) throw BudgetError("shorten: no admissible move from plateau");
        since_check = 0;
    }
}

}  // namespace trackstat
