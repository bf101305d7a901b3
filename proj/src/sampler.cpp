#include "trackstat/sampler.hpp"

#include <algorithm>
#include <cstring>

namespace trackstat {

namespace {

// ragged (consumed, interface) plane: row c holds r in [-h(c), h(c)],
// h(c) = min(c, L - c); states outside cannot both be reached and completed
struct Layout {
    long long L;
    std::vector<std::size_t> row_offset;  // size L+2

    explicit Layout(long long L_) : L(L_), row_offset(L_ + 2) {
        std::size_t off = 0;
        for (long long c = 0; c <= L; ++c) {
            row_offset[c] = off;
            off += 2 * static_cast<std::size_t>(half(c)) + 1;
        }
        row_offset[L + 1] = off;
    }
    long long half(long long c) const { return std::min(c, L - c); }
    std::size_t size() const { return row_offset[L + 1]; }
    bool in_range(long long r, long long c) const {
        if (c < 0 || c > L) return false;
        long long h = half(c);
        return r >= -h && r <= h;
    }
    std::size_t at(long long r, long long c) const {
        return row_offset[c] + static_cast<std::size_t>(r + half(c));
    }
};

inline u128 checked_add(u128 a, u128 b) {
    u128 s = a + b;
    if (s < a) throw SamplerError("sampler: count overflow");
    return s;
}

}  // namespace

TrackSampler::TrackSampler(const TrainTrack& track, long long length_bound)
    : length_bound_(length_bound), num_branches_(track.num_branches()) {
    if (length_bound < 0) throw SamplerError("negative length bound");
    compile(track);
    if (!fast_) {
        polytope_.emplace(track.length_polytope(length_bound));
        total_ = polytope_->count();
    }
}

void TrackSampler::compile(const TrainTrack& track) {
    const int m = num_branches_;
    auto rows = track.switch_rows();
    const int k = static_cast<int>(rows.size());

    // branch -> incident (switch, sign); at most two with unit coefficients
    std::vector<std::vector<std::pair<int, int>>> inc(m);
    for (int s = 0; s < k; ++s) {
        for (int i = 0; i < m; ++i) {
            int c = rows[s][i];
            if (c == 0) continue;
            if (c != 1 && c != -1) return;  // not an arc structure
            inc[i].emplace_back(s, c);
        }
    }
    for (int i = 0; i < m; ++i)
        if (!inc[i].empty() && inc[i].size() != 2) return;

    // orient switches so every branch meets its two switches with opposite
    // signs; parity 2-coloring of the switch graph
    std::vector<int> eps(k, 0);
    for (int s0 = 0; s0 < k; ++s0) {
        if (eps[s0] != 0) continue;
        eps[s0] = 1;
        std::vector<int> stack{s0};
        while (!stack.empty()) {
            int s = stack.back();
            stack.pop_back();
            for (int i = 0; i < m; ++i) {
                if (inc[i].size() != 2) continue;
                auto [s1, g1] = inc[i][0];
                auto [s2, g2] = inc[i][1];
                if (s1 != s && s2 != s) continue;
                int want = -eps[s] * g1 * g2;  // eps[s1]*eps[s2] = -g1*g2
                int other = (s1 == s) ? s2 : s1;
                if (eps[other] == 0) {
                    eps[other] = want;
                    stack.push_back(other);
                } else if (eps[other] != want) {
                    return;  // frustrated cycle
                }
            }
        }
    }

    std::vector<int> remaining(k, 0);
    for (int i = 0; i < m; ++i)
        for (auto [s, g] : inc[i]) ++remaining[s];

    int anchor = -1, other = -1;
    std::vector<Level> levels(m);
    for (int d = 0; d < m; ++d) {
        Level& lv = levels[d];
        if (inc[d].empty()) {
            lv = Level{1, 0, Level::Mode::Free, 0};
            continue;
        }
        int u = inc[d][0].first, su = inc[d][0].second * eps[inc[d][0].first];
        int w = inc[d][1].first, sw = inc[d][1].second * eps[inc[d][1].first];
        if (su + sw != 0) return;  // coloring failed to antisymmetrize
        bool u_open = (u == anchor || u == other);
        bool w_open = (w == anchor || w == other);
        if (!u_open && w_open) {
            std::swap(u, w);
            std::swap(su, sw);
            std::swap(u_open, w_open);
        }
        int open_count = (anchor >= 0) + (other >= 0);
        bool u_closes = remaining[u] == 1;
        bool w_closes = remaining[w] == 1;

        if (!u_open && !w_open) {
            if (open_count != 0) return;
            if (u_closes || w_closes) return;  // single-arc switch: infeasible anyway
            anchor = u;
            other = w;
            lv = Level{1, su, Level::Mode::Free, 0};
        } else if (u_open && !w_open) {
            if (open_count == 1) {
                if (u_closes) {
                    // anchor swaps to the fresh switch; r was 0 so keep Zero
                    lv = Level{1, su, Level::Mode::Zero, 0};
                    anchor = w;
                    other = -1;
                } else {
                    lv = Level{1, su, Level::Mode::Free, 0};
                    other = w;
                }
            } else {
                if (!u_closes) return;  // would leave three switches open
                if (u == other) {
                    lv = Level{1, 0, Level::Mode::Forced, su};
                    other = w;
                } else {
                    lv = Level{-1, 0, Level::Mode::Forced, -su};
                    anchor = other;
                    other = w;
                }
            }
        } else {
            // both endpoints open
            if (open_count != 2) return;
            int sa = (u == anchor) ? su : sw;
            if (u_closes || w_closes) {
                lv = Level{1, sa, Level::Mode::Zero, 0};
                if (u_closes && w_closes) {
                    anchor = other = -1;
                } else {
                    int stay = u_closes ? w : u;
                    anchor = stay;
                    other = -1;
                }
            } else {
                lv = Level{1, sa, Level::Mode::Free, 0};
            }
        }
        for (auto [s, g] : inc[d]) --remaining[s];
    }
    if (anchor != -1 || other != -1) return;
    for (int s = 0; s < k; ++s)
        if (remaining[s] != 0) return;

    levels_ = std::move(levels);
    fast_ = true;

    // total = H_0(0, 0): run the backward chain once
    const long long L = length_bound_;
    Layout lay(L);
    std::vector<u128> cur(lay.size()), next;
    for (long long c = 0; c <= L; ++c) {
        // base: all switches closed, interface 0
        if (lay.in_range(0, c)) cur[lay.at(0, c)] = 1;
    }
    next.assign(lay.size(), 0);
    for (int d = num_branches_ - 1; d >= 0; --d) {
        const Level& lv = levels_[d];
        std::fill(next.begin(), next.end(), 0);
        if (lv.mode == Level::Mode::Free) {
            // G(x,y) = H(x,y) + G(x+beta, y+1), computed into cur in place
            for (long long c = L - 1; c >= 0; --c) {
                long long h = lay.half(c);
                for (long long r = -h; r <= h; ++r) {
                    long long rr = r + lv.beta, cc = c + 1;
                    if (lay.in_range(rr, cc))
                        cur[lay.at(r, c)] = checked_add(cur[lay.at(r, c)], cur[lay.at(rr, cc)]);
                }
            }
            for (long long c = 0; c <= L; ++c) {
                long long h = lay.half(c);
                for (long long r = -h; r <= h; ++r) {
                    long long rr = static_cast<long long>(lv.alpha) * r + lv.beta, cc = c + 1;
                    if (lay.in_range(rr, cc)) next[lay.at(r, c)] = cur[lay.at(rr, cc)];
                }
            }
        } else {
            for (long long c = 0; c <= L; ++c) {
                long long h = lay.half(c);
                for (long long r = -h; r <= h; ++r) {
                    long long v, rr;
                    if (lv.mode == Level::Mode::Zero) {
                        v = -static_cast<long long>(lv.alpha) * r * lv.beta;
                        rr = 0;
                    } else {
                        v = static_cast<long long>(lv.sv) * r;
                        rr = static_cast<long long>(lv.alpha) * r;
                    }
                    if (v >= 1 && lay.in_range(rr, c + v)) next[lay.at(r, c)] = cur[lay.at(rr, c + v)];
                }
            }
        }
        std::swap(cur, next);
    }
    total_ = lay.in_range(0, 0) ? from_u128(cur[lay.at(0, 0)]) : BigInt(0);
}

std::vector<long long> TrackSampler::extract_one(const BigInt& index) const {
    std::vector<BigInt> one{index};
    return extract(one)[0];
}

std::vector<std::vector<long long>> TrackSampler::extract(const std::vector<BigInt>& indices) const {
    for (const auto& i : indices)
        if (i < 0 || i >= total_) throw SamplerError("sampler: index out of range");
    if (fast_) return extract_fast(indices);
    std::vector<std::vector<long long>> out;
    out.reserve(indices.size());
    for (const auto& i : indices) {
        IntPoint p = polytope_->ith_point(i);
        std::vector<long long> w;
        w.reserve(p.size());
        for (const auto& x : p) w.push_back(x.convert_to<long long>());
        out.push_back(std::move(w));
    }
    return out;
}

std::vector<std::vector<long long>> TrackSampler::extract_fast(
    const std::vector<BigInt>& indices) const {
    const long long L = length_bound_;
    const int m = num_branches_;
    const std::size_t n = indices.size();
    Layout lay(L);

    struct Walker {
        u128 i;
        long long r = 0, c = 0;
    };
    std::vector<Walker> ws(n);
    const BigInt word = BigInt(1) << 64;
    for (std::size_t j = 0; j < n; ++j) {
        BigInt v = indices[j];
        if ((v >> 128) != 0) throw SamplerError("sampler: index exceeds 128 bits");
        u128 lo = static_cast<u128>((v % word).convert_to<std::uint64_t>());
        u128 hi = static_cast<u128>(((v >> 64) % word).convert_to<std::uint64_t>());
        ws[j].i = (hi << 64) | lo;
    }
    std::vector<std::vector<long long>> out(n, std::vector<long long>(m));

    std::vector<u128> cur(lay.size()), next;
    next.assign(lay.size(), 0);
    for (int d = 0; d < m; ++d) {
        // rebuild H_{d+1} and, for Free levels, its diagonal cumulative
        std::fill(cur.begin(), cur.end(), 0);
        for (long long c = 0; c <= L; ++c)
            if (lay.in_range(0, c)) cur[lay.at(0, c)] = 1;
        for (int k = m - 1; k > d; --k) {
            const Level& lv = levels_[k];
            std::fill(next.begin(), next.end(), 0);
            if (lv.mode == Level::Mode::Free) {
                for (long long c = L - 1; c >= 0; --c) {
                    long long h = lay.half(c);
                    for (long long r = -h; r <= h; ++r) {
                        long long rr = r + lv.beta, cc = c + 1;
                        if (lay.in_range(rr, cc))
                            cur[lay.at(r, c)] = checked_add(cur[lay.at(r, c)], cur[lay.at(rr, cc)]);
                    }
                }
                for (long long c = 0; c <= L; ++c) {
                    long long h = lay.half(c);
                    for (long long r = -h; r <= h; ++r) {
                        long long rr = static_cast<long long>(lv.alpha) * r + lv.beta, cc = c + 1;
                        if (lay.in_range(rr, cc)) next[lay.at(r, c)] = cur[lay.at(rr, cc)];
                    }
                }
            } else {
                for (long long c = 0; c <= L; ++c) {
                    long long h = lay.half(c);
                    for (long long r = -h; r <= h; ++r) {
                        long long v, rr;
                        if (lv.mode == Level::Mode::Zero) {
                            v = -static_cast<long long>(lv.alpha) * r * lv.beta;
                            rr = 0;
                        } else {
                            v = static_cast<long long>(lv.sv) * r;
                            rr = static_cast<long long>(lv.alpha) * r;
                        }
                        if (v >= 1 && lay.in_range(rr, c + v))
                            next[lay.at(r, c)] = cur[lay.at(rr, c + v)];
                    }
                }
            }
            std::swap(cur, next);
        }
        const Level& lv = levels_[d];
        if (lv.mode == Level::Mode::Free) {
            // cur currently holds H_{d+1}; build G in place for cum queries
            for (long long c = L - 1; c >= 0; --c) {
                long long h = lay.half(c);
                for (long long r = -h; r <= h; ++r) {
                    long long rr = r + lv.beta, cc = c + 1;
                    if (lay.in_range(rr, cc))
                        cur[lay.at(r, c)] = checked_add(cur[lay.at(r, c)], cur[lay.at(rr, cc)]);
                }
            }
        }
        auto gval = [&](long long r, long long c) -> u128 {
            return lay.in_range(r, c) ? cur[lay.at(r, c)] : 0;
        };
        for (std::size_t j = 0; j < n; ++j) {
            Walker& wk = ws[j];
            long long v;
            if (lv.mode == Level::Mode::Free) {
                // cum(v) = G(ar+b, c+1) - G(ar+b(v+1), c+v+1)
                long long ar = static_cast<long long>(lv.alpha) * wk.r;
                u128 full = gval(ar + lv.beta, wk.c + 1);
                auto cum = [&](long long vv) -> u128 {
                    return full - gval(ar + static_cast<long long>(lv.beta) * (vv + 1),
                                       wk.c + vv + 1);
                };
                long long lo = 1, hi = L - wk.c;
                while (lo < hi) {
                    long long mid = lo + (hi - lo) / 2;
                    if (wk.i < cum(mid)) hi = mid;
                    else lo = mid + 1;
                }
                v = lo;
                wk.i -= cum(v - 1);
                wk.r = ar + lv.beta * v;
            } else if (lv.mode == Level::Mode::Zero) {
                v = -static_cast<long long>(lv.alpha) * wk.r * lv.beta;
                wk.r = 0;
            } else {
                v = static_cast<long long>(lv.sv) * wk.r;
                wk.r = static_cast<long long>(lv.alpha) * wk.r;
            }
            if (v < 1 || wk.c + v > L) throw SamplerError("sampler: extraction left the table");
            wk.c += v;
            out[j][d] = v;
        }
    }
    for (std::size_t j = 0; j < n; ++j)
        if (ws[j].i != 0) throw SamplerError("sampler: extraction did not consume its index");
    return out;
}

}  // namespace trackstat
