#include "trackstat/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <unordered_map>

#include <boost/multiprecision/integer.hpp>

namespace trackstat {

namespace {

BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

BigInt ceil_div(const BigInt& a, const BigInt& b) {
    return -floor_div(-a, b);
}

BigInt vec_gcd(const std::vector<BigInt>& v) {
    BigInt g = 0;
    for (const auto& x : v) g = boost::multiprecision::gcd(g, x);
    return g;
}

}  // namespace

LinearConstraint LinearConstraint::ge(std::vector<BigInt> a, BigInt b) {
    return LinearConstraint{std::move(a), std::move(b), Rel::Ge};
}

LinearConstraint LinearConstraint::eq(std::vector<BigInt> a, BigInt b) {
    return LinearConstraint{std::move(a), std::move(b), Rel::Eq};
}

LinearConstraint LinearConstraint::le(std::vector<BigInt> a, BigInt b) {
    for (auto& x : a) x = -x;
    return LinearConstraint{std::move(a), -b, Rel::Ge};
}

LinearConstraint LinearConstraint::lt(std::vector<BigInt> a, BigInt b) {
    // over the integers a.x < b is a.x <= b-1
    return le(std::move(a), b - 1);
}

bool LinearConstraint::trivial() const {
    for (const auto& x : coeffs)
        if (x != 0) return false;
    return true;
}

Polytope::Polytope(int ambient_dim, std::vector<LinearConstraint> cons) : Polytope(ambient_dim) {
    for (auto& c : cons) add(std::move(c));
}

void Polytope::add(LinearConstraint c) {
    if (static_cast<int>(c.coeffs.size()) != dim_)
        throw PolytopeError("constraint dimension mismatch");
    cons_.push_back(std::move(c));
}

Polytope Polytope::intersect(const LinearConstraint& c) const {
    Polytope out = *this;
    out.add(c);
    return out;
}

bool Polytope::contains(const IntPoint& p) const {
    if (static_cast<int>(p.size()) != dim_) throw PolytopeError("point dimension mismatch");
    for (const auto& c : cons_) {
        BigInt v = 0;
        for (int i = 0; i < dim_; ++i) v += c.coeffs[i] * p[i];
        if (c.rel == Rel::Ge ? v < c.bound : v != c.bound) return false;
    }
    return true;
}

double Polytope::complexity() const {
    double s = 0;
    auto term = [](const BigInt& x) {
        if (x == 0) return 0.0;
        return std::log(std::fabs(x.convert_to<double>()));
    };
    for (const auto& c : cons_) {
        for (const auto& a : c.coeffs) s += term(a);
        s += term(c.bound);
    }
    return s;
}

std::string Polytope::dump() const {
    std::ostringstream os;
    for (const auto& c : cons_) {
        for (const auto& a : c.coeffs) os << a << ' ';
        os << ' ' << (c.rel == Rel::Ge ? ">=" : "=") << "  " << c.bound << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Counting machinery. Residual systems are counted by coordinate-recursive
// decomposition: equalities with a unit pivot are substituted away exactly,
// the leading variable is enumerated over its tight interval, and results are
// memoized on a canonical serialization of the residual system.
// ---------------------------------------------------------------------------

namespace {

struct OptBound {
    bool finite = false;
    BigInt v;
};

struct Sys {
    int dim = 0;
    std::vector<LinearConstraint> rows;
    std::vector<Interval> box;  // finite per-variable bounds
    bool infeasible = false;
};

// One pass of constraint-driven interval tightening over possibly-unbounded
// intervals. Returns false once a contradiction is found.
struct OpenBox {
    std::vector<OptBound> lo, hi;
};

bool propagate(int dim, const std::vector<LinearConstraint>& rows, OpenBox& box, int rounds) {
    for (int round = 0; round < rounds; ++round) {
        bool changed = false;
        for (const auto& c : rows) {
            for (int dir = 0; dir < (c.rel == Rel::Eq ? 2 : 1); ++dir) {
                // view row as sum a_i x_i >= b (dir 0) or sum -a_i x_i >= -b (dir 1)
                auto coeff = [&](int i) { return dir == 0 ? c.coeffs[i] : -c.coeffs[i]; };
                BigInt b = dir == 0 ? c.bound : -c.bound;
                for (int k = 0; k < dim; ++k) {
                    BigInt ak = coeff(k);
                    if (ak == 0) continue;
                    // bound a_k x_k >= b - max(rest)
                    BigInt rest = 0;
                    bool rest_finite = true;
                    for (int i = 0; i < dim && rest_finite; ++i) {
                        if (i == k) continue;
                        BigInt ai = coeff(i);
                        if (ai == 0) continue;
                        if (ai > 0) {
                            if (!box.hi[i].finite) { rest_finite = false; break; }
                            rest += ai * box.hi[i].v;
                        } else {
                            if (!box.lo[i].finite) { rest_finite = false; break; }
                            rest += ai * box.lo[i].v;
                        }
                    }
                    if (!rest_finite) continue;
                    BigInt rhs = b - rest;
                    if (ak > 0) {
                        BigInt nl = ceil_div(rhs, ak);
                        if (!box.lo[k].finite || nl > box.lo[k].v) {
                            box.lo[k] = {true, nl};
                            changed = true;
                        }
                    } else {
                        BigInt nh = floor_div(rhs, ak);
                        if (!box.hi[k].finite || nh < box.hi[k].v) {
                            box.hi[k] = {true, nh};
                            changed = true;
                        }
                    }
                    if (box.lo[k].finite && box.hi[k].finite && box.lo[k].v > box.hi[k].v)
                        return false;
                }
            }
        }
        if (!changed) break;
    }
    return true;
}

// Fourier-Motzkin projection onto coordinate `keep`. Exact over the
// rationals; rows are gcd-reduced and deduplicated to curb growth.
struct FMRow {
    std::vector<BigInt> a;
    BigInt b;
};

void fm_normalize(FMRow& r) {
    BigInt g = vec_gcd(r.a);
    if (g > 1) {
        for (auto& x : r.a) x /= g;
        r.b = ceil_div(r.b, g);
    }
}

// Returns {feasible, lo, hi}; unbounded side reported as !finite.
struct FMResult {
    bool feasible = true;
    OptBound lo, hi;
};

FMResult fm_project(int dim, const std::vector<LinearConstraint>& rows0, int keep,
                    std::size_t row_cap) {
    std::vector<FMRow> rows;
    for (const auto& c : rows0) {
        rows.push_back({c.coeffs, c.bound});
        if (c.rel == Rel::Eq) {
            FMRow neg;
            neg.a.reserve(dim);
            for (const auto& x : c.coeffs) neg.a.push_back(-x);
            neg.b = -c.bound;
            rows.push_back(std::move(neg));
        }
    }
    for (int k = 0; k < dim; ++k) {
        if (k == keep) continue;
        std::vector<FMRow> pos, neg, zero;
        for (auto& r : rows) {
            if (r.a[k] > 0) pos.push_back(std::move(r));
            else if (r.a[k] < 0) neg.push_back(std::move(r));
            else zero.push_back(std::move(r));
        }
        rows = std::move(zero);
        for (const auto& p : pos) {
            for (const auto& n : neg) {
                FMRow m;
                m.a.resize(dim);
                BigInt cp = -n.a[k], cn = p.a[k];
                for (int i = 0; i < dim; ++i) m.a[i] = cp * p.a[i] + cn * n.a[i];
                m.b = cp * p.b + cn * n.b;
                fm_normalize(m);
                rows.push_back(std::move(m));
                if (rows.size() > row_cap)
                    throw PolytopeError("bounding box: projection too large");
            }
        }
        std::sort(rows.begin(), rows.end(), [](const FMRow& x, const FMRow& y) {
            if (x.a != y.a) return x.a < y.a;
            return x.b < y.b;
        });
        rows.erase(std::unique(rows.begin(), rows.end(),
                               [](const FMRow& x, const FMRow& y) {
                                   return x.a == y.a && x.b == y.b;
                               }),
                   rows.end());
    }
    FMResult res;
    for (const auto& r : rows) {
        BigInt a = r.a[keep];
        if (a == 0) {
            if (r.b > 0) { res.feasible = false; return res; }
            continue;
        }
        if (a > 0) {
            BigInt nl = ceil_div(r.b, a);
            if (!res.lo.finite || nl > res.lo.v) res.lo = {true, nl};
        } else {
            BigInt nh = floor_div(r.b, a);
            if (!res.hi.finite || nh < res.hi.v) res.hi = {true, nh};
        }
    }
    if (res.lo.finite && res.hi.finite && res.lo.v > res.hi.v) res.feasible = false;
    return res;
}

void normalize_row(LinearConstraint& c, bool& infeasible) {
    BigInt g = vec_gcd(c.coeffs);
    if (g == 0) {
        // constant row
        if (c.rel == Rel::Ge ? (0 < c.bound) : (c.bound != 0)) infeasible = true;
        return;
    }
    if (g > 1) {
        if (c.rel == Rel::Eq) {
            if (c.bound % g != 0) { infeasible = true; return; }
            c.bound /= g;
        } else {
            c.bound = ceil_div(c.bound, g);
        }
        for (auto& x : c.coeffs) x /= g;
    }
}

void drop_constant_rows(Sys& s) {
    std::vector<LinearConstraint> keep;
    for (auto& c : s.rows) {
        normalize_row(c, s.infeasible);
        if (s.infeasible) return;
        if (!c.trivial()) keep.push_back(std::move(c));
    }
    s.rows = std::move(keep);
}

// substitute x_k := value, removing the variable
Sys substitute_value(const Sys& s, int k, const BigInt& v) {
    Sys out;
    out.dim = s.dim - 1;
    out.rows.reserve(s.rows.size());
    for (const auto& c : s.rows) {
        LinearConstraint nc;
        nc.rel = c.rel;
        nc.bound = c.bound - c.coeffs[k] * v;
        nc.coeffs.reserve(out.dim);
        for (int i = 0; i < s.dim; ++i)
            if (i != k) nc.coeffs.push_back(c.coeffs[i]);
        nc.bound = nc.bound;
        out.rows.push_back(std::move(nc));
    }
    for (int i = 0; i < s.dim; ++i)
        if (i != k) out.box.push_back(s.box[i]);
    drop_constant_rows(out);
    return out;
}

// substitute x_k := sign * (rhs - sum other coeffs), from an equality with
// unit pivot; the pivot variable's box becomes two inequalities
Sys substitute_equality(const Sys& s, std::size_t row, int k) {
    const LinearConstraint& e = s.rows[row];
    BigInt ak = e.coeffs[k];  // +-1
    // x_k = (e.bound - sum_{i != k} a_i x_i) / ak
    Sys out;
    out.dim = s.dim - 1;
    auto reduced = [&](const std::vector<BigInt>& coeffs, const BigInt& bound, const BigInt& ck,
                       Rel rel) {
        // coeffs.x + ck * x_k  (rel)  bound, with ak * x_k = e.bound - rest
        LinearConstraint nc;
        nc.rel = rel;
        nc.coeffs.reserve(out.dim);
        BigInt factor = ck * ak;  // ck / ak since ak in {1,-1}
        for (int i = 0; i < s.dim; ++i) {
            if (i == k) continue;
            nc.coeffs.push_back(coeffs[i] - factor * e.coeffs[i]);
        }
        nc.bound = bound - factor * e.bound;
        return nc;
    };
    for (std::size_t r = 0; r < s.rows.size(); ++r) {
        if (r == row) continue;
        const auto& c = s.rows[r];
        out.rows.push_back(reduced(c.coeffs, c.bound, c.coeffs[k], c.rel));
    }
    // box of x_k: lo <= x_k <= hi becomes two Ge rows on the expression
    {
        std::vector<BigInt> unit(s.dim, 0);
        unit[k] = 1;
        out.rows.push_back(reduced(unit, s.box[k].lo, BigInt(1), Rel::Ge));
        std::vector<BigInt> munit(s.dim, 0);
        munit[k] = -1;
        out.rows.push_back(reduced(munit, -s.box[k].hi, BigInt(-1), Rel::Ge));
    }
    for (int i = 0; i < s.dim; ++i)
        if (i != k) out.box.push_back(s.box[i]);
    drop_constant_rows(out);
    return out;
}

void tighten_box(Sys& s) {
    if (s.infeasible || s.dim == 0) return;
    OpenBox ob;
    ob.lo.resize(s.dim);
    ob.hi.resize(s.dim);
    for (int i = 0; i < s.dim; ++i) {
        ob.lo[i] = {true, s.box[i].lo};
        ob.hi[i] = {true, s.box[i].hi};
    }
    if (!propagate(s.dim, s.rows, ob, 8)) {
        s.infeasible = true;
        return;
    }
    for (int i = 0; i < s.dim; ++i) {
        s.box[i].lo = ob.lo[i].v;
        s.box[i].hi = ob.hi[i].v;
        if (s.box[i].empty()) s.infeasible = true;
    }
}

std::string sys_key(const Sys& s) {
    std::ostringstream os;
    os << s.dim << '|';
    std::vector<std::string> lines;
    for (const auto& c : s.rows) {
        std::ostringstream ro;
        ro << (c.rel == Rel::Eq ? 'E' : 'G');
        for (const auto& a : c.coeffs) ro << a << ',';
        ro << ';' << c.bound;
        lines.push_back(ro.str());
    }
    std::sort(lines.begin(), lines.end());
    for (const auto& l : lines) os << l << '|';
    for (const auto& iv : s.box) os << iv.lo << ':' << iv.hi << '|';
    return os.str();
}

thread_local std::unordered_map<std::string, BigInt> g_count_cache;
constexpr std::size_t kCacheCap = 1u << 22;

BigInt count_single_var(const Sys& s) {
    BigInt lo = s.box[0].lo, hi = s.box[0].hi;
    for (const auto& c : s.rows) {
        BigInt a = c.coeffs[0];
        if (a == 0) {
            if (c.rel == Rel::Ge ? (0 < c.bound) : (c.bound != 0)) return 0;
            continue;
        }
        if (c.rel == Rel::Eq) {
            if (c.bound % a != 0) return 0;
            BigInt v = c.bound / a;
            if (v < lo || v > hi) return 0;
            lo = hi = v;
        } else if (a > 0) {
            lo = std::max(lo, ceil_div(c.bound, a));
        } else {
            hi = std::min(hi, floor_div(c.bound, a));
        }
        if (lo > hi) return 0;
    }
    return hi - lo + 1;
}

BigInt count_rec(Sys s) {
    if (s.infeasible) return 0;
    if (s.dim == 0) return 1;  // constant rows already validated
    tighten_box(s);
    if (s.infeasible) return 0;
    if (s.dim == 1) return count_single_var(s);

    // pinned variables first
    for (int k = 0; k < s.dim; ++k) {
        if (s.box[k].lo == s.box[k].hi) return count_rec(substitute_value(s, k, s.box[k].lo));
    }
    // exact elimination of a unit-pivot equality
    for (std::size_t r = 0; r < s.rows.size(); ++r) {
        if (s.rows[r].rel != Rel::Eq) continue;
        for (int k = 0; k < s.dim; ++k) {
            const BigInt& a = s.rows[r].coeffs[k];
            if (a == 1 || a == -1) return count_rec(substitute_equality(s, r, k));
        }
    }

    std::string key = sys_key(s);
    auto it = g_count_cache.find(key);
    if (it != g_count_cache.end()) return it->second;

    BigInt total = 0;
    for (BigInt v = s.box[0].lo; v <= s.box[0].hi; ++v) total += count_rec(substitute_value(s, 0, v));

    if (g_count_cache.size() < kCacheCap) g_count_cache.emplace(std::move(key), total);
    return total;
}

Sys make_sys(const Polytope& p) {
    Sys s;
    s.dim = p.ambient_dim();
    s.rows = p.constraints();
    drop_constant_rows(s);
    if (s.infeasible) return s;
    std::vector<Interval> box;
    box.reserve(s.dim);
    for (int d = 0; d < s.dim; ++d) {
        FMResult r = fm_project(s.dim, s.rows, d, 200000);
        if (!r.feasible) {
            s.infeasible = true;
            return s;
        }
        if (!r.lo.finite || !r.hi.finite) throw PolytopeError("unbounded polytope");
        box.push_back({r.lo.v, r.hi.v});
    }
    s.box = std::move(box);
    return s;
}

}  // namespace

std::vector<Interval> Polytope::bounding_box() const {
    Sys s = make_sys(*this);
    if (s.infeasible) {
        // empty polytope: empty intervals
        return std::vector<Interval>(dim_, Interval{1, 0});
    }
    return s.box;
}

BigInt Polytope::count() const {
    Sys s = make_sys(*this);
    return count_rec(std::move(s));
}

IntPoint Polytope::ith_point(const BigInt& index) const {
    if (index < 0) throw PolytopeError("index out of range");
    Sys s = make_sys(*this);
    if (s.infeasible) throw PolytopeError("index out of range");
    BigInt i = index;
    {
        BigInt total = count_rec(s);
        if (index >= total) throw PolytopeError("index out of range");
    }
    IntPoint out;
    out.reserve(dim_);
    Sys cur = std::move(s);
    for (int d = 0; d < dim_; ++d) {
        tighten_box(cur);
        BigInt lo = cur.box[0].lo, hi = cur.box[0].hi;
        // smallest v with |{x_0 <= v}| > i
        while (lo < hi) {
            BigInt mid = floor_div(lo + hi, 2);
            Sys cut = cur;
            cut.box[0].hi = mid;
            BigInt c = count_rec(std::move(cut));
            if (i < c) hi = mid;
            else lo = mid + 1;
        }
        BigInt v = lo;
        if (v > cur.box[0].lo) {
            Sys below = cur;
            below.box[0].hi = v - 1;
            i -= count_rec(std::move(below));
        }
        out.push_back(v);
        cur = substitute_value(cur, 0, v);
    }
    return out;
}

IntPoint Polytope::sample_uniform(Rng& rng) const {
    BigInt n = count();
    if (n == 0) throw PolytopeError("empty polytope");
    BigInt i = rng.uniform_below(n);
    return ith_point(i);
}

}  // namespace trackstat
