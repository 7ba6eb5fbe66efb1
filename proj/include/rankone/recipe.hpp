#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rankone/numeric.hpp"

namespace rankone {

// General cutting-and-stacking data: r_n cuts produce r_n+1 subcolumns at
// stage n, with spacers s_{n,0..r_n} stacked above them.
struct RankOneRecipe {
    std::vector<std::int64_t> cuts;       // r_n, index n-1
    std::vector<std::vector<Int>> spacers;  // s_{n,i}, 0 <= i <= r_n
    int depth = 0;

    std::int64_t r(int n) const { return cuts.at(n - 1); }
    const std::vector<Int>& s(int n) const { return spacers.at(n - 1); }
};

// Quasi-staircase parameters: cut sequence r_n = a_n b_n, spacer sequence
// s_{n,t} = c_n + floor(t / a_n) for t < r_n and s_{n,r_n} = 0.
struct QuasiStaircaseRecipe {
    std::vector<std::int64_t> a;
    std::vector<std::int64_t> b;
    std::vector<Int> c;
    int depth = 0;

    std::int64_t av(int n) const { return a.at(n - 1); }
    std::int64_t bv(int n) const { return b.at(n - 1); }
    const Int& cv(int n) const { return c.at(n - 1); }
};

struct Violation {
    int index;  // stage n the constraint refers to (1-based)
    std::string constraint;
};

inline std::vector<Violation> validate(const QuasiStaircaseRecipe& q) {
    std::vector<Violation> out;
    if (q.depth < 1) {
        out.push_back({0, "depth >= 1"});
        return out;
    }
    if ((int)q.a.size() != q.depth || (int)q.b.size() != q.depth || (int)q.c.size() != q.depth) {
        out.push_back({0, "a, b, c must each have `depth` entries"});
        return out;
    }
    for (int n = 1; n <= q.depth; ++n) {
        if (q.av(n) < 1) out.push_back({n, "a_n >= 1"});
        if (q.bv(n) < 1) out.push_back({n, "b_n >= 1"});
        if (q.cv(n) < 1) out.push_back({n, n == 1 ? "c_1 >= 1" : "c_n >= 1"});
    }
    for (int n = 1; n < q.depth; ++n) {
        if (q.av(n + 1) < q.av(n)) out.push_back({n, "a nondecreasing"});
        if (q.bv(n + 1) < q.bv(n)) out.push_back({n, "b nondecreasing"});
        if (q.cv(n + 1) < q.cv(n)) out.push_back({n, "c nondecreasing"});
        if (q.cv(n + 1) < q.cv(n) + q.bv(n)) out.push_back({n, "c_{n+1} >= c_n + b_n"});
    }
    return out;
}

inline std::vector<Violation> validate(const RankOneRecipe& r) {
    std::vector<Violation> out;
    if (r.depth < 1) {
        out.push_back({0, "depth >= 1"});
        return out;
    }
    if ((int)r.cuts.size() != r.depth || (int)r.spacers.size() != r.depth) {
        out.push_back({0, "cuts and spacers must each have `depth` entries"});
        return out;
    }
    for (int n = 1; n <= r.depth; ++n) {
        if (r.r(n) < 1) out.push_back({n, "r_n >= 1"});
        else if ((std::int64_t)r.s(n).size() != r.r(n) + 1)
            out.push_back({n, "spacers_n must have r_n + 1 entries"});
        for (const Int& s : r.s(n))
            if (s < 0) { out.push_back({n, "s_{n,i} >= 0"}); break; }
    }
    return out;
}

inline void require_valid(const QuasiStaircaseRecipe& q) {
    auto v = validate(q);
    if (!v.empty())
        throw std::invalid_argument("invalid quasi-staircase recipe: stage " +
                                    std::to_string(v.front().index) + ": " + v.front().constraint);
}

inline void require_valid(const RankOneRecipe& r) {
    auto v = validate(r);
    if (!v.empty())
        throw std::invalid_argument("invalid rank-one recipe: stage " +
                                    std::to_string(v.front().index) + ": " + v.front().constraint);
}

inline RankOneRecipe to_rank_one(const QuasiStaircaseRecipe& q) {
    require_valid(q);
    RankOneRecipe out;
    out.depth = q.depth;
    for (int n = 1; n <= q.depth; ++n) {
        std::int64_t rn = q.av(n) * q.bv(n);
        out.cuts.push_back(rn);
        std::vector<Int> s;
        s.reserve(rn + 1);
        for (std::int64_t t = 0; t < rn; ++t) s.push_back(q.cv(n) + Int(t / q.av(n)));
        s.push_back(0);
        out.spacers.push_back(std::move(s));
    }
    return out;
}

// h_1 = 1, h_{n+1} = (r_n + 1) h_n + sum_i s_{n,i}; exact.
struct DerivedScales {
    int depth = 0;
    std::vector<Int> height;           // height[n], valid 1..depth+1
    std::vector<Int> post_productive;  // m_n, valid 1..depth (quasi-staircase only)
    std::vector<Int> cut;              // r_n, valid 1..depth
    bool heights_strictly_increasing = true;
    // stages with b_n >= 3 where m_n < h_{n+1} fails (reported, expected empty)
    std::vector<int> post_productive_anomalies;

    const Int& h(int n) const { return height.at(n); }
    const Int& m(int n) const { return post_productive.at(n); }
    const Int& r(int n) const { return cut.at(n); }
};

inline Int spacer_total(const RankOneRecipe& r, int n) {
    Int t = 0;
    for (const Int& s : r.s(n)) t += s;
    return t;
}

inline std::vector<Int> heights(const RankOneRecipe& r) {
    std::vector<Int> h(r.depth + 2);
    h[1] = 1;
    for (int n = 1; n <= r.depth; ++n)
        h[n + 1] = (Int(r.r(n)) + 1) * h[n] + spacer_total(r, n);
    return h;
}

inline DerivedScales derive_scales(const QuasiStaircaseRecipe& q) {
    require_valid(q);
    DerivedScales out;
    out.depth = q.depth;
    out.height.assign(q.depth + 2, 0);
    out.post_productive.assign(q.depth + 1, 0);
    out.cut.assign(q.depth + 1, 0);
    out.height[1] = 1;
    for (int n = 1; n <= q.depth; ++n) {
        Int an = q.av(n), bn = q.bv(n), cn = q.cv(n);
        out.cut[n] = an * bn;
        out.post_productive[n] = an * out.height[n] + (an + 1) * (cn + bn - 1);
        out.height[n + 1] =
            (an * bn + 1) * out.height[n] + an * bn * cn + an * bn * (bn - 1) / 2;
        if (out.height[n + 1] <= out.height[n]) out.heights_strictly_increasing = false;
        if (q.bv(n) >= 3 && out.post_productive[n] >= out.height[n + 1])
            out.post_productive_anomalies.push_back(n);
    }
    return out;
}

// ---- presets ----

// Desk family: a_n = 2n+2, b_n = floor((n+5)/2), minimal legal c
// (c_1 = 1, c_{n+1} = c_n + b_n).  Depth 5 is the recipe used throughout the
// test suite; deeper prefixes extend it without changing earlier stages.
inline QuasiStaircaseRecipe desk_recipe(int depth) {
    QuasiStaircaseRecipe q;
    q.depth = depth;
    for (int n = 1; n <= depth; ++n) {
        q.a.push_back(2 * n + 2);
        q.b.push_back((n + 5) / 2);
        q.c.push_back(n == 1 ? Int(1) : q.c.back() + q.b[n - 2]);
    }
    return q;
}

inline QuasiStaircaseRecipe d1_recipe() { return desk_recipe(5); }

// Deeper prefix of the same family; word lengths past c_5 + b_5 - 1 = 19 need
// stage-6+ run data, so analyses beyond that horizon use this one.
inline QuasiStaircaseRecipe d1_deep_recipe() { return desk_recipe(12); }

inline RankOneRecipe staircase_recipe(int depth) {
    RankOneRecipe r;
    r.depth = depth;
    for (int n = 1; n <= depth; ++n) {
        r.cuts.push_back(n);
        std::vector<Int> s;
        for (int i = 0; i <= n; ++i) s.push_back(i);
        r.spacers.push_back(std::move(s));
    }
    return r;
}

inline RankOneRecipe chacon_recipe(int depth) {
    RankOneRecipe r;
    r.depth = depth;
    for (int n = 1; n <= depth; ++n) {
        r.cuts.push_back(2);
        r.spacers.push_back({0, 1, 0});
    }
    return r;
}

// ---- growth diagnostics ----

struct GrowthRow {
    int n;
    Rat ab2_over_h;        // a_n b_n^2 / h_n
    Rat cb_over_h;         // (c_n + b_n) / h_n
    Rat cb_partial_sum;    // sum up to n of the above
    Rat criterion_term;    // (1 / (r_n h_n)) * sum_i s_{n,i}
    Rat criterion_partial; // partial sums of the finite-measure criterion
};

inline std::vector<GrowthRow> growth_report(const QuasiStaircaseRecipe& q) {
    auto sc = derive_scales(q);
    auto ro = to_rank_one(q);
    std::vector<GrowthRow> rows;
    Rat cb_sum = 0, crit_sum = 0;
    for (int n = 1; n <= q.depth; ++n) {
        GrowthRow row;
        row.n = n;
        row.ab2_over_h = Rat(Int(q.av(n)) * q.bv(n) * q.bv(n), sc.h(n));
        row.cb_over_h = Rat(q.cv(n) + q.bv(n), sc.h(n));
        cb_sum += row.cb_over_h;
        row.cb_partial_sum = cb_sum;
        row.criterion_term = Rat(spacer_total(ro, n), Int(ro.r(n)) * sc.h(n));
        crit_sum += row.criterion_term;
        row.criterion_partial = crit_sum;
        rows.push_back(row);
    }
    return rows;
}

// Finite-measure criterion terms for a general rank-one recipe.
inline std::vector<std::pair<Rat, Rat>> rank_one_criterion(const RankOneRecipe& r) {
    auto h = heights(r);
    std::vector<std::pair<Rat, Rat>> rows;
    Rat sum = 0;
    for (int n = 1; n <= r.depth; ++n) {
        Rat term(spacer_total(r, n), Int(r.r(n)) * h[n]);
        sum += term;
        rows.emplace_back(term, sum);
    }
    return rows;
}

}  // namespace rankone
