#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rankone/numeric.hpp"
#include "rankone/recipe.hpp"

namespace rankone {

inline constexpr std::int64_t kDefaultLevelBudget = 10'000'000;

// Sorted disjoint index runs inside [0, h_stage); value semantics.
class LevelSet {
public:
    LevelSet() = default;
    LevelSet(int stage, std::vector<std::int64_t> indices) : stage_(stage) {
        std::sort(indices.begin(), indices.end());
        for (std::int64_t v : indices) {
            if (!runs_.empty() && runs_.back().first + runs_.back().second == v)
                ++runs_.back().second;
            else if (!runs_.empty() && v < runs_.back().first + runs_.back().second)
                continue;  // duplicate
            else
                runs_.emplace_back(v, 1);
        }
        recount();
    }
    static LevelSet single(int stage, std::int64_t index) { return LevelSet(stage, {index}); }
    static LevelSet interval(int stage, std::int64_t lo, std::int64_t len) {
        LevelSet s;
        s.stage_ = stage;
        if (len > 0) s.runs_.emplace_back(lo, len);
        s.recount();
        return s;
    }

    int stage() const { return stage_; }
    std::int64_t count() const { return count_; }
    bool empty() const { return count_ == 0; }
    const std::vector<std::pair<std::int64_t, std::int64_t>>& runs() const { return runs_; }

    bool contains(std::int64_t v) const {
        auto it = std::upper_bound(runs_.begin(), runs_.end(), v,
                                   [](std::int64_t x, const auto& r) { return x < r.first; });
        if (it == runs_.begin()) return false;
        --it;
        return v < it->first + it->second;
    }

    std::vector<std::int64_t> indices() const {
        std::vector<std::int64_t> out;
        out.reserve((std::size_t)count_);
        for (const auto& [lo, len] : runs_)
            for (std::int64_t i = 0; i < len; ++i) out.push_back(lo + i);
        return out;
    }

    bool operator==(const LevelSet& o) const { return stage_ == o.stage_ && runs_ == o.runs_; }

    LevelSet intersect(const LevelSet& o) const {
        LevelSet out;
        out.stage_ = stage_;
        std::size_t i = 0, j = 0;
        while (i < runs_.size() && j < o.runs_.size()) {
            auto [a, la] = runs_[i];
            auto [b, lb] = o.runs_[j];
            std::int64_t lo = std::max(a, b), hi = std::min(a + la, b + lb);
            if (lo < hi) out.runs_.emplace_back(lo, hi - lo);
            (a + la < b + lb) ? ++i : ++j;
        }
        out.recount();
        return out;
    }

    LevelSet unite(const LevelSet& o) const {
        std::vector<std::pair<std::int64_t, std::int64_t>> merged;
        merged.reserve(runs_.size() + o.runs_.size());
        std::merge(runs_.begin(), runs_.end(), o.runs_.begin(), o.runs_.end(),
                   std::back_inserter(merged));
        LevelSet out;
        out.stage_ = stage_;
        for (auto [lo, len] : merged) {
            if (!out.runs_.empty()) {
                auto& [plo, plen] = out.runs_.back();
                if (lo <= plo + plen) {
                    plen = std::max(plen, lo + len - plo);
                    continue;
                }
            }
            out.runs_.emplace_back(lo, len);
        }
        out.recount();
        return out;
    }

    // Shift by t, clipping to [0, height); clipped indices are counted, never dropped.
    std::pair<LevelSet, std::int64_t> shifted(std::int64_t t, std::int64_t height) const {
        LevelSet out;
        out.stage_ = stage_;
        for (auto [lo, len] : runs_) {
            std::int64_t a = lo + t, b = lo + len + t;
            std::int64_t ca = std::max<std::int64_t>(a, 0), cb = std::min(b, height);
            if (ca < cb) out.runs_.emplace_back(ca, cb - ca);
        }
        out.recount();
        return {out, count_ - out.count_};
    }

private:
    void recount() {
        count_ = 0;
        for (const auto& [lo, len] : runs_) count_ += len;
    }
    int stage_ = 0;
    std::int64_t count_ = 0;
    std::vector<std::pair<std::int64_t, std::int64_t>> runs_;
};

// Exact cutting-and-stacking state through stage M.  Level widths are exact
// rationals with mu(I_1) = 1; level-index dynamics stand in for T (the
// order-preserving interval maps never enter any measure computation).
class Tower {
public:
    Tower(RankOneRecipe recipe, int stage, std::int64_t level_budget = kDefaultLevelBudget)
        : recipe_(std::move(recipe)), stage_(stage) {
        require_valid(recipe_);
        if (stage < 1 || stage > recipe_.depth + 1)
            throw std::invalid_argument("Tower: stage must be in [1, depth+1]");
        height_ = heights(recipe_);
        height_.resize(stage_ + 1);
        if (height_[stage_] > level_budget)
            throw budget_error("Tower: h_M exceeds the level-index budget");
        width_.assign(stage_ + 1, Rat(1));
        for (int n = 1; n < stage_; ++n) width_[n + 1] = width_[n] / (Int(recipe_.r(n)) + 1);
        base_.resize(stage_);
        for (int n = 1; n < stage_; ++n) {
            auto& b = base_[n];
            b.reserve(recipe_.r(n) + 1);
            Int pos = 0;
            for (std::int64_t i = 0; i <= recipe_.r(n); ++i) {
                b.push_back((std::int64_t)pos);
                pos += height_[n] + recipe_.s(n)[i];
            }
        }
    }

    const RankOneRecipe& recipe() const { return recipe_; }
    int stage() const { return stage_; }
    std::int64_t levels() const { return (std::int64_t)height_[stage_]; }
    const Int& height(int n) const { return height_.at(n); }
    std::int64_t height64(int n) const { return (std::int64_t)height_.at(n); }
    const Rat& level_width(int n) const { return width_.at(n); }
    Rat total_measure() const { return Rat(height_[stage_]) * width_[stage_]; }

    // start index, within C_{n+1}, of subcolumn i of C_n
    std::int64_t base(int n, std::int64_t i) const { return base_.at(n).at((std::size_t)i); }

    // Layout closes exactly: base_n(r_n) + h_n + s_{n,r_n} == h_{n+1}.
    bool layout_consistent() const {
        for (int n = 1; n < stage_; ++n) {
            Int end = Int(base(n, recipe_.r(n))) + height_[n] + recipe_.s(n)[recipe_.r(n)];
            if (end != height_[n + 1]) return false;
            for (std::int64_t i = 0; i < recipe_.r(n); ++i)
                if (base(n, i) >= base(n, i + 1)) return false;
        }
        return true;
    }

    // level j of C_n as a set of stage-M level indices
    LevelSet refine_level(int n, std::int64_t j) const {
        std::vector<std::int64_t> idx{j};
        for (int k = n; k < stage_; ++k) {
            std::vector<std::int64_t> next;
            next.reserve(idx.size() * (recipe_.r(k) + 1));
            for (std::int64_t y : idx)
                for (std::int64_t i = 0; i <= recipe_.r(k); ++i) next.push_back(base(k, i) + y);
            idx = std::move(next);
        }
        return LevelSet(stage_, std::move(idx));
    }

    LevelSet refine(int n, const LevelSet& set) const {
        if (set.stage() != n) throw std::invalid_argument("refine: stage mismatch");
        std::vector<std::int64_t> idx = set.indices();
        for (int k = n; k < stage_; ++k) {
            std::vector<std::int64_t> next;
            next.reserve(idx.size() * (recipe_.r(k) + 1));
            for (std::int64_t y : idx)
                for (std::int64_t i = 0; i <= recipe_.r(k); ++i) next.push_back(base(k, i) + y);
            idx = std::move(next);
        }
        return LevelSet(stage_, std::move(idx));
    }

    std::int64_t refine_multiplicity(int n) const {
        std::int64_t m = 1;
        for (int k = n; k < stage_; ++k) m *= recipe_.r(k) + 1;
        return m;
    }

    // Stage-M level indices that are spacers added after stage n (not refined
    // from C_n).  Equals the positions of 1 in B_M when n = 1.
    LevelSet spacer_levels(int n) const {
        LevelSet col = refine(n, LevelSet::interval(n, 0, height64(n)));
        LevelSet out = LevelSet::interval(stage_, 0, 0);
        std::int64_t cursor = 0;
        for (const auto& [lo, len] : col.runs()) {
            if (cursor < lo) out = out.unite(LevelSet::interval(stage_, cursor, lo - cursor));
            cursor = lo + len;
        }
        if (cursor < levels())
            out = out.unite(LevelSet::interval(stage_, cursor, levels() - cursor));
        return out;
    }

    std::pair<LevelSet, std::int64_t> apply_shift(const LevelSet& set, const Int& t) const {
        if (set.stage() != stage_) throw std::invalid_argument("apply_shift: refine to stage M first");
        if (t > height_[stage_] || t < -height_[stage_])
            return {LevelSet::interval(stage_, 0, 0), set.count()};
        return set.shifted((std::int64_t)t, levels());
    }

    // Normalized measure of a stage-M level set: count / h_M (the width of
    // I_M cancels against the stage-M total).
    Rat measure(const LevelSet& set) const {
        if (set.stage() != stage_) throw std::invalid_argument("measure: stage mismatch");
        return Rat(set.count(), levels());
    }

    // Measure in mu(I_1) = 1 units; invariant under refinement across stages.
    Rat absolute_measure(const LevelSet& set) const {
        if (set.stage() != stage_) throw std::invalid_argument("absolute_measure: stage mismatch");
        return Rat(set.count()) * width_[stage_];
    }

private:
    RankOneRecipe recipe_;
    int stage_;
    std::vector<Int> height_;
    std::vector<Rat> width_;
    std::vector<std::vector<std::int64_t>> base_;
};

struct DiscrepancyResult {
    Rat value;             // mu(A ∩ B) - mu(A) mu(B), stage-M normalized
    Rat unresolved_bound;  // additive error carried by the caller's shifts
};

inline DiscrepancyResult discrepancy(const Tower& tower, const LevelSet& a, const LevelSet& b,
                                     std::int64_t unresolved = 0) {
    Int h = tower.levels();
    Int inter = a.intersect(b).count();
    DiscrepancyResult out;
    out.value = Rat(inter * h - Int(a.count()) * b.count(), h * h);
    out.unresolved_bound = Rat(unresolved, h);
    return out;
}

// Same quantity in mu(I_1) = 1 units; stable across tower stages.
inline Rat raw_discrepancy(const Tower& tower, const LevelSet& a, const LevelSet& b) {
    return tower.absolute_measure(a.intersect(b)) -
           tower.absolute_measure(a) * tower.absolute_measure(b);
}

enum class CheckOutcome { Pass, Fail, Rejected };

struct IdentityCheck {
    CheckOutcome outcome = CheckOutcome::Rejected;
    std::string detail;
};

namespace detail {

inline IdentityCheck check_sublevel_shift(const Tower& tower, int n, const Int& t,
                                          std::int64_t sub_from, std::int64_t row_from,
                                          std::int64_t sub_to, std::int64_t row_to) {
    IdentityCheck out;
    LevelSet lhs = tower.refine_level(n + 1, tower.base(n, sub_from) + row_from);
    auto [shifted, unresolved] = tower.apply_shift(lhs, t);
    if (unresolved != 0) {
        out.outcome = CheckOutcome::Fail;
        out.detail = "unresolved mass " + std::to_string(unresolved);
        return out;
    }
    LevelSet rhs = tower.refine_level(n + 1, tower.base(n, sub_to) + row_to);
    out.outcome = (shifted == rhs) ? CheckOutcome::Pass : CheckOutcome::Fail;
    if (out.outcome == CheckOutcome::Fail && out.detail.empty())
        out.detail = "level sets differ";
    return out;
}

}  // namespace detail

// T^{k(h_n + c_n)} I_{n,j}^{[l a_n + i]} = I_{n, j - k l}^{[l a_n + i + k]}
// for 0 <= l < b_n, i, k >= 0, i + k <= a_n, k l <= j < h_n.
inline IdentityCheck verify_step_shift(const Tower& tower, const QuasiStaircaseRecipe& qs,
                                       int n, std::int64_t k, std::int64_t l, std::int64_t i,
                                       std::int64_t j) {
    IdentityCheck out;
    if (n < 1 || n + 2 > tower.stage()) {
        out.detail = "need tower stage >= n + 2";
        return out;
    }
    std::int64_t an = qs.av(n), bn = qs.bv(n);
    if (!(0 <= l && l < bn && i >= 0 && k >= 0 && i + k <= an && j >= k * l &&
          Int(j) < tower.height(n))) {
        out.detail = "parameters outside the stated ranges";
        return out;
    }
    Int t = Int(k) * (tower.height(n) + qs.cv(n));
    return detail::check_sublevel_shift(tower, n, t, l * an + i, j, l * an + i + k,
                                        j - k * l);
}

// T^{(x a_n + q)(h_n + c_n)} I_{n,j}^{[l a_n + i]}
//   = I_{n, j - a_n x(x-1)/2 - qx - ix - l(x a_n + q)}^{[(l + x) a_n + i + q]}
// for 0 <= x < b_n, 0 <= q < a_n, 0 <= l < b_n - x, 0 <= i < a_n - q and j at
// least the total row drop.
inline IdentityCheck verify_block_shift(const Tower& tower, const QuasiStaircaseRecipe& qs,
                                        int n, std::int64_t x, std::int64_t q, std::int64_t l,
                                        std::int64_t i, std::int64_t j) {
    IdentityCheck out;
    if (n < 1 || n + 2 > tower.stage()) {
        out.detail = "need tower stage >= n + 2";
        return out;
    }
    std::int64_t an = qs.av(n), bn = qs.bv(n);
    std::int64_t drop = an * x * (x - 1) / 2 + q * x + i * x + l * (x * an + q);
    if (!(0 <= x && x < bn && 0 <= q && q < an && 0 <= l && l < bn - x && 0 <= i &&
          i < an - q && j >= drop && Int(j) < tower.height(n))) {
        out.detail = "parameters outside the stated ranges";
        return out;
    }
    Int t = Int(x * an + q) * (tower.height(n) + qs.cv(n));
    return detail::check_sublevel_shift(tower, n, t, l * an + i, j, (l + x) * an + i + q,
                                        j - drop);
}

// Same shift with i in the carry range a_n - q <= i < a_n:
// target I_{n, j - a_n x(x+1)/2 - (q + i - a_n)(x+1) - l(x a_n + q)}^{[(l+x) a_n + i + q]}
// for 0 <= l < b_n - x - 1.  The row precondition is the total drop; the
// cruder published bound admits rows where the target row would be negative.
inline IdentityCheck verify_block_shift_carry(const Tower& tower, const QuasiStaircaseRecipe& qs,
                                              int n, std::int64_t x, std::int64_t q,
                                              std::int64_t l, std::int64_t i, std::int64_t j) {
    IdentityCheck out;
    if (n < 1 || n + 2 > tower.stage()) {
        out.detail = "need tower stage >= n + 2";
        return out;
    }
    std::int64_t an = qs.av(n), bn = qs.bv(n);
    std::int64_t drop = an * x * (x + 1) / 2 + (q + i - an) * (x + 1) + l * (x * an + q);
    if (!(0 <= x && x < bn && 1 <= q && q < an && 0 <= l && l < bn - x - 1 && an - q <= i &&
          i < an && j >= drop && Int(j) < tower.height(n))) {
        out.detail = "parameters outside the stated ranges";
        return out;
    }
    Int t = Int(x * an + q) * (tower.height(n) + qs.cv(n));
    return detail::check_sublevel_shift(tower, n, t, l * an + i, j, (l + x) * an + i + q,
                                        j - drop);
}

struct MixingSumResult {
    int n = 0;
    Int lag;
    Rat sum;          // sum over resolved parts of |lambda_B(T^t I_{n,j})|
    Rat error_bound;  // total unresolved mass, normalized
    Int unresolved_levels;
    Rat reported() const { return sum + error_bound; }
};

// Sum_j |lambda_B(T^t I_{n,j})| with B a stage-M level set.  Every I_{n,j} is
// refined to stage M and shifted; indices leaving the tower contribute to the
// error bound, never to the sum.
inline MixingSumResult uniform_mixing_sum(const Tower& tower, const LevelSet& b_set, int n,
                                          const Int& t) {
    if (b_set.stage() != tower.stage())
        throw std::invalid_argument("uniform_mixing_sum: refine B to the tower stage");
    if (n < 1 || n > tower.stage())
        throw std::invalid_argument("uniform_mixing_sum: need 1 <= n <= stage");
    MixingSumResult out;
    out.n = n;
    out.lag = t;
    Int h = tower.levels();
    Int bc = b_set.count();
    Int sum_num = 0;  // accumulates |lambda| * h^2
    Int unresolved_total = 0;
    std::int64_t hn = tower.height64(n);
    for (std::int64_t j = 0; j < hn; ++j) {
        LevelSet a = tower.refine_level(n, j);
        auto [img, unresolved] = tower.apply_shift(a, t);
        Int inter = img.intersect(b_set).count();
        Int lam_num = inter * h - Int(img.count()) * bc;
        sum_num += abs(lam_num);
        unresolved_total += unresolved;
    }
    out.sum = Rat(sum_num, h * h);
    out.error_bound = Rat(unresolved_total, h);
    out.unresolved_levels = unresolved_total;
    return out;
}

struct MeasureGrowthRow {
    int n = 0;
    Rat column;       // mu(C_n)
    Rat spacer;       // mu(S_n)
    Rat bound;        // ((c_n + b_n)/h_n) mu(C_n)
    bool bound_ok = false;
    bool telescoping_ok = false;  // mu(C_{n+1}) == mu(C_n) + mu(S_n)
};

inline std::vector<MeasureGrowthRow> measure_growth(const QuasiStaircaseRecipe& qs, int N) {
    auto ro = to_rank_one(qs);
    auto h = heights(ro);
    if (N < 1 || N > qs.depth) throw std::invalid_argument("measure_growth: bad N");
    std::vector<Rat> width(N + 2, Rat(1));
    for (int n = 1; n <= N; ++n) width[n + 1] = width[n] / (Int(ro.r(n)) + 1);
    std::vector<MeasureGrowthRow> rows;
    for (int n = 1; n <= N; ++n) {
        MeasureGrowthRow row;
        row.n = n;
        row.column = Rat(h[n]) * width[n];
        row.spacer = Rat(spacer_total(ro, n)) * width[n + 1];
        row.bound = Rat(qs.cv(n) + qs.bv(n), h[n]) * row.column;
        row.bound_ok = row.spacer <= row.bound;
        Rat next_col = Rat(h[n + 1]) * width[n + 1];
        row.telescoping_ok = (next_col == row.column + row.spacer);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace rankone
