#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rankone/numeric.hpp"
#include "rankone/recipe.hpp"
#include "rankone/word.hpp"

namespace rankone {

inline constexpr std::int64_t kDefaultMaterializeBudget = 10'000'000;

// Lazily expandable B_n: per-stage block/run offset tables, window extraction
// by recursive descent.  Offsets are exact integers; only the requested window
// is ever expanded.
class SymbolicWord {
public:
    SymbolicWord(RankOneRecipe recipe, int stage)
        : recipe_(std::move(recipe)), stage_(stage) {
        require_valid(recipe_);
        if (stage < 1 || stage > recipe_.depth + 1)
            throw std::invalid_argument("SymbolicWord: stage must be in [1, depth+1]");
        height_ = heights(recipe_);
        height_.resize(stage_ + 1);
        starts_.resize(stage_);  // starts_[k] lays out B_{k+1} from B_k blocks
        for (int k = 1; k < stage_; ++k) {
            auto& st = starts_[k];
            st.reserve(recipe_.r(k) + 2);
            Int pos = 0;
            for (std::int64_t t = 0; t <= recipe_.r(k); ++t) {
                st.push_back(pos);
                pos += height_[k] + recipe_.s(k)[t];
            }
            st.push_back(pos);  // == h_{k+1}
        }
    }

    int stage() const { return stage_; }
    const Int& length() const { return height_[stage_]; }
    const Int& height(int k) const { return height_.at(k); }
    const RankOneRecipe& recipe() const { return recipe_; }

    // Block boundaries close exactly on h_{k+1} and increase strictly.
    bool layout_consistent() const {
        for (int k = 1; k < stage_; ++k) {
            const auto& st = starts_[k];
            for (std::size_t t = 0; t + 1 < st.size(); ++t)
                if (st[t] >= st[t + 1]) return false;
            if (st.back() != height_[k + 1]) return false;
        }
        return true;
    }

    // Substring [lo, hi) of B_k for any k <= stage.
    std::string window_at(int k, const Int& lo, const Int& hi,
                          std::int64_t budget = kDefaultMaterializeBudget) const {
        if (k < 1 || k > stage_) throw std::invalid_argument("window_at: bad stage");
        if (lo < 0 || hi < lo || hi > height_[k])
            throw std::invalid_argument("window_at: window out of range");
        Int len = hi - lo;
        if (len > budget) throw budget_error("window_at: window exceeds budget");
        std::string out;
        out.reserve((std::size_t)(std::int64_t)len);
        fill(k, lo, hi, out);
        return out;
    }

    std::string window(const Int& lo, const Int& hi,
                       std::int64_t budget = kDefaultMaterializeBudget) const {
        return window_at(stage_, lo, hi, budget);
    }

private:
    void fill(int k, const Int& lo, const Int& hi, std::string& out) const {
        if (lo >= hi) return;
        if (k == 1) {
            out += '0';
            return;
        }
        const auto& st = starts_[k - 1];
        // first block index t with st[t+1] > lo
        std::size_t t = std::upper_bound(st.begin(), st.end(), lo) - st.begin();
        if (t > 0) --t;
        for (; t + 1 < st.size() && st[t] < hi; ++t) {
            Int block_lo = st[t];
            Int block_hi = block_lo + height_[k - 1];
            Int a = std::max(lo, block_lo), b = std::min(hi, block_hi);
            if (a < b) fill(k - 1, a - block_lo, b - block_lo, out);
            Int run_hi = st[t + 1];
            Int c = std::max(lo, block_hi), d = std::min(hi, run_hi);
            for (Int i = c; i < d; ++i) out += '1';
        }
    }

    RankOneRecipe recipe_;
    int stage_;
    std::vector<Int> height_;
    std::vector<std::vector<Int>> starts_;
};

inline SymbolicWord build_symbolic(const RankOneRecipe& recipe, int stage) {
    return SymbolicWord(recipe, stage);
}

inline SymbolicWord build_symbolic(const QuasiStaircaseRecipe& recipe, int stage) {
    return SymbolicWord(to_rank_one(recipe), stage);
}

// Full expansion by iterated concatenation.  Bulk path for scans; the
// windowed descent above is the independent route the tests compare against.
inline std::string expand(const RankOneRecipe& recipe, int stage,
                          std::int64_t budget = kDefaultMaterializeBudget) {
    require_valid(recipe);
    if (stage < 1 || stage > recipe.depth + 1)
        throw std::invalid_argument("expand: stage must be in [1, depth+1]");
    auto h = heights(recipe);
    if (h[stage] > budget) throw budget_error("expand: stage exceeds materialization budget");
    std::string w = "0";
    for (int k = 1; k < stage; ++k) {
        std::string next;
        next.reserve((std::size_t)(std::int64_t)h[k + 1]);
        for (std::int64_t t = 0; t <= recipe.r(k); ++t) {
            next += w;
            next.append((std::size_t)(std::int64_t)recipe.s(k)[t], '1');
        }
        w = std::move(next);
    }
    return w;
}

inline std::string expand(const QuasiStaircaseRecipe& recipe, int stage,
                          std::int64_t budget = kDefaultMaterializeBudget) {
    return expand(to_rank_one(recipe), stage, budget);
}

namespace detail {

inline std::int64_t scan_count(std::string_view text, std::string_view w) {
    if (w.empty() || text.size() < w.size()) return 0;
    std::int64_t cnt = 0;
    for (std::size_t j = 0; j + w.size() <= text.size(); ++j)
        if (text.compare(j, w.size(), w) == 0) ++cnt;
    return cnt;
}

}  // namespace detail

// Exact occurrence count of w in B_n.  Occurrences inside repeated B_k blocks
// multiply; occurrences touching a spacer run are counted in bounded junction
// regions (run capped at |w|+|w|-1; an all-ones w regains the capped surplus
// in closed form).  Work stays polynomial in |w| and depth while h_n explodes.
inline Int count_occurrences(const SymbolicWord& word, std::string_view w, int n) {
    require_binary(w);
    if (n < 1 || n > word.stage()) throw std::invalid_argument("count_occurrences: bad stage");
    const Int wlen = (std::int64_t)w.size();
    if (wlen > word.height(n)) throw std::invalid_argument("count_occurrences: word longer than B_n");

    const std::int64_t L = (std::int64_t)w.size() - 1;
    const std::int64_t cap = (std::int64_t)w.size() + L;  // run length cap
    const bool w_ones = all_ones(w);

    int k0 = 1;
    while (word.height(k0) < wlen) ++k0;
    Int cnt = detail::scan_count(
        word.window_at(k0, 0, word.height(k0), kDefaultMaterializeBudget), w);

    const auto& rec = word.recipe();
    for (int k = k0; k < n; ++k) {
        std::string suf = word.window_at(k, word.height(k) - L, word.height(k));
        std::string pre = word.window_at(k, 0, L);
        std::map<Int, Int> by_run;  // spacer value -> multiplicity (junctions with a next block)
        for (std::int64_t t = 0; t < rec.r(k); ++t) ++by_run[rec.s(k)[t]];

        Int cross = 0;
        for (const auto& [s, mult] : by_run) {
            Int capped = std::min<Int>(s, cap);
            std::string region = suf + ones((std::size_t)(std::int64_t)capped) + pre;
            Int c = detail::scan_count(region, w);
            if (w_ones && s > cap) c += s - cap;
            cross += c * mult;
        }
        const Int& s_last = rec.s(k)[rec.r(k)];
        if (s_last > 0) {  // trailing run of B_{k+1}, no block after it
            Int capped = std::min<Int>(s_last, cap);
            std::string region = suf + ones((std::size_t)(std::int64_t)capped);
            Int c = detail::scan_count(region, w);
            if (w_ones && s_last > cap) c += s_last - cap;
            cross += c;
        }
        cnt = (Int(rec.r(k)) + 1) * cnt + cross;
    }
    return cnt;
}

struct EmpiricalEstimate {
    std::string word;
    int stage = 0;
    Int count;
    Int denominator;  // h_n - |w|, the definition's convention
    Rat value;
};

inline EmpiricalEstimate empirical_cylinder(const SymbolicWord& word, std::string_view w, int n) {
    EmpiricalEstimate e;
    e.word = std::string(w);
    e.stage = n;
    if ((Int)((std::int64_t)w.size()) >= word.height(n))
        throw std::invalid_argument("empirical_cylinder: need |w| < h_n");
    e.count = count_occurrences(word, w, n);
    e.denominator = word.height(n) - (std::int64_t)w.size();
    e.value = Rat(e.count, e.denominator);
    return e;
}

struct CorrelationResult {
    std::string u, v;
    Int lag;
    int stage = 0;
    Int joint_count;
    Int denominator;  // h_n - |u| - t - |v| + 1
    Rat joint;        // joint_count / denominator
    Rat product;      // empirical(u) * empirical(v)
    Rat discrepancy;  // joint - product
};

// Counts positions j carrying u at j and v at j + t, over every j where both
// windows fit.  The denominator follows the |u| + t + |v| span convention, so
// for t < |u| (overlapping windows) the count can exceed it slightly.
inline CorrelationResult correlation(const SymbolicWord& word, std::string_view u,
                                     std::string_view v, const Int& t, int n,
                                     std::int64_t budget = kDefaultMaterializeBudget) {
    require_binary(u);
    require_binary(v);
    if (t < 0) throw std::invalid_argument("correlation: lag must be >= 0");
    CorrelationResult r;
    r.u = std::string(u);
    r.v = std::string(v);
    r.lag = t;
    r.stage = n;
    Int span = Int((std::int64_t)u.size()) + t + (std::int64_t)v.size();
    if (span >= word.height(n))
        throw std::invalid_argument("correlation: window exceeds B_n");
    std::string text = word.window_at(n, 0, word.height(n), budget);
    std::int64_t tt = (std::int64_t)t;
    std::int64_t h = (std::int64_t)text.size();
    std::int64_t jmax = h - std::max<std::int64_t>((std::int64_t)u.size(), tt + (std::int64_t)v.size());
    std::int64_t cnt = 0;
    for (std::int64_t j = 0; j <= jmax; ++j) {
        if (text.compare(j, u.size(), u) == 0 && text.compare(j + tt, v.size(), v) == 0) ++cnt;
    }
    r.joint_count = cnt;
    r.denominator = word.height(n) - span + 1;
    r.joint = Rat(r.joint_count, r.denominator);
    Rat eu = empirical_cylinder(word, u, n).value;
    Rat ev = empirical_cylinder(word, v, n).value;
    r.product = eu * ev;
    r.discrepancy = r.joint - r.product;
    return r;
}

// One-pass pair scanner over an expanded stage: joint counts for all words of
// lengths 1 and 2 at a fixed lag, used by the independence diagnostics.
class PairScanner {
public:
    PairScanner(std::string_view text, std::int64_t lag) : text_(text), lag_(lag) {
        std::int64_t h = (std::int64_t)text.size();
        for (int lu = 1; lu <= 2; ++lu)
            for (int lv = 1; lv <= 2; ++lv) {
                auto& bins = counts_[lu - 1][lv - 1];
                bins.fill(0);
                std::int64_t jmax = h - std::max<std::int64_t>(lu, lag_ + lv);
                for (std::int64_t j = 0; j <= jmax; ++j) {
                    int cu = code(j, lu), cv = code(j + lag_, lv);
                    ++bins[cu * 4 + cv];
                }
            }
        for (int l = 1; l <= 2; ++l) {
            auto& occ = occ_[l - 1];
            occ.fill(0);
            for (std::int64_t j = 0; j + l <= h; ++j) ++occ[code(j, l)];
        }
    }

    std::int64_t joint_count(std::string_view u, std::string_view v) const {
        return counts_[u.size() - 1][v.size() - 1][word_code(u) * 4 + word_code(v)];
    }
    std::int64_t occurrence_count(std::string_view w) const {
        return occ_[w.size() - 1][word_code(w)];
    }
    std::int64_t length() const { return (std::int64_t)text_.size(); }
    std::int64_t lag() const { return lag_; }

private:
    static int word_code(std::string_view w) {
        int c = 0;
        for (char ch : w) c = c * 2 + (ch == '1');
        return c;
    }
    int code(std::int64_t j, int len) const {
        int c = 0;
        for (int k = 0; k < len; ++k) c = c * 2 + (text_[j + k] == '1');
        return c;
    }

    std::string_view text_;
    std::int64_t lag_;
    std::array<std::array<std::array<std::int64_t, 16>, 2>, 2> counts_{};
    std::array<std::array<std::int64_t, 4>, 2> occ_{};
};

}  // namespace rankone
