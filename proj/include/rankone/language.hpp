#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "rankone/numeric.hpp"
#include "rankone/recipe.hpp"
#include "rankone/symbolic.hpp"
#include "rankone/word.hpp"

namespace rankone {

struct LanguageSlice {
    int q = 0;
    std::vector<std::string> words;  // sorted, 0 < 1
    int stage = 0;                   // the slice equals the q-subwords of B_stage
    bool fixpoint_checked = false;   // recomputed at stage+1 and found equal
};

// Enumerates L(X) ∩ {0,1}^q for quasi-staircase subshifts without expanding
// deep stages.  Every q-window of B_{m+1} lies inside a copy of B_m or inside
// a bounded region around one spacer run (valid once h_m >= q), so the slice
// is a union of windows of a small base stage and junction windows built from
// the stable length-(q-1) prefix/suffix.  New words stop appearing after the
// first stage M with h_M >= q and c_M + b_M - 1 >= q: later runs have length
// >= c_{M+1} >= q, which only re-create edge windows already present.
class LanguageEnumerator {
public:
    explicit LanguageEnumerator(QuasiStaircaseRecipe recipe,
                                std::int64_t budget = kDefaultMaterializeBudget)
        : qs_(std::move(recipe)),
          word_(to_rank_one(qs_), qs_.depth + 1),
          budget_(budget) {
        scales_ = derive_scales(qs_);
    }

    const DerivedScales& scales() const { return scales_; }
    const SymbolicWord& symbolic() const { return word_; }

    // Certified slice; throws horizon_error when no stage can certify q.
    LanguageSlice slice(int q) const {
        if (q < 1) throw std::invalid_argument("slice: q >= 1 required");
        int M = completeness_stage(q);
        if (M < 0)
            throw horizon_error("enumerate_language: insufficient depth for q=" +
                                std::to_string(q));
        auto words = union_through(q, M);
        LanguageSlice out;
        out.q = q;
        out.stage = M + 1;
        if (M + 1 <= qs_.depth) {
            auto next = union_through(q, M + 1);
            if (next != words)
                throw std::logic_error("enumerate_language: fixpoint certificate failed at q=" +
                                       std::to_string(q));
            out.fixpoint_checked = true;
        }
        out.words.assign(words.begin(), words.end());
        return out;
    }

    // Exact q-subwords of B_s for any rank-one word (test + certificate path).
    std::set<std::string> stage_subwords(int q, int s) const {
        if (q < 1 || s < 1 || s > word_.stage())
            throw std::invalid_argument("stage_subwords: bad arguments");
        int m0 = base_stage(q);
        if (m0 > s) {  // B_s shorter than q
            return {};
        }
        std::set<std::string> acc;
        add_windows(word_.window_at(m0, 0, word_.height(m0), budget_), q, acc);
        const auto& rec = word_.recipe();
        for (int m = m0; m < s; ++m) {
            std::string suf = word_.window_at(m, word_.height(m) - (q - 1), word_.height(m));
            std::string pre = word_.window_at(m, 0, q - 1);
            std::set<Int> runs;
            for (std::int64_t t = 0; t < rec.r(m); ++t) runs.insert(rec.s(m)[t]);
            for (const Int& sv : runs) {
                std::size_t capped = (std::size_t)(std::int64_t)std::min<Int>(sv, q);
                add_windows(suf + ones(capped) + pre, q, acc);
            }
            const Int& s_last = rec.s(m)[rec.r(m)];
            if (s_last > 0) {
                std::size_t capped = (std::size_t)(std::int64_t)std::min<Int>(s_last, q);
                add_windows(suf + ones(capped), q, acc);
            }
        }
        return acc;
    }

private:
    int base_stage(int q) const {
        int m = 1;
        while (m <= qs_.depth + 1 && word_.height(m) < q) ++m;
        if (m > qs_.depth + 1) throw horizon_error("language: q exceeds h_{depth+1}");
        return m;
    }

    // smallest M with h_M >= q and c_M + b_M - 1 >= q, or -1
    int completeness_stage(int q) const {
        for (int m = 1; m <= qs_.depth; ++m)
            if (word_.height(m) >= q && qs_.cv(m) + qs_.bv(m) - 1 >= q) return m;
        return -1;
    }

    static void add_windows(std::string_view text, int q, std::set<std::string>& acc) {
        if ((int)text.size() < q) return;
        for (std::size_t j = 0; j + q <= text.size(); ++j)
            acc.insert(std::string(text.substr(j, q)));
    }

    // Subwords of B_{S+1}, exploiting that prefixes and suffixes of length
    // q-1 agree across stages >= m0 for quasi-staircases (trailing spacer 0).
    std::set<std::string> union_through(int q, int S) const {
        int m0 = base_stage(q);
        std::set<std::string> acc;
        add_windows(word_.window_at(m0, 0, word_.height(m0), budget_), q, acc);
        if (S < m0) return acc;

        std::string suf = word_.window_at(m0, word_.height(m0) - (q - 1), word_.height(m0));
        std::string pre = word_.window_at(m0, 0, q - 1);
        std::set<std::int64_t> capped_runs;
        Int smax = 0;
        for (int m = m0; m <= S; ++m) {
            for (std::int64_t i = 0; i < qs_.bv(m); ++i) {
                Int run = qs_.cv(m) + i;
                smax = std::max(smax, run);
                capped_runs.insert((std::int64_t)std::min<Int>(run, q));
            }
        }
        std::int64_t pmax = (std::int64_t)std::min<Int>(smax, q);
        // windows containing a whole run flanked by block symbols
        for (std::int64_t s : capped_runs) {
            if (s > q - 2) continue;
            for (std::int64_t i = 1; i + s + 1 <= q; ++i) {
                std::int64_t jlen = q - i - s;
                acc.insert(std::string(suf.substr(suf.size() - i)) + ones((std::size_t)s) +
                           pre.substr(0, (std::size_t)jlen));
            }
        }
        // windows with the run at one edge
        for (std::int64_t p = 1; p <= pmax; ++p) {
            if (p == q) {
                acc.insert(ones((std::size_t)q));
                continue;
            }
            acc.insert(std::string(suf.substr(suf.size() - (q - p))) + ones((std::size_t)p));
            acc.insert(ones((std::size_t)p) + pre.substr(0, (std::size_t)(q - p)));
        }
        return acc;
    }

    QuasiStaircaseRecipe qs_;
    SymbolicWord word_;
    std::int64_t budget_;
    DerivedScales scales_;
};

// Slice of a plain word source (e.g. an externally supplied subshift sample).
inline std::vector<std::string> text_slice(std::string_view text, int q) {
    std::set<std::string> acc;
    for (std::size_t j = 0; j + q <= text.size(); ++j)
        acc.insert(std::string(text.substr(j, q)));
    return {acc.begin(), acc.end()};
}

}  // namespace rankone
