#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "rankone/language.hpp"
#include "rankone/numeric.hpp"
#include "rankone/recipe.hpp"
#include "rankone/word.hpp"

namespace rankone {

struct RightSpecialSet {
    int q = 0;
    std::vector<std::string> words;  // sorted
};

struct LevelDecomposition {
    int q = 0;
    std::vector<std::string> ones_family;             // all-ones members
    std::map<int, std::vector<std::string>> levels;   // n -> words with c_n <= z < c_{n+1}
    std::vector<std::string> below_first_level;       // 0 < z < c_1 (impossible; reported)
    bool partition_ok = false;
};

struct AlphaBeta {
    int alpha = 0;  // max { n : m_n <= q }, 0 when q < m_1
    int beta = 0;   // min { n : q < c_{n+1} }
    bool beta_horizon_sensitive = false;  // used the virtual c_{depth+1} = c_depth + b_depth
};

inline AlphaBeta alpha_beta(const QuasiStaircaseRecipe& q, const DerivedScales& sc, const Int& len) {
    AlphaBeta out;
    for (int n = 1; n <= q.depth; ++n)
        if (sc.m(n) <= len) out.alpha = n;
    out.beta = 0;
    for (int n = 1; n <= q.depth; ++n) {
        Int next_c = (n < q.depth) ? q.cv(n + 1) : q.cv(q.depth) + q.bv(q.depth);
        if (len < next_c) {
            out.beta = n;
            out.beta_horizon_sensitive = (n == q.depth);
            break;
        }
    }
    if (out.beta == 0)
        throw horizon_error("alpha_beta: q beyond the covered c-range");
    return out;
}

inline Int complexity_bound(const QuasiStaircaseRecipe& q, const AlphaBeta& ab, const Int& len) {
    Int sum = 2;
    for (int n = std::max(ab.alpha, 1); n <= ab.beta; ++n) sum += q.bv(n);
    return len * sum;
}

struct ComplexityRow {
    int q = 0;
    Int p;                         // p(q)
    Int delta;                     // p(q+1) - p(q)
    std::int64_t rs_count = 0;     // |RS(q)|
    std::vector<Int> level_p;      // p_n(q), n = 1..depth
    int alpha = 0, beta = 0;
    Int bound;                     // q (2 + sum_{alpha..beta} b_n)
    bool bound_ok = false;         // p(q) <= bound
    bool decomposition_ok = false; // p(q) == 1 + q + sum_n p_n(q)
    bool rs_delta_ok = false;     // delta == rs_count
};

struct ComplexityTable {
    QuasiStaircaseRecipe recipe;
    DerivedScales scales;
    int max_q = 0;
    bool truncated = false;  // horizon ran out before max_q; rows cover 1..max_q
    std::vector<ComplexityRow> rows;                    // rows[q-1], q = 1..max_q
    std::vector<RightSpecialSet> right_special;         // per q = 1..max_q
    std::vector<LevelDecomposition> decompositions;     // per q = 1..max_q
    // count of W_n words of each exact length ell: level_counts[n][ell]
    std::map<int, std::map<std::int64_t, Int>> level_counts;

    const ComplexityRow& row(int q) const { return rows.at(q - 1); }
    const RightSpecialSet& rs(int q) const { return right_special.at(q - 1); }
    Int p(int q) const { return q == 0 ? Int(1) : rows.at(q - 1).p; }  // p(0) = 1: empty word
    Int level_p(int n, int q) const {
        Int total = 0;
        auto it = level_counts.find(n);
        if (it == level_counts.end()) return total;
        for (const auto& [ell, cnt] : it->second)
            if (ell < q) total += cnt;
        return total;
    }
};

// Assigns every right-special word to the all-ones family or the level n with
// c_n <= z(w) < c_{n+1}; the last bucket uses the minimal legal continuation
// c_{depth+1} = c_depth + b_depth, beyond which the horizon is insufficient.
inline LevelDecomposition level_decomposition(const QuasiStaircaseRecipe& rec,
                                              const RightSpecialSet& rs) {
    LevelDecomposition out;
    out.q = rs.q;
    std::size_t assigned = 0;
    for (const auto& w : rs.words) {
        std::int64_t z = tail_length(w);
        if (z == kInfiniteTail) {
            out.ones_family.push_back(w);
            ++assigned;
            continue;
        }
        if (Int(z) < rec.cv(1)) {
            out.below_first_level.push_back(w);
            continue;
        }
        int level = 0;
        for (int n = 1; n <= rec.depth; ++n) {
            Int next_c = (n < rec.depth) ? rec.cv(n + 1) : rec.cv(rec.depth) + rec.bv(rec.depth);
            if (rec.cv(n) <= Int(z) && Int(z) < next_c) {
                level = n;
                break;
            }
        }
        if (level == 0)
            throw horizon_error("level_decomposition: tail length " + std::to_string(z) +
                                " beyond covered c-range");
        out.levels[level].push_back(w);
        ++assigned;
    }
    out.partition_ok = out.below_first_level.empty() && assigned == rs.words.size();
    return out;
}

// Sweeps q = 1..Q building p(q), right-special sets, level decompositions and
// all per-row identities, from certified language slices.
inline ComplexityTable complexity_table(const QuasiStaircaseRecipe& rec, int Q,
                                        std::int64_t budget = kDefaultMaterializeBudget) {
    ComplexityTable out;
    out.recipe = rec;
    out.scales = derive_scales(rec);
    out.max_q = Q;
    LanguageEnumerator enumerator(rec, budget);

    std::vector<std::string> cur = enumerator.slice(1).words;
    for (int q = 1; q <= Q; ++q) {
        std::vector<std::string> next;
        try {
            next = enumerator.slice(q + 1).words;
        } catch (const horizon_error&) {
            if (q == 1) throw;  // nothing computable at all
            out.truncated = true;
            out.max_q = q - 1;
            break;
        }
        std::unordered_set<std::string> next_set(next.begin(), next.end());

        RightSpecialSet rs;
        rs.q = q;
        for (const auto& w : cur)
            if (next_set.count(w + "0") && next_set.count(w + "1")) rs.words.push_back(w);

        auto dec = level_decomposition(rec, rs);
        for (const auto& [n, words] : dec.levels)
            out.level_counts[n][q] += (std::int64_t)words.size();

        ComplexityRow row;
        row.q = q;
        row.p = (std::int64_t)cur.size();
        row.delta = Int((std::int64_t)next.size()) - (std::int64_t)cur.size();
        row.rs_count = (std::int64_t)rs.words.size();
        row.rs_delta_ok = (row.delta == row.rs_count);
        Int level_sum = 0;
        for (int n = 1; n <= rec.depth; ++n) {
            Int pn = out.level_p(n, q);
            row.level_p.push_back(pn);
            level_sum += pn;
        }
        row.decomposition_ok = (row.p == 1 + Int(q) + level_sum);
        auto ab = alpha_beta(rec, out.scales, q);
        row.alpha = ab.alpha;
        row.beta = ab.beta;
        row.bound = complexity_bound(rec, ab, q);
        row.bound_ok = (row.p <= row.bound);

        out.rows.push_back(std::move(row));
        out.right_special.push_back(std::move(rs));
        out.decompositions.push_back(std::move(dec));
        cur = std::move(next);
    }
    return out;
}

// ---- counting-lemma verification ----

// Unified per-length prediction for |{w in W_n : |w| = ell}|: one word per
// still-open form window (c_n+i, a_n h_n + (a_n+1)(c_n+i)) over 0 <= i < b_n,
// one per bridge length in (h_n + 2c_n, h_n + 2c_n + b_n), plus the single
// saturated word of length a_n h_n + (a_n+1) c_n.
inline Int predicted_level_diff(const QuasiStaircaseRecipe& rec, const DerivedScales& sc,
                                int n, const Int& ell) {
    Int an = rec.av(n), bn = rec.bv(n), cn = rec.cv(n);
    const Int& hn = sc.h(n);
    Int count = 0;
    for (Int i = 0; i < bn; ++i)
        if (cn + i < ell && ell < an * hn + (an + 1) * (cn + i)) ++count;
    if (hn + 2 * cn < ell && ell < hn + 2 * cn + bn) ++count;
    if (ell == an * hn + (an + 1) * cn) ++count;
    return count;
}

struct LemmaRow {
    std::string regime;
    int n = 0;
    std::int64_t ell = 0;
    Int predicted;
    Int observed;
    std::string status;  // ok | mismatch | bound_ok | bound_violated
};

struct LemmaReport {
    std::vector<LemmaRow> rows;
    bool all_ok = true;
    // aggregate cross-checks
    Int level_total_observed;    // p_n(m_n)
    Int level_total_predicted;   // h_{n+1} - h_n
    Int peak_range_observed;     // p_n(m_n) - p_n(peak)
    Int peak_range_predicted;    // (a_n+1) b_n (b_n-1)/2 + 1
    // the same aggregate read on full p instead of p_n (diverges; reported)
    std::optional<Int> literal_peak_range;
};

// Regime name for a length, by role of the active windows.
inline std::string regime_name(const QuasiStaircaseRecipe& rec, const DerivedScales& sc,
                               int n, const Int& ell) {
    Int an = rec.av(n), bn = rec.bv(n), cn = rec.cv(n);
    const Int& hn = sc.h(n);
    Int peak = an * hn + (an + 1) * cn;
    if (ell <= cn) return "quiet_low";
    if (ell < cn + bn) return "ramp";
    if (ell <= hn + 2 * cn) return "plateau";
    if (ell < hn + 2 * cn + bn) return "bridge";
    if (ell < peak) return "plateau_high";
    if (ell == peak) return "peak";
    if (ell < sc.m(n)) return "drain";
    return "quiet_high";
}

// Brute-force first differences of p_n against the predictions, for every
// length up to m_n plus a margin.  In the drain regime the per-length value
// is also checked against the b_n upper bound.
inline LemmaReport verify_counting_lemmas(const ComplexityTable& table, int n,
                                          std::int64_t margin = 5) {
    const auto& rec = table.recipe;
    const auto& sc = table.scales;
    if (n < 1 || n > rec.depth) throw std::invalid_argument("verify_counting_lemmas: bad n");
    Int mn = sc.m(n);
    Int limit = mn + margin;
    if (limit + 1 > table.max_q)
        throw budget_error("verify_counting_lemmas: table does not reach m_n + margin");

    LemmaReport rep;
    auto counts_it = table.level_counts.find(n);
    auto observed_at = [&](std::int64_t ell) -> Int {
        if (counts_it == table.level_counts.end()) return 0;
        auto it = counts_it->second.find(ell);
        return it == counts_it->second.end() ? Int(0) : it->second;
    };

    for (std::int64_t ell = 1; Int(ell) <= limit; ++ell) {
        LemmaRow row;
        row.regime = regime_name(rec, sc, n, ell);
        row.n = n;
        row.ell = ell;
        row.predicted = predicted_level_diff(rec, sc, n, ell);
        row.observed = observed_at(ell);
        row.status = (row.observed == row.predicted) ? "ok" : "mismatch";
        if (row.regime == "drain") {
            bool bound_ok = row.observed <= rec.bv(n);
            if (row.status == "ok") row.status = bound_ok ? "ok" : "bound_violated";
        }
        if (row.status != "ok") rep.all_ok = false;
        rep.rows.push_back(std::move(row));
    }

    Int an = rec.av(n), bn = rec.bv(n), cn = rec.cv(n);
    Int peak = an * sc.h(n) + (an + 1) * cn;
    rep.level_total_observed = table.level_p(n, (int)(std::int64_t)mn);
    rep.level_total_predicted = sc.h(n + 1) - sc.h(n);
    rep.peak_range_observed =
        table.level_p(n, (int)(std::int64_t)mn) - table.level_p(n, (int)(std::int64_t)peak);
    rep.peak_range_predicted = (an + 1) * bn * (bn - 1) / 2 + 1;
    if (rep.level_total_observed != rep.level_total_predicted) rep.all_ok = false;
    if (rep.peak_range_observed != rep.peak_range_predicted) rep.all_ok = false;
    if (Int((std::int64_t)table.max_q) >= mn) {
        rep.literal_peak_range =
            table.p((int)(std::int64_t)mn) - table.p((int)(std::int64_t)peak);
    }
    return rep;
}

// p(q) / (q f(q)) rows; beyond the exact table the upper bound
// (2 + sum_{alpha..beta} b_n) / f(q) is used and labeled.
struct RatioRow {
    Int q;
    Rat ratio;
    std::string kind;  // "exact" | "bound"
};

inline std::vector<RatioRow> ratio_curve(const QuasiStaircaseRecipe& rec,
                                         const DerivedScales& sc,
                                         const ComplexityTable* table,
                                         const std::vector<std::pair<Int, Int>>& qf_samples) {
    std::vector<RatioRow> out;
    for (const auto& [q, fq] : qf_samples) {
        if (fq < 1) throw std::invalid_argument("ratio_curve: f(q) >= 1 required");
        RatioRow row;
        row.q = q;
        if (table && q >= 1 && q <= table->max_q) {
            row.ratio = Rat(table->p((int)(std::int64_t)q), q * fq);
            row.kind = "exact";
        } else {
            auto ab = alpha_beta(rec, sc, q);
            Int sum = 2;
            for (int n = std::max(ab.alpha, 1); n <= ab.beta; ++n) sum += rec.bv(n);
            row.ratio = Rat(sum, fq);
            row.kind = "bound";
        }
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace rankone
