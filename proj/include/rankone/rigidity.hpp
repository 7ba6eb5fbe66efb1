#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rankone/numeric.hpp"
#include "rankone/symbolic.hpp"
#include "rankone/word.hpp"

namespace rankone {

// Border array (longest proper border per prefix), minimal period, minimal
// root = the suffix of length per(w).
struct PeriodAnalysis {
    std::string word;
    std::vector<std::int64_t> border;  // border[i] for prefix of length i+1
    std::int64_t period = 0;
    std::string root;
};

inline PeriodAnalysis period_analysis(std::string_view w) {
    require_binary(w);
    PeriodAnalysis out;
    out.word = std::string(w);
    std::int64_t n = (std::int64_t)w.size();
    out.border.assign(n, 0);
    for (std::int64_t i = 1; i < n; ++i) {
        std::int64_t b = out.border[i - 1];
        while (b > 0 && w[i] != w[b]) b = out.border[b - 1];
        if (w[i] == w[b]) ++b;
        out.border[i] = b;
    }
    out.period = n - out.border[n - 1];
    out.root = std::string(w.substr(n - out.period));
    return out;
}

// All periods of w, from the border chain.
inline std::vector<std::int64_t> all_periods(std::string_view w) {
    auto pa = period_analysis(w);
    std::vector<std::int64_t> out;
    std::int64_t n = (std::int64_t)w.size();
    std::int64_t b = pa.border[n - 1];
    while (true) {
        out.push_back(n - b);
        if (b == 0) break;
        b = pa.border[b - 1];
    }
    return out;  // increasing: per(w) first
}

inline bool has_period(std::string_view w, std::int64_t p) {
    for (std::size_t i = 0; i + p < w.size(); ++i)
        if (w[i] != w[i + p]) return false;
    return true;
}

// v is a root of w when |v| <= |w|, v is the suffix of w of length |v|, and
// |v| is a period of w (w is then a terminal fragment of ...vvv).
inline bool is_root(std::string_view v, std::string_view w) {
    if (v.empty() || v.size() > w.size()) return false;
    if (w.substr(w.size() - v.size()) != v) return false;
    return has_period(w, (std::int64_t)v.size());
}

// Premise u w = w v with |v| <= |w|; conclusion: v is a root of w.
inline bool check_root_transfer(std::string_view u, std::string_view w, std::string_view v) {
    if (u.size() != v.size() || v.size() > w.size())
        throw std::invalid_argument("check_root_transfer: need |u| = |v| <= |w|");
    std::string lhs = std::string(u) + std::string(w);
    std::string rhs = std::string(w) + std::string(v);
    if (lhs != rhs) throw std::invalid_argument("check_root_transfer: premise uw = wv fails");
    return is_root(v, w);
}

// Shortest prefix r with x = r^k (equals the shortest such suffix).
inline std::string primitive_root(std::string_view x) {
    auto pa = period_analysis(x);
    if ((std::int64_t)x.size() % pa.period == 0) return std::string(x.substr(0, pa.period));
    return std::string(x);
}

// Premise u v = v u; returns the common primitive root.
inline std::optional<std::string> check_commuting_powers(std::string_view u, std::string_view v) {
    std::string lhs = std::string(u) + std::string(v);
    std::string rhs = std::string(v) + std::string(u);
    if (lhs != rhs) throw std::invalid_argument("check_commuting_powers: premise uv = vu fails");
    std::string r = primitive_root(u);
    auto is_power = [&](std::string_view x) {
        if (x.size() % r.size() != 0) return false;
        for (std::size_t i = 0; i < x.size(); i += r.size())
            if (x.substr(i, r.size()) != r) return false;
        return true;
    };
    if (is_power(u) && is_power(v)) return r;
    return std::nullopt;
}

// Every period i of w with 2i <= |w| is a multiple of per(w).
inline bool check_period_divisibility(std::string_view w) {
    auto pa = period_analysis(w);
    for (std::int64_t i : all_periods(w)) {
        if (2 * i <= (std::int64_t)w.size() && i % pa.period != 0) return false;
    }
    return true;
}

namespace detail {

inline std::string word_from_bits(std::uint32_t bits, int len) {
    std::string w(len, '0');
    for (int i = 0; i < len; ++i)
        if (bits & (1u << i)) w[i] = '1';
    return w;
}

}  // namespace detail

// Exhaustive harnesses over all binary words; each returns the number of
// counterexamples found (expected 0).

inline std::int64_t root_transfer_exhaustive(int max_len) {
    std::int64_t bad = 0;
    for (int len = 1; len <= max_len; ++len) {
        for (std::uint32_t bits = 0; bits < (1u << len); ++bits) {
            std::string w = detail::word_from_bits(bits, len);
            // premise instances are exactly (u, v) = (prefix_L, suffix_L) for
            // each period L of w
            for (std::int64_t L : all_periods(w)) {
                std::string u = w.substr(0, (std::size_t)L);
                std::string v = w.substr(w.size() - (std::size_t)L);
                if (!check_root_transfer(u, w, v)) ++bad;
            }
        }
    }
    return bad;
}

inline std::int64_t commuting_powers_exhaustive(int max_total_len) {
    std::int64_t bad = 0;
    for (int lu = 1; lu < max_total_len; ++lu) {
        for (int lv = 1; lu + lv <= max_total_len; ++lv) {
            for (std::uint32_t bu = 0; bu < (1u << lu); ++bu) {
                std::string u = detail::word_from_bits(bu, lu);
                for (std::uint32_t bv = 0; bv < (1u << lv); ++bv) {
                    std::string v = detail::word_from_bits(bv, lv);
                    if (u + v != v + u) continue;
                    auto r = check_commuting_powers(u, v);
                    if (!r) ++bad;
                }
            }
        }
    }
    return bad;
}

inline std::int64_t period_divisibility_exhaustive(int max_len) {
    std::int64_t bad = 0;
    for (int len = 1; len <= max_len; ++len)
        for (std::uint32_t bits = 0; bits < (1u << len); ++bits)
            if (!check_period_divisibility(detail::word_from_bits(bits, len))) ++bad;
    return bad;
}

inline std::int64_t border_period_vs_bruteforce(int max_len) {
    std::int64_t bad = 0;
    for (int len = 1; len <= max_len; ++len) {
        for (std::uint32_t bits = 0; bits < (1u << len); ++bits) {
            std::string w = detail::word_from_bits(bits, len);
            std::int64_t brute = len;
            for (std::int64_t p = 1; p < len; ++p)
                if (has_period(w, p)) { brute = p; break; }
            if (period_analysis(w).period != brute) ++bad;
        }
    }
    return bad;
}

// ---- explicit constants ----

struct RigidityConstants {
    bool found = false;
    Int k;
    std::vector<std::int64_t> admissible_lengths;  // the recorded l-list
    Int path_count;   // K = sum_{t=1}^{2k} (2k)^t
    Int label_count;  // C = 2K
    Rat delta;        // 1 / (4 k^2 C^{C+1})
    Rat delta_x;      // delta^2 / 2
};

// Smallest k admitting at least ceil(Q/4) lengths l < Q with
// p(l+1) - p(l) <= k and p(l) <= k l; constants follow in closed form.
// Lengths whose minimal admitting k exceeds k_limit read as superlinear data.
inline RigidityConstants find_constants(const std::vector<Int>& p, int Q,
                                        const Int& k_limit = Int(1) << 20) {
    if ((int)p.size() < Q || Q < 2) throw std::invalid_argument("find_constants: need p on [1,Q]");
    auto pa = [&](int q) -> const Int& { return p[q - 1]; };
    RigidityConstants out;
    std::int64_t need = (Q + 3) / 4;

    // minimal k making each length admissible; the answer is the need-th smallest
    std::vector<Int> min_k;
    for (int l = 1; l < Q; ++l) {
        Int by_slope = (pa(l) + l - 1) / l;  // ceil(p(l)/l)
        Int by_diff = pa(l + 1) - pa(l);
        min_k.push_back(std::max(by_diff, by_slope));
    }
    if ((std::int64_t)min_k.size() < need) return out;
    std::vector<Int> sorted = min_k;
    std::nth_element(sorted.begin(), sorted.begin() + (need - 1), sorted.end());
    Int k = sorted[need - 1];
    if (k > k_limit) return out;  // no non-superlinear witness at this horizon
    out.found = true;
    out.k = k;
    for (int l = 1; l < Q; ++l)
        if (min_k[l - 1] <= k) out.admissible_lengths.push_back(l);
    std::int64_t k2 = (std::int64_t)out.k;
    Int K = 0, pw = 1;
    for (std::int64_t t2 = 1; t2 <= 2 * k2; ++t2) {
        pw *= 2 * k2;
        K += pw;
    }
    out.path_count = K;
    out.label_count = 2 * K;
    // C^(C+1) has about (C+1) log10 C digits; refuse hopeless sizes
    double digits_estimate =
        ((double)(std::int64_t)out.label_count + 1) *
        std::log10(std::max(2.0, (double)(std::int64_t)out.label_count));
    if (digits_estimate > 8e6)
        throw budget_error("find_constants: the explicit constants exceed 8e6 digits at k = " +
                           out.k.str());
    Int cpow = boost::multiprecision::pow(out.label_count,
                                          (unsigned)(std::int64_t)(out.label_count + 1));
    out.delta = Rat(Int(1), 4 * out.k * out.k * cpow);
    out.delta_x = out.delta * out.delta / 2;
    return out;
}

// ---- empirical partial-rigidity witness search ----

struct WitnessRow {
    Int lag;
    int cylinder_len = 0;
    int stage = 0;
    Rat min_ratio;  // min over language cylinders of joint(w,w,t)/count(w)
    Rat avg_ratio;
};

// Ratio of self-returns: for each length-L language cylinder w, the fraction
// of w-occurrences followed by another occurrence t later.  Plain counts on
// both sides, so lag 0 gives exactly 1.
inline WitnessRow witness_row(std::string_view text, int stage, const Int& lag, int L) {
    if (L < 1 || L > 20) throw std::invalid_argument("witness_row: cylinder length out of range");
    std::int64_t t = (std::int64_t)lag;
    std::int64_t h = (std::int64_t)text.size();
    if (t + 2 * L >= h) throw std::invalid_argument("witness_row: lag too large for this stage");
    std::size_t bins = (std::size_t)1 << L;
    std::vector<std::int64_t> occ(bins, 0), joint(bins, 0);
    auto code_at = [&](std::int64_t j) {
        std::uint32_t c = 0;
        for (int k = 0; k < L; ++k) c = (c << 1) | (text[j + k] == '1');
        return c;
    };
    for (std::int64_t j = 0; j + L <= h; ++j) ++occ[code_at(j)];
    for (std::int64_t j = 0; j + t + L <= h; ++j) {
        std::uint32_t c = code_at(j);
        if (c == code_at(j + t)) ++joint[c];
    }
    WitnessRow out;
    out.lag = lag;
    out.cylinder_len = L;
    out.stage = stage;
    bool first = true;
    Rat total = 0;
    std::int64_t present = 0;
    for (std::size_t c = 0; c < bins; ++c) {
        if (occ[c] == 0) continue;
        Rat ratio(joint[c], occ[c]);
        if (first || ratio < out.min_ratio) out.min_ratio = ratio;
        first = false;
        total += ratio;
        ++present;
    }
    if (present == 0) throw std::logic_error("witness_row: no cylinders present");
    out.avg_ratio = total / present;
    return out;
}

inline std::vector<WitnessRow> witness_search(const SymbolicWord& word,
                                              const std::vector<Int>& lags, int L, int stage,
                                              std::int64_t budget = kDefaultMaterializeBudget) {
    std::string text = word.window_at(stage, 0, word.height(stage), budget);
    std::vector<WitnessRow> out;
    for (const Int& t : lags) out.push_back(witness_row(text, stage, t, L));
    return out;
}

}  // namespace rankone
