#include <catch2/catch_amalgamated.hpp>

#include "rankone/complexity.hpp"
#include "rankone/recipe.hpp"
#include "rankone/target.hpp"
#include "rankone/word.hpp"

using namespace rankone;

TEST_CASE("tail lengths") {
    CHECK(tail_length("111") == kInfiniteTail);
    CHECK(tail_length("010") == 0);
    CHECK(tail_length("0110111") == 3);
    CHECK(tail_length("0") == 0);
    CHECK(tail_length("01") == 1);
}

TEST_CASE("complexity table on the desk family") {
    auto table = complexity_table(desk_recipe(8), 21);
    std::vector<std::int64_t> expect_p{2, 3, 5, 8, 13, 19, 25, 32, 40, 49, 58,
                                       68, 79, 91, 103, 116, 130, 145, 161, 177, 194};
    for (int q = 1; q <= 21; ++q) {
        CAPTURE(q);
        CHECK(table.p(q) == expect_p[q - 1]);
        const auto& row = table.row(q);
        CHECK(row.rs_delta_ok);
        CHECK(row.decomposition_ok);
        CHECK(row.bound_ok);
    }
    CHECK(table.p(0) == 1);  // empty word

    CHECK(table.rs(2).words == std::vector<std::string>{"01", "11"});
    // q = 2 decomposition: 01 sits in W_1 (z = 1), 11 is all-ones
    const auto& dec = table.decompositions[1];
    REQUIRE(dec.levels.count(1));
    CHECK(dec.levels.at(1) == std::vector<std::string>{"01"});
    CHECK(dec.ones_family == std::vector<std::string>{"11"});
    CHECK(dec.partition_ok);

    // 1^q is right-special at every feasible q
    for (int q = 1; q <= 20; ++q) {
        const auto& rs = table.rs(q);
        CHECK(std::find(rs.words.begin(), rs.words.end(), std::string(q, '1')) != rs.words.end());
    }
    // no right-special word has 0 < z < c_1, none ends in 0
    for (int q = 1; q <= 21; ++q) CHECK(table.decompositions[q - 1].below_first_level.empty());

    CHECK(table.level_p(1, 3) == 1);   // the word 01
    CHECK(table.level_p(1, 19) == 36); // saturation: h_2 - h_1
}

TEST_CASE("alpha and beta on D1") {
    auto q = d1_recipe();
    auto sc = derive_scales(q);
    auto ab = alpha_beta(q, sc, 19);
    CHECK(ab.alpha == 1);  // m_1 = 19 <= 19 < m_2
    CHECK(ab.beta == 5);   // 19 < c_6 (virtual 20)
    CHECK(ab.beta_horizon_sensitive);
    auto ab2 = alpha_beta(q, sc, 3);
    CHECK(ab2.alpha == 0);
    CHECK(ab2.beta == 1);
    CHECK_FALSE(ab2.beta_horizon_sensitive);
    for (std::int64_t len : {1, 5, 12, 19}) {
        auto r = alpha_beta(q, sc, len);
        CHECK(r.alpha <= r.beta);
    }
    CHECK_THROWS_AS(alpha_beta(q, sc, 1000), horizon_error);
}

TEST_CASE("counting lemmas, level 1") {
    auto table = complexity_table(desk_recipe(8), 25);
    auto rep = verify_counting_lemmas(table, 1);
    CHECK(rep.all_ok);
    CHECK(rep.level_total_observed == 36);
    CHECK(rep.level_total_predicted == 36);
    CHECK(rep.peak_range_observed == rep.peak_range_predicted);
    CHECK(rep.peak_range_predicted == 16);  // (a_1+1) b_1 (b_1-1)/2 + 1
    REQUIRE(rep.literal_peak_range.has_value());
    CHECK(*rep.literal_peak_range != rep.peak_range_predicted);  // flagged divergence

    // regime spot checks
    std::map<std::int64_t, LemmaRow> by_ell;
    for (const auto& row : rep.rows) by_ell[row.ell] = row;
    CHECK(by_ell.at(2).regime == "ramp");
    CHECK(by_ell.at(2).predicted == 1);  // ell - c_1
    CHECK(by_ell.at(4).regime == "bridge");
    CHECK(by_ell.at(4).predicted == 4);  // b_1 + 1
    CHECK(by_ell.at(9).regime == "peak");
    CHECK(by_ell.at(9).predicted == 3);  // the saturated word replaces the closed window
    CHECK(by_ell.at(9).observed == 3);
    CHECK(by_ell.at(14).regime == "drain");
    CHECK(by_ell.at(19).regime == "quiet_high");
    CHECK(by_ell.at(19).predicted == 0);
}

TEST_CASE("drain regime stays within the b_n bound") {
    auto table = complexity_table(desk_recipe(8), 25);
    auto rep = verify_counting_lemmas(table, 1);
    for (const auto& row : rep.rows)
        if (row.regime == "drain") {
            CHECK(row.observed <= table.recipe.bv(row.n));
            CHECK(row.status == "ok");
        }
}

TEST_CASE("unique-form windows: one word per open window, level 1") {
    // structural check of the window forms behind the predictions
    auto table = complexity_table(desk_recipe(8), 25);
    auto q = table.recipe;
    auto sc = table.scales;
    std::string b1 = "0";
    for (std::int64_t i = 0; i < q.bv(1); ++i) {
        Int lo = q.cv(1) + i;
        Int hi = Int(q.av(1)) * sc.h(1) + (q.av(1) + 1) * (q.cv(1) + i);
        // the full form word: 1^{c+i-1} (B_1 1^{c+i})^{a}
        std::string form = ones((std::size_t)(std::int64_t)(q.cv(1) + i - 1));
        for (std::int64_t t = 0; t < q.av(1); ++t)
            form += b1 + ones((std::size_t)(std::int64_t)(q.cv(1) + i));
        REQUIRE((std::int64_t)form.size() == (std::int64_t)(hi - 1));
        for (std::int64_t ell = 1; ell <= 25; ++ell) {
            std::int64_t members = 0;
            const auto& dec = table.decompositions[ell - 1];
            if (dec.levels.count(1)) {
                for (const auto& w : dec.levels.at(1)) {
                    if ((std::int64_t)w.size() <= (std::int64_t)form.size() &&
                        form.compare(form.size() - w.size(), w.size(), w) == 0)
                        ++members;
                }
            }
            bool in_window = (lo < ell) && (Int(ell) < hi);
            CAPTURE(i, ell);
            CHECK(members == (in_window ? 1 : 0));
        }
    }
}

TEST_CASE("ratio curve") {
    auto rec = desk_recipe(8);
    auto sc = derive_scales(rec);
    auto table = complexity_table(rec, 20);
    std::vector<std::pair<Int, Int>> samples{{10, 1}, {19, 1}, {19, 5}, {30, 3}};
    auto rows = ratio_curve(rec, sc, &table, samples);
    CHECK(rows[0].kind == "exact");
    CHECK(rows[0].ratio == Rat(49, 10));  // p(10)/10
    CHECK(rows[1].ratio == Rat(161, 19));
    CHECK(rows[2].ratio == Rat(161, 95));
    CHECK(rows[3].kind == "bound");
}

TEST_CASE("pointwise level-complexity bound") {
    // p_n(q) <= (q - c_n + 1) b_n on c_n <= q < m_n
    auto table = complexity_table(desk_recipe(8), 25);
    for (int n = 1; n <= 2; ++n) {
        Int cn = table.recipe.cv(n), bn = table.recipe.bv(n), mn = table.scales.m(n);
        for (int q = 1; q <= table.max_q; ++q) {
            if (Int(q) < cn || Int(q) >= mn) continue;
            CAPTURE(n, q);
            CHECK(table.level_p(n, q) <= (Int(q) - cn + 1) * bn);
        }
    }
}

TEST_CASE("bound-based ratios fall along the synthesized scales") {
    TargetFunction g;
    for (int q = 1; q <= 60; ++q) g.values.push_back((q + 1) / 2);
    auto res = synthesize_sequences(g, 16);
    // sample q = m_{n - d_n} with the target value extended analytically
    std::vector<std::pair<Int, Int>> samples;
    for (int n = 8; n <= 12; ++n) {
        int idx = n - (int)(std::int64_t)res.d[n - 1];
        Int q = res.scales.m(idx);
        samples.emplace_back(q, (q + 1) / 2);
    }
    auto rows = ratio_curve(res.recipe, res.scales, nullptr, samples);
    REQUIRE(rows.size() >= 3);
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        CHECK(rows[i].kind == "bound");
        CHECK(rows[i + 1].ratio <= rows[i].ratio);
    }
}

TEST_CASE("level decomposition rejects tails beyond the horizon") {
    RightSpecialSet rs;
    rs.q = 30;
    rs.words = {"0" + std::string(29, '1')};
    CHECK_THROWS_AS(level_decomposition(d1_recipe(), rs), horizon_error);
}
