#include <catch2/catch_amalgamated.hpp>

#include "rankone/complexity.hpp"
#include "rankone/language.hpp"
#include "rankone/rauzy.hpp"
#include "rankone/recipe.hpp"
#include "rankone/rigidity.hpp"
#include "rankone/symbolic.hpp"
#include "rankone/word.hpp"

using namespace rankone;

TEST_CASE("period analysis") {
    auto a = period_analysis("0101");
    CHECK(a.period == 2);
    CHECK(a.root == "01");
    auto b = period_analysis("0");
    CHECK(b.period == 1);
    CHECK(b.root == "0");
    auto c = period_analysis("0110");
    CHECK(c.period == 3);
    CHECK(c.root == "110");
    // every word satisfies w[i] == w[i + per]
    for (std::string w : {"0101", "0110", "111", "010010100"}) {
        auto pa = period_analysis(w);
        for (std::size_t i = 0; i + pa.period < w.size(); ++i)
            CHECK(w[i] == w[i + pa.period]);
    }
}

TEST_CASE("root transfer instances") {
    CHECK(check_root_transfer("01", "010", "10"));
    CHECK(check_root_transfer("0", "0", "0"));
    CHECK_THROWS_AS(check_root_transfer("01", "010", "01"), std::invalid_argument);
}

TEST_CASE("commuting powers") {
    auto r = check_commuting_powers("0101", "01");
    REQUIRE(r.has_value());
    CHECK(*r == "01");
    auto self = check_commuting_powers("011011", "011011");
    REQUIRE(self.has_value());
    CHECK(*self == "011");
    CHECK_THROWS_AS(check_commuting_powers("01", "10"), std::invalid_argument);
}

TEST_CASE("period divisibility instances") {
    CHECK(check_period_divisibility("010101"));
    CHECK(check_period_divisibility("0110"));  // per > |w|/2: vacuous
    CHECK(check_period_divisibility("0010010"));
}

TEST_CASE("small exhaustive sweeps") {
    // full-depth sweeps live in the acceptance suite
    CHECK(root_transfer_exhaustive(8) == 0);
    CHECK(commuting_powers_exhaustive(10) == 0);
    CHECK(period_divisibility_exhaustive(12) == 0);
    CHECK(border_period_vs_bruteforce(10) == 0);
}

TEST_CASE("fibonacci rauzy graph at q = 2") {
    std::string fib = fibonacci_word(4000);
    auto g = build_rauzy(text_slice(fib, 2), text_slice(fib, 3));
    CHECK(g.vertices == std::vector<std::string>{"00", "01", "10"});
    CHECK(g.edge_count == 4);  // p(3) = 4
    CHECK(g.right_special_vertices().size() == 1);
    CHECK(g.vertices[g.right_special_vertices()[0]] == "10");
    CHECK_FALSE(g.ambiguous);
}

TEST_CASE("fibonacci decomposition at l = 5") {
    std::string fib = fibonacci_word(4000);
    auto g = build_rauzy(text_slice(fib, 5), text_slice(fib, 6));
    REQUIRE(g.right_special_vertices().size() == 1);
    auto dec = path_decomposition(g, 5, 2);
    CHECK(dec.every_edge_covered);
    CHECK(dec.counts_within_bounds);
    REQUIRE(dec.labels.size() == 2);
    CHECK(dec.labels[0].label == "010");
    CHECK(dec.labels[1].label == "10010");
    for (const auto& p : dec.labels) {
        CHECK(p.is_cycle);
        CHECK(p.root_certified);  // label is the minimal root of vertex+label
    }
    // sum of (outdeg - 1) equals p(6) - p(5) = 1
    CHECK(dec.rs_out_degree_excess == 1);
    // label lengths bounded by p(l) <= k l
    for (const auto& p : dec.labels) CHECK(Int((std::int64_t)p.label.size()) <= Int(2) * 5);
}

TEST_CASE("rauzy graphs on D1 match the complexity module") {
    auto table = complexity_table(desk_recipe(8), 16);
    LanguageEnumerator lang(desk_recipe(8));
    for (int q = 2; q <= 15; ++q) {
        auto g = build_rauzy(lang.slice(q).words, lang.slice(q + 1).words);
        CAPTURE(q);
        CHECK(g.edge_count == (std::int64_t)(table.p(q + 1)));
        CHECK((std::int64_t)g.right_special_vertices().size() == table.row(q).rs_count);
        // total out-degree equals the number of (q+1)-words
        std::int64_t deg = 0;
        for (int v = 0; v < (int)g.vertices.size(); ++v) deg += g.out_degree(v);
        CHECK(deg == (std::int64_t)(table.p(q + 1)));
    }
}

TEST_CASE("component retention reports ambiguity and follows frequency") {
    // two disconnected self-loop components; the counter steers retention
    std::vector<std::string> q2{"00", "11"};
    std::vector<std::string> q3{"000", "111"};
    auto g = build_rauzy(q2, q3, [](const std::string& w) {
        return w == "11" ? Int(10) : Int(3);
    });
    CHECK(g.ambiguous);
    REQUIRE(g.retained.size() == 2);
    CHECK(g.retained[g.vertex_index("11")]);
    CHECK_FALSE(g.retained[g.vertex_index("00")]);
}

TEST_CASE("find_constants on sturmian complexity") {
    std::vector<Int> p;
    for (int q = 1; q <= 40; ++q) p.push_back(q + 1);
    auto rc = find_constants(p, 40);
    REQUIRE(rc.found);
    CHECK(rc.k == 2);
    CHECK(rc.path_count == 340);
    CHECK(rc.label_count == 680);
    CHECK(rc.delta_x == rc.delta * rc.delta / 2);
    CHECK(rc.delta > 0);
    CHECK(rc.delta_x < rc.delta);
    CHECK(rc.delta < 1);
    CHECK((std::int64_t)rc.admissible_lengths.size() >= 10);
}

TEST_CASE("hypothetical k = 1 constants") {
    // strictly sublinear-looking p: p(q) = max(2, q/2)
    std::vector<Int> p;
    for (int q = 1; q <= 40; ++q) p.push_back(std::max<std::int64_t>(2, q / 2));
    auto rc = find_constants(p, 40);
    REQUIRE(rc.found);
    CHECK(rc.k == 1);
    CHECK(rc.path_count == 6);     // 2 + 4
    CHECK(rc.label_count == 12);
    Int denom = 4 * boost::multiprecision::pow(Int(12), 13);
    CHECK(rc.delta == Rat(1, denom));
}

TEST_CASE("find_constants flags superlinear-looking data") {
    std::vector<Int> p;
    Int v = 2;
    for (int q = 1; q <= 30; ++q) {
        v = v * 2 + 1;
        p.push_back(v);
    }
    auto rc = find_constants(p, 30, 50);
    CHECK_FALSE(rc.found);
}

TEST_CASE("witness ratios: lag zero is exactly one") {
    auto sym = build_symbolic(chacon_recipe(8), 8);
    auto rows = witness_search(sym, {Int(0), Int(14)}, 2, 8);
    CHECK(rows[0].min_ratio == 1);
    CHECK(rows[0].avg_ratio == 1);
    CHECK(rows[1].min_ratio > 0);
    CHECK(rows[1].min_ratio <= rows[1].avg_ratio);
}

TEST_CASE("chacon self-correlation stays high at its return times") {
    auto ch = chacon_recipe(10);
    auto sym = build_symbolic(ch, 10);
    auto h = heights(ch);
    std::vector<Int> lags;
    for (int n = 3; n <= 6; ++n) lags.push_back(h[n] + 1);
    auto rows = witness_search(sym, lags, 2, 10);
    for (const auto& row : rows) CHECK(row.min_ratio > Rat(45, 100));
}
