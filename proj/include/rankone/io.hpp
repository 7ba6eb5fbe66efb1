#pragma once

#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "rankone/numeric.hpp"
#include "rankone/recipe.hpp"
#include "rankone/target.hpp"

namespace rankone {

using LoadedRecipe = std::variant<QuasiStaircaseRecipe, RankOneRecipe>;

namespace detail {

inline std::int64_t to_i64(const Int& v, const char* what) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw budget_error(std::string(what) + ": value does not fit a 64-bit recipe file");
    return (std::int64_t)v;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

}  // namespace detail

inline std::string recipe_json(const QuasiStaircaseRecipe& q) {
    nlohmann::ordered_json j;
    j["kind"] = "quasi_staircase";
    j["depth"] = q.depth;
    j["a"] = q.a;
    j["b"] = q.b;
    std::vector<std::int64_t> c;
    for (const Int& v : q.c) c.push_back(detail::to_i64(v, "c"));
    j["c"] = c;
    return j.dump(2) + "\n";
}

inline std::string recipe_json(const RankOneRecipe& r) {
    nlohmann::ordered_json j;
    j["kind"] = "rank_one";
    j["depth"] = r.depth;
    j["cuts"] = r.cuts;
    std::vector<std::vector<std::int64_t>> sp;
    for (const auto& row : r.spacers) {
        std::vector<std::int64_t> out;
        for (const Int& v : row) out.push_back(detail::to_i64(v, "spacers"));
        sp.push_back(std::move(out));
    }
    j["spacers"] = sp;
    return j.dump(2) + "\n";
}

inline void save_recipe(const QuasiStaircaseRecipe& q, const std::string& path) {
    detail::write_file(path, recipe_json(q));
}
inline void save_recipe(const RankOneRecipe& r, const std::string& path) {
    detail::write_file(path, recipe_json(r));
}

inline LoadedRecipe load_recipe(const std::string& path) {
    nlohmann::json j = nlohmann::json::parse(detail::read_file(path));
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "quasi_staircase") {
        QuasiStaircaseRecipe q;
        q.depth = j.at("depth").get<int>();
        q.a = j.at("a").get<std::vector<std::int64_t>>();
        q.b = j.at("b").get<std::vector<std::int64_t>>();
        for (std::int64_t v : j.at("c").get<std::vector<std::int64_t>>()) q.c.push_back(v);
        return q;
    }
    if (kind == "rank_one") {
        RankOneRecipe r;
        r.depth = j.at("depth").get<int>();
        r.cuts = j.at("cuts").get<std::vector<std::int64_t>>();
        for (const auto& row : j.at("spacers").get<std::vector<std::vector<std::int64_t>>>()) {
            std::vector<Int> s(row.begin(), row.end());
            r.spacers.push_back(std::move(s));
        }
        return r;
    }
    throw std::runtime_error("unknown recipe kind: " + kind);
}

// Two-column CSV `q,f`; the horizon is inferred and must be contiguous from 1.
inline TargetFunction load_target_csv(const std::string& path) {
    std::istringstream in(detail::read_file(path));
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("target csv: empty file");
    std::map<std::int64_t, Int> vals;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error("target csv: expected q,f rows");
        std::int64_t q = std::stoll(line.substr(0, comma));
        Int f(line.substr(comma + 1));
        vals[q] = f;
    }
    if (vals.empty()) throw std::runtime_error("target csv: no rows");
    TargetFunction f;
    std::int64_t expect = 1;
    for (const auto& [q, v] : vals) {
        if (q != expect)
            throw std::runtime_error("target csv: rows must cover q = 1..Q contiguously");
        f.values.push_back(v);
        ++expect;
    }
    return f;
}

// CSV helper: deterministic rows, LF endings, header first.
class CsvWriter {
public:
    explicit CsvWriter(std::string header) { out_ += header + "\n"; }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ += ",";
            out_ += cells[i];
        }
        out_ += "\n";
    }
    const std::string& text() const { return out_; }
    void save(const std::string& path) const { detail::write_file(path, out_); }

private:
    std::string out_;
};

inline std::string int_cell(const Int& v) { return v.str(); }
inline std::string rat_cell(const Rat& v) { return fraction_string(v); }

}  // namespace rankone
