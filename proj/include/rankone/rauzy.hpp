#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "rankone/numeric.hpp"
#include "rankone/rigidity.hpp"
#include "rankone/word.hpp"

namespace rankone {

// G_q: vertices are the length-q language words, one edge per length-(q+1)
// word z, from its prefix to its suffix, labeled with the last letter.
struct RauzyGraph {
    int q = 0;
    std::vector<std::string> vertices;                     // sorted
    std::vector<std::vector<std::pair<int, char>>> edges;  // per vertex: (target, label)
    std::vector<char> retained;                            // vertex in the kept component
    bool ambiguous = false;                                // several candidate components
    std::int64_t edge_count = 0;

    int vertex_index(const std::string& w) const {
        auto it = std::lower_bound(vertices.begin(), vertices.end(), w);
        if (it == vertices.end() || *it != w) return -1;
        return (int)(it - vertices.begin());
    }
    int out_degree(int v) const {
        int d = 0;
        for (const auto& [to, ch] : edges[v])
            if (retained[to]) ++d;
        return d;
    }
    std::vector<int> right_special_vertices() const {
        std::vector<int> out;
        for (int v = 0; v < (int)vertices.size(); ++v)
            if (retained[v] && out_degree(v) >= 2) out.push_back(v);
        return out;
    }
};

namespace detail {

// Iterative Tarjan; returns the component id per vertex.
inline std::vector<int> strongly_connected_components(
    const std::vector<std::vector<std::pair<int, char>>>& adj, int& comp_count) {
    int n = (int)adj.size();
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<char> on_stack(n, 0);
    std::vector<int> stack;
    int next_index = 0;
    comp_count = 0;

    struct Frame {
        int v;
        std::size_t edge;
    };
    for (int start = 0; start < n; ++start) {
        if (index[start] != -1) continue;
        std::vector<Frame> call{{start, 0}};
        index[start] = low[start] = next_index++;
        stack.push_back(start);
        on_stack[start] = 1;
        while (!call.empty()) {
            auto& fr = call.back();
            if (fr.edge < adj[fr.v].size()) {
                int w = adj[fr.v][fr.edge].first;
                ++fr.edge;
                if (index[w] == -1) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[fr.v] = std::min(low[fr.v], index[w]);
                }
            } else {
                int v = fr.v;
                call.pop_back();
                if (low[v] == index[v]) {
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        comp[w] = comp_count;
                        if (w == v) break;
                    }
                    ++comp_count;
                }
                if (!call.empty()) {
                    int parent = call.back().v;
                    low[parent] = std::min(low[parent], low[v]);
                }
            }
        }
    }
    return comp;
}

}  // namespace detail

// Builds G_q from the q- and (q+1)-slices.  When several components contain a
// cycle, keeps the one holding the most frequent vertex (per the supplied
// occurrence counter) and flags the ambiguity.
inline RauzyGraph build_rauzy(const std::vector<std::string>& slice_q,
                              const std::vector<std::string>& slice_q1,
                              const std::function<Int(const std::string&)>& occurrences = {}) {
    if (slice_q.empty()) throw std::invalid_argument("build_rauzy: empty language");
    RauzyGraph g;
    g.q = (int)slice_q.front().size();
    g.vertices = slice_q;
    std::sort(g.vertices.begin(), g.vertices.end());
    g.edges.assign(g.vertices.size(), {});
    for (const auto& z : slice_q1) {
        int from = g.vertex_index(z.substr(0, z.size() - 1));
        int to = g.vertex_index(z.substr(1));
        if (from < 0 || to < 0)
            throw std::invalid_argument("build_rauzy: slice at q+1 is not consistent with q");
        g.edges[from].emplace_back(to, z.back());
        ++g.edge_count;
    }

    int comp_count = 0;
    auto comp = detail::strongly_connected_components(g.edges, comp_count);
    // a component is a candidate when it contains at least one edge
    std::vector<char> has_edge(comp_count, 0);
    for (int v = 0; v < (int)g.vertices.size(); ++v)
        for (const auto& [to, ch] : g.edges[v])
            if (comp[v] == comp[to]) has_edge[comp[v]] = 1;
    std::vector<int> candidates;
    for (int c = 0; c < comp_count; ++c)
        if (has_edge[c]) candidates.push_back(c);

    int keep = -1;
    if (candidates.size() <= 1) {
        keep = candidates.empty() ? -1 : candidates[0];
    } else {
        g.ambiguous = true;
        Int best = -1;
        for (int v = 0; v < (int)g.vertices.size(); ++v) {
            if (!has_edge[comp[v]]) continue;
            Int f = occurrences ? occurrences(g.vertices[v]) : Int(0);
            if (f > best) {
                best = f;
                keep = comp[v];
            }
        }
    }
    g.retained.assign(g.vertices.size(), 0);
    for (int v = 0; v < (int)g.vertices.size(); ++v)
        if (comp[v] == keep) g.retained[v] = 1;
    return g;
}

struct PathLabel {
    std::string start_vertex;
    std::string end_vertex;
    std::string label;
    bool is_cycle = false;        // simple cycle shorter than 3l/2
    Int disjointness;             // c_{n,j}
    bool root_certified = false;  // label is the minimal root of (vertex + label)
};

struct RauzyDecomposition {
    int ell = 0;
    std::vector<int> right_special;          // vertex ids
    std::vector<PathLabel> labels;           // good paths then cycles, sorted
    Int rs_out_degree_excess;                // sum over RS of (outdeg - 1)
    bool every_edge_covered = false;
    bool counts_within_bounds = false;       // |RS| <= k, |labels| <= 2K
};

// Segments between right-special vertices (no RS vertex inside), then the
// bounded concatenations: paths of total length in [3l/2, k l] containing no
// proper cycle, and simple cycles shorter than 3l/2.
inline RauzyDecomposition path_decomposition(const RauzyGraph& g, int ell, const Int& k) {
    RauzyDecomposition out;
    out.ell = ell;
    out.right_special = g.right_special_vertices();

    struct Segment {
        int from, to;
        std::string label;
    };
    std::vector<Segment> segments;
    std::vector<char> covered(g.vertices.size(), 0);
    for (int v : out.right_special) {
        for (const auto& [to0, ch0] : g.edges[v]) {
            if (!g.retained[to0]) continue;
            std::string label(1, ch0);
            int cur = to0;
            covered[v] = 1;
            while (std::find(out.right_special.begin(), out.right_special.end(), cur) ==
                   out.right_special.end()) {
                covered[cur] = 1;
                const auto& outs = g.edges[cur];
                int next = -1;
                char ch = 0;
                for (const auto& [t2, c2] : outs)
                    if (g.retained[t2]) {
                        next = t2;
                        ch = c2;
                        break;
                    }
                if (next < 0) throw std::logic_error("path_decomposition: dead end in component");
                label += ch;
                cur = next;
            }
            covered[cur] = 1;
            segments.push_back({v, cur, std::move(label)});
        }
    }
    out.every_edge_covered = true;
    for (int v = 0; v < (int)g.vertices.size(); ++v)
        if (g.retained[v] && !covered[v]) out.every_edge_covered = false;

    out.rs_out_degree_excess = 0;
    for (int v : out.right_special) out.rs_out_degree_excess += g.out_degree(v) - 1;

    // bounded concatenations by depth-first search over segments
    std::vector<std::vector<int>> seg_from(g.vertices.size());
    for (int s = 0; s < (int)segments.size(); ++s) seg_from[segments[s].from].push_back(s);

    Int max_len = k * ell;
    std::vector<PathLabel> good, cycles;
    struct State {
        int at;
        std::string label;
        std::vector<int> visited;  // RS vertices entered so far (interior repeats forbidden)
    };
    for (int v : out.right_special) {
        std::vector<State> stack{{v, "", {v}}};
        while (!stack.empty()) {
            State st = std::move(stack.back());
            stack.pop_back();
            for (int s : seg_from[st.at]) {
                const auto& seg = segments[s];
                std::string lbl = st.label + seg.label;
                if (Int((std::int64_t)lbl.size()) > max_len) continue;
                bool closes = (seg.to == v);
                bool interior_repeat =
                    std::find(st.visited.begin(), st.visited.end(), seg.to) != st.visited.end() &&
                    !closes;
                if (interior_repeat) continue;
                if (closes && 2 * (std::int64_t)lbl.size() < 3 * ell) {
                    PathLabel p;
                    p.start_vertex = g.vertices[v];
                    p.end_vertex = g.vertices[seg.to];
                    p.label = lbl;
                    p.is_cycle = true;
                    cycles.push_back(std::move(p));
                    continue;  // simple cycle; do not extend past the start
                }
                if (2 * (std::int64_t)lbl.size() >= 3 * ell) {
                    PathLabel p;
                    p.start_vertex = g.vertices[v];
                    p.end_vertex = g.vertices[seg.to];
                    p.label = lbl;
                    good.push_back(p);
                    if (!closes) {
                        State nxt{seg.to, lbl, st.visited};
                        nxt.visited.push_back(seg.to);
                        stack.push_back(std::move(nxt));
                    }
                    continue;
                }
                if (!closes) {
                    State nxt{seg.to, std::move(lbl), st.visited};
                    nxt.visited.push_back(seg.to);
                    stack.push_back(std::move(nxt));
                }
            }
        }
    }

    auto finish = [&](PathLabel& p) {
        auto pa = period_analysis(p.start_vertex + p.label);
        if (p.is_cycle) {
            if (2 * (std::int64_t)p.label.size() <= ell) {
                p.disjointness = (std::int64_t)p.label.size();
            } else {
                p.disjointness = std::min<Int>((std::int64_t)p.label.size(),
                                               (std::int64_t)(p.start_vertex.size() + p.label.size()) / 2);
            }
            p.root_certified = (pa.root == p.label);
        } else {
            auto own = period_analysis(p.label);
            p.disjointness =
                std::min<Int>(own.period, (std::int64_t)p.label.size() / 2);
        }
    };
    for (auto& p : good) finish(p);
    for (auto& p : cycles) finish(p);

    auto order = [](const PathLabel& a, const PathLabel& b) {
        return std::tie(a.label, a.start_vertex) < std::tie(b.label, b.start_vertex);
    };
    std::sort(good.begin(), good.end(), order);
    std::sort(cycles.begin(), cycles.end(), order);
    good.erase(std::unique(good.begin(), good.end(),
                           [](const PathLabel& a, const PathLabel& b) {
                               return a.label == b.label && a.start_vertex == b.start_vertex;
                           }),
               good.end());
    out.labels = std::move(good);
    out.labels.insert(out.labels.end(), cycles.begin(), cycles.end());

    Int k2 = k;
    Int K = 0, pw = 1;
    for (Int t2 = 1; t2 <= 2 * k2; ++t2) {
        pw *= 2 * k2;
        K += pw;
    }
    out.counts_within_bounds =
        Int((std::int64_t)out.right_special.size()) <= k &&
        Int((std::int64_t)out.labels.size()) <= 2 * K;
    return out;
}

}  // namespace rankone
