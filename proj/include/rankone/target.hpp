#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rankone/numeric.hpp"
#include "rankone/recipe.hpp"

namespace rankone {

// Positive integer table q -> f(q) on [1, horizon].
struct TargetFunction {
    std::vector<Int> values;  // values[q-1] = f(q)

    int horizon() const { return (int)values.size(); }
    const Int& at(int q) const { return values.at(q - 1); }
};

inline void require_valid(const TargetFunction& f) {
    if (f.horizon() < 1) throw std::invalid_argument("target function: empty table");
    for (const Int& v : f.values)
        if (v < 1) throw std::invalid_argument("target function: values must be >= 1");
}

// Monotone minorant g of f with g(1) = 1, g nondecreasing, g(q+2) - g(q) <= 1:
// g(2n+2) = g(2n+1), and g steps up at odd q exactly when the running minimum
// f*(q) = min_{q' in [q, horizon]} f(q') increased across the previous odd q.
// f* uses the finite horizon only, so values near the right edge are
// horizon-sensitive; the increments themselves never exceed the true ones.
inline TargetFunction regularize_target(const TargetFunction& f) {
    require_valid(f);
    int Q = f.horizon();
    if (Q < 3) throw std::invalid_argument("regularize_target: horizon must be >= 3");

    std::vector<Int> fstar(Q + 1);
    Int running = f.at(Q);
    for (int q = Q; q >= 1; --q) {
        if (f.at(q) < running) running = f.at(q);
        fstar[q] = running;
    }

    TargetFunction g;
    g.values.assign(Q, Int(1));
    auto set = [&](int q, const Int& v) { g.values[q - 1] = v; };
    auto get = [&](int q) { return g.values[q - 1]; };
    set(1, 1);
    if (Q >= 2) set(2, 1);
    for (int n = 1; 2 * n + 1 <= Q; ++n) {
        Int step = (fstar[2 * n + 1] > fstar[2 * n - 1]) ? 1 : 0;
        set(2 * n + 1, get(2 * n) + step);
        if (2 * n + 2 <= Q) set(2 * n + 2, get(2 * n + 1));
    }
    return g;
}

struct SynthesisResult {
    QuasiStaircaseRecipe recipe;
    std::vector<Int> d;  // d_n, index n-1
    DerivedScales scales;
};

// Builds (a, b, c) from a regularized target g: d_1 = d_2 = 1 and
// d_n = floor(cbrt(g(n))) afterwards, b_n = max(3, floor(cbrt(g(n)))),
// a_n = 2n+2, c_1 = 1, and c_n = m_{n-d_n} on d-plateaus,
// c_n = c_{n-1} + b_{n-1} at d-increments.  Heights and m interleave with c.
inline SynthesisResult synthesize_sequences(const TargetFunction& g, int depth) {
    require_valid(g);
    if (depth < 2) throw std::invalid_argument("synthesize_sequences: depth must be >= 2");
    if (g.horizon() < depth)
        throw std::invalid_argument("synthesize_sequences: target horizon shorter than depth");
    if (g.at(1) != 1) throw std::invalid_argument("synthesize_sequences: need g(1) = 1");
    for (int q = 1; q + 1 <= depth; ++q)
        if (g.at(q + 1) < g.at(q))
            throw std::invalid_argument("synthesize_sequences: g must be nondecreasing");
    for (int q = 1; q + 2 <= depth; ++q)
        if (g.at(q + 2) - g.at(q) > 1)
            throw std::invalid_argument("synthesize_sequences: need g(q+2) - g(q) <= 1");

    SynthesisResult out;
    out.recipe.depth = depth;
    out.d.reserve(depth);

    std::vector<Int> h(depth + 2), m(depth + 1);
    h[1] = 1;
    for (int n = 1; n <= depth; ++n) {
        Int dn = (n <= 2) ? Int(1) : icbrt(g.at(n));
        if (n > 1) {
            Int step = dn - out.d.back();
            if (step != 0 && step != 1)
                throw std::logic_error("synthesize_sequences: d-increment outside {0,1}");
            if (step == 1 && n > 2 && out.d[n - 2] - out.d[n - 3] == 1)
                throw std::logic_error("synthesize_sequences: consecutive d-increments");
        }
        out.d.push_back(dn);

        Int b3 = icbrt(g.at(n));
        std::int64_t bn = (b3 < 3) ? 3 : (std::int64_t)b3;
        std::int64_t an = 2 * n + 2;
        Int cn;
        if (n == 1) {
            cn = 1;
        } else if (dn == out.d[n - 2]) {
            Int idx = Int(n) - dn;
            if (idx < 1) throw std::logic_error("synthesize_sequences: m-index underflow");
            cn = m[(int)idx];
        } else {
            cn = out.recipe.c.back() + out.recipe.b.back();
        }
        out.recipe.a.push_back(an);
        out.recipe.b.push_back(bn);
        out.recipe.c.push_back(cn);

        m[n] = an * h[n] + (an + 1) * (cn + bn - 1);
        h[n + 1] = (an * bn + 1) * h[n] + an * bn * cn + an * bn * (bn - 1) / 2;
    }

    require_valid(out.recipe);
    out.scales = derive_scales(out.recipe);
    return out;
}

}  // namespace rankone
