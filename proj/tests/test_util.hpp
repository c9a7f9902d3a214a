#pragma once

#include <random>

#include "superint/superint.hpp"

namespace testutil {

using namespace superint;

inline GaussRat small_rat(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
    return GaussRat(make_rat(num(rng), den(rng)));
}

/// Random polynomial in x, y and low-order jets of V1, V2.
inline DPoly random_dpoly(std::mt19937& rng, int terms = 5, bool with_jets = true) {
    const Vocab& v = Vocab::get();
    std::uniform_int_distribution<int> exp(0, 2), pick(0, with_jets ? 5 : 2), ord(0, 2);
    DPoly p;
    for (int t = 0; t < terms; ++t) {
        Monomial m;
        for (int f = 0; f < 3; ++f) {
            int e = exp(rng);
            if (e == 0) continue;
            Sym s;
            switch (pick(rng)) {
                case 0: s = v.x; break;
                case 1: s = v.y; break;
                case 2: s = v.hbar; break;
                case 3: s = v.sigma; break;
                case 4: s = jet(v.V1, ord(rng)); break;
                default: s = jet(v.V2, ord(rng)); break;
            }
            m.factors.push_back({s, e});
        }
        std::sort(m.factors.begin(), m.factors.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        Monomial merged;
        for (auto& fp : m.factors) {
            if (!merged.factors.empty() && merged.factors.back().first == fp.first)
                merged.factors.back().second += fp.second;
            else
                merged.factors.push_back(fp);
        }
        GaussRat c = small_rat(rng);
        if (!c.is_zero()) p += DPoly::term(merged, c);
    }
    return p;
}

inline AMap random_amap(std::mt19937& rng, int N) {
    std::uniform_int_distribution<int> num(-4, 4), den(1, 3), keep(0, 2);
    AMap A;
    for (int a = 0; a <= N; ++a)
        for (int m = 0; a + m <= N; ++m) {
            int n = N - a - m;
            if (keep(rng) == 0) continue;
            Rat val = make_rat(num(rng), den(rng));
            if (val == 0) continue;
            A[{a, m, n}] = DPoly(GaussRat(val));
        }
    if (A.empty()) A[{0, N, 0}] = DPoly(1);
    return A;
}

} // namespace testutil
