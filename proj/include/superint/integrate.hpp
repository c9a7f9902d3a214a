#pragma once

#include <utility>

#include "dpoly.hpp"

namespace superint {

/// Result of integrate_by_parts: d/dv(antiderivative) + residual == input, exactly.
/// Residual holds whatever the heuristic could not absorb; it is never dropped.
struct IbpResult {
    DPoly antiderivative;
    DPoly residual;
};

namespace detail {

// Classification of one term relative to the integration variable v:
//   vpow   : power of v itself
//   vjets  : factors that are jets of dependents of v
//   rest   : v-free factors (parameters, other variables, jets not involving v)
struct TermView {
    int vpow = 0;
    std::vector<std::pair<Sym, int>> vjets;
    Monomial rest;
};

inline TermView split_term(const Monomial& m, Sym v) {
    auto& tab = SymTab::instance();
    TermView t;
    for (const auto& [s, e] : m.factors) {
        if (s == v) {
            t.vpow = e;
        } else if (SymTab::kind(s) == SymKind::Jet && tab.dep_var_index(SymTab::name_id(s), v) >= 0) {
            t.vjets.push_back({s, e});
        } else {
            t.rest.factors.push_back({s, e});
        }
    }
    return t;
}

inline Sym shift_jet(Sym s, Sym v, int delta) {
    auto& tab = SymTab::instance();
    uint32_t dep = SymTab::name_id(s);
    int vi = tab.dep_var_index(dep, v);
    int d0 = SymTab::jet_d0(s), d1 = SymTab::jet_d1(s);
    if (vi == 0) d0 += delta; else d1 += delta;
    return tab.jet(dep, d0, d1);
}

inline int jet_vorder(Sym s, Sym v) {
    auto& tab = SymTab::instance();
    int vi = tab.dep_var_index(SymTab::name_id(s), v);
    return vi == 0 ? SymTab::jet_d0(s) : SymTab::jet_d1(s);
}

} // namespace detail

/// Term-by-term quadrature in v. Handles
///   - v-free terms and pure powers of v exactly,
///   - single-jet terms v^k * J via repeated integration by parts (antiderivative
///     jets with negative index appear when the order drops below zero),
///   - total derivatives J^m * J' of a single jet (e.g. V*V' -> V^2/2), also
///     against powers of v by parts.
/// Anything else lands in the residual.
inline IbpResult integrate_by_parts(const DPoly& p, Sym v) {
    IbpResult res;
    // worklist of (poly still to integrate)
    std::vector<DPoly::Term> work(p.terms().begin(), p.terms().end());

    size_t guard = 0;
    while (!work.empty()) {
        if (++guard > 200000) throw std::runtime_error("integrate_by_parts: no progress");
        auto [m, c] = work.back();
        work.pop_back();

        detail::TermView t = detail::split_term(m, v);
        if (t.vpow < 0) { // Laurent in the integration variable is out of scope
            res.residual += DPoly::term(m, c);
            continue;
        }

        if (t.vjets.empty()) {
            // c * rest * v^k  ->  c/(k+1) * rest * v^(k+1)
            Monomial am = t.rest;
            am.factors.push_back({v, t.vpow + 1});
            std::sort(am.factors.begin(), am.factors.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            res.antiderivative += DPoly::term(am, c / GaussRat(t.vpow + 1));
            continue;
        }

        if (t.vjets.size() == 1 && t.vjets[0].second == 1) {
            // v^k * J : by parts k times, then absorb the bare jet
            auto [js, je] = t.vjets[0];
            Sym lower = detail::shift_jet(js, v, -1);
            if (t.vpow == 0) {
                Monomial am = t.rest;
                am.factors.push_back({lower, 1});
                std::sort(am.factors.begin(), am.factors.end(),
                          [](const auto& a, const auto& b) { return a.first < b.first; });
                res.antiderivative += DPoly::term(am, c);
            } else {
                // ∫ v^k J = v^k J^(-1) - k ∫ v^(k-1) J^(-1)
                Monomial am = t.rest;
                am.factors.push_back({v, t.vpow});
                am.factors.push_back({lower, 1});
                std::sort(am.factors.begin(), am.factors.end(),
                          [](const auto& a, const auto& b) { return a.first < b.first; });
                res.antiderivative += DPoly::term(am, c);

                Monomial wm = t.rest;
                if (t.vpow > 1) wm.factors.push_back({v, t.vpow - 1});
                wm.factors.push_back({lower, 1});
                std::sort(wm.factors.begin(), wm.factors.end(),
                          [](const auto& a, const auto& b) { return a.first < b.first; });
                work.push_back({wm, c * GaussRat(-t.vpow)});
            }
            continue;
        }

        if (t.vjets.size() == 2) {
            // total derivative J^e * J' with adjacent orders of the same dependent
            auto a = t.vjets[0], b = t.vjets[1];
            if (detail::jet_vorder(a.first, v) > detail::jet_vorder(b.first, v)) std::swap(a, b);
            bool same_dep = SymTab::name_id(a.first) == SymTab::name_id(b.first) &&
                            detail::shift_jet(a.first, v, 1) == b.first;
            if (same_dep && b.second == 1) {
                int mexp = a.second;
                if (t.vpow == 0) {
                    Monomial am = t.rest;
                    am.factors.push_back({a.first, mexp + 1});
                    std::sort(am.factors.begin(), am.factors.end(),
                              [](const auto& aa, const auto& bb) { return aa.first < bb.first; });
                    res.antiderivative += DPoly::term(am, c / GaussRat(mexp + 1));
                } else {
                    // ∫ v^k (J^(m+1)/(m+1))' = v^k J^(m+1)/(m+1) - k/(m+1) ∫ v^(k-1) J^(m+1)
                    Monomial am = t.rest;
                    am.factors.push_back({v, t.vpow});
                    am.factors.push_back({a.first, mexp + 1});
                    std::sort(am.factors.begin(), am.factors.end(),
                              [](const auto& aa, const auto& bb) { return aa.first < bb.first; });
                    res.antiderivative += DPoly::term(am, c / GaussRat(mexp + 1));

                    Monomial wm = t.rest;
                    if (t.vpow > 1) wm.factors.push_back({v, t.vpow - 1});
                    wm.factors.push_back({a.first, mexp + 1});
                    std::sort(wm.factors.begin(), wm.factors.end(),
                              [](const auto& aa, const auto& bb) { return aa.first < bb.first; });
                    work.push_back({wm, c * GaussRat(-t.vpow) / GaussRat(mexp + 1)});
                }
                continue;
            }
            // wider gap, top jet to the first power: integrate by parts against
            // the top jet and push the differentiated remainder back
            int gap = detail::jet_vorder(b.first, v) - detail::jet_vorder(a.first, v);
            if (b.second == 1 && gap >= 2 && detail::jet_vorder(b.first, v) >= 1) {
                Sym blow = detail::shift_jet(b.first, v, -1);
                auto mono = [&](std::vector<std::pair<Sym, int>> extra) {
                    Monomial mm;
                    mm.factors = std::move(extra);
                    std::sort(mm.factors.begin(), mm.factors.end(),
                              [](const auto& aa, const auto& bb) { return aa.first < bb.first; });
                    Monomial merged;
                    for (auto& fpair : mm.factors) {
                        if (!merged.factors.empty() && merged.factors.back().first == fpair.first)
                            merged.factors.back().second += fpair.second;
                        else
                            merged.factors.push_back(fpair);
                    }
                    merged.factors.erase(std::remove_if(merged.factors.begin(), merged.factors.end(),
                                                        [](const auto& fp) { return fp.second == 0; }),
                                         merged.factors.end());
                    return Monomial::mul(t.rest, merged);
                };
                std::vector<std::pair<Sym, int>> base = {{a.first, a.second}, {blow, 1}};
                if (t.vpow) base.push_back({v, t.vpow});
                res.antiderivative += DPoly::term(mono(base), c);

                if (t.vpow) {
                    std::vector<std::pair<Sym, int>> w1 = {{a.first, a.second}, {blow, 1}};
                    if (t.vpow > 1) w1.push_back({v, t.vpow - 1});
                    work.push_back({mono(w1), c * GaussRat(-t.vpow)});
                }
                std::vector<std::pair<Sym, int>> w2 = {{detail::shift_jet(a.first, v, 1), 1}, {blow, 1}};
                if (a.second != 1) w2.push_back({a.first, a.second - 1});
                if (t.vpow) w2.push_back({v, t.vpow});
                work.push_back({mono(w2), c * GaussRat(-a.second)});
                continue;
            }
        }

        res.residual += DPoly::term(m, c);
    }
    return res;
}

} // namespace superint
