#pragma once

#include <string>
#include <vector>

#include "integrate.hpp"
#include "printer.hpp"

namespace superint {

/// First-order PDE chain
///   d_y f_0 = G_0,   d_x f_{j-1} + d_y f_j = G_j (0<j<n),   d_x f_{n-1} = G_n
/// with n unknowns f_0..f_{n-1} and n+1 right-hand sides.
struct ChainSystem {
    std::vector<DPoly> G;            // size n+1
    std::vector<uint32_t> unknowns;  // dependent ids of the f's (may be empty for synthetic chains)

    int n() const { return static_cast<int>(G.size()) - 1; }
};

/// The alternating elimination identity: applying
///   sum_{j=0}^{n} (-1)^j d_x^{n-j} d_y^{j}
/// to the chain's left-hand sides cancels every unknown, so the same
/// combination of the G's is the chain's integrability condition.
inline DPoly chain_eliminate(const ChainSystem& c) {
    const Vocab& v = Vocab::get();
    const int n = c.n();
    if (n < 0) throw std::invalid_argument("empty chain");
    DPoly acc;
    for (int j = 0; j <= n; ++j) {
        DPoly t = c.G[static_cast<size_t>(j)].differentiate(v.x, n - j).differentiate(v.y, j);
        if (j % 2) acc -= t; else acc += t;
    }
    for (uint32_t dep : c.unknowns)
        if (acc.contains_dependent(dep))
            throw std::domain_error("malformed chain: unknown '" + SymTab::instance().name_of(dep) +
                                    "' survives elimination");
    return acc;
}

struct ChainSolution {
    bool ok = true;
    std::string error;
    std::vector<DPoly> f;           // resolved unknowns (empty on failure)
    std::vector<DPoly> conditions;  // residual integrability conditions on the data
    std::vector<Sym> constants;     // fresh integration constants introduced
};

namespace detail {

inline std::vector<uint32_t> deps_depending_on(const DPoly& p, Sym var) {
    std::vector<uint32_t> out;
    auto& tab = SymTab::instance();
    for (uint32_t d : p.dependents())
        if (tab.dep_var_index(d, var) >= 0) out.push_back(d);
    return out;
}

} // namespace detail

/// Solves the chain by successive quadrature in y. Each step introduces an
/// arbitrary function g_j(x); the final equation, collected by its y-side
/// content, yields ODEs fixing the g's (solved by quadrature in x, with fresh
/// integration constants) plus residual conditions on the potential data.
inline ChainSolution solve_chain(const ChainSystem& chain) {
    const Vocab& v = Vocab::get();
    auto& tab = SymTab::instance();
    ChainSolution sol;
    const int n = chain.n();
    if (n <= 0) {
        sol.ok = false;
        sol.error = "chain has no unknowns to solve";
        return sol;
    }

    std::vector<uint32_t> gdep;
    std::vector<DPoly> f(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        DPoly rhs = chain.G[static_cast<size_t>(j)];
        if (j > 0) rhs -= f[static_cast<size_t>(j - 1)].differentiate(v.x);
        IbpResult r = integrate_by_parts(rhs, v.y);
        if (!r.residual.is_zero()) {
            sol.ok = false;
            sol.error = "quadrature failure at f_" + std::to_string(j) +
                        ": unabsorbable term " + to_text(r.residual);
            return sol;
        }
        uint32_t g = tab.dependent(tab.fresh_name("g"), {v.x});
        gdep.push_back(g);
        f[static_cast<size_t>(j)] = r.antiderivative + DPoly::var(tab.jet(g, 0));
    }

    DPoly E = chain.G[static_cast<size_t>(n)] - f[static_cast<size_t>(n - 1)].differentiate(v.x);

    // peel off the g's slot by slot
    for (int guard = 0; guard < 4 * n + 8; ++guard) {
        bool found = false;
        auto slots = E.collect({v.y}, detail::deps_depending_on(E, v.y));
        for (const auto& [mono, coef] : slots) {
            bool pure_y = true;
            for (const auto& [s, e] : mono.factors) pure_y = pure_y && (s == v.y);
            if (!pure_y) continue;
            // highest-order g jet in this slot
            Sym best{};
            int best_order = -1;
            uint32_t best_dep = 0;
            for (uint32_t g : gdep)
                for (Sym js : coef.jets_of(g))
                    if (SymTab::jet_d0(js) > best_order) {
                        best = js;
                        best_order = SymTab::jet_d0(js);
                        best_dep = g;
                    }
            if (best_order < 0) continue;

            auto parts = coef.collect({best});
            Monomial key{{{best, 1}}};
            auto itc = parts.find(key);
            if (itc == parts.end()) continue; // appears only nonlinearly (should not happen)
            DPoly lead = itc->second;
            if (!lead.is_constant()) {
                sol.ok = false;
                sol.error = "cannot isolate " + to_text(DPoly::var(best)) + ": leading coefficient " +
                            to_text(lead);
                return sol;
            }
            DPoly rhs = (DPoly::var(best) * lead - coef).divided_by_term(Monomial{}, lead.constant_value());
            for (Sym js : rhs.jets_of(best_dep))
                if (SymTab::jet_d0(js) >= best_order) {
                    sol.ok = false;
                    sol.error = "chain is not triangular in the integration functions";
                    return sol;
                }
            // g^(s) = rhs: integrate s times, a fresh constant per quadrature
            DPoly gsol = rhs;
            for (int s = best_order; s > 0; --s) {
                IbpResult r = integrate_by_parts(gsol, v.x);
                if (!r.residual.is_zero()) {
                    sol.ok = false;
                    sol.error = "quadrature failure solving " + tab.name_of(best_dep) + ": " +
                                to_text(r.residual);
                    return sol;
                }
                Sym k = tab.param(tab.fresh_name("k"));
                sol.constants.push_back(k);
                gsol = r.antiderivative + DPoly::var(k);
            }
            for (auto& fv : f)
                if (fv.contains_dependent(best_dep)) fv = fv.substitute_dependent(best_dep, gsol);
            E = E.substitute_dependent(best_dep, gsol);
            found = true;
            break;
        }
        if (!found) break;
    }

    for (uint32_t g : gdep)
        if (E.contains_dependent(g)) {
            sol.ok = false;
            sol.error = "unresolved integration function " + tab.name_of(g);
            return sol;
        }

    if (!E.is_zero()) {
        auto slots = E.collect({v.y}, detail::deps_depending_on(E, v.y));
        for (const auto& [mono, coef] : slots) sol.conditions.push_back(coef * DPoly::term(mono, GaussRat(1)));
    }
    sol.f = std::move(f);
    return sol;
}

} // namespace superint
