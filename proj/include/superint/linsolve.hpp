#pragma once

#include <map>
#include <vector>

#include "dpoly.hpp"
#include "printer.hpp"

namespace superint {

/// Exact solver for conditions that are affine in a designated set of unknown
/// constants. Conditions are split by their monomial content outside the
/// unknowns and the declared coefficient symbols; each slot yields one linear
/// equation whose entries are polynomials in the coefficient symbols (treated
/// as generic scalars). Pivots must be single terms so that the elimination
/// stays exact.
struct AffineSolution {
    bool consistent = true;
    std::map<uint64_t, DPoly> assignment;   // pivot unknown -> expression in free unknowns/coefficients
    std::vector<Sym> free_unknowns;
    std::vector<DPoly> obstructions;        // conditions no choice of unknowns can cancel
    std::vector<DPoly> nonlinear;           // conditions not affine in the unknowns

    DPoly apply(const DPoly& p) const {
        DPoly out = p;
        for (const auto& [sym, val] : assignment) {
            Sym s{sym};
            if (out.contains_symbol(s)) out = out.substitute_symbol(s, val);
        }
        return out;
    }
};

inline AffineSolution solve_affine(const std::vector<DPoly>& conditions, const std::vector<Sym>& unknowns,
                                   const std::vector<Sym>& coefficient_syms = {}) {
    AffineSolution res;
    auto is_unknown = [&](Sym s) {
        for (Sym u : unknowns)
            if (u == s) return true;
        return false;
    };
    auto is_coeff = [&](Sym s) {
        for (Sym u : coefficient_syms)
            if (u == s) return true;
        return false;
    };

    struct Row {
        std::vector<DPoly> c; // per unknown
        DPoly d;              // inhomogeneous part
    };
    std::vector<Row> rows;

    for (const DPoly& cond : conditions) {
        if (cond.is_zero()) continue;
        std::map<Monomial, Row> by_slot;
        bool affine = true;
        for (const auto& [m, coef] : cond.terms()) {
            int uidx = -1;
            Monomial slot, cf;
            for (const auto& [s, e] : m.factors) {
                if (is_unknown(s)) {
                    if (uidx >= 0 || e != 1) { affine = false; break; }
                    for (size_t k = 0; k < unknowns.size(); ++k)
                        if (unknowns[k] == s) uidx = static_cast<int>(k);
                } else if (is_coeff(s)) {
                    cf.factors.push_back({s, e});
                } else {
                    slot.factors.push_back({s, e});
                }
            }
            if (!affine) break;
            Row& r = by_slot[slot];
            if (r.c.empty()) r.c.assign(unknowns.size(), DPoly());
            DPoly piece = DPoly::term(cf, coef);
            if (uidx >= 0) r.c[static_cast<size_t>(uidx)] += piece; else r.d += piece;
        }
        if (!affine) {
            res.nonlinear.push_back(cond);
            res.consistent = false;
            continue;
        }
        for (auto& [slot, row] : by_slot) rows.push_back(std::move(row));
    }

    // fraction-free elimination: divide by single-term pivots when possible,
    // otherwise cross-multiply (coefficient symbols are generic scalars)
    const size_t nu = unknowns.size();
    std::vector<int> pivot_of_col(nu, -1);
    size_t rank = 0;
    for (size_t col = 0; col < nu && rank < rows.size(); ++col) {
        size_t pr = rows.size();
        int best = -1; // 2 constant, 1 monomial, 0 general
        for (size_t r = rank; r < rows.size(); ++r) {
            const DPoly& c = rows[r].c[col];
            if (c.is_zero()) continue;
            int q = c.is_constant() ? 2 : (c.is_monomial() ? 1 : 0);
            if (q > best) { best = q; pr = r; }
        }
        if (pr == rows.size()) continue;
        std::swap(rows[rank], rows[pr]);
        const DPoly pivot = rows[rank].c[col];
        const bool pivot_mono = pivot.is_monomial();
        const Monomial pm = pivot_mono ? pivot.terms()[0].first : Monomial{};
        const GaussRat pc = pivot_mono ? pivot.terms()[0].second : GaussRat(0);
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r].c[col].is_zero()) continue;
            DPoly f = rows[r].c[col];
            if (pivot_mono) {
                f = f.divided_by_term(pm, pc);
                for (size_t k2 = 0; k2 < nu; ++k2)
                    if (!rows[rank].c[k2].is_zero()) rows[r].c[k2] -= f * rows[rank].c[k2];
                rows[r].d -= f * rows[rank].d;
            } else {
                for (size_t k2 = 0; k2 < nu; ++k2)
                    rows[r].c[k2] = pivot * rows[r].c[k2] - f * rows[rank].c[k2];
                rows[r].d = pivot * rows[r].d - f * rows[rank].d;
            }
        }
        pivot_of_col[col] = static_cast<int>(rank);
        ++rank;
    }
    for (size_t r = rank; r < rows.size(); ++r) {
        bool nonzero_coeff = false;
        for (const auto& c : rows[r].c) nonzero_coeff |= !c.is_zero();
        if (nonzero_coeff || !rows[r].d.is_zero()) {
            DPoly cond = rows[r].d;
            for (size_t k2 = 0; k2 < nu; ++k2)
                if (!rows[r].c[k2].is_zero()) cond += rows[r].c[k2] * DPoly::var(unknowns[k2]);
            if (!cond.is_zero()) {
                res.consistent = false;
                res.obstructions.push_back(cond);
            }
        }
    }

    for (size_t col = 0; col < nu; ++col) {
        if (pivot_of_col[col] < 0) {
            res.free_unknowns.push_back(unknowns[col]);
            continue;
        }
        const Row& row = rows[static_cast<size_t>(pivot_of_col[col])];
        DPoly val = -row.d;
        for (size_t k2 = 0; k2 < nu; ++k2) {
            if (k2 == col || row.c[k2].is_zero()) continue;
            val -= row.c[k2] * DPoly::var(unknowns[k2]);
        }
        const DPoly& piv = row.c[col];
        if (piv.is_monomial()) {
            res.assignment[unknowns[col].packed] =
                val.divided_by_term(piv.terms()[0].first, piv.terms()[0].second);
        } else {
            // no explicit solution; keep the defining relation as a condition
            res.obstructions.push_back(piv * DPoly::var(unknowns[col]) - val);
            res.consistent = false;
        }
    }
    return res;
}

} // namespace superint
