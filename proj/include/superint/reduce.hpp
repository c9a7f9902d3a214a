#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "dpoly.hpp"
#include "printer.hpp"

namespace superint {

/// A single-variable ODE relation solved for its highest derivative:
///   dep^(order) = rhs, with rhs containing only lower jets of dep.
struct OdeRelation {
    uint32_t dep;
    Sym var;
    int order;
    DPoly rhs;

    /// Builds a relation from a defining equation eq = 0. The highest jet of
    /// `dep` must occur linearly with an invertible (constant or assumed-nonzero
    /// monomial) coefficient.
    static OdeRelation from_equation(uint32_t dep, Sym var, const DPoly& eq) {
        auto jets = eq.jets_of(dep);
        if (jets.empty()) throw std::domain_error("equation contains no jet of the dependent");
        int top = SymTab::jet_d0(jets[0]);
        for (Sym j : jets) top = std::max(top, SymTab::jet_d0(j));
        Sym lead = SymTab::instance().jet(dep, top);

        DPoly coeff, rest;
        for (const auto& [m, c] : eq.terms()) {
            int e = m.exponent(lead);
            if (e == 0) {
                rest += DPoly::term(m, c);
            } else if (e == 1) {
                Monomial q;
                for (const auto& f : m.factors)
                    if (f.first != lead) q.factors.push_back(f);
                coeff += DPoly::term(q, c);
            } else {
                throw std::domain_error("leading derivative appears nonlinearly");
            }
        }
        if (!coeff.is_monomial())
            throw std::domain_error("leading coefficient is not an invertible term: " + to_text(coeff));
        const auto& [cm, cc] = coeff.terms()[0];
        for (const auto& [s, e] : cm.factors) {
            auto k = SymTab::kind(s);
            if (k != SymKind::Param && k != SymKind::Formal)
                throw std::domain_error("leading coefficient depends on variables: " + to_text(coeff));
        }
        OdeRelation r;
        r.dep = dep;
        r.var = var;
        r.order = top;
        r.rhs = (-rest).divided_by_term(cm, cc);
        if (r.rhs.max_exponent(lead) != 0 || [&] {
                for (Sym j : r.rhs.jets_of(dep))
                    if (SymTab::jet_d0(j) >= top) return true;
                return false;
            }())
            throw std::domain_error("rhs still contains the leading derivative");
        return r;
    }
};

/// Rewrites every jet of order >= relation order using the relation and its
/// derivatives; the result contains only jets below the leading order and is
/// idempotent.
class OdeReducer {
public:
    explicit OdeReducer(std::vector<OdeRelation> rels) : rels_(std::move(rels)) {}

    DPoly reduce(const DPoly& p) const {
        DPoly cur = p;
        for (const auto& rel : rels_) cur = reduce_one(cur, rel);
        // relations may reintroduce each other's dependents; iterate to a fixpoint
        for (int guard = 0; guard < 64; ++guard) {
            bool dirty = false;
            for (const auto& rel : rels_)
                if (has_high_jet(cur, rel)) {
                    cur = reduce_one(cur, rel);
                    dirty = true;
                }
            if (!dirty) return cur;
        }
        throw std::runtime_error("reduce_mod_ode did not reach a fixpoint");
    }

private:
    static bool has_high_jet(const DPoly& p, const OdeRelation& rel) {
        for (Sym j : p.jets_of(rel.dep))
            if (SymTab::jet_d0(j) >= rel.order) return true;
        return false;
    }

    DPoly reduce_one(const DPoly& p, const OdeRelation& rel) const {
        int top = 0;
        for (Sym j : p.jets_of(rel.dep)) top = std::max(top, SymTab::jet_d0(j));
        if (top < rel.order) return p;

        // table[k] = reduced form of dep^(order+k)
        std::vector<DPoly> table;
        table.push_back(rel.rhs);
        for (int k = 1; k <= top - rel.order; ++k) {
            DPoly d = table.back().differentiate(rel.var);
            // differentiation can raise a jet to exactly `order`; substitute it away
            Sym lead = SymTab::instance().jet(rel.dep, rel.order);
            if (d.max_exponent(lead) > 0) d = d.substitute_symbol(lead, table[0]);
            table.push_back(std::move(d));
        }

        auto& tab = SymTab::instance();
        DPoly out;
        for (const auto& [m, c] : p.terms()) {
            DPoly repl(1);
            Monomial rest;
            bool touched = false;
            for (const auto& [s, e] : m.factors) {
                if (SymTab::kind(s) == SymKind::Jet && SymTab::name_id(s) == rel.dep &&
                    SymTab::jet_d0(s) >= rel.order) {
                    if (e < 0) throw std::domain_error("cannot reduce a negative jet power");
                    repl *= table[SymTab::jet_d0(s) - rel.order].pow(e);
                    touched = true;
                } else {
                    rest.factors.push_back({s, e});
                }
            }
            (void)tab;
            out += touched ? repl * DPoly::term(rest, c) : DPoly::term(m, c);
        }
        return out;
    }

    std::vector<OdeRelation> rels_;
};

inline DPoly reduce_mod_ode(const DPoly& p, const std::vector<OdeRelation>& rels) {
    return OdeReducer(rels).reduce(p);
}

} // namespace superint
