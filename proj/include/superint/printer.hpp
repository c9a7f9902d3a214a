#pragma once

#include <sstream>
#include <string>

#include "dpoly.hpp"

namespace superint {

/// Display order: kind, then name string, then jet index. Independent of
/// interning order, so printed expressions are canonical.
inline bool display_sym_less(Sym a, Sym b) {
    auto ka = SymTab::kind(a), kb = SymTab::kind(b);
    if (ka != kb) return ka < kb;
    auto& tab = SymTab::instance();
    const std::string& na = tab.name(a);
    const std::string& nb = tab.name(b);
    if (na != nb) return na < nb;
    if (SymTab::jet_d0(a) != SymTab::jet_d0(b)) return SymTab::jet_d0(a) < SymTab::jet_d0(b);
    return SymTab::jet_d1(a) < SymTab::jet_d1(b);
}

struct PrintOptions {
    bool pretty = false; // primes for low-order jets, unicode hbar
};

namespace detail {

inline std::string factor_text(Sym s, int exp, const PrintOptions& opt) {
    auto& tab = SymTab::instance();
    std::string base;
    if (SymTab::kind(s) == SymKind::Jet) {
        uint32_t dep = SymTab::name_id(s);
        base = tab.name_of(dep);
        int d0 = SymTab::jet_d0(s), d1 = SymTab::jet_d1(s);
        if (tab.dep_vars(dep).size() >= 2) {
            if (d0 != 0 || d1 != 0) base += "^(" + std::to_string(d0) + "," + std::to_string(d1) + ")";
        } else if (d0 != 0) {
            if (opt.pretty && d0 >= 1 && d0 <= 3)
                base += std::string(static_cast<size_t>(d0), '\'');
            else
                base += "^(" + std::to_string(d0) + ")";
        }
    } else {
        base = tab.name(s);
        if (opt.pretty && base == "hbar") base = "\xC4\xA7"; // ħ
    }
    if (exp != 1) {
        bool wrapped = base.find('^') != std::string::npos || base.find('\'') != std::string::npos;
        if (wrapped) base = "(" + base + ")";
        base += "^" + std::to_string(exp);
    }
    return base;
}

struct PrintTerm {
    std::vector<std::pair<Sym, int>> factors; // display-sorted
    bool has_i = false;
    Rat coeff;
};

} // namespace detail

inline std::string to_text(const DPoly& p, const PrintOptions& opt = {}) {
    if (p.is_zero()) return "0";
    std::vector<detail::PrintTerm> pts;
    for (const auto& [m, c] : p.terms()) {
        std::vector<std::pair<Sym, int>> f = m.factors;
        std::sort(f.begin(), f.end(), [](const auto& a, const auto& b) { return display_sym_less(a.first, b.first); });
        if (!(c.re == 0)) pts.push_back({f, false, c.re});
        if (!(c.im == 0)) pts.push_back({f, true, c.im});
    }
    std::sort(pts.begin(), pts.end(), [](const detail::PrintTerm& a, const detail::PrintTerm& b) {
        if (a.factors != b.factors) {
            const size_t n = std::min(a.factors.size(), b.factors.size());
            for (size_t i = 0; i < n; ++i) {
                if (a.factors[i].first != b.factors[i].first)
                    return display_sym_less(a.factors[i].first, b.factors[i].first);
                if (a.factors[i].second != b.factors[i].second) return a.factors[i].second > b.factors[i].second;
            }
            return a.factors.size() < b.factors.size();
        }
        return !a.has_i && b.has_i;
    });

    std::ostringstream os;
    bool first = true;
    for (const auto& t : pts) {
        Rat c = t.coeff;
        bool neg = c < 0;
        if (neg) c = -c;
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        bool need_coeff = !(c == 1) || (t.factors.empty() && !t.has_i);
        if (need_coeff) os << to_string(c);
        bool need_star = need_coeff;
        if (t.has_i) {
            if (need_star) os << "*";
            os << "i";
            need_star = true;
        }
        for (const auto& [s, e] : t.factors) {
            if (need_star) os << "*";
            os << detail::factor_text(s, e, opt);
            need_star = true;
        }
    }
    return os.str();
}

} // namespace superint
