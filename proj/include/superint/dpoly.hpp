#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rational.hpp"
#include "symbol.hpp"

namespace superint {

/// Monomial: sorted (symbol, exponent) pairs, exponents nonzero.
/// Negative exponents are admitted only for invertible symbols (checked on division).
struct Monomial {
    std::vector<std::pair<Sym, int>> factors;

    bool is_one() const { return factors.empty(); }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors == b.factors; }
    friend bool operator<(const Monomial& a, const Monomial& b) {
        const size_t n = std::min(a.factors.size(), b.factors.size());
        for (size_t i = 0; i < n; ++i) {
            if (a.factors[i].first != b.factors[i].first)
                return a.factors[i].first < b.factors[i].first;
            if (a.factors[i].second != b.factors[i].second)
                return a.factors[i].second > b.factors[i].second; // higher power first
        }
        return a.factors.size() < b.factors.size();
    }

    int exponent(Sym s) const {
        for (auto& [sym, e] : factors)
            if (sym == s) return e;
        return 0;
    }

    static Monomial mul(const Monomial& a, const Monomial& b) {
        Monomial r;
        r.factors.reserve(a.factors.size() + b.factors.size());
        size_t i = 0, j = 0;
        while (i < a.factors.size() && j < b.factors.size()) {
            if (a.factors[i].first == b.factors[j].first) {
                int e = a.factors[i].second + b.factors[j].second;
                if (e != 0) r.factors.emplace_back(a.factors[i].first, e);
                ++i, ++j;
            } else if (a.factors[i].first < b.factors[j].first) {
                r.factors.push_back(a.factors[i++]);
            } else {
                r.factors.push_back(b.factors[j++]);
            }
        }
        for (; i < a.factors.size(); ++i) r.factors.push_back(a.factors[i]);
        for (; j < b.factors.size(); ++j) r.factors.push_back(b.factors[j]);
        return r;
    }
};

class DPoly {
public:
    using Term = std::pair<Monomial, GaussRat>;

    DPoly() = default;
    DPoly(long n) {
        if (n != 0) terms_.push_back({Monomial{}, GaussRat(n)});
    }
    DPoly(const GaussRat& c) {
        if (!c.is_zero()) terms_.push_back({Monomial{}, c});
    }
    DPoly(const Rat& c) {
        if (!(c == 0)) terms_.push_back({Monomial{}, GaussRat(c)});
    }

    static DPoly var(Sym s, int exp = 1) {
        DPoly p;
        if (exp != 0)
            p.terms_.push_back({Monomial{{{s, exp}}}, GaussRat(1)});
        else
            p = DPoly(1);
        return p;
    }

    static DPoly term(const Monomial& m, const GaussRat& c) {
        DPoly p;
        if (!c.is_zero()) p.terms_.push_back({m, c});
        return p;
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one());
    }
    GaussRat constant_value() const {
        if (terms_.empty()) return GaussRat(0);
        if (terms_.size() == 1 && terms_[0].first.is_one()) return terms_[0].second;
        throw std::domain_error("DPoly is not a constant");
    }
    bool is_monomial() const { return terms_.size() == 1; }

    friend bool operator==(const DPoly& a, const DPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const DPoly& a, const DPoly& b) { return !(a == b); }

    DPoly operator-() const {
        DPoly r = *this;
        for (auto& t : r.terms_) t.second = -t.second;
        return r;
    }

    DPoly& operator+=(const DPoly& o) { return merge(o, false); }
    DPoly& operator-=(const DPoly& o) { return merge(o, true); }

    friend DPoly operator+(DPoly a, const DPoly& b) { return a += b; }
    friend DPoly operator-(DPoly a, const DPoly& b) { return a -= b; }

    friend DPoly operator*(const DPoly& a, const DPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Term> acc;
        acc.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_)
                acc.push_back({Monomial::mul(ma, mb), ca * cb});
        return from_unsorted(std::move(acc));
    }
    DPoly& operator*=(const DPoly& o) { return *this = *this * o; }

    DPoly scaled(const GaussRat& c) const {
        if (c.is_zero()) return {};
        DPoly r = *this;
        for (auto& t : r.terms_) t.second *= c;
        return r;
    }

    DPoly pow(int n) const {
        if (n < 0) throw std::domain_error("DPoly::pow negative exponent");
        DPoly r(1);
        DPoly b = *this;
        while (n) {
            if (n & 1) r *= b;
            b = (n >>= 1) ? b * b : b;
        }
        return r;
    }

    /// Exact division by a single term. Negative resulting exponents need invertible symbols.
    DPoly divided_by_term(const Monomial& m, const GaussRat& c) const {
        if (c.is_zero()) throw std::domain_error("division by zero term");
        Monomial inv;
        inv.factors = m.factors;
        for (auto& f : inv.factors) f.second = -f.second;
        DPoly r;
        r.terms_.reserve(terms_.size());
        for (const auto& [mm, cc] : terms_) {
            Monomial q = Monomial::mul(mm, inv);
            for (auto& [s, e] : q.factors)
                if (e < 0 && !SymTab::instance().invertible(s) && SymTab::kind(s) != SymKind::Param)
                    throw std::domain_error("inexact monomial division: negative power of non-invertible symbol");
            r.terms_.push_back({std::move(q), cc / c});
        }
        std::sort(r.terms_.begin(), r.terms_.end(), term_less);
        return r;
    }

    // --- structure queries -------------------------------------------------

    bool contains_symbol(Sym s) const {
        for (const auto& [m, c] : terms_)
            for (const auto& [sym, e] : m.factors)
                if (sym == s) return true;
        return false;
    }

    bool contains_dependent(uint32_t dep) const {
        for (const auto& [m, c] : terms_)
            for (const auto& [sym, e] : m.factors)
                if (SymTab::kind(sym) == SymKind::Jet && SymTab::name_id(sym) == dep) return true;
        return false;
    }

    /// All jet symbols of the given dependent occurring anywhere.
    std::vector<Sym> jets_of(uint32_t dep) const {
        std::set<uint64_t> seen;
        std::vector<Sym> out;
        for (const auto& [m, c] : terms_)
            for (const auto& [sym, e] : m.factors)
                if (SymTab::kind(sym) == SymKind::Jet && SymTab::name_id(sym) == dep && seen.insert(sym.packed).second)
                    out.push_back(sym);
        return out;
    }

    std::set<uint32_t> dependents() const {
        std::set<uint32_t> out;
        for (const auto& [m, c] : terms_)
            for (const auto& [sym, e] : m.factors)
                if (SymTab::kind(sym) == SymKind::Jet) out.insert(SymTab::name_id(sym));
        return out;
    }

    int min_exponent(Sym s) const { // over all terms; terms without s count as 0
        int mn = 0;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            int e = m.exponent(s);
            if (first || e < mn) mn = e;
            first = false;
        }
        return terms_.empty() ? 0 : mn;
    }

    int max_exponent(Sym s) const {
        int mx = 0;
        for (const auto& [m, c] : terms_) mx = std::max(mx, m.exponent(s));
        return mx;
    }

    GaussRat coeff_of(const Monomial& m) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                                   [](const Term& t, const Monomial& mm) { return t.first < mm; });
        if (it != terms_.end() && it->first == m) return it->second;
        return GaussRat(0);
    }

    // --- calculus ------------------------------------------------------------

    DPoly differentiate(Sym var) const {
        auto& tab = SymTab::instance();
        std::vector<Term> acc;
        for (const auto& [m, c] : terms_) {
            for (size_t i = 0; i < m.factors.size(); ++i) {
                auto [s, e] = m.factors[i];
                DPoly dfac; // derivative of the single factor s
                if (s == var) {
                    dfac = DPoly(1);
                } else if (SymTab::kind(s) == SymKind::Jet) {
                    uint32_t dep = SymTab::name_id(s);
                    int vi = tab.dep_var_index(dep, var);
                    if (vi < 0) continue;
                    int d0 = SymTab::jet_d0(s), d1 = SymTab::jet_d1(s);
                    if (vi == 0) ++d0; else ++d1;
                    dfac = DPoly::var(tab.jet(dep, d0, d1));
                } else {
                    continue;
                }
                // term -> e * s^(e-1) * dfac * (other factors)
                Monomial rest;
                rest.factors.reserve(m.factors.size());
                for (size_t j = 0; j < m.factors.size(); ++j) {
                    if (j == i) {
                        if (e != 1) rest.factors.emplace_back(s, e - 1);
                    } else {
                        rest.factors.push_back(m.factors[j]);
                    }
                }
                GaussRat cc = c * GaussRat(e);
                for (const auto& [dm, dc] : dfac.terms_)
                    acc.push_back({Monomial::mul(rest, dm), cc * dc});
            }
        }
        return from_unsorted(std::move(acc));
    }

    DPoly differentiate(Sym var, int times) const {
        DPoly p = *this;
        for (int i = 0; i < times; ++i) p = p.differentiate(var);
        return p;
    }

    // --- collect ---------------------------------------------------------------

    /// Splits p = sum target-monomial * coefficient, coefficients free of targets.
    /// A symbol matches when it is in `targets` directly, or is a jet of a dependent
    /// listed in `target_deps`.
    std::map<Monomial, DPoly> collect(const std::vector<Sym>& targets,
                                      const std::vector<uint32_t>& target_deps = {}) const {
        auto is_target = [&](Sym s) {
            for (Sym t : targets)
                if (t == s) return true;
            if (SymTab::kind(s) == SymKind::Jet)
                for (uint32_t d : target_deps)
                    if (SymTab::name_id(s) == d) return true;
            return false;
        };
        std::map<Monomial, DPoly> out;
        for (const auto& [m, c] : terms_) {
            Monomial key, rest;
            for (const auto& f : m.factors)
                (is_target(f.first) ? key : rest).factors.push_back(f);
            out[key] += DPoly::term(rest, c);
        }
        for (auto it = out.begin(); it != out.end();)
            it = it->second.is_zero() ? out.erase(it) : std::next(it);
        return out;
    }

    // --- substitution ------------------------------------------------------------

    /// Replaces a plain symbol by a polynomial (exponent-wise powers; negative
    /// exponents require `value` to be a nonzero constant or single term).
    DPoly substitute_symbol(Sym s, const DPoly& value) const {
        std::map<int, DPoly> powers; // exponent -> value^exponent
        DPoly out;
        for (const auto& [m, c] : terms_) {
            int e = m.exponent(s);
            if (e == 0) {
                out += DPoly::term(m, c);
                continue;
            }
            Monomial rest;
            for (const auto& f : m.factors)
                if (f.first != s) rest.factors.push_back(f);
            auto it = powers.find(e);
            if (it == powers.end()) {
                DPoly pw;
                if (e > 0) {
                    pw = value.pow(e);
                } else {
                    if (!value.is_monomial())
                        throw std::domain_error("substitute_symbol: negative power of non-monomial replacement");
                    const auto& [vm, vc] = value.terms()[0];
                    pw = DPoly(1).divided_by_term(vm, vc).pow(-e);
                }
                it = powers.emplace(e, std::move(pw)).first;
            }
            out += it->second * DPoly::term(rest, c);
        }
        return out;
    }

    /// Replaces every jet of `dep` by the corresponding mixed partial of `value`.
    DPoly substitute_dependent(uint32_t dep, const DPoly& value) const {
        auto& tab = SymTab::instance();
        const auto& vars = tab.dep_vars(dep);
        std::map<uint64_t, DPoly> derivs; // jet symbol -> derivative of value
        std::function<const DPoly&(int, int)> deriv_of = [&](int d0, int d1) -> const DPoly& {
            Sym key = tab.jet(dep, d0, d1);
            auto it = derivs.find(key.packed);
            if (it != derivs.end()) return it->second;
            DPoly v;
            if (d0 == 0 && d1 == 0) {
                v = value;
            } else if (d0 > 0) {
                v = deriv_of(d0 - 1, d1).differentiate(vars[0]);
            } else {
                v = deriv_of(d0, d1 - 1).differentiate(vars.at(1));
            }
            return derivs.emplace(key.packed, std::move(v)).first->second;
        };

        DPoly out;
        for (const auto& [m, c] : terms_) {
            DPoly repl(1);
            Monomial rest;
            bool touched = false;
            for (const auto& [s, e] : m.factors) {
                if (SymTab::kind(s) == SymKind::Jet && SymTab::name_id(s) == dep) {
                    if (e < 0) throw std::domain_error("substitute_dependent: negative jet power");
                    int d0 = SymTab::jet_d0(s), d1 = SymTab::jet_d1(s);
                    if (d0 < 0 || d1 < 0)
                        throw std::domain_error("substitute_dependent: antiderivative jet " + tab.name_of(dep) +
                                                " has no substitution");
                    repl *= deriv_of(d0, d1).pow(e);
                    touched = true;
                } else {
                    rest.factors.push_back({s, e});
                }
            }
            out += touched ? repl * DPoly::term(rest, c) : DPoly::term(m, c);
        }
        return out;
    }

    /// Renames every jet of `dep` to the matching jet of `to` (same orders).
    DPoly rename_dependent(uint32_t dep, uint32_t to) const {
        auto& tab = SymTab::instance();
        std::vector<Term> acc = terms_;
        for (auto& [m, c] : acc)
            for (auto& [s, e] : m.factors)
                if (SymTab::kind(s) == SymKind::Jet && SymTab::name_id(s) == dep)
                    s = tab.jet(to, SymTab::jet_d0(s), SymTab::jet_d1(s));
        for (auto& [m, c] : acc)
            std::sort(m.factors.begin(), m.factors.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
        return from_unsorted(std::move(acc));
    }

    // --- hbar grading ------------------------------------------------------------

    /// p with hbar set to zero (terms carrying positive hbar powers dropped).
    DPoly at_hbar_zero() const {
        Sym h = Vocab::get().hbar;
        DPoly out;
        for (const auto& [m, c] : terms_) {
            int e = m.exponent(h);
            if (e < 0) throw std::domain_error("hbar -> 0 on a Laurent term");
            if (e == 0) out.terms_.push_back({m, c});
        }
        return out;
    }

    static DPoly from_unsorted(std::vector<Term> acc) {
        std::sort(acc.begin(), acc.end(), term_less);
        DPoly r;
        r.terms_.reserve(acc.size());
        for (auto& t : acc) {
            if (!r.terms_.empty() && r.terms_.back().first == t.first)
                r.terms_.back().second += t.second;
            else
                r.terms_.push_back(std::move(t));
        }
        r.terms_.erase(std::remove_if(r.terms_.begin(), r.terms_.end(),
                                      [](const Term& t) { return t.second.is_zero(); }),
                       r.terms_.end());
        return r;
    }

private:
    static bool term_less(const Term& a, const Term& b) { return a.first < b.first; }

    DPoly& merge(const DPoly& o, bool sub) {
        std::vector<Term> out;
        out.reserve(terms_.size() + o.terms_.size());
        size_t i = 0, j = 0;
        while (i < terms_.size() && j < o.terms_.size()) {
            if (terms_[i].first == o.terms_[j].first) {
                GaussRat c = terms_[i].second;
                if (sub) c -= o.terms_[j].second; else c += o.terms_[j].second;
                if (!c.is_zero()) out.push_back({terms_[i].first, std::move(c)});
                ++i, ++j;
            } else if (terms_[i].first < o.terms_[j].first) {
                out.push_back(terms_[i++]);
            } else {
                out.push_back({o.terms_[j].first, sub ? -o.terms_[j].second : o.terms_[j].second});
                ++j;
            }
        }
        for (; i < terms_.size(); ++i) out.push_back(terms_[i]);
        for (; j < o.terms_.size(); ++j) out.push_back({o.terms_[j].first, sub ? -o.terms_[j].second : o.terms_[j].second});
        terms_ = std::move(out);
        return *this;
    }

    std::vector<Term> terms_;
};

inline DPoly operator*(const GaussRat& c, const DPoly& p) { return p.scaled(c); }
inline DPoly operator*(const DPoly& p, const GaussRat& c) { return p.scaled(c); }

/// Common hbar power of a set, for the classical limit.
inline int common_hbar_power(const std::vector<DPoly>& set) {
    Sym h = Vocab::get().hbar;
    bool any = false;
    int mn = 0;
    for (const auto& p : set) {
        if (p.is_zero()) continue;
        int e = p.min_exponent(h);
        mn = any ? std::min(mn, e) : e;
        any = true;
    }
    return any ? mn : 0;
}

} // namespace superint
