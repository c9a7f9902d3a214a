#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "parser.hpp"
#include "printer.hpp"

namespace superint {

/// A polynomial ODE in one variable: equation = 0, polynomial in the jets of
/// `dep` with coefficients polynomial in the independent variable and the
/// listed parameters. `nonzero` carries nonvanishing assumptions (hbar etc).
struct OdeSpec {
    uint32_t dep = 0;
    Sym indep{};
    DPoly equation;
    std::vector<Sym> params;
    std::vector<Sym> nonzero;

    int order() const {
        int n = 0;
        for (Sym j : equation.jets_of(dep)) n = std::max(n, SymTab::jet_d0(j));
        return n;
    }

    void validate() const {
        auto& tab = SymTab::instance();
        for (const auto& [m, c] : equation.terms())
            for (const auto& [s, e] : m.factors) {
                if (s == indep) continue;
                if (SymTab::kind(s) == SymKind::Jet) {
                    if (SymTab::name_id(s) != dep)
                        throw std::domain_error("foreign function " + tab.name(s) + " in ODE");
                    continue;
                }
                if (SymTab::kind(s) == SymKind::Base)
                    throw std::domain_error("second independent variable " + tab.name(s) + " in ODE");
            }
    }
};

// --- ODE text format --------------------------------------------------------
//   indep z
//   dep F order 3
//   param a1 a2 sigma Lambda
//   assume hbar != 0
//   eq <expr> = 0
// '#' starts a comment.

inline OdeSpec parse_ode_file(const std::string& text) {
    auto& tab = SymTab::instance();
    const Vocab& v = Vocab::get();
    (void)v;
    OdeSpec ode;
    int declared_order = -1;
    std::string indep_name;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw == "indep") {
            if (!(ls >> indep_name)) throw ParseError("indep needs a variable", lineno, 1);
            ode.indep = tab.base(indep_name);
        } else if (kw == "dep") {
            std::string name, orderkw;
            int ord;
            if (!(ls >> name >> orderkw >> ord) || orderkw != "order")
                throw ParseError("dep line must read 'dep <name> order <n>'", lineno, 1);
            if (indep_name.empty()) throw ParseError("dep before indep", lineno, 1);
            ode.dep = tab.dependent(name, {ode.indep});
            declared_order = ord;
        } else if (kw == "param") {
            std::string p;
            while (ls >> p) ode.params.push_back(tab.param(p));
        } else if (kw == "assume") {
            std::string p, op, val;
            if (!(ls >> p >> op >> val) || (op != "!=" && op != "!") || val != "0")
                throw ParseError("assume line must read 'assume <name> != 0'", lineno, 1);
            Sym s = (p == "hbar") ? Vocab::get().hbar : tab.param(p, true);
            tab.set_nonzero(s);
            ode.nonzero.push_back(s);
        } else if (kw == "eq") {
            std::string rest;
            std::getline(ls, rest);
            auto eqpos = rest.rfind('=');
            if (eqpos == std::string::npos) throw ParseError("eq line must contain '= 0'", lineno, 1);
            std::string rhs = rest.substr(eqpos + 1);
            std::string lhs = rest.substr(0, eqpos);
            ode.equation = parse_expression(lhs) - parse_expression(rhs);
        } else {
            throw ParseError("unknown directive '" + kw + "'", lineno, 1);
        }
    }
    if (ode.dep == 0 && ode.equation.is_zero()) throw std::domain_error("empty ODE file");
    ode.validate();
    if (declared_order >= 0 && ode.order() != declared_order)
        throw std::domain_error("declared order " + std::to_string(declared_order) +
                                " does not match equation order " + std::to_string(ode.order()));
    return ode;
}

inline std::string ode_to_text(const OdeSpec& ode) {
    auto& tab = SymTab::instance();
    std::ostringstream os;
    os << "indep " << tab.name(ode.indep) << "\n";
    os << "dep " << tab.name_of(ode.dep) << " order " << ode.order() << "\n";
    if (!ode.params.empty()) {
        os << "param";
        for (Sym p : ode.params) os << " " << tab.name(p);
        os << "\n";
    }
    for (Sym s : ode.nonzero) os << "assume " << tab.name(s) << " != 0\n";
    os << "eq " << to_text(ode.equation) << " = 0\n";
    return os.str();
}

// --- Laurent series over DPoly coefficients ---------------------------------

namespace ars {

struct LSeries {
    int base = 0;              // lowest chi power
    std::vector<DPoly> c;      // coefficients of chi^(base+i)

    DPoly at(int power) const {
        int i = power - base;
        if (i < 0 || i >= static_cast<int>(c.size())) return {};
        return c[static_cast<size_t>(i)];
    }
    void trim() {
        while (!c.empty() && c.front().is_zero()) {
            c.erase(c.begin());
            ++base;
        }
    }
};

/// Drops terms of degree >= 2 in the linearization marker.
inline DPoly drop_s2(const DPoly& p, Sym s) {
    DPoly out;
    for (const auto& [m, cc] : p.terms())
        if (m.exponent(s) < 2) out += DPoly::term(m, cc);
    return out;
}

inline LSeries series_add(const LSeries& a, const LSeries& b) {
    if (a.c.empty()) return b;
    if (b.c.empty()) return a;
    LSeries r;
    r.base = std::min(a.base, b.base);
    int top = std::max(a.base + static_cast<int>(a.c.size()), b.base + static_cast<int>(b.c.size()));
    r.c.assign(static_cast<size_t>(top - r.base), DPoly());
    for (size_t i = 0; i < a.c.size(); ++i) r.c[static_cast<size_t>(a.base - r.base) + i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[static_cast<size_t>(b.base - r.base) + i] += b.c[i];
    return r;
}

/// Product truncated to `rel_len` coefficients counted from the product's own
/// lowest order; safe regardless of how later factors shift the base.
inline LSeries series_mul(const LSeries& a, const LSeries& b, int rel_len, std::optional<Sym> smark) {
    LSeries r;
    if (a.c.empty() || b.c.empty() || rel_len <= 0) return r;
    r.base = a.base + b.base;
    r.c.assign(static_cast<size_t>(rel_len), DPoly());
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i].is_zero()) continue;
        for (size_t j = 0; j < b.c.size(); ++j) {
            if (static_cast<int>(i + j) >= rel_len) break;
            if (b.c[j].is_zero()) continue;
            DPoly prod = a.c[i] * b.c[j];
            if (smark) prod = drop_s2(prod, *smark);
            r.c[i + j] += prod;
        }
    }
    return r;
}

inline LSeries series_diff(const LSeries& a) {
    LSeries r;
    r.base = a.base - 1;
    r.c.resize(a.c.size());
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i].scaled(GaussRat(a.base + static_cast<int>(i)));
    return r;
}

/// (z0 + chi)^deg to rel_len coefficients, exact.
inline LSeries z_series(int deg, int rel_len) {
    const Sym z0 = Vocab::get().z0;
    LSeries r;
    r.base = 0;
    int len = std::min(deg + 1, rel_len);
    if (len <= 0) return r;
    r.c.reserve(static_cast<size_t>(len));
    Rat b(1);
    for (int k = 0; k < len; ++k) {
        Monomial m;
        if (deg - k != 0) m.factors.push_back({z0, deg - k});
        r.c.push_back(DPoly::term(m, GaussRat(b)));
        b *= Rat(deg - k);
        b /= Rat(k + 1);
    }
    return r;
}

/// One additive term of the ODE in balance-ready form.
struct OdeTerm {
    DPoly coef;                           // parameters only
    int zdeg = 0;                         // power of the independent variable
    std::vector<std::pair<int, int>> jets; // (derivative order, exponent), order-sorted
    int jet_degree = 0;                   // sum of exponents
    int jet_weight = 0;                   // sum order*exponent
};

inline std::vector<OdeTerm> ode_terms(const OdeSpec& ode) {
    std::vector<OdeTerm> out;
    std::map<std::pair<int, std::vector<std::pair<int, int>>>, DPoly> grouped;
    for (const auto& [m, c] : ode.equation.terms()) {
        OdeTerm t;
        Monomial rest;
        for (const auto& [s, e] : m.factors) {
            if (s == ode.indep) t.zdeg = e;
            else if (SymTab::kind(s) == SymKind::Jet && SymTab::name_id(s) == ode.dep)
                t.jets.push_back({SymTab::jet_d0(s), e});
            else rest.factors.push_back({s, e});
        }
        std::sort(t.jets.begin(), t.jets.end());
        grouped[{t.zdeg, t.jets}] += DPoly::term(rest, c);
    }
    for (auto& [key, coef] : grouped) {
        if (coef.is_zero()) continue;
        OdeTerm t;
        t.zdeg = key.first;
        t.jets = key.second;
        t.coef = coef;
        for (auto& [o, e] : t.jets) {
            t.jet_degree += e;
            t.jet_weight += o * e;
        }
        out.push_back(std::move(t));
    }
    return out;
}

/// Minimal chi-order of a term on the branch u ~ a0 chi^p (generic z0).
inline Rat term_order(const OdeTerm& t, const Rat& p) {
    return Rat(t.jet_degree) * p - Rat(t.jet_weight);
}

/// Polynomial arithmetic over Q for the symbolic-a0 quotient ring.
using QPoly = std::vector<Rat>; // coefficients, low to high; normalized (no trailing zeros)

inline void qtrim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}
inline QPoly qmul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    qtrim(r);
    return r;
}
inline QPoly qrem(QPoly a, const QPoly& m) {
    qtrim(a);
    while (a.size() >= m.size() && !a.empty()) {
        Rat f = a.back() / m.back();
        size_t off = a.size() - m.size();
        for (size_t i = 0; i < m.size(); ++i) a[off + i] -= f * m[i];
        qtrim(a);
    }
    return a;
}
/// Extended Euclid: returns u with u*a == 1 mod m, or nullopt when a is a zero divisor.
inline std::optional<QPoly> qinv_mod(QPoly a, QPoly m) {
    qtrim(a);
    qtrim(m);
    QPoly r0 = m, r1 = qrem(a, m);
    QPoly t0 = {}, t1 = {Rat(1)};
    while (!r1.empty()) {
        // quotient of r0 by r1
        QPoly q(r0.size() > r1.size() - 1 ? r0.size() - r1.size() + 1 : 1, Rat(0));
        QPoly rr = r0;
        while (rr.size() >= r1.size() && !rr.empty()) {
            Rat f = rr.back() / r1.back();
            size_t off = rr.size() - r1.size();
            q[off] += f;
            for (size_t i = 0; i < r1.size(); ++i) rr[off + i] -= f * r1[i];
            qtrim(rr);
        }
        qtrim(q);
        QPoly t2 = t0;
        QPoly qt = qmul(q, t1);
        if (t2.size() < qt.size()) t2.resize(qt.size(), Rat(0));
        for (size_t i = 0; i < qt.size(); ++i) t2[i] -= qt[i];
        qtrim(t2);
        t0 = t1;
        t1 = t2;
        r0 = r1;
        r1 = rr;
    }
    if (r0.size() != 1) return std::nullopt; // gcd not a unit
    QPoly u = t0;
    for (auto& cc : u) cc /= r0[0];
    return qrem(u, m);
}

} // namespace ars

// --- Balances ---------------------------------------------------------------

/// Dominant balance u ~ a0 (z - z0)^p. The leading coefficient is either an
/// explicit rational multiple of a parameter monomial, or a root beta of a
/// rational minimal polynomial, a0 = beta * scale.
struct Balance {
    Rat p;
    bool integer_p = true;
    bool a0_symbolic = false;
    Rat a0_q;                 // rational case: a0 = a0_q * a0_scale
    Monomial a0_scale;
    Sym beta{};               // symbolic case
    ars::QPoly minpoly;       // monic-normalizable polynomial with rational coefficients
    std::vector<size_t> dominant;
    std::string diagnostic;

    DPoly a0_poly() const {
        if (!a0_symbolic) return DPoly::term(a0_scale, GaussRat(a0_q));
        Monomial m = a0_scale;
        m.factors.push_back({beta, 1});
        std::sort(m.factors.begin(), m.factors.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        return DPoly::term(m, GaussRat(1));
    }
};

enum class ResStatus { SatisfiedGeneric, SatisfiedUnderConstraints, Failed };

struct ResonanceCheck {
    long r;
    ResStatus status;
    std::vector<DPoly> constraints;
};

enum class Verdict { Pass, PassWithConstraints, Fail, Inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::PassWithConstraints: return "pass-with-constraints";
        case Verdict::Fail: return "fail";
        default: return "inconclusive";
    }
}

struct BranchReport {
    Balance balance;
    std::vector<Rat> resonances;      // exact roots found (rationals; integers when passing)
    bool resonances_complete = true;  // polynomial fully factored
    std::vector<ResonanceCheck> checks;
    Verdict verdict = Verdict::Inconclusive;
    std::string note;
};

struct PainleveReport {
    std::vector<BranchReport> branches;
    Verdict verdict = Verdict::Inconclusive;
    std::string diagnostic;
};

namespace ars {

/// Rational roots of a rational-coefficient polynomial, with multiplicity,
/// by divisor enumeration on the primitive integer form.
inline std::vector<Rat> rational_roots(QPoly poly, bool* complete) {
    qtrim(poly);
    std::vector<Rat> roots;
    *complete = true;
    if (poly.size() <= 1) return roots;
    // roots at zero
    size_t shift = 0;
    while (shift < poly.size() && poly[shift] == 0) ++shift;
    for (size_t i = 0; i < shift; ++i) roots.push_back(Rat(0));
    poly.erase(poly.begin(), poly.begin() + static_cast<long>(shift));

    auto divisors = [](mpz_class n) {
        std::vector<mpz_class> d;
        n = abs(n);
        if (n == 0) return d;
        for (mpz_class i = 1; i * i <= n; ++i)
            if (n % i == 0) {
                d.push_back(i);
                if (i * i != n) d.push_back(n / i);
            }
        return d;
    };

    while (poly.size() > 1) {
        // clear denominators
        mpz_class den(1);
        for (const Rat& c : poly) den = lcm(den, c.get_den());
        std::vector<mpz_class> ip;
        for (const Rat& c : poly) ip.push_back(mpz_class(c * Rat(den)));
        mpz_class g(0);
        for (const auto& c : ip) g = gcd(g, c);
        if (g > 1)
            for (auto& c : ip) c /= g;
        if (abs(ip.front()) > mpz_class("1000000000000000000")) { *complete = false; break; }
        bool found = false;
        auto ps = divisors(ip.front());
        auto qs = divisors(ip.back());
        for (const auto& pp : ps) {
            for (const auto& qq : qs) {
                for (int sign = 1; sign >= -1 && !found; sign -= 2) {
                    Rat cand(pp * sign, qq);
                    cand.canonicalize();
                    // evaluate
                    Rat val(0);
                    for (size_t i = poly.size(); i-- > 0;) val = val * cand + poly[i];
                    if (val == 0) {
                        roots.push_back(cand);
                        // deflate
                        QPoly q(poly.size() - 1, Rat(0));
                        Rat carry(0);
                        for (size_t i = poly.size() - 1; i >= 1; --i) {
                            carry = poly[i] + carry * cand;
                            q[i - 1] = carry;
                        }
                        poly = q;
                        qtrim(poly);
                        found = true;
                    }
                }
                if (found) break;
            }
            if (found) break;
        }
        if (!found) { *complete = poly.size() <= 1; break; }
    }
    return roots;
}

/// Writes p as q * monomial * (polynomial in beta), when possible.
struct MonoBeta {
    bool ok = false;
    Monomial mono;
    QPoly bpoly; // in beta; constant polynomial when beta absent
};

inline MonoBeta decompose_mono_beta(const DPoly& p, std::optional<Sym> beta) {
    MonoBeta r;
    if (p.is_zero()) { r.ok = true; r.bpoly = {}; return r; }
    bool first = true;
    std::map<int, Rat> bco;
    for (const auto& [m, c] : p.terms()) {
        if (!c.is_real()) return r;
        Monomial stripped;
        int bpow = 0;
        for (const auto& [s, e] : m.factors) {
            if (beta && s == *beta) bpow = e;
            else stripped.factors.push_back({s, e});
        }
        if (first) { r.mono = stripped; first = false; }
        else if (!(stripped == r.mono)) return r;
        bco[bpow] += c.re;
    }
    int top = bco.empty() ? 0 : bco.rbegin()->first;
    r.bpoly.assign(static_cast<size_t>(top) + 1, Rat(0));
    for (auto& [k, v] : bco) r.bpoly[static_cast<size_t>(k)] = v;
    qtrim(r.bpoly);
    r.ok = true;
    return r;
}

} // namespace ars

// --- the ARS machinery -------------------------------------------------------

class PainleveTester {
public:
    explicit PainleveTester(OdeSpec ode) : ode_(std::move(ode)) {
        ode_.validate();
        terms_ = ars::ode_terms(ode_);
        n_ = ode_.order();
    }

    std::vector<Balance> dominant_balances() const {
        std::set<Rat> candidates;
        for (size_t i = 0; i < terms_.size(); ++i)
            for (size_t k = i + 1; k < terms_.size(); ++k) {
                long dD = terms_[i].jet_degree - terms_[k].jet_degree;
                if (dD == 0) continue;
                Rat p = Rat(terms_[i].jet_weight - terms_[k].jet_weight, dD);
                p.canonicalize();
                if (p < 0) candidates.insert(p);
            }
        std::vector<Balance> out;
        for (const Rat& p : candidates) {
            Rat rho;
            bool first = true;
            for (const auto& t : terms_) {
                Rat o = ars::term_order(t, p);
                if (first || o < rho) rho = o;
                first = false;
            }
            std::vector<size_t> dom;
            for (size_t i = 0; i < terms_.size(); ++i)
                if (ars::term_order(terms_[i], p) == rho) dom.push_back(i);
            if (dom.size() < 2) continue;

            if (p.get_den() != 1) {
                Balance b;
                b.p = p;
                b.integer_p = false;
                b.dominant = dom;
                b.diagnostic = "non-integer dominant exponent";
                out.push_back(std::move(b));
                continue;
            }

            // leading equation sum coef * z0^zdeg * falling(p) * a0^D = 0
            std::map<int, DPoly> by_deg;
            const Sym z0 = Vocab::get().z0;
            for (size_t i : dom) {
                const auto& t = terms_[i];
                Rat fall(1);
                for (auto& [o, e] : t.jets)
                    for (int rep = 0; rep < e; ++rep)
                        for (int q = 0; q < o; ++q) fall *= p - q;
                if (fall == 0) continue;
                DPoly piece = t.coef.scaled(GaussRat(fall));
                if (t.zdeg) piece = piece * DPoly::var(z0, t.zdeg);
                by_deg[t.jet_degree] += piece;
            }
            for (auto it = by_deg.begin(); it != by_deg.end();)
                it = it->second.is_zero() ? by_deg.erase(it) : std::next(it);
            if (by_deg.size() < 2) continue; // only a0 = 0 solves the leading equation

            auto balances = solve_leading(p, dom, by_deg);
            for (auto& b : balances) out.push_back(std::move(b));
        }
        return out;
    }

    /// Resonance polynomial values by direct linearized substitution, then
    /// exact interpolation.
    std::vector<DPoly> resonance_poly(const Balance& b) const {
        long p = b.p.get_num().get_si();
        Rat rho = dominant_order(b);
        Sym s = SymTab::instance().param("linmark");
        std::vector<Rat> nodes;
        std::vector<DPoly> values;
        for (int t = 1; t <= n_ + 1; ++t) {
            ars::LSeries u;
            u.base = static_cast<int>(p);
            u.c.assign(static_cast<size_t>(t) + 1, DPoly());
            u.c[0] = b.a0_poly();
            u.c[static_cast<size_t>(t)] = DPoly::var(s);
            int level = static_cast<int>(rho.get_num().get_si()) + t;
            DPoly e = eval_at(u, level, s);
            DPoly rt;
            for (const auto& [m, c] : e.terms()) {
                if (m.exponent(s) != 1) continue;
                Monomial rest;
                for (const auto& f : m.factors)
                    if (f.first != s) rest.factors.push_back(f);
                rt += DPoly::term(rest, c);
            }
            nodes.push_back(Rat(t));
            values.push_back(reduce_beta(rt, b));
        }
        // Lagrange interpolation, coefficients of r^0..r^n
        std::vector<DPoly> coeffs(static_cast<size_t>(n_) + 1);
        for (size_t i = 0; i < nodes.size(); ++i) {
            // basis polynomial prod_{j!=i} (r - x_j)/(x_i - x_j)
            std::vector<Rat> basis = {Rat(1)};
            Rat denom(1);
            for (size_t j = 0; j < nodes.size(); ++j) {
                if (j == i) continue;
                basis.push_back(Rat(0));
                for (size_t k = basis.size() - 1; k >= 1; --k)
                    basis[k] = basis[k - 1] - nodes[j] * basis[k];
                basis[0] = basis[0] * (-nodes[j]);
                denom *= nodes[i] - nodes[j];
            }
            for (size_t k = 0; k < basis.size() && k < coeffs.size(); ++k)
                coeffs[k] += values[i].scaled(GaussRat(basis[k] / denom));
        }
        return coeffs;
    }

    std::pair<std::vector<Rat>, bool> resonances(const Balance& b) const {
        auto coeffs = resonance_poly(b);
        std::optional<Sym> beta = b.a0_symbolic ? std::optional<Sym>(b.beta) : std::nullopt;
        // try the fully-rational route: common monomial, beta-free
        ars::QPoly qp(coeffs.size(), Rat(0));
        bool rational = true;
        Monomial common;
        bool common_set = false;
        for (size_t k = 0; k < coeffs.size() && rational; ++k) {
            if (coeffs[k].is_zero()) continue;
            auto mb = ars::decompose_mono_beta(coeffs[k], beta);
            if (!mb.ok || mb.bpoly.size() > 1) { rational = false; break; }
            if (!common_set) { common = mb.mono; common_set = true; }
            else if (!(mb.mono == common)) { rational = false; break; }
            qp[k] = mb.bpoly.empty() ? Rat(0) : mb.bpoly[0];
        }
        if (rational) {
            bool complete = true;
            auto roots = ars::rational_roots(qp, &complete);
            std::sort(roots.begin(), roots.end());
            return {roots, complete};
        }
        // symbolic-a0 route: synthetic division over the quotient ring
        std::vector<DPoly> cur = coeffs;
        std::vector<Rat> roots;
        auto degree_of = [](const std::vector<DPoly>& c) {
            int d = -1;
            for (size_t i = 0; i < c.size(); ++i)
                if (!c[i].is_zero()) d = static_cast<int>(i);
            return d;
        };
        for (long cand = -200; cand <= 200 && degree_of(cur) > 0;) {
            // divide cur by (r - cand): remainder = value at cand
            int d = degree_of(cur);
            std::vector<DPoly> q(static_cast<size_t>(d), DPoly());
            DPoly carry;
            for (int i = d; i >= 1; --i) {
                carry = cur[static_cast<size_t>(i)] + carry.scaled(GaussRat(Rat(cand)));
                q[static_cast<size_t>(i - 1)] = carry;
            }
            DPoly rem = cur[0] + carry.scaled(GaussRat(Rat(cand)));
            rem = reduce_beta(rem, b);
            if (rem.is_zero()) {
                roots.push_back(Rat(cand));
                cur = q;
                cur.resize(coeffs.size());
                continue; // same candidate may repeat
            }
            ++cand;
        }
        std::sort(roots.begin(), roots.end());
        return {roots, degree_of(cur) <= 0};
    }

    /// Laurent recursion through k = max resonance; obstructions classified at
    /// every positive resonance.
    std::vector<ResonanceCheck> compatibility_check(const Balance& b, const std::vector<Rat>& res) const {
        std::vector<ResonanceCheck> out;
        long p = b.p.get_num().get_si();
        Rat rho = dominant_order(b);
        long rho_i = rho.get_num().get_si();
        auto rpoly = resonance_poly(b);

        long kmax = 0;
        std::set<long> resonant;
        for (const Rat& r : res)
            if (r.get_den() == 1 && r > 0) {
                resonant.insert(r.get_num().get_si());
                kmax = std::max(kmax, r.get_num().get_si());
            }

        ars::LSeries u;
        u.base = static_cast<int>(p);
        u.c.assign(static_cast<size_t>(kmax) + 1, DPoly());
        u.c[0] = b.a0_poly();
        auto& tab = SymTab::instance();

        for (long k = 1; k <= kmax; ++k) {
            DPoly Bk = reduce_beta(eval_at(u, rho_i + static_cast<int>(k), std::nullopt), b);
            if (resonant.count(k)) {
                ResonanceCheck chk;
                chk.r = k;
                if (Bk.is_zero()) {
                    chk.status = ResStatus::SatisfiedGeneric;
                } else if (Bk.is_constant() ||
                           [&] { // no free content at all: rational multiple of a monomial
                               auto mb = ars::decompose_mono_beta(
                                   Bk, b.a0_symbolic ? std::optional<Sym>(b.beta) : std::nullopt);
                               return mb.ok && mb.bpoly.size() <= 1;
                           }()) {
                    chk.status = ResStatus::Failed;
                    chk.constraints.push_back(Bk);
                } else {
                    chk.status = ResStatus::SatisfiedUnderConstraints;
                    chk.constraints.push_back(Bk);
                }
                out.push_back(std::move(chk));
                u.c[static_cast<size_t>(k)] = DPoly::var(tab.param(tab.fresh_name("r")));
            } else {
                // solve R(k) a_k + B_k = 0
                DPoly Rk;
                Rat kk(1);
                for (size_t j = 0; j < rpoly.size(); ++j) {
                    Rk += rpoly[j].scaled(GaussRat(kk));
                    kk *= Rat(k);
                }
                Rk = reduce_beta(Rk, b);
                u.c[static_cast<size_t>(k)] = divide_in_ring(-Bk, Rk, b);
            }
        }
        return out;
    }

    PainleveReport run() const {
        PainleveReport rep;
        if (n_ == 0) {
            rep.verdict = Verdict::Inconclusive;
            rep.diagnostic = "equation is algebraic (derivative order 0); the singularity test does not apply";
            return rep;
        }
        bool linear = true;
        for (const auto& t : terms_)
            if (t.jet_degree >= 2) linear = false;
        auto balances = dominant_balances();
        if (balances.empty()) {
            if (linear) {
                rep.verdict = Verdict::Pass;
                rep.diagnostic = "linear equation: no movable singularities";
            } else {
                rep.verdict = Verdict::Inconclusive;
                rep.diagnostic = "no singular dominant balance found";
            }
            return rep;
        }
        for (const auto& b : balances) {
            BranchReport br;
            br.balance = b;
            if (!b.integer_p) {
                br.verdict = Verdict::Fail;
                br.note = "non-integer dominant exponent";
                rep.branches.push_back(std::move(br));
                continue;
            }
            if (b.a0_symbolic && b.minpoly.size() <= 1) {
                br.verdict = Verdict::Inconclusive;
                br.note = b.diagnostic.empty() ? "unresolved leading coefficient" : b.diagnostic;
                rep.branches.push_back(std::move(br));
                continue;
            }
            beta_ctx_ = &b;
            auto [roots, complete] = resonances(b);
            br.resonances = roots;
            br.resonances_complete = complete;
            bool all_int = complete;
            for (const Rat& r : roots)
                if (r.get_den() != 1) all_int = false;
            std::set<Rat> uniq(roots.begin(), roots.end());
            bool distinct = uniq.size() == roots.size();
            bool has_minus1 = uniq.count(Rat(-1)) > 0;
            if (!complete) {
                br.verdict = Verdict::Inconclusive;
                br.note = "resonance polynomial not fully factored";
            } else if (!all_int || !distinct || !has_minus1) {
                br.verdict = Verdict::Fail;
                br.note = !has_minus1 ? "resonance -1 missing"
                                      : (!all_int ? "non-integer resonance" : "repeated resonance");
            } else {
                br.checks = compatibility_check(b, roots);
                br.verdict = Verdict::Pass;
                for (const auto& c : br.checks) {
                    if (c.status == ResStatus::Failed) { br.verdict = Verdict::Fail; break; }
                    if (c.status == ResStatus::SatisfiedUnderConstraints)
                        br.verdict = Verdict::PassWithConstraints;
                }
            }
            beta_ctx_ = nullptr;
            rep.branches.push_back(std::move(br));
        }
        bool any_fail = false, any_inc = false, any_con = false;
        for (const auto& br : rep.branches) {
            any_fail |= br.verdict == Verdict::Fail;
            any_inc |= br.verdict == Verdict::Inconclusive;
            any_con |= br.verdict == Verdict::PassWithConstraints;
        }
        rep.verdict = any_fail ? Verdict::Fail
                               : (any_inc ? Verdict::Inconclusive
                                          : (any_con ? Verdict::PassWithConstraints : Verdict::Pass));
        return rep;
    }

    const OdeSpec& ode() const { return ode_; }
    int order() const { return n_; }

private:
    Rat dominant_order(const Balance& b) const {
        Rat rho;
        bool first = true;
        for (const auto& t : terms_) {
            Rat o = ars::term_order(t, b.p);
            if (first || o < rho) rho = o;
            first = false;
        }
        return rho;
    }

    /// Coefficient of chi^level in the equation evaluated on the series.
    /// Every intermediate product keeps rel_len coefficients relative to its
    /// own base; rel_len = level - rho + 1 suffices for all terms.
    DPoly eval_at(const ars::LSeries& u, int level, std::optional<Sym> smark) const {
        DPoly acc;
        Rat rho_rat;
        bool first = true;
        for (const auto& t : terms_) {
            Rat o = Rat(t.jet_degree) * Rat(u.base) - Rat(t.jet_weight);
            if (first || o < rho_rat) rho_rat = o;
            first = false;
        }
        int rel_len = level - static_cast<int>(rho_rat.get_num().get_si()) + 1;
        if (rel_len <= 0) return acc;

        std::map<int, ars::LSeries> dcache;
        std::map<std::pair<int, int>, ars::LSeries> pcache;
        dcache[0] = u;
        std::function<const ars::LSeries&(int)> deriv = [&](int o) -> const ars::LSeries& {
            auto it = dcache.find(o);
            if (it != dcache.end()) return it->second;
            const ars::LSeries& prev = deriv(o - 1);
            return dcache.emplace(o, ars::series_diff(prev)).first->second;
        };
        std::function<const ars::LSeries&(int, int)> power = [&](int o, int e) -> const ars::LSeries& {
            auto key = std::make_pair(o, e);
            auto it = pcache.find(key);
            if (it != pcache.end()) return it->second;
            ars::LSeries r;
            if (e == 1) r = deriv(o);
            else r = ars::series_mul(power(o, e - 1), deriv(o), rel_len, smark);
            return pcache.emplace(key, std::move(r)).first->second;
        };
        for (const auto& t : terms_) {
            ars::LSeries s;
            s.base = 0;
            s.c = {DPoly(1)};
            for (auto& [o, e] : t.jets) s = ars::series_mul(s, power(o, e), rel_len, smark);
            if (t.zdeg) s = ars::series_mul(s, ars::z_series(t.zdeg, rel_len), rel_len, smark);
            acc += t.coef * s.at(level);
        }
        return acc;
    }

    DPoly reduce_beta(const DPoly& p, const Balance& b) const {
        if (!b.a0_symbolic || b.minpoly.size() <= 1) return p;
        int deg = static_cast<int>(b.minpoly.size()) - 1;
        if (p.max_exponent(b.beta) < deg) return p;
        // beta^deg = -(m_0 + ... + m_{deg-1} beta^{deg-1})/m_deg
        std::vector<DPoly> table; // beta^(deg+k) reduced
        DPoly top;
        for (int i = 0; i < deg; ++i)
            top -= DPoly::var(b.beta, i).scaled(GaussRat(b.minpoly[static_cast<size_t>(i)] / b.minpoly.back()));
        table.push_back(top);
        int maxe = p.max_exponent(b.beta);
        for (int k = 1; k <= maxe - deg; ++k) {
            DPoly nxt = table.back() * DPoly::var(b.beta);
            // re-reduce the top power
            DPoly fixed;
            for (const auto& [m, c] : nxt.terms()) {
                int e = m.exponent(b.beta);
                if (e >= deg) {
                    Monomial rest;
                    for (const auto& f : m.factors)
                        if (f.first != b.beta) rest.factors.push_back(f);
                    DPoly base = table[static_cast<size_t>(e - deg)];
                    fixed += base * DPoly::term(rest, c);
                } else {
                    fixed += DPoly::term(m, c);
                }
            }
            table.push_back(fixed);
        }
        DPoly out;
        for (const auto& [m, c] : p.terms()) {
            int e = m.exponent(b.beta);
            if (e >= deg) {
                Monomial rest;
                for (const auto& f : m.factors)
                    if (f.first != b.beta) rest.factors.push_back(f);
                out += table[static_cast<size_t>(e - deg)] * DPoly::term(rest, c);
            } else {
                out += DPoly::term(m, c);
            }
        }
        return out;
    }

    /// a = q / Rk in the coefficient ring; Rk must be monomial * unit-poly(beta).
    DPoly divide_in_ring(const DPoly& q, const DPoly& Rk, const Balance& b) const {
        if (Rk.is_zero()) throw std::domain_error("division by vanishing resonance value");
        auto mb = ars::decompose_mono_beta(Rk, b.a0_symbolic ? std::optional<Sym>(b.beta) : std::nullopt);
        if (!mb.ok) throw std::domain_error("resonance value too complex to invert: " + to_text(Rk));
        if (mb.bpoly.size() == 1) {
            return q.divided_by_term(mb.mono, GaussRat(mb.bpoly[0]));
        }
        auto inv = ars::qinv_mod(mb.bpoly, b.minpoly);
        if (!inv) throw std::domain_error("leading-coefficient relation splits; branch needs refinement");
        DPoly invp;
        for (size_t i = 0; i < inv->size(); ++i)
            if (!((*inv)[i] == 0)) invp += DPoly::var(b.beta, static_cast<int>(i)).scaled(GaussRat((*inv)[i]));
        return reduce_beta(q.divided_by_term(mb.mono, GaussRat(1)) * invp, b);
    }

    std::vector<Balance> solve_leading(const Rat& p, const std::vector<size_t>& dom,
                                       const std::map<int, DPoly>& by_deg) const {
        std::vector<Balance> out;
        int dmin = by_deg.begin()->first;
        // seek a0 = beta * mu with mu a parameter monomial making the equation rational
        // exponent solving across the degrees present
        std::map<uint64_t, Rat> mu_exp;
        auto ref = std::prev(by_deg.end());
        bool monos_ok = true;
        for (auto& [d, c] : by_deg)
            if (!c.is_monomial()) monos_ok = false;
        if (!monos_ok) {
            Balance b;
            b.p = p;
            b.dominant = dom;
            b.a0_symbolic = true;
            b.diagnostic = "leading equation has non-monomial coefficients";
            out.push_back(std::move(b));
            return out;
        }
        for (auto& [d, c] : by_deg) {
            if (d == ref->first) continue;
            const Monomial& md = c.terms()[0].first;
            const Monomial& mr = ref->second.terms()[0].first;
            std::set<uint64_t> syms;
            for (auto& f : md.factors) syms.insert(f.first.packed);
            for (auto& f : mr.factors) syms.insert(f.first.packed);
            for (uint64_t sp : syms) {
                Sym s{sp};
                Rat need(md.exponent(s) - mr.exponent(s), ref->first - d);
                need.canonicalize();
                auto it = mu_exp.find(sp);
                if (it == mu_exp.end()) mu_exp[sp] = need;
                else if (it->second != need) {
                    Balance b;
                    b.p = p;
                    b.dominant = dom;
                    b.a0_symbolic = true;
                    b.diagnostic = "no monomial normalization for the leading coefficient";
                    out.push_back(std::move(b));
                    return out;
                }
            }
        }
        Monomial mu;
        for (auto& [sp, e] : mu_exp) {
            if (e == 0) continue;
            if (e.get_den() != 1) {
                Balance b;
                b.p = p;
                b.dominant = dom;
                b.a0_symbolic = true;
                b.diagnostic = "fractional scaling for the leading coefficient";
                out.push_back(std::move(b));
                return out;
            }
            mu.factors.push_back({Sym{sp}, static_cast<int>(e.get_num().get_si())});
        }
        std::sort(mu.factors.begin(), mu.factors.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

        // rational polynomial in beta: coefficient of a0^d with a0 = beta*mu
        ars::QPoly qp;
        int dmax = by_deg.rbegin()->first;
        qp.assign(static_cast<size_t>(dmax) + 1, Rat(0));
        for (auto& [d, c] : by_deg) {
            const auto& [m, cc] = c.terms()[0];
            if (!cc.is_real()) { qp.clear(); break; }
            qp[static_cast<size_t>(d)] = cc.re;
        }
        if (qp.empty()) {
            Balance b;
            b.p = p;
            b.dominant = dom;
            b.a0_symbolic = true;
            b.diagnostic = "complex leading coefficients";
            out.push_back(std::move(b));
            return out;
        }
        // strip beta^dmin (a0 != 0)
        ars::QPoly stripped(qp.begin() + dmin, qp.end());
        bool complete = true;
        auto roots = ars::rational_roots(stripped, &complete);
        ars::QPoly remainder = stripped;
        for (const Rat& r : roots) {
            if (r == 0) continue;
            // synthetic deflation
            ars::QPoly q(remainder.size() - 1, Rat(0));
            Rat carry(0);
            for (size_t i = remainder.size() - 1; i >= 1; --i) {
                carry = remainder[i] + carry * r;
                q[i - 1] = carry;
            }
            remainder = q;
            ars::qtrim(remainder);
        }
        for (const Rat& r : roots) {
            if (r == 0) continue;
            Balance b;
            b.p = p;
            b.dominant = dom;
            b.a0_symbolic = false;
            b.a0_q = r;
            b.a0_scale = mu;
            out.push_back(std::move(b));
        }
        if (remainder.size() > 1) {
            Balance b;
            b.p = p;
            b.dominant = dom;
            b.a0_symbolic = true;
            b.beta = SymTab::instance().param(SymTab::instance().fresh_name("beta"), true);
            b.minpoly = remainder;
            b.a0_scale = mu;
            if (!complete) b.diagnostic = "leading equation only partially factored";
            out.push_back(std::move(b));
        }
        return out;
    }

    OdeSpec ode_;
    std::vector<ars::OdeTerm> terms_;
    int n_ = 0;
    mutable const Balance* beta_ctx_ = nullptr;
};

inline PainleveReport painleve_test(const OdeSpec& ode) { return PainleveTester(ode).run(); }

} // namespace superint
