#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chains.hpp"
#include "deteq.hpp"
#include "linsolve.hpp"

namespace superint {

/// Right-hand sides of the level-l determining chain
///   d_x f_{j-1,2l} + d_y f_{j,2l} = G_j,
///   G_j = (j+1) f_{j+1,2l-2} V1' + (N-2l+2-j) f_{j,2l-2} V2' + (hbar^2/2) Q_{j,2l}.
inline ChainSystem level_chain(const IntegralAnsatz& ansatz, int l) {
    const Vocab& v = Vocab::get();
    const int N = ansatz.N();
    ChainSystem c;
    for (int j = 0; j <= N - 2 * l + 1; ++j) {
        DPoly g = DPoly::var(jet(v.V1, 1)) * ansatz.f(j + 1, l - 1).scaled(GaussRat(j + 1));
        g += DPoly::var(jet(v.V2, 1)) * ansatz.f(j, l - 1).scaled(GaussRat(N - 2 * l + 2 - j));
        DPoly q = ansatz.quantum_correction(j, l);
        if (!q.is_zero())
            g += DPoly::term(Monomial{{{v.hbar, 2}}}, GaussRat(Rat(1, 2))) * q;
        c.G.push_back(ansatz.substitute_resolved(g));
    }
    for (int j = 0; j <= N - 2 * l; ++j)
        if (!ansatz.is_resolved(j, l)) c.unknowns.push_back(ansatz.unknown_dep(j, l));
    return c;
}

// ---------------------------------------------------------------------------
// Linear compatibility condition and classification
// ---------------------------------------------------------------------------

struct LccResult {
    DPoly full;                     // elimination of the l=1 chain
    DPoly tau1, ups1, tau2, ups2;   // dxx(full) = tau1 + y*ups1; dyy(full) = tau2 + x*ups2
};

inline LccResult lcc(const IntegralAnsatz& ansatz) {
    const Vocab& v = Vocab::get();
    LccResult r;
    r.full = chain_eliminate(level_chain(ansatz, 1));

    DPoly dxx = r.full.differentiate(v.x, 2);
    if (dxx.contains_dependent(v.V2))
        throw std::domain_error("LCC: V2 content survives d_x^2 (degree bound violated)");
    auto sx = dxx.collect({v.y});
    for (const auto& [m, c] : sx) {
        if (m.is_one()) r.tau1 = c;
        else if (m == Monomial{{{v.y, 1}}}) r.ups1 = c;
        else throw std::domain_error("LCC: d_x^2(LCC) not linear in y");
    }

    DPoly dyy = r.full.differentiate(v.y, 2);
    if (dyy.contains_dependent(v.V1))
        throw std::domain_error("LCC: V1 content survives d_y^2 (degree bound violated)");
    auto sy = dyy.collect({v.x});
    for (const auto& [m, c] : sy) {
        if (m.is_one()) r.tau2 = c;
        else if (m == Monomial{{{v.x, 1}}}) r.ups2 = c;
        else throw std::domain_error("LCC: d_y^2(LCC) not linear in x");
    }
    return r;
}

enum class ExoticClass { DoublyExotic, SinglyExoticX, SinglyExoticY, Standard };

inline const char* to_string(ExoticClass c) {
    switch (c) {
        case ExoticClass::DoublyExotic: return "doubly-exotic";
        case ExoticClass::SinglyExoticX: return "singly-exotic-x";
        case ExoticClass::SinglyExoticY: return "singly-exotic-y";
        default: return "standard";
    }
}

struct Classification {
    ExoticClass cls;
    LccResult witness;
};

inline Classification classify(const IntegralAnsatz& ansatz) {
    Classification c{ExoticClass::Standard, lcc(ansatz)};
    bool x_trivial = c.witness.tau1.is_zero() && c.witness.ups1.is_zero();
    bool y_trivial = c.witness.tau2.is_zero() && c.witness.ups2.is_zero();
    if (x_trivial && y_trivial) c.cls = ExoticClass::DoublyExotic;
    else if (x_trivial) c.cls = ExoticClass::SinglyExoticX;
    else if (y_trivial) c.cls = ExoticClass::SinglyExoticY;
    return c;
}

// ---------------------------------------------------------------------------
// Trivial-integral reduction
// ---------------------------------------------------------------------------

/// Leading terms W_N of the doubly exotic integral for 3 <= N <= 10, as
/// catalog data. Values are the parameters A_a_m_n. (The N = 10 set keeps the
/// published list, which drops the {L_z^2, p1^5 p2^3}-type interior terms.)
inline AMap wn_doubly_exotic(int N) {
    auto& tab = SymTab::instance();
    AMap A;
    auto add = [&](int a, int m, int n) {
        A[{a, m, n}] = DPoly::var(
            tab.param("A_" + std::to_string(a) + "_" + std::to_string(m) + "_" + std::to_string(n)));
    };
    if (N < 3 || N > 10) throw std::invalid_argument("wn_doubly_exotic covers 3 <= N <= 10");
    add(0, N, 0);
    add(0, 0, N);
    if (N >= 5) add(N - 4, 2, 2);
    // interior L_z terms with both momentum exponents >= 2
    for (int s = 5; s <= N - 1; ++s)
        for (int m = 2; m <= s - 2; ++m) {
            if (N == 10 && s == 8 && m != 2 && m != 6) continue; // published W_10 keeps only the L_z^2 p^2 p^6 doublet
            add(N - s, m, s - m);
        }
    // pure momentum terms with both exponents >= 2
    if (N >= 4)
        for (int m = 2; m <= N - 2; ++m) add(0, m, N - m);
    return A;
}

inline AMap family_I(int N) {
    if (N < 3 || N % 2 == 0) throw std::invalid_argument("family I requires odd N >= 3");
    const Vocab& v = Vocab::get();
    AMap A;
    A[{0, N, 0}] = DPoly::var(v.cgamma);
    A[{0, 0, N}] = DPoly::var(v.sgamma);
    return A;
}

inline AMap family_II(int N) {
    if (N < 5) throw std::invalid_argument("family II requires N >= 5");
    AMap A;
    A[{N - 4, 2, 2}] = DPoly(1);
    return A;
}

struct TrivialReduction {
    AMap reduced;
    struct Removal {
        AIndex idx;
        std::string reason;
    };
    std::vector<Removal> removed;
};

/// For even N every pure-momentum term is removable: even exponent pairs are
/// leading terms of polynomials in H and X, and odd pairs satisfy the syzygy
/// (p1^m p2^n)^2 = (p1^(m+1) p2^(n-1)) (p1^(m-1) p2^(n+1)) against such
/// trivial integrals. Odd N is returned unchanged (those terms seed family I
/// and cannot be discarded a priori). Idempotent.
inline TrivialReduction reduce_trivial(int N, const AMap& A) {
    TrivialReduction r;
    for (const auto& [idx, val] : A) {
        if (N % 2 == 0 && idx.a == 0) {
            auto pw = [](const char* p, int e) {
                std::string s = p;
                if (e != 1) s += "^" + std::to_string(e);
                return s;
            };
            if (idx.m % 2 == 0) {
                r.removed.push_back({idx, "trivial: leading term of a polynomial in H and X"});
                continue;
            }
            std::string w = "(" + pw("p1", idx.m) + "*" + pw("p2", idx.n) + ")^2 = (" +
                            pw("p1", idx.m + 1) + "*" + pw("p2", idx.n - 1) + ")*(" +
                            pw("p1", idx.m - 1) + "*" + pw("p2", idx.n + 1) + ")";
            r.removed.push_back({idx, "syzygy: " + w});
            continue;
        }
        r.reduced[idx] = val;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Nonlinear compatibility condition
// ---------------------------------------------------------------------------

struct NlccResult {
    DPoly raw;               // eliminated level-l condition, potential jets only
    DPoly x_condition;       // nonlinear x-side condition before quadrature (V1 jets)
    DPoly y_condition;       // nonlinear y-side condition before quadrature (V2 jets)
    DPoly x_ode, y_ode;      // integrated conditions in z; F-form when requested
    std::vector<DPoly> obstructions;                        // non-separable terms (expected empty)
    std::vector<std::pair<std::string, std::string>> fixed; // constants fixed by killing linear slots
    std::vector<Sym> constants;                             // free constants surviving in the ODEs
};

namespace detail {

/// V-jets -> hbar^2 * (shifted F-jets): V^(s) -> hbar^2 F^(s+1), V^(-1) -> hbar^2 F.
inline DPoly potential_to_F(const DPoly& p, uint32_t vdep, uint32_t fdep_samevar) {
    const Vocab& v = Vocab::get();
    auto& tab = SymTab::instance();
    DPoly out = p;
    for (Sym js : p.jets_of(vdep)) {
        int s = SymTab::jet_d0(js);
        if (s < -1) throw std::domain_error("second antiderivative of the potential in a compatibility condition");
    }
    Sym anti = tab.jet(vdep, -1);
    if (out.contains_symbol(anti))
        out = out.substitute_symbol(anti, DPoly::term(Monomial{{{v.hbar, 2}, {tab.jet(fdep_samevar, 0), 1}}},
                                                      GaussRat(1)));
    DPoly value = DPoly::term(Monomial{{{v.hbar, 2}, {tab.jet(fdep_samevar, 1), 1}}}, GaussRat(1));
    if (out.contains_dependent(vdep)) out = out.substitute_dependent(vdep, value);
    return out;
}

inline bool jet_nonlinear(const DPoly& p) {
    for (const auto& [m, c] : p.terms()) {
        int deg = 0;
        for (const auto& [s, e] : m.factors)
            if (SymTab::kind(s) == SymKind::Jet) deg += std::abs(e);
        if (deg >= 2) return true;
    }
    return false;
}

/// Quadrature passes while they stay exact: each successful pass replaces the
/// condition by its antiderivative plus a fresh constant. When the plain
/// quadrature stalls, small power-of-the-variable integrating factors are
/// tried (multiplying the condition by var^r is harmless for generic
/// arguments and is how the catalog forms arise). Stops when a term resists
/// or a second antiderivative symbol would be needed.
inline DPoly integrate_while_exact(DPoly cond, Sym var, std::vector<Sym>& constants) {
    auto& tab = SymTab::instance();
    for (;;) {
        bool advanced = false;
        for (int rho = 0; rho <= 8 && !advanced; ++rho) {
            DPoly cand = rho == 0 ? cond : cond * DPoly::var(var, rho);
            IbpResult r = integrate_by_parts(cand, var);
            if (!r.residual.is_zero()) continue;
            bool deep = false;
            for (uint32_t d : r.antiderivative.dependents())
                for (Sym js : r.antiderivative.jets_of(d))
                    if (SymTab::jet_d0(js) <= -2 || SymTab::jet_d1(js) <= -2) deep = true;
            if (deep) continue;
            Sym k = tab.param(tab.fresh_name("k"));
            constants.push_back(k);
            cond = r.antiderivative + DPoly::var(k);
            advanced = true;
        }
        if (!advanced) return cond;
    }
}

} // namespace detail

/// Level-l (default 2) nonlinear compatibility condition of a doubly exotic
/// ansatz. The l=1 chain is solved by quadrature; the level-l chain is
/// eliminated; the resulting identity
///     sum_a y^a X_a(x, V1-jets) + sum_b x^b Y_b(y, V2-jets) = 0
/// separates through a matrix of shared constants c_ab: every slot must equal
/// the matching free polynomial. Slots linear in the potential jets must
/// vanish outright for a doubly exotic potential, which fixes part of the
/// integration constants; the one nonlinear slot per side is the NLCC. It is
/// then integrated while exact (the paper's displayed forms are the fully
/// integrated ones) and optionally rewritten for V = hbar^2 F'(z).
inline NlccResult nlcc(IntegralAnsatz ansatz, int level = 2, bool family2_form = false,
                       bool require_doubly_exotic = true) {
    const Vocab& v = Vocab::get();
    auto& tab = SymTab::instance();
    if (level < 2 || 2 * level > ansatz.N() + 1)
        throw std::invalid_argument("nlcc level out of range");
    if (require_doubly_exotic && classify(ansatz).cls != ExoticClass::DoublyExotic)
        throw std::domain_error("nlcc requires a doubly exotic ansatz (LCC must vanish identically)");

    NlccResult res;
    std::vector<Sym> all_constants;
    for (int l = 1; l < level; ++l) {
        ChainSystem chain = level_chain(ansatz, l);
        ChainSolution sol = solve_chain(chain);
        if (!sol.ok) throw std::domain_error("nlcc: " + sol.error);
        for (const auto& cond : sol.conditions)
            if (!cond.is_zero())
                throw std::domain_error("nlcc: level " + std::to_string(l) +
                                        " leaves a residual condition " + to_text(cond));
        for (int j = 0; j <= ansatz.N() - 2 * l; ++j) ansatz.resolve(j, l, sol.f[static_cast<size_t>(j)]);
        all_constants.insert(all_constants.end(), sol.constants.begin(), sol.constants.end());
    }

    res.raw = chain_eliminate(level_chain(ansatz, level));

    // bucket terms: x-function slots by y-power, y-function slots by x-power
    std::map<int, DPoly> X, Y;
    for (const auto& [m, c] : res.raw.terms()) {
        bool v1 = false, v2 = false;
        int xp = 0, yp = 0;
        for (const auto& [s, e] : m.factors) {
            if (s == v.x) xp = e;
            else if (s == v.y) yp = e;
            else if (SymTab::kind(s) == SymKind::Jet) {
                uint32_t d = SymTab::name_id(s);
                if (tab.dep_var_index(d, v.x) >= 0) v1 = true;
                if (tab.dep_var_index(d, v.y) >= 0) v2 = true;
            }
        }
        if (v1 && v2) {
            res.obstructions.push_back(DPoly::term(m, c));
            continue;
        }
        Monomial rest;
        for (const auto& [s, e] : m.factors)
            if (!(v2 && s == v.x) && !(!v2 && s == v.y)) rest.factors.push_back({s, e});
        if (v2) Y[xp] += DPoly::term(rest, c);
        else X[yp] += DPoly::term(rest, c);
    }
    if (!res.obstructions.empty())
        throw std::domain_error("nlcc: condition does not separate; mixed term " +
                                to_text(res.obstructions.front()));

    int A = 0, B = 0;
    for (const auto& [a, p] : X)
        if (!p.is_zero()) A = std::max(A, a);
    for (const auto& [b, p] : Y)
        if (!p.is_zero()) B = std::max(B, b);

    // shared constant matrix and the slot conditions
    std::vector<std::vector<Sym>> cmat(static_cast<size_t>(A) + 1, std::vector<Sym>(static_cast<size_t>(B) + 1));
    for (int a = 0; a <= A; ++a)
        for (int b = 0; b <= B; ++b) {
            cmat[a][b] = tab.param(tab.fresh_name("k"));
            all_constants.push_back(cmat[a][b]);
        }
    std::vector<DPoly> linear;
    std::vector<std::pair<char, DPoly>> nonlinear; // side tag + condition
    for (int a = 0; a <= A; ++a) {
        DPoly cond = X.count(a) ? X[a] : DPoly();
        for (int b = 0; b <= B; ++b) cond += DPoly::var(cmat[a][b]) * DPoly::var(v.x, b);
        if (cond.is_zero()) continue;
        if (detail::jet_nonlinear(cond)) nonlinear.push_back({'x', cond});
        else linear.push_back(cond);
    }
    for (int b = 0; b <= B; ++b) {
        DPoly cond = Y.count(b) ? Y[b] : DPoly();
        for (int a = 0; a <= A; ++a) cond -= DPoly::var(cmat[a][b]) * DPoly::var(v.y, a);
        if (cond.is_zero()) continue;
        if (detail::jet_nonlinear(cond)) nonlinear.push_back({'y', cond});
        else linear.push_back(cond);
    }

    std::vector<Sym> acoeffs; // the leading constants are generic scalars here
    {
        std::set<uint64_t> seen;
        for (const auto& [idx, val] : ansatz.A())
            for (const auto& [m, c] : val.terms())
                for (const auto& [s, e] : m.factors)
                    if (SymTab::kind(s) == SymKind::Param && seen.insert(s.packed).second)
                        acoeffs.push_back(s);
    }
    acoeffs.push_back(v.hbar);
    AffineSolution fix = solve_affine(linear, all_constants, acoeffs);
    if (!fix.consistent) {
        std::string what = "nlcc: linear slots cannot be annihilated";
        for (const auto& ob : fix.obstructions) what += "; obstruction " + to_text(ob);
        throw std::domain_error(what);
    }
    for (const auto& [sym, val] : fix.assignment)
        res.fixed.push_back({tab.name(Sym{sym}), to_text(val)});

    DPoly xcond, ycond;
    int nx = 0, ny = 0;
    for (auto& [side, cond] : nonlinear) {
        DPoly c2 = fix.apply(cond);
        if (side == 'x') { xcond += c2; ++nx; }
        else { ycond += c2; ++ny; }
    }
    if (nx > 1 || ny > 1)
        throw std::domain_error("nlcc: more than one nonlinear slot per side (unsupported ansatz)");
    res.x_condition = xcond;
    res.y_condition = ycond;

    res.x_ode = detail::integrate_while_exact(xcond, v.x, all_constants);
    res.y_ode = detail::integrate_while_exact(ycond, v.y, all_constants);

    if (family2_form) {
        uint32_t Fx = tab.dependent("Fx", {v.x});
        uint32_t Fy = tab.dependent("Fy", {v.y});
        res.x_ode = detail::potential_to_F(res.x_ode, v.V1, Fx).rename_dependent(Fx, v.F);
        res.y_ode = detail::potential_to_F(res.y_ode, v.V2, Fy).rename_dependent(Fy, v.F);
    } else {
        res.x_ode = res.x_ode.rename_dependent(v.V1, v.U);
        res.y_ode = res.y_ode.rename_dependent(v.V2, v.U);
    }
    res.x_ode = res.x_ode.substitute_symbol(v.x, DPoly::var(v.z));
    res.y_ode = res.y_ode.substitute_symbol(v.y, DPoly::var(v.z));

    for (Sym k : all_constants) {
        bool used = res.x_ode.contains_symbol(k) || res.y_ode.contains_symbol(k);
        if (used) res.constants.push_back(k);
    }
    return res;
}

// ---------------------------------------------------------------------------
// Matching a generated NLCC against a catalog ODE
// ---------------------------------------------------------------------------

struct OdeMatch {
    bool ok = true;
    std::vector<std::pair<std::string, std::string>> mapping; // catalog param -> expression
    std::vector<std::string> notes;
    std::vector<std::string> unmatched;
};

/// Compares `gen` with `cat` slot by slot after normalizing the anchor slot
/// (the catalog term of highest jet order) to coefficient 1. Catalog slots
/// whose coefficient carries one of `cat_params` define the affine parameter
/// mapping; rational slots must agree exactly. Pure-z slots of the generated
/// equation outside the catalog display are reported, and accepted only when
/// `free_z_tail` is set (the catalog families keep a free polynomial tail).
inline OdeMatch match_up_to_affine(const DPoly& gen_in, const DPoly& cat, uint32_t fdep,
                                   const std::vector<Sym>& cat_params, bool free_z_tail = true) {
    const Vocab& v = Vocab::get();
    OdeMatch m;
    auto is_cat_param = [&](Sym s) {
        for (Sym p : cat_params)
            if (p == s) return true;
        return false;
    };

    auto slots_of = [&](const DPoly& p) { return p.collect({v.z}, {fdep}); };

    auto cat_slots = slots_of(cat);

    // anchor: highest jet order, then highest z power
    const Monomial* anchor = nullptr;
    int best_order = -1, best_z = -1;
    for (const auto& [mono, coef] : cat_slots) {
        int top = -1;
        for (const auto& [s, e] : mono.factors)
            if (SymTab::kind(s) == SymKind::Jet) top = std::max(top, SymTab::jet_d0(s));
        int zp = mono.exponent(v.z);
        if (top > best_order || (top == best_order && zp > best_z)) {
            best_order = top;
            best_z = zp;
            anchor = &mono;
        }
    }
    if (!anchor) {
        m.ok = false;
        m.unmatched.push_back("catalog equation has no jet content");
        return m;
    }
    const DPoly& cat_anchor = cat_slots.at(*anchor);
    if (!cat_anchor.is_monomial()) {
        m.ok = false;
        m.unmatched.push_back("catalog leading coefficient is not a single term");
        return m;
    }

    DPoly gen = gen_in;
    {
        auto gslots = slots_of(gen);
        auto it = gslots.find(*anchor);
        if (it == gslots.end()) {
            m.ok = false;
            m.unmatched.push_back("generated equation lacks the catalog leading term");
            return m;
        }
        if (!it->second.is_monomial()) {
            m.ok = false;
            m.unmatched.push_back("leading coefficient is not a single term: " + to_text(it->second));
            return m;
        }
        // divide by gen_coeff / cat_coeff so the anchors agree exactly
        DPoly ratio = it->second.divided_by_term(cat_anchor.terms()[0].first, cat_anchor.terms()[0].second);
        gen = gen.divided_by_term(ratio.terms()[0].first, ratio.terms()[0].second);
    }

    auto gen_slots = slots_of(gen);
    std::map<uint64_t, DPoly> assigned;

    for (const auto& [mono, ccoef] : cat_slots) {
        DPoly gcoef;
        auto it = gen_slots.find(mono);
        if (it != gen_slots.end()) gcoef = it->second;

        // split c = c0(hbar) + param * cp(hbar), at most one parameter
        DPoly c0;
        Sym par{};
        Monomial pmul;
        GaussRat pco(0);
        bool has_par = false, bad = false;
        for (const auto& [mm, cc] : ccoef.terms()) {
            Sym found{};
            Monomial rest;
            int npar = 0;
            for (const auto& [s, e] : mm.factors) {
                if (is_cat_param(s)) {
                    npar += std::abs(e);
                    found = s;
                } else {
                    rest.factors.push_back({s, e});
                }
            }
            if (npar == 0) {
                c0 += DPoly::term(mm, cc);
            } else if (npar == 1) {
                if (has_par && !(found == par)) { bad = true; break; }
                if (has_par) { bad = true; break; } // same parameter twice in one slot
                par = found;
                pmul = rest;
                pco = cc;
                has_par = true;
            } else {
                bad = true;
                break;
            }
        }
        if (bad) {
            m.ok = false;
            m.unmatched.push_back("catalog slot not affine in its parameters: " + to_text(ccoef));
            continue;
        }
        if (has_par) {
            DPoly val = (gcoef - c0).divided_by_term(pmul, pco);
            auto prev = assigned.find(par.packed);
            if (prev == assigned.end()) {
                assigned[par.packed] = val;
                m.mapping.push_back({SymTab::instance().name(par), to_text(val)});
            } else if (prev->second != val) {
                m.ok = false;
                m.unmatched.push_back("inconsistent assignment for " + SymTab::instance().name(par) + ": " +
                                      to_text(prev->second) + " vs " + to_text(val));
            }
        } else if (gcoef != c0) {
            m.ok = false;
            m.unmatched.push_back("slot " + to_text(DPoly::term(mono, GaussRat(1))) + ": expected " +
                                  to_text(c0) + ", got " + to_text(gcoef));
        }
        if (it != gen_slots.end()) gen_slots.erase(it);
    }

    for (const auto& [mono, gcoef] : gen_slots) {
        bool pure_z = true;
        for (const auto& [s, e] : mono.factors) pure_z = pure_z && (s == v.z);
        if (pure_z && free_z_tail) {
            m.notes.push_back("free tail coefficient of " + to_text(DPoly::term(mono, GaussRat(1))) + ": " +
                              to_text(gcoef));
        } else {
            m.ok = false;
            m.unmatched.push_back("generated term outside the catalog shape: " +
                                  to_text(DPoly::term(mono, GaussRat(1)) * gcoef));
        }
    }
    return m;
}

} // namespace superint
