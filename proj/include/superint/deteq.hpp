#pragma once

#include <optional>
#include <string>
#include <vector>

#include "opalg.hpp"
#include "printer.hpp"

namespace superint {

/// Number of determining equations and unknown coefficient functions for an
/// Nth-order integral: sums over levels l = 0..floor((N+1)/2) of (N-2l+2) and
/// (N-2l+1) respectively.
inline std::pair<long, long> counts(int N) {
    if (N < 2) throw std::invalid_argument("counts requires N >= 2");
    long eqs = 0, unk = 0;
    for (int l = 0; 2 * l <= N + 1; ++l) {
        eqs += N - 2 * l + 2;
        unk += std::max(0, N - 2 * l + 1);
    }
    return {eqs, unk};
}

/// Ansatz for the Nth-order integral: leading constants A_{a,m,n} plus the
/// coefficient functions f_{j,2l}. Functions not yet resolved are represented
/// by first-class jet symbols f_j_2l(x, y).
class IntegralAnsatz {
public:
    IntegralAnsatz(int N, AMap A) : N_(N), A_(std::move(A)) {
        if (N_ < 2) throw std::invalid_argument("integral order must be >= 2");
        bool any = false;
        for (auto& [k, v] : A_) {
            if (k.a + k.m + k.n != N_) throw std::invalid_argument("A index does not sum to N");
            if (!v.is_zero()) any = true;
        }
        if (!any) throw std::invalid_argument("all-zero A-map: integral not of order N");
        f0_ = compute_f_j0(N_, A_);
    }

    int N() const { return N_; }
    const AMap& A() const { return A_; }

    /// Closed-form level-0 coefficients (paper solution of the top equations):
    /// f_{j,0} = sum_{n,m} C(N-n-m, j-m) A_{N-n-m,m,n} x^(N-j-n) (-y)^(j-m).
    static std::vector<DPoly> compute_f_j0(int N, const AMap& A) {
        const Vocab& v = Vocab::get();
        std::vector<DPoly> f(static_cast<size_t>(N) + 1);
        for (int j = 0; j <= N; ++j) {
            DPoly acc;
            for (const auto& [idx, val] : A) {
                int m = idx.m, n = idx.n;
                Rat b = binom(N - n - m, j - m);
                if (b == 0 || val.is_zero()) continue;
                int xp = N - j - n, yp = j - m;
                if (xp < 0 || yp < 0) continue;
                Monomial mono;
                if (xp) mono.factors.push_back({v.x, xp});
                if (yp) mono.factors.push_back({v.y, yp});
                std::sort(mono.factors.begin(), mono.factors.end(),
                          [](const auto& a, const auto& bb) { return a.first < bb.first; });
                GaussRat c(b * (yp % 2 ? Rat(-1) : Rat(1)));
                acc += val * DPoly::term(mono, c);
            }
            f[j] = acc;
        }
        return f;
    }

    /// f_{j,2l}: identically zero outside 0 <= j <= N-2l; level 0 in closed
    /// form; otherwise the resolved value if known, else the unknown jet.
    DPoly f(int j, int l) const {
        if (l < 0 || j < 0 || j > N_ - 2 * l) return {};
        if (l == 0) return f0_[static_cast<size_t>(j)];
        auto it = resolved_.find({j, l});
        if (it != resolved_.end()) return it->second;
        return DPoly::var(unknown_jet(j, l));
    }

    bool is_resolved(int j, int l) const { return l == 0 || resolved_.count({j, l}) > 0; }
    void resolve(int j, int l, DPoly value) { resolved_[{j, l}] = std::move(value); }

    uint32_t unknown_dep(int j, int l) const {
        const Vocab& v = Vocab::get();
        std::string name = "f_" + std::to_string(j) + "_" + std::to_string(2 * l);
        return SymTab::instance().dependent(name, {v.x, v.y});
    }
    Sym unknown_jet(int j, int l, int dx = 0, int dy = 0) const {
        return SymTab::instance().jet(unknown_dep(j, l), dx, dy);
    }

    /// Substitutes resolved values for the unknown jets of f_{j,2l} in p.
    DPoly substitute_resolved(const DPoly& p) const {
        DPoly out = p;
        for (const auto& [key, val] : resolved_)
            if (out.contains_dependent(unknown_dep(key.first, key.second)))
                out = out.substitute_dependent(unknown_dep(key.first, key.second), val);
        return out;
    }

    /// phi_{j,k} of the quantum correction; defined for k > 0, zero otherwise.
    /// With l = ceil(k/2) and eps = 2l - k:
    ///   sum_{b=1}^{l} sum_{a=0}^{2b-eps} (-h^2)^(b-1)/2 C(j+a,a) C(N-2l+2b-j-a, 2b-eps-a)
    ///       d_x^a d_y^(2b-eps-a) f_{j+a, 2l-2b}
    DPoly phi(int j, int k) const {
        if (k <= 0) return {};
        int l = (k + 1) / 2;
        int eps = 2 * l - k;
        const Vocab& v = Vocab::get();
        Sym h = v.hbar;
        DPoly acc;
        for (int b = 1; b <= l; ++b) {
            for (int a = 0; a <= 2 * b - eps; ++a) {
                Rat w = binom(j + a, a) * binom(N_ - 2 * l + 2 * b - j - a, 2 * b - eps - a);
                if (w == 0) continue;
                DPoly fd = f(j + a, l - b);
                if (fd.is_zero()) continue;
                fd = fd.differentiate(v.x, a).differentiate(v.y, 2 * b - eps - a);
                if (fd.is_zero()) continue;
                GaussRat c(w / 2 * ((b - 1) % 2 ? Rat(-1) : Rat(1)));
                DPoly hb = (b > 1) ? DPoly::term(Monomial{{{h, 2 * (b - 1)}}}, c) : DPoly(c);
                acc += hb * fd;
            }
        }
        return acc;
    }

    /// Quantum correction Q_{j,2l}.
    DPoly quantum_correction(int j, int l) const {
        const Vocab& v = Vocab::get();
        Sym h = v.hbar;
        DPoly q = phi(j - 1, 2 * l).differentiate(v.x).scaled(GaussRat(2)) +
                  phi(j, 2 * l).differentiate(v.y).scaled(GaussRat(2)) +
                  phi(j, 2 * l - 1).differentiate(v.x, 2) +
                  phi(j, 2 * l - 1).differentiate(v.y, 2);
        for (int n = 0; n + 2 <= l; ++n) {
            Rat b2 = binom(N_ - 2 * l + 2 * n + 4 - j, 2 * n + 3);
            Rat b1 = binom(j + 2 * n + 3, 2 * n + 3);
            DPoly sum;
            if (!(b2 == 0))
                sum += DPoly::var(jet(v.V2, 2 * n + 3)).scaled(GaussRat(b2)) * f(j, l - n - 2);
            if (!(b1 == 0))
                sum += DPoly::var(jet(v.V1, 2 * n + 3)).scaled(GaussRat(b1)) * f(j + 2 * n + 3, l - n - 2);
            if (sum.is_zero()) continue;
            GaussRat c(Rat(-2) * (n % 2 ? Rat(-1) : Rat(1)));
            DPoly hb = (n > 0) ? DPoly::term(Monomial{{{h, 2 * n}}}, c) : DPoly(c);
            q += hb * sum;
        }
        for (int n = 1; n <= 2 * l - 1; ++n) {
            Rat b2 = binom(N_ - 2 * l + n + 1 - j, n);
            Rat b1 = binom(j + n, n);
            DPoly sum;
            if (!(b2 == 0)) sum += DPoly::var(jet(v.V2, n)).scaled(GaussRat(b2)) * phi(j, 2 * l - n - 1);
            if (!(b1 == 0)) sum += DPoly::var(jet(v.V1, n)).scaled(GaussRat(b1)) * phi(j + n, 2 * l - n - 1);
            if (sum.is_zero()) continue;
            int e = (n - 1) / 2;
            GaussRat c(Rat(-2) * (e % 2 ? Rat(-1) : Rat(1)));
            DPoly hb = (e > 0) ? DPoly::term(Monomial{{{h, 2 * e}}}, c) : DPoly(c);
            q += hb * sum;
        }
        return q;
    }

    /// Determining equation M_{j,2l}.
    DPoly M(int j, int l) const {
        const Vocab& v = Vocab::get();
        DPoly m = (f(j - 1, l).differentiate(v.x) + f(j, l).differentiate(v.y)).scaled(GaussRat(2));
        m -= DPoly::var(jet(v.V1, 1)) * f(j + 1, l - 1).scaled(GaussRat(2 * (j + 1)));
        m -= DPoly::var(jet(v.V2, 1)) * f(j, l - 1).scaled(GaussRat(2 * (N_ - 2 * l + 2 - j)));
        DPoly q = quantum_correction(j, l);
        if (!q.is_zero())
            m -= DPoly::term(Monomial{{{v.hbar, 2}}}, GaussRat(1)) * q;
        return m;
    }

    /// The integral itself, in the analytic representation.
    OpPoly to_operator() const {
        OpPoly y;
        for (int l = 0; 2 * l <= N_; ++l)
            for (int j = 0; j <= N_ - 2 * l; ++j) {
                DPoly fv = f(j, l);
                if (!fv.is_zero()) y += sym_anticommutator(fv, j, N_ - j - 2 * l);
            }
        return y;
    }

private:
    int N_;
    AMap A_;
    std::vector<DPoly> f0_;
    std::map<std::pair<int, int>, DPoly> resolved_;
};

struct DetLevel {
    int l;
    std::vector<DPoly> equations; // indexed by j = 0..N-2l+1
};

struct DetSystem {
    int N;
    std::vector<DetLevel> levels;

    long equation_count() const {
        long n = 0;
        for (const auto& lev : levels) n += static_cast<long>(lev.equations.size());
        return n;
    }
};

inline DetSystem determining_system(const IntegralAnsatz& ansatz, int max_level = -1) {
    DetSystem sys;
    sys.N = ansatz.N();
    int top = (ansatz.N() + 1) / 2;
    if (max_level >= 0) top = std::min(top, max_level);
    for (int l = 0; l <= top; ++l) {
        DetLevel lev;
        lev.l = l;
        for (int j = 0; j <= ansatz.N() - 2 * l + 1; ++j) lev.equations.push_back(ansatz.M(j, l));
        sys.levels.push_back(std::move(lev));
    }
    return sys;
}

/// Comparison of the formula-generated M_{j,2l} against the commutator
/// coefficients Z_{j,N-2l-j+1} of [H, Y]. The documented normalization is
///   Z = -(hbar^2/2) (-i hbar)^(N-2l) M,
/// fixed once by expanding the gradient terms of [H, Y] by hand and confirmed
/// here for every (j, l).
struct CrossCheckEntry {
    int j, l;
    bool matches;
    DPoly formula, oracle; // oracle already normalized
};

struct CrossCheckReport {
    bool all_match = true;
    std::vector<CrossCheckEntry> entries;
    std::string normalization = "Z_{j,N-2l-j+1} = -(hbar^2/2)*(-i*hbar)^(N-2l) * M_{j,2l}";
};

inline CrossCheckReport cross_check(const IntegralAnsatz& ansatz, int max_level = -1) {
    const Vocab& v = Vocab::get();
    CrossCheckReport rep;
    OpPoly H = hamiltonian();
    OpPoly com = commutator(H, ansatz.to_operator());
    auto Z = extract_coeffs(com);
    int N = ansatz.N();
    int top = (N + 1) / 2;
    if (max_level >= 0) top = std::min(top, max_level);
    for (int l = 0; l <= top; ++l) {
        for (int j = 0; j <= N - 2 * l + 1; ++j) {
            CrossCheckEntry e;
            e.j = j;
            e.l = l;
            e.formula = ansatz.M(j, l);
            DPoly z;
            auto it = Z.find({j, N - 2 * l - j + 1});
            if (it != Z.end()) z = it->second;
            // divide by the normalization factor -(hbar^2/2)(-i hbar)^(N-2l)
            GaussRat c = GaussRat(Rat(-1, 2)) * minus_i_pow(N - 2 * l);
            Monomial hb;
            int hpow = N - 2 * l + 2;
            if (hpow != 0) hb.factors.push_back({v.hbar, hpow});
            e.oracle = z.is_zero() ? DPoly() : z.divided_by_term(hb, c);
            e.matches = (e.oracle == e.formula);
            if (!e.matches) rep.all_match = false;
            rep.entries.push_back(std::move(e));
        }
    }
    return rep;
}

} // namespace superint
