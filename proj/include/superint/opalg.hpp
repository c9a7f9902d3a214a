#pragma once

#include <map>
#include <vector>

#include "dpoly.hpp"

namespace superint {

/// Exact binomial with the convention that any negative argument gives 0.
inline Rat binom(long n, long k) {
    if (n < 0 || k < 0 || k > n) return Rat(0);
    Rat r(1);
    for (long i = 0; i < k; ++i) {
        r *= Rat(n - i);
        r /= Rat(i + 1);
    }
    return r;
}

/// Normal-ordered differential operator: sum of f(x,y,...) * dx^c * dy^d words,
/// all multiplication operators to the left of all derivatives. hbar and i live
/// in the DPoly coefficients.
class OpPoly {
public:
    using Key = std::pair<int, int>; // (dx exponent, dy exponent)

    OpPoly() = default;
    explicit OpPoly(const DPoly& f) {
        if (!f.is_zero()) words_[{0, 0}] = f;
    }

    static OpPoly word(const DPoly& f, int c, int d) {
        OpPoly p;
        if (!f.is_zero()) p.words_[{c, d}] = f;
        return p;
    }

    const std::map<Key, DPoly>& words() const { return words_; }
    bool is_zero() const { return words_.empty(); }

    int order() const {
        int n = 0;
        for (const auto& [k, f] : words_) n = std::max(n, k.first + k.second);
        return n;
    }

    friend bool operator==(const OpPoly& a, const OpPoly& b) { return a.words_ == b.words_; }

    OpPoly operator-() const {
        OpPoly r = *this;
        for (auto& [k, f] : r.words_) f = -f;
        return r;
    }
    OpPoly& operator+=(const OpPoly& o) {
        for (const auto& [k, f] : o.words_) {
            auto& slot = words_[k];
            slot += f;
            if (slot.is_zero()) words_.erase(k);
        }
        return *this;
    }
    OpPoly& operator-=(const OpPoly& o) { return *this += -o; }
    friend OpPoly operator+(OpPoly a, const OpPoly& b) { return a += b; }
    friend OpPoly operator-(OpPoly a, const OpPoly& b) { return a -= b; }

    OpPoly scaled(const GaussRat& c) const {
        OpPoly r;
        if (c.is_zero()) return r;
        for (const auto& [k, f] : words_) r.words_[k] = f.scaled(c);
        return r;
    }

    /// Product with re-normal-ordering: dx^c dy^d . g = sum Leibniz shifts of g.
    friend OpPoly operator*(const OpPoly& A, const OpPoly& B) {
        const Vocab& v = Vocab::get();
        OpPoly out;
        for (const auto& [ka, fa] : A.words_) {
            auto [c, d] = ka;
            for (const auto& [kb, fb] : B.words_) {
                auto [e, h] = kb;
                // precompute x-derivatives of fb per a, then y-derivatives per b
                DPoly gx = fb;
                for (int a = 0; a <= c; ++a) {
                    DPoly gxy = gx;
                    for (int b = 0; b <= d; ++b) {
                        GaussRat w(binom(c, a) * binom(d, b));
                        DPoly piece = fa * gxy.scaled(w);
                        if (!piece.is_zero()) {
                            auto& slot = out.words_[{c - a + e, d - b + h}];
                            slot += piece;
                            if (slot.is_zero()) out.words_.erase({c - a + e, d - b + h});
                        }
                        if (b < d) gxy = gxy.differentiate(v.y);
                    }
                    if (a < c) gx = gx.differentiate(v.x);
                }
            }
        }
        return out;
    }

    /// Formal adjoint: reverse order, conjugate coefficients, flip sign of
    /// odd derivative degree; computed term-wise and re-normal-ordered.
    OpPoly adjoint() const {
        const Vocab& v = Vocab::get();
        OpPoly out;
        for (const auto& [k, f] : words_) {
            auto [c, d] = k;
            DPoly fc = conj(f);
            GaussRat sign((c + d) % 2 == 0 ? 1 : -1);
            DPoly gx = fc;
            for (int a = 0; a <= c; ++a) {
                DPoly gxy = gx;
                for (int b = 0; b <= d; ++b) {
                    GaussRat w = sign * GaussRat(binom(c, a) * binom(d, b));
                    DPoly piece = gxy.scaled(w);
                    if (!piece.is_zero()) {
                        auto& slot = out.words_[{c - a, d - b}];
                        slot += piece;
                        if (slot.is_zero()) out.words_.erase({c - a, d - b});
                    }
                    if (b < d) gxy = gxy.differentiate(v.y);
                }
                if (a < c) gx = gx.differentiate(v.x);
            }
        }
        return out;
    }

    bool is_hermitian() const { return adjoint() == *this; }
    bool is_antihermitian() const { return adjoint() == -*this; }

    static DPoly conj(const DPoly& p) {
        std::vector<DPoly::Term> acc(p.terms().begin(), p.terms().end());
        for (auto& t : acc) t.second = t.second.conj();
        return DPoly::from_unsorted(std::move(acc));
    }

private:
    std::map<Key, DPoly> words_;
};

inline OpPoly commutator(const OpPoly& a, const OpPoly& b) { return a * b - b * a; }
inline OpPoly anticommutator(const OpPoly& a, const OpPoly& b) { return a * b + b * a; }

/// p1^j p2^k = (-i hbar)^(j+k) dx^j dy^k.
inline OpPoly momentum(int j, int k) {
    Sym h = Vocab::get().hbar;
    DPoly coef = DPoly::term(Monomial{{{h, j + k}}}, minus_i_pow(j + k));
    if (j + k == 0) coef = DPoly(1);
    return OpPoly::word(coef, j, k);
}

inline OpPoly p1() { return momentum(1, 0); }
inline OpPoly p2() { return momentum(0, 1); }

/// L_z = x p2 - y p1.
inline OpPoly angular_momentum() {
    const Vocab& v = Vocab::get();
    return OpPoly(DPoly::var(v.x)) * p2() - OpPoly(DPoly::var(v.y)) * p1();
}

/// 1/2 { f, p1^j p2^k }, normal ordered; Hermitian for real f.
inline OpPoly sym_anticommutator(const DPoly& f, int j, int k) {
    OpPoly F(f);
    OpPoly D = momentum(j, k);
    return (F * D + D * F).scaled(GaussRat(Rat(1, 2)));
}

/// H = (p1^2 + p2^2)/2 + V1(x) + V2(y), potential as order-0 jets.
inline OpPoly hamiltonian() {
    const Vocab& v = Vocab::get();
    OpPoly kin = (momentum(2, 0) + momentum(0, 2)).scaled(GaussRat(Rat(1, 2)));
    return kin + OpPoly(DPoly::var(jet(v.V1, 0)) + DPoly::var(jet(v.V2, 0)));
}

/// W_N = 1/2 sum A_{N-m-n,m,n} { L_z^(N-m-n), p1^m p2^n }.
/// Keys are (a, m, n) with a = N-m-n; values may be rationals or parameters.
struct AIndex {
    int a, m, n;
    friend bool operator<(const AIndex& p, const AIndex& q) {
        return std::tie(p.a, p.m, p.n) < std::tie(q.a, q.m, q.n);
    }
    friend bool operator==(const AIndex& p, const AIndex& q) {
        return p.a == q.a && p.m == q.m && p.n == q.n;
    }
};
using AMap = std::map<AIndex, DPoly>;

inline OpPoly build_wn(int N, const AMap& A) {
    bool any = false;
    for (const auto& [idx, val] : A)
        if (!val.is_zero()) any = true;
    if (!any) throw std::invalid_argument("all-zero A-map: integral not of order N");

    std::vector<OpPoly> lz_pow(static_cast<size_t>(N) + 1);
    lz_pow[0] = OpPoly(DPoly(1));
    OpPoly lz = angular_momentum();
    for (int k = 1; k <= N; ++k) lz_pow[k] = lz_pow[k - 1] * lz;

    OpPoly out;
    for (const auto& [idx, val] : A) {
        if (val.is_zero()) continue;
        if (idx.a + idx.m + idx.n != N)
            throw std::invalid_argument("A-map index does not sum to N");
        OpPoly term = anticommutator(lz_pow[idx.a], momentum(idx.m, idx.n)).scaled(GaussRat(Rat(1, 2)));
        out += OpPoly(val) * term;
    }
    return out;
}

/// Coefficients Z_{k,l} of dx^k dy^l in a normal-ordered operator.
inline std::map<OpPoly::Key, DPoly> extract_coeffs(const OpPoly& c) { return c.words(); }

/// Classical limit: divide out the common hbar power of the set, then hbar -> 0.
inline std::vector<DPoly> classical_limit(const std::vector<DPoly>& set) {
    Sym h = Vocab::get().hbar;
    int common = common_hbar_power(set);
    std::vector<DPoly> out;
    out.reserve(set.size());
    for (const auto& p : set) {
        DPoly q = p;
        if (common != 0)
            q = q.divided_by_term(Monomial{{{h, common}}}, GaussRat(1));
        out.push_back(q.at_hbar_zero());
    }
    return out;
}

} // namespace superint
