#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "dpoly.hpp"
#include "printer.hpp"

namespace superint {

struct ParseError : std::runtime_error {
    int line, column;
    ParseError(const std::string& msg, int l, int c)
        : std::runtime_error(msg + " at line " + std::to_string(l) + ", column " + std::to_string(c)),
          line(l), column(c) {}
};

/// Recursive-descent parser for the expression grammar:
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := atom ('^' int)?
///   atom   := rational | 'i' | ident | deriv | '(' expr ')'
///   deriv  := ident '^(' int (',' int)? ')' | ident "'"+
/// Identifiers resolve against the symbol registry plus the stock families
/// a0.., b0.., c0.., k0.., omega1/2, A_a_m_n and f_j_2l.
class ExprParser {
public:
    explicit ExprParser(const std::string& text) : text_(text) {}

    DPoly parse() {
        skip_ws();
        DPoly p = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return p;
    }

private:
    DPoly parse_expr() {
        DPoly acc;
        bool neg = false;
        skip_ws();
        if (peek() == '+' || peek() == '-') neg = (get() == '-');
        DPoly t = parse_term();
        acc = neg ? -t : t;
        for (;;) {
            skip_ws();
            char c = peek();
            if (c != '+' && c != '-') break;
            get();
            DPoly rhs = parse_term();
            if (c == '+') acc += rhs; else acc -= rhs;
        }
        return acc;
    }

    DPoly parse_term() {
        DPoly acc = parse_factor();
        for (;;) {
            skip_ws();
            if (peek() != '*') break;
            get();
            acc *= parse_factor();
        }
        return acc;
    }

    DPoly parse_factor() {
        DPoly a = parse_atom();
        skip_ws();
        if (peek() == '^') {
            size_t save = pos_;
            get();
            skip_ws();
            if (peek() == '(') { pos_ = save; return a; } // was a deriv suffix, handled in atom
            int e = parse_int();
            if (e >= 0) return a.pow(e);
            if (!a.is_monomial()) fail("negative power of a non-monomial");
            const auto& [m, c] = a.terms()[0];
            return DPoly(1).divided_by_term(m, c).pow(-e);
        }
        return a;
    }

    DPoly parse_atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            get();
            DPoly p = parse_expr();
            skip_ws();
            if (peek() != ')') fail("expected ')'");
            get();
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return parse_rational();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
        fail(c == '\0' ? "unexpected end of input" : std::string("unexpected character '") + c + "'");
        return {};
    }

    DPoly parse_rational() {
        std::string num = read_digits();
        skip_ws();
        if (peek() == '/') {
            size_t save = pos_;
            get();
            skip_ws();
            if (std::isdigit(static_cast<unsigned char>(peek()))) {
                std::string den = read_digits();
                return DPoly(rat_from_string(num + "/" + den));
            }
            pos_ = save;
        }
        return DPoly(rat_from_string(num));
    }

    DPoly parse_ident() {
        int line = line_, col = col_;
        std::string name;
        while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') name += get();
        if (name == "i") return DPoly(GaussRat::i());

        auto& tab = SymTab::instance();

        // derivative suffix?
        int order = 0, order2 = 0;
        bool has_suffix = false, has_pair = false;
        skip_ws();
        if (peek() == '\'') {
            has_suffix = true;
            while (peek() == '\'') { ++order; get(); }
        } else if (peek() == '^') {
            size_t save = pos_;
            int sl = line_, sc = col_;
            get();
            skip_ws();
            if (peek() == '(') {
                get();
                order = parse_int();
                skip_ws();
                if (peek() == ',') {
                    get();
                    order2 = parse_int();
                    has_pair = true;
                }
                skip_ws();
                if (peek() != ')') fail("expected ')' in derivative index");
                get();
                has_suffix = true;
            } else {
                pos_ = save; line_ = sl; col_ = sc;
            }
        }

        if (auto dep = resolve_dependent(name)) {
            const auto& vars = tab.dep_vars(*dep);
            if (has_pair && vars.size() < 2)
                throw ParseError("dependent '" + name + "' takes a single derivative index", line, col);
            if (!has_pair && order2 == 0 && has_suffix && vars.size() >= 2)
                order2 = 0; // f_j_2l^(a) means d^a/dx^a
            return DPoly::var(tab.jet(*dep, order, order2));
        }
        if (has_suffix)
            throw ParseError("'" + name + "' is not a known function; cannot take derivatives", line, col);
        if (auto s = resolve_plain(name)) return DPoly::var(*s);

        throw ParseError("unknown identifier '" + name + "'" + suggestions(name), line, col);
    }

    std::optional<uint32_t> resolve_dependent(const std::string& name) {
        auto& tab = SymTab::instance();
        Vocab::get();
        if (auto d = tab.lookup_dependent(name)) return d;
        // f_j_2l family: dependents on (x, y)
        if (name.size() > 2 && name[0] == 'f' && name[1] == '_') {
            size_t us = name.find('_', 2);
            if (us != std::string::npos && us + 1 < name.size() &&
                all_digits(name.substr(2, us - 2)) && all_digits(name.substr(us + 1)))
                return tab.dependent(name, {Vocab::get().x, Vocab::get().y});
        }
        return std::nullopt;
    }

    std::optional<Sym> resolve_plain(const std::string& name) {
        auto& tab = SymTab::instance();
        Vocab::get();
        if (auto s = tab.lookup(name)) return s;
        // stock parameter families the grammar admits
        if (name.size() >= 2 && (name[0] == 'a' || name[0] == 'b' || name[0] == 'c' || name[0] == 'k') &&
            all_digits(name.substr(1)))
            return tab.param(name);
        if (name == "omega1" || name == "omega2") return tab.param(name, true);
        if (name.rfind("A_", 0) == 0) {
            size_t p1 = name.find('_', 2);
            size_t p2 = p1 == std::string::npos ? std::string::npos : name.find('_', p1 + 1);
            if (p2 != std::string::npos && all_digits(name.substr(2, p1 - 2)) &&
                all_digits(name.substr(p1 + 1, p2 - p1 - 1)) && all_digits(name.substr(p2 + 1)))
                return tab.param(name);
        }
        return std::nullopt;
    }

    std::string suggestions(const std::string& name) {
        auto names = SymTab::instance().all_names();
        std::vector<std::string> close;
        for (const auto& n : names)
            if (edit_distance(n, name) <= 2) close.push_back(n);
        if (close.empty()) return "";
        std::string s = "; did you mean: ";
        for (size_t i = 0; i < close.size() && i < 4; ++i) {
            if (i) s += ", ";
            s += close[i];
        }
        return s;
    }

    static int edit_distance(const std::string& a, const std::string& b) {
        std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
        for (size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int>(j);
        for (size_t i = 1; i <= a.size(); ++i) {
            cur[0] = static_cast<int>(i);
            for (size_t j = 1; j <= b.size(); ++j)
                cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] != b[j - 1])});
            std::swap(prev, cur);
        }
        return prev[b.size()];
    }

    static bool all_digits(const std::string& s) {
        if (s.empty()) return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    }

    int parse_int() {
        skip_ws();
        bool neg = false;
        if (peek() == '-') { neg = true; get(); }
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer");
        std::string d = read_digits();
        long v = std::stol(d);
        return static_cast<int>(neg ? -v : v);
    }

    std::string read_digits() {
        std::string d;
        while (std::isdigit(static_cast<unsigned char>(peek()))) d += get();
        return d;
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    char get() {
        char c = peek();
        if (c == '\n') { ++line_; col_ = 1; } else { ++col_; }
        ++pos_;
        return c;
    }
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) get();
    }
    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line_, col_); }

    std::string text_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

inline DPoly parse_expression(const std::string& text) { return ExprParser(text).parse(); }

} // namespace superint
