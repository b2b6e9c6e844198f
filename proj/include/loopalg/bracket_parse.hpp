#ifndef LOOPALG_BRACKET_PARSE_HPP
#define LOOPALG_BRACKET_PARSE_HPP

#include <cctype>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "loopalg/tensor.hpp"

namespace loopalg {

// Wire format for attaching maps and relations:
//   expr := term (('+'|'-') term)*
//   term := [rational '*'] atom
//   atom := name | '[' expr ',' expr ']'
//   rational := digits | digits '/' digits
// The expansion of an expr must be homogeneous in dimension; a zero result
// is legal.

struct ParseError : std::runtime_error {
    std::size_t pos;  // 1-based offset into the source string
    ParseError(const std::string& msg, std::size_t pos1)
        : std::runtime_error(msg + " at position " + std::to_string(pos1)), pos(pos1) {}
};

struct BracketAtom;

struct BracketTerm {
    long num = 1;
    long den = 1;
    bool explicit_coeff = false;
    std::shared_ptr<BracketAtom> atom;
    std::size_t pos = 0;
};

struct BracketExpr {
    // Terms with signs; the first sign is always '+'.
    std::vector<std::pair<int, BracketTerm>> terms;

    std::string str() const;

    template <class F>
    TensorElem<F> evaluate(const AlgebraPtr<F>& ctx) const;
};

struct BracketAtom {
    // Either a generator name or a bracket of two sub-expressions.
    std::string name;
    std::size_t pos = 0;
    std::shared_ptr<BracketExpr> left, right;

    bool is_name() const { return !name.empty(); }
};

namespace detail {

class BracketParser {
public:
    explicit BracketParser(const std::string& src) : src_(src) {}

    BracketExpr parse() {
        BracketExpr e = parse_expr();
        skip_ws();
        if (pos_ < src_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    const std::string& src_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_ + 1); }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    void expect(char c, const std::string& what) {
        if (peek() != c) fail("expected '" + std::string(1, c) + "' " + what);
        ++pos_;
    }

    BracketExpr parse_expr() {
        BracketExpr e;
        e.terms.emplace_back(+1, parse_term());
        while (true) {
            char c = peek();
            if (c == '+' || c == '-') {
                ++pos_;
                e.terms.emplace_back(c == '+' ? +1 : -1, parse_term());
            } else {
                break;
            }
        }
        return e;
    }

    BracketTerm parse_term() {
        BracketTerm t;
        t.pos = pos_ + 1;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            t.explicit_coeff = true;
            t.num = parse_int();
            if (peek() == '/') {
                ++pos_;
                t.den = parse_int();
                if (t.den == 0) fail("zero denominator");
            }
            expect('*', "after coefficient");
        }
        t.atom = std::make_shared<BracketAtom>(parse_atom());
        return t;
    }

    long parse_int() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return std::stol(src_.substr(start, pos_ - start));
    }

    BracketAtom parse_atom() {
        BracketAtom a;
        a.pos = pos_ + 1;
        char c = peek();
        if (c == '[') {
            ++pos_;
            a.left = std::make_shared<BracketExpr>(parse_expr());
            expect(',', "in bracket");
            a.right = std::make_shared<BracketExpr>(parse_expr());
            expect(']', "closing bracket");
            return a;
        }
        a.pos = pos_ + 1;
        skip_ws();
        a.pos = pos_ + 1;
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        if (start == pos_) fail("expected generator name or '['");
        a.name = src_.substr(start, pos_ - start);
        return a;
    }
};

}  // namespace detail

inline BracketExpr parse_bracket_syntax(const std::string& src) {
    return detail::BracketParser(src).parse();
}

inline std::string atom_str(const BracketAtom& a) {
    if (a.is_name()) return a.name;
    return "[" + a.left->str() + "," + a.right->str() + "]";
}

inline std::string BracketExpr::str() const {
    std::string s;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& [sign, t] = terms[i];
        if (i == 0) {
            if (sign < 0) s += "-";
        } else {
            s += sign > 0 ? " + " : " - ";
        }
        if (t.explicit_coeff || t.num != 1 || t.den != 1) {
            s += std::to_string(t.num);
            if (t.den != 1) s += "/" + std::to_string(t.den);
            s += "*";
        }
        s += atom_str(*t.atom);
    }
    return s;
}

template <class F>
TensorElem<F> BracketExpr::evaluate(const AlgebraPtr<F>& ctx) const {
    const F& f = ctx->field;
    TensorElem<F> acc = TensorElem<F>::zero(ctx);
    int acc_dim = -1;
    for (const auto& [sign, t] : terms) {
        TensorElem<F> v(ctx);
        const BracketAtom& a = *t.atom;
        if (a.is_name()) {
            if (!ctx->alphabet.has(a.name))
                throw ParseError("unknown name '" + a.name + "'", a.pos);
            v = TensorElem<F>::generator(ctx, a.name);
        } else {
            TensorElem<F> l = a.left->template evaluate<F>(ctx);
            TensorElem<F> r = a.right->template evaluate<F>(ctx);
            if (l.is_zero() || r.is_zero()) {
                v = TensorElem<F>::zero(ctx);
            } else {
                v = graded_bracket(l, r);
            }
        }
        typename F::Elem c = f.from_fraction(sign * t.num, t.den);
        v = v.scaled(c);
        if (!v.is_zero()) {
            int d = v.dim();
            if (acc_dim >= 0 && d != acc_dim)
                throw ParseError("mixed dimensions (" + std::to_string(acc_dim) + " vs " +
                                     std::to_string(d) + ")",
                                 t.pos);
            acc_dim = std::max(acc_dim, d);
        }
        acc.axpy(f.one(), v);
    }
    return acc;
}

// Parses and expands src over the context's alphabet. The error cases
// (unknown name, unbalanced brackets, mixed dimensions) carry a 1-based
// position into src.
template <class F>
TensorElem<F> parse_bracket_expr(const std::string& src, const AlgebraPtr<F>& ctx) {
    return parse_bracket_syntax(src).evaluate<F>(ctx);
}

}  // namespace loopalg

#endif  // LOOPALG_BRACKET_PARSE_HPP
