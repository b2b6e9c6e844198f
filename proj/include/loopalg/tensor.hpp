#ifndef LOOPALG_TENSOR_HPP
#define LOOPALG_TENSOR_HPP

#include <algorithm>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "loopalg/field.hpp"
#include "loopalg/word.hpp"

namespace loopalg {

// Bidegree of a homogeneous element: homological dimension and the number
// of Cell letters. The differential of a dgl model has bidegree (-1,-1).
struct Bidegree {
    int dim = 0;
    int ycount = 0;
    bool operator==(const Bidegree&) const = default;
    friend bool operator<(const Bidegree& a, const Bidegree& b) {
        return a.dim != b.dim ? a.dim < b.dim : a.ycount < b.ycount;
    }
};

// Shared context: the tensor algebra T(V) on a weighted alphabet over a
// fixed field. TensorElems from different contexts never mix.
template <class F>
struct Algebra {
    F field;
    Alphabet alphabet;

    Algebra(F f, Alphabet a) : field(std::move(f)), alphabet(std::move(a)) {}
};

template <class F>
using AlgebraPtr = std::shared_ptr<const Algebra<F>>;

template <class F>
AlgebraPtr<F> make_algebra(F field, Alphabet alphabet) {
    return std::make_shared<const Algebra<F>>(std::move(field), std::move(alphabet));
}

// A linear combination of words with nonzero coefficients, kept sorted by
// descending word order; the leading term is the pivot used everywhere by
// the echelon machinery.
template <class F>
class TensorElem {
public:
    using Elem = typename F::Elem;
    using Term = std::pair<Word, Elem>;

    TensorElem() = default;
    explicit TensorElem(AlgebraPtr<F> ctx) : ctx_(std::move(ctx)) {}

    static TensorElem zero(AlgebraPtr<F> ctx) { return TensorElem(std::move(ctx)); }

    static TensorElem unit(AlgebraPtr<F> ctx) {
        TensorElem t(ctx);
        t.terms_.emplace_back(Word::empty(), ctx->field.one());
        return t;
    }

    static TensorElem generator(AlgebraPtr<F> ctx, std::uint8_t g) {
        TensorElem t(ctx);
        t.terms_.emplace_back(Word::single(g), ctx->field.one());
        return t;
    }

    static TensorElem generator(AlgebraPtr<F> ctx, const std::string& name) {
        return generator(ctx, ctx->alphabet.index_of(name));
    }

    static TensorElem monomial(AlgebraPtr<F> ctx, Word w, Elem c) {
        TensorElem t(ctx);
        if (!ctx->field.is_zero(c)) t.terms_.emplace_back(w, std::move(c));
        return t;
    }

    const AlgebraPtr<F>& ctx() const { return ctx_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    const Word& leading_word() const {
        if (is_zero()) throw std::logic_error("leading_word of zero");
        return terms_.front().first;
    }
    const Elem& leading_coeff() const {
        if (is_zero()) throw std::logic_error("leading_coeff of zero");
        return terms_.front().second;
    }

    // Bidegree when every word agrees, otherwise nullopt. Zero is
    // homogeneous of every bidegree.
    std::optional<Bidegree> bidegree() const {
        if (is_zero()) return std::nullopt;
        const Alphabet& A = ctx_->alphabet;
        Bidegree b{terms_.front().first.dim(A), terms_.front().first.ycount(A)};
        for (const Term& t : terms_) {
            if (t.first.dim(A) != b.dim || t.first.ycount(A) != b.ycount) return std::nullopt;
        }
        return b;
    }

    bool is_homogeneous() const { return is_zero() || bidegree().has_value(); }

    // Common dimension of all words, or nullopt for a mixed or zero element.
    std::optional<int> homdim() const {
        if (is_zero()) return std::nullopt;
        const Alphabet& A = ctx_->alphabet;
        int d = terms_.front().first.dim(A);
        for (const Term& t : terms_)
            if (t.first.dim(A) != d) return std::nullopt;
        return d;
    }

    // Dimension of a homogeneous nonzero element.
    int dim() const {
        auto d = homdim();
        if (!d) throw std::invalid_argument("element is not homogeneous");
        return *d;
    }

    TensorElem scaled(const Elem& c) const {
        const F& f = ctx_->field;
        TensorElem r(ctx_);
        if (f.is_zero(c)) return r;
        r.terms_.reserve(terms_.size());
        for (const Term& t : terms_) r.terms_.emplace_back(t.first, f.mul(t.second, c));
        return r;
    }

    TensorElem negated() const {
        const F& f = ctx_->field;
        TensorElem r(ctx_);
        r.terms_.reserve(terms_.size());
        for (const Term& t : terms_) r.terms_.emplace_back(t.first, f.neg(t.second));
        return r;
    }

    // *this += c * other, merging from position `from` onward. Callers that
    // know other's words are all <= terms_[from].first can pass `from` to
    // skip the untouched prefix.
    void axpy(const Elem& c, const TensorElem& other, std::size_t from = 0) {
        check_same_ctx(other);
        const F& f = ctx_->field;
        if (f.is_zero(c) || other.is_zero()) return;
        std::vector<Term> merged;
        merged.reserve(terms_.size() + other.terms_.size());
        for (std::size_t i = 0; i < from && i < terms_.size(); ++i)
            merged.emplace_back(std::move(terms_[i]));
        std::size_t i = from, j = 0;
        while (i < terms_.size() && j < other.terms_.size()) {
            int cmp = compare(terms_[i].first, other.terms_[j].first);
            if (cmp > 0) {
                merged.emplace_back(std::move(terms_[i++]));
            } else if (cmp < 0) {
                merged.emplace_back(other.terms_[j].first, f.mul(c, other.terms_[j].second));
                ++j;
            } else {
                Elem v = terms_[i].second;
                f.addmul(v, c, other.terms_[j].second);
                if (!f.is_zero(v)) merged.emplace_back(terms_[i].first, std::move(v));
                ++i; ++j;
            }
        }
        for (; i < terms_.size(); ++i) merged.emplace_back(std::move(terms_[i]));
        for (; j < other.terms_.size(); ++j)
            merged.emplace_back(other.terms_[j].first, f.mul(c, other.terms_[j].second));
        terms_ = std::move(merged);
    }

    friend TensorElem operator+(TensorElem a, const TensorElem& b) {
        a.axpy(a.ctx_->field.one(), b);
        return a;
    }
    friend TensorElem operator-(TensorElem a, const TensorElem& b) {
        a.axpy(a.ctx_->field.neg(a.ctx_->field.one()), b);
        return a;
    }

    bool operator==(const TensorElem& b) const {
        if (terms_.size() != b.terms_.size()) return false;
        const F& f = ctx_->field;
        for (std::size_t i = 0; i < terms_.size(); ++i)
            if (!(terms_[i].first == b.terms_[i].first) || !f.eq(terms_[i].second, b.terms_[i].second))
                return false;
        return true;
    }

    std::string str() const {
        if (is_zero()) return "0";
        const F& f = ctx_->field;
        const Alphabet& A = ctx_->alphabet;
        std::string s;
        bool first = true;
        for (const Term& t : terms_) {
            std::string c = f.str(t.second);
            bool negative = !c.empty() && c[0] == '-';
            if (negative) c = c.substr(1);
            if (first) {
                if (negative) s += "-";
                first = false;
            } else {
                s += negative ? " - " : " + ";
            }
            if (c != "1")
                s += c + "*" + t.first.str(A);
            else
                s += t.first.str(A);
        }
        return s;
    }

    void check_same_ctx(const TensorElem& other) const {
        if (ctx_.get() != other.ctx_.get())
            throw std::invalid_argument("alphabet mismatch between tensor elements");
    }

private:
    AlgebraPtr<F> ctx_;
    std::vector<Term> terms_;
};

// Bilinear extension of word concatenation.
template <class F>
TensorElem<F> concat_product(const TensorElem<F>& a, const TensorElem<F>& b) {
    a.check_same_ctx(b);
    const F& f = a.ctx()->field;
    TensorElem<F> out(a.ctx());
    for (const auto& ta : a.terms()) {
        TensorElem<F> row(a.ctx());
        for (const auto& tb : b.terms()) {
            TensorElem<F> m = TensorElem<F>::monomial(a.ctx(), Word::concat(ta.first, tb.first),
                                                      f.mul(ta.second, tb.second));
            row.axpy(f.one(), m);
        }
        out.axpy(f.one(), row);
    }
    return out;
}

// Graded commutator [a,b] = a.b - (-1)^{|a||b|} b.a. Both arguments must be
// homogeneous in dimension so the Koszul sign is defined.
template <class F>
TensorElem<F> graded_bracket(const TensorElem<F>& a, const TensorElem<F>& b) {
    a.check_same_ctx(b);
    const F& f = a.ctx()->field;
    if (a.is_zero() || b.is_zero()) return TensorElem<F>::zero(a.ctx());
    auto da = a.homdim(), db = b.homdim();
    if (!da || !db) throw std::invalid_argument("bracket requires homogeneous arguments");
    const bool sign_flip = (*da % 2 != 0) && (*db % 2 != 0);
    TensorElem<F> ab = concat_product(a, b);
    TensorElem<F> ba = concat_product(b, a);
    // a.b - (-1)^{|a||b|} b.a: subtract b.a unless both dims are odd.
    ab.axpy(sign_flip ? f.one() : f.neg(f.one()), ba);
    return ab;
}

}  // namespace loopalg

#endif  // LOOPALG_TENSOR_HPP
