#ifndef LOOPALG_SLICE_HPP
#define LOOPALG_SLICE_HPP

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "loopalg/tensor.hpp"

namespace loopalg {

// Constraint on a graded component: fixed dimension, optionally a fixed
// number of Cell letters.
struct SliceConstraint {
    int dim = 0;
    std::optional<int> ycount;

    std::string str() const {
        return ycount ? "(dim " + std::to_string(dim) + ", ycount " + std::to_string(*ycount) + ")"
                      : "(dim " + std::to_string(dim) + ")";
    }
    bool operator==(const SliceConstraint&) const = default;
};

// Echelon basis of a subspace of one graded component of T(V). Rows are
// keyed by their pivot (largest word in the fixed word order), pivot
// coefficient 1, pivots pairwise distinct. reduce() computes the unique
// normal form of v modulo the row space: the result contains no pivot
// word, so reduce(v) == 0 iff v lies in the span.
template <class F>
class Slice {
public:
    using Elem = typename F::Elem;
    using RowMap = std::map<Word, TensorElem<F>, std::greater<Word>>;

    Slice(AlgebraPtr<F> ctx, SliceConstraint c) : ctx_(std::move(ctx)), constraint_(c) {}

    const AlgebraPtr<F>& ctx() const { return ctx_; }
    const SliceConstraint& constraint() const { return constraint_; }
    std::size_t rank() const { return rows_.size(); }

    // Rows in descending pivot order.
    const RowMap& row_map() const { return rows_; }
    std::vector<TensorElem<F>> rows() const {
        std::vector<TensorElem<F>> r;
        r.reserve(rows_.size());
        for (const auto& [w, v] : rows_) r.push_back(v);
        return r;
    }

    void check_constraint(const TensorElem<F>& v) const {
        if (v.is_zero()) return;
        const Alphabet& A = ctx_->alphabet;
        for (const auto& t : v.terms()) {
            if (t.first.dim(A) != constraint_.dim ||
                (constraint_.ycount && t.first.ycount(A) != *constraint_.ycount))
                throw std::invalid_argument("constraint mismatch: element not homogeneous of " +
                                            constraint_.str());
        }
    }

    TensorElem<F> reduce(TensorElem<F> v) const {
        const F& f = ctx_->field;
        std::size_t i = 0;
        while (i < v.terms().size()) {
            auto it = rows_.find(v.terms()[i].first);
            if (it == rows_.end()) {
                ++i;
                continue;
            }
            // Row pivot coefficient is 1; subtracting kills position i and
            // only touches strictly smaller words.
            const Elem c = f.neg(v.terms()[i].second);
            v.axpy(c, it->second, i);
        }
        return v;
    }

    bool contains(const TensorElem<F>& v) const { return reduce(v).is_zero(); }

    // Enlarges the span by v. Returns true iff v was already in the span.
    bool insert(const TensorElem<F>& v) {
        check_constraint(v);
        TensorElem<F> r = reduce(v);
        if (r.is_zero()) return true;
        const F& f = ctx_->field;
        r = r.scaled(f.inv(r.leading_coeff()));
        Word pivot = r.leading_word();
        rows_.emplace(pivot, std::move(r));
        return false;
    }

    bool same_row_space(const Slice& other) const {
        if (rank() != other.rank()) return false;
        for (const auto& [w, v] : rows_)
            if (!other.contains(v)) return false;
        for (const auto& [w, v] : other.rows_)
            if (!contains(v)) return false;
        return true;
    }

private:
    AlgebraPtr<F> ctx_;
    SliceConstraint constraint_;
    RowMap rows_;
};

// Functional form of Slice::insert.
template <class F>
std::pair<Slice<F>, bool> echelon_insert(Slice<F> s, const TensorElem<F>& v) {
    bool absorbed = s.insert(v);
    return {std::move(s), absorbed};
}

// A linear rule between two graded components, evaluated on basis elements.
template <class F>
struct GradedMap {
    SliceConstraint source;
    SliceConstraint target;
    std::function<TensorElem<F>(const TensorElem<F>&)> apply;
};

template <class F>
struct KernelImage {
    Slice<F> kernel;
    Slice<F> image;
};

// Gaussian elimination with preimage tracking. Every kernel row maps to
// zero under m; image rows are the echelonized values. Rank-nullity
// dim kernel + dim image = dim domain holds by construction.
template <class F>
KernelImage<F> kernel_and_image(const GradedMap<F>& m, const Slice<F>& domain) {
    using Elem = typename F::Elem;
    const AlgebraPtr<F>& ctx = domain.ctx();
    const F& f = ctx->field;
    Slice<F> kernel(ctx, m.source);
    Slice<F> image(ctx, m.target);
    // pivot word of image row -> preimage of that row
    std::map<Word, TensorElem<F>, std::greater<Word>> pre_of;

    for (const auto& [pivot, row] : domain.row_map()) {
        TensorElem<F> img = m.apply(row);
        if (!img.is_zero()) {
            const Alphabet& A = ctx->alphabet;
            for (const auto& t : img.terms()) {
                if (t.first.dim(A) != m.target.dim ||
                    (m.target.ycount && t.first.ycount(A) != *m.target.ycount))
                    throw std::invalid_argument("inhomogeneous map output: expected " +
                                                m.target.str());
            }
        }
        TensorElem<F> pre = row;
        std::size_t i = 0;
        while (i < img.terms().size()) {
            auto it = image.row_map().find(img.terms()[i].first);
            if (it == image.row_map().end()) {
                ++i;
                continue;
            }
            const Elem c = f.neg(img.terms()[i].second);
            img.axpy(c, it->second, i);
            pre.axpy(c, pre_of.at(it->first), 0);
        }
        if (img.is_zero()) {
            kernel.insert(pre);
        } else {
            Elem s = f.inv(img.leading_coeff());
            img = img.scaled(s);
            pre = pre.scaled(s);
            Word pivot_w = img.leading_word();
            pre_of.emplace(pivot_w, std::move(pre));
            image.insert(img);
        }
    }
    return {std::move(kernel), std::move(image)};
}

template <class F>
struct QuotientResult {
    std::size_t dim = 0;
    // Complement representatives: reduce to a basis of ambient/sub.
    std::vector<TensorElem<F>> reps;
};

// dim(ambient) - dim(sub), with sub <= ambient verified row by row when
// `verify` is set. Pipeline callers whose containment holds by construction
// (an ideal inside the Lie slice it was closed in) pass verify = false.
template <class F>
QuotientResult<F> quotient_dim(const Slice<F>& ambient, const Slice<F>& sub, bool verify = true) {
    if (verify) {
        for (const auto& [w, row] : sub.row_map()) {
            if (!ambient.contains(row))
                throw std::invalid_argument("sub is not contained in ambient: offending row " +
                                            row.str());
        }
    }
    QuotientResult<F> q;
    Slice<F> comp(ambient.ctx(), ambient.constraint());
    for (const auto& [w, row] : ambient.row_map()) {
        TensorElem<F> nf = sub.reduce(row);
        if (nf.is_zero()) continue;
        if (!comp.insert(nf)) q.reps.push_back(std::move(nf));
    }
    q.dim = q.reps.size();
    if (q.dim != ambient.rank() - sub.rank())
        throw std::logic_error("quotient dimension bookkeeping failed");
    return q;
}

}  // namespace loopalg

#endif  // LOOPALG_SLICE_HPP
