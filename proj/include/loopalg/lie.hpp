#ifndef LOOPALG_LIE_HPP
#define LOOPALG_LIE_HPP

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "loopalg/memo.hpp"
#include "loopalg/series.hpp"
#include "loopalg/slice.hpp"

namespace loopalg {

// Graded components of free Lie algebras, Lie ideals and presented Lie
// algebras, realized as echelon slices inside the tensor algebra. Lie
// elements are kept as their expansions in T(V); left-normed brackets span
// every free Lie component over Q or F_p with p > 3, so slices are closed
// by bracketing lower slices with generators and no Hall/Lyndon rewriting
// is ever needed.
template <class F>
class LieEngine {
public:
    using SlicePtr = std::shared_ptr<const Slice<F>>;

    LieEngine(AlgebraPtr<F> ctx, std::vector<TensorElem<F>> relations, bool validate = true)
        : ctx_(std::move(ctx)), relations_(std::move(relations)) {
        if (validate) validate_relations();
    }

    const AlgebraPtr<F>& ctx() const { return ctx_; }
    const std::vector<TensorElem<F>>& relations() const { return relations_; }
    bool has_relations() const { return !relations_.empty(); }

    // Component of the free Lie algebra on the full alphabet in the given
    // bidegree: the span of all left-normed brackets with that dimension
    // and Cell-letter count.
    SlicePtr free_lie(int dim, int yc) {
        return free_.get(key(dim, yc), [&] { return build_free(dim, yc); });
    }

    // Total dim-n component (all ycounts).
    Slice<F> free_lie_total(int dim) {
        Slice<F> s(ctx_, SliceConstraint{dim, std::nullopt});
        const int ymax = max_ycount(dim);
        for (int k = 0; k <= ymax; ++k)
            for (const auto& [w, row] : free_lie(dim, k)->row_map()) s.insert(row);
        return s;
    }

    // Slice of the Lie ideal generated by the presentation relations.
    SlicePtr rel_ideal(int dim, int yc) {
        return rel_.get(key(dim, yc), [&] { return build_rel_ideal(dim, yc); });
    }

    // Normal form modulo the relation ideal; canonical on classes.
    TensorElem<F> canon(const TensorElem<F>& v, int dim, int yc) {
        if (relations_.empty()) return v;
        return rel_ideal(dim, yc)->reduce(v);
    }

    // Canonical basis of the presented component (free slice mod relation
    // ideal), rows in normal form.
    SlicePtr presented(int dim, int yc) {
        if (relations_.empty()) return free_lie(dim, yc);
        return pres_.get(key(dim, yc), [&] { return build_presented(dim, yc); });
    }

    long long presented_dim(int dim, int yc) {
        return static_cast<long long>(presented(dim, yc)->rank());
    }

    // Number of words of the given bidegree (the tensor-slice dimension).
    long long word_count(int dim, int yc) {
        if (dim == 0) return yc == 0 ? 1 : 0;
        if (dim < 0 || yc < 0) return 0;
        auto p = wc_.get(key(dim, yc), [&] {
            long long c = 0;
            for (const Generator& g : ctx_->alphabet.gens()) {
                const int y = g.kind == GenKind::Cell ? 1 : 0;
                c = checked_add(c, word_count(dim - g.dim, yc - y));
            }
            return c;
        });
        return *p;
    }

    int max_ycount(int dim) const {
        int cell_min = 0;
        for (const Generator& g : ctx_->alphabet.gens())
            if (g.kind == GenKind::Cell) cell_min = cell_min == 0 ? g.dim : std::min(cell_min, g.dim);
        return cell_min == 0 ? 0 : dim / cell_min;
    }

    // Free graded Lie algebra dims on the alphabet through N, by Witt
    // inversion of the tensor series. Cross-checked against slice ranks by
    // the PBW property suite.
    GradedDims witt_dims(int N) {
        std::vector<long long> t(static_cast<std::size_t>(N) + 1, 0);
        for (int n = 0; n <= N; ++n) {
            long long total = 0;
            for (int k = 0; k <= max_ycount(n); ++k) total = checked_add(total, word_count(n, k));
            t[n] = total;
        }
        return witt_inverse(TruncSeries(std::move(t)));
    }

    // Quotient dims of the presentation through N. When the quotient
    // vanishes on a window of max-generator-dim consecutive dimensions it
    // vanishes in every higher dimension (left-normed brackets reduce any
    // higher component into the ideal), so slices stop being materialized
    // there.
    struct CertifiedDims {
        GradedDims dims;
        bool stabilized_zero = false;
        int stable_from = 0;
    };

    CertifiedDims presented_dims_certified(int N) {
        CertifiedDims out;
        // Window length: max dim of the generators that can appear in the
        // Cell-free component (any longer window stays valid).
        const int window = ctx_->alphabet.max_dim();
        int zeros = 0;
        for (int n = 1; n <= N; ++n) {
            long long q = presented_dim(n, 0);
            if (q != 0) out.dims[n] = q;
            zeros = (q == 0) ? zeros + 1 : 0;
            if (relations_.empty()) continue;  // free: dims never stabilize to zero
            if (zeros >= window && n >= window) {
                out.stabilized_zero = true;
                out.stable_from = n - zeros + 1;
                return out;
            }
        }
        return out;
    }

    TensorElem<F> generator_elem(std::uint8_t g) const { return TensorElem<F>::generator(ctx_, g); }

    bool is_lie_element(const TensorElem<F>& v) {
        if (v.is_zero()) return true;
        auto b = v.bidegree();
        if (!b) return false;
        return free_lie(b->dim, b->ycount)->contains(v);
    }

private:
    static std::pair<int, int> key(int dim, int yc) { return {dim, yc}; }

    void validate_relations() {
        for (const TensorElem<F>& r : relations_) {
            if (r.is_zero()) continue;
            auto b = r.bidegree();
            if (!b || b->ycount != 0)
                throw std::invalid_argument("relation must be a dim-homogeneous element of the space algebra: " + r.str());
            if (!free_lie(b->dim, 0)->contains(r))
                throw std::invalid_argument("relation is not a Lie element: " + r.str());
        }
    }

    Slice<F> build_free(int dim, int yc) {
        Slice<F> s(ctx_, SliceConstraint{dim, yc});
        const Alphabet& A = ctx_->alphabet;
        for (std::uint8_t gi = 0; gi < A.size(); ++gi) {
            const Generator& g = A.gen(gi);
            const int y = g.kind == GenKind::Cell ? 1 : 0;
            if (g.dim == dim && y == yc) s.insert(generator_elem(gi));
        }
        for (std::uint8_t gi = 0; gi < A.size(); ++gi) {
            const Generator& g = A.gen(gi);
            const int y = g.kind == GenKind::Cell ? 1 : 0;
            const int pd = dim - g.dim, pk = yc - y;
            if (pd < 1 || pk < 0) continue;
            SlicePtr prev = free_lie(pd, pk);
            TensorElem<F> ge = generator_elem(gi);
            for (const auto& [w, row] : prev->row_map()) s.insert(graded_bracket(row, ge));
        }
        return s;
    }

    Slice<F> build_rel_ideal(int dim, int yc) {
        Slice<F> s(ctx_, SliceConstraint{dim, yc});
        const Alphabet& A = ctx_->alphabet;
        if (yc == 0) {
            for (const TensorElem<F>& r : relations_) {
                if (r.is_zero()) continue;
                if (r.bidegree()->dim == dim) s.insert(r);
            }
        }
        for (std::uint8_t gi = 0; gi < A.size(); ++gi) {
            const Generator& g = A.gen(gi);
            const int y = g.kind == GenKind::Cell ? 1 : 0;
            const int pd = dim - g.dim, pk = yc - y;
            if (pd < 1 || pk < 0) continue;
            SlicePtr prev = rel_ideal(pd, pk);
            TensorElem<F> ge = generator_elem(gi);
            for (const auto& [w, row] : prev->row_map()) s.insert(graded_bracket(row, ge));
        }
        return s;
    }

    Slice<F> build_presented(int dim, int yc) {
        Slice<F> s(ctx_, SliceConstraint{dim, yc});
        SlicePtr amb = free_lie(dim, yc);
        SlicePtr rel = rel_ideal(dim, yc);
        for (const auto& [w, row] : amb->row_map()) s.insert(rel->reduce(row));
        if (s.rank() != amb->rank() - rel->rank())
            throw std::logic_error("presented slice rank bookkeeping failed");
        return s;
    }

    AlgebraPtr<F> ctx_;
    std::vector<TensorElem<F>> relations_;
    MemoCache<std::pair<int, int>, Slice<F>> free_;
    MemoCache<std::pair<int, int>, Slice<F>> rel_;
    MemoCache<std::pair<int, int>, Slice<F>> pres_;
    MemoCache<std::pair<int, int>, long long> wc_;
};

// Slices of the Lie ideal generated by a seed set inside the presented
// algebra of an engine. Rows are canonical forms; one ascending pass per
// bidegree closes the ideal because bracketing strictly raises dimension.
template <class F>
class QuotientIdeal {
public:
    using SlicePtr = std::shared_ptr<const Slice<F>>;

    QuotientIdeal(LieEngine<F>& eng, std::vector<TensorElem<F>> seeds)
        : eng_(eng), seeds_(std::move(seeds)) {
        for (const TensorElem<F>& s : seeds_) {
            if (s.is_zero()) continue;
            if (!s.bidegree())
                throw std::invalid_argument("ideal seed must be bidegree-homogeneous: " + s.str());
            if (!eng_.is_lie_element(s))
                throw std::invalid_argument("ideal seed is not a Lie element: " + s.str());
        }
    }

    LieEngine<F>& engine() { return eng_; }
    const std::vector<TensorElem<F>>& seeds() const { return seeds_; }

    SlicePtr slice(int dim, int yc) {
        return cache_.get({dim, yc}, [&] { return build(dim, yc); });
    }

    long long dim_at(int dim, int yc) { return static_cast<long long>(slice(dim, yc)->rank()); }

    GradedDims dims_upto(int N, int yc = 0) {
        GradedDims d;
        for (int n = 1; n <= N; ++n) {
            long long r = dim_at(n, yc);
            if (r != 0) d[n] = r;
        }
        return d;
    }

private:
    Slice<F> build(int dim, int yc) {
        const AlgebraPtr<F>& ctx = eng_.ctx();
        Slice<F> s(ctx, SliceConstraint{dim, yc});
        for (const TensorElem<F>& seed : seeds_) {
            if (seed.is_zero()) continue;
            auto b = seed.bidegree();
            if (b->dim == dim && b->ycount == yc) s.insert(eng_.canon(seed, dim, yc));
        }
        const Alphabet& A = ctx->alphabet;
        for (std::uint8_t gi = 0; gi < A.size(); ++gi) {
            const Generator& g = A.gen(gi);
            const int y = g.kind == GenKind::Cell ? 1 : 0;
            const int pd = dim - g.dim, pk = yc - y;
            if (pd < 1 || pk < 0) continue;
            SlicePtr prev = slice(pd, pk);
            TensorElem<F> ge = eng_.generator_elem(gi);
            for (const auto& [w, row] : prev->row_map())
                s.insert(eng_.canon(graded_bracket(row, ge), dim, yc));
        }
        return s;
    }

    LieEngine<F>& eng_;
    std::vector<TensorElem<F>> seeds_;
    MemoCache<std::pair<int, int>, Slice<F>> cache_;
};

template <class F>
struct MinimalGenerators {
    GradedDims dims;
    // Representatives per dimension, canonical modulo [J,J] and the
    // relation ideal.
    std::map<int, std::vector<TensorElem<F>>> reps;
};

// W = J/[J,J] in degree 0: per dimension, the quotient of J_n by the span
// of brackets of lower-dimensional J elements. For a free ideal these are
// exactly the free Lie generators.
template <class F>
MinimalGenerators<F> minimal_generators(QuotientIdeal<F>& J, int N) {
    LieEngine<F>& eng = J.engine();
    MinimalGenerators<F> out;
    for (int n = 1; n <= N; ++n) {
        auto jn = J.slice(n, 0);
        if (jn->rank() == 0) continue;
        Slice<F> bracket_span(eng.ctx(), SliceConstraint{n, 0});
        for (int a = 1; 2 * a <= n; ++a) {
            const int b = n - a;
            auto ja = J.slice(a, 0);
            auto jb = J.slice(b, 0);
            if (ja->rank() == 0 || jb->rank() == 0) continue;
            std::size_t ia = 0;
            for (const auto& [wa, ra] : ja->row_map()) {
                std::size_t ib = 0;
                for (const auto& [wb, rb] : jb->row_map()) {
                    if (a == b && ib < ia) { ++ib; continue; }
                    bracket_span.insert(eng.canon(graded_bracket(ra, rb), n, 0));
                    ++ib;
                }
                ++ia;
            }
        }
        const long long w =
            static_cast<long long>(jn->rank()) - static_cast<long long>(bracket_span.rank());
        if (w != 0) out.dims[n] = w;
        for (const auto& [pw, row] : jn->row_map()) {
            TensorElem<F> nf = bracket_span.reduce(row);
            if (nf.is_zero()) continue;
            if (!bracket_span.insert(nf)) out.reps[n].push_back(std::move(nf));
        }
    }
    return out;
}

struct FreenessVerdict {
    bool consistent = true;
    int cutoff = 0;
    std::optional<int> first_failure;

    std::string str() const {
        if (consistent) return "consistent-with-free <= " + std::to_string(cutoff);
        return "not free at dim " + std::to_string(*first_failure) + " (checked <= " +
               std::to_string(cutoff) + ")";
    }
};

// J is free on W iff dim J_n equals the free graded Lie algebra dims on W
// in every degree; the latter come from Witt inversion of the tensor
// series 1/(1 - W(z)).
inline FreenessVerdict lie_freeness_check(const GradedDims& j_dims, const GradedDims& w_dims,
                                          int N) {
    FreenessVerdict v;
    v.cutoff = N;
    TruncSeries tw = (TruncSeries::one(N) - TruncSeries::from_dims(w_dims, N)).inverse();
    GradedDims expected = witt_inverse(tw);
    for (int n = 1; n <= N; ++n) {
        const long long actual = j_dims.count(n) ? j_dims.at(n) : 0;
        const long long expect = expected.count(n) ? expected.at(n) : 0;
        if (actual != expect) {
            v.consistent = false;
            v.first_failure = n;
            return v;
        }
    }
    return v;
}

// Slices of a two-sided ideal of the tensor algebra restricted to Cell-free
// words, closed by one-sided products with space generators.
template <class F>
class TensorIdeal {
public:
    using SlicePtr = std::shared_ptr<const Slice<F>>;

    TensorIdeal(LieEngine<F>& eng, std::vector<TensorElem<F>> seeds)
        : eng_(eng), seeds_(std::move(seeds)) {}

    SlicePtr slice(int dim) {
        return cache_.get({dim, 0}, [&] { return build(dim); });
    }

    long long dim_at(int dim) { return static_cast<long long>(slice(dim)->rank()); }

private:
    Slice<F> build(int dim) {
        const AlgebraPtr<F>& ctx = eng_.ctx();
        Slice<F> s(ctx, SliceConstraint{dim, 0});
        for (const TensorElem<F>& seed : seeds_) {
            if (seed.is_zero()) continue;
            auto b = seed.bidegree();
            if (!b || b->ycount != 0)
                throw std::invalid_argument("tensor ideal seeds must be Cell-free and homogeneous");
            if (b->dim == dim) s.insert(seed);
        }
        const Alphabet& A = ctx->alphabet;
        for (std::uint8_t gi = 0; gi < A.size(); ++gi) {
            const Generator& g = A.gen(gi);
            if (g.kind == GenKind::Cell) continue;
            const int pd = dim - g.dim;
            if (pd < 1) continue;
            SlicePtr prev = slice(pd);
            TensorElem<F> ge = eng_.generator_elem(gi);
            for (const auto& [w, row] : prev->row_map()) {
                s.insert(concat_product(ge, row));
                s.insert(concat_product(row, ge));
            }
        }
        return s;
    }

    LieEngine<F>& eng_;
    std::vector<TensorElem<F>> seeds_;
    MemoCache<std::pair<int, int>, Slice<F>> cache_;
};

struct EnvelopingCheck {
    bool holds = true;
    int cutoff = 0;
    std::optional<int> first_failure;
    TruncSeries ideal_series;
    TruncSeries env_series;

    std::string str() const {
        if (holds) return "I(z) = UL0(z) W(z) holds <= " + std::to_string(cutoff);
        return "I(z) = UL0(z) W(z) fails at dim " + std::to_string(*first_failure) +
               " (checked <= " + std::to_string(cutoff) + ")";
    }
};

// Verifies I(z) = UL0(z) W(z) through N, where I is the two-sided ideal of
// the seeds inside UL0 = T(space)/(relations) and W the minimal generator
// dims of the Lie ideal of the seeds.
template <class F>
EnvelopingCheck enveloping_ideal_check(LieEngine<F>& eng,
                                       const std::vector<TensorElem<F>>& seeds,
                                       const GradedDims& w_dims, int N) {
    TensorIdeal<F> rel_only(eng, eng.relations());
    std::vector<TensorElem<F>> both = eng.relations();
    both.insert(both.end(), seeds.begin(), seeds.end());
    TensorIdeal<F> full(eng, std::move(both));

    EnvelopingCheck out;
    out.cutoff = N;
    std::vector<long long> icoef(static_cast<std::size_t>(N) + 1, 0);
    std::vector<long long> ucoef(static_cast<std::size_t>(N) + 1, 0);
    ucoef[0] = 1;
    for (int n = 1; n <= N; ++n) {
        const long long r = rel_only.dim_at(n);
        icoef[n] = full.dim_at(n) - r;
        ucoef[n] = eng.word_count(n, 0) - r;
    }
    out.ideal_series = TruncSeries(std::move(icoef));
    out.env_series = TruncSeries(std::move(ucoef));
    TruncSeries expected = out.env_series * TruncSeries::from_dims(w_dims, N);
    for (int n = 1; n <= N; ++n) {
        if (out.ideal_series.coeff(n) != expected.coeff(n)) {
            out.holds = false;
            out.first_failure = n;
            return out;
        }
    }
    return out;
}

}  // namespace loopalg

#endif  // LOOPALG_LIE_HPP
