#ifndef LOOPALG_DGL_HPP
#define LOOPALG_DGL_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "loopalg/bracket_parse.hpp"
#include "loopalg/lie.hpp"

namespace loopalg {

struct GenSpec {
    std::string name;
    int dim = 0;
    bool operator==(const GenSpec&) const = default;
};

struct CellSpec {
    std::string name;
    int cell_dim = 0;       // dimension of the attached cell e^{cell_dim}
    std::string attach;     // bracket expression over space generators
    bool operator==(const CellSpec&) const = default;
};

struct PresentationSpec {
    std::vector<GenSpec> generators;
    std::vector<std::string> relations;
    bool operator==(const PresentationSpec&) const = default;
};

struct StageSpec {
    PresentationSpec space_add;     // wedged-on presentation, disjoint names
    std::vector<CellSpec> cells;
    std::vector<std::string> k_names;  // names for the K generators this stage produces
    std::optional<int> cutoff;
    bool operator==(const StageSpec&) const = default;
};

// A validated attachment problem: base presentation, cells with attaching
// expressions, coefficient choice, cutoff, and the prime samples used for
// the R-freeness surrogate when the field is Q.
struct AttachmentProblem {
    FieldSpec field = FieldSpec::rationals();
    int cutoff = 18;
    std::vector<std::uint64_t> prime_samples = {5, 7, 11};
    PresentationSpec space;
    std::vector<CellSpec> cells;
    std::vector<std::string> k_names;
    std::vector<StageSpec> stages;
};

struct BidegreeInfo {
    int dim = 0;
    int ycount = 0;
    long long words = 0;
};

// The dgl of one attachment stage: the free Lie algebra on the space and
// cell generators modulo the relation ideal, with d zero on space
// generators and d y_j = (attaching class of cell j). d has bidegree
// (-1,-1) and kills relations, so it descends to the presented algebra.
template <class F>
class DglModel {
public:
    DglModel(F field, const PresentationSpec& space, const std::vector<CellSpec>& cells,
             int cutoff)
        : cutoff_(cutoff) {
        std::vector<Generator> gens;
        for (const GenSpec& g : space.generators)
            gens.push_back(Generator{g.name, g.dim, GenKind::Space});
        for (const CellSpec& c : cells) {
            if (c.cell_dim < 3)
                throw std::invalid_argument("cell " + c.name + ": cellDim must be >= 3");
            gens.push_back(Generator{c.name, c.cell_dim - 1, GenKind::Cell});
        }
        Alphabet alphabet(std::move(gens));  // rejects duplicate names
        if (cutoff < alphabet.max_dim())
            throw std::invalid_argument("cutoff " + std::to_string(cutoff) +
                                        " < max generator dim " +
                                        std::to_string(alphabet.max_dim()));
        ctx_ = make_algebra<F>(std::move(field), std::move(alphabet));

        std::vector<TensorElem<F>> rels;
        for (const std::string& r : space.relations) {
            TensorElem<F> v = parse_bracket_expr<F>(r, ctx_);
            if (!v.is_zero() && v.bidegree()->ycount != 0)
                throw std::invalid_argument("relation must use space generators only: " + r);
            rels.push_back(std::move(v));
        }
        eng_ = std::make_unique<LieEngine<F>>(ctx_, std::move(rels));

        d_of_gen_.assign(ctx_->alphabet.size(), TensorElem<F>::zero(ctx_));
        const std::size_t nspace = space.generators.size();
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const CellSpec& c = cells[i];
            TensorElem<F> a = parse_bracket_expr<F>(c.attach, ctx_);
            if (!a.is_zero()) {
                auto b = a.bidegree();
                if (b->ycount != 0)
                    throw std::invalid_argument("cell " + c.name +
                                                ": attach must use space generators only");
                if (b->dim != c.cell_dim - 2)
                    throw std::invalid_argument(
                        "cell e^" + std::to_string(c.cell_dim) + " requires attach class of dim " +
                        std::to_string(c.cell_dim - 2) + " (got " + std::to_string(b->dim) +
                        " from \"" + c.attach + "\")");
                if (!eng_->is_lie_element(a))
                    throw std::invalid_argument("cell " + c.name +
                                                ": attach class is not a Lie element");
            }
            d_of_gen_[nspace + i] = std::move(a);
            attach_.push_back(d_of_gen_[nspace + i]);
        }
        full_ideal_ = std::make_unique<QuotientIdeal<F>>(*eng_, attach_);
    }

    const AlgebraPtr<F>& ctx() const { return ctx_; }
    LieEngine<F>& engine() const { return *eng_; }
    int cutoff() const { return cutoff_; }
    const std::vector<TensorElem<F>>& attach_classes() const { return attach_; }
    QuotientIdeal<F>& attach_ideal() const { return *full_ideal_; }

    // Graded-derivation extension of the generator table.
    TensorElem<F> differential(const TensorElem<F>& v) const {
        const F& f = ctx_->field;
        TensorElem<F> out(ctx_);
        const Alphabet& A = ctx_->alphabet;
        for (const auto& [w, c] : v.terms()) {
            int sign_dim = 0;
            for (std::uint8_t i = 0; i < w.len; ++i) {
                const std::uint8_t g = w.letters[i];
                const TensorElem<F>& dg = d_of_gen_[g];
                if (!dg.is_zero()) {
                    Word prefix, suffix;
                    prefix.len = i;
                    for (std::uint8_t j = 0; j < i; ++j) prefix.letters[j] = w.letters[j];
                    suffix.len = static_cast<std::uint8_t>(w.len - i - 1);
                    for (std::uint8_t j = i + 1; j < w.len; ++j)
                        suffix.letters[j - i - 1] = w.letters[j];
                    typename F::Elem coeff = (sign_dim % 2 == 0) ? c : f.neg(c);
                    TensorElem<F> piece =
                        concat_product(TensorElem<F>::monomial(ctx_, prefix, coeff),
                                       concat_product(dg, TensorElem<F>::monomial(
                                                              ctx_, suffix, f.one())));
                    out.axpy(f.one(), piece);
                }
                sign_dim += A.gen(g).dim;
            }
        }
        return out;
    }

    // Normal form of d(v) in the presented algebra.
    TensorElem<F> differential_canon(const TensorElem<F>& v, int dim, int yc) const {
        return eng_->canon(differential(v), dim - 1, yc - 1);
    }

    // Kernel and image of the induced d: (dim, yc) -> (dim-1, yc-1) on the
    // presented component, cached per bidegree.
    std::shared_ptr<const KernelImage<F>> d_kernel_image(int dim, int yc) const {
        return ki_.get({dim, yc}, [&] {
            GradedMap<F> m{SliceConstraint{dim, yc}, SliceConstraint{dim - 1, yc - 1},
                           [this, dim, yc](const TensorElem<F>& v) {
                               return differential_canon(v, dim, yc);
                           }};
            return kernel_and_image(m, *eng_->presented(dim, yc));
        });
    }

    // (HL)_0 = L_0 / (ideal of the attaching classes): dims by the quotient
    // route, representatives in canonical form.
    long long h0_dim(int n) const {
        if (n == 0) return 0;
        return eng_->presented_dim(n, 0) - full_ideal_->dim_at(n, 0);
    }

    GradedDims h0_dims() const {
        GradedDims d;
        for (int n = 1; n <= cutoff_; ++n) {
            long long q = h0_dim(n);
            if (q != 0) d[n] = q;
        }
        return d;
    }

    std::vector<TensorElem<F>> h0_reps(int n) const {
        std::vector<TensorElem<F>> reps;
        auto pres = eng_->presented(n, 0);
        auto ideal = full_ideal_->slice(n, 0);
        Slice<F> comp(ctx_, SliceConstraint{n, 0});
        for (const auto& [w, row] : pres->row_map()) {
            TensorElem<F> nf = ideal->reduce(row);
            if (nf.is_zero()) continue;
            if (!comp.insert(nf)) reps.push_back(std::move(nf));
        }
        return reps;
    }

    // Alternate route for (HL)_0: cokernel of d on the ycount-1 component.
    long long h0_dim_via_kernel(int n) const {
        if (n == 0) return 0;
        auto ki = d_kernel_image(n + 1, 1);
        return eng_->presented_dim(n, 0) - static_cast<long long>(ki->image.rank());
    }

    long long cycles_dim(int n, int yc) const {
        return static_cast<long long>(d_kernel_image(n, yc)->kernel.rank());
    }

    long long boundaries_dim(int n, int yc) const {
        return static_cast<long long>(d_kernel_image(n + 1, yc + 1)->image.rank());
    }

    // (HL)_1 in dimension n: cycles of the ycount-1 component modulo
    // boundaries from the ycount-2 component.
    long long h1_dim(int n) const {
        auto kz = d_kernel_image(n, 1);
        auto kb = d_kernel_image(n + 1, 2);
        return static_cast<long long>(kz->kernel.rank()) -
               static_cast<long long>(kb->image.rank());
    }

    GradedDims h1_dims() const {
        GradedDims d;
        for (int n = 1; n <= cutoff_; ++n) {
            long long q = h1_dim(n);
            if (q != 0) d[n] = q;
        }
        return d;
    }

    // Representative cycles for a basis of (HL)_1 in dimension n, canonical
    // modulo boundaries.
    std::vector<TensorElem<F>> h1_reps(int n) const {
        auto kz = d_kernel_image(n, 1);
        auto kb = d_kernel_image(n + 1, 2);
        QuotientResult<F> q = quotient_dim(kz->kernel, kb->image, /*verify=*/false);
        return std::move(q.reps);
    }

    // Class of v in (HL)_1: reduce modulo the relation ideal and then the
    // boundary slice. Zero means v is a boundary.
    TensorElem<F> h1_class(const TensorElem<F>& v, int n) const {
        TensorElem<F> c = eng_->canon(v, n, 1);
        auto kb = d_kernel_image(n + 1, 2);
        return kb->image.reduce(c);
    }

    bool is_cycle(const TensorElem<F>& v) const {
        if (v.is_zero()) return true;
        auto b = v.bidegree();
        if (!b) return false;
        return eng_->canon(differential(v), b->dim - 1, b->ycount - 1).is_zero();
    }

    // Adjoint action of a degree-0 class on a degree-1 class, returned as a
    // canonical degree-1 class representative.
    TensorElem<F> adjoint_action(const TensorElem<F>& h0rep, const TensorElem<F>& h1rep) const {
        if (h0rep.is_zero() || h1rep.is_zero()) return TensorElem<F>::zero(ctx_);
        auto b0 = h0rep.bidegree(), b1 = h1rep.bidegree();
        if (!b0 || b0->ycount != 0 || !is_cycle(h0rep))
            throw std::invalid_argument("adjoint action: representative not a cycle in degree 0");
        if (!b1 || b1->ycount != 1 || !is_cycle(h1rep))
            throw std::invalid_argument("adjoint action: representative not a cycle in degree 1");
        const int n = b0->dim + b1->dim;
        return h1_class(graded_bracket(h1rep, h0rep), n);
    }

    std::vector<BidegreeInfo> reachable_bidegrees() const {
        std::vector<BidegreeInfo> out;
        for (int n = 1; n <= cutoff_; ++n) {
            for (int k = 0; k <= eng_->max_ycount(n); ++k) {
                long long w = eng_->word_count(n, k);
                if (w > 0) out.push_back(BidegreeInfo{n, k, w});
            }
        }
        return out;
    }

private:
    AlgebraPtr<F> ctx_;
    std::unique_ptr<LieEngine<F>> eng_;
    std::vector<TensorElem<F>> d_of_gen_;
    std::vector<TensorElem<F>> attach_;
    std::unique_ptr<QuotientIdeal<F>> full_ideal_;
    int cutoff_ = 0;
    mutable MemoCache<std::pair<int, int>, KernelImage<F>> ki_;
};

// Builds the validated model for the single-stage part of a problem.
template <class F>
DglModel<F> build_model(const AttachmentProblem& p, F field) {
    return DglModel<F>(std::move(field), p.space, p.cells, p.cutoff);
}

}  // namespace loopalg

#endif  // LOOPALG_DGL_HPP
