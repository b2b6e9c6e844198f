#ifndef LOOPALG_ORACLE_HPP
#define LOOPALG_ORACLE_HPP

#include <map>
#include <optional>
#include <vector>

#include "loopalg/series.hpp"
#include "loopalg/tensor.hpp"

// Brute-force recomputation of free-Lie and ideal dimensions by exhaustive
// spanning, kept deliberately independent of the slice engine: its own
// element representation (plain ordered maps), its own bracket expansion,
// dense Gaussian elimination with first-column pivoting, and a
// repeat-until-stable closure sweep instead of the engine's single
// ascending pass.

namespace loopalg::oracle {

template <class F>
using MapElem = std::map<Word, typename F::Elem>;

template <class F>
void map_add(const F& f, MapElem<F>& a, const Word& w, const typename F::Elem& c) {
    auto [it, fresh] = a.emplace(w, c);
    if (!fresh) {
        it->second = f.add(it->second, c);
        if (f.is_zero(it->second)) a.erase(it);
    }
}

template <class F>
MapElem<F> map_concat(const F& f, const MapElem<F>& a, const MapElem<F>& b) {
    MapElem<F> out;
    for (const auto& [wa, ca] : a)
        for (const auto& [wb, cb] : b) map_add(f, out, Word::concat(wa, wb), f.mul(ca, cb));
    return out;
}

template <class M>
int map_dim(const Alphabet& A, const M& a) {
    return a.empty() ? 0 : a.begin()->first.dim(A);
}

template <class F>
MapElem<F> map_bracket(const F& f, const Alphabet& A, const MapElem<F>& a, const MapElem<F>& b) {
    if (a.empty() || b.empty()) return {};
    MapElem<F> out = map_concat(f, a, b);
    const bool both_odd = map_dim(A, a) % 2 != 0 && map_dim(A, b) % 2 != 0;
    for (const auto& [w, c] : map_concat(f, b, a))
        map_add(f, out, w, both_odd ? c : f.neg(c));
    return out;
}

// All words of total dimension n (with exactly yc Cell letters when given),
// in lexicographic order.
inline void enumerate_words_rec(const Alphabet& A, int dim_left, std::optional<int> yc_left,
                                Word& cur, std::vector<Word>& out) {
    if (dim_left == 0) {
        if (!yc_left || *yc_left == 0) out.push_back(cur);
        return;
    }
    if (cur.len == Word::kMaxLen) return;
    for (std::uint8_t g = 0; g < A.size(); ++g) {
        const Generator& gen = A.gen(g);
        if (gen.dim > dim_left) continue;
        const int y = gen.kind == GenKind::Cell ? 1 : 0;
        if (yc_left && y > *yc_left) continue;
        cur.letters[cur.len++] = g;
        enumerate_words_rec(A, dim_left - gen.dim, yc_left ? std::optional<int>(*yc_left - y) : std::nullopt,
                            cur, out);
        --cur.len;
    }
}

inline std::vector<Word> enumerate_words(const Alphabet& A, int dim, std::optional<int> yc = {}) {
    std::vector<Word> out;
    Word cur;
    enumerate_words_rec(A, dim, yc, cur, out);
    return out;
}

// Dense row space with forward elimination; pivot is the first nonzero
// column.
template <class F>
class DenseSpan {
public:
    explicit DenseSpan(const F& f, std::size_t width) : f_(f), width_(width) {}

    bool insert(std::vector<typename F::Elem> v) {
        for (const auto& [pivot, row] : rows_) {
            if (!f_.is_zero(v[pivot])) {
                typename F::Elem c = f_.neg(v[pivot]);
                for (std::size_t i = pivot; i < width_; ++i)
                    f_.addmul(v[i], c, row[i]);
            }
        }
        std::size_t pivot = width_;
        for (std::size_t i = 0; i < width_; ++i)
            if (!f_.is_zero(v[i])) { pivot = i; break; }
        if (pivot == width_) return false;
        typename F::Elem s = f_.inv(v[pivot]);
        for (std::size_t i = pivot; i < width_; ++i) v[i] = f_.mul(v[i], s);
        rows_.emplace(pivot, std::move(v));
        return true;
    }

    std::size_t rank() const { return rows_.size(); }

private:
    const F& f_;
    std::size_t width_;
    std::map<std::size_t, std::vector<typename F::Elem>> rows_;
};

template <class F>
std::vector<typename F::Elem> to_dense(const F& f, const MapElem<F>& v,
                                       const std::map<Word, std::size_t>& index) {
    std::vector<typename F::Elem> out(index.size(), f.zero());
    for (const auto& [w, c] : v) out[index.at(w)] = c;
    return out;
}

// Expansion of the left-normed bracket of a generator sequence.
template <class F>
MapElem<F> left_normed(const F& f, const Alphabet& A, const std::vector<std::uint8_t>& seq) {
    MapElem<F> acc;
    acc.emplace(Word::single(seq.at(0)), f.one());
    for (std::size_t i = 1; i < seq.size(); ++i) {
        MapElem<F> g;
        g.emplace(Word::single(seq[i]), f.one());
        acc = map_bracket(f, A, acc, g);
    }
    return acc;
}

// Ranks of the spans of all left-normed brackets, dimension by dimension.
template <class F>
GradedDims free_lie_dims(const F& f, const Alphabet& A, int N) {
    GradedDims out;
    for (int n = 1; n <= N; ++n) {
        std::vector<Word> words = enumerate_words(A, n);
        if (words.empty()) continue;
        std::map<Word, std::size_t> index;
        for (std::size_t i = 0; i < words.size(); ++i) index.emplace(words[i], i);
        DenseSpan<F> span(f, words.size());
        // Every sequence of generators of total dimension n, bracketed
        // left-normed; the word list doubles as the sequence list.
        for (const Word& w : words) {
            std::vector<std::uint8_t> seq(w.letters.begin(), w.letters.begin() + w.len);
            span.insert(to_dense(f, left_normed(f, A, seq), index));
        }
        if (span.rank() != 0) out[n] = static_cast<long long>(span.rank());
    }
    return out;
}

template <class F>
MapElem<F> from_tensor(const TensorElem<F>& v) {
    MapElem<F> out;
    for (const auto& [w, c] : v.terms()) out.emplace(w, c);
    return out;
}

// Dimensions of the Lie ideal generated by the seeds: sweep every basis
// vector against every generator until a full pass adds no rank anywhere.
template <class F>
GradedDims ideal_dims(const F& f, const Alphabet& A, const std::vector<TensorElem<F>>& seeds,
                      int N) {
    std::map<int, std::vector<Word>> words;
    std::map<int, std::map<Word, std::size_t>> index;
    std::map<int, DenseSpan<F>> spans;
    std::map<int, std::vector<MapElem<F>>> basis;
    for (int n = 1; n <= N; ++n) {
        words[n] = enumerate_words(A, n);
        for (std::size_t i = 0; i < words[n].size(); ++i) index[n].emplace(words[n][i], i);
        spans.emplace(n, DenseSpan<F>(f, words[n].size()));
    }
    auto add = [&](const MapElem<F>& v) {
        if (v.empty()) return false;
        const int n = map_dim(A, v);
        if (n > N) return false;
        if (!spans.at(n).insert(to_dense(f, v, index.at(n)))) return false;
        basis[n].push_back(v);
        return true;
    };
    for (const TensorElem<F>& s : seeds) add(from_tensor(s));
    bool changed = true;
    while (changed) {
        changed = false;
        for (int n = 1; n <= N; ++n) {
            if (!basis.count(n)) continue;
            // Index loop: the sweep may grow the basis it iterates.
            for (std::size_t i = 0; i < basis[n].size(); ++i) {
                for (std::uint8_t g = 0; g < A.size(); ++g) {
                    MapElem<F> ge;
                    ge.emplace(Word::single(g), f.one());
                    MapElem<F> v = map_bracket(f, A, basis[n][i], ge);
                    if (add(v)) changed = true;
                }
            }
        }
    }
    GradedDims out;
    for (int n = 1; n <= N; ++n)
        if (spans.at(n).rank() != 0) out[n] = static_cast<long long>(spans.at(n).rank());
    return out;
}

}  // namespace loopalg::oracle

#endif  // LOOPALG_ORACLE_HPP
