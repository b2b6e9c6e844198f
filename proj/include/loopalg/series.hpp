#ifndef LOOPALG_SERIES_HPP
#define LOOPALG_SERIES_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace loopalg {

// Graded dimensions keyed by dimension; entries are >= 1 generators only.
using GradedDims = std::map<int, long long>;

inline long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("series coefficient overflow");
    return r;
}
inline long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("series coefficient overflow");
    return r;
}

// Integer power series truncated at order N: coefficients c_0..c_N, exact.
class TruncSeries {
public:
    TruncSeries() : c_(1, 0) {}
    explicit TruncSeries(int order) : c_(static_cast<std::size_t>(order) + 1, 0) {
        if (order < 0) throw std::invalid_argument("negative truncation order");
    }
    explicit TruncSeries(std::vector<long long> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) c_.assign(1, 0);
    }

    static TruncSeries one(int order) {
        TruncSeries s(order);
        s.c_[0] = 1;
        return s;
    }
    static TruncSeries monomial(int n, long long coeff, int order) {
        TruncSeries s(order);
        if (n <= order) s.c_[static_cast<std::size_t>(n)] = coeff;
        return s;
    }
    static TruncSeries from_dims(const GradedDims& dims, int order) {
        TruncSeries s(order);
        for (const auto& [n, d] : dims)
            if (n >= 0 && n <= order) s.c_[static_cast<std::size_t>(n)] = d;
        return s;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    long long coeff(int n) const {
        if (n < 0 || n > order()) throw std::out_of_range("series coefficient out of range");
        return c_[static_cast<std::size_t>(n)];
    }
    const std::vector<long long>& coeffs() const { return c_; }

    TruncSeries truncated(int order) const {
        TruncSeries s(order);
        for (int n = 0; n <= order && n <= this->order(); ++n) s.c_[n] = c_[n];
        return s;
    }

    GradedDims dims() const {
        GradedDims d;
        for (int n = 1; n <= order(); ++n)
            if (c_[n] != 0) d[n] = c_[n];
        return d;
    }

    // Arithmetic carries the min of the operand orders.
    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
        TruncSeries r(std::min(a.order(), b.order()));
        for (int n = 0; n <= r.order(); ++n) r.c_[n] = checked_add(a.c_[n], b.c_[n]);
        return r;
    }
    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
        TruncSeries r(std::min(a.order(), b.order()));
        for (int n = 0; n <= r.order(); ++n) r.c_[n] = checked_add(a.c_[n], -b.c_[n]);
        return r;
    }
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
        TruncSeries r(std::min(a.order(), b.order()));
        for (int i = 0; i <= r.order(); ++i) {
            if (a.c_[i] == 0) continue;
            for (int j = 0; i + j <= r.order(); ++j) {
                if (b.c_[j] == 0) continue;
                r.c_[i + j] = checked_add(r.c_[i + j], checked_mul(a.c_[i], b.c_[j]));
            }
        }
        return r;
    }

    TruncSeries inverse() const {
        if (c_[0] != 1) throw std::domain_error("series inverse requires constant term 1");
        TruncSeries r(order());
        r.c_[0] = 1;
        for (int n = 1; n <= order(); ++n) {
            long long acc = 0;
            for (int k = 1; k <= n; ++k) acc = checked_add(acc, checked_mul(c_[k], r.c_[n - k]));
            r.c_[n] = -acc;
        }
        return r;
    }

    bool operator==(const TruncSeries& b) const { return c_ == b.c_; }

    // "1 + 2 z^2 + 4 z^4 (O(z^{N+1}))"
    std::string str() const {
        std::string s;
        for (int n = 0; n <= order(); ++n) {
            long long v = c_[n];
            if (v == 0) continue;
            if (s.empty()) {
                if (v < 0) s += "-";
            } else {
                s += v < 0 ? " - " : " + ";
            }
            long long a = v < 0 ? -v : v;
            if (n == 0) {
                s += std::to_string(a);
            } else {
                if (a != 1) s += std::to_string(a) + " ";
                s += "z^" + std::to_string(n);
            }
        }
        if (s.empty()) s = "0";
        return s + " (O(z^" + std::to_string(order() + 1) + "))";
    }

private:
    std::vector<long long> c_;
};

namespace detail {
// C(n, k) with overflow checking; exact integer division at each step.
inline long long binomial(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    long long r = 1;
    for (long long i = 1; i <= k; ++i) {
        r = checked_mul(r, n - k + i);
        r /= i;
    }
    return r;
}
}  // namespace detail

// Hilbert series of the enveloping algebra of a graded Lie algebra with the
// given dimensions: exterior factors (1+z^n) for odd n, polynomial factors
// 1/(1-z^n) for even n.
inline TruncSeries pbw_series(const GradedDims& lie_dims, int order) {
    for (const auto& [n, d] : lie_dims) {
        if (n < 1) throw std::invalid_argument("pbw_series needs dims in degrees >= 1");
        if (d < 0) throw std::invalid_argument("pbw_series: negative dimension at " + std::to_string(n));
    }
    TruncSeries out = TruncSeries::one(order);
    for (const auto& [n, d] : lie_dims) {
        if (n > order || d == 0) continue;
        std::vector<long long> fc(static_cast<std::size_t>(order) + 1, 0);
        const int kmax = order / n;
        for (int k = 0; k <= kmax; ++k) {
            fc[static_cast<std::size_t>(n) * k] =
                (n % 2 != 0) ? detail::binomial(d, k)           // (1+z^n)^d
                             : detail::binomial(d + k - 1, k);  // (1-z^n)^{-d}
        }
        out = out * TruncSeries(std::move(fc));
    }
    return out;
}

// Unique graded dims l with pbw_series(l) = env through the order, solved
// degree by degree. A negative forced dimension means env is not the
// enveloping series of any graded Lie algebra.
inline GradedDims witt_inverse(const TruncSeries& env) {
    const int N = env.order();
    if (env.coeff(0) != 1)
        throw std::domain_error("witt_inverse requires constant term 1");
    GradedDims l;
    TruncSeries partial = TruncSeries::one(N);
    for (int n = 1; n <= N; ++n) {
        TruncSeries q = env * partial.inverse();
        long long ln = q.coeff(n);
        if (ln < 0)
            throw std::domain_error("not an enveloping series of a graded Lie algebra (through " +
                                    std::to_string(N) + "): negative dimension at " +
                                    std::to_string(n));
        if (ln > 0) {
            l[n] = ln;
            partial = partial * pbw_series(GradedDims{{n, ln}}, N);
        }
    }
    return l;
}

// U(A ⨿ B)^{-1} = UA^{-1} + UB^{-1} - 1.
inline TruncSeries free_product_series(const TruncSeries& uA, const TruncSeries& uB) {
    const int N = std::min(uA.order(), uB.order());
    TruncSeries sum = uA.inverse().truncated(N) + uB.inverse().truncated(N) - TruncSeries::one(N);
    return sum.inverse();
}

// Anick's Hilbert series formula for the homology of the extended dga:
//   H(z)^{-1} = (1+z) b0(z)^{-1} - z uL0(z)^{-1} - V1(z).
inline TruncSeries anick_series(const TruncSeries& uL0, const TruncSeries& b0,
                                const TruncSeries& v1) {
    const int N = std::min({uL0.order(), b0.order(), v1.order()});
    if (v1.coeff(0) != 0) throw std::domain_error("anick_series: V1 must have zero constant term");
    TruncSeries z1 = TruncSeries::one(N) + TruncSeries::monomial(1, 1, N);  // 1 + z
    TruncSeries z = TruncSeries::monomial(1, 1, N);
    TruncSeries inv = z1 * b0.inverse().truncated(N) - z * uL0.inverse().truncated(N) -
                      v1.truncated(N);
    if (inv.coeff(0) != 1)
        throw std::domain_error("anick_series: resulting inverse is undefined");
    return inv.inverse();
}

}  // namespace loopalg

#endif  // LOOPALG_SERIES_HPP
