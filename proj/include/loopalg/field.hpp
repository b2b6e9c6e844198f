#ifndef LOOPALG_FIELD_HPP
#define LOOPALG_FIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace loopalg {

// Coefficients live in Q (arbitrary precision) or in F_p with p > 3.
// p = 2 and p = 3 are rejected: the sign conventions and the PBW-style
// dimension bookkeeping used throughout assume they are invertible.

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

struct FieldSpec {
    // p == 0 means the rationals.
    std::uint64_t p = 0;

    bool is_rational() const { return p == 0; }

    static FieldSpec rationals() { return FieldSpec{0}; }

    static FieldSpec prime_field(std::uint64_t p) {
        if (p == 2 || p == 3 || !is_prime_u64(p))
            throw std::invalid_argument("unsupported characteristic: " + std::to_string(p));
        if (p >= (std::uint64_t(1) << 31))
            throw std::invalid_argument("prime too large: " + std::to_string(p));
        return FieldSpec{p};
    }

    // "Q" or "Fp:<p>"
    static FieldSpec parse(const std::string& s) {
        if (s == "Q") return rationals();
        if (s.rfind("Fp:", 0) == 0) {
            const std::string tail = s.substr(3);
            if (tail.empty() || tail.find_first_not_of("0123456789") != std::string::npos)
                throw std::invalid_argument("bad field spec: " + s);
            return prime_field(std::stoull(tail));
        }
        throw std::invalid_argument("bad field spec: " + s + " (expected \"Q\" or \"Fp:<p>\")");
    }

    std::string str() const { return is_rational() ? "Q" : "Fp:" + std::to_string(p); }

    bool operator==(const FieldSpec&) const = default;
};

// Arbitrary-precision rationals. mpq_class keeps values canonical:
// gcd(|num|, den) = 1 and den > 0 after every operation.
class RationalField {
public:
    using Elem = mpq_class;

    explicit RationalField(FieldSpec spec = FieldSpec::rationals()) {
        if (!spec.is_rational()) throw std::invalid_argument("RationalField needs spec Q");
    }

    FieldSpec spec() const { return FieldSpec::rationals(); }

    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }
    Elem from_int(long n) const { return Elem(n); }
    Elem from_fraction(long num, long den) const {
        if (den == 0) throw std::domain_error("division by zero");
        Elem r(num, den);
        r.canonicalize();
        return r;
    }

    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem inv(const Elem& a) const {
        if (a == 0) throw std::domain_error("division by zero");
        return 1 / a;
    }
    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

    // a += c * b, the echelon inner loop.
    void addmul(Elem& a, const Elem& c, const Elem& b) const { a += c * b; }

    bool is_zero(const Elem& a) const { return a == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }

    std::string str(const Elem& a) const { return a.get_str(); }
};

// F_p with p prime, p > 3. Residues are kept canonical in [0, p).
class PrimeField {
public:
    using Elem = std::uint64_t;

    explicit PrimeField(FieldSpec spec) : p_(FieldSpec::prime_field(spec.p).p) {}
    explicit PrimeField(std::uint64_t p) : p_(FieldSpec::prime_field(p).p) {}

    FieldSpec spec() const { return FieldSpec{p_}; }
    std::uint64_t modulus() const { return p_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_int(long n) const {
        long r = n % static_cast<long>(p_);
        if (r < 0) r += static_cast<long>(p_);
        return static_cast<Elem>(r);
    }
    Elem from_fraction(long num, long den) const { return div(from_int(num), from_int(den)); }

    Elem add(Elem a, Elem b) const {
        Elem s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
    Elem mul(Elem a, Elem b) const { return (a * b) % p_; }
    Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
    Elem inv(Elem a) const {
        if (a == 0) throw std::domain_error("division by zero");
        // Extended Euclid; p is prime so any nonzero residue is a unit.
        std::int64_t t = 0, newt = 1;
        std::int64_t r = static_cast<std::int64_t>(p_), newr = static_cast<std::int64_t>(a);
        while (newr != 0) {
            std::int64_t q = r / newr;
            t -= q * newt; std::swap(t, newt);
            r -= q * newr; std::swap(r, newr);
        }
        if (t < 0) t += static_cast<std::int64_t>(p_);
        return static_cast<Elem>(t);
    }
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    void addmul(Elem& a, Elem c, Elem b) const { a = (a + c * b) % p_; }

    bool is_zero(Elem a) const { return a == 0; }
    bool eq(Elem a, Elem b) const { return a == b; }

    std::string str(Elem a) const { return std::to_string(a); }

private:
    std::uint64_t p_;
};

}  // namespace loopalg

#endif  // LOOPALG_FIELD_HPP
