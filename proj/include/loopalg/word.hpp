#ifndef LOOPALG_WORD_HPP
#define LOOPALG_WORD_HPP

#include <array>
#include <cstdint>
#include <cstring>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace loopalg {

enum class GenKind { Space, Cell };

// A graded generator. Space generators carry loop-homology classes of the
// base; Cell generators are the classes added by cell attachment, with
// dim = (attached cell dimension) - 1.
struct Generator {
    std::string name;
    int dim = 0;
    GenKind kind = GenKind::Space;

    bool operator==(const Generator&) const = default;
};

class Alphabet {
public:
    Alphabet() = default;

    explicit Alphabet(std::vector<Generator> gens) : gens_(std::move(gens)) {
        if (gens_.size() > 255) throw std::invalid_argument("alphabet limited to 255 generators");
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            const Generator& g = gens_[i];
            if (g.dim < 1) throw std::invalid_argument("generator " + g.name + " must have dim >= 1");
            if (!index_.emplace(g.name, static_cast<std::uint8_t>(i)).second)
                throw std::invalid_argument("duplicate generator name: " + g.name);
        }
    }

    std::size_t size() const { return gens_.size(); }
    const Generator& gen(std::size_t i) const { return gens_.at(i); }
    const std::vector<Generator>& gens() const { return gens_; }

    bool has(const std::string& name) const { return index_.count(name) != 0; }
    std::uint8_t index_of(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw std::invalid_argument("unknown generator: " + name);
        return it->second;
    }

    int max_dim() const {
        int m = 0;
        for (const Generator& g : gens_) m = std::max(m, g.dim);
        return m;
    }
    int min_dim() const {
        int m = 0;
        for (const Generator& g : gens_) m = (m == 0) ? g.dim : std::min(m, g.dim);
        return m;
    }

    bool operator==(const Alphabet&) const = default;

private:
    std::vector<Generator> gens_;
    std::map<std::string, std::uint8_t> index_;
};

// A word in the tensor algebra: a short sequence of generator indices,
// stored inline. dim is the sum of generator dims, ycount the number of
// Cell letters.
struct Word {
    static constexpr std::size_t kMaxLen = 31;

    std::uint8_t len = 0;
    std::array<std::uint8_t, kMaxLen> letters{};

    static Word empty() { return Word{}; }

    static Word single(std::uint8_t g) {
        Word w;
        w.len = 1;
        w.letters[0] = g;
        return w;
    }

    static Word concat(const Word& a, const Word& b) {
        if (a.len + b.len > kMaxLen)
            throw std::length_error("word length limit exceeded (31 letters)");
        Word w;
        w.len = static_cast<std::uint8_t>(a.len + b.len);
        std::memcpy(w.letters.data(), a.letters.data(), a.len);
        std::memcpy(w.letters.data() + a.len, b.letters.data(), b.len);
        return w;
    }

    int dim(const Alphabet& A) const {
        int d = 0;
        for (std::uint8_t i = 0; i < len; ++i) d += A.gen(letters[i]).dim;
        return d;
    }

    int ycount(const Alphabet& A) const {
        int c = 0;
        for (std::uint8_t i = 0; i < len; ++i)
            if (A.gen(letters[i]).kind == GenKind::Cell) ++c;
        return c;
    }

    std::string str(const Alphabet& A) const {
        if (len == 0) return "1";
        std::string s;
        for (std::uint8_t i = 0; i < len; ++i) {
            if (i) s += '.';
            s += A.gen(letters[i]).name;
        }
        return s;
    }

    // Lexicographic by generator index, shorter prefix first.
    friend int compare(const Word& a, const Word& b) {
        const std::uint8_t n = std::min(a.len, b.len);
        int c = std::memcmp(a.letters.data(), b.letters.data(), n);
        if (c != 0) return c;
        return (a.len < b.len) ? -1 : (a.len > b.len ? 1 : 0);
    }
    friend bool operator<(const Word& a, const Word& b) { return compare(a, b) < 0; }
    friend bool operator>(const Word& a, const Word& b) { return compare(a, b) > 0; }
    friend bool operator==(const Word& a, const Word& b) {
        return a.len == b.len && std::memcmp(a.letters.data(), b.letters.data(), a.len) == 0;
    }
};

struct WordHash {
    std::size_t operator()(const Word& w) const {
        std::size_t h = 1469598103934665603ull;
        h = (h ^ w.len) * 1099511628211ull;
        for (std::uint8_t i = 0; i < w.len; ++i) h = (h ^ w.letters[i]) * 1099511628211ull;
        return h;
    }
};

}  // namespace loopalg

#endif  // LOOPALG_WORD_HPP
