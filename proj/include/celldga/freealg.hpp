#pragma once

// Free unital associative algebra over Z/2 and matrices over it.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace celldga {

// Interned generator name. Interning is process-wide and thread-safe.
struct Sym {
    std::uint32_t id = 0;
    auto operator<=>(const Sym&) const = default;
};

struct SymHash {
    std::size_t operator()(Sym s) const noexcept { return std::hash<std::uint32_t>{}(s.id); }
};

Sym intern(std::string_view name);
const std::string& name_of(Sym s);

template <class T>
using SymMap = std::unordered_map<Sym, T, SymHash>;

using Word = std::vector<Sym>;

// Limit on the number of terms any single polynomial may hold.
void set_term_limit(std::size_t limit);
std::size_t term_limit();

class Polynomial {
public:
    Polynomial() = default;

    static Polynomial zero() { return {}; }
    static Polynomial one();
    static Polynomial gen(Sym s);
    static Polynomial gen(std::string_view name) { return gen(intern(name)); }
    static Polynomial from_words(std::vector<Word> words);

    const std::vector<Word>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const { return terms_.size() == 1 && terms_[0].empty(); }
    bool has_unit() const;
    bool mentions(Sym s) const;
    // True when the polynomial is exactly one generator of length one.
    bool is_single_generator() const { return terms_.size() == 1 && terms_[0].size() == 1; }
    bool contains_word(const Word& w) const;

    Polynomial& operator+=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial&, const Polynomial&) = default;

    // Canonical text: terms sorted by generator names, " + " and "·" separators.
    std::string to_string() const;

private:
    void normalize();
    std::vector<Word> terms_;  // sorted, no duplicates
};

// Inverse of Polynomial::to_string.
Polynomial parse_polynomial(std::string_view text);

using GenLookup = std::function<const Polynomial*(Sym)>;

// Leibniz extension of d to p. Throws UnknownGenerator for symbols without an image.
Polynomial derive(const GenLookup& d, const Polynomial& p);
Polynomial derive(const SymMap<Polynomial>& d, const Polynomial& p);

// Unital algebra homomorphism extending h, applied to p.
Polynomial substitute(const GenLookup& h, const Polynomial& p);
Polynomial substitute(const SymMap<Polynomial>& h, const Polynomial& p);
// As above, but generators without an image are fixed.
Polynomial substitute_partial(const SymMap<Polynomial>& h, const Polynomial& p);

struct Grading {
    long long m = 0;  // 0 means integer grading
    SymMap<long long> deg;
};

long long reduce_degree(long long d, long long m);
long long word_degree(const Word& w, const Grading& g);

class GenMatrix {
public:
    GenMatrix() = default;
    explicit GenMatrix(std::size_t n) : n_(n), e_(n * n) {}

    static GenMatrix identity(std::size_t n);
    // 1-based elementary matrix E_{i,j}.
    static GenMatrix elementary(std::size_t n, std::size_t i, std::size_t j);

    std::size_t n() const { return n_; }
    // 0-based access.
    Polynomial& at(std::size_t i, std::size_t j) { return e_[i * n_ + j]; }
    const Polynomial& at(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }

    bool is_strictly_upper() const;
    bool is_zero() const;

    GenMatrix& operator+=(const GenMatrix& o);
    friend GenMatrix operator+(GenMatrix a, const GenMatrix& b) { return a += b; }
    friend GenMatrix operator*(const GenMatrix& a, const GenMatrix& b);
    friend bool operator==(const GenMatrix&, const GenMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Polynomial> e_;
};

enum class MatOp { Add, Mul };
GenMatrix mat_op(const GenMatrix& a, const GenMatrix& b, MatOp op);

// I + M
GenMatrix unipotent(const GenMatrix& m);

}  // namespace celldga
