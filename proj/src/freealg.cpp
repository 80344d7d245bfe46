#include "celldga/freealg.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <mutex>
#include <shared_mutex>

#include "celldga/error.hpp"

namespace celldga {

namespace {

struct SymbolTable {
    std::shared_mutex mu;
    std::unordered_map<std::string, std::uint32_t> ids;
    std::deque<std::string> names;
};

SymbolTable& table() {
    static SymbolTable t;
    return t;
}

std::atomic<std::size_t> g_term_limit{1'000'000};

void check_limit(std::size_t n) {
    if (n > g_term_limit.load())
        throw Error(ErrorCode::TermLimitExceeded,
                    "polynomial exceeds term limit (" + std::to_string(g_term_limit.load()) + ")");
}

bool names_less(const Word& a, const Word& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](Sym x, Sym y) { return name_of(x) < name_of(y); });
}

}  // namespace

Sym intern(std::string_view name) {
    auto& t = table();
    {
        std::shared_lock lock(t.mu);
        if (auto it = t.ids.find(std::string(name)); it != t.ids.end()) return Sym{it->second};
    }
    std::unique_lock lock(t.mu);
    auto [it, inserted] = t.ids.try_emplace(std::string(name), static_cast<std::uint32_t>(t.names.size()));
    if (inserted) t.names.emplace_back(name);
    return Sym{it->second};
}

const std::string& name_of(Sym s) {
    auto& t = table();
    std::shared_lock lock(t.mu);
    return t.names.at(s.id);
}

void set_term_limit(std::size_t limit) { g_term_limit = limit; }
std::size_t term_limit() { return g_term_limit.load(); }

Polynomial Polynomial::one() {
    Polynomial p;
    p.terms_.emplace_back();
    return p;
}

Polynomial Polynomial::gen(Sym s) {
    Polynomial p;
    p.terms_.push_back(Word{s});
    return p;
}

Polynomial Polynomial::from_words(std::vector<Word> words) {
    Polynomial p;
    p.terms_ = std::move(words);
    p.normalize();
    return p;
}

// Sort, then drop words that occur an even number of times.
void Polynomial::normalize() {
    std::sort(terms_.begin(), terms_.end());
    std::vector<Word> out;
    out.reserve(terms_.size());
    for (std::size_t i = 0; i < terms_.size();) {
        std::size_t j = i;
        while (j < terms_.size() && terms_[j] == terms_[i]) ++j;
        if ((j - i) % 2 == 1) out.push_back(std::move(terms_[i]));
        i = j;
    }
    terms_ = std::move(out);
    check_limit(terms_.size());
}

bool Polynomial::has_unit() const { return !terms_.empty() && terms_.front().empty(); }

bool Polynomial::contains_word(const Word& w) const {
    return std::binary_search(terms_.begin(), terms_.end(), w);
}

bool Polynomial::mentions(Sym s) const {
    for (const auto& w : terms_)
        if (std::find(w.begin(), w.end(), s) != w.end()) return true;
    return false;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    std::vector<Word> out;
    out.reserve(terms_.size() + o.terms_.size());
    std::set_symmetric_difference(terms_.begin(), terms_.end(), o.terms_.begin(), o.terms_.end(),
                                  std::back_inserter(out));
    terms_ = std::move(out);
    check_limit(terms_.size());
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    check_limit(a.terms_.size() * b.terms_.size());
    Polynomial r;
    r.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& u : a.terms_)
        for (const auto& v : b.terms_) {
            Word w;
            w.reserve(u.size() + v.size());
            w.insert(w.end(), u.begin(), u.end());
            w.insert(w.end(), v.begin(), v.end());
            r.terms_.push_back(std::move(w));
        }
    r.normalize();
    return r;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::vector<const Word*> order;
    order.reserve(terms_.size());
    for (const auto& w : terms_) order.push_back(&w);
    std::sort(order.begin(), order.end(), [](const Word* x, const Word* y) { return names_less(*x, *y); });
    std::string out;
    for (std::size_t t = 0; t < order.size(); ++t) {
        if (t) out += " + ";
        const Word& w = *order[t];
        if (w.empty()) {
            out += "1";
            continue;
        }
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i) out += "·";
            out += name_of(w[i]);
        }
    }
    return out;
}

Polynomial parse_polynomial(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
        while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    if (text == "0" || text.empty()) return {};
    std::vector<Word> words;
    constexpr std::string_view dot = "·";
    auto split = [](std::string_view s, std::string_view sep) {
        std::vector<std::string_view> out;
        for (std::size_t pos = 0;;) {
            std::size_t end = s.find(sep, pos);
            out.push_back(s.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos));
            if (end == std::string_view::npos) return out;
            pos = end + sep.size();
        }
    };
    for (std::string_view term : split(text, "+")) {
        term = trim(term);
        if (term.empty()) throw Error(ErrorCode::Parse, "empty term in polynomial");
        Word w;
        if (term != "1") {
            for (std::string_view f : split(term, dot)) {
                f = trim(f);
                if (f.empty() || f.find(' ') != std::string_view::npos)
                    throw Error(ErrorCode::Parse, "bad factor '" + std::string(f) + "' in polynomial");
                w.push_back(intern(f));
            }
        }
        words.push_back(std::move(w));
    }
    return Polynomial::from_words(std::move(words));
}

namespace {

const Polynomial& lookup_or_throw(const GenLookup& f, Sym s) {
    const Polynomial* p = f(s);
    if (!p) throw Error(ErrorCode::UnknownGenerator, "no image for generator " + name_of(s));
    return *p;
}

GenLookup from_map(const SymMap<Polynomial>& m) {
    return [&m](Sym s) -> const Polynomial* {
        auto it = m.find(s);
        return it == m.end() ? nullptr : &it->second;
    };
}

}  // namespace

Polynomial derive(const GenLookup& d, const Polynomial& p) {
    std::vector<Word> out;
    for (const auto& w : p.terms()) {
        for (std::size_t i = 0; i < w.size(); ++i) {
            const Polynomial& dx = lookup_or_throw(d, w[i]);
            for (const auto& mid : dx.terms()) {
                Word r;
                r.reserve(w.size() - 1 + mid.size());
                r.insert(r.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
                r.insert(r.end(), mid.begin(), mid.end());
                r.insert(r.end(), w.begin() + static_cast<std::ptrdiff_t>(i) + 1, w.end());
                out.push_back(std::move(r));
            }
        }
    }
    return Polynomial::from_words(std::move(out));
}

Polynomial derive(const SymMap<Polynomial>& d, const Polynomial& p) { return derive(from_map(d), p); }

Polynomial substitute(const GenLookup& h, const Polynomial& p) {
    Polynomial total;
    for (const auto& w : p.terms()) {
        Polynomial prod = Polynomial::one();
        for (Sym s : w) {
            prod = prod * lookup_or_throw(h, s);
            if (prod.is_zero()) break;
        }
        total += prod;
    }
    return total;
}

Polynomial substitute(const SymMap<Polynomial>& h, const Polynomial& p) { return substitute(from_map(h), p); }

Polynomial substitute_partial(const SymMap<Polynomial>& h, const Polynomial& p) {
    Polynomial total;
    for (const auto& w : p.terms()) {
        Polynomial prod = Polynomial::one();
        for (Sym s : w) {
            auto it = h.find(s);
            prod = it == h.end() ? prod * Polynomial::gen(s) : prod * it->second;
            if (prod.is_zero()) break;
        }
        total += prod;
    }
    return total;
}

long long reduce_degree(long long d, long long m) {
    if (m <= 0) return d;
    long long r = d % m;
    return r < 0 ? r + m : r;
}

long long word_degree(const Word& w, const Grading& g) {
    long long total = 0;
    for (Sym s : w) {
        auto it = g.deg.find(s);
        if (it == g.deg.end()) throw Error(ErrorCode::UngradedGenerator, "no degree for generator " + name_of(s));
        total += it->second;
    }
    return reduce_degree(total, g.m);
}

GenMatrix GenMatrix::identity(std::size_t n) {
    GenMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Polynomial::one();
    return m;
}

GenMatrix GenMatrix::elementary(std::size_t n, std::size_t i, std::size_t j) {
    if (i < 1 || j < 1 || i > n || j > n)
        throw Error(ErrorCode::DimensionMismatch, "elementary matrix index out of range");
    GenMatrix m(n);
    m.at(i - 1, j - 1) = Polynomial::one();
    return m;
}

bool GenMatrix::is_strictly_upper() const {
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            if (!at(i, j).is_zero()) return false;
    return true;
}

bool GenMatrix::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

GenMatrix& GenMatrix::operator+=(const GenMatrix& o) {
    if (o.n_ != n_) throw Error(ErrorCode::DimensionMismatch, "matrix sizes differ");
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
    return *this;
}

GenMatrix operator*(const GenMatrix& a, const GenMatrix& b) {
    if (a.n_ != b.n_) throw Error(ErrorCode::DimensionMismatch, "matrix sizes differ");
    const std::size_t n = a.n_;
    GenMatrix r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const Polynomial& x = a.at(i, k);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j) {
                const Polynomial& y = b.at(k, j);
                if (!y.is_zero()) r.at(i, j) += x * y;
            }
        }
    return r;
}

GenMatrix mat_op(const GenMatrix& a, const GenMatrix& b, MatOp op) {
    return op == MatOp::Add ? a + b : a * b;
}

GenMatrix unipotent(const GenMatrix& m) { return GenMatrix::identity(m.n()) + m; }

std::string_view error_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::UnknownGenerator: return "UnknownGenerator";
        case ErrorCode::UngradedGenerator: return "UngradedGenerator";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::TermLimitExceeded: return "TermLimitExceeded";
        case ErrorCode::Parse: return "ParseError";
        case ErrorCode::MalformedSquare: return "MalformedSquare";
        case ErrorCode::InvalidDecomposition: return "InvalidDecomposition";
        case ErrorCode::InconsistentGluing: return "InconsistentGluing";
        case ErrorCode::UngradedRegion: return "UngradedRegion";
        case ErrorCode::MissingBoundaryData: return "MissingBoundaryData";
        case ErrorCode::NotSubdivided: return "NotSubdivided";
        case ErrorCode::BadPair: return "BadPair";
        case ErrorCode::BadPairAt: return "BadPairAt";
        case ErrorCode::DegreeMismatch: return "DegreeMismatch";
        case ErrorCode::SelfReference: return "SelfReference";
        case ErrorCode::MissingDecoration: return "MissingDecoration";
        case ErrorCode::TooManyUnknowns: return "TooManyUnknowns";
        case ErrorCode::InvalidAugmentation: return "InvalidAugmentation";
        case ErrorCode::InvalidModulus: return "InvalidModulus";
    }
    return "Error";
}

}  // namespace celldga
