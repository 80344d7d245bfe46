#include "celldga/invariants.hpp"

#include <algorithm>

#include "celldga/error.hpp"

namespace celldga {

std::vector<std::size_t> degree_zero_generators(const Dga& dga) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < dga.gens.size(); ++i)
        if (reduce_degree(dga.gens[i].degree, dga.m) == 0) out.push_back(i);
    return out;
}

namespace {

// One differential as a list of words over the unknowns: a word survives
// only if every letter is an unknown, and then it is the bitmask of letters.
struct CompiledPoly {
    bool unit = false;
    std::vector<std::uint64_t> words;
};

}  // namespace

AugmentationResult augmentations(const Dga& dga, int cap, std::size_t keep_limit) {
    std::vector<std::size_t> unknowns = degree_zero_generators(dga);
    if (static_cast<long long>(unknowns.size()) > cap || unknowns.size() > 63)
        throw Error(ErrorCode::TooManyUnknowns, std::to_string(unknowns.size()) + " degree 0 generators exceed the cap of " +
                                                    std::to_string(cap));
    SymMap<int> bit;
    for (std::size_t b = 0; b < unknowns.size(); ++b) bit[dga.gens[unknowns[b]].sym] = static_cast<int>(b);

    std::vector<CompiledPoly> polys;
    for (const auto& g : dga.gens) {
        CompiledPoly cp;
        for (const Word& w : dga.diff.at(g.sym).terms()) {
            if (w.empty()) {
                cp.unit = !cp.unit;
                continue;
            }
            std::uint64_t mask = 0;
            bool alive = true;
            for (Sym s : w) {
                auto it = bit.find(s);
                if (it == bit.end()) {
                    alive = false;
                    break;
                }
                mask |= std::uint64_t{1} << it->second;
            }
            if (alive) cp.words.push_back(mask);
        }
        if (cp.unit || !cp.words.empty()) polys.push_back(std::move(cp));
    }

    AugmentationResult r;
    const std::uint64_t total = std::uint64_t{1} << unknowns.size();
    for (std::uint64_t a = 0; a < total; ++a) {
        bool ok = true;
        for (const auto& cp : polys) {
            bool v = cp.unit;
            for (std::uint64_t w : cp.words) v ^= (w & a) == w;
            if (v) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        ++r.count;
        if (r.list.size() < keep_limit) {
            Augmentation aug;
            aug.eps.assign(dga.gens.size(), 0);
            for (std::size_t b = 0; b < unknowns.size(); ++b) aug.eps[unknowns[b]] = (a >> b) & 1;
            r.list.push_back(std::move(aug));
        }
    }
    return r;
}

int evaluate(const Dga& dga, const Augmentation& a, const Polynomial& p) {
    SymMap<std::size_t> index;
    for (std::size_t i = 0; i < dga.gens.size(); ++i) index[dga.gens[i].sym] = i;
    int total = 0;
    for (const Word& w : p.terms()) {
        int v = 1;
        for (Sym s : w) {
            auto it = index.find(s);
            if (it == index.end()) throw Error(ErrorCode::UnknownGenerator, "unknown generator " + name_of(s));
            v &= a.eps[it->second];
        }
        total ^= v;
    }
    return total;
}

bool is_augmentation(const Dga& dga, const Augmentation& a) {
    if (a.eps.size() != dga.gens.size()) return false;
    for (std::size_t i = 0; i < dga.gens.size(); ++i)
        if (a.eps[i] > 1 || (a.eps[i] && reduce_degree(dga.gens[i].degree, dga.m) != 0)) return false;
    for (const auto& g : dga.gens)
        if (evaluate(dga, a, dga.diff.at(g.sym))) return false;
    return true;
}

LinearizedComplex linearize(const Dga& dga, const Augmentation& eps) {
    if (!is_augmentation(dga, eps)) throw Error(ErrorCode::InvalidAugmentation, "not an augmentation of this DGA");
    LinearizedComplex lc;
    lc.m = dga.m;
    SymMap<Polynomial> shift;
    SymMap<std::size_t> row_of;
    for (std::size_t i = 0; i < dga.gens.size(); ++i) {
        const auto& g = dga.gens[i];
        if (eps.eps[i]) shift[g.sym] = Polynomial::gen(g.sym) + Polynomial::one();
        auto& list = lc.gens[g.degree];
        row_of[g.sym] = list.size();
        list.push_back(i);
    }
    for (const auto& [deg, cols] : lc.gens) {
        const long long lower = reduce_degree(deg - 1, dga.m);
        auto it = lc.gens.find(lower);
        const std::size_t rows = it == lc.gens.end() ? 0 : it->second.size();
        BitMatrix M(rows, std::vector<std::uint8_t>(cols.size(), 0));
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const Generator& g = dga.gens[cols[c]];
            Polynomial d = substitute_partial(shift, dga.diff.at(g.sym));
            for (const Word& w : d.terms()) {
                if (w.size() != 1) continue;
                const Generator* h = dga.find(w[0]);
                if (reduce_degree(h->degree, dga.m) != lower)
                    throw Error(ErrorCode::DegreeMismatch, "differential of " + g.id + " is not homogeneous");
                M[row_of.at(w[0])][c] ^= 1;
            }
        }
        lc.boundary[deg] = std::move(M);
    }
    // consecutive boundaries compose to zero
    for (const auto& [deg, M] : lc.boundary) {
        auto below = lc.boundary.find(reduce_degree(deg - 1, dga.m));
        if (below == lc.boundary.end() || M.empty()) continue;
        const BitMatrix& N = below->second;
        for (std::size_t r = 0; r < N.size(); ++r)
            for (std::size_t c = 0; c < (M.empty() ? 0 : M[0].size()); ++c) {
                int v = 0;
                for (std::size_t k = 0; k < M.size(); ++k) v ^= N[r][k] & M[k][c];
                if (v) throw Error(ErrorCode::InvalidAugmentation, "linearized differential does not square to zero");
            }
    }
    return lc;
}

std::size_t rank_mod2(BitMatrix m) {
    std::size_t rank = 0;
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
        std::size_t pivot = rank;
        while (pivot < m.size() && !m[pivot][c]) ++pivot;
        if (pivot == m.size()) continue;
        std::swap(m[pivot], m[rank]);
        for (std::size_t r = 0; r < m.size(); ++r)
            if (r != rank && m[r][c])
                for (std::size_t k = c; k < cols; ++k) m[r][k] ^= m[rank][k];
        ++rank;
    }
    return rank;
}

std::map<long long, long long> betti(const LinearizedComplex& lc) {
    std::map<long long, long long> out;
    for (const auto& [deg, list] : lc.gens) {
        auto rank_at = [&](long long d) -> long long {
            auto it = lc.boundary.find(d);
            return it == lc.boundary.end() ? 0 : static_cast<long long>(rank_mod2(it->second));
        };
        const long long above = lc.m > 0 ? reduce_degree(deg + 1, lc.m) : deg + 1;
        out[deg] = static_cast<long long>(list.size()) - rank_at(deg) - (lc.gens.count(above) ? rank_at(above) : 0);
    }
    return out;
}

nlohmann::json to_json(const Dga& dga, const AugmentationResult& r) {
    nlohmann::json list = nlohmann::json::array();
    std::vector<std::size_t> unknowns = degree_zero_generators(dga);
    for (const auto& a : r.list) {
        nlohmann::json m = nlohmann::json::object();
        for (std::size_t i : unknowns) m[dga.gens[i].id] = a.eps[i];
        list.push_back(m);
    }
    return {{"count", r.count}, {"augmentations", list}};
}

nlohmann::json betti_json(const std::map<long long, long long>& b) {
    nlohmann::json out = nlohmann::json::object();
    for (auto [d, r] : b) out[std::to_string(d)] = r;
    return out;
}

}  // namespace celldga
