#pragma once

// Augmentations over Z/2 and linearized homology.

#include <cstdint>
#include <map>
#include <vector>

#include <json.hpp>

#include "celldga/dga.hpp"

namespace celldga {

// eps[i] is the value on dga.gens[i].
struct Augmentation {
    std::vector<std::uint8_t> eps;
};

struct AugmentationResult {
    std::uint64_t count = 0;
    std::vector<Augmentation> list;
};

// Generators that may take the value 1: degree 0 mod m (all of them when m = 1).
std::vector<std::size_t> degree_zero_generators(const Dga& dga);

// Exhaustive search. Throws TooManyUnknowns when there are more than cap
// degree 0 generators. Only the first keep_limit augmentations are listed.
AugmentationResult augmentations(const Dga& dga, int cap = 24, std::size_t keep_limit = 1u << 16);

// Evaluates eps on p as a unital algebra map.
int evaluate(const Dga& dga, const Augmentation& a, const Polynomial& p);
bool is_augmentation(const Dga& dga, const Augmentation& a);

using BitMatrix = std::vector<std::vector<std::uint8_t>>;  // [row][col]

struct LinearizedComplex {
    long long m = 0;
    std::map<long long, std::vector<std::size_t>> gens;  // degree -> generator indices
    // degree d -> matrix from degree d (columns) to degree d - 1 (rows)
    std::map<long long, BitMatrix> boundary;
};

// Throws InvalidAugmentation if eps is not an augmentation of dga.
LinearizedComplex linearize(const Dga& dga, const Augmentation& eps);

std::size_t rank_mod2(BitMatrix m);

// degree -> dim ker - rank of the incoming boundary.
std::map<long long, long long> betti(const LinearizedComplex& lc);

nlohmann::json to_json(const Dga& dga, const AugmentationResult& r);
nlohmann::json betti_json(const std::map<long long, long long>& b);

}  // namespace celldga
