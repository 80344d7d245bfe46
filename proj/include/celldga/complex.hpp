#pragma once

// A polygonal complex carrying, for every cell, the sheets above it and the
// sheet pairs whose generators are removed. Both E_perp and E_par reduce to
// this form; assembly and grading work on it directly.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "celldga/cellcomplex.hpp"

namespace celldga {

using PosPair = std::pair<int, int>;  // 0-based positions, first < second

struct VertexCell {
    std::string id;
    int n = 0;
    std::map<PosPair, int> killed;  // pair -> constant taking the generator's place
};

struct EdgeCell {
    std::string id;
    int tail = -1, head = -1;  // vertex indices
    int n = 0;
    std::vector<int> head_pos, tail_pos;  // own position -> vertex position, -1 if absent
    std::vector<PosPair> tail_cusps;      // (upper, lower) own positions cusping at the tail
    std::map<PosPair, int> killed;
    std::optional<PosPair> conj;  // decorated swallowtail edge: conjugate A_- by I + E
    bool removed = false;          // replaced by two halves in E_par
};

struct FacePath {
    int edge = -1;
    std::vector<int> pos;  // face label -> edge position, -1 if absent
};

struct FaceCell {
    std::string id;
    std::string square;
    int n = 0;
    int v0 = -1, v1 = -1;
    std::vector<int> v0_pos, v1_pos;
    // paths[0] runs through the (unreflected) L and U sides, paths[1] through D and R
    std::array<std::vector<FacePath>, 2> paths;
    std::vector<PosPair> v0_cusps;
    FaceFormula formula = FaceFormula::Standard;
    int sw = 0;                       // 1-based swallowtail index
    std::optional<PosPair> t_pair;    // decorated T square: T = I + E on paths[1]
};

struct CellComplex {
    std::vector<VertexCell> vertices;
    std::vector<EdgeCell> edges;
    std::vector<FaceCell> faces;

    int vertex_index(const std::string& id) const;
    int edge_index(const std::string& id) const;
    int face_index(const std::string& id) const;
};

// E_perp with every square's singular set shifted into its boundary.
CellComplex transverse_complex(const Decomposition& d);

// E_par. With decorated = true, swallowtail squares that share their lower
// edge with a Type 9 square use the S/T cellular formulas.
CellComplex parallel_complex(const ParallelDecomposition& p, bool decorated);

// ---------------------------------------------------------------- sheets

struct SheetAtlas {
    int regions = 0;
    std::vector<std::vector<int>> vertex_region, edge_region, face_region;  // [cell][pos]
    std::vector<std::string> region_name;  // a representative "cell#pos"
    std::vector<std::pair<int, int>> cusp_constraints;  // (upper region, lower region)
};

SheetAtlas global_sheets(const CellComplex& c);
SheetAtlas global_sheets(const Decomposition& d);

struct MaslovData {
    long long m = 0;
    std::vector<long long> mu;        // per region, reduced mod m when m > 0
    std::vector<int> component;       // per region
    std::vector<int> base_region;     // per component
};

// base_mu: values pinned on each component's base region; a single value applies to all.
MaslovData maslov(const SheetAtlas& atlas, const std::vector<long long>& base_mu = {});

// Re-reduce a potential modulo a divisor of its Maslov number.
MaslovData with_modulus(const MaslovData& md, long long m);

}  // namespace celldga
