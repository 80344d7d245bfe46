#pragma once

// Transverse square decompositions: data model, square-type tables,
// validation, singular-set shifting, sheet gluing and Maslov potentials.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace celldga {

enum class EdgeTag { PV, OneCr, TwoCr, Cu };

struct EdgeType {
    EdgeTag tag = EdgeTag::PV;
    int n = 0;  // sheets above the terminal vertex
    int k = 0;  // unused for PV

    friend bool operator==(const EdgeType&, const EdgeType&) = default;

    // Sheet count above the initial vertex.
    int tail_count() const { return tag == EdgeTag::Cu ? n - 2 : n; }
    // For each head position 1..n, the position above the initial vertex (0 if the sheet cusps off).
    std::vector<int> tail_positions() const;
    // Crossing sheet pairs, as head positions.
    std::vector<std::pair<int, int>> crossings() const;
    bool well_formed() const;
    std::string to_string() const;
};

enum class Side { L = 0, D = 1, R = 2, U = 3 };
enum class Corner { UR = 0, UL = 1, LL = 2, LR = 3 };

const char* side_name(Side s);
Side reflect(Side s);
Corner reflect(Corner c);

struct SquareType {
    int tag = 1;  // 1..14
    int n = 0;    // sheets above the upper-right corner
    int k = 0;    // base index (l for type 14)
    int l = 0;    // second index for types 7, 10, 11
    bool reflected = false;

    friend bool operator==(const SquareType&, const SquareType&) = default;
    std::string to_string() const;
};

enum class ArcKind { Crossing, Cusp };

// Where a shifted arc comes to rest, in unreflected square coordinates.
struct ArcPlace {
    bool on_corner = false;  // true: lower-left vertex
    Side side = Side::L;
};

struct ModelArc {
    ArcKind kind = ArcKind::Crossing;
    int i = 0, j = 0;  // square labels, i < j
    ArcPlace place;
    int edge_value = 0;  // value the killed edge slot takes (1 only for the swallowtail arc)
};

enum class FaceFormula { Standard, Swallow13, Swallow14, DecoratedS13, DecoratedT };

// One elementary square in unreflected position. Labels are the sheet
// positions above the upper-right corner, 1-based.
struct SquareModel {
    int n = 0;
    std::array<std::vector<int>, 4> corner;  // indexed by Corner, labels top to bottom
    std::array<EdgeType, 4> side_type;       // indexed by Side
    std::vector<ModelArc> arcs;
    std::vector<std::pair<int, int>> ll_cusps;   // label pairs with a 1 in the lower-left A matrix
    FaceFormula formula = FaceFormula::Standard;
    int sw = 0;  // swallowtail index (k for type 13, l for type 14)
    bool has_codim2 = false;
};

// Throws MalformedSquare when the parameters are out of range.
SquareModel square_model(const SquareType& t);

struct SigmaMaps {
    // Doubled positions: 2p for a sheet at position p, 2p-1 for a cusping pair just above position p.
    std::vector<int> sigma_L, sigma_D;
    std::array<EdgeType, 4> side_type;  // indexed by actual Side
};

SigmaMaps sigma_maps(const SquareType& t);

struct EdgeRec {
    std::string id, tail, head;
    EdgeType type;
    friend bool operator==(const EdgeRec&, const EdgeRec&) = default;
};

struct SquareRec {
    std::string id;
    SquareType type;
    std::array<std::string, 4> sides;  // indexed by actual Side
    friend bool operator==(const SquareRec&, const SquareRec&) = default;
};

struct Decomposition {
    std::vector<std::string> vertices;
    std::vector<EdgeRec> edges;
    std::vector<SquareRec> squares;

    friend bool operator==(const Decomposition&, const Decomposition&) = default;

    const EdgeRec* find_edge(const std::string& id) const;
    const SquareRec* find_square(const std::string& id) const;
};

Decomposition decomposition_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Decomposition& d);

struct Violation {
    std::string rule;  // "structure", "A1", "A2", "A3", "A4"
    std::string where;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

ValidationReport validate(const Decomposition& d);
nlohmann::json to_json(const ValidationReport& r);

// Throws InvalidDecomposition listing the violations.
void require_valid(const Decomposition& d);

struct PlacedArc {
    std::string square;
    ArcKind kind = ArcKind::Crossing;
    int i = 0, j = 0;  // square labels
    bool on_vertex = false;
    std::string cell;  // edge or vertex id
    int edge_value = 0;
};

struct ArcPlacement {
    std::vector<PlacedArc> arcs;
    std::vector<std::pair<std::string, std::string>> codim2;  // (square, vertex)
};

// Only structural soundness is required; (A2)-(A4) are not.
ArcPlacement shift_singular(const Decomposition& d);

struct Subdivision {
    std::string square;
    int tag = 0;
    std::string split_R, split_L;   // original edge ids (split_L only for type 6)
    std::string vertex_R, vertex_L; // new 0-cells
    std::string R_plus, R_minus, L_plus, L_minus, C;
    std::string upper, lower;       // the two 2-cells
};

struct ParallelDecomposition {
    Decomposition base;
    std::vector<Subdivision> subdivisions;
    int added_vertices = 0, added_edges = 0, added_faces = 0, removed_edges = 0;
};

ParallelDecomposition to_parallel(const Decomposition& d);
nlohmann::json to_json(const ParallelDecomposition& p);

}  // namespace celldga
