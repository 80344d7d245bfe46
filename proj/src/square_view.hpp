#pragma once

// Internal: a square of a decomposition seen through its unreflected model.

#include <string>
#include <unordered_map>
#include <vector>

#include "celldga/cellcomplex.hpp"

namespace celldga::detail {

inline Corner head_corner(Side s) {
    switch (s) {
        case Side::L: return Corner::UL;
        case Side::D: return Corner::LR;
        default: return Corner::UR;
    }
}

// label (1..n) -> 1-based position in the corner list, 0 when absent
inline std::vector<int> invert_labels(const std::vector<int>& list, int n) {
    std::vector<int> pos(static_cast<std::size_t>(n) + 1, 0);
    for (std::size_t p = 0; p < list.size(); ++p) pos[static_cast<std::size_t>(list[p])] = static_cast<int>(p) + 1;
    return pos;
}

struct SquareView {
    const SquareRec* rec = nullptr;
    SquareModel model;
    std::array<std::string, 4> edge;                 // by unreflected side
    std::array<std::vector<int>, 4> side_pos;        // by unreflected side: label -> head position
    std::array<std::vector<int>, 4> corner_pos;      // by unreflected corner: label -> position
    std::string ll, ur;                              // corner vertices

    const std::string& edge_of(Side canon) const { return edge[static_cast<std::size_t>(canon)]; }
    const std::vector<int>& pos_on(Side canon) const { return side_pos[static_cast<std::size_t>(canon)]; }
    const std::vector<int>& pos_at(Corner canon) const { return corner_pos[static_cast<std::size_t>(canon)]; }
};

// Requires the square's sides to exist in `edges`.
inline SquareView make_view(const SquareRec& s, const std::unordered_map<std::string, const EdgeRec*>& edges) {
    SquareView v;
    v.rec = &s;
    v.model = square_model(s.type);
    for (int i = 0; i < 4; ++i) {
        Side canon = static_cast<Side>(i);
        Side actual = s.type.reflected ? reflect(canon) : canon;
        v.edge[static_cast<std::size_t>(i)] = s.sides[static_cast<std::size_t>(actual)];
        v.side_pos[static_cast<std::size_t>(i)] =
            invert_labels(v.model.corner[static_cast<std::size_t>(head_corner(canon))], v.model.n);
        v.corner_pos[static_cast<std::size_t>(i)] = invert_labels(v.model.corner[static_cast<std::size_t>(i)], v.model.n);
    }
    v.ll = edges.at(v.edge_of(Side::L))->tail;
    v.ur = edges.at(v.edge_of(Side::U))->head;
    return v;
}

}  // namespace celldga::detail
