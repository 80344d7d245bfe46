#include "celldga/catalog.hpp"

#include <regex>

#include "celldga/error.hpp"

namespace celldga {

namespace {

bool uses_k(int tag) { return tag != 1 && tag != 14; }
bool uses_l(int tag) { return tag == 7 || tag == 10 || tag == 11 || tag == 14; }

// For type 14 the single parameter lives in k of the name but l of the type.
EdgeRec edge(const std::string& id, const std::string& tail, const std::string& head, const EdgeType& t) {
    return {id, tail, head, t};
}

}  // namespace

std::string square_name(const SquareType& t) {
    std::string s = "square-" + std::to_string(t.tag) + "-n" + std::to_string(t.n);
    if (uses_k(t.tag)) s += "-k" + std::to_string(t.k);
    if (uses_l(t.tag)) s += "-l" + std::to_string(t.l);
    if (t.reflected) s += "-r";
    return s;
}

Decomposition square_decomposition(const SquareType& t, const std::string& prefix) {
    SigmaMaps sm = sigma_maps(t);
    auto type_of = [&](Side s) { return sm.side_type[static_cast<std::size_t>(s)]; };
    const std::string ll = prefix + "LL", lr = prefix + "LR", ul = prefix + "UL", ur = prefix + "UR";
    Decomposition d;
    d.vertices = {ll, lr, ul, ur};
    d.edges = {edge(prefix + "L", ll, ul, type_of(Side::L)), edge(prefix + "D", ll, lr, type_of(Side::D)),
               edge(prefix + "R", lr, ur, type_of(Side::R)), edge(prefix + "U", ul, ur, type_of(Side::U))};
    SquareRec s;
    s.id = prefix + "sq";
    s.type = t;
    s.sides = {prefix + "L", prefix + "D", prefix + "R", prefix + "U"};
    d.squares = {s};
    return d;
}

std::vector<SquareType> catalog_square_types() {
    std::vector<SquareType> out;
    for (int tag = 1; tag <= 14; ++tag)
        for (int n = 2; n <= 6; ++n)
            for (int k = 0; k <= (uses_k(tag) ? n : 0); ++k)
                for (int l = 0; l <= (uses_l(tag) ? n : 0); ++l)
                    for (bool r : {false, true}) {
                        if (uses_k(tag) != (k > 0) || uses_l(tag) != (l > 0)) continue;
                        SquareType t{tag, n, k, l, r};
                        try {
                            if (validate(square_decomposition(t)).ok()) out.push_back(t);
                        } catch (const Error&) {
                        }
                    }
    return out;
}

Decomposition torus_grid(int rows, int cols, int n) {
    Decomposition d;
    auto v = [&](int i, int j) { return "v" + std::to_string((i + cols) % cols) + "_" + std::to_string((j + rows) % rows); };
    auto h = [&](int i, int j) { return "h" + std::to_string((i + cols) % cols) + "_" + std::to_string((j + rows) % rows); };
    auto u = [&](int i, int j) { return "u" + std::to_string((i + cols) % cols) + "_" + std::to_string((j + rows) % rows); };
    const EdgeType flat{EdgeTag::PV, n, 0};
    for (int j = 0; j < rows; ++j)
        for (int i = 0; i < cols; ++i) {
            d.vertices.push_back(v(i, j));
            d.edges.push_back(edge(h(i, j), v(i, j), v(i + 1, j), flat));
            d.edges.push_back(edge(u(i, j), v(i, j), v(i, j + 1), flat));
        }
    for (int j = 0; j < rows; ++j)
        for (int i = 0; i < cols; ++i) {
            SquareRec s;
            s.id = "s" + std::to_string(i) + "_" + std::to_string(j);
            s.type = {1, n, 0, 0, false};
            s.sides = {u(i, j), h(i, j), u(i + 1, j), h(i, j + 1)};
            d.squares.push_back(s);
        }
    return d;
}

Decomposition sphere_pair(int n) {
    Decomposition d = square_decomposition({1, n, 0, 0, false});
    SquareRec back = d.squares[0];
    d.squares[0].id = "front";
    back.id = "back";
    d.squares.push_back(back);
    return d;
}

Decomposition cusp_pair(int n, int k) {
    Decomposition d = square_decomposition({9, n, k, 0, false}, "a.");
    Decomposition right = square_decomposition({1, n, 0, 0, false}, "b.");
    // glue right's L onto left's R
    for (auto& e : right.edges) {
        for (auto* end : {&e.tail, &e.head}) {
            if (*end == "b.LL") *end = "a.LR";
            if (*end == "b.UL") *end = "a.UR";
        }
    }
    for (const auto& vtx : right.vertices)
        if (vtx != "b.LL" && vtx != "b.UL") d.vertices.push_back(vtx);
    for (const auto& e : right.edges)
        if (e.id != "b.L") d.edges.push_back(e);
    right.squares[0].sides[static_cast<std::size_t>(Side::L)] = "a.R";
    d.squares.push_back(right.squares[0]);
    return d;
}

Decomposition swallowtail_pair(int n) {
    const int k = 1;
    Decomposition d = square_decomposition({13, n, k, 0, false}, "S.");
    // T is reflected, so its canonical lower edge is its actual left edge,
    // which is glued to the lower edge of S.
    Decomposition t = square_decomposition({9, n, k, 0, true}, "T.");
    auto rename = [](std::string& x) {
        if (x == "T.LL") x = "S.LL";
        if (x == "T.UL") x = "S.LR";
    };
    for (auto& e : t.edges) {
        rename(e.tail);
        rename(e.head);
    }
    for (const auto& vtx : t.vertices)
        if (vtx != "T.LL" && vtx != "T.UL") d.vertices.push_back(vtx);
    for (const auto& e : t.edges)
        if (e.id != "T.L") d.edges.push_back(e);
    t.squares[0].sides[static_cast<std::size_t>(Side::L)] = "S.D";
    d.squares.push_back(t.squares[0]);
    return d;
}

std::vector<std::string> catalog_names() {
    std::vector<std::string> names;
    for (const auto& t : catalog_square_types()) names.push_back(square_name(t));
    names.push_back("torus-3x3");
    names.push_back("sphere");
    names.push_back("cusp-pair");
    for (int n = 3; n <= 5; ++n) names.push_back("swallowtail-ST-n" + std::to_string(n));
    return names;
}

Decomposition catalog_entry(const std::string& name) {
    static const std::regex square_re(R"(square-(\d+)-n(\d+)(?:-k(\d+))?(?:-l(\d+))?(-r)?)");
    static const std::regex st_re(R"(swallowtail-ST-n(\d+))");
    static const std::regex torus_re(R"(torus-(\d+)x(\d+))");
    std::smatch m;
    if (std::regex_match(name, m, square_re)) {
        SquareType t;
        t.tag = std::stoi(m[1]);
        t.n = std::stoi(m[2]);
        t.k = m[3].matched ? std::stoi(m[3]) : 0;
        t.l = m[4].matched ? std::stoi(m[4]) : 0;
        t.reflected = m[5].matched;
        if (t.tag < 1 || t.tag > 14 || uses_k(t.tag) != m[3].matched || uses_l(t.tag) != m[4].matched)
            throw Error(ErrorCode::Parse, "bad catalog square name '" + name + "'");
        return square_decomposition(t);
    }
    if (std::regex_match(name, m, st_re)) {
        int n = std::stoi(m[1]);
        if (n < 3) throw Error(ErrorCode::Parse, "swallowtail pair needs n >= 3");
        return swallowtail_pair(n);
    }
    if (std::regex_match(name, m, torus_re)) {
        int r = std::stoi(m[1]), c = std::stoi(m[2]);
        if (r < 1 || c < 1 || r > 20 || c > 20) throw Error(ErrorCode::Parse, "torus grid size must be 1..20");
        return torus_grid(r, c);
    }
    if (name == "sphere") return sphere_pair();
    if (name == "cusp-pair") return cusp_pair();
    throw Error(ErrorCode::Parse, "unknown catalog entry '" + name + "'");
}

}  // namespace celldga
