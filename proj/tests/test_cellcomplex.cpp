#include <doctest.h>

#include <algorithm>
#include <set>

#include "celldga/catalog.hpp"
#include "celldga/complex.hpp"
#include "celldga/error.hpp"

using namespace celldga;
using nlohmann::json;

namespace {

bool has_rule(const ValidationReport& r, const std::string& rule) {
    return std::any_of(r.violations.begin(), r.violations.end(), [&](const Violation& v) { return v.rule == rule; });
}

// Two copies of one square type glued along their L sides, so the
// horizontal edges of both point away from the shared edge.
Decomposition glued_on_L(const SquareType& t) {
    Decomposition a = square_decomposition(t, "a.");
    Decomposition b = square_decomposition(t, "b.");
    auto ren = [](std::string s) {
        if (s == "b.L") return std::string("a.L");
        if (s == "b.LL") return std::string("a.LL");
        if (s == "b.UL") return std::string("a.UL");
        return s;
    };
    for (const auto& v : b.vertices)
        if (ren(v) == v) a.vertices.push_back(v);
    for (auto e : b.edges) {
        if (e.id == "b.L") continue;
        e.tail = ren(e.tail);
        e.head = ren(e.head);
        a.edges.push_back(e);
    }
    for (auto s : b.squares) {
        for (auto& x : s.sides) x = ren(x);
        a.squares.push_back(s);
    }
    return a;
}

}  // namespace

TEST_CASE("edge types") {
    EdgeType pv{EdgeTag::PV, 3, 0};
    CHECK(pv.tail_positions() == std::vector<int>{1, 2, 3});
    CHECK(pv.crossings().empty());
    EdgeType cr{EdgeTag::OneCr, 3, 2};
    CHECK(cr.tail_positions() == std::vector<int>{1, 3, 2});
    CHECK(cr.crossings() == std::vector<std::pair<int, int>>{{2, 3}});
    EdgeType cu{EdgeTag::Cu, 4, 2};
    CHECK(cu.tail_count() == 2);
    CHECK(cu.tail_positions() == std::vector<int>{1, 0, 0, 2});
    CHECK(cu.well_formed());
    CHECK(!EdgeType{EdgeTag::OneCr, 3, 3}.well_formed());
    CHECK(!EdgeType{EdgeTag::Cu, 1, 1}.well_formed());
}

TEST_CASE("sigma maps") {
    SigmaMaps t1 = sigma_maps({1, 2, 0, 0, false});
    CHECK(t1.sigma_L == std::vector<int>{2, 4});
    CHECK(t1.sigma_D == std::vector<int>{2, 4});

    SigmaMaps t2 = sigma_maps({2, 2, 1, 0, false});
    CHECK(t2.sigma_L == std::vector<int>{4, 2});
    CHECK(t2.sigma_D == std::vector<int>{2, 4});
    CHECK(t2.side_type[static_cast<int>(Side::L)] == EdgeType{EdgeTag::PV, 2, 0});
    CHECK(t2.side_type[static_cast<int>(Side::U)] == EdgeType{EdgeTag::OneCr, 2, 1});

    // reflection swaps the roles of L and D
    SigmaMaps t2r = sigma_maps({2, 2, 1, 0, true});
    CHECK(t2r.sigma_D == std::vector<int>{4, 2});
    CHECK(t2r.side_type[static_cast<int>(Side::D)] == EdgeType{EdgeTag::PV, 2, 0});

    SigmaMaps t13 = sigma_maps({13, 3, 1, 0, false});
    CHECK(t13.sigma_L == std::vector<int>{1, 1, 2});
    CHECK(t13.side_type[static_cast<int>(Side::L)] == EdgeType{EdgeTag::PV, 1, 0});
    CHECK(t13.side_type[static_cast<int>(Side::D)] == EdgeType{EdgeTag::Cu, 3, 1});
    CHECK(t13.side_type[static_cast<int>(Side::R)] == EdgeType{EdgeTag::OneCr, 3, 2});

    CHECK_THROWS_AS(square_model({13, 2, 1, 0, false}), Error);
    CHECK_THROWS_AS(square_model({15, 3, 1, 0, false}), Error);
}

TEST_CASE("single squares validate") {
    CHECK(validate(square_decomposition({1, 2, 0, 0, false})).ok());
    CHECK(catalog_square_types().size() > 300);
    for (const auto& t : catalog_square_types()) CHECK(validate(square_decomposition(t)).ok());
}

TEST_CASE("structural problems are reported") {
    Decomposition d = square_decomposition({1, 2, 0, 0, false});
    d.edges[2].type.n = 3;
    CHECK(has_rule(validate(d), "structure"));

    Decomposition e = square_decomposition({1, 2, 0, 0, false});
    e.squares[0].sides[0] = "nowhere";
    CHECK(has_rule(validate(e), "structure"));
    CHECK_THROWS_AS(require_valid(e), Error);
    CHECK_THROWS_AS(shift_singular(e), Error);
}

TEST_CASE("two Type 3 squares may not touch") {
    ValidationReport r = validate(glued_on_L({3, 2, 1, 0, false}));
    CHECK(has_rule(r, "A3"));
}

TEST_CASE("two Type 2 squares with arcs on the same edge") {
    Decomposition d = glued_on_L({2, 2, 1, 0, false});
    ValidationReport r = validate(d);
    CHECK(has_rule(r, "A4"));
    // the same pair of squares is fine on its own
    CHECK(validate(square_decomposition({2, 2, 1, 0, false})).ok());
}

TEST_CASE("shifting the singular set") {
    ArcPlacement p2 = shift_singular(square_decomposition({2, 3, 1, 0, false}));
    REQUIRE(p2.arcs.size() == 1);
    CHECK(p2.arcs[0].cell == "L");
    CHECK(!p2.arcs[0].on_vertex);
    CHECK(p2.arcs[0].kind == ArcKind::Crossing);

    ArcPlacement p3 = shift_singular(square_decomposition({3, 3, 1, 0, false}));
    REQUIRE(p3.arcs.size() == 1);
    CHECK(p3.arcs[0].cell == "LL");
    CHECK(p3.arcs[0].on_vertex);

    // reflection moves an L-arc onto D
    ArcPlacement p2r = shift_singular(square_decomposition({2, 3, 1, 0, true}));
    REQUIRE(p2r.arcs.size() == 1);
    CHECK(p2r.arcs[0].cell == "D");

    ArcPlacement p13 = shift_singular(square_decomposition({13, 3, 1, 0, false}));
    REQUIRE(p13.codim2.size() == 1);
    CHECK(p13.codim2[0].second == "LL");
    int on_D = 0, cusps = 0;
    for (const auto& a : p13.arcs) {
        if (a.kind == ArcKind::Crossing && a.cell == "D") {
            ++on_D;
            CHECK(a.edge_value == 1);
        }
        if (a.kind == ArcKind::Cusp) ++cusps;
    }
    CHECK(on_D == 1);
    CHECK(cusps == 2);
}

TEST_CASE("parallel subdivision counts") {
    ParallelDecomposition p8 = to_parallel(square_decomposition({8, 3, 1, 0, false}));
    CHECK(p8.subdivisions.size() == 1);
    CHECK(p8.added_vertices == 1);
    CHECK(p8.added_edges == 3);
    CHECK(p8.added_faces == 1);
    CHECK(p8.removed_edges == 1);
    CHECK(p8.subdivisions[0].vertex_R == "R.x");

    ParallelDecomposition p6 = to_parallel(square_decomposition({6, 3, 1, 0, false}));
    CHECK(p6.added_vertices == 2);
    CHECK(p6.added_edges == 5);
    CHECK(p6.added_faces == 1);
    CHECK(!p6.subdivisions[0].split_L.empty());

    for (const std::string name : {"torus-3x3", "sphere", "cusp-pair", "square-13-n4-k2"}) {
        ParallelDecomposition p = to_parallel(catalog_entry(name));
        CHECK(p.subdivisions.empty());
        CHECK(p.added_vertices + p.added_edges + p.added_faces == 0);
        CHECK(p.base == catalog_entry(name));
    }

    CellComplex c8 = parallel_complex(p8, false);
    CellComplex t8 = transverse_complex(square_decomposition({8, 3, 1, 0, false}));
    CHECK(c8.vertices.size() == t8.vertices.size() + 1);
    CHECK(c8.faces.size() == t8.faces.size() + 1);
}

TEST_CASE("global sheets") {
    CHECK(global_sheets(catalog_entry("torus-3x3")).regions == 2);
    CHECK(global_sheets(catalog_entry("sphere")).regions == 2);
    CHECK(global_sheets(catalog_entry("square-1-n3")).regions == 3);
    for (int n = 2; n <= 5; ++n) {
        SheetAtlas a = global_sheets(square_decomposition({9, n, 1, 0, false}));
        CHECK(a.regions == n);
        CHECK(a.cusp_constraints.size() == 1);
    }
}

TEST_CASE("sheet regions do not depend on cell names") {
    Decomposition d = catalog_entry("cusp-pair");
    json j = to_json(d);
    std::string s = j.dump();
    for (std::size_t pos; (pos = s.find("\"a.")) != std::string::npos;) s.replace(pos, 3, "\"zz.");
    Decomposition e = decomposition_from_json(json::parse(s));
    CHECK(global_sheets(d).regions == global_sheets(e).regions);
    CHECK(maslov(global_sheets(d)).m == maslov(global_sheets(e)).m);
}

TEST_CASE("Maslov potential") {
    SheetAtlas cusp = global_sheets(square_decomposition({9, 2, 1, 0, false}));
    MaslovData md = maslov(cusp);
    CHECK(md.m == 0);
    auto [u, l] = cusp.cusp_constraints[0];
    CHECK(md.mu[static_cast<std::size_t>(u)] - md.mu[static_cast<std::size_t>(l)] == 1);

    MaslovData shifted = maslov(cusp, {5});
    CHECK(shifted.mu[static_cast<std::size_t>(md.base_region[0])] == 5);
    CHECK(shifted.mu[static_cast<std::size_t>(u)] - shifted.mu[static_cast<std::size_t>(l)] == 1);

    // two regions joined by cusps in both directions: the cycle has defect 2
    SheetAtlas a;
    a.regions = 2;
    a.region_name = {"p#0", "q#0"};
    a.cusp_constraints = {{0, 1}, {1, 0}};
    MaslovData m2 = maslov(a);
    CHECK(m2.m == 2);
    CHECK((m2.mu[0] - m2.mu[1] - 1) % 2 == 0);

    CHECK_THROWS_AS(with_modulus(m2, 3), Error);
    CHECK_THROWS_AS(with_modulus(m2, 0), Error);
    CHECK(with_modulus(m2, 1).m == 1);
    CHECK(with_modulus(md, 4).m == 4);
    try {
        with_modulus(m2, 3);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidModulus);
    }
}

TEST_CASE("decomposition JSON") {
    for (const auto& name : catalog_names()) {
        Decomposition d = catalog_entry(name);
        CHECK(decomposition_from_json(to_json(d)) == d);
    }
    json j = to_json(square_decomposition({1, 2, 0, 0, false}));
    json bad = j;
    bad["extra"] = 1;
    CHECK_THROWS_AS(decomposition_from_json(bad), Error);
    bad = j;
    bad["edges"][0]["id"] = 7;
    CHECK_THROWS_AS(decomposition_from_json(bad), Error);
    bad = j;
    bad["edges"][0]["type"]["tag"] = "Zigzag";
    CHECK_THROWS_AS(decomposition_from_json(bad), Error);
    CHECK_THROWS_AS(catalog_entry("no-such-entry"), Error);
}
